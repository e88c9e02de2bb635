//! Explicit target graphs: the complete (n,m)-graph built on Walecki's
//! Hamiltonian decomposition of `K_{2p+1}`, and the 15- and 21-vertex
//! targets with the common-neighbor property for partial 2-trees.

use crate::error::{Error, Result};
use crate::graph::{AdjType, NmGraph, NmGraphBuilder, Signature};

/// Vertex of the Walecki labelling: the point at infinity or a residue mod `2p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WaleckiVertex {
    Infinity,
    Residue(usize),
}

impl WaleckiVertex {
    /// Vertex index in [`walecki_target`]: residues keep their value,
    /// infinity is `2p`.
    pub fn index(self, p: usize) -> usize {
        match self {
            WaleckiVertex::Infinity => 2 * p,
            WaleckiVertex::Residue(r) => r,
        }
    }
}

/// Hamiltonian cycle `C_j` of `K_{2p+1}`: `∞, j, j+1, j-1, ..., j+(p-1), j-(p-1), j+p`.
/// The closing step back to `∞` is implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WaleckiCycle {
    pub p: usize,
    pub j: usize,
    pub sequence: Vec<WaleckiVertex>,
}

impl WaleckiCycle {
    /// Vertex indices in cycle order, starting at infinity.
    pub fn indices(&self) -> Vec<usize> {
        self.sequence.iter().map(|v| v.index(self.p)).collect()
    }

    /// Consecutive pairs including the closing step, oriented along the sequence.
    pub fn steps(&self) -> Vec<(usize, usize)> {
        let idx = self.indices();
        (0..idx.len())
            .map(|i| (idx[i], idx[(i + 1) % idx.len()]))
            .collect()
    }
}

pub fn walecki_cycle(p: usize, j: usize) -> Result<WaleckiCycle> {
    if p == 0 {
        return Err(Error::Precondition("walecki cycle needs p >= 1".into()));
    }
    if j >= p {
        return Err(Error::Precondition(format!(
            "cycle index {j} out of range 0..{p}"
        )));
    }
    let modulus = 2 * p;
    let mut sequence = vec![WaleckiVertex::Infinity, WaleckiVertex::Residue(j)];
    for k in 1..p {
        sequence.push(WaleckiVertex::Residue((j + k) % modulus));
        sequence.push(WaleckiVertex::Residue((j + modulus - k) % modulus));
    }
    sequence.push(WaleckiVertex::Residue((j + p) % modulus));
    Ok(WaleckiCycle { p, j, sequence })
}

/// The complete (n,m)-graph on `2p+1` vertices, `p = 2n+m`.
///
/// Arc type `α` is carried by the cycles `C_{α-2}` and `C_{α-1}`, each oriented
/// along its sequence; edge type `α` by the cycle `C_{α-1}`.
pub fn walecki_target(sig: Signature) -> Result<NmGraph> {
    let p = sig.types() as usize;
    if p < 2 {
        return Err(Error::Precondition("walecki target needs 2n+m >= 2".into()));
    }
    let mut b = NmGraphBuilder::new(sig, 2 * p + 1);
    b.set_label(2 * p, "inf")?;
    for r in 0..2 * p {
        b.set_label(r, r.to_string())?;
    }
    for j in 0..p {
        let cycle = walecki_cycle(p, j)?;
        // cycle j carries arc type j+2 (rounded down to even) or edge type j+1
        let t = j as u32 + 1;
        let alpha = if t <= 2 * sig.n() {
            sig.adj_type(t + (t % 2))?
        } else {
            sig.adj_type(t)?
        };
        for (u, v) in cycle.steps() {
            b.set_adjacency(u, v, alpha)?;
        }
    }
    Ok(b.build())
}

/// Maps residues mod 3 onto the color set {1,2,3} with 0 ↦ 3.
fn rep3(x: usize) -> u32 {
    match x % 3 {
        0 => 3,
        r => r as u32,
    }
}

fn is_nonzero_square(x: usize, modulus: usize) -> bool {
    let x = x % modulus;
    x != 0 && (1..modulus).any(|y| y * y % modulus == x)
}

fn layered_index(i: usize, j: usize) -> usize {
    3 * i + j
}

/// The (0,3)-graph on `Z/5 × Z/3`; vertex `(i, j)` has index `3i + j`.
pub fn t03() -> NmGraph {
    let sig = Signature::new(0, 3).unwrap();
    let mut b = NmGraphBuilder::new(sig, 15);
    for i in 0..5 {
        for j in 0..3 {
            b.set_label(layered_index(i, j), format!("({i},{j})"))
                .unwrap();
        }
    }
    for i in 0..5 {
        for j in 0..3 {
            for ip in 0..5 {
                for jp in 0..3 {
                    let (u, v) = (layered_index(i, j), layered_index(ip, jp));
                    if i == ip || u > v {
                        continue;
                    }
                    let diff = (ip + 5 - i) % 5;
                    let color = if is_nonzero_square(diff, 5) {
                        rep3(1 + j + jp)
                    } else {
                        rep3(2 + j + jp)
                    };
                    b.add_edge(u, v, color).unwrap();
                }
            }
        }
    }
    b.build()
}

/// The (1,1)-graph on `Z/7 × Z/3`; vertex `(i, j)` has index `3i + j`.
pub fn t11() -> NmGraph {
    let sig = Signature::new(1, 1).unwrap();
    let mut b = NmGraphBuilder::new(sig, 21);
    for i in 0..7 {
        for j in 0..3 {
            b.set_label(layered_index(i, j), format!("({i},{j})"))
                .unwrap();
        }
    }
    for i in 0..7 {
        for j in 0..3 {
            for ip in 0..7 {
                if ip == i {
                    continue;
                }
                let square = is_nonzero_square((ip + 7 - i) % 7, 7);
                let (u, same) = (layered_index(i, j), layered_index(ip, j));
                if square {
                    b.add_arc(u, same, 2).unwrap();
                }
                let next = layered_index(ip, (j + 1) % 3);
                if square {
                    b.add_edge(u, next, 3).unwrap();
                } else {
                    b.add_arc(next, u, 2).unwrap();
                }
            }
        }
    }
    b.build()
}

/// Makes the underlying graph complete by joining every non-adjacent pair
/// `u < v` so that `v` is a `fill`-neighbor of `u`.
pub fn complete_augment(h: &NmGraph, fill: AdjType) -> Result<NmGraph> {
    let fill = h.signature().adj_type(fill.value())?;
    let mut b = h.to_builder();
    for u in 0..h.order() {
        for v in u + 1..h.order() {
            if !b.is_adjacent(u, v) {
                b.set_adjacency(u, v, fill)?;
            }
        }
    }
    Ok(b.build())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn sig(n: u32, m: u32) -> Signature {
        Signature::new(n, m).unwrap()
    }

    #[test]
    fn walecki_examples() {
        assert_eq!(walecki_cycle(2, 0).unwrap().indices(), vec![4, 0, 1, 3, 2]);
        assert_eq!(walecki_cycle(2, 1).unwrap().indices(), vec![4, 1, 2, 0, 3]);
        assert_eq!(
            walecki_cycle(3, 0).unwrap().indices(),
            vec![6, 0, 1, 5, 2, 4, 3]
        );
        assert!(walecki_cycle(3, 3).is_err());
        assert!(walecki_cycle(0, 0).is_err());
    }

    /// Independent check: every cycle visits all vertices once, and the
    /// union of undirected steps covers K_{2p+1} with no repeats.
    #[test]
    fn walecki_decomposes_complete_graph() {
        for p in 1..=8 {
            let mut seen = BTreeSet::new();
            for j in 0..p {
                let c = walecki_cycle(p, j).unwrap();
                let verts: BTreeSet<_> = c.indices().into_iter().collect();
                assert_eq!(verts.len(), 2 * p + 1);
                for (u, v) in c.steps() {
                    assert!(seen.insert((u.min(v), u.max(v))), "p={p} repeated edge");
                }
            }
            assert_eq!(seen.len(), (2 * p + 1) * (2 * p) / 2);
        }
    }

    #[test]
    fn walecki_target_shapes() {
        let t = walecki_target(sig(0, 2)).unwrap();
        assert_eq!(t.order(), 5);
        assert_eq!(t.underlying().edge_count(), 10);
        // C0 = inf,0,1,3,2 carries type 1
        assert_eq!(t.view(4, 0).unwrap().value(), 1);
        assert_eq!(t.view(0, 1).unwrap().value(), 1);
        assert_eq!(t.view(4, 1).unwrap().value(), 2);

        let t = walecki_target(sig(1, 0)).unwrap();
        assert_eq!(t.arcs().count(), 10);
        assert!(t.arcs().all(|a| a.kind == 2));

        let t = walecki_target(sig(1, 1)).unwrap();
        assert_eq!(t.order(), 7);
        assert_eq!(t.arcs().count(), 14);
        assert_eq!(t.edges().count(), 7);
        for x in 0..7 {
            for a in t.signature().all_types() {
                assert_eq!(t.neighbors(x, a).unwrap().len(), 2);
            }
        }
        assert!(walecki_target(sig(1, 0)).is_ok());
    }

    #[test]
    fn t03_examples() {
        let t = t03();
        let idx = |i: usize, j: usize| 3 * i + j;
        assert_eq!(t.view(idx(0, 0), idx(1, 0)).unwrap().value(), 1);
        assert_eq!(t.view(idx(0, 0), idx(2, 1)).unwrap().value(), 3);
        assert_eq!(t.view(idx(3, 1), idx(3, 2)), None);
        assert_eq!(t.neighbors(idx(0, 0), AdjType(1)).unwrap().len(), 4);
    }

    #[test]
    fn t03_color_rule_symmetric() {
        for i in 0..5 {
            for ip in 0..5 {
                if i == ip {
                    continue;
                }
                let d = (ip + 5 - i) % 5;
                let back = (i + 5 - ip) % 5;
                assert_eq!(is_nonzero_square(d, 5), is_nonzero_square(back, 5));
            }
        }
    }

    #[test]
    fn t11_layer_rule_well_defined() {
        for d in 1..7 {
            assert_ne!(is_nonzero_square(d, 7), is_nonzero_square(7 - d, 7));
        }
        let t = t11();
        assert_eq!(t.underlying().edge_count(), 21 * 18 / 2);
        for u in 0..21 {
            for v in 0..21 {
                assert_eq!(t.view(u, v).is_some(), u / 3 != v / 3);
            }
        }
    }

    #[test]
    fn complete_augment_behaviour() {
        let t = t03();
        let k = complete_augment(&walecki_target(sig(0, 2)).unwrap(), AdjType(1)).unwrap();
        assert_eq!(k, walecki_target(sig(0, 2)).unwrap());

        let h = NmGraph::empty(sig(0, 2), 3);
        let k3 = complete_augment(&h, AdjType(1)).unwrap();
        assert_eq!(k3.edges().count(), 3);
        assert!(k3.edges().all(|e| e.kind == 1));

        let full = complete_augment(&t, AdjType(2)).unwrap();
        assert_eq!(full.underlying().edge_count(), 15 * 14 / 2);
        for (u, v, a) in t.adjacency_list() {
            assert_eq!(full.view(u, v), Some(a));
        }
    }
}
