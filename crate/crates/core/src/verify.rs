//! Decision procedures for properties of finite (n,m)-graphs. Every negative
//! verdict carries a witness.

use std::collections::{BTreeSet, VecDeque};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{AdjType, NmGraph, UndirectedGraph};

/// Outcome of a property check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}

/// A vertex map `G → H` given by `map[v]` for each source vertex `v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Homomorphism {
    pub map: Vec<usize>,
}

/// Source adjacency `v ∈ N^α(u)` whose image is not an `α`-adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomViolation {
    pub u: usize,
    pub v: usize,
    pub alpha: AdjType,
    pub image_u: usize,
    pub image_v: usize,
    /// The view type of the image pair in the target, if adjacent at all.
    pub found: Option<AdjType>,
}

pub fn is_homomorphism(g: &NmGraph, h: &NmGraph, map: &[usize]) -> Result<Verdict<HomViolation>> {
    if g.signature() != h.signature() {
        let (a, b) = (g.signature(), h.signature());
        return Err(Error::SignatureMismatch(a.n(), a.m(), b.n(), b.m()));
    }
    if map.len() != g.order() {
        return Err(Error::Domain(format!(
            "map covers {} of {} source vertices",
            map.len(),
            g.order()
        )));
    }
    if let Some((v, &x)) = map.iter().enumerate().find(|(_, &x)| x >= h.order()) {
        return Err(Error::Domain(format!(
            "vertex {v} mapped to {x}, target has {} vertices",
            h.order()
        )));
    }
    for (u, v, alpha) in g.adjacency_list() {
        let (x, y) = (map[u], map[v]);
        let found = h.view(x, y);
        if found != Some(alpha) {
            return Ok(Verdict::Fails(HomViolation {
                u,
                v,
                alpha,
                image_u: x,
                image_v: y,
                found,
            }));
        }
    }
    Ok(Verdict::Holds)
}

/// Adjacent `u, v` and types with `N^α(u) ∩ N^β(v) = ∅`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct P21Witness {
    pub u: usize,
    pub v: usize,
    pub alpha: AdjType,
    pub beta: AdjType,
}

pub fn has_p21(t: &NmGraph) -> Verdict<P21Witness> {
    let sig = t.signature();
    let p = sig.types() as usize;
    // by_type[x][α-1] = N^α(x) as a bitset
    let by_type = neighbor_sets(t);
    for (u, v, _) in t.adjacency_list() {
        for a in 0..p {
            for b in 0..p {
                let hit = by_type[u][a]
                    .iter()
                    .zip(&by_type[v][b])
                    .any(|(x, y)| x & y != 0);
                if !hit {
                    return Verdict::Fails(P21Witness {
                        u,
                        v,
                        alpha: sig.adj_type(a as u32 + 1).unwrap(),
                        beta: sig.adj_type(b as u32 + 1).unwrap(),
                    });
                }
            }
        }
    }
    Verdict::Holds
}

fn neighbor_sets(t: &NmGraph) -> Vec<Vec<Vec<u64>>> {
    let p = t.signature().types() as usize;
    let words = t.order().div_ceil(64).max(1);
    let mut out = vec![vec![vec![0u64; words]; p]; t.order()];
    for (x, sets) in out.iter_mut().enumerate() {
        for (y, a) in t.adjacencies(x) {
            sets[a.index()][y / 64] |= 1 << (y % 64);
        }
    }
    out
}

pub const EXPANSION_LIMIT: usize = 24;

/// A subset `S` (as sorted vertex list) with `|N^α(S)| <= |S|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionWitness {
    pub subset: Vec<usize>,
    pub alpha: AdjType,
    pub neighborhood: Vec<usize>,
}

/// Checks `|S| < |N^α(S)|` for every nonempty proper subset `S` and every
/// type. Subsets are scanned by size, then in Gosper order; the first
/// failure in that order is reported regardless of parallelism.
pub fn expansion_ok(t: &NmGraph) -> Result<Verdict<ExpansionWitness>> {
    let n = t.order();
    if n > EXPANSION_LIMIT {
        return Err(Error::Guard {
            what: "expansion check",
            limit: EXPANSION_LIMIT,
            actual: n,
        });
    }
    let sig = t.signature();
    let p = sig.types() as usize;
    let mut masks = vec![vec![0u32; p]; n];
    for (x, row) in masks.iter_mut().enumerate() {
        for (y, a) in t.adjacencies(x) {
            row[a.index()] |= 1 << y;
        }
    }
    let check = |s: u32| -> Option<(u32, usize, u32)> {
        for a in 0..p {
            let mut nb = 0u32;
            let mut rest = s;
            while rest != 0 {
                let x = rest.trailing_zeros() as usize;
                nb |= masks[x][a];
                rest &= rest - 1;
            }
            if nb.count_ones() <= s.count_ones() {
                return Some((s, a, nb));
            }
        }
        None
    };
    for size in 1..n {
        let subsets: Vec<u32> = SubsetsOfSize::new(n, size).collect();
        let found = subsets.par_iter().find_map_first(|&s| check(s));
        if let Some((s, a, nb)) = found {
            return Ok(Verdict::Fails(ExpansionWitness {
                subset: bits(s),
                alpha: sig.adj_type(a as u32 + 1).unwrap(),
                neighborhood: bits(nb),
            }));
        }
    }
    Ok(Verdict::Holds)
}

fn bits(mut s: u32) -> Vec<usize> {
    let mut out = Vec::new();
    while s != 0 {
        out.push(s.trailing_zeros() as usize);
        s &= s - 1;
    }
    out
}

/// All `k`-subsets of `0..n` as bitmasks, in Gosper order.
struct SubsetsOfSize {
    next: Option<u32>,
    limit: u64,
}

impl SubsetsOfSize {
    fn new(n: usize, k: usize) -> Self {
        let next = if k <= n {
            Some(((1u64 << k) - 1) as u32)
        } else {
            None
        };
        SubsetsOfSize {
            next,
            limit: 1u64 << n,
        }
    }
}

impl Iterator for SubsetsOfSize {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        let cur = self.next?;
        if cur == 0 {
            self.next = None;
            return Some(0);
        }
        let c = cur as u64;
        let low = c & c.wrapping_neg();
        let ripple = c + low;
        let succ = (((ripple ^ c) >> 2) / low) | ripple;
        self.next = (succ < self.limit).then_some(succ as u32);
        Some(cur)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityWitness {
    pub vertex: usize,
    pub alpha: AdjType,
    pub count: usize,
}

/// True iff every vertex has exactly `d` α-neighbors for every α.
pub fn regularity_check(t: &NmGraph, d: usize) -> Verdict<RegularityWitness> {
    let sig = t.signature();
    for x in 0..t.order() {
        let mut counts = vec![0usize; sig.types() as usize];
        for (_, a) in t.adjacencies(x) {
            counts[a.index()] += 1;
        }
        if let Some((a, &count)) = counts.iter().enumerate().find(|(_, &c)| c != d) {
            return Verdict::Fails(RegularityWitness {
                vertex: x,
                alpha: sig.adj_type(a as u32 + 1).unwrap(),
                count,
            });
        }
    }
    Verdict::Holds
}

/// `x, y, z ∈ N^α(u)` with `x, z ∈ N^γ(y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenWitness {
    pub u: usize,
    pub y: usize,
    pub alpha: AdjType,
    pub gamma: AdjType,
    pub x: usize,
    pub z: usize,
}

pub fn forbidden_config_free(t: &NmGraph) -> Verdict<ForbiddenWitness> {
    let sig = t.signature();
    for u in 0..t.order() {
        for alpha in sig.all_types() {
            let nbhd: BTreeSet<usize> = t
                .adjacencies(u)
                .filter(|&(_, a)| a == alpha)
                .map(|(v, _)| v)
                .collect();
            if nbhd.len() < 3 {
                continue;
            }
            for &y in &nbhd {
                for gamma in sig.all_types() {
                    let mut inside = t
                        .adjacencies(y)
                        .filter(|&(w, a)| a == gamma && nbhd.contains(&w))
                        .map(|(w, _)| w);
                    if let (Some(x), Some(z)) = (inside.next(), inside.next()) {
                        return Verdict::Fails(ForbiddenWitness {
                            u,
                            y,
                            alpha,
                            gamma,
                            x,
                            z,
                        });
                    }
                }
            }
        }
    }
    Verdict::Holds
}

/// Unordered pairs `(u, w)`, `u < w`, that no homomorphism may identify:
/// adjacent pairs and endpoints of special 2-paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictRelation {
    pub pairs: BTreeSet<(usize, usize)>,
}

impl ConflictRelation {
    pub fn contains(&self, u: usize, w: usize) -> bool {
        self.pairs.contains(&(u.min(w), u.max(w)))
    }

    /// Conflict neighborhoods as adjacency sets over `0..order`.
    pub fn adjacency(&self, order: usize) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); order];
        for &(u, w) in &self.pairs {
            adj[u].insert(w);
            adj[w].insert(u);
        }
        adj
    }
}

pub fn conflict_relation(g: &NmGraph) -> ConflictRelation {
    let mut pairs = BTreeSet::new();
    for (u, v, _) in g.adjacency_list() {
        pairs.insert((u, v));
    }
    // uvw is special iff u and w are seen from v under different types
    for v in 0..g.order() {
        let nb: Vec<(usize, AdjType)> = g.adjacencies(v).collect();
        for (i, &(u, a)) in nb.iter().enumerate() {
            for &(w, b) in &nb[i + 1..] {
                if a != b {
                    pairs.insert((u.min(w), u.max(w)));
                }
            }
        }
    }
    ConflictRelation { pairs }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AcyclicViolation {
    /// Adjacent vertices share a color.
    NotProper { u: usize, v: usize, color: usize },
    /// A cycle using only two colors, listed as a closed vertex walk without repetition.
    BichromaticCycle {
        colors: (usize, usize),
        cycle: Vec<usize>,
    },
}

pub fn is_acyclic_coloring(
    g: &UndirectedGraph,
    colors: &[usize],
) -> Result<Verdict<AcyclicViolation>> {
    if colors.len() != g.order() {
        return Err(Error::Domain(format!(
            "coloring covers {} of {} vertices",
            colors.len(),
            g.order()
        )));
    }
    for (u, v) in g.edges() {
        if colors[u] == colors[v] {
            return Ok(Verdict::Fails(AcyclicViolation::NotProper {
                u,
                v,
                color: colors[u],
            }));
        }
    }
    // each edge lies in exactly one bicolored subgraph
    let mut groups: std::collections::BTreeMap<(usize, usize), Vec<(usize, usize)>> =
        Default::default();
    for (u, v) in g.edges() {
        let key = (colors[u].min(colors[v]), colors[u].max(colors[v]));
        groups.entry(key).or_default().push((u, v));
    }
    for (key, edges) in groups {
        let mut forest = UndirectedGraph::new(g.order());
        for (u, v) in edges {
            if let Some(path) = forest_path(&forest, u, v) {
                return Ok(Verdict::Fails(AcyclicViolation::BichromaticCycle {
                    colors: key,
                    cycle: path,
                }));
            }
            forest.add_edge(u, v).unwrap();
        }
    }
    Ok(Verdict::Holds)
}

/// Path from `s` to `t` in `g`, if connected.
pub(crate) fn forest_path(g: &UndirectedGraph, s: usize, t: usize) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; g.order()];
    parent[s] = s;
    let mut queue = VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        if x == t {
            let mut path = vec![t];
            let mut cur = t;
            while cur != s {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for y in g.neighbors(x) {
            if parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{NmGraphBuilder, Signature};
    use crate::targets::{t03, t11, walecki_target};

    fn sig(n: u32, m: u32) -> Signature {
        Signature::new(n, m).unwrap()
    }

    #[test]
    fn identity_and_wrong_type() {
        let t = t03();
        let id: Vec<usize> = (0..15).collect();
        assert!(is_homomorphism(&t, &t, &id).unwrap().holds());

        let g = NmGraph::empty(sig(0, 3), 2)
            .set_adjacency(0, 1, AdjType(1))
            .unwrap();
        // (0,0)-(2,1) is type 3 in t03
        let v = is_homomorphism(&g, &t, &[0, 7]).unwrap();
        let w = v.witness().unwrap();
        assert_eq!((w.u, w.v, w.alpha.value()), (0, 1, 1));
        assert_eq!(w.found.map(|a| a.value()), Some(3));
    }

    #[test]
    fn partial_map_is_domain_error() {
        let t = t03();
        assert!(matches!(
            is_homomorphism(&t, &t, &[0, 1]),
            Err(Error::Domain(_))
        ));
        let other = walecki_target(sig(0, 2)).unwrap();
        assert!(matches!(
            is_homomorphism(&other, &t, &[0; 5]),
            Err(Error::SignatureMismatch(..))
        ));
    }

    #[test]
    fn five_cycle_onto_c0() {
        let s = sig(0, 2);
        let t = walecki_target(s).unwrap();
        let c5 = UndirectedGraph::cycle(5).typed(s, AdjType(1)).unwrap();
        let seq = [4, 0, 1, 3, 2];
        assert!(is_homomorphism(&c5, &t, &seq).unwrap().holds());
    }

    #[test]
    fn p21_of_constructed_targets() {
        assert!(has_p21(&t03()).holds());
        assert!(has_p21(&t11()).holds());
        let w = has_p21(&walecki_target(sig(0, 2)).unwrap());
        assert!(!w.holds());
    }

    #[test]
    fn expansion_examples() {
        assert!(expansion_ok(&walecki_target(sig(0, 2)).unwrap())
            .unwrap()
            .holds());
        assert!(expansion_ok(&walecki_target(sig(1, 1)).unwrap())
            .unwrap()
            .holds());

        let arc = NmGraph::empty(sig(1, 0), 2)
            .set_adjacency(0, 1, AdjType(2))
            .unwrap();
        let v = expansion_ok(&arc).unwrap();
        let w = v.witness().unwrap();
        assert!(w.neighborhood.len() <= w.subset.len());

        let big = NmGraph::empty(sig(1, 0), 25);
        assert!(matches!(expansion_ok(&big), Err(Error::Guard { .. })));
    }

    #[test]
    fn gosper_enumeration_counts() {
        assert_eq!(SubsetsOfSize::new(5, 2).count(), 10);
        assert_eq!(SubsetsOfSize::new(6, 6).count(), 1);
        assert_eq!(SubsetsOfSize::new(4, 0).collect::<Vec<_>>(), vec![0]);
        let all: Vec<u32> = SubsetsOfSize::new(4, 2).collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn regularity_examples() {
        assert!(regularity_check(&walecki_target(sig(0, 3)).unwrap(), 2).holds());
        assert!(regularity_check(&t03(), 4).holds());
        let v = regularity_check(&t03(), 3);
        assert_eq!(v.witness().unwrap().count, 4);
    }

    #[test]
    fn forbidden_examples() {
        assert!(forbidden_config_free(&t03()).holds());
        let k4 = UndirectedGraph::complete(4)
            .typed(sig(0, 2), AdjType(1))
            .unwrap();
        assert!(!forbidden_config_free(&k4).holds());
        let tri = UndirectedGraph::complete(3)
            .typed(sig(1, 1), AdjType(3))
            .unwrap();
        assert!(forbidden_config_free(&tri).holds());
    }

    #[test]
    fn conflict_examples() {
        let s = sig(1, 0);
        let mut b = NmGraphBuilder::new(s, 3);
        b.add_arc(0, 1, 2).unwrap();
        b.add_arc(1, 2, 2).unwrap();
        assert!(conflict_relation(&b.build()).contains(0, 2));

        let mut b = NmGraphBuilder::new(s, 3);
        b.add_arc(0, 1, 2).unwrap();
        b.add_arc(2, 1, 2).unwrap();
        let c = conflict_relation(&b.build());
        assert!(!c.contains(0, 2));
        assert!(c.contains(1, 2));
    }

    #[test]
    fn acyclic_examples() {
        let path = UndirectedGraph::from_edges(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        assert!(is_acyclic_coloring(&path, &[0, 1, 0, 0]).unwrap().holds());

        let c4 = UndirectedGraph::cycle(4);
        let v = is_acyclic_coloring(&c4, &[0, 1, 0, 1]).unwrap();
        match v.witness().unwrap() {
            AcyclicViolation::BichromaticCycle { colors, cycle } => {
                assert_eq!(*colors, (0, 1));
                assert_eq!(cycle.len(), 4);
            }
            other => panic!("{other:?}"),
        }
        assert!(is_acyclic_coloring(&c4, &[0, 1, 0, 2]).unwrap().holds());
        assert!(matches!(
            is_acyclic_coloring(&c4, &[0, 0, 1, 2]).unwrap(),
            Verdict::Fails(AcyclicViolation::NotProper { .. })
        ));
        assert!(is_acyclic_coloring(&c4, &[0, 1]).is_err());
    }
}
