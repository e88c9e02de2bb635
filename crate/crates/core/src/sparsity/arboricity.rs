//! Minimum forest partition by matroid-union augmentation.
//!
//! Edges are inserted one at a time. An edge that fits no forest starts a
//! breadth-first search over exchanges: placing edge `f` into forest `i`
//! evicts the edges on the `F_i`-path between its endpoints, which must then
//! be placed elsewhere. A shortest exchange sequence ending in a forest that
//! already separates the last edge's endpoints is applied as a whole. When
//! no such sequence exists, the current forests cannot absorb the edge and a
//! new forest is opened.

use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;
use crate::verify::forest_path;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestDecomposition {
    pub r: usize,
    /// Forest index in `1..=r` per edge `(u, v)`, `u < v`.
    pub assignment: BTreeMap<(usize, usize), usize>,
}

impl ForestDecomposition {
    /// Checks that the classes partition `E(g)` and are acyclic.
    pub fn validate(&self, g: &UndirectedGraph) -> Result<()> {
        if self.assignment.len() != g.edge_count() {
            return Err(Error::InvalidDecomposition(format!(
                "{} edges assigned, graph has {}",
                self.assignment.len(),
                g.edge_count()
            )));
        }
        let mut forests = vec![UnionFind::new(g.order()); self.r];
        for (&(u, v), &q) in &self.assignment {
            if !g.has_edge(u, v) {
                return Err(Error::InvalidDecomposition(format!(
                    "({u},{v}) not an edge"
                )));
            }
            if q == 0 || q > self.r {
                return Err(Error::InvalidDecomposition(format!(
                    "forest index {q} outside 1..={}",
                    self.r
                )));
            }
            if !forests[q - 1].union(u, v) {
                return Err(Error::InvalidDecomposition(format!(
                    "forest {q} has a cycle through ({u},{v})"
                )));
            }
        }
        Ok(())
    }

    pub fn forest(&self, q: usize) -> Vec<(usize, usize)> {
        self.assignment
            .iter()
            .filter(|(_, &f)| f == q)
            .map(|(&e, _)| e)
            .collect()
    }
}

#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// False if already connected.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

struct Forests {
    graphs: Vec<UndirectedGraph>,
    // forest index (0-based) of each inserted edge
    home: BTreeMap<(usize, usize), usize>,
}

impl Forests {
    fn connected(&self, i: usize, u: usize, v: usize) -> Option<Vec<usize>> {
        forest_path(&self.graphs[i], u, v)
    }

    fn place(&mut self, e: (usize, usize), i: usize) {
        if let Some(old) = self.home.insert(e, i) {
            self.graphs[old].remove_edge(e.0, e.1);
        }
        self.graphs[i].add_edge(e.0, e.1).unwrap();
    }

    /// Inserts `e` into some forest, exchanging along a shortest path.
    fn insert(&mut self, e: (usize, usize)) -> bool {
        let r = self.graphs.len();
        let mut label: BTreeMap<(usize, usize), ((usize, usize), usize)> = BTreeMap::new();
        let mut queue = VecDeque::from([e]);
        label.insert(e, (e, usize::MAX));
        while let Some(f) = queue.pop_front() {
            for i in 0..r {
                if self.home.get(&f) == Some(&i) {
                    continue;
                }
                match self.connected(i, f.0, f.1) {
                    None => {
                        // apply the exchange chain back to e
                        let mut cur = f;
                        let mut target = i;
                        loop {
                            let (prev, via) = label[&cur];
                            self.place(cur, target);
                            if cur == e {
                                return true;
                            }
                            cur = prev;
                            target = via;
                        }
                    }
                    Some(path) => {
                        for w in path.windows(2) {
                            let g = (w[0].min(w[1]), w[0].max(w[1]));
                            if let std::collections::btree_map::Entry::Vacant(slot) = label.entry(g)
                            {
                                slot.insert((f, i));
                                queue.push_back(g);
                            }
                        }
                    }
                }
            }
        }
        false
    }
}

/// Arboricity with an explicit minimum forest decomposition.
pub fn arboricity(g: &UndirectedGraph) -> Result<ForestDecomposition> {
    let mut forests = Forests {
        graphs: Vec::new(),
        home: BTreeMap::new(),
    };
    for e in g.edges() {
        if !forests.insert(e) {
            forests.graphs.push(UndirectedGraph::new(g.order()));
            let last = forests.graphs.len() - 1;
            forests.place(e, last);
        }
    }
    let dec = ForestDecomposition {
        r: forests.graphs.len(),
        assignment: forests.home.into_iter().map(|(e, i)| (e, i + 1)).collect(),
    };
    dec.validate(g)
        .map_err(|e| Error::Invariant(format!("arboricity produced a bad decomposition: {e}")))?;
    Ok(dec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_and_k4() {
        let tree = UndirectedGraph::from_edges(5, &[(0, 1), (0, 2), (2, 3), (2, 4)]).unwrap();
        assert_eq!(arboricity(&tree).unwrap().r, 1);
        let k4 = arboricity(&UndirectedGraph::complete(4)).unwrap();
        assert_eq!(k4.r, 2);
        k4.validate(&UndirectedGraph::complete(4)).unwrap();
        assert_eq!(arboricity(&UndirectedGraph::new(3)).unwrap().r, 0);
    }

    #[test]
    fn complete_graphs() {
        // ceil(n/2)
        for n in 2..=9 {
            assert_eq!(
                arboricity(&UndirectedGraph::complete(n)).unwrap().r,
                n.div_ceil(2)
            );
        }
    }

    #[test]
    fn validate_catches_cycles() {
        let c3 = UndirectedGraph::cycle(3);
        let bad = ForestDecomposition {
            r: 1,
            assignment: c3.edges().map(|e| (e, 1)).collect(),
        };
        assert!(bad.validate(&c3).is_err());
        let short = ForestDecomposition {
            r: 1,
            assignment: BTreeMap::new(),
        };
        assert!(short.validate(&c3).is_err());
    }
}
