//! The (n,m)-graph data model.
//!
//! An adjacency between `u` and `v` is stored exactly once: as an arc
//! `(tail, head, t)` with even `t` in `2..=2n`, or as an edge `{u, v}` with
//! `t` in `2n+1..=2n+m`. The *view type* of an adjacency from one of its
//! endpoints is derived from that storage: for an arc `(u, v, t)`, `v` is a
//! `t`-neighbor of `u` and `u` is a `(t-1)`-neighbor of `v`; edges look the
//! same from both ends.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported `2n+m`.
pub const MAX_TYPES: u32 = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    n: u32,
    m: u32,
}

impl Signature {
    pub fn new(n: u32, m: u32) -> Result<Self> {
        let p = 2 * n as u64 + m as u64;
        if p == 0 {
            return Err(Error::InvalidSignature {
                n,
                m,
                reason: "needs at least one adjacency type",
            });
        }
        if (n, m) == (0, 1) {
            return Err(Error::InvalidSignature {
                n,
                m,
                reason: "(0,1) is excluded",
            });
        }
        if p > MAX_TYPES as u64 {
            return Err(Error::InvalidSignature {
                n,
                m,
                reason: "2n+m exceeds 30",
            });
        }
        Ok(Signature { n, m })
    }

    pub fn n(self) -> u32 {
        self.n
    }

    pub fn m(self) -> u32 {
        self.m
    }

    /// Number of adjacency view types, `2n+m`.
    pub fn types(self) -> u32 {
        2 * self.n + self.m
    }

    /// All view types `1..=2n+m`.
    pub fn all_types(self) -> impl Iterator<Item = AdjType> {
        (1..=self.types()).map(AdjType)
    }

    pub fn adj_type(self, value: u32) -> Result<AdjType> {
        if value == 0 || value > self.types() {
            return Err(Error::TypeRange {
                value,
                max: self.types(),
            });
        }
        Ok(AdjType(value))
    }

    pub fn is_arc_type(self, t: u32) -> bool {
        t >= 2 && t <= 2 * self.n && t.is_multiple_of(2)
    }

    pub fn is_edge_type(self, t: u32) -> bool {
        t > 2 * self.n && t <= self.types()
    }

    /// The type under which an adjacency is seen from its other endpoint.
    pub fn dual(self, alpha: AdjType) -> Result<AdjType> {
        let a = self.adj_type(alpha.0)?.0;
        Ok(AdjType(self.dual_unchecked(a)))
    }

    pub(crate) fn dual_unchecked(self, a: u32) -> u32 {
        if a > 2 * self.n {
            a
        } else if a % 2 == 1 {
            a + 1
        } else {
            a - 1
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n, self.m)
    }
}

/// An adjacency view type, the `α` of `N^α(u)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdjType(pub(crate) u32);

impl AdjType {
    /// Type 1, which every signature has.
    pub fn first() -> AdjType {
        AdjType(1)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    pub(crate) fn index(self) -> usize {
        self.0 as usize - 1
    }
}

impl fmt::Display for AdjType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
    pub kind: u32,
}

/// Undirected typed edge; `u < v` always.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub kind: u32,
}

/// Single-owner mutable builder for [`NmGraph`].
#[derive(Debug, Clone)]
pub struct NmGraphBuilder {
    sig: Signature,
    labels: Vec<Option<String>>,
    arcs: BTreeSet<Arc>,
    edges: BTreeSet<Edge>,
    views: Vec<BTreeMap<usize, AdjType>>,
}

impl NmGraphBuilder {
    pub fn new(sig: Signature, order: usize) -> Self {
        NmGraphBuilder {
            sig,
            labels: vec![None; order],
            arcs: BTreeSet::new(),
            edges: BTreeSet::new(),
            views: vec![BTreeMap::new(); order],
        }
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn order(&self) -> usize {
        self.views.len()
    }

    pub fn add_vertex(&mut self) -> usize {
        self.labels.push(None);
        self.views.push(BTreeMap::new());
        self.views.len() - 1
    }

    pub fn set_label(&mut self, v: usize, label: impl Into<String>) -> Result<()> {
        self.check_vertex(v)?;
        self.labels[v] = Some(label.into());
        Ok(())
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.views.get(u).is_some_and(|m| m.contains_key(&v))
    }

    /// Makes `v` an `alpha`-neighbor of `u`.
    pub fn set_adjacency(&mut self, u: usize, v: usize, alpha: AdjType) -> Result<()> {
        let a = self.sig.adj_type(alpha.0)?.0;
        self.check_pair(u, v)?;
        let n2 = 2 * self.sig.n;
        if a > n2 {
            self.edges.insert(Edge {
                u: u.min(v),
                v: u.max(v),
                kind: a,
            });
        } else if a % 2 == 0 {
            self.arcs.insert(Arc {
                tail: u,
                head: v,
                kind: a,
            });
        } else {
            self.arcs.insert(Arc {
                tail: v,
                head: u,
                kind: a + 1,
            });
        }
        self.views[u].insert(v, AdjType(a));
        self.views[v].insert(u, AdjType(self.sig.dual_unchecked(a)));
        Ok(())
    }

    pub fn add_arc(&mut self, tail: usize, head: usize, kind: u32) -> Result<()> {
        if !self.sig.is_arc_type(kind) {
            return Err(Error::StoredTypeRange {
                kind: "arc",
                value: kind,
                n: self.sig.n,
                m: self.sig.m,
            });
        }
        self.set_adjacency(tail, head, AdjType(kind))
    }

    pub fn add_edge(&mut self, u: usize, v: usize, kind: u32) -> Result<()> {
        if !self.sig.is_edge_type(kind) {
            return Err(Error::StoredTypeRange {
                kind: "edge",
                value: kind,
                n: self.sig.n,
                m: self.sig.m,
            });
        }
        self.set_adjacency(u, v, AdjType(kind))
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.views.len() {
            return Err(Error::UnknownVertex {
                vertex: v,
                order: self.views.len(),
            });
        }
        Ok(())
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Loop(u));
        }
        if self.is_adjacent(u, v) {
            return Err(Error::DuplicateAdjacency { u, v });
        }
        Ok(())
    }

    pub fn build(self) -> NmGraph {
        NmGraph {
            sig: self.sig,
            labels: self.labels,
            arcs: self.arcs,
            edges: self.edges,
            views: self.views,
        }
    }
}

/// An immutable (n,m)-graph on vertices `0..order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NmGraph {
    sig: Signature,
    labels: Vec<Option<String>>,
    arcs: BTreeSet<Arc>,
    edges: BTreeSet<Edge>,
    // derived index: views[u][v] = α iff v ∈ N^α(u)
    views: Vec<BTreeMap<usize, AdjType>>,
}

impl NmGraph {
    pub fn empty(sig: Signature, order: usize) -> Self {
        NmGraphBuilder::new(sig, order).build()
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn order(&self) -> usize {
        self.views.len()
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.get(v).and_then(|l| l.as_deref())
    }

    pub fn arcs(&self) -> impl Iterator<Item = &Arc> {
        self.arcs.iter()
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter()
    }

    pub fn adjacency_count(&self) -> usize {
        self.arcs.len() + self.edges.len()
    }

    pub fn degree(&self, u: usize) -> usize {
        self.views[u].len()
    }

    /// The view type of `v` from `u`, if adjacent.
    pub fn view(&self, u: usize, v: usize) -> Option<AdjType> {
        self.views.get(u).and_then(|m| m.get(&v).copied())
    }

    /// All `(v, α)` with `v ∈ N^α(u)`, ordered by `v`.
    pub fn adjacencies(&self, u: usize) -> impl Iterator<Item = (usize, AdjType)> + '_ {
        self.views[u].iter().map(|(&v, &a)| (v, a))
    }

    /// Each adjacency once as `(u, v, α)` with `u < v` and `v ∈ N^α(u)`.
    pub fn adjacency_list(&self) -> Vec<(usize, usize, AdjType)> {
        let mut out = Vec::with_capacity(self.adjacency_count());
        for (u, m) in self.views.iter().enumerate() {
            for (&v, &a) in m.range(u + 1..) {
                out.push((u, v, a));
            }
        }
        out
    }

    pub fn neighbors(&self, u: usize, alpha: AdjType) -> Result<Vec<usize>> {
        let alpha = self.sig.adj_type(alpha.0)?;
        if u >= self.order() {
            return Err(Error::UnknownVertex {
                vertex: u,
                order: self.order(),
            });
        }
        Ok(self.views[u]
            .iter()
            .filter(|(_, &a)| a == alpha)
            .map(|(&v, _)| v)
            .collect())
    }

    pub fn underlying(&self) -> UndirectedGraph {
        let mut g = UndirectedGraph::new(self.order());
        for (u, v, _) in self.adjacency_list() {
            g.add_edge(u, v)
                .expect("valid graph has simple underlying graph");
        }
        g
    }

    pub fn to_builder(&self) -> NmGraphBuilder {
        NmGraphBuilder {
            sig: self.sig,
            labels: self.labels.clone(),
            arcs: self.arcs.clone(),
            edges: self.edges.clone(),
            views: self.views.clone(),
        }
    }

    /// Returns a copy with `v` added as an `alpha`-neighbor of `u`.
    pub fn set_adjacency(&self, u: usize, v: usize, alpha: AdjType) -> Result<NmGraph> {
        let mut b = self.to_builder();
        b.set_adjacency(u, v, alpha)?;
        Ok(b.build())
    }

    /// Subgraph induced by `keep`, relabelled to `0..keep.len()` in order.
    pub fn induced(&self, keep: &[usize]) -> Result<NmGraph> {
        let mut pos = vec![usize::MAX; self.order()];
        for (i, &v) in keep.iter().enumerate() {
            if v >= self.order() {
                return Err(Error::UnknownVertex {
                    vertex: v,
                    order: self.order(),
                });
            }
            pos[v] = i;
        }
        let mut b = NmGraphBuilder::new(self.sig, keep.len());
        for (i, &v) in keep.iter().enumerate() {
            if let Some(l) = self.label(v) {
                b.set_label(i, l)?;
            }
        }
        for (u, v, a) in self.adjacency_list() {
            if pos[u] != usize::MAX && pos[v] != usize::MAX {
                b.set_adjacency(pos[u], pos[v], a)?;
            }
        }
        Ok(b.build())
    }

    /// Same graph with labels stripped.
    pub fn normalized(&self) -> NmGraph {
        let mut g = self.clone();
        g.labels.iter_mut().for_each(|l| *l = None);
        g
    }
}

/// A simple undirected graph on vertices `0..order`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UndirectedGraph {
    adj: Vec<BTreeSet<usize>>,
    edge_count: usize,
}

impl UndirectedGraph {
    pub fn new(order: usize) -> Self {
        UndirectedGraph {
            adj: vec![BTreeSet::new(); order],
            edge_count: 0,
        }
    }

    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = UndirectedGraph::new(order);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn cycle(len: usize) -> Self {
        let mut g = UndirectedGraph::new(len);
        for i in 0..len {
            g.add_edge(i, (i + 1) % len).expect("cycle of length >= 3");
        }
        g
    }

    pub fn complete(order: usize) -> Self {
        let mut g = UndirectedGraph::new(order);
        for u in 0..order {
            for v in u + 1..order {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(BTreeSet::new());
        self.adj.len() - 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let order = self.order();
        for x in [u, v] {
            if x >= order {
                return Err(Error::UnknownVertex { vertex: x, order });
            }
        }
        if u == v {
            return Err(Error::Loop(u));
        }
        if !self.adj[u].insert(v) {
            return Err(Error::DuplicateAdjacency { u, v });
        }
        self.adj[v].insert(u);
        self.edge_count += 1;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        let removed = u < self.order() && self.adj[u].remove(&v);
        if removed {
            self.adj[v].remove(&u);
            self.edge_count -= 1;
        }
        removed
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u).is_some_and(|s| s.contains(&v))
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[u].iter().copied()
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    /// Edges as `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, s)| s.range(u + 1..).map(move |&v| (u, v)))
    }

    /// Subgraph induced by `keep`, relabelled to `0..keep.len()` in order.
    pub fn induced(&self, keep: &[usize]) -> UndirectedGraph {
        let mut pos = vec![usize::MAX; self.order()];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = UndirectedGraph::new(keep.len());
        for (u, v) in self.edges() {
            if pos[u] != usize::MAX && pos[v] != usize::MAX {
                g.add_edge(pos[u], pos[v]).unwrap();
            }
        }
        g
    }

    /// Wraps this graph as an (n,m)-graph whose every adjacency has view
    /// type `alpha` from its lower-indexed endpoint.
    pub fn typed(&self, sig: Signature, alpha: AdjType) -> Result<NmGraph> {
        let mut b = NmGraphBuilder::new(sig, self.order());
        for (u, v) in self.edges() {
            b.set_adjacency(u, v, alpha)?;
        }
        Ok(b.build())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(n: u32, m: u32) -> Signature {
        Signature::new(n, m).unwrap()
    }

    #[test]
    fn signature_restrictions() {
        assert!(Signature::new(0, 1).is_err());
        assert!(Signature::new(0, 0).is_err());
        assert!(Signature::new(10, 11).is_err());
        assert!(Signature::new(10, 10).is_ok());
        assert_eq!(sig(1, 1).types(), 3);
    }

    #[test]
    fn dual_examples() {
        let s = sig(1, 0);
        assert_eq!(s.dual(s.adj_type(2).unwrap()).unwrap().value(), 1);
        let s = sig(0, 2);
        assert_eq!(s.dual(s.adj_type(1).unwrap()).unwrap().value(), 1);
        let s = sig(1, 1);
        assert_eq!(s.dual(s.adj_type(3).unwrap()).unwrap().value(), 3);
        assert!(matches!(
            s.adj_type(4),
            Err(Error::TypeRange { value: 4, max: 3 })
        ));
        assert!(s.dual(AdjType(0)).is_err());
    }

    #[test]
    fn dual_is_involution() {
        for (n, m) in [(1, 0), (0, 2), (2, 3), (3, 0), (0, 7)] {
            let s = sig(n, m);
            for a in s.all_types() {
                assert_eq!(s.dual(s.dual(a).unwrap()).unwrap(), a);
            }
        }
    }

    #[test]
    fn storage_rule() {
        let s = sig(1, 0);
        let mut b = NmGraphBuilder::new(s, 2);
        b.set_adjacency(0, 1, AdjType(1)).unwrap();
        let g = b.build();
        assert_eq!(
            g.arcs().copied().collect::<Vec<_>>(),
            vec![Arc {
                tail: 1,
                head: 0,
                kind: 2
            }]
        );

        let s = sig(0, 3);
        let g = NmGraph::empty(s, 2)
            .set_adjacency(0, 1, AdjType(2))
            .unwrap();
        assert_eq!(g.edges().next().unwrap().kind, 2);
        assert_eq!(g.arcs().count(), 0);

        let s = sig(1, 1);
        let g = NmGraph::empty(s, 2)
            .set_adjacency(0, 1, AdjType(2))
            .unwrap();
        assert_eq!(
            g.arcs().next(),
            Some(&Arc {
                tail: 0,
                head: 1,
                kind: 2
            })
        );
        assert_eq!(g.neighbors(1, AdjType(1)).unwrap(), vec![0]);
    }

    #[test]
    fn set_adjacency_errors() {
        let g = NmGraph::empty(sig(1, 0), 3);
        assert_eq!(g.set_adjacency(1, 1, AdjType(2)), Err(Error::Loop(1)));
        let g = g.set_adjacency(0, 1, AdjType(2)).unwrap();
        assert!(matches!(
            g.set_adjacency(1, 0, AdjType(2)),
            Err(Error::DuplicateAdjacency { .. })
        ));
        assert!(matches!(
            g.set_adjacency(0, 7, AdjType(2)),
            Err(Error::UnknownVertex { vertex: 7, .. })
        ));
    }

    #[test]
    fn neighbors_of_single_arc() {
        let g = NmGraph::empty(sig(1, 0), 2)
            .set_adjacency(0, 1, AdjType(2))
            .unwrap();
        assert_eq!(g.neighbors(0, AdjType(2)).unwrap(), vec![1]);
        assert_eq!(g.neighbors(1, AdjType(1)).unwrap(), vec![0]);
        assert!(g.neighbors(0, AdjType(1)).unwrap().is_empty());
        assert!(matches!(
            g.neighbors(5, AdjType(1)),
            Err(Error::UnknownVertex { .. })
        ));
    }

    #[test]
    fn underlying_of_empty() {
        let g = NmGraph::empty(sig(0, 2), 0);
        let u = g.underlying();
        assert_eq!(u.order(), 0);
        assert_eq!(u.edge_count(), 0);
    }

    #[test]
    fn undirected_rejects_loops_and_duplicates() {
        let mut g = UndirectedGraph::new(3);
        g.add_edge(0, 1).unwrap();
        assert!(g.add_edge(1, 0).is_err());
        assert!(g.add_edge(2, 2).is_err());
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }
}
