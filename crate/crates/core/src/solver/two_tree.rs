use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{AdjType, NmGraph, UndirectedGraph};
use crate::verify::{has_p21, is_homomorphism, Homomorphism, Verdict};

/// Result of the degree-at-most-2 reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationOrder {
    /// Vertices in removal order.
    pub order: Vec<usize>,
    /// Edges added between the two neighbors of a removed degree-2 vertex,
    /// as `(u, v)` with `u < v`.
    pub fill: Vec<(usize, usize)>,
}

/// Repeatedly removes the lowest-index vertex of degree at most 2, joining
/// the two neighbors of a removed degree-2 vertex. `None` when the graph
/// does not reduce to empty, i.e. it has a `K4` minor.
pub fn elimination_order(g: &UndirectedGraph) -> Option<EliminationOrder> {
    let n = g.order();
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let mut alive = vec![true; n];
    let mut ready: BTreeSet<usize> = (0..n).filter(|&v| adj[v].len() <= 2).collect();
    let mut order = Vec::with_capacity(n);
    let mut fill = Vec::new();
    while let Some(v) = ready.pop_first() {
        alive[v] = false;
        order.push(v);
        let nb: Vec<usize> = std::mem::take(&mut adj[v]).into_iter().collect();
        for &w in &nb {
            adj[w].remove(&v);
        }
        if let [a, b] = nb[..] {
            if adj[a].insert(b) {
                adj[b].insert(a);
                fill.push((a.min(b), a.max(b)));
            }
        }
        for &w in &nb {
            if adj[w].len() <= 2 {
                ready.insert(w);
            } else {
                ready.remove(&w);
            }
        }
    }
    (order.len() == n).then_some(EliminationOrder { order, fill })
}

/// Maps a partial 2-tree into a target with the common-neighbor property,
/// greedily in reverse elimination order. Fill edges join the source with
/// view type 1 from their lower endpoint.
pub fn two_tree_hom(g: &NmGraph, t: &NmGraph) -> Result<Homomorphism> {
    if g.signature() != t.signature() {
        let (a, b) = (g.signature(), t.signature());
        return Err(Error::SignatureMismatch(a.n(), a.m(), b.n(), b.m()));
    }
    if let Verdict::Fails(w) = has_p21(t) {
        return Err(Error::Precondition(format!(
            "target lacks the common-neighbor property: {w:?}"
        )));
    }
    let elim = elimination_order(&g.underlying())
        .ok_or_else(|| Error::Precondition("source is not a partial 2-tree".into()))?;

    let mut b = g.to_builder();
    for &(u, v) in &elim.fill {
        b.set_adjacency(u, v, AdjType::first())?;
    }
    let completed = b.build();

    let anchor = (0..t.order()).find(|&x| t.degree(x) > 0);
    if g.order() > 0 && t.order() == 0 {
        return Err(Error::Precondition("empty target".into()));
    }
    if g.adjacency_count() > 0 && anchor.is_none() {
        return Err(Error::Precondition("target has no adjacency".into()));
    }

    let mut position = vec![0usize; g.order()];
    for (i, &v) in elim.order.iter().enumerate() {
        position[v] = i;
    }
    let mut map = vec![usize::MAX; g.order()];
    for &v in elim.order.iter().rev() {
        // placed neighbors are the ones eliminated after v
        let placed: Vec<(usize, AdjType)> = completed
            .adjacencies(v)
            .filter(|&(u, _)| position[u] > position[v])
            .map(|(u, a)| (u, t.signature().dual(a).unwrap()))
            .collect();
        // (u, α) here means v ∈ N^α(u)
        let image = match placed[..] {
            [] => Some(anchor.unwrap_or(0)),
            [(u, a)] => first_common(t, &[(map[u], a)]),
            [(u, a), (w, b)] => first_common(t, &[(map[u], a), (map[w], b)]),
            _ => {
                return Err(Error::Invariant(format!(
                    "vertex {v} has {} placed neighbors",
                    placed.len()
                )))
            }
        }
        .ok_or_else(|| {
            Error::Invariant(format!(
                "empty common neighborhood while placing {v}: {placed:?}"
            ))
        })?;
        map[v] = image;
    }
    match is_homomorphism(g, t, &map)? {
        Verdict::Holds => Ok(Homomorphism { map }),
        Verdict::Fails(w) => Err(Error::Invariant(format!("greedy embedding invalid: {w:?}"))),
    }
}

/// Lowest-index vertex in the intersection of `N^α(x)` over all `(x, α)`.
fn first_common(t: &NmGraph, reqs: &[(usize, AdjType)]) -> Option<usize> {
    let (x0, a0) = reqs[0];
    t.adjacencies(x0)
        .filter(|&(_, a)| a == a0)
        .map(|(y, _)| y)
        .find(|&y| reqs[1..].iter().all(|&(x, a)| t.view(x, y) == Some(a)))
}
