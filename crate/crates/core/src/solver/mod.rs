//! Homomorphism search, exact (n,m)-chromatic numbers, greedy embedding of
//! partial 2-trees, and odd-cycle (circular) colorings.

mod chromatic;
mod search;
mod two_tree;

pub use chromatic::{
    chromatic_oracle, exact_chromatic, ChromaticOutcome, QuotientCertificate, CHROMATIC_LIMIT,
    ORACLE_LIMIT,
};
pub use search::{find_hom, find_hom_with};
pub use two_tree::{elimination_order, two_tree_hom, EliminationOrder};

use crate::error::{Error, Result};
use crate::graph::{AdjType, NmGraph, Signature, UndirectedGraph};
use crate::verify::{conflict_relation, Homomorphism};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarOrder {
    MinRemainingValues,
    Static,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Propagation {
    None,
    ArcConsistency,
}

/// Search knobs. `seed = 0` keeps the natural (lowest index first) value
/// order; any other seed permutes it deterministically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub order: VarOrder,
    pub propagation: Propagation,
    pub node_budget: u64,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            order: VarOrder::MinRemainingValues,
            propagation: Propagation::ArcConsistency,
            node_budget: 50_000_000,
            seed: 0,
        }
    }
}

impl SearchConfig {
    fn validate(&self) -> Result<()> {
        if self.node_budget == 0 {
            return Err(Error::Precondition("node budget must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomOutcome {
    Found(Homomorphism),
    /// Proven: no homomorphism exists.
    NoHomomorphism,
    BudgetExhausted,
}

impl HomOutcome {
    pub fn found(&self) -> Option<&Homomorphism> {
        match self {
            HomOutcome::Found(h) => Some(h),
            _ => None,
        }
    }
}

/// A clique in the conflict relation, grown greedily from every start
/// vertex; the largest one found. Any homomorphism is injective on it.
pub fn conflict_clique(g: &NmGraph) -> Vec<usize> {
    let adj = conflict_relation(g).adjacency(g.order());
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(adj[v].len()), v));
    let mut best = Vec::new();
    for &start in &order {
        if adj[start].len() < best.len() {
            break;
        }
        let mut clique = vec![start];
        for &v in &order {
            if v != start && clique.iter().all(|&c| adj[v].contains(&c)) {
                clique.push(v);
            }
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best.sort_unstable();
    best
}

/// The odd cycle `C_{2g+1}` with every edge of type 1.
fn odd_cycle_target(sig: Signature, g: usize) -> Result<NmGraph> {
    UndirectedGraph::cycle(2 * g + 1).typed(sig, AdjType::first())
}

/// Homomorphism of an undirected graph to `C_{2g+1}`, found by typing both
/// sides with a single edge type.
pub fn circular_hom(graph: &UndirectedGraph, g: usize, cfg: &SearchConfig) -> Result<HomOutcome> {
    if g == 0 {
        return Err(Error::Precondition("circular_hom needs g >= 1".into()));
    }
    let m = u32::try_from(g.max(2))
        .ok()
        .filter(|&m| m <= crate::graph::MAX_TYPES)
        .ok_or_else(|| Error::Precondition(format!("g = {g} too large")))?;
    let sig = Signature::new(0, m)?;
    let target = odd_cycle_target(sig, g)?;
    // orient every edge from its lower endpoint; type 1 is self-dual here
    let source = graph.typed(sig, AdjType::first())?;
    find_hom(&source, &target, cfg)
}
