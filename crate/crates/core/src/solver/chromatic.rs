//! Exact (n,m)-chromatic number by searching vertex partitions whose
//! quotient is a valid (n,m)-graph.
//!
//! A partition is valid when no class contains an adjacency and, for every
//! pair of classes, all adjacencies between them carry the same view type.
//! The smallest valid quotient is a smallest homomorphic image.

use super::{conflict_clique, SearchConfig};
use crate::error::{Error, Result};
use crate::graph::{AdjType, NmGraph, NmGraphBuilder, Signature};
use crate::verify::{conflict_relation, is_homomorphism, Homomorphism, Verdict};

pub const CHROMATIC_LIMIT: usize = 40;
pub const ORACLE_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientCertificate {
    /// `partition[v]` is the class of `v`, classes numbered from 0.
    pub partition: Vec<usize>,
    pub quotient: NmGraph,
    pub witness: Homomorphism,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChromaticOutcome {
    Exact {
        k: usize,
        certificate: QuotientCertificate,
    },
    ExceedsMaxK,
    BudgetExhausted,
}

impl ChromaticOutcome {
    pub fn k(&self) -> Option<usize> {
        match self {
            ChromaticOutcome::Exact { k, .. } => Some(*k),
            _ => None,
        }
    }
}

const NONE: usize = usize::MAX;

/// Minimum number of classes over all valid quotient partitions, if at most
/// `max_k`. Tries `k` upward from the conflict-clique lower bound.
pub fn exact_chromatic(g: &NmGraph, max_k: usize, cfg: &SearchConfig) -> Result<ChromaticOutcome> {
    let n = g.order();
    if n > CHROMATIC_LIMIT {
        return Err(Error::Guard {
            what: "exact chromatic number",
            limit: CHROMATIC_LIMIT,
            actual: n,
        });
    }
    cfg.validate()?;
    if n == 0 {
        let certificate = certificate(g, vec![])?;
        return Ok(ChromaticOutcome::Exact { k: 0, certificate });
    }
    let lower = conflict_clique(g).len().max(1);
    let mut search = PartitionSearch::new(g, cfg.node_budget);
    for k in lower..=max_k.min(n) {
        match search.run(k) {
            Some(true) => {
                let partition = search.class_of.clone();
                let certificate = certificate(g, partition)?;
                return Ok(ChromaticOutcome::Exact { k, certificate });
            }
            Some(false) => {}
            None => return Ok(ChromaticOutcome::BudgetExhausted),
        }
    }
    Ok(ChromaticOutcome::ExceedsMaxK)
}

fn certificate(g: &NmGraph, partition: Vec<usize>) -> Result<QuotientCertificate> {
    let classes = partition.iter().map(|&c| c + 1).max().unwrap_or(0);
    let mut b = NmGraphBuilder::new(g.signature(), classes);
    for (u, v, a) in g.adjacency_list() {
        let (c, d) = (partition[u], partition[v]);
        // consistency of repeated class pairs is checked below
        if !b.is_adjacent(c, d) {
            b.set_adjacency(c, d, a)?;
        }
    }
    let quotient = b.build();
    let witness = Homomorphism {
        map: partition.clone(),
    };
    match is_homomorphism(g, &quotient, &witness.map)? {
        Verdict::Holds => Ok(QuotientCertificate {
            partition,
            quotient,
            witness,
        }),
        Verdict::Fails(w) => Err(Error::Invariant(format!(
            "quotient certificate rejected: {w:?}"
        ))),
    }
}

struct PartitionSearch {
    n: usize,
    sig: Signature,
    adj: Vec<Vec<(usize, u32)>>,
    conflict: Vec<u64>,
    class_of: Vec<usize>,
    class_mask: Vec<u64>,
    used: usize,
    k: usize,
    // rel[c*k+d] = view type of class d from class c (0 = none), with a count
    rel: Vec<u32>,
    cnt: Vec<u32>,
    nodes: u64,
    budget: u64,
}

impl PartitionSearch {
    fn new(g: &NmGraph, budget: u64) -> Self {
        let n = g.order();
        let adj = (0..n)
            .map(|u| g.adjacencies(u).map(|(v, a)| (v, a.value())).collect())
            .collect();
        let mut conflict = vec![0u64; n];
        for (u, w) in conflict_relation(g).pairs {
            conflict[u] |= 1 << w;
            conflict[w] |= 1 << u;
        }
        PartitionSearch {
            n,
            sig: g.signature(),
            adj,
            conflict,
            class_of: vec![NONE; n],
            class_mask: vec![],
            used: 0,
            k: 0,
            rel: vec![],
            cnt: vec![],
            nodes: 0,
            budget,
        }
    }

    /// `Some(true)` feasible (solution left in `class_of`), `Some(false)`
    /// infeasible, `None` out of budget.
    fn run(&mut self, k: usize) -> Option<bool> {
        self.k = k;
        self.class_of = vec![NONE; self.n];
        self.class_mask = vec![0; k];
        self.used = 0;
        self.rel = vec![0; k * k];
        self.cnt = vec![0; k * k];
        self.descend(self.n)
    }

    fn feasible(&self, v: usize, c: usize) -> bool {
        if self.conflict[v] & self.class_mask[c] != 0 {
            return false;
        }
        self.adj[v].iter().all(|&(w, a)| {
            let d = self.class_of[w];
            d == NONE || {
                let r = self.rel[c * self.k + d];
                r == 0 || r == a
            }
        })
    }

    fn options(&self, v: usize) -> usize {
        let existing = (0..self.used).filter(|&c| self.feasible(v, c)).count();
        existing + usize::from(self.used < self.k)
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.class_of[v] = c;
        self.class_mask[c] |= 1 << v;
        for i in 0..self.adj[v].len() {
            let (w, a) = self.adj[v][i];
            let d = self.class_of[w];
            if d == NONE || w == v {
                continue;
            }
            let (cd, dc) = (c * self.k + d, d * self.k + c);
            self.cnt[cd] += 1;
            self.cnt[dc] += 1;
            self.rel[cd] = a;
            self.rel[dc] = self.sig.dual_unchecked(a);
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.class_of[v];
        self.class_of[v] = NONE;
        self.class_mask[c] &= !(1 << v);
        for i in 0..self.adj[v].len() {
            let (w, _) = self.adj[v][i];
            let d = self.class_of[w];
            if d == NONE {
                continue;
            }
            let (cd, dc) = (c * self.k + d, d * self.k + c);
            self.cnt[cd] -= 1;
            self.cnt[dc] -= 1;
            if self.cnt[cd] == 0 {
                self.rel[cd] = 0;
                self.rel[dc] = 0;
            }
        }
    }

    fn descend(&mut self, remaining: usize) -> Option<bool> {
        if remaining == 0 {
            return Some(true);
        }
        // fewest options first, lowest index on ties
        let mut pick = NONE;
        let mut best = usize::MAX;
        for v in 0..self.n {
            if self.class_of[v] != NONE {
                continue;
            }
            let o = self.options(v);
            if o == 0 {
                return Some(false);
            }
            if o < best {
                best = o;
                pick = v;
            }
        }
        let v = pick;
        let opened = self.used;
        for c in 0..=opened.min(self.k - 1) {
            if c == opened && opened == self.k {
                break;
            }
            if !self.feasible(v, c) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            self.assign(v, c);
            if c == opened {
                self.used += 1;
            }
            let r = self.descend(remaining - 1);
            if r != Some(false) {
                return r;
            }
            if c == opened {
                self.used -= 1;
            }
            self.unassign(v);
        }
        Some(false)
    }
}

/// Brute-force minimum over all set partitions of `V(G)` (restricted growth
/// strings), checking each quotient directly. Independent of
/// [`exact_chromatic`]; for cross-validation only.
pub fn chromatic_oracle(g: &NmGraph) -> Result<usize> {
    let n = g.order();
    if n > ORACLE_LIMIT {
        return Err(Error::Guard {
            what: "chromatic oracle",
            limit: ORACLE_LIMIT,
            actual: n,
        });
    }
    if n == 0 {
        return Ok(0);
    }
    let edges = g.adjacency_list();
    let mut rgs = vec![0usize; n];
    let mut best = n;
    loop {
        let classes = rgs.iter().max().unwrap() + 1;
        if classes < best && quotient_is_valid(g.signature(), &edges, &rgs, classes) {
            best = classes;
        }
        // next restricted growth string
        let mut i = n - 1;
        loop {
            let prefix_max = rgs[..i].iter().copied().max().unwrap_or(0);
            if i > 0 && rgs[i] <= prefix_max {
                rgs[i] += 1;
                for x in &mut rgs[i + 1..] {
                    *x = 0;
                }
                break;
            }
            if i == 0 {
                return Ok(best);
            }
            i -= 1;
        }
    }
}

fn quotient_is_valid(
    sig: Signature,
    edges: &[(usize, usize, AdjType)],
    part: &[usize],
    classes: usize,
) -> bool {
    // seen[c*classes+d], c < d: the view type of class d from class c
    let mut seen: Vec<Option<u32>> = vec![None; classes * classes];
    for &(u, v, a) in edges {
        let (c, d) = (part[u], part[v]);
        if c == d {
            return false;
        }
        let (key, t) = if c < d {
            (c * classes + d, a.value())
        } else {
            (d * classes + c, sig.dual(a).unwrap().value())
        };
        match seen[key] {
            None => seen[key] = Some(t),
            Some(prev) if prev != t => return false,
            Some(_) => {}
        }
    }
    true
}
