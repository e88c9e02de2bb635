//! Backtracking homomorphism search with forward checking or AC-3.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{conflict_clique, HomOutcome, Propagation, SearchConfig, VarOrder};
use crate::error::{Error, Result};
use crate::graph::NmGraph;
use crate::verify::{is_homomorphism, Homomorphism, Verdict};

/// Searches for a homomorphism `G → H`.
pub fn find_hom(g: &NmGraph, h: &NmGraph, cfg: &SearchConfig) -> Result<HomOutcome> {
    find_hom_with(g, h, cfg, &[])
}

/// As [`find_hom`], with some source vertices pinned to given target vertices.
pub fn find_hom_with(
    g: &NmGraph,
    h: &NmGraph,
    cfg: &SearchConfig,
    pinned: &[(usize, usize)],
) -> Result<HomOutcome> {
    if g.signature() != h.signature() {
        let (a, b) = (g.signature(), h.signature());
        return Err(Error::SignatureMismatch(a.n(), a.m(), b.n(), b.m()));
    }
    cfg.validate()?;
    for &(v, x) in pinned {
        if v >= g.order() || x >= h.order() {
            return Err(Error::Precondition(format!("pin {v}->{x} out of range")));
        }
    }
    if g.order() == 0 {
        return Ok(HomOutcome::Found(Homomorphism { map: vec![] }));
    }
    if h.order() == 0 || conflict_clique(g).len() > h.order() {
        return Ok(HomOutcome::NoHomomorphism);
    }

    let mut search = Search::new(g, h, cfg);
    let mut map = vec![usize::MAX; g.order()];
    for comp in components(g) {
        let mut domains = search.initial_domains(&comp);
        for &(v, x) in pinned {
            if comp.contains(&v) {
                let keep = domains[v].contains(x);
                domains[v].clear();
                if keep {
                    domains[v].insert(x);
                }
            }
        }
        let queue: VecDeque<(usize, usize, usize)> = match cfg.propagation {
            Propagation::ArcConsistency => comp
                .iter()
                .flat_map(|&u| search.adj[u].iter().map(move |&(v, a)| (u, v, a)))
                .collect(),
            Propagation::None => VecDeque::new(),
        };
        if comp.iter().any(|&v| domains[v].is_clear())
            || !search.propagate(&mut domains, queue, true)
        {
            return Ok(HomOutcome::NoHomomorphism);
        }
        let mut assigned = vec![false; g.order()];
        match search.solve(&comp, domains, &mut assigned) {
            Step::Solved(doms) => {
                for &v in &comp {
                    map[v] = doms[v].ones().next().unwrap();
                }
            }
            Step::Dead => return Ok(HomOutcome::NoHomomorphism),
            Step::OutOfBudget => return Ok(HomOutcome::BudgetExhausted),
        }
    }
    match is_homomorphism(g, h, &map)? {
        Verdict::Holds => Ok(HomOutcome::Found(Homomorphism { map })),
        Verdict::Fails(w) => Err(Error::Invariant(format!(
            "search produced an invalid map: {w:?}"
        ))),
    }
}

fn components(g: &NmGraph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.order()];
    let mut out = Vec::new();
    for s in 0..g.order() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            for (v, _) in g.adjacencies(u) {
                if !seen[v] {
                    seen[v] = true;
                    comp.push(v);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

enum Step {
    Solved(Vec<FixedBitSet>),
    Dead,
    OutOfBudget,
}

struct Search<'a> {
    cfg: &'a SearchConfig,
    // adj[u] = (v, a) with v ∈ N^{a+1}(u)
    adj: Vec<Vec<(usize, usize)>>,
    // nbr[x][a] = N^{a+1}(x) in H
    nbr: Vec<Vec<FixedBitSet>>,
    h_order: usize,
    value_order: Vec<usize>,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn new(g: &NmGraph, h: &NmGraph, cfg: &'a SearchConfig) -> Self {
        let p = g.signature().types() as usize;
        let adj = (0..g.order())
            .map(|u| g.adjacencies(u).map(|(v, a)| (v, a.index())).collect())
            .collect();
        let mut nbr = vec![vec![FixedBitSet::with_capacity(h.order()); p]; h.order()];
        for (x, sets) in nbr.iter_mut().enumerate() {
            for (y, a) in h.adjacencies(x) {
                sets[a.index()].insert(y);
            }
        }
        let mut value_order: Vec<usize> = (0..h.order()).collect();
        if cfg.seed != 0 {
            value_order.shuffle(&mut ChaCha8Rng::seed_from_u64(cfg.seed));
        }
        Search {
            cfg,
            adj,
            nbr,
            h_order: h.order(),
            value_order,
            nodes: 0,
        }
    }

    /// Full domains, restricted to target vertices that have every
    /// adjacency type the source vertex needs.
    fn initial_domains(&self, comp: &[usize]) -> Vec<FixedBitSet> {
        let mut full = FixedBitSet::with_capacity(self.h_order);
        full.insert_range(..);
        let mut domains = vec![FixedBitSet::with_capacity(self.h_order); self.adj.len()];
        for &u in comp {
            let mut d = full.clone();
            for &(_, a) in &self.adj[u] {
                for x in 0..self.h_order {
                    if self.nbr[x][a].is_clear() {
                        d.set(x, false);
                    }
                }
            }
            domains[u] = d;
        }
        domains
    }

    /// Revises arcs `(u, v)`: prunes `dom[v]` against `dom[u]`. With AC-3 the
    /// queue is refilled on every change.
    fn propagate(
        &self,
        domains: &mut [FixedBitSet],
        mut queue: VecDeque<(usize, usize, usize)>,
        full: bool,
    ) -> bool {
        // (u, v, a): v ∈ N^{a+1}(u) ⇒ f(v) ∈ N^{a+1}(f(u))
        while let Some((u, v, a)) = queue.pop_front() {
            let mut support = FixedBitSet::with_capacity(self.h_order);
            for x in domains[u].ones() {
                support.union_with(&self.nbr[x][a]);
            }
            let before = domains[v].count_ones(..);
            domains[v].intersect_with(&support);
            let after = domains[v].count_ones(..);
            if after == 0 {
                return false;
            }
            if full && after < before {
                for &(w, b) in &self.adj[v] {
                    if w != u {
                        queue.push_back((v, w, b));
                    }
                }
            }
        }
        true
    }

    fn pick(&self, comp: &[usize], domains: &[FixedBitSet], assigned: &[bool]) -> Option<usize> {
        let mut free = comp.iter().copied().filter(|&v| !assigned[v]);
        match self.cfg.order {
            VarOrder::Static => free.next(),
            VarOrder::MinRemainingValues => free.min_by_key(|&v| (domains[v].count_ones(..), v)),
        }
    }

    fn solve(&mut self, comp: &[usize], domains: Vec<FixedBitSet>, assigned: &mut [bool]) -> Step {
        let Some(u) = self.pick(comp, &domains, assigned) else {
            return Step::Solved(domains);
        };
        assigned[u] = true;
        for i in 0..self.value_order.len() {
            let x = self.value_order[i];
            if !domains[u].contains(x) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.cfg.node_budget {
                assigned[u] = false;
                return Step::OutOfBudget;
            }
            let mut next = domains.clone();
            next[u].clear();
            next[u].insert(x);
            let queue = self.adj[u].iter().map(|&(v, a)| (u, v, a)).collect();
            let full = self.cfg.propagation == Propagation::ArcConsistency;
            if !self.propagate(&mut next, queue, full) {
                continue;
            }
            match self.solve(comp, next, assigned) {
                Step::Dead => {}
                done => {
                    assigned[u] = false;
                    return done;
                }
            }
        }
        assigned[u] = false;
        Step::Dead
    }
}
