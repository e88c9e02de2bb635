//! Acyclic coloring from a forest decomposition and per-digit (n,m)-colorings.
//!
//! With forests indexed `1..=r` and `b = ⌈log_p r⌉` (`p = 2n+m`), layer `G_0`
//! gives every edge view type 1 from its earlier endpoint, and layer `G_l`
//! gives an edge of forest `q` the view type `d_l(q) + 1`, where `d_l(q)` is
//! the `l`-th most significant base-`p` digit of `q mod p^b` written with
//! exactly `b` digits. Coloring every layer by a minimum homomorphic image
//! and taking the tuple of layer colors yields an acyclic coloring: two
//! incident edges from different forests differ in some digit, so in that
//! layer they form a special 2-path whose ends get distinct colors.

use std::collections::HashMap;

use rayon::prelude::*;

use super::arboricity::{arboricity, ForestDecomposition};
use crate::error::{Error, Result};
use crate::graph::{NmGraph, NmGraphBuilder, Signature, UndirectedGraph};
use crate::solver::{
    exact_chromatic, ChromaticOutcome, QuotientCertificate, SearchConfig, CHROMATIC_LIMIT,
};
use crate::verify::{is_acyclic_coloring, Verdict};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub colors: Vec<usize>,
    pub palette: usize,
}

impl Coloring {
    /// Renumbers arbitrary color keys by first appearance.
    pub fn from_keys<K: std::hash::Hash + Eq + Clone>(keys: &[K]) -> Self {
        let mut ids: HashMap<K, usize> = HashMap::new();
        let colors = keys
            .iter()
            .map(|k| {
                let next = ids.len();
                *ids.entry(k.clone()).or_insert(next)
            })
            .collect();
        Coloring {
            colors,
            palette: ids.len(),
        }
    }
}

/// Smallest `b` with `p^b >= r` (0 for `r <= 1`).
pub fn digit_count(p: u64, r: u64) -> u32 {
    let mut b = 0;
    let mut pow = 1u64;
    while pow < r {
        pow = pow.saturating_mul(p);
        b += 1;
    }
    b
}

pub fn digit_graphs(
    g: &UndirectedGraph,
    dec: &ForestDecomposition,
    sig: Signature,
    order: &[usize],
) -> Result<Vec<NmGraph>> {
    dec.validate(g)?;
    let n = g.order();
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return Err(Error::Precondition("order is not a permutation".into()));
        }
        pos[v] = i;
    }
    if order.len() != n {
        return Err(Error::Precondition("order is not a permutation".into()));
    }
    let p = sig.types() as u64;
    let b = digit_count(p, dec.r as u64);
    let modulus = p.pow(b);
    let oriented = |u: usize, v: usize| if pos[u] < pos[v] { (u, v) } else { (v, u) };

    let mut layers = Vec::with_capacity(b as usize + 1);
    let mut base = NmGraphBuilder::new(sig, n);
    for (u, v) in g.edges() {
        let (lo, hi) = oriented(u, v);
        base.set_adjacency(lo, hi, sig.adj_type(1)?)?;
    }
    layers.push(base.build());
    for l in 1..=b {
        let mut layer = NmGraphBuilder::new(sig, n);
        for (&(u, v), &q) in &dec.assignment {
            let code = q as u64 % modulus;
            let digit = code / p.pow(b - l) % p;
            let (lo, hi) = oriented(u, v);
            layer.set_adjacency(lo, hi, sig.adj_type(digit as u32 + 1)?)?;
        }
        layers.push(layer.build());
    }
    Ok(layers)
}

#[derive(Debug, Clone)]
pub struct AcyclicConstruction {
    pub coloring: Coloring,
    /// Per-vertex tuple of layer colors.
    pub tuples: Vec<Vec<usize>>,
    pub decomposition: ForestDecomposition,
    pub b: u32,
    /// Largest layer chromatic number.
    pub k: usize,
    pub layers: Vec<(NmGraph, QuotientCertificate)>,
}

impl AcyclicConstruction {
    pub fn palette_bound(&self) -> u128 {
        (self.k as u128).pow(self.b + 1)
    }
}

pub fn acyclic_coloring_construct(
    g: &UndirectedGraph,
    sig: Signature,
    cfg: &SearchConfig,
) -> Result<AcyclicConstruction> {
    let n = g.order();
    if n > CHROMATIC_LIMIT {
        return Err(Error::Guard {
            what: "acyclic coloring construction",
            limit: CHROMATIC_LIMIT,
            actual: n,
        });
    }
    let decomposition = arboricity(g)?;
    let order: Vec<usize> = (0..n).collect();
    let graphs = digit_graphs(g, &decomposition, sig, &order)?;
    let b = graphs.len() as u32 - 1;
    let layers = graphs
        .into_par_iter()
        .map(|layer| match exact_chromatic(&layer, n, cfg)? {
            ChromaticOutcome::Exact { certificate, .. } => Ok((layer, certificate)),
            ChromaticOutcome::BudgetExhausted => {
                Err(Error::BudgetExhausted("layer chromatic number".into()))
            }
            ChromaticOutcome::ExceedsMaxK => Err(Error::Invariant(
                "layer needs more colors than vertices".into(),
            )),
        })
        .collect::<Result<Vec<_>>>()?;
    let k = layers
        .iter()
        .map(|(_, c)| c.quotient.order())
        .max()
        .unwrap_or(0);
    let tuples: Vec<Vec<usize>> = (0..n)
        .map(|v| layers.iter().map(|(_, c)| c.partition[v]).collect())
        .collect();
    let coloring = Coloring::from_keys(&tuples);
    if let Verdict::Fails(w) = is_acyclic_coloring(g, &coloring.colors)? {
        return Err(Error::Invariant(format!(
            "product coloring is not acyclic: {w:?}"
        )));
    }
    let out = AcyclicConstruction {
        coloring,
        tuples,
        decomposition,
        b,
        k,
        layers,
    };
    if out.coloring.palette as u128 > out.palette_bound() {
        return Err(Error::Invariant(format!(
            "palette {} exceeds k^(b+1) = {}",
            out.coloring.palette,
            out.palette_bound()
        )));
    }
    Ok(out)
}

pub const ARB_BOUND_LIMIT: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArbBoundReport {
    pub arboricity: usize,
    /// Maximum (n,m)-chromatic number over all typings of the graph.
    pub k: usize,
    /// `⌈log_p k + k/2⌉`.
    pub bound: u64,
    pub holds: bool,
}

/// `⌈log_p k + k/2⌉` in integer arithmetic: the least `B` with `2B >= k` and
/// `p^(2B-k) >= k^2`.
pub fn arb_bound_value(p: u64, k: u64) -> u64 {
    if k == 0 {
        return 0;
    }
    let mut bound = k.div_ceil(2);
    loop {
        let exp = (2 * bound - k) as u32;
        let lhs = (p as u128).checked_pow(exp).unwrap_or(u128::MAX);
        if lhs >= (k as u128) * (k as u128) {
            return bound;
        }
        bound += 1;
    }
}

/// Graph-level chromatic number by maximizing over every typing, then the
/// arboricity bound check.
pub fn check_arb_bound(
    g: &UndirectedGraph,
    sig: Signature,
    cfg: &SearchConfig,
) -> Result<ArbBoundReport> {
    if g.order() > ARB_BOUND_LIMIT {
        return Err(Error::Guard {
            what: "arboricity bound check",
            limit: ARB_BOUND_LIMIT,
            actual: g.order(),
        });
    }
    let p = sig.types();
    if p != 2 {
        return Err(Error::Precondition(
            "arboricity bound check supports 2n+m = 2 only".into(),
        ));
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let total = (p as u64).pow(edges.len() as u32);
    let mut k = 0;
    for code in 0..total {
        let mut b = NmGraphBuilder::new(sig, g.order());
        let mut c = code;
        for &(u, v) in &edges {
            b.set_adjacency(u, v, sig.adj_type((c % p as u64) as u32 + 1)?)?;
            c /= p as u64;
        }
        match exact_chromatic(&b.build(), g.order(), cfg)? {
            ChromaticOutcome::Exact { k: kk, .. } => k = k.max(kk),
            _ => return Err(Error::BudgetExhausted("typing chromatic number".into())),
        }
    }
    let arb = arboricity(g)?.r;
    let bound = arb_bound_value(p as u64, k as u64);
    Ok(ArbBoundReport {
        arboricity: arb,
        k,
        bound,
        holds: arb as u64 <= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::AdjType;

    fn sig(n: u32, m: u32) -> Signature {
        Signature::new(n, m).unwrap()
    }

    #[test]
    fn digit_counts() {
        assert_eq!(digit_count(2, 1), 0);
        assert_eq!(digit_count(2, 2), 1);
        assert_eq!(digit_count(2, 3), 2);
        assert_eq!(digit_count(3, 3), 1);
        assert_eq!(digit_count(3, 4), 2);
        assert_eq!(digit_count(2, 0), 0);
    }

    #[test]
    fn single_forest_has_one_layer() {
        let tree = UndirectedGraph::from_edges(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        let dec = arboricity(&tree).unwrap();
        let layers = digit_graphs(&tree, &dec, sig(0, 2), &[0, 1, 2, 3]).unwrap();
        assert_eq!(layers.len(), 1);
        assert_eq!(layers[0].view(0, 1), Some(AdjType::first()));
    }

    #[test]
    fn two_forests_one_digit() {
        let k4 = UndirectedGraph::complete(4);
        let dec = arboricity(&k4).unwrap();
        assert_eq!(dec.r, 2);
        let layers = digit_graphs(&k4, &dec, sig(0, 2), &[0, 1, 2, 3]).unwrap();
        assert_eq!(layers.len(), 2);
        for (&(u, v), &q) in &dec.assignment {
            let want = if q == 1 { 2 } else { 1 };
            assert_eq!(layers[1].view(u, v).unwrap().value(), want);
        }
        for layer in &layers {
            assert_eq!(layer.underlying(), k4);
        }
        assert!(digit_graphs(&k4, &dec, sig(0, 2), &[0, 1, 2]).is_err());
        assert!(digit_graphs(&k4, &dec, sig(0, 2), &[0, 1, 2, 2]).is_err());
    }

    #[test]
    fn bound_values() {
        // ceil(log2 3 + 1.5) = ceil(3.08) = 4
        assert_eq!(arb_bound_value(2, 3), 4);
        // ceil(log2 4 + 2) = 4
        assert_eq!(arb_bound_value(2, 4), 4);
        // ceil(0 + 0.5) = 1
        assert_eq!(arb_bound_value(2, 1), 1);
        // ceil(1 + 1) = 2
        assert_eq!(arb_bound_value(2, 2), 2);
        // ceil(log3 5 + 2.5) = ceil(3.96) = 4
        assert_eq!(arb_bound_value(3, 5), 4);
    }

    #[test]
    fn construct_on_tree_and_c5() {
        let cfg = SearchConfig::default();
        let tree = UndirectedGraph::from_edges(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        let out = acyclic_coloring_construct(&tree, sig(0, 2), &cfg).unwrap();
        assert_eq!(out.b, 0);
        assert!(out.coloring.palette <= out.k);

        let c5 = UndirectedGraph::cycle(5);
        let out = acyclic_coloring_construct(&c5, sig(1, 0), &cfg).unwrap();
        assert_eq!(out.decomposition.r, 2);
        assert!(is_acyclic_coloring(&c5, &out.coloring.colors)
            .unwrap()
            .holds());
        assert!(out.coloring.palette as u128 <= out.palette_bound());
    }

    #[test]
    fn arb_bound_examples() {
        let cfg = SearchConfig::default();
        let r = check_arb_bound(&UndirectedGraph::complete(4), sig(0, 2), &cfg).unwrap();
        assert_eq!(r.arboricity, 2);
        assert!(r.holds);
        let r = check_arb_bound(&UndirectedGraph::cycle(4), sig(1, 0), &cfg).unwrap();
        assert_eq!(r.arboricity, 2);
        assert!(r.holds);
        let p3 = UndirectedGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let r = check_arb_bound(&p3, sig(0, 2), &cfg).unwrap();
        assert_eq!(r.arboricity, 1);
        assert!(r.k <= 3 && r.holds);
        assert!(check_arb_bound(&UndirectedGraph::new(6), sig(0, 2), &cfg).is_err());
        assert!(check_arb_bound(&p3, sig(1, 1), &cfg).is_err());
    }
}
