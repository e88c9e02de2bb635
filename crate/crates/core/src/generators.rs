//! Instance generators. Every random generator is a pure function of its
//! [`GenSpec`].

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{NmGraph, NmGraphBuilder, Signature, UndirectedGraph};
use crate::sparsity::mad;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub seed: u64,
    pub sig: Signature,
    /// Deletion probability for non-base edges of a partial 2-tree.
    pub delete_prob: f64,
}

impl GenSpec {
    pub fn new(seed: u64, sig: Signature) -> Self {
        GenSpec {
            seed,
            sig,
            delete_prob: 0.2,
        }
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// `K_k` with every edge replaced by a special 2-path: vertices `0..k` are
/// the originals, followed by one middle vertex per pair `u < w` in
/// lexicographic order, with the middle in `N^1(u)` and in `N^2(w)`.
pub fn kclique_gadget(k: usize, sig: Signature) -> Result<NmGraph> {
    if k < 2 {
        return Err(Error::Precondition(format!("gadget needs k >= 2, got {k}")));
    }
    if sig.types() < 2 {
        return Err(Error::Precondition(
            "gadget needs at least two adjacency types".into(),
        ));
    }
    let mut b = NmGraphBuilder::new(sig, k);
    let (one, two) = (sig.adj_type(1)?, sig.adj_type(2)?);
    for u in 0..k {
        for w in u + 1..k {
            let x = b.add_vertex();
            b.set_adjacency(u, x, one)?;
            b.set_adjacency(w, x, two)?;
        }
    }
    Ok(b.build())
}

/// Gives every edge a uniformly random view type from its lower endpoint.
pub fn random_typing<R: Rng>(g: &UndirectedGraph, sig: Signature, rng: &mut R) -> Result<NmGraph> {
    let mut b = NmGraphBuilder::new(sig, g.order());
    for (u, v) in g.edges() {
        let a = sig.adj_type(rng.gen_range(1..=sig.types()))?;
        b.set_adjacency(u, v, a)?;
    }
    Ok(b.build())
}

/// Random 2-tree grown from the edge `(0, 1)`, thinned by deleting each
/// other edge with probability `spec.delete_prob`, then randomly typed.
pub fn random_partial_2tree(nv: usize, spec: &GenSpec) -> Result<NmGraph> {
    if nv < 2 {
        return Err(Error::Precondition(format!(
            "partial 2-tree needs nv >= 2, got {nv}"
        )));
    }
    if !(0.0..=1.0).contains(&spec.delete_prob) {
        return Err(Error::Precondition(format!(
            "delete probability {} outside [0, 1]",
            spec.delete_prob
        )));
    }
    let mut rng = spec.rng();
    let mut edges = vec![(0usize, 1usize)];
    for v in 2..nv {
        let (a, b) = edges[rng.gen_range(0..edges.len())];
        edges.push((a, v));
        edges.push((b, v));
    }
    let mut g = UndirectedGraph::new(nv);
    for (i, &(u, v)) in edges.iter().enumerate() {
        if i == 0 || !rng.gen_bool(spec.delete_prob) {
            g.add_edge(u, v)?;
        }
    }
    random_typing(&g, spec.sig, &mut rng)
}

/// `2 + 2/(4p − 1)` for `p = 2n+m`.
pub fn low_mad_threshold(sig: Signature) -> Ratio<i64> {
    let p = sig.types() as i64;
    Ratio::from_integer(2) + Ratio::new(2, 4 * p - 1)
}

/// Random subdivided skeleton with `mad` below [`low_mad_threshold`].
///
/// The skeleton is a Hamiltonian cycle plus a random matching of chords
/// (maximum degree 3). Each skeleton edge becomes a chain with at least
/// `2p` internal vertices and leftover vertices are spread at random so the
/// result has exactly `nv` vertices. If the exact `mad` check fails the
/// minimum chain length grows by one. When `nv` is too small for a
/// three-vertex skeleton the output is a randomly typed cycle.
pub fn random_low_mad(nv: usize, spec: &GenSpec) -> Result<NmGraph> {
    if nv < 3 {
        return Err(Error::Precondition(format!(
            "low-mad generator needs nv >= 3, got {nv}"
        )));
    }
    let threshold = low_mad_threshold(spec.sig);
    let mut rng = spec.rng();
    let mut chain = 2 * spec.sig.types() as usize;
    loop {
        let g = subdivided_skeleton(nv, chain, &mut rng)?;
        if mad(&g)? < threshold {
            return random_typing(&g, spec.sig, &mut rng);
        }
        chain += 1;
    }
}

fn subdivided_skeleton<R: Rng>(nv: usize, chain: usize, rng: &mut R) -> Result<UndirectedGraph> {
    // s skeleton vertices with c chords need s + (s + c) * chain <= nv
    let s_max = nv / (chain + 1);
    if s_max < 3 {
        return Ok(UndirectedGraph::cycle(nv));
    }
    let s = rng.gen_range(3..=s_max);
    let spare = nv - s - s * chain;
    let c_max = (s / 2).min(spare / chain);
    let c = rng.gen_range(0..=c_max);

    let mut ring: Vec<usize> = (0..s).collect();
    ring.shuffle(rng);
    let mut skeleton: Vec<(usize, usize)> = (0..s).map(|i| (ring[i], ring[(i + 1) % s])).collect();
    let mut ends: Vec<usize> = (0..s).collect();
    ends.shuffle(rng);
    skeleton.extend((0..c).map(|i| (ends[2 * i], ends[2 * i + 1])));

    let mut lengths = vec![chain; skeleton.len()];
    for _ in 0..nv - s - skeleton.len() * chain {
        lengths[rng.gen_range(0..skeleton.len())] += 1;
    }
    let mut g = UndirectedGraph::new(s);
    for (&(a, b), &len) in skeleton.iter().zip(&lengths) {
        let mut prev = a;
        for _ in 0..len {
            let x = g.add_vertex();
            g.add_edge(prev, x)?;
            prev = x;
        }
        g.add_edge(prev, b)?;
    }
    debug_assert_eq!(g.order(), nv);
    Ok(g)
}
