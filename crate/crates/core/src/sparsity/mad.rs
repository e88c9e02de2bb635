use num_rational::Ratio;

use super::flow::MaxFlow;
use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;

/// Densest subgraph (maximizing `|E(H)|/|V(H)|`) by Dinkelbach iteration:
/// each round solves `max_S b·|E(S)| − a·|S|` for the current density `a/b`
/// as a minimum cut, and stops when no set beats it.
pub fn densest_subgraph(g: &UndirectedGraph) -> Result<(Vec<usize>, Ratio<i64>)> {
    let n = g.order();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut best: Vec<usize> = (0..n).collect();
    let mut density = Ratio::new(edges.len() as i64, n as i64);
    if edges.is_empty() {
        return Ok((vec![0], density));
    }
    let (src, sink) = (0, 1);
    let edge_node = |i: usize| 2 + i;
    let vertex_node = |v: usize| 2 + edges.len() + v;
    loop {
        let (a, b) = (*density.numer(), *density.denom());
        let mut net = MaxFlow::new(2 + edges.len() + n);
        let inf = b * edges.len() as i64 + 1;
        for (i, &(u, v)) in edges.iter().enumerate() {
            net.add_edge(src, edge_node(i), b);
            net.add_edge(edge_node(i), vertex_node(u), inf);
            net.add_edge(edge_node(i), vertex_node(v), inf);
        }
        for v in 0..n {
            net.add_edge(vertex_node(v), sink, a);
        }
        let cut = net.max_flow(src, sink);
        if b * edges.len() as i64 - cut <= 0 {
            return Ok((best, density));
        }
        let side = net.source_side(src);
        let set: Vec<usize> = (0..n).filter(|&v| side[vertex_node(v)]).collect();
        let inside = edges
            .iter()
            .filter(|&&(u, v)| side[vertex_node(u)] && side[vertex_node(v)])
            .count();
        let next = Ratio::new(inside as i64, set.len() as i64);
        if next <= density {
            return Err(Error::Invariant(format!(
                "densest-subgraph iteration did not improve: {next} <= {density}"
            )));
        }
        best = set;
        density = next;
    }
}

/// Maximum average degree `max 2|E(H)|/|V(H)|`, exact.
pub fn mad(g: &UndirectedGraph) -> Result<Ratio<i64>> {
    densest_subgraph(g).map(|(_, d)| d * 2)
}
