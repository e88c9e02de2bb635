//! Dinic's maximum flow on integer capacities.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct FlowEdge {
    to: usize,
    cap: i64,
}

#[derive(Debug, Clone)]
pub(crate) struct MaxFlow {
    edges: Vec<FlowEdge>,
    graph: Vec<Vec<usize>>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl MaxFlow {
    pub fn new(n: usize) -> Self {
        MaxFlow {
            edges: Vec::new(),
            graph: vec![Vec::new(); n],
            level: vec![0; n],
            iter: vec![0; n],
        }
    }

    pub fn add_edge(&mut self, from: usize, to: usize, cap: i64) {
        self.graph[from].push(self.edges.len());
        self.edges.push(FlowEdge { to, cap });
        self.graph[to].push(self.edges.len());
        self.edges.push(FlowEdge { to: from, cap: 0 });
    }

    fn bfs(&mut self, s: usize) {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &id in &self.graph[v] {
                let e = &self.edges[id];
                if e.cap > 0 && self.level[e.to] < 0 {
                    self.level[e.to] = self.level[v] + 1;
                    q.push_back(e.to);
                }
            }
        }
    }

    fn dfs(&mut self, v: usize, t: usize, f: i64) -> i64 {
        if v == t {
            return f;
        }
        while self.iter[v] < self.graph[v].len() {
            let id = self.graph[v][self.iter[v]];
            let (to, cap) = (self.edges[id].to, self.edges[id].cap);
            if cap > 0 && self.level[v] < self.level[to] {
                let d = self.dfs(to, t, f.min(cap));
                if d > 0 {
                    self.edges[id].cap -= d;
                    self.edges[id ^ 1].cap += d;
                    return d;
                }
            }
            self.iter[v] += 1;
        }
        0
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut flow = 0;
        loop {
            self.bfs(s);
            if self.level[t] < 0 {
                return flow;
            }
            self.iter.iter_mut().for_each(|i| *i = 0);
            loop {
                let f = self.dfs(s, t, i64::MAX);
                if f == 0 {
                    break;
                }
                flow += f;
            }
        }
    }

    /// Vertices reachable from `s` in the residual graph (after `max_flow`).
    pub fn source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.graph.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &id in &self.graph[v] {
                let e = &self.edges[id];
                if e.cap > 0 && !seen[e.to] {
                    seen[e.to] = true;
                    stack.push(e.to);
                }
            }
        }
        seen
    }
}
