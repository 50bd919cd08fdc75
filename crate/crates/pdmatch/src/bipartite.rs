//! Maximum bipartite b-matching: left vertices are matched at most once,
//! right vertices up to a per-vertex cap.

use std::collections::VecDeque;

use crate::{Error, Result};

/// A bipartite graph with unit capacity on the left side and an individual
/// degree cap on every right vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapacitatedBipartiteGraph {
    left_count: usize,
    right_count: usize,
    edges: Vec<(usize, usize)>,
    right_caps: Vec<u64>,
}

impl CapacitatedBipartiteGraph {
    pub fn new(
        left_count: usize,
        right_count: usize,
        mut edges: Vec<(usize, usize)>,
        right_caps: Vec<u64>,
    ) -> Result<Self> {
        if right_caps.len() != right_count {
            return Err(Error::InvalidParam(format!(
                "{} caps for {} right vertices",
                right_caps.len(),
                right_count
            )));
        }
        edges.sort_unstable();
        for pair in edges.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::InvalidParam(format!("duplicate edge {:?}", pair[0])));
            }
        }
        for &(l, r) in &edges {
            if l >= left_count || r >= right_count {
                return Err(Error::InvalidParam(format!(
                    "edge ({l},{r}) out of range {left_count}x{right_count}"
                )));
            }
        }
        Ok(CapacitatedBipartiteGraph {
            left_count,
            right_count,
            edges,
            right_caps,
        })
    }

    pub fn left_count(&self) -> usize {
        self.left_count
    }

    pub fn right_count(&self) -> usize {
        self.right_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn right_caps(&self) -> &[u64] {
        &self.right_caps
    }
}

struct FlowEdge {
    to: usize,
    cap: u64,
}

/// Dinic's algorithm over the standard source/sink construction. Unit
/// capacities on the left keep the phase count at O(sqrt(V)).
struct Dinic {
    adj: Vec<Vec<usize>>,
    edges: Vec<FlowEdge>,
    level: Vec<u32>,
    next: Vec<usize>,
}

impl Dinic {
    fn new(nodes: usize) -> Self {
        Dinic {
            adj: vec![Vec::new(); nodes],
            edges: Vec::new(),
            level: vec![u32::MAX; nodes],
            next: vec![0; nodes],
        }
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: u64) -> usize {
        let id = self.edges.len();
        self.edges.push(FlowEdge { to, cap });
        self.edges.push(FlowEdge { to: from, cap: 0 });
        self.adj[from].push(id);
        self.adj[to].push(id + 1);
        id
    }

    fn bfs(&mut self, source: usize, sink: usize) -> bool {
        self.level.fill(u32::MAX);
        self.level[source] = 0;
        let mut queue = VecDeque::new();
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            for &id in &self.adj[v] {
                let e = &self.edges[id];
                if e.cap > 0 && self.level[e.to] == u32::MAX {
                    self.level[e.to] = self.level[v] + 1;
                    queue.push_back(e.to);
                }
            }
        }
        self.level[sink] != u32::MAX
    }

    fn dfs(&mut self, v: usize, sink: usize, budget: u64) -> u64 {
        if v == sink {
            return budget;
        }
        while self.next[v] < self.adj[v].len() {
            let id = self.adj[v][self.next[v]];
            let to = self.edges[id].to;
            let cap = self.edges[id].cap;
            if cap > 0 && self.level[to] == self.level[v] + 1 {
                let pushed = self.dfs(to, sink, budget.min(cap));
                if pushed > 0 {
                    self.edges[id].cap -= pushed;
                    self.edges[id ^ 1].cap += pushed;
                    return pushed;
                }
            }
            self.next[v] += 1;
        }
        0
    }

    fn max_flow(&mut self, source: usize, sink: usize) -> u64 {
        let mut flow = 0;
        while self.bfs(source, sink) {
            self.next.fill(0);
            loop {
                let pushed = self.dfs(source, sink, u64::MAX);
                if pushed == 0 {
                    break;
                }
                flow += pushed;
            }
        }
        flow
    }
}

/// Returns a maximum b-matching as (left, right) pairs sorted by left
/// vertex. Deterministic: vertices and edges are processed in ascending
/// index order.
pub fn max_b_matching(g: &CapacitatedBipartiteGraph) -> Vec<(usize, usize)> {
    let (l, r) = (g.left_count, g.right_count);
    if l == 0 || r == 0 || g.edges.is_empty() {
        return Vec::new();
    }
    let source = l + r;
    let sink = l + r + 1;
    let mut dinic = Dinic::new(l + r + 2);
    for v in 0..l {
        dinic.add_edge(source, v, 1);
    }
    let mut edge_ids = Vec::with_capacity(g.edges.len());
    for &(from, to) in &g.edges {
        edge_ids.push(dinic.add_edge(from, l + to, 1));
    }
    for (v, &cap) in g.right_caps.iter().enumerate() {
        // A cap above the left count can never bind.
        dinic.add_edge(l + v, sink, cap.min(l as u64));
    }
    dinic.max_flow(source, sink);

    let mut matched = Vec::new();
    for (k, &(from, to)) in g.edges.iter().enumerate() {
        if dinic.edges[edge_ids[k]].cap == 0 {
            matched.push((from, to));
        }
    }
    matched
}
