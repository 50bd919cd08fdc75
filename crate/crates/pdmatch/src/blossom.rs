//! Maximum matching in general (not necessarily bipartite) graphs via
//! Edmonds' blossom contraction.

use std::collections::VecDeque;

use crate::{Error, Result};

/// A simple undirected graph on `vertex_count` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl GeneralGraph {
    /// Builds a graph, normalizing each edge to (min, max) order and
    /// rejecting self-loops and duplicates.
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut normalized: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidParam(format!("self-loop at vertex {u}")));
            }
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidParam(format!(
                    "edge ({u},{v}) out of range for {vertex_count} vertices"
                )));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        for pair in normalized.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::InvalidParam(format!("duplicate edge {:?}", pair[0])));
            }
        }
        Ok(GeneralGraph {
            vertex_count,
            edges: normalized,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

const UNMATCHED: usize = usize::MAX;

struct Blossom<'a> {
    adj: Vec<Vec<usize>>,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    graph: &'a GeneralGraph,
}

impl<'a> Blossom<'a> {
    fn new(graph: &'a GeneralGraph) -> Self {
        let n = graph.vertex_count();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in graph.edges() {
            adj[u].push(v);
            adj[v].push(u);
        }
        // Ascending neighbor order fixes the scan order.
        for list in &mut adj {
            list.sort_unstable();
        }
        Blossom {
            adj,
            mate: vec![UNMATCHED; n],
            parent: vec![UNMATCHED; n],
            base: (0..n).collect(),
            graph,
        }
    }

    fn lca(&self, mut u: usize, mut v: usize) -> usize {
        let n = self.graph.vertex_count();
        let mut seen = vec![false; n];
        loop {
            u = self.base[u];
            seen[u] = true;
            if self.mate[u] == UNMATCHED {
                break;
            }
            u = self.parent[self.mate[u]];
        }
        loop {
            v = self.base[v];
            if seen[v] {
                return v;
            }
            v = self.parent[self.mate[v]];
        }
    }

    fn mark_path(&mut self, mut v: usize, root: usize, mut child: usize, in_blossom: &mut [bool]) {
        while self.base[v] != root {
            in_blossom[self.base[v]] = true;
            in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// BFS for an augmenting path from `start`, contracting blossoms as odd
    /// cycles are discovered. Returns the free endpoint when one is found.
    fn find_path(&mut self, start: usize) -> Option<usize> {
        let n = self.graph.vertex_count();
        self.parent.fill(UNMATCHED);
        for v in 0..n {
            self.base[v] = v;
        }
        let mut used = vec![false; n];
        used[start] = true;
        let mut queue = VecDeque::new();
        queue.push_back(start);

        while let Some(v) = queue.pop_front() {
            for idx in 0..self.adj[v].len() {
                let to = self.adj[v][idx];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == start
                    || (self.mate[to] != UNMATCHED && self.parent[self.mate[to]] != UNMATCHED)
                {
                    // Odd cycle: contract the blossom rooted at the LCA.
                    let root = self.lca(v, to);
                    let mut in_blossom = vec![false; n];
                    self.mark_path(v, root, to, &mut in_blossom);
                    self.mark_path(to, root, v, &mut in_blossom);
                    for u in 0..n {
                        if in_blossom[self.base[u]] {
                            self.base[u] = root;
                            if !used[u] {
                                used[u] = true;
                                queue.push_back(u);
                            }
                        }
                    }
                } else if self.parent[to] == UNMATCHED {
                    self.parent[to] = v;
                    if self.mate[to] == UNMATCHED {
                        return Some(to);
                    }
                    used[self.mate[to]] = true;
                    queue.push_back(self.mate[to]);
                }
            }
        }
        None
    }

    fn augment(&mut self, start: usize, mut finish: usize) {
        while finish != UNMATCHED {
            let prev = self.parent[finish];
            let next = self.mate[prev];
            self.mate[finish] = prev;
            self.mate[prev] = finish;
            if prev == start {
                break;
            }
            finish = next;
        }
    }

    fn run(mut self) -> Vec<(usize, usize)> {
        for v in 0..self.graph.vertex_count() {
            if self.mate[v] == UNMATCHED {
                if let Some(finish) = self.find_path(v) {
                    self.augment(v, finish);
                }
            }
        }
        let mut matched = Vec::new();
        for v in 0..self.graph.vertex_count() {
            if self.mate[v] != UNMATCHED && v < self.mate[v] {
                matched.push((v, self.mate[v]));
            }
        }
        matched
    }
}

/// Returns a maximum matching as vertex-disjoint edges sorted by first
/// endpoint. A perfect matching exists iff the result covers every vertex.
pub fn max_general_matching(g: &GeneralGraph) -> Vec<(usize, usize)> {
    Blossom::new(g).run()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn graph(n: usize, edges: Vec<(usize, usize)>) -> GeneralGraph {
        GeneralGraph::new(n, edges).unwrap()
    }

    // Backtracking over edges; exponential, for cross-checking only.
    fn brute_max_matching(g: &GeneralGraph) -> usize {
        fn rec(edges: &[(usize, usize)], used: &mut [bool], at: usize) -> usize {
            if at == edges.len() {
                return 0;
            }
            let mut best = rec(edges, used, at + 1);
            let (u, v) = edges[at];
            if !used[u] && !used[v] {
                used[u] = true;
                used[v] = true;
                best = best.max(1 + rec(edges, used, at + 1));
                used[u] = false;
                used[v] = false;
            }
            best
        }
        rec(g.edges(), &mut vec![false; g.vertex_count()], 0)
    }

    fn assert_disjoint(matched: &[(usize, usize)], n: usize) {
        let mut used = vec![false; n];
        for &(u, v) in matched {
            assert!(!used[u] && !used[v], "shared endpoint in {matched:?}");
            used[u] = true;
            used[v] = true;
        }
    }

    #[test]
    fn triangle() {
        let g = graph(3, vec![(0, 1), (1, 2), (2, 0)]);
        assert_eq!(max_general_matching(&g).len(), 1);
    }

    #[test]
    fn four_cycle_is_perfect() {
        let g = graph(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(max_general_matching(&g).len(), 2);
    }

    #[test]
    fn five_cycle_with_pendant() {
        let g = graph(6, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5)]);
        // Cross-checked by enumerating all matchings of the 6-vertex graph.
        assert_eq!(brute_max_matching(&g), 3);
        let matched = max_general_matching(&g);
        assert_disjoint(&matched, 6);
        assert_eq!(matched.len(), 3);
    }

    #[test]
    fn rejects_self_loop_and_duplicates() {
        assert!(GeneralGraph::new(2, vec![(0, 0)]).is_err());
        assert!(GeneralGraph::new(2, vec![(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn empty_graph() {
        let g = graph(0, vec![]);
        assert!(max_general_matching(&g).is_empty());
    }

    proptest! {
        #[test]
        fn matches_brute_force(
            n in 1usize..=10,
            edge_bits in proptest::collection::vec(any::<bool>(), 45),
        ) {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in (u + 1)..n {
                    if edge_bits[k % edge_bits.len()] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            let g = graph(n, edges);
            let matched = max_general_matching(&g);
            assert_disjoint(&matched, n);
            prop_assert_eq!(matched.len(), brute_max_matching(&g));
        }
    }
}
