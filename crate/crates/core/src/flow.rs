//! Vertex-capacitated maximum flow on the split graph (`v_in -> v_out`).

use std::collections::VecDeque;

use crate::bits::Mask;
use crate::graph::Graph;

const INF: u32 = u32::MAX / 4;

struct Network {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u32>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network {
            head: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn arc(&mut self, u: usize, v: usize, c: u32) {
        self.head[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(c);
        self.head[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
    }

    /// Augments one unit-or-more path; returns false when none exists.
    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut pred = vec![usize::MAX; self.head.len()];
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for &e in &self.head[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    pred[v] = e;
                    queue.push_back(v);
                }
            }
        }
        if !seen[t] {
            return false;
        }
        let mut bottleneck = INF;
        let mut v = t;
        while v != s {
            let e = pred[v];
            bottleneck = bottleneck.min(self.cap[e]);
            v = self.to[e ^ 1];
        }
        let mut v = t;
        while v != s {
            let e = pred[v];
            self.cap[e] -= bottleneck;
            self.cap[e ^ 1] += bottleneck;
            v = self.to[e ^ 1];
        }
        true
    }

    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut flow = 0;
        while flow < limit && self.augment(s, t) {
            flow += 1;
        }
        flow
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &e in &self.head[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}

/// Number of internally disjoint `u`-`v` paths, counting a direct edge as one path,
/// capped at `limit`.
pub fn internally_disjoint_paths(g: &Graph, u: usize, v: usize, limit: usize) -> usize {
    assert_ne!(u, v);
    let n = g.n();
    let direct = usize::from(g.has_edge(u, v));
    if direct >= limit {
        return direct;
    }
    let mut net = Network::new(2 * n);
    for w in 0..n {
        let c = if w == u || w == v { INF } else { 1 };
        net.arc(2 * w, 2 * w + 1, c);
        for &x in g.neighbors(w) {
            if (w == u && x == v) || (w == v && x == u) {
                continue;
            }
            net.arc(2 * w + 1, 2 * x, INF);
        }
    }
    direct + net.max_flow(2 * u + 1, 2 * v, limit - direct)
}

/// Minimum vertex set inside `within` separating `a` from `b` in `g[within]`.
/// Terminals may be deleted, so a vertex of `a ∩ b` must be in the separator.
pub fn min_vertex_separator(g: &Graph, within: &Mask, a: &Mask, b: &Mask) -> Vec<usize> {
    let n = g.n();
    let (s, t) = (2 * n, 2 * n + 1);
    let mut net = Network::new(2 * n + 2);
    for w in within.ones() {
        net.arc(2 * w, 2 * w + 1, 1);
        for &x in g.neighbors(w) {
            if within.contains(x) {
                net.arc(2 * w + 1, 2 * x, INF);
            }
        }
        if a.contains(w) {
            net.arc(s, 2 * w, INF);
        }
        if b.contains(w) {
            net.arc(2 * w + 1, t, INF);
        }
    }
    net.max_flow(s, t, usize::MAX);
    let reach = net.reachable(s);
    within
        .ones()
        .filter(|&w| reach[2 * w] && !reach[2 * w + 1])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::{full_mask, mask_of};

    #[test]
    fn disjoint_paths_in_small_graphs() {
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(internally_disjoint_paths(&c5, 0, 2, 10), 2);
        assert_eq!(internally_disjoint_paths(&c5, 0, 1, 10), 2);
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(internally_disjoint_paths(&k4, 0, 3, 10), 3);
        assert_eq!(internally_disjoint_paths(&k4, 0, 3, 2), 2);
    }

    #[test]
    fn separator_of_a_grid_corner() {
        // 3x3 grid, separate corner 0 from corner 8.
        let mut e = Vec::new();
        for r in 0..3 {
            for c in 0..3 {
                let v = r * 3 + c;
                if c < 2 {
                    e.push((v, v + 1));
                }
                if r < 2 {
                    e.push((v, v + 3));
                }
            }
        }
        let g = Graph::from_edges(9, &e).unwrap();
        let sep = min_vertex_separator(&g, &full_mask(9), &mask_of(9, &[0]), &mask_of(9, &[8]));
        assert_eq!(sep.len(), 1);
        let sep = min_vertex_separator(
            &g,
            &full_mask(9),
            &mask_of(9, &[0, 1]),
            &mask_of(9, &[7, 8]),
        );
        assert_eq!(sep.len(), 2);
    }
}
