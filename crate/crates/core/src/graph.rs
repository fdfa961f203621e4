//! Simple undirected graphs on `0..n`.

use std::fmt::Write as _;

use crate::bits::{self, Mask};
use crate::error::{Error, Result};

/// A finite simple undirected graph with vertices `0..n`.
///
/// Adjacency lists are kept sorted, so iteration order is deterministic.
/// Optional labels are carried for display only and are ignored by equality.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            labels: None,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges are merged;
    /// loops and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for n = {n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adj, labels: None })
    }

    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<usize>>) -> Self {
        Graph { adj, labels: None }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n(), "one label per vertex");
        self.labels = Some(labels);
        self
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Adds an edge in place; a no-op if it is already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n() || v >= self.n() || u == v {
            return Err(Error::InvalidGraph(format!("cannot add edge ({u}, {v})")));
        }
        if let Err(pos) = self.adj[u].binary_search(&v) {
            self.adj[u].insert(pos, v);
            let pos = self.adj[v].binary_search(&u).unwrap_err();
            self.adj[v].insert(pos, u);
        }
        Ok(())
    }

    /// Induced subgraph on `vs` (any order). Vertex `i` of the result is `map[i]`,
    /// where `map` is `vs` sorted.
    pub fn induced_subgraph(&self, vs: &[usize]) -> (Graph, Vec<usize>) {
        let mut map: Vec<usize> = vs.to_vec();
        map.sort_unstable();
        map.dedup();
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let adj = map
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter(|&&w| index[w] != usize::MAX)
                    .map(|&w| index[w])
                    .collect()
            })
            .collect();
        let mut sub = Graph::from_sorted_adjacency(adj);
        if let Some(labels) = &self.labels {
            sub.labels = Some(map.iter().map(|&v| labels[v].clone()).collect());
        }
        (sub, map)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        bits::components_in(self, &bits::full_mask(self.n()))
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Vertices outside `set` with a neighbour in `set`, sorted.
    pub fn neighborhood_of(&self, set: &[usize]) -> Vec<usize> {
        bits::to_vec(&bits::neighborhood(self, &self.mask(set)))
    }

    pub fn mask(&self, vs: &[usize]) -> Mask {
        bits::mask_of(self.n(), vs)
    }

    /// Plain-text form: a header `n m`, then one `u v` line per edge.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.n(), self.m());
        for (u, v) in self.edges() {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    /// Parses the plain-text form. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut lines = content_lines(text);
        let (ln, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            msg: "missing header".into(),
        })?;
        let nums = parse_usizes(ln, header)?;
        if nums.len() != 2 {
            return Err(Error::Parse {
                line: ln,
                msg: "header must be `n m`".into(),
            });
        }
        let (n, m) = (nums[0], nums[1]);
        let mut edges = Vec::with_capacity(m);
        for (ln, line) in lines {
            let e = parse_usizes(ln, line)?;
            if e.len() != 2 {
                return Err(Error::Parse {
                    line: ln,
                    msg: "edge line must be `u v`".into(),
                });
            }
            edges.push((e[0], e[1]));
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: 1,
                msg: format!("header promises {m} edges, found {}", edges.len()),
            });
        }
        Graph::from_edges(n, &edges)
    }
}

/// Non-empty, comment-stripped lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

pub(crate) fn parse_usizes(line: usize, s: &str) -> Result<Vec<usize>> {
    s.split_whitespace()
        .map(|t| {
            t.parse::<usize>().map_err(|_| Error::Parse {
                line,
                msg: format!("expected a non-negative integer, got `{t}`"),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merges_duplicates_and_rejects_loops() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.m(), 2);
        assert!(Graph::from_edges(2, &[(1, 1)]).is_err());
        assert!(Graph::from_edges(2, &[(0, 2)]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (3, 4), (0, 4)]).unwrap();
        let back = Graph::parse(&g.to_text()).unwrap();
        assert_eq!(g, back);
        let commented = "# a path\n3 2\n0 1 # first\n\n1 2\n";
        assert_eq!(Graph::parse(commented).unwrap().m(), 2);
        assert!(Graph::parse("3 2\n0 1\n").is_err());
    }

    #[test]
    fn induced_subgraph_and_components() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1, 2], vec![3, 4], vec![5]]);
        let (sub, map) = g.induced_subgraph(&[2, 1, 4]);
        assert_eq!(map, vec![1, 2, 4]);
        assert_eq!(sub.edges(), vec![(0, 1)]);
        assert_eq!(g.neighborhood_of(&[1]), vec![0, 2]);
    }
}
