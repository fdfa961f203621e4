//! Structural graph transforms: copies, dominant vertices, subdivision,
//! suppression of degree-2 vertices and robust powers.

use crate::error::{Error, Result};
use crate::flow;
use crate::graph::Graph;

/// `count` vertex-disjoint copies of `g`; copy `i` occupies ids `i*n .. (i+1)*n`.
pub fn disjoint_copies(g: &Graph, count: usize) -> Graph {
    let n = g.n();
    let mut adj = Vec::with_capacity(n * count);
    for i in 0..count {
        for v in 0..n {
            adj.push(g.neighbors(v).iter().map(|&w| w + i * n).collect());
        }
    }
    let out = Graph::from_sorted_adjacency(adj);
    match g.labels() {
        Some(labels) => {
            let l = (0..count)
                .flat_map(|i| labels.iter().map(move |s| format!("copy {i}/{s}")))
                .collect();
            out.with_labels(l)
        }
        None => out,
    }
}

/// `g` plus one new vertex (id `n`) adjacent to every vertex.
pub fn add_dominant(g: &Graph) -> Graph {
    let n = g.n();
    let mut adj: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut l = g.neighbors(v).to_vec();
            l.push(n);
            l
        })
        .collect();
    adj.push((0..n).collect());
    let out = Graph::from_sorted_adjacency(adj);
    match g.labels() {
        Some(labels) => {
            let mut l = labels.to_vec();
            l.push("dominant".into());
            out.with_labels(l)
        }
        None => out,
    }
}

/// Where a vertex of a subdivided graph comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// An original vertex.
    Vertex(usize),
    /// The `pos`-th internal vertex (1-based, counted from `edge.0`) of a subdivided edge.
    Internal { edge: (usize, usize), pos: usize },
}

/// Records how a subdivision was produced.
#[derive(Debug, Clone)]
pub struct SubdivisionMap {
    pub original: Graph,
    pub subdivided: Graph,
    /// Indexed by vertex of `subdivided`.
    pub branch_of: Vec<Branch>,
    /// For each original edge `(u, v)` (in `original.edges()` order), the internal
    /// vertices from `u` to `v`.
    pub paths: Vec<((usize, usize), Vec<usize>)>,
}

impl SubdivisionMap {
    /// Original vertices a subdivided vertex stands for: itself, or both endpoints of its edge.
    pub fn originals_of(&self, v: usize) -> Vec<usize> {
        match self.branch_of[v] {
            Branch::Vertex(u) => vec![u],
            Branch::Internal { edge: (a, b), .. } => vec![a, b],
        }
    }
}

/// Replaces the `i`-th edge of `g.edges()` by a path with `counts[i]` internal vertices.
/// Original vertices keep their ids; internal vertices are appended edge by edge.
pub fn subdivide(g: &Graph, counts: &[usize]) -> Result<SubdivisionMap> {
    let edges = g.edges();
    if counts.len() != edges.len() {
        return Err(Error::InvalidGraph(format!(
            "{} subdivision counts for {} edges",
            counts.len(),
            edges.len()
        )));
    }
    let total: usize = g.n() + counts.iter().sum::<usize>();
    let mut branch_of: Vec<Branch> = (0..g.n()).map(Branch::Vertex).collect();
    let mut new_edges = Vec::new();
    let mut paths = Vec::with_capacity(edges.len());
    let mut next = g.n();
    for (&(u, v), &k) in edges.iter().zip(counts) {
        let internal: Vec<usize> = (next..next + k).collect();
        next += k;
        let mut prev = u;
        for (i, &w) in internal.iter().enumerate() {
            branch_of.push(Branch::Internal {
                edge: (u, v),
                pos: i + 1,
            });
            new_edges.push((prev, w));
            prev = w;
        }
        new_edges.push((prev, v));
        paths.push(((u, v), internal));
    }
    debug_assert_eq!(next, total);
    let subdivided = Graph::from_edges(total, &new_edges)?;
    Ok(SubdivisionMap {
        original: g.clone(),
        subdivided,
        branch_of,
        paths,
    })
}

/// Suppresses every degree-2 vertex, returning the core and the map that
/// re-subdivides it into `g`. Fails if a loop or parallel edge would arise.
///
/// A component that is a cycle keeps three evenly spaced vertices.
pub fn suppress_degree_two(g: &Graph) -> Result<(Graph, SubdivisionMap)> {
    suppress(g, false)
}

/// Like [`suppress_degree_two`], but keeps the first internal vertex of any
/// chain whose suppression would create a loop or a parallel edge.
pub fn suppress_degree_two_keeping(g: &Graph) -> (Graph, SubdivisionMap) {
    suppress(g, true).expect("keeping mode never fails")
}

fn suppress(g: &Graph, keep: bool) -> Result<(Graph, SubdivisionMap)> {
    let n = g.n();
    let mut branch: Vec<bool> = (0..n).map(|v| g.degree(v) != 2).collect();
    for comp in g.components() {
        if comp.iter().all(|&v| g.degree(v) == 2) {
            // Walk the cycle from its smallest vertex.
            let mut order = vec![comp[0]];
            let mut prev = comp[0];
            let mut cur = g.neighbors(comp[0])[0];
            while cur != comp[0] {
                order.push(cur);
                let nb = g.neighbors(cur);
                let nxt = if nb[0] == prev { nb[1] } else { nb[0] };
                prev = cur;
                cur = nxt;
            }
            let len = order.len();
            for i in [0, len / 3, 2 * len / 3] {
                branch[order[i]] = true;
            }
        }
    }
    loop {
        let chains = chains_between_branches(g, &branch);
        let mut seen: std::collections::BTreeMap<(usize, usize), &Vec<usize>> = Default::default();
        let mut conflict = None;
        for (a, internal, b) in &chains {
            let key = ((*a).min(*b), (*a).max(*b));
            if a == b {
                conflict = Some((*a, internal.clone(), *b));
                break;
            }
            if let Some(other) = seen.insert(key, internal) {
                // At most one of two parallel chains is a bare edge.
                let split = if internal.is_empty() {
                    other.clone()
                } else {
                    internal.clone()
                };
                conflict = Some((*a, split, *b));
                break;
            }
        }
        match conflict {
            None => return Ok(build_core(g, &branch, &chains)),
            Some((a, internal, b)) => {
                if !keep {
                    return Err(Error::NotASubdivision(format!(
                        "suppressing the path between {a} and {b} creates a loop or parallel edge"
                    )));
                }
                branch[internal[0]] = true;
            }
        }
    }
}

/// Maximal paths whose internal vertices are non-branch; every edge lies on exactly one.
fn chains_between_branches(g: &Graph, branch: &[bool]) -> Vec<(usize, Vec<usize>, usize)> {
    let mut out = Vec::new();
    for a in 0..g.n() {
        if !branch[a] {
            continue;
        }
        for &first in g.neighbors(a) {
            let mut internal = Vec::new();
            let mut prev = a;
            let mut cur = first;
            while !branch[cur] {
                internal.push(cur);
                let nb = g.neighbors(cur);
                let nxt = if nb[0] == prev { nb[1] } else { nb[0] };
                prev = cur;
                cur = nxt;
            }
            let b = cur;
            // Record each chain once, from the end with the smaller (endpoint, first step).
            let last = internal.last().copied().unwrap_or(a);
            if (a, first) <= (b, last) {
                out.push((a, internal, b));
            }
        }
    }
    out
}

fn build_core(
    g: &Graph,
    branch: &[bool],
    chains: &[(usize, Vec<usize>, usize)],
) -> (Graph, SubdivisionMap) {
    let kept: Vec<usize> = (0..g.n()).filter(|&v| branch[v]).collect();
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in kept.iter().enumerate() {
        index[v] = i;
    }
    let core_edges: Vec<(usize, usize)> = chains
        .iter()
        .map(|(a, _, b)| (index[*a], index[*b]))
        .collect();
    let core = Graph::from_edges(kept.len(), &core_edges).expect("chains are simple");
    // Re-subdividing the core reproduces `g` up to relabelling; record the relabelling
    // so callers can map back to `g`'s vertex ids.
    let mut internal_of = std::collections::BTreeMap::new();
    for (a, internal, b) in chains {
        let (x, y) = (index[*a], index[*b]);
        let path = if x < y {
            internal.clone()
        } else {
            internal.iter().rev().copied().collect()
        };
        internal_of.insert((x.min(y), x.max(y)), path);
    }
    let edges = core.edges();
    let counts: Vec<usize> = edges.iter().map(|e| internal_of[e].len()).collect();
    let mut sm = subdivide(&core, &counts).expect("counts match edges");
    // Rename vertices of the re-subdivision to the ids of `g`.
    let mut rename = vec![0; sm.subdivided.n()];
    for (i, &v) in kept.iter().enumerate() {
        rename[i] = v;
    }
    for (e, internal) in sm.paths.iter() {
        for (j, &w) in internal.iter().enumerate() {
            rename[w] = internal_of[e][j];
        }
    }
    let mut branch_of = vec![Branch::Vertex(0); g.n()];
    for (w, b) in sm.branch_of.iter().enumerate() {
        branch_of[rename[w]] = *b;
    }
    sm.branch_of = branch_of;
    for (_, internal) in sm.paths.iter_mut() {
        for w in internal.iter_mut() {
            *w = rename[*w];
        }
    }
    sm.subdivided = g.clone();
    (core, sm)
}

/// The `lambda`-robust power: `u ~ v` iff `g` has at least `lambda`
/// internally disjoint `u`-`v` paths (a direct edge counts as one).
pub fn robust_power(g: &Graph, lambda: usize) -> Graph {
    let n = g.n();
    let comp = {
        let mut c = vec![0; n];
        for (i, cc) in g.components().iter().enumerate() {
            for &v in cc {
                c[v] = i;
            }
        }
        c
    };
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if comp[u] != comp[v] {
                continue;
            }
            if lambda == 0 || flow::internally_disjoint_paths(g, u, v, lambda) >= lambda {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("pairs are distinct and in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn dominant_of_edgeless_is_a_star() {
        let s = add_dominant(&Graph::new(3));
        assert_eq!(s.edges(), vec![(0, 3), (1, 3), (2, 3)]);
    }

    #[test]
    fn copies_are_offset() {
        let p = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(disjoint_copies(&p, 3).edges(), vec![(0, 1), (2, 3), (4, 5)]);
    }

    #[test]
    fn suppressing_a_path_and_a_cycle() {
        let p5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let (core, sm) = suppress_degree_two(&p5).unwrap();
        assert_eq!(core.n(), 2);
        assert_eq!(core.m(), 1);
        assert_eq!(sm.paths[0].1, vec![1, 2, 3]);
        let (core, sm) = suppress_degree_two(&cycle(6)).unwrap();
        assert_eq!(core, cycle(3));
        assert!(sm.paths.iter().all(|(_, p)| p.len() == 1));
    }

    #[test]
    fn diamond_is_not_a_subdivision_but_can_keep_a_vertex() {
        let d = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        assert!(matches!(
            suppress_degree_two(&d),
            Err(Error::NotASubdivision(_))
        ));
        let (core, sm) = suppress_degree_two_keeping(&d);
        assert_eq!(core, d);
        let back = subdivide(
            &core,
            &sm.paths.iter().map(|(_, p)| p.len()).collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(back.subdivided.m(), d.m());
    }

    #[test]
    fn robust_power_of_a_cycle() {
        let c = cycle(5);
        assert_eq!(robust_power(&c, 2).m(), 10);
        assert_eq!(robust_power(&c, 3).m(), 0);
        assert_eq!(robust_power(&c, 1).m(), 10);
    }
}
