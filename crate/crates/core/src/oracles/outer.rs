use std::sync::atomic::{AtomicUsize, Ordering};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coverings::{assign_components, DisjointednessQuery, OracleReport, QOracle, QWitness};
use crate::error::{Error, Result};
use crate::graph::{content_lines, parse_usizes, Graph};

/// A graph with its vertices placed on a circle in the given cyclic order;
/// edges are straight chords.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircularDrawing {
    order: Vec<usize>,
    pos: Vec<usize>,
    graph: Graph,
}

/// Crossing counts of a drawing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingStats {
    /// Edges in `Graph::edges` order with their crossing counts.
    pub per_edge: Vec<((usize, usize), usize)>,
    pub total: usize,
    pub max: usize,
    /// Least `k` for which the drawing is weakly outer `k`-planar: the largest
    /// `min(cr(e), cr(f))` over crossing pairs.
    pub weak_k: usize,
    /// A crossing pair attaining `weak_k`.
    pub weak_witness: Option<((usize, usize), (usize, usize))>,
}

impl CircularDrawing {
    /// `order` lists every vertex of `graph` once, clockwise.
    pub fn new(graph: Graph, order: Vec<usize>) -> Result<Self> {
        let n = graph.n();
        if order.len() != n {
            return Err(Error::InvalidGraph(format!(
                "order has {} entries for {n} vertices",
                order.len()
            )));
        }
        let mut pos = vec![usize::MAX; n];
        for (p, &v) in order.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return Err(Error::InvalidGraph(format!(
                    "order is not a permutation at entry {p}"
                )));
            }
            pos[v] = p;
        }
        Ok(CircularDrawing { order, pos, graph })
    }

    /// Vertices in their natural order.
    pub fn convex(graph: Graph) -> Self {
        let order = (0..graph.n()).collect();
        CircularDrawing::new(graph, order).expect("identity is a permutation")
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn position(&self, v: usize) -> usize {
        self.pos[v]
    }

    /// Whether the chords `e` and `f` cross: four distinct ends that interleave.
    pub fn crosses(&self, e: (usize, usize), f: (usize, usize)) -> bool {
        let (a, b) = (
            self.pos[e.0].min(self.pos[e.1]),
            self.pos[e.0].max(self.pos[e.1]),
        );
        let inside = |v: usize| a < self.pos[v] && self.pos[v] < b;
        let ends = [e.0, e.1];
        if ends.contains(&f.0) || ends.contains(&f.1) {
            return false;
        }
        inside(f.0) != inside(f.1)
    }

    /// For each edge (in `Graph::edges` order), the indices of the edges crossing it.
    pub fn crossing_lists(&self) -> Vec<Vec<usize>> {
        let edges = self.graph.edges();
        let mut out = vec![Vec::new(); edges.len()];
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                if self.crosses(edges[i], edges[j]) {
                    out[i].push(j);
                    out[j].push(i);
                }
            }
        }
        out
    }

    pub fn crossing_stats(&self) -> CrossingStats {
        let edges = self.graph.edges();
        let lists = self.crossing_lists();
        let counts: Vec<usize> = lists.iter().map(Vec::len).collect();
        let mut weak_k = 0;
        let mut weak_witness = None;
        for (i, l) in lists.iter().enumerate() {
            for &j in l {
                let m = counts[i].min(counts[j]);
                if i < j && (weak_witness.is_none() || m > weak_k) {
                    weak_k = m;
                    weak_witness = Some((edges[i], edges[j]));
                }
            }
        }
        CrossingStats {
            total: counts.iter().sum::<usize>() / 2,
            max: counts.iter().copied().max().unwrap_or(0),
            per_edge: edges.into_iter().zip(counts).collect(),
            weak_k,
            weak_witness,
        }
    }

    /// The cyclic order on one line.
    pub fn to_text(&self) -> String {
        let line: Vec<String> = self.order.iter().map(|v| v.to_string()).collect();
        format!("{}\n", line.join(" "))
    }

    /// Reads the order line written by [`CircularDrawing::to_text`] for `graph`.
    pub fn parse(text: &str, graph: Graph) -> Result<Self> {
        let mut order = Vec::new();
        for (ln, line) in content_lines(text) {
            order.extend(parse_usizes(ln, line)?);
        }
        CircularDrawing::new(graph, order)
    }
}

/// A random weakly outer `k`-planar drawing on `n` vertices: chords are tried
/// in random order and kept while the drawing stays weakly outer `k`-planar.
/// Vertex labels are shuffled around the circle.
pub fn random_weakly_outer_k_planar(
    n: usize,
    k: usize,
    density: f64,
    seed: u64,
) -> CircularDrawing {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(&mut rng);
    let mut d = CircularDrawing::new(Graph::new(n), order).expect("shuffled permutation");
    for (u, v) in pairs {
        if !rng.gen_bool(density.clamp(0.0, 1.0)) {
            continue;
        }
        let mut g = d.graph.clone();
        g.add_edge(u, v).expect("new edge");
        let next = CircularDrawing {
            graph: g,
            ..d.clone()
        };
        if next.crossing_stats().weak_k <= k {
            d = next;
        }
    }
    d
}

/// Oracle for singleton blocks of a weakly outer `k`-planar drawing, with `|Q| <= 4k + 4`.
///
/// For blocks `{v_i}` and `{v_j}`, `v_r'` is the first vertex clockwise from
/// `v_i` (strictly between `v_i` and `v_j`) adjacent to `v_j`, and `v_s'` the
/// first one anticlockwise. When the chord `v_r' v_j` has more than `k`
/// crossings it is replaced by the chord `e_r` crossing it whose end `v_r` is
/// closest to `v_j`; `Q` gathers `v_r, v_r', v_s, v_s'` and the ends of every
/// chord crossing `e_r` or `e_s`. Queries are answered on the graph plus the
/// boundary cycle of the drawing, which adds no crossings.
pub struct OuterKPlanarOracle {
    d: CircularDrawing,
    /// The graph plus the boundary cycle.
    cycle_graph: Graph,
    edges: Vec<(usize, usize)>,
    crossing: Vec<Vec<usize>>,
    k: usize,
    max_q: AtomicUsize,
    queries: AtomicUsize,
}

pub fn outer_k_planar_oracle(d: &CircularDrawing, k: usize) -> Result<OuterKPlanarOracle> {
    let stats = d.crossing_stats();
    if stats.weak_k > k {
        let (e, f) = stats.weak_witness.expect("a crossing pair exists");
        return Err(Error::NotWeaklyOuterKPlanar { k, e, f });
    }
    let n = d.graph.n();
    let mut cycle_graph = d.graph.clone();
    if n >= 3 {
        for p in 0..n {
            let (u, v) = (d.order[p], d.order[(p + 1) % n]);
            if !cycle_graph.has_edge(u, v) {
                cycle_graph.add_edge(u, v)?;
            }
        }
    }
    let aug = CircularDrawing {
        graph: cycle_graph.clone(),
        ..d.clone()
    };
    Ok(OuterKPlanarOracle {
        d: d.clone(),
        edges: cycle_graph.edges(),
        crossing: aug.crossing_lists(),
        cycle_graph,
        k,
        max_q: AtomicUsize::new(0),
        queries: AtomicUsize::new(0),
    })
}

impl OuterKPlanarOracle {
    fn edge_index(&self, u: usize, v: usize) -> usize {
        let e = (u.min(v), u.max(v));
        self.edges
            .binary_search(&e)
            .expect("edge of the augmented graph")
    }

    /// Vertex at `steps` positions from `v`, clockwise when `cw`.
    fn walk(&self, v: usize, steps: usize, cw: bool) -> usize {
        let n = self.d.order.len();
        let p = self.d.pos[v];
        let q = if cw {
            (p + steps) % n
        } else {
            (p + n - steps % n) % n
        };
        self.d.order[q]
    }

    /// One side of the construction: adds `v', v` and the ends of the chords
    /// crossing `e` to `q`. Returns without change when the arc is empty.
    fn side(&self, vi: usize, vj: usize, cw: bool, q: &mut Vec<usize>) {
        let n = self.d.order.len();
        if self.walk(vi, 1, cw) == vj {
            return;
        }
        let g = &self.cycle_graph;
        let v_prime = (1..n)
            .map(|s| self.walk(vi, s, cw))
            .take_while(|&w| w != vj)
            .find(|&w| g.has_edge(w, vj))
            .expect("the boundary neighbour of v_j lies on the arc");
        let e0 = self.edge_index(v_prime, vj);
        let (v, e) = if self.crossing[e0].len() > self.k {
            // Walk from v_j back towards v' and stop at the first end of a chord crossing v' v_j.
            let mut found = None;
            for s in 1..n {
                let w = self.walk(vj, s, !cw);
                let hits: Vec<usize> = self.crossing[e0]
                    .iter()
                    .copied()
                    .filter(|&f| self.edges[f].0 == w || self.edges[f].1 == w)
                    .collect();
                if !hits.is_empty() {
                    // Among chords at w, take the one whose other end is nearest to v_j going the other way.
                    let other = |f: usize| {
                        if self.edges[f].0 == w {
                            self.edges[f].1
                        } else {
                            self.edges[f].0
                        }
                    };
                    let dist = |x: usize| (self.d.pos[x] + 2 * n - self.d.pos[vj]) % n;
                    let f = hits
                        .into_iter()
                        .min_by_key(|&f| {
                            if cw {
                                dist(other(f))
                            } else {
                                n - dist(other(f))
                            }
                        })
                        .expect("non-empty");
                    found = Some((w, f));
                    break;
                }
            }
            found.expect("a crossing chord has an end on the arc")
        } else {
            (v_prime, e0)
        };
        q.push(v_prime);
        q.push(v);
        for &f in &self.crossing[e] {
            q.push(self.edges[f].0);
            q.push(self.edges[f].1);
        }
    }
}

impl QOracle for OuterKPlanarOracle {
    fn graph(&self) -> &Graph {
        &self.d.graph
    }

    fn c(&self) -> usize {
        2
    }

    fn bound(&self, _t: usize) -> Option<usize> {
        Some(4 * self.k + 4)
    }

    fn max_arity(&self) -> Option<usize> {
        Some(1)
    }

    fn query(&self, q: &DisjointednessQuery) -> Result<QWitness> {
        if q.c() != 2 || q.blocks.iter().any(|b| b.vertices.len() > 1) {
            return Err(Error::UnsupportedBlock(
                "outer k-planar queries take two single vertices".into(),
            ));
        }
        let n = self.d.graph.n();
        let mut raw = Vec::new();
        if n >= 3 && q.residuals.iter().all(|r| !r.is_empty()) {
            let (vi, vj) = (q.residuals[0][0], q.residuals[1][0]);
            self.side(vi, vj, true, &mut raw);
            self.side(vi, vj, false, &mut raw);
            raw.retain(|&v| v != vi && v != vj);
            raw.sort_unstable();
            raw.dedup();
        }
        let bound = 4 * self.k + 4;
        if raw.len() > bound {
            return Err(Error::OracleViolation(format!(
                "|Q| = {} exceeds 4k + 4 = {bound}",
                raw.len()
            )));
        }
        let w = assign_components(&self.d.graph, q, &raw).ok_or_else(|| {
            Error::OracleViolation("Q does not separate the two neighbourhoods".into())
        })?;
        self.max_q.fetch_max(w.q.len(), Ordering::Relaxed);
        self.queries.fetch_add(1, Ordering::Relaxed);
        Ok(w)
    }

    fn name(&self) -> String {
        format!("outer-{}-planar", self.k)
    }

    fn report(&self) -> OracleReport {
        let mut r = OracleReport::default();
        r.note("queries", self.queries.load(Ordering::Relaxed));
        r.note("max_q", self.max_q.load(Ordering::Relaxed));
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coverings::{verify_witness, BlockUnion};

    fn all_pairs(d: &CircularDrawing, k: usize) -> Vec<String> {
        let o = outer_k_planar_oracle(d, k).unwrap();
        let g = d.graph();
        let mut bad = Vec::new();
        for a in 0..g.n() {
            for b in 0..g.n() {
                let blocks = vec![
                    BlockUnion::from_vertices(vec![a]),
                    BlockUnion::from_vertices(vec![b]),
                ];
                for q in DisjointednessQuery::all_for(g, &blocks) {
                    match o.query(&q) {
                        Ok(w) if verify_witness(g, &q, &w, Some(4 * k + 4)).pass => {}
                        other => bad.push(format!("({a}, {b}) on {:?}: {:?}", q.component, other)),
                    }
                }
            }
        }
        bad
    }

    #[test]
    fn crossing_counts() {
        let c6 =
            Graph::from_edges(6, &(0..6).map(|i| (i, (i + 1) % 6)).collect::<Vec<_>>()).unwrap();
        assert_eq!(CircularDrawing::convex(c6).crossing_stats().total, 0);
        let k4 = crate::families::generate(crate::families::FamilySpec::Complete(4)).unwrap();
        let s = CircularDrawing::convex(k4).crossing_stats();
        assert_eq!((s.total, s.max, s.weak_k), (1, 1, 1));
        let k5 = crate::families::generate(crate::families::FamilySpec::Complete(5)).unwrap();
        let d = CircularDrawing::convex(k5);
        let edges = d.graph().edges();
        let brute = (0..edges.len())
            .flat_map(|i| (i + 1..edges.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| d.crosses(edges[i], edges[j]))
            .count();
        assert_eq!(d.crossing_stats().total, brute);
        assert_eq!(brute, 5);
    }

    #[test]
    fn rejects_drawings_with_heavy_crossing_pairs() {
        let k6 = crate::families::generate(crate::families::FamilySpec::Complete(6)).unwrap();
        let d = CircularDrawing::convex(k6);
        assert!(matches!(
            outer_k_planar_oracle(&d, 1),
            Err(Error::NotWeaklyOuterKPlanar { k: 1, .. })
        ));
    }

    #[test]
    fn text_round_trip() {
        let d = random_weakly_outer_k_planar(9, 1, 0.5, 3);
        assert_eq!(
            CircularDrawing::parse(&d.to_text(), d.graph().clone()).unwrap(),
            d
        );
    }

    #[test]
    fn random_drawings() {
        let mut failures = Vec::new();
        for seed in 0..60 {
            let k = (seed % 3) as usize;
            let n = 3 + (seed as usize * 7) % 20;
            let d = random_weakly_outer_k_planar(n, k, 0.6, seed);
            for f in all_pairs(&d, k) {
                failures.push(format!("seed {seed} n {n} k {k}: {f}"));
            }
        }
        assert!(
            failures.is_empty(),
            "{} failures, first: {:?}",
            failures.len(),
            &failures[..failures.len().min(5)]
        );
    }

    #[test]
    fn tiny_graphs_need_nothing() {
        let d = CircularDrawing::convex(Graph::from_edges(2, &[(0, 1)]).unwrap());
        assert!(all_pairs(&d, 0).is_empty());
    }
}
