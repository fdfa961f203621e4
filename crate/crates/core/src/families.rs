//! Named graph families and their generators.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::transforms::{add_dominant, disjoint_copies, subdivide};

/// Generated instances larger than this are rejected.
pub const MAX_GENERATED_VERTICES: usize = 2_000_000;

/// A named family member, e.g. `grid 3 4` or `gcl 2 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Path(usize),
    Cycle(usize),
    Star(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Grid(usize, usize),
    /// `spider s t`: `s` legs with `t` edges each.
    Spider(usize, usize),
    /// A path on `l` vertices plus a dominant vertex.
    Fan(usize),
    /// `gcl c l`: `l` copies of `gcl (c-1) l` plus a dominant vertex; `gcl 1 l` is a path.
    Gcl(usize, usize),
    /// `ccl c l`: closure of the complete `l`-ary tree of height `c`.
    Ccl(usize, usize),
    /// `spider_lb c N`: the lower-bound graph built from a path and closures.
    SpiderLb(usize, usize),
    /// `clump_gadget t n`: a `(t-1)`-clique attached round-robin to a path on `n` vertices.
    ClumpGadget(usize, usize),
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Path(_) => "path",
            FamilySpec::Cycle(_) => "cycle",
            FamilySpec::Star(_) => "star",
            FamilySpec::Complete(_) => "complete",
            FamilySpec::CompleteBipartite(..) => "complete_bipartite",
            FamilySpec::Grid(..) => "grid",
            FamilySpec::Spider(..) => "spider",
            FamilySpec::Fan(_) => "fan",
            FamilySpec::Gcl(..) => "gcl",
            FamilySpec::Ccl(..) => "ccl",
            FamilySpec::SpiderLb(..) => "spider_lb",
            FamilySpec::ClumpGadget(..) => "clump_gadget",
        }
    }

    fn params(&self) -> Vec<usize> {
        match *self {
            FamilySpec::Path(a)
            | FamilySpec::Cycle(a)
            | FamilySpec::Star(a)
            | FamilySpec::Complete(a)
            | FamilySpec::Fan(a) => vec![a],
            FamilySpec::CompleteBipartite(a, b)
            | FamilySpec::Grid(a, b)
            | FamilySpec::Spider(a, b)
            | FamilySpec::Gcl(a, b)
            | FamilySpec::Ccl(a, b)
            | FamilySpec::SpiderLb(a, b)
            | FamilySpec::ClumpGadget(a, b) => vec![a, b],
        }
    }

    /// Number of vertices the generator would produce, or `None` on overflow.
    pub fn vertex_count(&self) -> Option<usize> {
        match *self {
            FamilySpec::Path(n) | FamilySpec::Cycle(n) | FamilySpec::Complete(n) => Some(n),
            FamilySpec::Star(s) => s.checked_add(1),
            FamilySpec::CompleteBipartite(s, t) => s.checked_add(t),
            FamilySpec::Grid(a, b) => a.checked_mul(b),
            FamilySpec::Spider(s, t) => s.checked_mul(t)?.checked_add(1),
            FamilySpec::Fan(l) => l.checked_add(1),
            FamilySpec::Gcl(c, l) => {
                let mut n = l.checked_add(1)?;
                for _ in 1..c {
                    n = n.checked_mul(l)?.checked_add(1)?;
                }
                Some(n)
            }
            FamilySpec::Ccl(c, l) => ccl_count(c, l),
            FamilySpec::SpiderLb(c, big_n) => {
                let inner = ccl_count(c.checked_sub(1)?, big_n)?;
                let per_edge = (2 * big_n).checked_sub(1)?.checked_mul(inner)?;
                per_edge.checked_mul(big_n)?.checked_add(big_n + 1)
            }
            FamilySpec::ClumpGadget(t, n) => t.checked_sub(1)?.checked_add(n),
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |why: &str| Err(Error::InvalidSpec(format!("{self}: {why}")));
        let ok = match *self {
            FamilySpec::Path(n) | FamilySpec::Complete(n) => n >= 1,
            FamilySpec::Cycle(n) => n >= 3,
            FamilySpec::Star(s) | FamilySpec::Fan(s) => s >= 1,
            FamilySpec::CompleteBipartite(s, t) | FamilySpec::Grid(s, t) => s >= 1 && t >= 1,
            FamilySpec::Spider(s, t) => s >= 1 && t >= 1,
            FamilySpec::Gcl(c, l) => c >= 1 && l >= 1,
            FamilySpec::Ccl(_, l) => l >= 1,
            FamilySpec::SpiderLb(c, n) => c >= 1 && n >= 1,
            FamilySpec::ClumpGadget(t, n) => t >= 2 && n >= 1,
        };
        if !ok {
            return bad("parameter out of range");
        }
        match self.vertex_count() {
            Some(n) if n <= MAX_GENERATED_VERTICES => Ok(()),
            _ => bad("instance too large"),
        }
    }
}

fn ccl_count(c: usize, l: usize) -> Option<usize> {
    let mut n: usize = 1;
    for _ in 0..c {
        n = n.checked_mul(l)?.checked_add(1)?;
    }
    Some(n)
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())?;
        for p in self.params() {
            write!(f, " {p}")?;
        }
        Ok(())
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut toks = s.split_whitespace();
        let name = toks
            .next()
            .ok_or_else(|| Error::InvalidSpec("empty spec".into()))?;
        let nums: Vec<usize> = toks
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::InvalidSpec(format!("`{t}` is not a non-negative integer")))
            })
            .collect::<Result<_>>()?;
        let one = |f: fn(usize) -> FamilySpec| match nums[..] {
            [a] => Ok(f(a)),
            _ => Err(Error::InvalidSpec(format!("`{name}` takes one parameter"))),
        };
        let two = |f: fn(usize, usize) -> FamilySpec| match nums[..] {
            [a, b] => Ok(f(a, b)),
            _ => Err(Error::InvalidSpec(format!("`{name}` takes two parameters"))),
        };
        match name {
            "path" => one(FamilySpec::Path),
            "cycle" => one(FamilySpec::Cycle),
            "star" => one(FamilySpec::Star),
            "complete" => one(FamilySpec::Complete),
            "fan" => one(FamilySpec::Fan),
            "complete_bipartite" => two(FamilySpec::CompleteBipartite),
            "grid" => two(FamilySpec::Grid),
            "spider" => two(FamilySpec::Spider),
            "gcl" => two(FamilySpec::Gcl),
            "ccl" => two(FamilySpec::Ccl),
            "spider_lb" => two(FamilySpec::SpiderLb),
            "clump_gadget" => two(FamilySpec::ClumpGadget),
            _ => Err(Error::InvalidSpec(format!("unknown family `{name}`"))),
        }
    }
}

/// Generates the graph named by `spec`.
pub fn generate(spec: FamilySpec) -> Result<Graph> {
    spec.validate()?;
    let g = match spec {
        FamilySpec::Path(n) => path(n),
        FamilySpec::Cycle(n) => {
            let mut g = path(n);
            g.add_edge(n - 1, 0)?;
            g
        }
        FamilySpec::Star(s) => add_dominant(&Graph::new(s)),
        FamilySpec::Complete(n) => {
            let e: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            Graph::from_edges(n, &e)?
        }
        FamilySpec::CompleteBipartite(s, t) => {
            let e: Vec<_> = (0..s)
                .flat_map(|u| (s..s + t).map(move |v| (u, v)))
                .collect();
            Graph::from_edges(s + t, &e)?
        }
        FamilySpec::Grid(a, b) => {
            let mut e = Vec::new();
            for r in 0..a {
                for c in 0..b {
                    let v = r * b + c;
                    if c + 1 < b {
                        e.push((v, v + 1));
                    }
                    if r + 1 < a {
                        e.push((v, v + b));
                    }
                }
            }
            let labels = (0..a * b)
                .map(|v| format!("({}, {})", v / b, v % b))
                .collect();
            Graph::from_edges(a * b, &e)?.with_labels(labels)
        }
        FamilySpec::Spider(s, t) => {
            let star = add_dominant(&Graph::new(s));
            subdivide(&star, &vec![t - 1; s])?.subdivided
        }
        FamilySpec::Fan(l) => add_dominant(&path(l)),
        FamilySpec::Gcl(c, l) => gcl(c, l),
        FamilySpec::Ccl(c, l) => ccl(c, l),
        FamilySpec::SpiderLb(c, big_n) => spider_lb(c, big_n)?,
        FamilySpec::ClumpGadget(t, n) => clump_gadget(t, n)?,
    };
    Ok(g)
}

fn path(n: usize) -> Graph {
    let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &e).expect("path edges are valid")
}

fn gcl(c: usize, l: usize) -> Graph {
    if c == 1 {
        return path(l + 1);
    }
    add_dominant(&disjoint_copies(&gcl(c - 1, l), l))
}

fn ccl(c: usize, l: usize) -> Graph {
    if c == 0 {
        return Graph::new(1).with_labels(vec!["root".into()]);
    }
    add_dominant(&disjoint_copies(&ccl(c - 1, l), l))
}

/// Path `p_1..p_{N+1}` (ids `0..=N`); for each path edge, `2N-1` copies of
/// `ccl (c-1) N`, every vertex of which is adjacent to both ends of that edge.
fn spider_lb(c: usize, big_n: usize) -> Result<Graph> {
    let inner = ccl(c - 1, big_n);
    let block = disjoint_copies(&inner, 2 * big_n - 1);
    let total = spec_count(c, big_n);
    let mut edges: Vec<(usize, usize)> = (1..=big_n).map(|i| (i - 1, i)).collect();
    let mut labels: Vec<String> = (0..=big_n).map(|i| format!("p{}", i + 1)).collect();
    let mut next = big_n + 1;
    for i in 0..big_n {
        for (u, v) in block.edges() {
            edges.push((next + u, next + v));
        }
        for w in 0..block.n() {
            edges.push((i, next + w));
            edges.push((i + 1, next + w));
            labels.push(format!("X{} {}", i + 1, block.label(w).unwrap_or("")));
        }
        next += block.n();
    }
    debug_assert_eq!(next, total);
    Ok(Graph::from_edges(next, &edges)?.with_labels(labels))
}

fn spec_count(c: usize, big_n: usize) -> usize {
    FamilySpec::SpiderLb(c, big_n)
        .vertex_count()
        .expect("validated")
}

/// Clique `v_1..v_{t-1}` (ids `0..t-1`), path `x_1..x_n`, and `v_i x_j` whenever
/// `j ≡ i (mod t-1)`.
fn clump_gadget(t: usize, n: usize) -> Result<Graph> {
    let q = t - 1;
    let mut edges = Vec::new();
    for i in 0..q {
        for j in i + 1..q {
            edges.push((i, j));
        }
    }
    for j in 0..n {
        if j + 1 < n {
            edges.push((q + j, q + j + 1));
        }
        edges.push((j % q, q + j));
    }
    let labels = (0..q)
        .map(|i| format!("v{}", i + 1))
        .chain((0..n).map(|j| format!("x{}", j + 1)))
        .collect();
    Ok(Graph::from_edges(q + n, &edges)?.with_labels(labels))
}
