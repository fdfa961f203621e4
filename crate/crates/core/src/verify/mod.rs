//! Independent checks: partition validation, brute-force partition width and audits.

mod experiment;

pub use experiment::{
    rows_to_csv, rows_to_json, run_experiment, run_pipeline, run_row, ExperimentRow, Instance,
    Pipeline, PipelineOutput, SCHEMA_VERSION,
};

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::{quotient_of, CTreePartition};
use crate::treewidth::{exact_treewidth, TreeDecomposition, DEFAULT_EXACT_BUDGET};

/// Largest graph accepted by [`brute_min_tpw`].
pub const DEFAULT_BRUTE_TPW_LIMIT: usize = 9;

/// Outcome of [`validate_partition`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub pass: bool,
    pub failures: Vec<String>,
}

impl ValidationReport {
    pub fn into_result(self) -> Result<()> {
        if self.pass {
            Ok(())
        } else {
            Err(Error::InvalidPartition(self.failures.join("; ")))
        }
    }
}

/// Checks that the parts partition `V(G)`, every edge of `G` maps to an edge
/// or a single node of the quotient, and the certificate is a tree
/// decomposition of the quotient of width at most `c`.
pub fn validate_partition(g: &Graph, p: &CTreePartition) -> ValidationReport {
    let mut failures = Vec::new();
    if p.part_of.len() != g.n() {
        failures.push(format!(
            "partition covers {} vertices, graph has {}",
            p.part_of.len(),
            g.n()
        ));
        return ValidationReport {
            pass: false,
            failures,
        };
    }
    if p.quotient.n() != p.parts.len() {
        failures.push(format!(
            "quotient has {} nodes for {} parts",
            p.quotient.n(),
            p.parts.len()
        ));
    }
    let mut count = vec![0usize; g.n()];
    for (x, part) in p.parts.iter().enumerate() {
        for &v in part {
            if v >= g.n() {
                failures.push(format!("part {x} holds unknown vertex {v}"));
                continue;
            }
            count[v] += 1;
            if p.part_of[v] != x {
                failures.push(format!(
                    "vertex {v} is in part {x} but part_of says {}",
                    p.part_of[v]
                ));
            }
        }
    }
    for (v, &k) in count.iter().enumerate() {
        if k != 1 {
            failures.push(format!("vertex {v} lies in {k} parts"));
        }
    }
    if failures.is_empty() {
        for (u, v) in g.edges() {
            let (a, b) = (p.part_of[u], p.part_of[v]);
            if a != b && !p.quotient.has_edge(a, b) {
                failures.push(format!(
                    "edge ({u}, {v}) joins parts {a} and {b}, which are not adjacent"
                ));
                break;
            }
        }
    }
    if p.quotient.n() == p.parts.len() {
        if let Err(e) = p.certificate.validate(&p.quotient) {
            failures.push(format!("certificate: {e}"));
        }
    }
    if p.certificate.width() > p.c && !p.certificate.bags.is_empty() {
        failures.push(format!(
            "certificate width {} exceeds c = {}",
            p.certificate.width(),
            p.c
        ));
    }
    ValidationReport {
        pass: failures.is_empty(),
        failures,
    }
}

/// Calls `f` with each set partition of `0..n` as a restricted growth string.
/// Stops early when `f` returns false.
fn for_each_set_partition(n: usize, max_part: usize, mut f: impl FnMut(&[usize], usize) -> bool) {
    fn rec(
        a: &mut Vec<usize>,
        sizes: &mut Vec<usize>,
        n: usize,
        cap: usize,
        f: &mut dyn FnMut(&[usize], usize) -> bool,
    ) -> bool {
        if a.len() == n {
            return f(a, sizes.len());
        }
        let k = sizes.len();
        for b in 0..=k {
            if b == k {
                sizes.push(0);
            }
            let go = if sizes[b] < cap {
                sizes[b] += 1;
                a.push(b);
                let go = rec(a, sizes, n, cap, f);
                a.pop();
                sizes[b] -= 1;
                go
            } else {
                true
            };
            if b == k {
                sizes.pop();
            }
            if !go {
                return false;
            }
        }
        true
    }
    rec(
        &mut Vec::with_capacity(n),
        &mut Vec::new(),
        n,
        max_part,
        &mut f,
    );
}

fn parts_of(labels: &[usize], count: usize) -> Vec<Vec<usize>> {
    let mut parts = vec![Vec::new(); count];
    for (v, &b) in labels.iter().enumerate() {
        parts[b].push(v);
    }
    parts
}

/// Exact `c`-tree-partition-width by enumerating every set partition of `V(G)`,
/// returning the width and an optimal partition with certificate.
pub fn brute_min_tpw(g: &Graph, c: usize, limit: usize) -> Result<(usize, CTreePartition)> {
    let n = g.n();
    if n > limit {
        return Err(Error::TooLarge(format!(
            "{n} vertices exceeds the brute-force limit {limit}"
        )));
    }
    if n == 0 {
        return Ok((0, CTreePartition::trivial(g, c)));
    }
    let mut memo: HashMap<Vec<(usize, usize)>, (usize, TreeDecomposition)> = HashMap::new();
    for w in 1..=n {
        let mut found: Option<CTreePartition> = None;
        for_each_set_partition(n, w, |labels, count| {
            let parts = parts_of(labels, count);
            let h = quotient_of(g, &parts);
            let (tw, td) = memo
                .entry(h.edges())
                .or_insert_with(|| {
                    exact_treewidth(&h, DEFAULT_EXACT_BUDGET).expect("quotient is small")
                })
                .clone();
            if tw <= c {
                found = Some(CTreePartition::new(n, c, parts, h, td));
                return false;
            }
            true
        });
        if let Some(p) = found {
            return Ok((w, p));
        }
    }
    unreachable!("the single-part partition always qualifies")
}

/// Outcome of [`rainbow_clique_audit`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RainbowReport {
    pub holds: bool,
    pub partitions_checked: usize,
    /// A partition into parts of size at most `ℓ` with no rainbow `(c+1)`-clique.
    pub counterexample: Option<Vec<Vec<usize>>>,
}

/// Checks that every partition of `V(G)` into parts of size at most `ℓ` has a
/// `(c+1)`-clique with its vertices in distinct parts.
pub fn rainbow_clique_audit(
    g: &Graph,
    c: usize,
    ell: usize,
    limit: usize,
) -> Result<RainbowReport> {
    let n = g.n();
    if n > limit {
        return Err(Error::TooLarge(format!(
            "{n} vertices exceeds the audit limit {limit}"
        )));
    }
    let cliques = cliques_of_size(g, c + 1);
    let mut report = RainbowReport {
        holds: true,
        partitions_checked: 0,
        counterexample: None,
    };
    for_each_set_partition(n, ell.max(1), |labels, count| {
        report.partitions_checked += 1;
        let rainbow = cliques.iter().any(|q| {
            let mut seen: Vec<usize> = q.iter().map(|&v| labels[v]).collect();
            seen.sort_unstable();
            seen.dedup();
            seen.len() == q.len()
        });
        if !rainbow {
            report.holds = false;
            report.counterexample = Some(parts_of(labels, count));
            return false;
        }
        true
    });
    Ok(report)
}

fn cliques_of_size(g: &Graph, size: usize) -> Vec<Vec<usize>> {
    fn grow(
        g: &Graph,
        cur: &mut Vec<usize>,
        cands: &[usize],
        size: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for (i, &v) in cands.iter().enumerate() {
            let next: Vec<usize> = cands[i + 1..]
                .iter()
                .copied()
                .filter(|&w| g.has_edge(v, w))
                .collect();
            cur.push(v);
            grow(g, cur, &next, size, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    let all: Vec<usize> = (0..g.n()).collect();
    grow(g, &mut Vec::new(), &all, size, &mut out);
    out
}

/// Outcome of [`observation1_audit`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionReport {
    pub pass: bool,
    /// Width of the decomposition of `G` obtained by expanding the certificate.
    pub composed_width: usize,
    /// `(c + 1) · width(p) - 1`.
    pub bound: usize,
    /// Exact treewidth of `G` when it fits the exact budget.
    pub exact_tw: Option<usize>,
}

/// Expands every certificate bag `W_x` into the union of its parts and checks
/// that this is a tree decomposition of `G` of width at most `(c+1)·width - 1`.
pub fn observation1_audit(
    g: &Graph,
    p: &CTreePartition,
    exact_budget: usize,
) -> Result<CompositionReport> {
    validate_partition(g, p).into_result()?;
    let bags: Vec<Vec<usize>> = p
        .certificate
        .bags
        .iter()
        .map(|b| b.iter().flat_map(|&x| p.parts[x].iter().copied()).collect())
        .collect();
    let td = TreeDecomposition::new(bags, p.certificate.edges.clone());
    td.validate(g)?;
    let composed_width = td.width();
    let bound = ((p.c + 1) * p.width()).saturating_sub(1);
    let exact_tw = if g.n() <= exact_budget {
        Some(exact_treewidth(g, exact_budget)?.0)
    } else {
        None
    };
    let pass = composed_width <= bound && exact_tw.is_none_or(|t| t <= bound);
    Ok(CompositionReport {
        pass,
        composed_width,
        bound,
        exact_tw,
    })
}
