use super::degree_partition;
use crate::config::Budgets;
use crate::coverings::Covering;
use crate::error::{Error, Result};
use crate::families::{generate, FamilySpec};
use crate::graph::Graph;
use crate::oracles::{connector_oracle, EpMode};
use crate::partition::{component_partition_c0, CTreePartition};
use crate::partitioner::{compute_partition, PartitionOptions};
use crate::pattern::{contains_pattern, PatternMode};
use crate::transforms::robust_power;
use crate::treewidth::{best_td, TreeDecomposition};

/// Turns a c-tree-partition of a robust power of `g` into a
/// `(c+1)`-tree-partition of `g`.
///
/// The parts are used as a covering of `g`, and every query is answered by a
/// hitting set for the connected subgraphs of `X` meeting all of
/// `N(B_1'), ..., N(B_{c+1}')`, found on `td`. Hitting-set sizes are measured.
pub fn power_step(
    g: &Graph,
    td: &TreeDecomposition,
    inner: &CTreePartition,
    budgets: &Budgets,
) -> Result<CTreePartition> {
    let c = inner.c + 1;
    if g.n() == 0 {
        return Ok(CTreePartition::trivial(g, c));
    }
    let blocks: Vec<Vec<usize>> = inner
        .parts
        .iter()
        .filter(|p| !p.is_empty())
        .cloned()
        .collect();
    let beta = Covering::new(g.n(), blocks)?;
    let oracle = connector_oracle(g, c)
        .with_decomposition(td.clone())
        .with_mode(EpMode::Auto, budgets.ep);
    let run = compute_partition(g, td, &beta, &oracle, c, PartitionOptions::default())?;
    Ok(run.partition)
}

/// Checks that `g` has no `pattern` subgraph when the pattern fits the budget.
/// Returns whether the check ran.
fn precheck(g: &Graph, pattern: &Graph, name: &str, budgets: &Budgets) -> Result<bool> {
    if pattern.n() > budgets.pattern {
        return Ok(false);
    }
    match contains_pattern(g, pattern, PatternMode::Subgraph, budgets.pattern)? {
        Some(image) => Err(Error::ClassViolation(format!(
            "contains {name} on {image:?}"
        ))),
        None => Ok(true),
    }
}

fn class_flag(p: &mut CTreePartition, checked: bool) {
    p.set_meta(
        "class_check",
        if checked {
            "pattern search"
        } else {
            "unchecked: pattern exceeds budget"
        },
    );
}

/// `(⌊log t⌋ + 1)`-tree-partition of a graph with no `S_{s,t}` subgraph.
///
/// A graph with no `S_{s,2^{c+1}-1}` has max degree below `s` when `c = 0`;
/// otherwise its `λ`-robust power with `λ = max{1+s+su(2u+1), tw+1}`,
/// `u = 2^c - 1`, has no `S_{s,2^c-1}`, and a `c`-tree-partition of the power
/// lifts to a `(c+1)`-tree-partition of the graph.
pub fn spider_free_partition(
    g: &Graph,
    s: usize,
    t: usize,
    budgets: &Budgets,
) -> Result<CTreePartition> {
    if s < 3 || t == 0 {
        return Err(Error::InvalidSpec(format!(
            "spider needs s >= 3 and t >= 1, got s = {s}, t = {t}"
        )));
    }
    let spider = generate(FamilySpec::Spider(s, t))?;
    let checked = precheck(g, &spider, &format!("S_{{{s},{t}}}"), budgets)?;
    let level = t.ilog2() as usize;
    let mut p = spider_level(g, s, level, budgets)?;
    class_flag(&mut p, checked);
    Ok(p)
}

fn spider_level(g: &Graph, s: usize, level: usize, budgets: &Budgets) -> Result<CTreePartition> {
    let (td, _) = best_td(g, budgets.tw);
    if level == 0 {
        let delta = g.max_degree();
        if delta >= s {
            return Err(Error::DegreeBoundViolated {
                degree: delta,
                bound: s - 1,
            });
        }
        return Ok(degree_partition(g, &td)?.partition);
    }
    let u = (1usize << level) - 1;
    let lambda = (1 + s + s * u * (2 * u + 1)).max(td.width() + 1);
    let power = robust_power(g, lambda);
    let inner = spider_level(&power, s, level - 1, budgets)?;
    let mut p = power_step(g, &td, &inner, budgets)?;
    p.set_meta("lambda", lambda);
    Ok(p)
}

/// `(⌊log n⌋ - 1)`-tree-partition of a graph with no `P_n` subgraph.
///
/// A graph with no `P_{2^{c+1}-1}` has components of at most two vertices when
/// `c = 1`; otherwise its robust power with `λ = max{3+(2^c-2)(2^c-1), tw+1}`
/// has no `P_{2^c-1}` and the partition of the power is lifted.
pub fn path_free_partition(g: &Graph, n: usize, budgets: &Budgets) -> Result<CTreePartition> {
    if n < 3 {
        return Err(Error::InvalidSpec(format!(
            "path length must be at least 3, got {n}"
        )));
    }
    let path = generate(FamilySpec::Path(n))?;
    let checked = precheck(g, &path, &format!("P_{n}"), budgets)?;
    let level = n.ilog2() as usize;
    let mut p = path_level(g, level, budgets)?;
    class_flag(&mut p, checked);
    Ok(p)
}

fn path_level(g: &Graph, level: usize, budgets: &Budgets) -> Result<CTreePartition> {
    if level == 1 {
        return component_partition_c0(g, 2);
    }
    let (td, _) = best_td(g, budgets.tw);
    let m = 1usize << level;
    let lambda = (3 + (m - 2) * (m - 1)).max(td.width() + 1);
    let power = robust_power(g, lambda);
    let inner = path_level(&power, level - 1, budgets)?;
    let mut p = power_step(g, &td, &inner, budgets)?;
    p.set_meta("lambda", lambda);
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::validate_partition;

    fn gen(s: &str) -> Graph {
        generate(s.parse::<FamilySpec>().unwrap()).unwrap()
    }

    fn check(g: &Graph, p: &CTreePartition, c: usize) {
        assert_eq!(p.c, c);
        let r = validate_partition(g, p);
        assert!(r.pass, "{:?}", r.failures);
    }

    #[test]
    fn spider_base_case_is_the_degree_pipeline() {
        let g = gen("grid 4 5");
        let p = spider_free_partition(&g, 5, 1, &Budgets::default()).unwrap();
        check(&g, &p, 1);
        assert!(p.width() <= 24 * 5 * 4);
        assert!(matches!(
            spider_free_partition(&g, 3, 1, &Budgets::default()),
            Err(Error::ClassViolation(_))
        ));
    }

    #[test]
    fn spider_free_path_and_closure() {
        let g = gen("path 10");
        check(
            &g,
            &spider_free_partition(&g, 3, 2, &Budgets::default()).unwrap(),
            2,
        );
        let g = gen("ccl 2 4");
        check(
            &g,
            &spider_free_partition(&g, 3, 4, &Budgets::default()).unwrap(),
            3,
        );
    }

    #[test]
    fn path_free_levels() {
        let g = Graph::from_edges(7, &[(0, 1), (2, 3), (5, 6)]).unwrap();
        let p = path_free_partition(&g, 3, &Budgets::default()).unwrap();
        check(&g, &p, 0);
        assert!(p.width() <= 2);
        let g = gen("ccl 1 5");
        check(
            &g,
            &path_free_partition(&g, 4, &Budgets::default()).unwrap(),
            1,
        );
        let g = gen("ccl 2 3");
        check(
            &g,
            &path_free_partition(&g, 8, &Budgets::default()).unwrap(),
            2,
        );
        assert!(matches!(
            path_free_partition(&gen("path 5"), 4, &Budgets::default()),
            Err(Error::ClassViolation(_))
        ));
    }

    #[test]
    fn unchecked_classes_are_flagged() {
        let g = gen("path 6");
        let tight = Budgets {
            pattern: 4,
            ..Budgets::default()
        };
        let p = path_free_partition(&g, 8, &tight).unwrap();
        assert!(p.meta["class_check"].starts_with("unchecked"));
    }
}
