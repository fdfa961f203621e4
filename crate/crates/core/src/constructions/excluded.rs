use super::{degree_partition, greedy_pattern_packing, with_dominant};
use crate::config::Budgets;
use crate::error::{Error, Result};
use crate::families::{generate, FamilySpec};
use crate::graph::Graph;
use crate::partition::{component_partition_c0, CTreePartition};
use crate::pattern::{contains_pattern, PatternMode};
use crate::transforms::disjoint_copies;
use crate::treewidth::best_td;

/// Vertices of `g` outside `packed`, and the subgraph they induce.
fn remainder(g: &Graph, copies: &[Vec<usize>]) -> (Vec<usize>, Graph, Vec<usize>) {
    let mut used = vec![false; g.n()];
    let mut packed: Vec<usize> = copies.concat();
    packed.sort_unstable();
    for &v in &packed {
        used[v] = true;
    }
    let rest: Vec<usize> = (0..g.n()).filter(|&v| !used[v]).collect();
    let (b, map) = g.induced_subgraph(&rest);
    (packed, b, map)
}

fn induced_precheck(g: &Graph, pattern: &Graph, name: &str, budgets: &Budgets) -> Result<()> {
    if pattern.n() > budgets.pattern {
        return Ok(());
    }
    match contains_pattern(g, pattern, PatternMode::Induced, budgets.pattern)? {
        Some(image) => Err(Error::ClassViolation(format!(
            "contains an induced {name} on {image:?}"
        ))),
        None => Ok(()),
    }
}

/// `(c+1)`-tree-partition of a graph with no `ℓ` disjoint copies of `h`.
///
/// A maximal packing of copies of `h` is taken greedily; fewer than `ℓ` copies
/// fit, and the rest of the graph has no copy of `h`. `inner` partitions that
/// rest, and one extra part holding the packed vertices is made adjacent to
/// every other part.
pub fn ell_h_free_partition(
    g: &Graph,
    h: &Graph,
    ell: usize,
    inner: &dyn Fn(&Graph) -> Result<CTreePartition>,
    budgets: &Budgets,
) -> Result<CTreePartition> {
    if ell < 2 {
        return Err(Error::InvalidSpec(format!(
            "ℓ must be at least 2, got {ell}"
        )));
    }
    let copies = greedy_pattern_packing(g, h, PatternMode::Subgraph, budgets.pattern)?;
    if copies.len() >= ell {
        return Err(Error::ClassViolation(format!(
            "found {} disjoint copies of the pattern",
            copies.len()
        )));
    }
    let (packed, b, map) = remainder(g, &copies);
    let inner_p = inner(&b)?;
    crate::verify::validate_partition(&b, &inner_p).into_result()?;
    let mut p = with_dominant(g, &packed, &inner_p, &map);
    let cap = (ell - 1) * h.n();
    assert!(
        packed.len() <= cap,
        "dominant part of {} vertices exceeds (ℓ-1)|V(H)| = {cap}",
        packed.len()
    );
    let inner_bound = inner_p
        .meta
        .get("bound")
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(inner_p.width());
    p.set_meta("packed", copies.len());
    p.set_meta("bound", cap.max(inner_bound));
    Ok(p)
}

/// Tree-partition of a graph with no induced `K_{1,s}`.
///
/// Such a graph has maximum degree at most `tw·(s-1)`, which is checked, and
/// the degree pipeline then gives width at most `24 k Δ` with `k = tw + 1`.
pub fn induced_star_free_partition(
    g: &Graph,
    s: usize,
    budgets: &Budgets,
) -> Result<CTreePartition> {
    if s < 1 {
        return Err(Error::InvalidSpec("star needs at least one leaf".into()));
    }
    let (td, _) = best_td(g, budgets.tw);
    let tw = td.width();
    let delta = g.max_degree();
    let cap = tw * (s - 1);
    if delta > cap {
        return Err(Error::DegreeBoundViolated {
            degree: delta,
            bound: cap,
        });
    }
    induced_precheck(
        g,
        &generate(FamilySpec::Star(s))?,
        &format!("K_{{1,{s}}}"),
        budgets,
    )?;
    let run = degree_partition(g, &td)?;
    let mut p = run.partition;
    p.set_meta("degree_bound", cap);
    Ok(p)
}

/// 2-tree-partition of a graph with no induced `ℓ K_{1,s}`.
///
/// A maximal packing of induced `K_{1,s}` (at most `(tw+1)(ℓ-1)` of them)
/// goes into one part adjacent to everything; the rest has no induced
/// `K_{1,s}` and gets a tree-partition.
pub fn induced_star_forest_free_partition(
    g: &Graph,
    s: usize,
    ell: usize,
    budgets: &Budgets,
) -> Result<CTreePartition> {
    if s < 1 || ell < 1 {
        return Err(Error::InvalidSpec(format!(
            "need s >= 1 and ℓ >= 1, got s = {s}, ℓ = {ell}"
        )));
    }
    let star = generate(FamilySpec::Star(s))?;
    induced_precheck(
        g,
        &disjoint_copies(&star, ell),
        &format!("{ell}K_{{1,{s}}}"),
        budgets,
    )?;
    let copies = greedy_pattern_packing(g, &star, PatternMode::Induced, budgets.pattern)?;
    let (td, _) = best_td(g, budgets.tw);
    let cap = (td.width() + 1) * (ell - 1);
    if copies.len() > cap {
        return Err(Error::ClassViolation(format!(
            "{} disjoint induced stars exceed (tw+1)(ℓ-1) = {cap}",
            copies.len()
        )));
    }
    let (packed, b, map) = remainder(g, &copies);
    let inner = induced_star_free_partition(&b, s, budgets)?;
    let mut p = with_dominant(g, &packed, &inner, &map);
    let bound = inner
        .meta
        .get("bound")
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(inner.width())
        .max(packed.len());
    p.set_meta("packed", copies.len());
    p.set_meta("bound", bound);
    if p.width() > bound {
        return Err(Error::WidthBoundExceeded {
            width: p.width(),
            bound,
        });
    }
    Ok(p)
}

/// Tree-partition of a graph with no induced `k P_3`.
///
/// A maximal packing of induced `P_3` forms the centre of a star; the
/// remaining components have no induced `P_3`, so they are cliques, and each
/// becomes a leaf part.
pub fn induced_p3_forest_partition(
    g: &Graph,
    k: usize,
    budgets: &Budgets,
) -> Result<CTreePartition> {
    if k < 1 {
        return Err(Error::InvalidSpec("k must be at least 1".into()));
    }
    let p3 = generate(FamilySpec::Path(3))?;
    induced_precheck(g, &disjoint_copies(&p3, k), &format!("{k}P_3"), budgets)?;
    let copies = greedy_pattern_packing(g, &p3, PatternMode::Induced, budgets.pattern)?;
    let (td, _) = best_td(g, budgets.tw);
    let tw = td.width();
    if copies.len() > (tw + 1) * (k - 1) {
        return Err(Error::ClassViolation(format!(
            "{} disjoint induced P_3 exceed (tw+1)(k-1) = {}",
            copies.len(),
            (tw + 1) * (k - 1)
        )));
    }
    let (packed, b, map) = remainder(g, &copies);
    let leaves = clique_components(&b)
        .map_err(|comp| Error::NonCliqueRemainder(comp.iter().map(|&v| map[v]).collect()))?;
    let mut p = with_dominant(g, &packed, &leaves, &map);
    let bound = (3 * (k - 1) * (tw + 1)).max(tw + 1);
    p.set_meta("bound", bound);
    if p.width() > bound {
        return Err(Error::WidthBoundExceeded {
            width: p.width(),
            bound,
        });
    }
    Ok(p)
}

/// The 0-tree-partition into components, which must all be cliques.
fn clique_components(g: &Graph) -> std::result::Result<CTreePartition, Vec<usize>> {
    if let Some(comp) = g.components().into_iter().find(|c| !g.is_clique(c)) {
        return Err(comp);
    }
    Ok(component_partition_c0(g, g.n()).expect("no size cap"))
}

/// The excluded induced subgraph for [`induced_utw0_partition`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InducedZeroMode {
    /// `k` isolated vertices: independence number below `k`.
    Edgeless(usize),
    /// A path on at most three vertices: every component is a clique.
    ShortPath,
}

/// 0-tree-partition of a graph with an excluded edgeless or short-path
/// induced subgraph.
pub fn induced_utw0_partition(
    g: &Graph,
    mode: InducedZeroMode,
    budgets: &Budgets,
) -> Result<CTreePartition> {
    if g.n() == 0 {
        return Ok(CTreePartition::trivial(g, 0));
    }
    let (td, _) = best_td(g, budgets.tw);
    let tw = td.width();
    let p = match mode {
        InducedZeroMode::Edgeless(k) => {
            if k < 1 {
                return Err(Error::InvalidSpec("k must be at least 1".into()));
            }
            induced_precheck(
                g,
                &Graph::new(k),
                &format!("independent set of size {k}"),
                budgets,
            )?;
            let cap = (tw + 1) * (k - 1);
            if g.n() > cap {
                return Err(Error::ClassViolation(format!(
                    "{} vertices exceed (tw+1)(k-1) = {cap}",
                    g.n()
                )));
            }
            let mut p = CTreePartition::trivial(g, 0);
            p.set_meta("bound", cap);
            p
        }
        InducedZeroMode::ShortPath => {
            let mut p = clique_components(g).map_err(Error::NonCliqueRemainder)?;
            p.set_meta("bound", tw + 1);
            p
        }
    };
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::validate_partition;

    fn gen(s: &str) -> Graph {
        generate(s.parse::<FamilySpec>().unwrap()).unwrap()
    }

    fn union(a: &Graph, b: &Graph) -> Graph {
        let mut edges = a.edges();
        edges.extend(b.edges().into_iter().map(|(u, v)| (u + a.n(), v + a.n())));
        Graph::from_edges(a.n() + b.n(), &edges).unwrap()
    }

    fn assert_valid(g: &Graph, p: &CTreePartition, c: usize) {
        assert_eq!(p.c, c);
        let r = validate_partition(g, p);
        assert!(r.pass, "{:?}", r.failures);
    }

    #[test]
    fn ell_h_free_with_one_copy() {
        let g = union(&gen("path 3"), &gen("path 2"));
        let inner = |b: &Graph| component_partition_c0(b, 2);
        let p = ell_h_free_partition(&g, &gen("path 3"), 2, &inner, &Budgets::default()).unwrap();
        assert_valid(&g, &p, 1);
        assert_eq!(p.width(), 3);
        assert_eq!(p.parts.len(), 2);
        let two = union(&gen("path 3"), &gen("path 3"));
        assert!(matches!(
            ell_h_free_partition(&two, &gen("path 3"), 2, &inner, &Budgets::default()),
            Err(Error::ClassViolation(_))
        ));
    }

    #[test]
    fn ell_h_free_without_copies_keeps_the_inner_partition() {
        let g = gen("path 2");
        let inner = |b: &Graph| component_partition_c0(b, 2);
        let p = ell_h_free_partition(&g, &gen("path 3"), 2, &inner, &Budgets::default()).unwrap();
        assert_eq!(p.parts, vec![vec![0, 1]]);
        assert_valid(&g, &p, 1);
    }

    #[test]
    fn induced_star_free_cases() {
        let k6 = gen("complete 6");
        let p = induced_star_free_partition(&k6, 2, &Budgets::default()).unwrap();
        assert_valid(&k6, &p, 1);
        assert!(p.width() <= 24 * 5 * 5);
        let star = gen("star 4");
        assert!(induced_star_free_partition(&star, 3, &Budgets::default()).is_err());
        // Line graph of P_5 is P_4, which is claw-free.
        let p4 = gen("path 4");
        assert_valid(
            &p4,
            &induced_star_free_partition(&p4, 3, &Budgets::default()).unwrap(),
            1,
        );
    }

    #[test]
    fn induced_star_forest_cases() {
        let g = gen("complete_bipartite 2 6");
        let p = induced_star_forest_free_partition(&g, 3, 2, &Budgets::default()).unwrap();
        assert_valid(&g, &p, 2);
        let k5 = gen("complete 5");
        let p = induced_star_forest_free_partition(&k5, 2, 2, &Budgets::default()).unwrap();
        assert_eq!(p.meta["packed"], "0");
        assert_valid(&k5, &p, 2);
    }

    #[test]
    fn induced_p3_forest_cases() {
        let cliques = union(&gen("complete 3"), &gen("complete 4"));
        let p = induced_p3_forest_partition(&cliques, 2, &Budgets::default()).unwrap();
        assert_valid(&cliques, &p, 1);
        assert_eq!(p.width(), 4);
        let p3 = gen("path 3");
        let p = induced_p3_forest_partition(&p3, 2, &Budgets::default()).unwrap();
        assert_eq!(p.parts, vec![vec![0, 1, 2]]);
        let g = union(&p3, &gen("complete 3"));
        let p = induced_p3_forest_partition(&g, 2, &Budgets::default()).unwrap();
        assert_valid(&g, &p, 1);
        assert_eq!(p.parts.len(), 2);
        assert!(p.parts.contains(&vec![0, 1, 2]));
    }

    #[test]
    fn induced_utw0_cases() {
        let cliques = union(&gen("complete 2"), &gen("complete 4"));
        let p = induced_utw0_partition(&cliques, InducedZeroMode::ShortPath, &Budgets::default())
            .unwrap();
        assert_valid(&cliques, &p, 0);
        assert_eq!(p.width(), 4);
        let k5 = gen("complete 5");
        let p =
            induced_utw0_partition(&k5, InducedZeroMode::Edgeless(3), &Budgets::default()).unwrap();
        assert_eq!(p.width(), 5);
        assert_valid(&k5, &p, 0);
        assert_eq!(
            induced_utw0_partition(
                &Graph::new(0),
                InducedZeroMode::ShortPath,
                &Budgets::default()
            )
            .unwrap()
            .parts
            .len(),
            0
        );
        assert!(matches!(
            induced_utw0_partition(
                &gen("path 3"),
                InducedZeroMode::ShortPath,
                &Budgets::default()
            ),
            Err(Error::NonCliqueRemainder(_))
        ));
    }
}
