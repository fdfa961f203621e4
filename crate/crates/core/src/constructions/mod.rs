//! Explicit partition builders for subdivisions and for graphs excluding a
//! subgraph or an induced subgraph.

mod excluded;
mod robust;
mod subdivision;

pub use excluded::{
    ell_h_free_partition, induced_p3_forest_partition, induced_star_forest_free_partition,
    induced_star_free_partition, induced_utw0_partition, InducedZeroMode,
};
pub use robust::{path_free_partition, power_step, spider_free_partition};
pub use subdivision::{
    k1t_partition, original_partition_from_subdivision, subdivide_partition,
    subdivided_original_bound, SubdivisionOracle,
};

use crate::coverings::Covering;
use crate::error::Result;
use crate::graph::Graph;
use crate::oracles::degree_oracle;
use crate::partition::CTreePartition;
use crate::partitioner::{compute_partition, PartitionOptions, PartitionRun};
use crate::pattern::{contains_pattern_within, PatternMode};
use crate::treewidth::TreeDecomposition;

/// Tree-partition from the degree oracle on the singleton covering; width at most `24kΔ`.
pub fn degree_partition(g: &Graph, td: &TreeDecomposition) -> Result<PartitionRun> {
    if g.n() == 0 {
        let p = CTreePartition::trivial(g, 1);
        return Ok(PartitionRun {
            partition: p,
            k: 1,
            c: 1,
            ell: 1,
            f_eff: 0,
            bound: 0,
            max_q: 0,
            oracle_calls: 0,
            measured: false,
        });
    }
    let oracle = degree_oracle(g);
    compute_partition(
        g,
        td,
        &Covering::singletons(g.n()),
        &oracle,
        1,
        PartitionOptions::default(),
    )
}

/// Disjoint copies of `h` found one at a time, each the first embedding the
/// search meets among the unused vertices.
pub(crate) fn greedy_pattern_packing(
    g: &Graph,
    h: &Graph,
    mode: PatternMode,
    budget: usize,
) -> Result<Vec<Vec<usize>>> {
    let mut allowed = vec![true; g.n()];
    let mut copies = Vec::new();
    if h.n() == 0 {
        return Ok(copies);
    }
    while let Some(image) = contains_pattern_within(g, h, mode, budget, Some(&allowed))? {
        for &v in &image {
            allowed[v] = false;
        }
        copies.push(image);
    }
    Ok(copies)
}

/// Adds a part `packed` adjacent to every part of `inner`, a partition of the
/// subgraph induced by `map` (inner vertex `i` is `map[i]` in `g`). The
/// certificate gains the new node in every bag. An empty `packed` is dropped.
pub(crate) fn with_dominant(
    g: &Graph,
    packed: &[usize],
    inner: &CTreePartition,
    map: &[usize],
) -> CTreePartition {
    let mut parts: Vec<Vec<usize>> = inner
        .parts
        .iter()
        .map(|p| p.iter().map(|&v| map[v]).collect())
        .collect();
    let mut cert = inner.certificate.clone();
    if !packed.is_empty() {
        let y = parts.len();
        parts.push(packed.to_vec());
        if cert.bags.is_empty() {
            cert = TreeDecomposition::trivial(1);
            cert.bags[0] = vec![y];
        } else {
            for bag in &mut cert.bags {
                bag.push(y);
            }
        }
    }
    CTreePartition::from_parts(g, inner.c + 1, parts, cert)
}

/// A width-1 tree decomposition of a forest: bag `{parent, v}` per vertex,
/// with component roots chained together. `None` if `h` has a cycle.
pub(crate) fn forest_decomposition(h: &Graph) -> Option<TreeDecomposition> {
    let comps = h.components();
    if h.m() + comps.len() != h.n() {
        return None;
    }
    let mut bags = vec![Vec::new(); h.n()];
    let mut edges = Vec::new();
    let mut seen = vec![false; h.n()];
    let mut prev_root: Option<usize> = None;
    for comp in &comps {
        let r = comp[0];
        seen[r] = true;
        bags[r] = vec![r];
        if let Some(p) = prev_root {
            edges.push((p, r));
        }
        prev_root = Some(r);
        let mut stack = vec![r];
        while let Some(u) = stack.pop() {
            for &w in h.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    bags[w] = vec![u, w];
                    edges.push((u, w));
                    stack.push(w);
                }
            }
        }
    }
    Some(TreeDecomposition::new(bags, edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{generate, FamilySpec};
    use crate::verify::validate_partition;

    #[test]
    fn forest_decompositions() {
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (1, 3), (4, 5)]).unwrap();
        let td = forest_decomposition(&g).unwrap();
        td.validate(&g).unwrap();
        assert_eq!(td.width(), 1);
        assert!(forest_decomposition(&generate(FamilySpec::Cycle(4)).unwrap()).is_none());
        assert_eq!(forest_decomposition(&Graph::new(0)).unwrap().bags.len(), 0);
    }

    #[test]
    fn greedy_packing_takes_disjoint_copies() {
        let g = generate(FamilySpec::Path(7)).unwrap();
        let p3 = generate(FamilySpec::Path(3)).unwrap();
        let copies = greedy_pattern_packing(&g, &p3, PatternMode::Subgraph, 12).unwrap();
        assert_eq!(copies.len(), 2);
        let mut all: Vec<usize> = copies.concat();
        all.sort_unstable();
        all.dedup();
        assert_eq!(all.len(), 6);
    }

    #[test]
    fn dominant_part_over_an_edgeless_quotient() {
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 3), (2, 4)]).unwrap();
        let (rest, map) = g.induced_subgraph(&[1, 2, 3, 4]);
        let inner = crate::partition::component_partition_c0(&rest, 2).unwrap();
        let p = with_dominant(&g, &[0], &inner, &map);
        assert_eq!(p.c, 1);
        assert!(validate_partition(&g, &p).pass);
    }
}
