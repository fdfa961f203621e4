use std::sync::atomic::{AtomicUsize, Ordering};

use super::forest_decomposition;
use crate::bits::{self, Mask};
use crate::coverings::{
    assign_components, BlockUnion, Covering, DisjointednessQuery, OracleReport, QOracle, QWitness,
};
use crate::coverings::{oracle_from_partition, PartitionOracle};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::CTreePartition;
use crate::partitioner::{compute_partition_cd, PartitionOptions};
use crate::transforms::{suppress_degree_two_keeping, Branch, SubdivisionMap};
use crate::treewidth::{best_td, TreeDecomposition, DEFAULT_EXACT_BUDGET};
use crate::verify::validate_partition;

/// Vertex of `sm.subdivided` standing for each original vertex.
fn original_positions(sm: &SubdivisionMap) -> Vec<usize> {
    let mut pos = vec![usize::MAX; sm.original.n()];
    for (w, b) in sm.branch_of.iter().enumerate() {
        if let Branch::Vertex(u) = *b {
            pos[u] = w;
        }
    }
    pos
}

/// Pairs the ends of a path inwards: `{w_1, w_s}, {w_2, w_{s-1}}, ...`.
fn folded(path: &[usize]) -> Vec<Vec<usize>> {
    let s = path.len();
    (0..s.div_ceil(2))
        .map(|i| {
            if i == s - 1 - i {
                vec![path[i]]
            } else {
                vec![path[i], path[s - 1 - i]]
            }
        })
        .collect()
}

/// Extends a c-tree-partition of `sm.original` to one of `sm.subdivided`.
///
/// For `c >= 2` each subdivided edge becomes a chain of two-vertex parts
/// hung off the parts of its ends, so the width stays `t`. For `c = 1` the
/// quotient forest is oriented away from its roots and the first internal
/// vertex of an edge between parts joins the child part, giving width at
/// most `t^2 + t`. Width-1 inputs give the singleton partition.
pub fn subdivide_partition(
    sm: &SubdivisionMap,
    p: &CTreePartition,
    c: usize,
) -> Result<CTreePartition> {
    let g = &sm.original;
    let gs = &sm.subdivided;
    validate_partition(g, p).into_result()?;
    if p.c > c {
        return Err(Error::InvalidPartition(format!(
            "partition has c = {} but {c} was requested",
            p.c
        )));
    }
    let pos = original_positions(sm);
    let mapped: Vec<Vec<usize>> = p
        .parts
        .iter()
        .map(|part| part.iter().map(|&v| pos[v]).collect())
        .collect();
    if sm.paths.iter().all(|(_, internal)| internal.is_empty()) {
        let mut out =
            CTreePartition::new(gs.n(), c, mapped, p.quotient.clone(), p.certificate.clone());
        out.meta = p.meta.clone();
        return Ok(out);
    }
    let t = p.width();
    let mut out = if t <= 1 {
        singleton_subdivision(sm, p, c, &pos)?
    } else if c == 1 {
        oriented_subdivision(sm, p, mapped)?
    } else {
        hung_subdivision(sm, p, c, mapped)?
    };
    let bound = if c == 1 { t * t + t } else { t };
    out.set_meta("bound", bound.max(1));
    validate_partition(gs, &out).into_result()?;
    if out.width() > bound.max(1) {
        return Err(Error::WidthBoundExceeded {
            width: out.width(),
            bound: bound.max(1),
        });
    }
    Ok(out)
}

/// Width-1 input: every vertex of the subdivision is its own part.
fn singleton_subdivision(
    sm: &SubdivisionMap,
    p: &CTreePartition,
    c: usize,
    pos: &[usize],
) -> Result<CTreePartition> {
    let gs = &sm.subdivided;
    let parts: Vec<Vec<usize>> = (0..gs.n()).map(|v| vec![v]).collect();
    if c == 1 {
        let cert = forest_decomposition(gs)
            .ok_or_else(|| Error::Internal("subdivision of a forest has a cycle".into()))?;
        return Ok(CTreePartition::from_parts(gs, 1, parts, cert));
    }
    // Quotient nodes of `p` are single vertices; relabel its certificate to subdivided ids
    // and walk each path with a bag sliding along it, always keeping the far end.
    let node_vertex: Vec<Option<usize>> = p
        .parts
        .iter()
        .map(|part| part.first().map(|&v| pos[v]))
        .collect();
    let mut bags: Vec<Vec<usize>> = p
        .certificate
        .bags
        .iter()
        .map(|b| b.iter().filter_map(|&x| node_vertex[x]).collect())
        .collect();
    let mut edges = p.certificate.edges.clone();
    if bags.is_empty() {
        bags.push(Vec::new());
    }
    for ((u, v), internal) in &sm.paths {
        if internal.is_empty() {
            continue;
        }
        let (a, b) = (pos[*u], pos[*v]);
        let host = bags
            .iter()
            .position(|bag| bag.contains(&a) && bag.contains(&b))
            .ok_or_else(|| {
                Error::InvalidPartition(format!("no certificate bag holds edge ({u}, {v})"))
            })?;
        let mut prev = host;
        let mut last = a;
        for &w in internal {
            bags.push(vec![last, b, w]);
            edges.push((prev, bags.len() - 1));
            prev = bags.len() - 1;
            last = w;
        }
    }
    Ok(CTreePartition::from_parts(
        gs,
        c,
        parts,
        TreeDecomposition::new(bags, edges),
    ))
}

fn oriented_subdivision(
    sm: &SubdivisionMap,
    p: &CTreePartition,
    mut parts: Vec<Vec<usize>>,
) -> Result<CTreePartition> {
    let gs = &sm.subdivided;
    let h = &p.quotient;
    let mut parent = vec![usize::MAX; h.n()];
    let mut seen = vec![false; h.n()];
    for comp in h.components() {
        seen[comp[0]] = true;
        let mut stack = vec![comp[0]];
        while let Some(x) = stack.pop() {
            for &y in h.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = x;
                    stack.push(y);
                }
            }
        }
    }
    for ((u, v), internal) in &sm.paths {
        if internal.is_empty() {
            continue;
        }
        let (x, y) = (p.part_of[*u], p.part_of[*v]);
        let rest: Vec<usize> = if x == y {
            internal.clone()
        } else if parent[y] == x {
            parts[y].push(internal[0]);
            internal[1..].to_vec()
        } else if parent[x] == y {
            parts[x].push(internal[internal.len() - 1]);
            internal[..internal.len() - 1].to_vec()
        } else {
            return Err(Error::InvalidPartition(format!("edge ({u}, {v}) joins parts {x} and {y}, which are not adjacent in the quotient tree")));
        };
        if !rest.is_empty() {
            parts.extend(folded(&rest));
        }
    }
    let quotient = crate::partition::quotient_of(gs, &parts);
    let cert = forest_decomposition(&quotient)
        .ok_or_else(|| Error::Internal("subdivided quotient has a cycle".into()))?;
    Ok(CTreePartition::new(gs.n(), 1, parts, quotient, cert))
}

fn hung_subdivision(
    sm: &SubdivisionMap,
    p: &CTreePartition,
    c: usize,
    mut parts: Vec<Vec<usize>>,
) -> Result<CTreePartition> {
    let gs = &sm.subdivided;
    let mut bags = p.certificate.bags.clone();
    let mut edges = p.certificate.edges.clone();
    for ((u, v), internal) in &sm.paths {
        if internal.is_empty() {
            continue;
        }
        let (x, y) = (p.part_of[*u], p.part_of[*v]);
        let host = bags
            .iter()
            .position(|bag| bag.contains(&x) && bag.contains(&y))
            .ok_or_else(|| {
                Error::InvalidPartition(format!(
                    "no certificate bag holds quotient nodes {x} and {y}"
                ))
            })?;
        let mut prev = host;
        let mut last: Option<usize> = None;
        for pair in folded(internal) {
            let id = parts.len();
            parts.push(pair);
            let bag = match last {
                None => vec![x, y, id],
                Some(l) => vec![l, id],
            };
            bags.push(bag);
            edges.push((prev, bags.len() - 1));
            prev = bags.len() - 1;
            last = Some(id);
        }
    }
    Ok(CTreePartition::from_parts(
        gs,
        c,
        parts,
        TreeDecomposition::new(bags, edges),
    ))
}

/// `4c^2 12^c (cℓ+1) ℓ^2 k^c`: the width bound for the original graph given a
/// width-`ℓ` c-tree-partition of a subdivision and `tw < k`.
pub fn subdivided_original_bound(c: usize, ell: usize, k: usize) -> usize {
    let c128 = c as u128;
    let ell = ell as u128;
    let v = 4
        * c128
        * c128
        * 12u128.saturating_pow(c as u32)
        * (c128 * ell + 1)
        * ell
        * ell
        * (k as u128).saturating_pow(c as u32);
    v.min(usize::MAX as u128) as usize
}

/// Answers single-block queries on `G` for the covering `{B' ∩ V(G)}` induced
/// by a c-tree-partition of a subdivision `G'`.
///
/// Each component `Y'` of `G' - B'` meeting `X` is answered by the partition
/// oracle of `G'`; internal vertices in those answers and in `B' - B` are
/// replaced by the ends of their edges. The bound is `2cℓ(cℓ+1)`.
pub struct SubdivisionOracle {
    g: Graph,
    sm: SubdivisionMap,
    base: PartitionOracle,
    /// Part of the subdivision's partition behind each covering block.
    part_of_block: Vec<usize>,
    pos: Vec<usize>,
    d: usize,
    max_q: AtomicUsize,
    queries: AtomicUsize,
}

impl SubdivisionOracle {
    /// The oracle and the covering of `sm.original` it answers for.
    pub fn new(sm: &SubdivisionMap, p: &CTreePartition) -> Result<(SubdivisionOracle, Covering)> {
        let base = oracle_from_partition(&sm.subdivided, p)?;
        let mut blocks = Vec::new();
        let mut part_of_block = Vec::new();
        for (i, part) in p.parts.iter().enumerate() {
            let block: Vec<usize> = part
                .iter()
                .filter_map(|&w| match sm.branch_of[w] {
                    Branch::Vertex(u) => Some(u),
                    Branch::Internal { .. } => None,
                })
                .collect();
            if !block.is_empty() {
                blocks.push(block);
                part_of_block.push(i);
            }
        }
        let covering = Covering::new(sm.original.n(), blocks)?;
        let (c, ell) = (p.c.max(1), p.width());
        let oracle = SubdivisionOracle {
            g: sm.original.clone(),
            sm: sm.clone(),
            base,
            part_of_block,
            pos: original_positions(sm),
            d: 2 * c * ell * (c * ell + 1),
            max_q: AtomicUsize::new(0),
            queries: AtomicUsize::new(0),
        };
        Ok((oracle, covering))
    }
}

impl QOracle for SubdivisionOracle {
    fn graph(&self) -> &Graph {
        &self.g
    }

    fn c(&self) -> usize {
        self.base.c()
    }

    fn bound(&self, _t: usize) -> Option<usize> {
        Some(self.d)
    }

    fn max_arity(&self) -> Option<usize> {
        Some(1)
    }

    fn query(&self, q: &DisjointednessQuery) -> Result<QWitness> {
        let gs = &self.sm.subdivided;
        let p = self.base.partition();
        let mut sub_blocks = Vec::with_capacity(q.c());
        for b in &q.blocks {
            if b.vertices.is_empty() {
                sub_blocks.push(BlockUnion::empty());
                continue;
            }
            if b.members.len() != 1 {
                return Err(Error::UnsupportedBlock(
                    "subdivision oracle takes single covering blocks".into(),
                ));
            }
            let part = self.part_of_block[b.members[0]];
            sub_blocks.push(BlockUnion {
                members: vec![part],
                vertices: p.parts[part].clone(),
            });
        }
        let mut removed = Mask::with_capacity(gs.n());
        for b in &sub_blocks {
            for &w in &b.vertices {
                removed.insert(w);
            }
        }
        let x = q.component_mask(self.g.n());
        let mut hits = Mask::with_capacity(self.g.n());
        for w in removed.ones() {
            if matches!(self.sm.branch_of[w], Branch::Internal { .. }) {
                for u in self.sm.originals_of(w) {
                    hits.insert(u);
                }
            }
        }
        let mut rest = bits::full_mask(gs.n());
        rest.difference_with(&removed);
        let mut covered = Mask::with_capacity(gs.n());
        for &v in &q.component {
            let w = self.pos[v];
            if covered.contains(w) {
                continue;
            }
            let y = bits::component_of(gs, &rest, w);
            covered.union_with(&y);
            let sub_q = DisjointednessQuery::with_component(sub_blocks.clone(), bits::to_vec(&y));
            for z in self.base.query(&sub_q)?.q {
                for u in self.sm.originals_of(z) {
                    hits.insert(u);
                }
            }
        }
        hits.intersect_with(&x);
        let q_set = bits::to_vec(&hits);
        self.queries.fetch_add(1, Ordering::Relaxed);
        self.max_q.fetch_max(q_set.len(), Ordering::Relaxed);
        assign_components(&self.g, q, &q_set).ok_or_else(|| {
            Error::OracleViolation(format!(
                "translated answer of size {} leaves a component unassigned",
                q_set.len()
            ))
        })
    }

    fn name(&self) -> String {
        format!("subdivision(d={})", self.d)
    }

    fn report(&self) -> OracleReport {
        let mut r = OracleReport::default();
        r.note("queries", self.queries.load(Ordering::Relaxed));
        r.note("max_q", self.max_q.load(Ordering::Relaxed));
        r
    }
}

/// Builds a c-tree-partition of `sm.original` from one of `sm.subdivided`.
///
/// The covering `{B' ∩ V(G)}` is `(c, 2cℓ(cℓ+1))`-disjointed; the partitioner
/// runs on it with the lifted [`SubdivisionOracle`]. The width is checked
/// against [`subdivided_original_bound`] with `k` one more than the width of
/// the decomposition used.
pub fn original_partition_from_subdivision(
    sm: &SubdivisionMap,
    p: &CTreePartition,
    c: usize,
) -> Result<CTreePartition> {
    if c == 0 {
        return Err(Error::InvalidSpec("c must be at least 1".into()));
    }
    validate_partition(&sm.subdivided, p).into_result()?;
    if p.c > c {
        return Err(Error::InvalidPartition(format!(
            "partition has c = {} but {c} was requested",
            p.c
        )));
    }
    let g = &sm.original;
    if g.n() == 0 {
        return Ok(CTreePartition::trivial(g, c));
    }
    let mut p = p.clone();
    p.c = c;
    let (oracle, covering) = SubdivisionOracle::new(sm, &p)?;
    let (td, _) = best_td(g, DEFAULT_EXACT_BUDGET);
    let run = compute_partition_cd(g, &td, &covering, oracle, c, PartitionOptions::default())?;
    let formula = subdivided_original_bound(c, p.width(), run.k);
    let mut out = run.partition;
    out.set_meta("subdivision_bound", formula);
    if out.width() > formula {
        return Err(Error::WidthBoundExceeded {
            width: out.width(),
            bound: formula,
        });
    }
    Ok(out)
}

/// Tree-partition of a graph that is a subdivision of a small core: suppress
/// degree-2 vertices, put the core in one part and hang every subdivided edge
/// off it as a chain of pairs. Fails if the core has more than `10t` vertices.
pub fn k1t_partition(g: &Graph, t: usize) -> Result<CTreePartition> {
    let (core, sm) = suppress_degree_two_keeping(g);
    let cap = 10 * t;
    if core.n() > cap {
        return Err(Error::CoreTooLarge {
            size: core.n(),
            bound: cap,
        });
    }
    if core.n() == 0 {
        return Ok(CTreePartition::trivial(g, 1));
    }
    let trivial = CTreePartition::trivial(&core, 1);
    let mut out = subdivide_partition(&sm, &trivial, 1)?;
    // One part means every chain hangs off it, so pairs never exceed the core.
    out.set_meta("bound", core.n().max(2));
    out.set_meta("core", core.n());
    if out.width() > core.n().max(2) {
        return Err(Error::WidthBoundExceeded {
            width: out.width(),
            bound: core.n().max(2),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{generate, FamilySpec};
    use crate::transforms::subdivide;
    use crate::verify::brute_min_tpw;

    fn gen(s: &str) -> Graph {
        generate(s.parse::<FamilySpec>().unwrap()).unwrap()
    }

    #[test]
    fn folding_pairs_ends() {
        assert_eq!(
            folded(&[1, 2, 3, 4, 5]),
            vec![vec![1, 5], vec![2, 4], vec![3]]
        );
        assert_eq!(folded(&[7, 8]), vec![vec![7, 8]]);
        assert_eq!(folded(&[9]), vec![vec![9]]);
    }

    #[test]
    fn subdividing_k4_keeps_width_for_c2() {
        let k4 = gen("complete 4");
        let sm = subdivide(&k4, &[1; 6]).unwrap();
        let p = CTreePartition::trivial(&k4, 2);
        let out = subdivide_partition(&sm, &p, 2).unwrap();
        assert_eq!(out.width(), 4);
        assert!(validate_partition(&sm.subdivided, &out).pass);
    }

    #[test]
    fn subdividing_a_tree_with_c1() {
        let t = gen("spider 3 2");
        let p = CTreePartition::from_parts(
            &t,
            1,
            (0..t.n()).map(|v| vec![v]).collect(),
            forest_decomposition(&t).unwrap(),
        );
        let sm = subdivide(&t, &vec![3; t.m()]).unwrap();
        let out = subdivide_partition(&sm, &p, 1).unwrap();
        assert!(out.width() <= 2);
        assert!(validate_partition(&sm.subdivided, &out).pass);
    }

    #[test]
    fn subdividing_a_cycle_partition_with_c1() {
        // C6 as a path of three pairs, every edge subdivided unevenly.
        let g = gen("cycle 6");
        let p = CTreePartition::from_parts(
            &g,
            1,
            vec![vec![0, 5], vec![1, 4], vec![2, 3]],
            TreeDecomposition::new(vec![vec![0, 1], vec![1, 2]], vec![(0, 1)]),
        );
        let sm = subdivide(&g, &[0, 1, 2, 3, 4, 5]).unwrap();
        let out = subdivide_partition(&sm, &p, 1).unwrap();
        assert!(out.width() <= 6);
        assert!(validate_partition(&sm.subdivided, &out).pass);
    }

    #[test]
    fn zero_counts_leave_the_partition_alone() {
        let g = gen("grid 2 3");
        let (_, p) = brute_min_tpw(&g, 1, 9).unwrap();
        let sm = subdivide(&g, &vec![0; g.m()]).unwrap();
        let out = subdivide_partition(&sm, &p, 1).unwrap();
        assert_eq!(out.parts, p.parts);
    }

    #[test]
    fn singleton_subdivision_for_c2() {
        let g = gen("cycle 4");
        let p = CTreePartition::from_parts(
            &g,
            2,
            (0..4).map(|v| vec![v]).collect(),
            TreeDecomposition::new(vec![vec![0, 1, 2], vec![0, 2, 3]], vec![(0, 1)]),
        );
        let sm = subdivide(&g, &[2, 0, 1, 3]).unwrap();
        let out = subdivide_partition(&sm, &p, 2).unwrap();
        assert_eq!(out.width(), 1);
        assert!(validate_partition(&sm.subdivided, &out).pass);
    }

    #[test]
    fn bound_formula() {
        assert_eq!(subdivided_original_bound(1, 1, 1), 4 * 12 * 2);
        assert_eq!(subdivided_original_bound(2, 2, 3), 4 * 4 * 144 * 5 * 4 * 9);
    }

    #[test]
    fn original_from_identity_subdivision() {
        let g = gen("grid 3 4");
        let sm = subdivide(&g, &vec![0; g.m()]).unwrap();
        let p = CTreePartition::from_parts(
            &g,
            1,
            (0..4).map(|c| vec![c, 4 + c, 8 + c]).collect(),
            TreeDecomposition::new(
                vec![vec![0, 1], vec![1, 2], vec![2, 3]],
                vec![(0, 1), (1, 2)],
            ),
        );
        let out = original_partition_from_subdivision(&sm, &p, 1).unwrap();
        assert!(validate_partition(&g, &out).pass);
    }

    #[test]
    fn original_k4_from_its_subdivision() {
        let k4 = gen("complete 4");
        let sm = subdivide(&k4, &[1; 6]).unwrap();
        let (ell, p) = brute_min_tpw(&sm.subdivided, 2, 10).unwrap();
        let out = original_partition_from_subdivision(&sm, &p, 2).unwrap();
        assert!(validate_partition(&k4, &out).pass);
        let k = 4;
        assert!(out.width() <= subdivided_original_bound(2, ell, k));
    }

    #[test]
    fn original_path_from_a_subdivided_path() {
        let g = gen("path 8");
        let sm = subdivide(&g, &[1, 0, 2, 0, 3, 1, 1]).unwrap();
        let p = CTreePartition::from_parts(
            &sm.subdivided,
            1,
            (0..sm.subdivided.n()).map(|v| vec![v]).collect(),
            forest_decomposition(&sm.subdivided).unwrap(),
        );
        let out = original_partition_from_subdivision(&sm, &p, 1).unwrap();
        assert!(validate_partition(&g, &out).pass);
    }

    #[test]
    fn k1t_cases() {
        let out = k1t_partition(&gen("path 30"), 2).unwrap();
        assert!(out.width() <= 2);
        assert!(validate_partition(&gen("path 30"), &out).pass);
        let k4 = gen("complete 4");
        let sm = subdivide(&k4, &[1; 6]).unwrap();
        let out = k1t_partition(&sm.subdivided, 4).unwrap();
        assert!(validate_partition(&sm.subdivided, &out).pass);
        assert_eq!(out.width(), 4);
        assert_eq!(
            k1t_partition(&gen("star 50"), 3),
            Err(Error::CoreTooLarge {
                size: 51,
                bound: 30
            })
        );
        let c = gen("cycle 9");
        assert!(validate_partition(&c, &k1t_partition(&c, 1).unwrap()).pass);
    }
}
