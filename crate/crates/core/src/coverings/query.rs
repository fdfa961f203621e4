use super::BlockUnion;
use crate::bits::{self, Mask};
use crate::graph::Graph;

/// Blocks `B_1..B_c` and one component `X` of `G - (B_1 ∪ ... ∪ B_c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisjointednessQuery {
    pub blocks: Vec<BlockUnion>,
    /// Vertices of `X`, sorted.
    pub component: Vec<usize>,
    /// `B_i' = B_i \ (B_1 ∪ ... ∪ B_{i-1})`.
    pub residuals: Vec<Vec<usize>>,
}

impl DisjointednessQuery {
    /// The query for the component of `G - ∪ blocks` containing `v`.
    pub fn for_vertex(g: &Graph, blocks: Vec<BlockUnion>, v: usize) -> Self {
        let removed = union_mask(g.n(), &blocks);
        assert!(!removed.contains(v), "vertex {v} lies in a block");
        let mut rest = bits::full_mask(g.n());
        rest.difference_with(&removed);
        let component = bits::to_vec(&bits::component_of(g, &rest, v));
        Self::with_component(blocks, component)
    }

    /// One query per component of `G - ∪ blocks`.
    pub fn all_for(g: &Graph, blocks: &[BlockUnion]) -> Vec<Self> {
        let removed = union_mask(g.n(), blocks);
        let mut rest = bits::full_mask(g.n());
        rest.difference_with(&removed);
        bits::components_in(g, &rest)
            .into_iter()
            .map(|c| Self::with_component(blocks.to_vec(), c))
            .collect()
    }

    /// Trusts the caller that `component` is a component of `G - ∪ blocks`.
    pub fn with_component(blocks: Vec<BlockUnion>, component: Vec<usize>) -> Self {
        let mut seen: Vec<usize> = Vec::new();
        let mut residuals = Vec::with_capacity(blocks.len());
        for b in &blocks {
            let r: Vec<usize> = b
                .vertices
                .iter()
                .copied()
                .filter(|v| seen.binary_search(v).is_err())
                .collect();
            seen.extend_from_slice(&b.vertices);
            seen.sort_unstable();
            seen.dedup();
            residuals.push(r);
        }
        DisjointednessQuery {
            blocks,
            component,
            residuals,
        }
    }

    pub fn c(&self) -> usize {
        self.blocks.len()
    }

    pub fn component_mask(&self, n: usize) -> Mask {
        bits::mask_of(n, &self.component)
    }

    /// `N(B_i')` for each `i`, as masks over `V(G)`.
    pub fn residual_neighbourhoods(&self, g: &Graph) -> Vec<Mask> {
        self.residuals
            .iter()
            .map(|r| bits::neighborhood(g, &bits::mask_of(g.n(), r)))
            .collect()
    }

    /// `N(B_i') ∩ X` for each `i`.
    pub fn terminals(&self, g: &Graph) -> Vec<Mask> {
        let x = self.component_mask(g.n());
        self.residual_neighbourhoods(g)
            .into_iter()
            .map(|mut m| {
                m.intersect_with(&x);
                m
            })
            .collect()
    }
}

fn union_mask(n: usize, blocks: &[BlockUnion]) -> Mask {
    let mut m = Mask::with_capacity(n);
    for b in blocks {
        for &v in &b.vertices {
            m.insert(v);
        }
    }
    m
}

/// A set `Q ⊆ X` and, for each component `Y` of `X - Q`, an index `i`
/// (0-based) with `Y ∩ N(B_i') = ∅`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QWitness {
    pub q: Vec<usize>,
    pub assignment: Vec<(Vec<usize>, usize)>,
}

/// Assigns every component of `X - Q` to the lowest index whose residual
/// neighbourhood it avoids. Returns `None` if some component has no such index.
pub fn assign_components(g: &Graph, query: &DisjointednessQuery, q: &[usize]) -> Option<QWitness> {
    let nbhd = query.residual_neighbourhoods(g);
    let mut rest = query.component_mask(g.n());
    let mut q_sorted: Vec<usize> = q.iter().copied().filter(|&v| rest.contains(v)).collect();
    q_sorted.sort_unstable();
    q_sorted.dedup();
    for &v in &q_sorted {
        rest.set(v, false);
    }
    let mut assignment = Vec::new();
    for comp in bits::components_in(g, &rest) {
        let i = nbhd
            .iter()
            .position(|nb| comp.iter().all(|&v| !nb.contains(v)))?;
        assignment.push((comp, i));
    }
    Some(QWitness {
        q: q_sorted,
        assignment,
    })
}

/// Outcome of re-checking a witness from scratch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    pub pass: bool,
    pub failures: Vec<String>,
}

/// Recomputes the components of `X - Q` and checks every claim of `w`,
/// plus `|Q| <= d` when a bound is given.
pub fn verify_witness(
    g: &Graph,
    query: &DisjointednessQuery,
    w: &QWitness,
    d: Option<usize>,
) -> WitnessReport {
    let mut failures = Vec::new();
    let x = query.component_mask(g.n());
    if let Some(v) = w.q.iter().find(|&&v| !x.contains(v)) {
        failures.push(format!("Q holds vertex {v} outside X"));
    }
    if let Some(d) = d {
        if w.q.len() > d {
            failures.push(format!("|Q| = {} exceeds {d}", w.q.len()));
        }
    }
    let nbhd = query.residual_neighbourhoods(g);
    let mut rest = x.clone();
    for &v in &w.q {
        rest.set(v, false);
    }
    let comps = bits::components_in(g, &rest);
    if comps.len() != w.assignment.len() {
        failures.push(format!(
            "{} components of X - Q but {} assigned",
            comps.len(),
            w.assignment.len()
        ));
    }
    for comp in &comps {
        match w.assignment.iter().find(|(c, _)| c.first() == comp.first()) {
            None => failures.push(format!("component containing {} is unassigned", comp[0])),
            Some((c, i)) => {
                if c != comp {
                    failures.push(format!(
                        "assigned set at {} is not a component of X - Q",
                        comp[0]
                    ));
                } else if *i >= nbhd.len() {
                    failures.push(format!(
                        "component at {} assigned to missing index {i}",
                        comp[0]
                    ));
                } else if let Some(v) = comp.iter().find(|&&v| nbhd[*i].contains(v)) {
                    failures.push(format!("component at {} meets N(B'_{i}) at {v}", comp[0]));
                }
            }
        }
    }
    WitnessReport {
        pass: failures.is_empty(),
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn residuals_drop_earlier_vertices() {
        let q = DisjointednessQuery::with_component(
            vec![
                BlockUnion::from_vertices(vec![0, 1]),
                BlockUnion::from_vertices(vec![1, 2]),
            ],
            vec![3, 4],
        );
        assert_eq!(q.residuals, vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn path_between_two_blocks() {
        // P7 with blocks {0} and {6}; X = 1..=5. Cutting vertex 3 separates the ends.
        let g = path(7);
        let blocks = vec![
            BlockUnion::from_vertices(vec![0]),
            BlockUnion::from_vertices(vec![6]),
        ];
        let q = DisjointednessQuery::for_vertex(&g, blocks, 3);
        assert_eq!(q.component, vec![1, 2, 3, 4, 5]);
        assert!(assign_components(&g, &q, &[]).is_none());
        let w = assign_components(&g, &q, &[3]).unwrap();
        assert_eq!(w.assignment, vec![(vec![1, 2], 1), (vec![4, 5], 0)]);
        assert!(verify_witness(&g, &q, &w, Some(1)).pass);
        assert!(!verify_witness(&g, &q, &w, Some(0)).pass);
        let bad = QWitness {
            q: vec![3],
            assignment: vec![(vec![1, 2], 0), (vec![4, 5], 0)],
        };
        assert!(!verify_witness(&g, &q, &bad, None).pass);
    }
}
