use crate::coverings::{assign_components, DisjointednessQuery, QOracle, QWitness};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// The bounded-degree oracle (`c = 1`): `Q = N(B_1') ∩ X`.
///
/// For a covering with blocks of size at most `ℓ`, a union of `t` blocks has
/// at most `tℓ` vertices, so `|Q| <= Δ t ℓ`.
pub struct DegreeOracle {
    g: Graph,
    delta: usize,
    ell: usize,
}

/// Degree oracle for the singleton covering: `bound(t) = Δ t`.
pub fn degree_oracle(g: &Graph) -> DegreeOracle {
    DegreeOracle {
        g: g.clone(),
        delta: g.max_degree(),
        ell: 1,
    }
}

impl DegreeOracle {
    /// Adjusts the bound for coverings whose blocks have up to `ell` vertices.
    pub fn with_block_size(mut self, ell: usize) -> Self {
        self.ell = ell.max(1);
        self
    }
}

impl QOracle for DegreeOracle {
    fn graph(&self) -> &Graph {
        &self.g
    }

    fn c(&self) -> usize {
        1
    }

    fn bound(&self, t: usize) -> Option<usize> {
        Some(self.delta * t * self.ell)
    }

    fn query(&self, q: &DisjointednessQuery) -> Result<QWitness> {
        if q.c() != 1 {
            return Err(Error::UnsupportedBlock(format!(
                "degree oracle takes one block, got {}",
                q.c()
            )));
        }
        let q_set: Vec<usize> = q.terminals(&self.g)[0].ones().collect();
        assign_components(&self.g, q, &q_set).ok_or_else(|| {
            Error::Internal("neighbourhood cut leaves a component unassigned".into())
        })
    }

    fn name(&self) -> String {
        format!("degree(Δ={})", self.delta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coverings::{verify_witness, BlockUnion};
    use crate::families::{generate, FamilySpec};

    #[test]
    fn star_centre_block() {
        let g = generate(FamilySpec::Star(3)).unwrap();
        let oracle = degree_oracle(&g);
        for q in DisjointednessQuery::all_for(&g, &[BlockUnion::from_vertices(vec![3])]) {
            let w = oracle.query(&q).unwrap();
            assert_eq!(w.q, q.component);
            assert!(verify_witness(&g, &q, &w, oracle.bound(1)).pass);
        }
    }

    #[test]
    fn empty_block_needs_nothing() {
        let g = generate(FamilySpec::Path(5)).unwrap();
        let q = DisjointednessQuery::for_vertex(&g, vec![BlockUnion::empty()], 0);
        assert!(degree_oracle(&g).query(&q).unwrap().q.is_empty());
    }
}
