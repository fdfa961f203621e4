use super::{
    assign_components, BlockUnion, Covering, DisjointednessQuery, OracleReport, QOracle, QWitness,
};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Extends an oracle for single covering blocks to unions of blocks.
///
/// For blocks `T_1..T_c`, every choice `y` of one constituent per `T_i` is
/// queried on the component `X_y ⊇ X` of `G - (B_{y_1} ∪ ... ∪ B_{y_c})`, and
/// `Q` is the union of the answers restricted to `X`. This costs
/// `|T_1| ⋯ |T_c|` base queries and gives `|Q| <= d t^c`.
pub struct LiftedOracle<O> {
    base: O,
    covering: Covering,
}

pub fn lift_oracle<O: QOracle>(base: O, covering: Covering) -> LiftedOracle<O> {
    LiftedOracle { base, covering }
}

impl<O: QOracle> LiftedOracle<O> {
    pub fn base(&self) -> &O {
        &self.base
    }
}

impl<O: QOracle> QOracle for LiftedOracle<O> {
    fn graph(&self) -> &Graph {
        self.base.graph()
    }

    fn c(&self) -> usize {
        self.base.c()
    }

    fn bound(&self, t: usize) -> Option<usize> {
        let d = self.base.bound(1)?;
        Some(d.saturating_mul(t.saturating_pow(self.c() as u32)))
    }

    fn query(&self, q: &DisjointednessQuery) -> Result<QWitness> {
        let g = self.base.graph();
        let c = q.c();
        let member_lists: Vec<&[usize]> = q.blocks.iter().map(|b| b.members.as_slice()).collect();
        for (b, members) in q.blocks.iter().zip(&member_lists) {
            if members.is_empty() && !b.vertices.is_empty() {
                return Err(Error::UnsupportedBlock(
                    "lifted queries need blocks given by member indices".into(),
                ));
            }
        }
        let x = q.component.clone();
        let mut hit = crate::bits::Mask::with_capacity(g.n());
        let x_mask = q.component_mask(g.n());
        if c > 0 && member_lists.iter().all(|m| !m.is_empty()) {
            let mut choice = vec![0usize; c];
            loop {
                let blocks: Vec<BlockUnion> = (0..c)
                    .map(|i| self.covering.union_of(&[member_lists[i][choice[i]]]))
                    .collect();
                let sub = DisjointednessQuery::for_vertex(g, blocks, x[0]);
                let w = self.base.query(&sub)?;
                for v in w.q {
                    if x_mask.contains(v) {
                        hit.insert(v);
                    }
                }
                // Advance the mixed-radix counter.
                let mut i = 0;
                while i < c {
                    choice[i] += 1;
                    if choice[i] < member_lists[i].len() {
                        break;
                    }
                    choice[i] = 0;
                    i += 1;
                }
                if i == c {
                    break;
                }
            }
        }
        let q_set: Vec<usize> = hit.ones().collect();
        assign_components(g, q, &q_set).ok_or_else(|| {
            Error::OracleViolation(format!(
                "lifted answer of size {} leaves a component unassigned",
                q_set.len()
            ))
        })
    }

    fn name(&self) -> String {
        format!("lifted({})", self.base.name())
    }

    fn report(&self) -> OracleReport {
        self.base.report()
    }
}
