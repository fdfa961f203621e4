use std::sync::atomic::{AtomicUsize, Ordering};

use crate::coverings::{assign_components, DisjointednessQuery, OracleReport, QOracle, QWitness};
use crate::error::{Error, Result};
use crate::flow::min_vertex_separator;
use crate::graph::Graph;

/// Oracle for `c = 2`: `Q` is a minimum vertex set of `X` separating
/// `N(B_1') ∩ X` from `N(B_2') ∩ X`, found by max flow.
pub struct MengerOracle {
    g: Graph,
    max_q: AtomicUsize,
    queries: AtomicUsize,
}

pub fn k2t_menger_oracle(g: &Graph) -> MengerOracle {
    MengerOracle {
        g: g.clone(),
        max_q: AtomicUsize::new(0),
        queries: AtomicUsize::new(0),
    }
}

impl QOracle for MengerOracle {
    fn graph(&self) -> &Graph {
        &self.g
    }

    fn c(&self) -> usize {
        2
    }

    fn bound(&self, _t: usize) -> Option<usize> {
        None
    }

    fn query(&self, q: &DisjointednessQuery) -> Result<QWitness> {
        if q.c() != 2 {
            return Err(Error::UnsupportedBlock(format!(
                "expected 2 blocks, got {}",
                q.c()
            )));
        }
        let x = q.component_mask(self.g.n());
        let t = q.terminals(&self.g);
        let sep = min_vertex_separator(&self.g, &x, &t[0], &t[1]);
        let w = assign_components(&self.g, q, &sep).ok_or_else(|| {
            Error::Internal("separator leaves a path between the neighbourhoods".into())
        })?;
        self.max_q.fetch_max(w.q.len(), Ordering::Relaxed);
        self.queries.fetch_add(1, Ordering::Relaxed);
        Ok(w)
    }

    fn name(&self) -> String {
        "k2t-menger".into()
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
    use crate::coverings::{brute_min_q, verify_witness, BlockUnion};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn singletons(vs: &[usize]) -> Vec<BlockUnion> {
        vs.iter()
            .map(|&v| BlockUnion::from_vertices(vec![v]))
            .collect()
    }

    #[test]
    fn path_needs_one_vertex() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        let q = DisjointednessQuery::for_vertex(&g, singletons(&[0, 5]), 2);
        assert_eq!(k2t_menger_oracle(&g).query(&q).unwrap().q.len(), 1);
    }

    #[test]
    fn common_neighbours_are_cut() {
        // K_{2,3}: every middle vertex sees both blocks.
        let g = Graph::from_edges(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        let o = k2t_menger_oracle(&g);
        let qs = DisjointednessQuery::all_for(&g, &singletons(&[0, 1]));
        assert_eq!(qs.len(), 3);
        for q in qs {
            assert_eq!(o.query(&q).unwrap().q, q.component);
        }
    }

    #[test]
    fn minimum_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..150 {
            let n = rng.gen_range(3..=8);
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(0.4))
                .collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            let o = k2t_menger_oracle(&g);
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            for q in DisjointednessQuery::all_for(&g, &singletons(&[a, b])) {
                let w = o.query(&q).unwrap();
                assert!(verify_witness(&g, &q, &w, None).pass);
                assert_eq!(w.q.len(), brute_min_q(&g, &q, 16).unwrap().q.len());
            }
        }
    }
}
