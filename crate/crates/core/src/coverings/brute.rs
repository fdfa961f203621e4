use super::{assign_components, Covering, DisjointednessQuery, QWitness};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest component for which [`brute_min_q`] enumerates subsets.
pub const DEFAULT_BRUTE_Q_LIMIT: usize = 16;

/// A minimum-size `Q` for the query, by enumerating subsets of `X` in order of size.
pub fn brute_min_q(g: &Graph, q: &DisjointednessQuery, limit: usize) -> Result<QWitness> {
    let x = &q.component;
    if x.len() > limit {
        return Err(Error::TooLarge(format!(
            "component of size {} exceeds the brute-force limit {limit}",
            x.len()
        )));
    }
    for size in 0..=x.len() {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let chosen: Vec<usize> = idx.iter().map(|&i| x[i]).collect();
            if let Some(w) = assign_components(g, q, &chosen) {
                return Ok(w);
            }
            if !next_combination(&mut idx, x.len()) {
                break;
            }
        }
    }
    unreachable!("Q = X always works")
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Result of an exhaustive `(c, d)`-disjointedness check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CdReport {
    pub holds: bool,
    /// Largest minimum `|Q|` over all queries.
    pub max_min_q: usize,
    /// Block indices, component and minimum `|Q|` of the first violation.
    pub counterexample: Option<(Vec<usize>, Vec<usize>, usize)>,
}

/// Checks every ordered `c`-tuple of blocks and every component of the
/// remaining graph for a `Q` of size at most `d`.
pub fn check_cd_disjointed(
    g: &Graph,
    cover: &Covering,
    c: usize,
    d: usize,
    max_tuples: usize,
) -> Result<CdReport> {
    let b = cover.len();
    let tuples = (b as u128).checked_pow(c as u32).unwrap_or(u128::MAX);
    if tuples > max_tuples as u128 {
        return Err(Error::TooLarge(format!(
            "{b}^{c} block tuples exceeds {max_tuples}"
        )));
    }
    let mut report = CdReport {
        holds: true,
        max_min_q: 0,
        counterexample: None,
    };
    let mut tuple = vec![0usize; c];
    loop {
        let blocks: Vec<_> = tuple.iter().map(|&i| cover.union_of(&[i])).collect();
        for query in DisjointednessQuery::all_for(g, &blocks) {
            let w = brute_min_q(g, &query, DEFAULT_BRUTE_Q_LIMIT)?;
            report.max_min_q = report.max_min_q.max(w.q.len());
            if w.q.len() > d && report.counterexample.is_none() {
                report.holds = false;
                report.counterexample = Some((tuple.clone(), query.component.clone(), w.q.len()));
            }
        }
        let mut i = 0;
        while i < c {
            tuple[i] += 1;
            if tuple[i] < b {
                break;
            }
            tuple[i] = 0;
            i += 1;
        }
        if i == c {
            break;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coverings::BlockUnion;

    #[test]
    fn minimum_q_on_a_cycle() {
        // C8 with blocks {0} and {4}: two arcs, each needs one cut vertex.
        let g =
            Graph::from_edges(8, &(0..8).map(|i| (i, (i + 1) % 8)).collect::<Vec<_>>()).unwrap();
        let blocks = vec![
            BlockUnion::from_vertices(vec![0]),
            BlockUnion::from_vertices(vec![4]),
        ];
        let qs = DisjointednessQuery::all_for(&g, &blocks);
        assert_eq!(qs.len(), 2);
        for q in &qs {
            assert_eq!(brute_min_q(&g, q, 16).unwrap().q.len(), 1);
        }
    }

    #[test]
    fn singletons_of_a_tree_are_one_one_disjointed() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)]).unwrap();
        let cover = Covering::singletons(6);
        let r = check_cd_disjointed(&g, &cover, 1, 1, 1000).unwrap();
        assert!(r.holds);
        assert_eq!(r.max_min_q, 1);
        let r = check_cd_disjointed(&g, &cover, 1, 0, 1000).unwrap();
        assert!(!r.holds);
    }
}
