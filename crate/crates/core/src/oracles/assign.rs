use crate::graph::Graph;

/// Result of [`assign_trick`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    /// Graph on `A` (indexed by position in `A`): the edges of `G[A]` plus one
    /// edge per assigned member.
    pub contracted: Graph,
    /// Member index and the pair of `A`-vertices it was assigned to.
    pub assigned: Vec<(usize, (usize, usize))>,
    pub unassigned: Vec<usize>,
}

/// Assigns disjoint connected sets to pairs `{x, y} ⊆ A` of their neighbours,
/// at most one set per pair. Members are taken by lowest vertex and pairs in
/// lexicographic order; `pair_ok` restricts which pairs may be used.
pub fn assign_trick(
    g: &Graph,
    a: &[usize],
    packing: &[Vec<usize>],
    pair_ok: impl Fn(usize, usize) -> bool,
) -> Assignment {
    let mut a_sorted = a.to_vec();
    a_sorted.sort_unstable();
    a_sorted.dedup();
    let idx = |v: usize| a_sorted.binary_search(&v).ok();
    let mut order: Vec<usize> = (0..packing.len()).collect();
    order.sort_by_key(|&i| (packing[i].iter().min().copied().unwrap_or(usize::MAX), i));
    let mut used = std::collections::BTreeSet::new();
    let mut assigned = Vec::new();
    let mut unassigned = Vec::new();
    for i in order {
        let mut nb: Vec<usize> = packing[i]
            .iter()
            .flat_map(|&v| g.neighbors(v).iter().copied())
            .filter(|&x| idx(x).is_some())
            .collect();
        nb.sort_unstable();
        nb.dedup();
        let pair = nb
            .iter()
            .enumerate()
            .flat_map(|(p, &x)| nb[p + 1..].iter().map(move |&y| (x, y)))
            .find(|&(x, y)| pair_ok(x, y) && !used.contains(&(x, y)));
        match pair {
            Some(p) => {
                used.insert(p);
                assigned.push((i, p));
            }
            None => unassigned.push(i),
        }
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (p, &x) in a_sorted.iter().enumerate() {
        for &y in g.neighbors(x) {
            if let Some(q) = idx(y) {
                if p < q {
                    edges.push((p, q));
                }
            }
        }
    }
    for &(_, (x, y)) in &assigned {
        edges.push((idx(x).expect("in A"), idx(y).expect("in A")));
    }
    let contracted = Graph::from_edges(a_sorted.len(), &edges).expect("indices are in range");
    Assignment {
        contracted,
        assigned,
        unassigned,
    }
}
