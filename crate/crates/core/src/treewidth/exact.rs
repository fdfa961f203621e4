use std::collections::HashMap;

use super::decomposition::{from_elimination_order, TreeDecomposition};
use super::heuristic::min_fill_order;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default vertex limit for exact treewidth.
pub const DEFAULT_EXACT_BUDGET: usize = 20;

/// Exact treewidth with an optimal decomposition, by dynamic programming over
/// elimination prefixes. States whose width already reaches the min-fill
/// width are pruned.
pub fn exact_treewidth(g: &Graph, budget: usize) -> Result<(usize, TreeDecomposition)> {
    let n = g.n();
    if n > budget || n > 30 {
        return Err(Error::TooLarge(format!(
            "{n} vertices exceeds the exact treewidth budget of {}",
            budget.min(30)
        )));
    }
    if n == 0 {
        return Ok((0, TreeDecomposition::default()));
    }
    let upper_order = min_fill_order(g);
    let upper = from_elimination_order(g, &upper_order);
    let ub = upper.width();
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };

    // layers[i]: prefix set -> (width so far, last vertex eliminated)
    let mut layers: Vec<HashMap<u32, (u8, u8)>> = vec![HashMap::from([(0u32, (0u8, u8::MAX))])];
    for _ in 0..n {
        let mut next: HashMap<u32, (u8, u8)> = HashMap::new();
        for (&s, &(w, _)) in layers.last().expect("non-empty") {
            let mut rest = full & !s;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let q = later_neighbours(&adj, s, v) as u8;
                let nw = w.max(q);
                if (nw as usize) >= ub {
                    continue;
                }
                let t = s | (1 << v);
                let e = next.entry(t).or_insert((u8::MAX, u8::MAX));
                if nw < e.0 || (nw == e.0 && (v as u8) < e.1) {
                    *e = (nw, v as u8);
                }
            }
        }
        if next.is_empty() {
            return Ok((ub, upper));
        }
        layers.push(next);
    }
    let (width, _) = layers[n][&full];
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    for i in (1..=n).rev() {
        let (_, v) = layers[i][&s];
        order.push(v as usize);
        s &= !(1u32 << v);
    }
    order.reverse();
    let td = from_elimination_order(g, &order);
    debug_assert_eq!(td.width(), width as usize);
    Ok((width as usize, td))
}

/// Vertices outside `s ∪ {v}` reachable from `v` through `s`.
fn later_neighbours(adj: &[u32], s: u32, v: usize) -> u32 {
    let mut reach: u32 = 1 << v;
    let mut frontier = reach;
    let mut boundary: u32 = 0;
    while frontier != 0 {
        let mut nb = 0u32;
        let mut f = frontier;
        while f != 0 {
            let u = f.trailing_zeros() as usize;
            f &= f - 1;
            nb |= adj[u];
        }
        boundary |= nb & !s;
        frontier = nb & s & !reach;
        reach |= frontier;
    }
    (boundary & !(1u32 << v)).count_ones()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{generate, FamilySpec};

    fn tw(s: &str) -> usize {
        let g = generate(s.parse::<FamilySpec>().unwrap()).unwrap();
        let (w, td) = exact_treewidth(&g, 20).unwrap();
        td.validate(&g).unwrap();
        assert_eq!(td.width(), w);
        w
    }

    #[test]
    fn known_treewidths() {
        assert_eq!(tw("path 6"), 1);
        assert_eq!(tw("cycle 7"), 2);
        assert_eq!(tw("complete 6"), 5);
        assert_eq!(tw("grid 3 3"), 3);
        assert_eq!(tw("grid 4 4"), 4);
        assert_eq!(tw("complete_bipartite 3 5"), 3);
        assert_eq!(tw("star 6"), 1);
    }

    #[test]
    fn respects_budget() {
        let g = generate(FamilySpec::Path(25)).unwrap();
        assert!(matches!(exact_treewidth(&g, 20), Err(Error::TooLarge(_))));
    }
}
