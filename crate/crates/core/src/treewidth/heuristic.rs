use fixedbitset::FixedBitSet;

use super::decomposition::{from_elimination_order, TreeDecomposition};
use crate::graph::Graph;

/// Min-fill elimination order; ties go to the lowest vertex id.
pub fn min_fill_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut adj: Vec<FixedBitSet> = (0..n)
        .map(|v| crate::bits::mask_of(n, g.neighbors(v)))
        .collect();
    let mut alive = crate::bits::full_mask(n);
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best = (usize::MAX, usize::MAX);
        for v in alive.ones() {
            let nb: Vec<usize> = adj[v].ones().collect();
            let mut fill = 0;
            for (i, &x) in nb.iter().enumerate() {
                fill += nb[i + 1..].iter().filter(|&&y| !adj[x].contains(y)).count();
                if fill >= best.0 {
                    break;
                }
            }
            if fill < best.0 {
                best = (fill, v);
                if fill == 0 {
                    break;
                }
            }
        }
        let v = best.1;
        let nb: Vec<usize> = adj[v].ones().collect();
        for (i, &x) in nb.iter().enumerate() {
            for &y in &nb[i + 1..] {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
        for &x in &nb {
            adj[x].set(v, false);
        }
        alive.set(v, false);
        order.push(v);
    }
    order
}

/// Decomposition from the min-fill elimination order.
pub fn heuristic_td(g: &Graph) -> TreeDecomposition {
    from_elimination_order(g, &min_fill_order(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{generate, FamilySpec};

    #[test]
    fn heuristic_is_valid_and_exact_on_trees_and_cycles() {
        for (s, w) in [
            ("path 9", 1),
            ("star 5", 1),
            ("cycle 8", 2),
            ("complete 5", 4),
        ] {
            let g = generate(s.parse::<FamilySpec>().unwrap()).unwrap();
            let td = heuristic_td(&g);
            td.validate(&g).unwrap();
            assert_eq!(td.width(), w, "{s}");
        }
        let g = generate(FamilySpec::Grid(6, 6)).unwrap();
        let td = heuristic_td(&g);
        td.validate(&g).unwrap();
        assert!(td.width() >= 6);
    }

    #[test]
    fn disconnected_graphs_give_one_tree() {
        let g = Graph::from_edges(6, &[(0, 1), (2, 3), (4, 5)]).unwrap();
        let td = heuristic_td(&g);
        td.validate(&g).unwrap();
        assert_eq!(td.width(), 1);
    }
}
