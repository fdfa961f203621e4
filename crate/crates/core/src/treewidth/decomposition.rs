use std::fmt::Write as _;

use fixedbitset::FixedBitSet;

use crate::bits::Mask;
use crate::error::{Error, Result};
use crate::graph::{content_lines, parse_usizes, Graph};

/// A tree decomposition: bags of vertices on the nodes of a tree.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TreeDecomposition {
    /// Bag of each tree node, sorted.
    pub bags: Vec<Vec<usize>>,
    /// Tree edges between node indices.
    pub edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn new(bags: Vec<Vec<usize>>, edges: Vec<(usize, usize)>) -> Self {
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        TreeDecomposition { bags, edges }
    }

    /// A single bag holding `0..n`.
    pub fn trivial(n: usize) -> Self {
        TreeDecomposition {
            bags: vec![(0..n).collect()],
            edges: Vec::new(),
        }
    }

    /// Largest bag size minus one (zero when there are no bags).
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(Vec::len)
            .max()
            .unwrap_or(1)
            .saturating_sub(1)
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    pub fn tree_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Checks that the node graph is a tree, every vertex and edge of `g` is
    /// covered, and every vertex's bags form a connected subtree.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let invalid = |condition: &str, witness: String| {
            Err(Error::InvalidDecomposition {
                condition: condition.into(),
                witness,
            })
        };
        let t = self.bags.len();
        if t == 0 {
            if g.n() == 0 {
                return Ok(());
            }
            return invalid("vertex coverage", "no bags".into());
        }
        if self.edges.len() != t - 1 {
            return invalid(
                "tree",
                format!("{} nodes but {} edges", t, self.edges.len()),
            );
        }
        for &(a, b) in &self.edges {
            if a >= t || b >= t || a == b {
                return invalid("tree", format!("bad edge ({a}, {b})"));
            }
        }
        let adj = self.tree_adjacency();
        let mut seen = vec![false; t];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        if let Some(x) = seen.iter().position(|s| !s) {
            return invalid("tree", format!("node {x} is disconnected"));
        }
        let mut holders: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
        for (x, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v >= g.n() {
                    return invalid(
                        "vertex coverage",
                        format!("bag {x} holds unknown vertex {v}"),
                    );
                }
                holders[v].push(x);
            }
        }
        for (v, h) in holders.iter().enumerate() {
            if h.is_empty() {
                return invalid("vertex coverage", format!("vertex {v} is in no bag"));
            }
        }
        let mut in_bag = vec![FixedBitSet::with_capacity(g.n()); t];
        for (x, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                in_bag[x].insert(v);
            }
        }
        for (u, v) in g.edges() {
            if !holders[u].iter().any(|&x| in_bag[x].contains(v)) {
                return invalid("edge coverage", format!("edge ({u}, {v}) is in no bag"));
            }
        }
        for (v, h) in holders.iter().enumerate() {
            // Nodes holding v must be connected through nodes holding v.
            let mut reached = vec![false; t];
            reached[h[0]] = true;
            let mut stack = vec![h[0]];
            let mut count = 1;
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if !reached[y] && in_bag[y].contains(v) {
                        reached[y] = true;
                        count += 1;
                        stack.push(y);
                    }
                }
            }
            if count != h.len() {
                return invalid(
                    "connectivity",
                    format!("bags holding vertex {v} are not connected"),
                );
            }
        }
        Ok(())
    }

    /// The same tree with every bag intersected with `mask`.
    pub fn restrict(&self, mask: &Mask) -> TreeDecomposition {
        TreeDecomposition {
            bags: self
                .bags
                .iter()
                .map(|b| b.iter().copied().filter(|&v| mask.contains(v)).collect())
                .collect(),
            edges: self.edges.clone(),
        }
    }

    /// Contracts tree edges whose two bags are equal.
    pub fn contract_equal_adjacent(&self) -> TreeDecomposition {
        let t = self.bags.len();
        let mut parent: Vec<usize> = (0..t).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nxt = p[y];
                p[y] = r;
                y = nxt;
            }
            r
        }
        for &(a, b) in &self.edges {
            if self.bags[a] == self.bags[b] {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut index = vec![usize::MAX; t];
        let mut bags = Vec::new();
        for x in 0..t {
            let r = find(&mut parent, x);
            if index[r] == usize::MAX {
                index[r] = bags.len();
                bags.push(self.bags[r].clone());
            }
            index[x] = index[r];
        }
        let edges = self
            .edges
            .iter()
            .map(|&(a, b)| (index[a], index[b]))
            .filter(|(a, b)| a != b)
            .collect();
        TreeDecomposition { bags, edges }
    }

    /// Text form: `t t`, then `x: v ...` per node, then one `a b` line per tree edge.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.bags.len(), self.bags.len());
        for (x, bag) in self.bags.iter().enumerate() {
            let _ = write!(s, "{x}:");
            for v in bag {
                let _ = write!(s, " {v}");
            }
            s.push('\n');
        }
        for (a, b) in &self.edges {
            let _ = writeln!(s, "{a} {b}");
        }
        s
    }

    pub fn parse(text: &str) -> Result<TreeDecomposition> {
        let mut lines = content_lines(text);
        let (ln, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            msg: "missing header".into(),
        })?;
        let h = parse_usizes(ln, header)?;
        let t = *h.first().ok_or(Error::Parse {
            line: ln,
            msg: "header must start with the node count".into(),
        })?;
        let mut bags = vec![Vec::new(); t];
        let mut edges = Vec::new();
        for (ln, line) in lines {
            if let Some((node, rest)) = line.split_once(':') {
                let x = parse_usizes(ln, node)?;
                if x.len() != 1 || x[0] >= t {
                    return Err(Error::Parse {
                        line: ln,
                        msg: "bad node index".into(),
                    });
                }
                bags[x[0]] = parse_usizes(ln, rest)?;
            } else {
                let e = parse_usizes(ln, line)?;
                if e.len() != 2 {
                    return Err(Error::Parse {
                        line: ln,
                        msg: "tree edge line must be `a b`".into(),
                    });
                }
                edges.push((e[0], e[1]));
            }
        }
        Ok(TreeDecomposition::new(bags, edges))
    }
}

/// Builds a decomposition from an elimination order by playing the elimination game.
/// Width equals the largest number of later neighbours at elimination time.
pub fn from_elimination_order(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.n();
    assert_eq!(order.len(), n, "order must list every vertex once");
    if n == 0 {
        return TreeDecomposition::default();
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut adj: Vec<FixedBitSet> = (0..n)
        .map(|v| crate::bits::mask_of(n, g.neighbors(v)))
        .collect();
    let mut bags = Vec::with_capacity(n);
    let mut parent = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        let later: Vec<usize> = adj[v].ones().filter(|&w| pos[w] > i).collect();
        for (a, &x) in later.iter().enumerate() {
            for &y in &later[a + 1..] {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
        if let Some(&p) = later.iter().min_by_key(|&&w| pos[w]) {
            parent[i] = pos[p];
        }
        let mut bag = later;
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut last_root: Option<usize> = None;
    for (i, &p) in parent.iter().enumerate() {
        if p != usize::MAX {
            edges.push((i, p));
        } else {
            if let Some(r) = last_root {
                edges.push((r, i));
            }
            last_root = Some(i);
        }
    }
    TreeDecomposition { bags, edges }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_catches_each_condition() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let good = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2]], vec![(0, 1)]);
        good.validate(&p3).unwrap();
        let missing_edge = TreeDecomposition::new(vec![vec![0, 1], vec![2]], vec![(0, 1)]);
        let err = missing_edge.validate(&p3).unwrap_err();
        assert!(
            matches!(err, Error::InvalidDecomposition { ref condition, .. } if condition == "edge coverage")
        );
        let broken =
            TreeDecomposition::new(vec![vec![0, 1], vec![2], vec![1, 2]], vec![(0, 1), (1, 2)]);
        let err = broken.validate(&p3).unwrap_err();
        assert!(
            matches!(err, Error::InvalidDecomposition { ref condition, .. } if condition == "connectivity")
        );
        let cyclic = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2]], vec![(0, 1), (1, 0)]);
        assert!(cyclic.validate(&p3).is_err());
    }

    #[test]
    fn text_round_trip() {
        let td = TreeDecomposition::new(
            vec![vec![0, 1], vec![1, 2], vec![1, 3]],
            vec![(0, 1), (1, 2)],
        );
        assert_eq!(TreeDecomposition::parse(&td.to_text()).unwrap(), td);
    }

    #[test]
    fn contraction_merges_equal_neighbours() {
        let td = TreeDecomposition::new(
            vec![vec![0, 1], vec![0, 1], vec![1, 2]],
            vec![(0, 1), (1, 2)],
        );
        let c = td.contract_equal_adjacent();
        assert_eq!(c.bags.len(), 2);
        assert_eq!(c.edges, vec![(0, 1)]);
    }
}
