use std::collections::VecDeque;

use super::{assign_components, DisjointednessQuery, QOracle, QWitness};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::CTreePartition;
use crate::treewidth::TreeDecomposition;

/// Answers queries whose blocks are parts of a c-tree-partition of width `ℓ`,
/// with `|Q| <= cℓ`, by reading separators off the certificate.
pub struct PartitionOracle {
    g: Graph,
    p: CTreePartition,
    td: TreeDecomposition,
    tree: Vec<Vec<usize>>,
    /// Certificate nodes whose bag holds each quotient node.
    holders: Vec<Vec<usize>>,
}

/// Builds the oracle; fails if the certificate does not decompose the quotient.
pub fn oracle_from_partition(g: &Graph, p: &CTreePartition) -> Result<PartitionOracle> {
    p.certificate.validate(&p.quotient)?;
    let td = p.certificate.contract_equal_adjacent();
    let tree = td.tree_adjacency();
    let mut holders = vec![Vec::new(); p.parts.len()];
    for (x, bag) in td.bags.iter().enumerate() {
        for &h in bag {
            holders[h].push(x);
        }
    }
    Ok(PartitionOracle {
        g: g.clone(),
        p: p.clone(),
        td,
        tree,
        holders,
    })
}

impl PartitionOracle {
    pub fn partition(&self) -> &CTreePartition {
        &self.p
    }

    fn part_of_block(&self, members: &[usize], vertices: &[usize]) -> Result<Option<usize>> {
        if vertices.is_empty() {
            return Ok(None);
        }
        let h = self.p.part_of[vertices[0]];
        if self.p.parts[h] != vertices || members.len() > 1 {
            return Err(Error::UnsupportedBlock(format!(
                "block starting at vertex {} is not a single part",
                vertices[0]
            )));
        }
        Ok(Some(h))
    }

    /// Quotient nodes forming the separator `Q'`.
    fn separator_nodes(&self, nodes: &[usize], x_nodes: &[bool]) -> Vec<usize> {
        let t = self.td.bags.len();
        let in_tree = |h: usize| {
            let mut m = vec![false; t];
            for &x in &self.holders[h] {
                m[x] = true;
            }
            m
        };
        let sets: Vec<Vec<bool>> = nodes.iter().map(|&h| in_tree(h)).collect();
        // Two blocks whose subtrees are disjoint: the bag of T_i closest to T_j separates them.
        for i in 0..nodes.len() {
            for j in 0..nodes.len() {
                if i == j || (0..t).any(|x| sets[i][x] && sets[j][x]) {
                    continue;
                }
                let z = self.closest(&sets[i], &sets[j]);
                return self.td.bags[z]
                    .iter()
                    .copied()
                    .filter(|&h| x_nodes[h])
                    .collect();
            }
        }
        let tx: Vec<bool> = (0..t)
            .map(|x| self.td.bags[x].iter().any(|&h| x_nodes[h]))
            .collect();
        if sets.iter().any(|s| (0..t).all(|x| !(s[x] && tx[x]))) {
            return Vec::new();
        }
        match (0..t).find(|&x| tx[x] && sets.iter().all(|s| s[x])) {
            Some(z) => self.td.bags[z]
                .iter()
                .copied()
                .filter(|&h| x_nodes[h])
                .collect(),
            None => Vec::new(),
        }
    }

    /// Node of `from` nearest to `to` in the tree; ties go to the lowest index.
    fn closest(&self, from: &[bool], to: &[bool]) -> usize {
        let t = self.td.bags.len();
        let mut dist = vec![usize::MAX; t];
        let mut queue: VecDeque<usize> = (0..t).filter(|&x| to[x]).collect();
        for &x in &queue {
            dist[x] = 0;
        }
        while let Some(x) = queue.pop_front() {
            for &y in &self.tree[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        (0..t)
            .filter(|&x| from[x])
            .min_by_key(|&x| (dist[x], x))
            .expect("subtree is non-empty")
    }
}

impl QOracle for PartitionOracle {
    fn graph(&self) -> &Graph {
        &self.g
    }

    fn c(&self) -> usize {
        self.p.c
    }

    fn bound(&self, _t: usize) -> Option<usize> {
        Some(self.p.c.max(1) * self.p.width())
    }

    fn max_arity(&self) -> Option<usize> {
        Some(1)
    }

    fn query(&self, q: &DisjointednessQuery) -> Result<QWitness> {
        if q.c() == 0 {
            // With no blocks the whole component must be removed.
            return Ok(QWitness {
                q: q.component.clone(),
                assignment: Vec::new(),
            });
        }
        let mut nodes = Vec::new();
        for (b, r) in q.blocks.iter().zip(&q.residuals) {
            let h = self.part_of_block(&b.members, &b.vertices)?;
            match h {
                Some(h) if !r.is_empty() => nodes.push(h),
                _ => {
                    // An empty residual is avoided by every component.
                    return assign_components(&self.g, q, &[])
                        .ok_or_else(|| Error::Internal("empty residual not avoided".into()));
                }
            }
        }
        if q.component.is_empty() {
            return Ok(QWitness::default());
        }
        // X' is the component of H - {x_1..x_c} holding the parts that meet X.
        let h = &self.p.quotient;
        let mut blocked = vec![false; h.n()];
        for &x in &nodes {
            blocked[x] = true;
        }
        let mut x_nodes = vec![false; h.n()];
        let start = self.p.part_of[q.component[0]];
        x_nodes[start] = true;
        let mut stack = vec![start];
        while let Some(a) = stack.pop() {
            for &b in h.neighbors(a) {
                if !blocked[b] && !x_nodes[b] {
                    x_nodes[b] = true;
                    stack.push(b);
                }
            }
        }
        let sep = if nodes.is_empty() {
            Vec::new()
        } else {
            self.separator_nodes(&nodes, &x_nodes)
        };
        let x_mask = q.component_mask(self.g.n());
        let q_set: Vec<usize> = sep
            .iter()
            .flat_map(|&z| self.p.parts[z].iter().copied())
            .filter(|&v| x_mask.contains(v))
            .collect();
        assign_components(&self.g, q, &q_set).ok_or_else(|| {
            Error::OracleViolation("partition oracle left a component unassigned".into())
        })
    }

    fn name(&self) -> String {
        format!("partition(c={}, width={})", self.p.c, self.p.width())
    }
}
