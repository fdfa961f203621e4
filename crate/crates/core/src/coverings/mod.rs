//! Coverings, disjointedness queries, witnesses and Q-oracles.

mod brute;
mod from_partition;
mod lift;
mod oracle;
mod query;

pub use brute::{brute_min_q, check_cd_disjointed, CdReport, DEFAULT_BRUTE_Q_LIMIT};
pub use from_partition::{oracle_from_partition, PartitionOracle};
pub use lift::{lift_oracle, LiftedOracle};
pub use oracle::{OracleReport, QOracle};
pub use query::{assign_components, verify_witness, DisjointednessQuery, QWitness, WitnessReport};

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{content_lines, parse_usizes};

/// A family of non-empty vertex sets whose union is `V(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Covering {
    n: usize,
    blocks: Vec<Vec<usize>>,
    containing: Vec<Vec<usize>>,
}

impl Covering {
    /// Validates that blocks are non-empty, in range and cover `0..n`.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut containing = vec![Vec::new(); n];
        let mut clean = Vec::with_capacity(blocks.len());
        for (i, mut b) in blocks.into_iter().enumerate() {
            b.sort_unstable();
            b.dedup();
            if b.is_empty() {
                return Err(Error::InvalidCovering(format!("block {i} is empty")));
            }
            for &v in &b {
                if v >= n {
                    return Err(Error::InvalidCovering(format!(
                        "block {i} holds unknown vertex {v}"
                    )));
                }
                containing[v].push(i);
            }
            clean.push(b);
        }
        if let Some(v) = containing.iter().position(Vec::is_empty) {
            return Err(Error::InvalidCovering(format!("vertex {v} is in no block")));
        }
        Ok(Covering {
            n,
            blocks: clean,
            containing,
        })
    }

    /// The partition into singletons.
    pub fn singletons(n: usize) -> Self {
        Covering::new(n, (0..n).map(|v| vec![v]).collect()).expect("singletons cover")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[i]
    }

    /// Largest block size.
    pub fn ell(&self) -> usize {
        self.blocks.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_partition(&self) -> bool {
        self.containing.iter().all(|c| c.len() == 1)
    }

    /// Indices of the blocks holding `v`, ascending.
    pub fn blocks_containing(&self, v: usize) -> &[usize] {
        &self.containing[v]
    }

    /// The union of the given blocks, keeping the member indices.
    pub fn union_of(&self, members: &[usize]) -> BlockUnion {
        let mut m = members.to_vec();
        m.sort_unstable();
        m.dedup();
        let mut vertices: Vec<usize> = m
            .iter()
            .flat_map(|&i| self.blocks[i].iter().copied())
            .collect();
        vertices.sort_unstable();
        vertices.dedup();
        BlockUnion {
            members: m,
            vertices,
        }
    }

    /// One block per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for b in &self.blocks {
            let line: Vec<String> = b.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(s, "{}", line.join(" "));
        }
        s
    }

    pub fn parse(n: usize, text: &str) -> Result<Covering> {
        let blocks = content_lines(text)
            .map(|(ln, l)| parse_usizes(ln, l))
            .collect::<Result<Vec<_>>>()?;
        Covering::new(n, blocks)
    }
}

/// A union of covering blocks, stored by member index with its vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BlockUnion {
    pub members: Vec<usize>,
    pub vertices: Vec<usize>,
}

impl BlockUnion {
    pub fn empty() -> Self {
        BlockUnion::default()
    }

    /// A union not tied to any covering, e.g. for ad hoc queries.
    pub fn from_vertices(vertices: Vec<usize>) -> Self {
        let mut vertices = vertices;
        vertices.sort_unstable();
        vertices.dedup();
        BlockUnion {
            members: Vec::new(),
            vertices,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn covering_validation() {
        assert!(Covering::new(3, vec![vec![0, 1], vec![1, 2]]).is_ok());
        assert!(Covering::new(3, vec![vec![0, 1]]).is_err());
        assert!(Covering::new(3, vec![vec![0, 1, 2], vec![]]).is_err());
        let c = Covering::new(4, vec![vec![0, 1], vec![2], vec![3, 1]]).unwrap();
        assert!(!c.is_partition());
        assert_eq!(c.ell(), 2);
        assert_eq!(c.blocks_containing(1), &[0, 2]);
        assert_eq!(c.union_of(&[2, 0]).vertices, vec![0, 1, 3]);
        assert_eq!(Covering::parse(4, &c.to_text()).unwrap(), c);
    }
}
