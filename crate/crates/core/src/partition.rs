//! c-tree-partitions with their quotient graph and certificate.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::coverings::Covering;
use crate::error::{Error, Result};
use crate::graph::{content_lines, parse_usizes, Graph};
use crate::treewidth::TreeDecomposition;

/// A partition of `V(G)` into parts indexed by the vertices of a quotient
/// graph `H`, with a tree decomposition of `H` certifying `tw(H) <= c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CTreePartition {
    pub c: usize,
    /// Part of each quotient node, sorted.
    pub parts: Vec<Vec<usize>>,
    /// Quotient node holding each vertex of `G`.
    pub part_of: Vec<usize>,
    pub quotient: Graph,
    pub certificate: TreeDecomposition,
    /// Run diagnostics, e.g. the proven width bound.
    pub meta: BTreeMap<String, String>,
}

impl CTreePartition {
    /// Assembles a partition from its parts. `part_of` is derived; vertices
    /// missing from every part get `usize::MAX` and fail validation.
    pub fn new(
        n: usize,
        c: usize,
        parts: Vec<Vec<usize>>,
        quotient: Graph,
        certificate: TreeDecomposition,
    ) -> Self {
        let mut part_of = vec![usize::MAX; n];
        let parts: Vec<Vec<usize>> = parts
            .into_iter()
            .map(|mut p| {
                p.sort_unstable();
                p.dedup();
                p
            })
            .collect();
        for (x, p) in parts.iter().enumerate() {
            for &v in p {
                if v < n {
                    part_of[v] = x;
                }
            }
        }
        CTreePartition {
            c,
            parts,
            part_of,
            quotient,
            certificate,
            meta: BTreeMap::new(),
        }
    }

    /// Builds the partition whose quotient has exactly the edges forced by `g`.
    /// The certificate must decompose that quotient.
    pub fn from_parts(
        g: &Graph,
        c: usize,
        parts: Vec<Vec<usize>>,
        certificate: TreeDecomposition,
    ) -> Self {
        let quotient = quotient_of(g, &parts);
        CTreePartition::new(g.n(), c, parts, quotient, certificate)
    }

    /// One part holding every vertex (none for the empty graph).
    pub fn trivial(g: &Graph, c: usize) -> Self {
        if g.n() == 0 {
            return CTreePartition::new(
                0,
                c,
                Vec::new(),
                Graph::new(0),
                TreeDecomposition::default(),
            );
        }
        CTreePartition::new(
            g.n(),
            c,
            vec![(0..g.n()).collect()],
            Graph::new(1),
            TreeDecomposition::trivial(1),
        )
    }

    /// Largest part size.
    pub fn width(&self) -> usize {
        self.parts.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// The parts as a covering of `V(G)`; block `i` is part `i`.
    pub fn as_covering(&self) -> Result<Covering> {
        Covering::new(self.part_of.len(), self.parts.clone())
    }

    pub fn set_meta(&mut self, key: &str, value: impl ToString) {
        self.meta.insert(key.to_string(), value.to_string());
    }

    /// Sectioned text form: `[parts]`, `[quotient]`, `[certificate]`, `[meta]`.
    pub fn to_text(&self) -> String {
        let mut s = String::from("[parts]\n");
        for (x, p) in self.parts.iter().enumerate() {
            let _ = write!(s, "{x}:");
            for v in p {
                let _ = write!(s, " {v}");
            }
            s.push('\n');
        }
        s.push_str("[quotient]\n");
        s.push_str(&self.quotient.to_text());
        s.push_str("[certificate]\n");
        s.push_str(&self.certificate.to_text());
        s.push_str("[meta]\n");
        let _ = writeln!(s, "n = {}", self.part_of.len());
        let _ = writeln!(s, "c = {}", self.c);
        let _ = writeln!(s, "width = {}", self.width());
        for (k, v) in &self.meta {
            if !matches!(k.as_str(), "n" | "c" | "width") {
                let _ = writeln!(s, "{k} = {v}");
            }
        }
        s
    }

    pub fn parse(text: &str) -> Result<CTreePartition> {
        let mut sections: BTreeMap<&str, String> = BTreeMap::new();
        let mut current: Option<&str> = None;
        for line in text.lines() {
            let t = line.trim();
            if t.starts_with('[') && t.ends_with(']') {
                current = Some(match t {
                    "[parts]" => "parts",
                    "[quotient]" => "quotient",
                    "[certificate]" => "certificate",
                    "[meta]" => "meta",
                    _ => {
                        return Err(Error::Parse {
                            line: 0,
                            msg: format!("unknown section {t}"),
                        })
                    }
                });
                sections.entry(current.expect("just set")).or_default();
            } else if let Some(sec) = current {
                let body = sections.get_mut(sec).expect("section exists");
                body.push_str(line);
                body.push('\n');
            }
        }
        let get = |k: &str| {
            sections.get(k).ok_or(Error::Parse {
                line: 0,
                msg: format!("missing [{k}] section"),
            })
        };
        let mut meta = BTreeMap::new();
        for (_, line) in content_lines(get("meta")?) {
            if let Some((k, v)) = line.split_once('=') {
                meta.insert(k.trim().to_string(), v.trim().to_string());
            }
        }
        let num = |k: &str| -> Result<usize> {
            meta.get(k)
                .and_then(|v| v.parse().ok())
                .ok_or(Error::Parse {
                    line: 0,
                    msg: format!("meta lacks `{k}`"),
                })
        };
        let (n, c) = (num("n")?, num("c")?);
        let mut parts = Vec::new();
        for (ln, line) in content_lines(get("parts")?) {
            let (x, rest) = line.split_once(':').ok_or(Error::Parse {
                line: ln,
                msg: "part line must be `x: v ...`".into(),
            })?;
            let x = parse_usizes(ln, x)?;
            if x != [parts.len()] {
                return Err(Error::Parse {
                    line: ln,
                    msg: "parts must be listed in order".into(),
                });
            }
            parts.push(parse_usizes(ln, rest)?);
        }
        let quotient = Graph::parse(get("quotient")?)?;
        let certificate = TreeDecomposition::parse(get("certificate")?)?;
        let mut p = CTreePartition::new(n, c, parts, quotient, certificate);
        meta.retain(|k, _| !matches!(k.as_str(), "n" | "c" | "width"));
        p.meta = meta;
        Ok(p)
    }
}

/// The quotient graph with an edge between two parts iff `g` has an edge between them.
pub fn quotient_of(g: &Graph, parts: &[Vec<usize>]) -> Graph {
    let mut part_of = vec![usize::MAX; g.n()];
    for (x, p) in parts.iter().enumerate() {
        for &v in p {
            part_of[v] = x;
        }
    }
    let mut edges = BTreeSet::new();
    for (u, v) in g.edges() {
        let (a, b) = (part_of[u], part_of[v]);
        if a != b && a != usize::MAX && b != usize::MAX {
            edges.insert((a.min(b), a.max(b)));
        }
    }
    Graph::from_edges(parts.len(), &edges.into_iter().collect::<Vec<_>>())
        .expect("part indices are in range")
}

/// The 0-tree-partition into connected components; fails if a component has more than `d` vertices.
pub fn component_partition_c0(g: &Graph, d: usize) -> Result<CTreePartition> {
    let parts = g.components();
    if let Some(big) = parts.iter().find(|p| p.len() > d) {
        return Err(Error::ComponentTooLarge(big.clone()));
    }
    let k = parts.len();
    let certificate = if k == 0 {
        TreeDecomposition::default()
    } else {
        TreeDecomposition::new(
            (0..k).map(|x| vec![x]).collect(),
            (1..k).map(|x| (x - 1, x)).collect(),
        )
    };
    Ok(CTreePartition::new(
        g.n(),
        0,
        parts,
        Graph::new(k),
        certificate,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_give_a_zero_tree_partition() {
        let g = Graph::from_edges(5, &[(0, 1), (2, 3), (3, 4)]).unwrap();
        assert!(
            matches!(component_partition_c0(&g, 2), Err(Error::ComponentTooLarge(c)) if c == vec![2, 3, 4])
        );
        let p = component_partition_c0(&g, 3).unwrap();
        assert_eq!(p.parts, vec![vec![0, 1], vec![2, 3, 4]]);
        assert_eq!(p.width(), 3);
        assert_eq!(p.quotient.m(), 0);
        p.certificate.validate(&p.quotient).unwrap();
    }

    #[test]
    fn text_round_trip() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let mut p = CTreePartition::from_parts(
            &g,
            1,
            vec![vec![0, 1], vec![2, 3]],
            TreeDecomposition::trivial(2),
        );
        p.set_meta("bound", 12);
        let back = CTreePartition::parse(&p.to_text()).unwrap();
        assert_eq!(back, p);
    }
}
