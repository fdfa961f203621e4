//! Subgraph and induced-subgraph pattern search by backtracking.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default cap on pattern size.
pub const DEFAULT_PATTERN_BUDGET: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternMode {
    Subgraph,
    Induced,
}

/// Searches `g` for a copy of `pattern`. Returns an embedding `e` with
/// `e[p]` the image of pattern vertex `p`, or `None` if no copy exists.
pub fn contains_pattern(
    g: &Graph,
    pattern: &Graph,
    mode: PatternMode,
    budget: usize,
) -> Result<Option<Vec<usize>>> {
    contains_pattern_within(g, pattern, mode, budget, None)
}

/// As [`contains_pattern`], restricted to vertices with `allowed[v]` set.
pub fn contains_pattern_within(
    g: &Graph,
    pattern: &Graph,
    mode: PatternMode,
    budget: usize,
    allowed: Option<&[bool]>,
) -> Result<Option<Vec<usize>>> {
    if pattern.n() > budget {
        return Err(Error::PatternTooLarge(budget));
    }
    if pattern.n() == 0 {
        return Ok(Some(Vec::new()));
    }
    let order = search_order(pattern);
    let mut search = Search {
        g,
        h: pattern,
        induced: mode == PatternMode::Induced,
        allowed,
        order: &order,
        image: vec![usize::MAX; pattern.n()],
        used: vec![false; g.n()],
    };
    Ok(search.extend(0).then(|| search.image.clone()))
}

fn search_order(h: &Graph) -> Vec<usize> {
    let n = h.n();
    let mut placed = vec![false; n];
    let mut weight = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = (0..n)
            .filter(|&p| !placed[p])
            .max_by_key(|&p| (weight[p], h.degree(p), std::cmp::Reverse(p)))
            .expect("some vertex remains");
        placed[next] = true;
        order.push(next);
        for &q in h.neighbors(next) {
            weight[q] += 1;
        }
    }
    order
}

struct Search<'a> {
    g: &'a Graph,
    h: &'a Graph,
    induced: bool,
    allowed: Option<&'a [bool]>,
    order: &'a [usize],
    image: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let p = self.order[depth];
        let anchor = self
            .h
            .neighbors(p)
            .iter()
            .map(|&q| self.image[q])
            .filter(|&v| v != usize::MAX)
            .min_by_key(|&v| self.g.degree(v));
        let candidates: Vec<usize> = match anchor {
            Some(a) => self.g.neighbors(a).to_vec(),
            None => (0..self.g.n()).collect(),
        };
        for v in candidates {
            if self.fits(p, v) {
                self.image[p] = v;
                self.used[v] = true;
                if self.extend(depth + 1) {
                    return true;
                }
                self.used[v] = false;
                self.image[p] = usize::MAX;
            }
        }
        false
    }

    fn fits(&self, p: usize, v: usize) -> bool {
        if self.used[v] || self.g.degree(v) < self.h.degree(p) {
            return false;
        }
        if let Some(allowed) = self.allowed {
            if !allowed[v] {
                return false;
            }
        }
        for q in 0..self.h.n() {
            let w = self.image[q];
            if w == usize::MAX {
                continue;
            }
            let want = self.h.has_edge(p, q);
            let have = self.g.has_edge(v, w);
            if want && !have {
                return false;
            }
            if self.induced && !want && have {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{generate, FamilySpec};

    fn gen(s: &str) -> Graph {
        generate(s.parse::<FamilySpec>().unwrap()).unwrap()
    }

    #[test]
    fn finds_and_rejects() {
        let c5 = gen("cycle 5");
        assert!(
            contains_pattern(&c5, &gen("path 5"), PatternMode::Subgraph, 12)
                .unwrap()
                .is_some()
        );
        assert!(
            contains_pattern(&c5, &gen("cycle 3"), PatternMode::Subgraph, 12)
                .unwrap()
                .is_none()
        );
        let k4 = gen("complete 4");
        assert!(
            contains_pattern(&k4, &gen("path 3"), PatternMode::Subgraph, 12)
                .unwrap()
                .is_some()
        );
        assert!(
            contains_pattern(&k4, &gen("path 3"), PatternMode::Induced, 12)
                .unwrap()
                .is_none()
        );
        let e = contains_pattern(&gen("grid 3 3"), &gen("cycle 4"), PatternMode::Induced, 12)
            .unwrap()
            .unwrap();
        assert_eq!(e.len(), 4);
    }

    #[test]
    fn budget_is_enforced() {
        let r = contains_pattern(&gen("path 20"), &gen("path 13"), PatternMode::Subgraph, 12);
        assert!(matches!(r, Err(Error::PatternTooLarge(12))));
    }
}
