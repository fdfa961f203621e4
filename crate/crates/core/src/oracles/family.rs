use crate::bits::{self, Mask};
use crate::graph::Graph;

/// A family of connected subgraphs of a host graph, given by its vertex sets.
///
/// Membership is upward closed among connected sets: a connected superset of
/// a member is a member. Members live inside [`FamilyOracle::ground`].
pub trait FamilyOracle: Sync {
    fn graph(&self) -> &Graph;

    /// Vertices that members may use.
    fn ground(&self) -> &Mask;

    /// Whether the connected set `set` (inside the ground set) contains a member.
    fn contains_member(&self, set: &Mask) -> bool;

    /// An inclusion-minimal member inside `sub`, if any.
    fn find_member(&self, sub: &Mask) -> Option<Mask> {
        let g = self.graph();
        let mut within = sub.clone();
        within.intersect_with(self.ground());
        let comp = bits::components_in(g, &within)
            .into_iter()
            .map(|c| bits::mask_of(g.n(), &c))
            .find(|c| self.contains_member(c))?;
        Some(shrink(self, g, comp))
    }
}

/// Deletes vertices from a member while some component of the rest is still a member.
fn shrink<F: FamilyOracle + ?Sized>(fam: &F, g: &Graph, mut m: Mask) -> Mask {
    loop {
        let mut changed = false;
        for v in bits::to_vec(&m) {
            if !m.contains(v) {
                continue;
            }
            let mut rest = m.clone();
            rest.set(v, false);
            if let Some(c) = bits::components_in(g, &rest)
                .into_iter()
                .map(|c| bits::mask_of(g.n(), &c))
                .find(|c| fam.contains_member(c))
            {
                m = c;
                changed = true;
            }
        }
        if !changed {
            return m;
        }
    }
}

/// Connected subgraphs that contain both ends of one of the given edges.
pub struct EdgeSetFamily {
    g: Graph,
    ground: Mask,
    edges: Vec<(usize, usize)>,
}

impl EdgeSetFamily {
    pub fn new(g: &Graph, edges: Vec<(usize, usize)>) -> Self {
        let ground = bits::mask_of(
            g.n(),
            &edges.iter().flat_map(|&(u, v)| [u, v]).collect::<Vec<_>>(),
        );
        EdgeSetFamily {
            g: g.clone(),
            ground,
            edges,
        }
    }

    /// Every edge of `g`.
    pub fn all_edges(g: &Graph) -> Self {
        Self::new(g, g.edges())
    }
}

impl FamilyOracle for EdgeSetFamily {
    fn graph(&self) -> &Graph {
        &self.g
    }

    fn ground(&self) -> &Mask {
        &self.ground
    }

    fn contains_member(&self, set: &Mask) -> bool {
        self.edges
            .iter()
            .any(|&(u, v)| set.contains(u) && set.contains(v))
    }
}

/// Connected subgraphs of a vertex set `X` that meet every terminal set.
pub struct TerminalFamily<'a> {
    g: &'a Graph,
    ground: Mask,
    terminals: Vec<Mask>,
}

impl<'a> TerminalFamily<'a> {
    /// Terminal sets are intersected with `x`.
    pub fn new(g: &'a Graph, x: Mask, terminals: Vec<Mask>) -> Self {
        let terminals = terminals
            .into_iter()
            .map(|mut t| {
                t.intersect_with(&x);
                t
            })
            .collect();
        TerminalFamily {
            g,
            ground: x,
            terminals,
        }
    }

    pub fn terminals(&self) -> &[Mask] {
        &self.terminals
    }
}

impl FamilyOracle for TerminalFamily<'_> {
    fn graph(&self) -> &Graph {
        self.g
    }

    fn ground(&self) -> &Mask {
        &self.ground
    }

    fn contains_member(&self, set: &Mask) -> bool {
        !set.is_clear() && self.terminals.iter().all(|t| !t.is_disjoint(set))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_members() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let fam = EdgeSetFamily::all_edges(&g);
        let m = fam.find_member(&bits::full_mask(5)).unwrap();
        assert_eq!(m.count_ones(..), 2);
        let x = bits::full_mask(5);
        let fam = TerminalFamily::new(&g, x, vec![bits::mask_of(5, &[0]), bits::mask_of(5, &[3])]);
        assert_eq!(
            bits::to_vec(&fam.find_member(&bits::full_mask(5)).unwrap()),
            vec![0, 1, 2, 3]
        );
        assert!(fam.find_member(&bits::mask_of(5, &[0, 1, 3, 4])).is_none());
    }
}
