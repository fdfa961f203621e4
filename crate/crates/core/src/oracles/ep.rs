use std::collections::HashMap;

use super::FamilyOracle;
use crate::bits::{self, Mask};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::treewidth::TreeDecomposition;

/// Default number of search steps for exact packing numbers.
pub const DEFAULT_EP_BUDGET: usize = 1_000_000;

/// How packing numbers are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EpMode {
    /// Exact branch and bound; fails with `PackingBudgetExceeded` past the budget.
    Exact,
    /// Exact, falling back to greedy estimates past the budget.
    #[default]
    Auto,
    /// Greedy packings only. Hitting sets stay certified; the size bound does not.
    Greedy,
}

/// A certified hitting set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HittingSet {
    pub q: Vec<usize>,
    /// Packing number of the family (a greedy lower bound when `exact` is false).
    pub nu: usize,
    /// A packing of that size.
    pub packing: Vec<Vec<usize>>,
    /// Number of decomposition bags taken.
    pub nodes: usize,
    /// False when packing numbers were estimated greedily.
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EpResult {
    /// More than `ℓ` pairwise disjoint members.
    Packing(Vec<Vec<usize>>),
    HittingSet(HittingSet),
}

/// `ℓ log2(ℓ + 1)`, the bound on the number of bags in exact mode.
pub fn ep_node_bound(ell: usize) -> f64 {
    ell as f64 * (ell as f64 + 1.0).log2()
}

/// Either more than `ℓ` disjoint members of `fam`, or a set `Q` meeting every
/// member, made of at most `ℓ log2(ℓ+1)` bags of `td` when packing numbers are exact.
///
/// Each connected piece of the ground set is handled by orienting every tree
/// edge towards the side with the larger packing number, taking the bag of a
/// sink and recursing on the components left over, whose packing numbers are
/// at most half as large.
pub fn ep_hitting_set(
    td: &TreeDecomposition,
    fam: &dyn FamilyOracle,
    ell: usize,
    mode: EpMode,
    budget: usize,
) -> Result<EpResult> {
    let run = |greedy| Ep::new(td, fam, budget, greedy).run(ell);
    match mode {
        EpMode::Exact => run(false),
        EpMode::Greedy => run(true),
        EpMode::Auto => match run(false) {
            Err(Error::PackingBudgetExceeded(_)) => run(true),
            other => other,
        },
    }
}

/// Maximum packing size with exact search, capped at `cap`.
pub fn packing_number(
    fam: &dyn FamilyOracle,
    cap: usize,
    budget: usize,
) -> Result<Vec<Vec<usize>>> {
    let td = TreeDecomposition::trivial(0);
    let mut ep = Ep::new(&td, fam, budget, false);
    let ground = fam.ground().clone();
    Ok(ep.pack(&ground, cap)?.iter().map(bits::to_vec).collect())
}

/// Greedy packing of minimal members, lowest vertex first.
pub fn greedy_packing(fam: &dyn FamilyOracle, within: &Mask, cap: usize) -> Vec<Mask> {
    let mut rest = within.clone();
    let mut out = Vec::new();
    while out.len() < cap {
        let Some(m) = fam.find_member(&rest) else {
            break;
        };
        rest.difference_with(&m);
        out.push(m);
    }
    out
}

struct Ep<'a> {
    g: &'a Graph,
    fam: &'a dyn FamilyOracle,
    td: &'a TreeDecomposition,
    tree: Vec<Vec<usize>>,
    bags: Vec<Mask>,
    memo: HashMap<Mask, (Vec<Mask>, bool)>,
    steps: usize,
    budget: usize,
    greedy: bool,
}

impl<'a> Ep<'a> {
    fn new(
        td: &'a TreeDecomposition,
        fam: &'a dyn FamilyOracle,
        budget: usize,
        greedy: bool,
    ) -> Self {
        let g = fam.graph();
        let bags = td.bags.iter().map(|b| bits::mask_of(g.n(), b)).collect();
        Ep {
            g,
            fam,
            td,
            tree: td.tree_adjacency(),
            bags,
            memo: HashMap::new(),
            steps: 0,
            budget,
            greedy,
        }
    }

    fn tick(&mut self, k: usize) -> Result<()> {
        self.steps += k;
        if self.steps > self.budget {
            Err(Error::PackingBudgetExceeded(self.budget))
        } else {
            Ok(())
        }
    }

    fn run(mut self, ell: usize) -> Result<EpResult> {
        let ground = self.fam.ground().clone();
        let top = self.pack(&ground, ell + 1)?;
        if top.len() > ell {
            return Ok(EpResult::Packing(top.iter().map(bits::to_vec).collect()));
        }
        let mut q = Mask::with_capacity(self.g.n());
        let mut nodes = 0;
        for comp in bits::components_in(self.g, &ground) {
            let cm = bits::mask_of(self.g.n(), &comp);
            let l = self.estimate(&cm, ell + 1)?;
            if l > 0 {
                self.hit(cm, l, &mut q, &mut nodes)?;
            }
        }
        if !self.greedy && nodes as f64 > ep_node_bound(top.len()) + 1e-9 {
            return Err(Error::Internal(format!(
                "{nodes} bags taken for packing number {}",
                top.len()
            )));
        }
        // Drop vertices that are not needed to meet every member.
        for v in bits::to_vec(&q) {
            q.set(v, false);
            let mut rest = ground.clone();
            rest.difference_with(&q);
            if self.fam.find_member(&rest).is_some() {
                q.insert(v);
            }
        }
        let mut rest = ground;
        rest.difference_with(&q);
        if self.fam.find_member(&rest).is_some() {
            return Err(Error::Internal("hitting set misses a member".into()));
        }
        Ok(EpResult::HittingSet(HittingSet {
            q: bits::to_vec(&q),
            nu: top.len(),
            packing: top.iter().map(bits::to_vec).collect(),
            nodes,
            exact: !self.greedy,
        }))
    }

    /// Packing number of `u` (exact below `cap`), or a greedy count of at least 1
    /// when some member exists.
    fn estimate(&mut self, u: &Mask, cap: usize) -> Result<usize> {
        if self.greedy {
            let k = greedy_packing(self.fam, u, cap).len();
            return Ok(k);
        }
        Ok(self.pack(u, cap)?.len())
    }

    /// Takes the bag of a sink of the orientation on the connected set `u`.
    fn hit(&mut self, u: Mask, l: usize, q: &mut Mask, nodes: &mut usize) -> Result<()> {
        let alive: Vec<bool> = self.bags.iter().map(|b| !b.is_disjoint(&u)).collect();
        let root = alive
            .iter()
            .position(|&a| a)
            .ok_or_else(|| Error::Internal("no bag meets the vertex set".into()))?;
        // DFS over the bags meeting `u`; they form a subtree since `u` is connected.
        let mut order = vec![root];
        let mut parent = vec![usize::MAX; self.td.node_count()];
        parent[root] = root;
        let mut i = 0;
        while i < order.len() {
            let t = order[i];
            for &s in &self.tree[t] {
                if alive[s] && parent[s] == usize::MAX {
                    parent[s] = t;
                    order.push(s);
                }
            }
            i += 1;
        }
        let mut sub: HashMap<usize, Mask> = HashMap::new();
        for &t in order.iter().rev() {
            let mut m = self.bags[t].clone();
            m.intersect_with(&u);
            for &s in &self.tree[t] {
                if parent[s] == t && s != t {
                    if let Some(sm) = sub.get(&s) {
                        m.union_with(sm);
                    }
                }
            }
            sub.insert(t, m);
        }
        let half = l / 2;
        let mut out_deg = vec![0usize; self.td.node_count()];
        for &t in &order[1..] {
            let p = parent[t];
            let mut child_side = sub[&t].clone();
            child_side.difference_with(&self.bags[p]);
            let mut parent_side = u.clone();
            parent_side.difference_with(&sub[&t]);
            let (first, first_side, second) = if t < p {
                (t, child_side, p)
            } else {
                (p, parent_side, t)
            };
            if self.estimate(&first_side, half + 1)? <= half {
                out_deg[first] += 1;
            } else {
                out_deg[second] += 1;
            }
        }
        let sink = *order
            .iter()
            .filter(|&&t| out_deg[t] == 0)
            .min()
            .expect("a finite oriented tree has a sink");
        let mut taken = self.bags[sink].clone();
        taken.intersect_with(&u);
        q.union_with(&taken);
        *nodes += 1;
        let mut rest = u;
        rest.difference_with(&taken);
        for comp in bits::components_in(self.g, &rest) {
            let cm = bits::mask_of(self.g.n(), &comp);
            let lj = if self.greedy {
                if self.fam.find_member(&cm).is_none() {
                    continue;
                }
                self.estimate(&cm, half + 1)?.max(1)
            } else {
                self.estimate(&cm, half + 1)?
            };
            if lj > 0 {
                self.hit(cm, lj, q, nodes)?;
            }
        }
        Ok(())
    }

    /// A packing inside `u` of size `min(ν(u), cap)`.
    fn pack(&mut self, u: &Mask, cap: usize) -> Result<Vec<Mask>> {
        let mut within = u.clone();
        within.intersect_with(self.fam.ground());
        if self.greedy {
            return Ok(greedy_packing(self.fam, &within, cap));
        }
        let mut out = Vec::new();
        for comp in bits::components_in(self.g, &within) {
            if out.len() >= cap {
                break;
            }
            let cm = bits::mask_of(self.g.n(), &comp);
            let p = self.pack_connected(cm, cap - out.len())?;
            out.extend(p);
        }
        out.truncate(cap);
        Ok(out)
    }

    fn pack_connected(&mut self, c: Mask, cap: usize) -> Result<Vec<Mask>> {
        if cap == 0 {
            return Ok(Vec::new());
        }
        if let Some((p, exact)) = self.memo.get(&c) {
            if *exact || p.len() >= cap {
                return Ok(p[..p.len().min(cap)].to_vec());
            }
        }
        self.tick(1)?;
        let Some(m0) = self.fam.find_member(&c) else {
            self.memo.insert(c, (Vec::new(), true));
            return Ok(Vec::new());
        };
        let best = if cap == 1 {
            vec![m0]
        } else {
            // Either v is unused, or some member through v is in the packing.
            let v = m0.ones().next().expect("members are non-empty");
            let mut without = c.clone();
            without.set(v, false);
            let mut best = self.pack(&without, cap)?;
            if best.len() < cap {
                let target = best.len() + 1;
                let mut it = MembersThrough::new(self.g, self.fam, &c, v);
                while let Some(m) = it.next() {
                    self.tick(std::mem::take(&mut it.steps))?;
                    let mut rest = c.clone();
                    rest.difference_with(&m);
                    let sub = self.pack(&rest, target - 1)?;
                    if sub.len() + 1 == target {
                        best = std::iter::once(m).chain(sub).collect();
                        break;
                    }
                }
                self.tick(it.steps)?;
            }
            best
        };
        let exact = best.len() < cap;
        self.memo.insert(c, (best.clone(), exact));
        Ok(best)
    }
}

/// Enumerates connected vertex sets through `v` that are members while none of
/// the sets on their search path is. Every member that is minimal among
/// members through `v` is produced.
struct MembersThrough<'a> {
    g: &'a Graph,
    fam: &'a dyn FamilyOracle,
    within: Mask,
    single: Option<Mask>,
    /// (set, candidates, excluded)
    stack: Vec<(Mask, Mask, Mask)>,
    steps: usize,
}

impl<'a> MembersThrough<'a> {
    fn new(g: &'a Graph, fam: &'a dyn FamilyOracle, within: &Mask, v: usize) -> Self {
        let s = bits::mask_of(g.n(), &[v]);
        let mut it = MembersThrough {
            g,
            fam,
            within: within.clone(),
            single: None,
            stack: Vec::new(),
            steps: 0,
        };
        if fam.contains_member(&s) {
            // Then {v} is the only minimal member through v.
            it.single = Some(s);
        } else {
            let cand = it.extend(
                &s,
                &Mask::with_capacity(g.n()),
                v,
                &Mask::with_capacity(g.n()),
            );
            it.stack.push((s, cand, Mask::with_capacity(g.n())));
        }
        it
    }

    fn extend(&self, s: &Mask, cand: &Mask, w: usize, excluded: &Mask) -> Mask {
        let mut c = cand.clone();
        c.set(w, false);
        for &x in self.g.neighbors(w) {
            if self.within.contains(x) && !s.contains(x) && !excluded.contains(x) {
                c.insert(x);
            }
        }
        c
    }
}

impl Iterator for MembersThrough<'_> {
    type Item = Mask;

    fn next(&mut self) -> Option<Mask> {
        if let Some(s) = self.single.take() {
            return Some(s);
        }
        while let Some((s, cand, excluded)) = self.stack.pop() {
            self.steps += 1;
            let Some(w) = cand.ones().next() else {
                continue;
            };
            let mut ex = excluded.clone();
            ex.insert(w);
            let mut rest = cand.clone();
            rest.set(w, false);
            self.stack.push((s.clone(), rest, ex));
            let mut s2 = s;
            s2.insert(w);
            if self.fam.contains_member(&s2) {
                return Some(s2);
            }
            let c2 = self.extend(&s2, &cand, w, &excluded);
            self.stack.push((s2, c2, excluded));
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::EdgeSetFamily;
    use crate::treewidth::heuristic_td;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Maximum matching by exhaustive recursion.
    fn brute_matching(edges: &[(usize, usize)], used: &mut Vec<bool>) -> usize {
        let Some((i, &(u, v))) = edges
            .iter()
            .enumerate()
            .find(|(_, &(u, v))| !used[u] && !used[v])
        else {
            return 0;
        };
        let skip = brute_matching(&edges[i + 1..], used);
        used[u] = true;
        used[v] = true;
        let take = 1 + brute_matching(&edges[i + 1..], used);
        used[u] = false;
        used[v] = false;
        skip.max(take)
    }

    fn run(g: &Graph, ell: usize) -> EpResult {
        ep_hitting_set(
            &heuristic_td(g),
            &EdgeSetFamily::all_edges(g),
            ell,
            EpMode::Exact,
            DEFAULT_EP_BUDGET,
        )
        .unwrap()
    }

    #[test]
    fn path_on_three_vertices() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        match run(&g, 1) {
            EpResult::HittingSet(h) => assert_eq!(h.q, vec![1]),
            r => panic!("{r:?}"),
        }
        assert!(matches!(run(&g, 0), EpResult::Packing(p) if p.len() == 1));
    }

    #[test]
    fn two_disjoint_edges_pack() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(run(&g, 1), EpResult::Packing(p) if p.len() == 2));
        assert!(matches!(run(&Graph::new(3), 0), EpResult::HittingSet(h) if h.q.is_empty()));
    }

    #[test]
    fn random_edge_families() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let n = rng.gen_range(2..12);
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(0.25))
                .collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            let nu = brute_matching(&g.edges(), &mut vec![false; n]);
            let fam = EdgeSetFamily::all_edges(&g);
            assert_eq!(
                packing_number(&fam, usize::MAX, DEFAULT_EP_BUDGET)
                    .unwrap()
                    .len(),
                nu
            );
            let td = heuristic_td(&g);
            for ell in 0..=4 {
                match ep_hitting_set(&td, &fam, ell, EpMode::Exact, DEFAULT_EP_BUDGET).unwrap() {
                    EpResult::Packing(p) => {
                        assert!(nu > ell);
                        assert_eq!(p.len(), ell + 1);
                    }
                    EpResult::HittingSet(h) => {
                        assert!(nu <= ell);
                        let qm = bits::mask_of(n, &h.q);
                        assert!(g
                            .edges()
                            .iter()
                            .all(|&(u, v)| qm.contains(u) || qm.contains(v)));
                        assert!(h.q.len() as f64 <= (td.width() + 1) as f64 * ep_node_bound(ell));
                    }
                }
            }
        }
    }

    #[test]
    fn greedy_mode_still_hits() {
        let g = crate::families::generate(crate::families::FamilySpec::Grid(4, 4)).unwrap();
        let fam = EdgeSetFamily::all_edges(&g);
        let r = ep_hitting_set(
            &heuristic_td(&g),
            &fam,
            20,
            EpMode::Greedy,
            DEFAULT_EP_BUDGET,
        )
        .unwrap();
        let EpResult::HittingSet(h) = r else { panic!() };
        assert!(!h.exact);
        let mut rest = bits::full_mask(16);
        for &v in &h.q {
            rest.set(v, false);
        }
        assert!(fam.find_member(&rest).is_none());
    }

    #[test]
    fn tiny_budget_fails_in_exact_mode() {
        let g = crate::families::generate(crate::families::FamilySpec::Grid(4, 4)).unwrap();
        let fam = EdgeSetFamily::all_edges(&g);
        let r = ep_hitting_set(&heuristic_td(&g), &fam, 20, EpMode::Exact, 3);
        assert!(matches!(r, Err(Error::PackingBudgetExceeded(3))));
        assert!(ep_hitting_set(&heuristic_td(&g), &fam, 20, EpMode::Auto, 3).is_ok());
    }
}
