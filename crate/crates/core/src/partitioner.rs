//! Builds a c-tree-partition from a tree decomposition, a covering and a Q-oracle.
//!
//! The recursion works on induced subgraphs `host` of `G`, carrying `c - 1`
//! unions of covering blocks `S_1..S_{c-1}` (kept as block indices and
//! restricted to the host) and a root set `R` with `|R| >= 4k`. It returns a
//! partition in which `S_1'..S_{c-1}'` and a part containing `R \ S` form a
//! clique of the quotient. Three cases:
//!
//! * the host is `R ∪ S`: one clique, one bag;
//! * `|R| <= 12k`: cover `R` by blocks `S_c`, split `host - (S ∪ S_c)` into
//!   components, and for each large component query the oracle and recurse on
//!   `c` pieces, each forgetting one of `S_1..S_c`;
//! * `|R| > 12k`: split along a balanced separator bag and recurse on both sides.

use crate::bits::{self, Mask};
use crate::coverings::{verify_witness, BlockUnion, Covering, DisjointednessQuery, QOracle};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::{component_partition_c0, quotient_of, CTreePartition};
use crate::treewidth::{balanced_separator_in, TreeDecomposition};

/// Whether oracle answers and the final partition are re-verified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CheckMode {
    #[default]
    Checked,
    Release,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct PartitionOptions {
    pub mode: CheckMode,
    /// Treewidth bound `k` with `tw(G) < k`; defaults to the decomposition width plus one.
    pub k: Option<usize>,
}

/// A partition together with the quantities of its width bound.
#[derive(Debug, Clone)]
pub struct PartitionRun {
    pub partition: CTreePartition,
    pub k: usize,
    pub c: usize,
    pub ell: usize,
    /// `f(12k)` used in the bound: the declared oracle bound, or the largest
    /// answer observed when the oracle only measures; at least `4k`.
    pub f_eff: usize,
    /// `max{12ℓk, 2cℓ f_eff}`.
    pub bound: usize,
    /// Largest `|Q|` returned by the oracle.
    pub max_q: usize,
    pub oracle_calls: usize,
    /// True when `f_eff` comes from observed answers rather than a declared bound.
    pub measured: bool,
}

/// Runs the construction with an oracle for queries on unions of blocks.
pub fn compute_partition(
    g: &Graph,
    td: &TreeDecomposition,
    beta: &Covering,
    oracle: &dyn QOracle,
    c: usize,
    opts: PartitionOptions,
) -> Result<PartitionRun> {
    if beta.n() != g.n() {
        return Err(Error::InvalidCovering(format!(
            "covering is over {} vertices, graph has {}",
            beta.n(),
            g.n()
        )));
    }
    if opts.mode == CheckMode::Checked {
        td.validate(g)?;
    }
    let k = opts.k.unwrap_or(td.width() + 1).max(1);
    if td.width() >= k {
        return Err(Error::InvalidDecomposition {
            condition: "width".into(),
            witness: format!("width {} is not below k = {k}", td.width()),
        });
    }
    let ell = beta.ell();
    if c == 0 {
        let mut p = component_partition_c0(g, g.n())?;
        let width = p.width();
        let bound = width.max(12 * ell * k);
        p.set_meta("bound", bound);
        return Ok(PartitionRun {
            partition: p,
            k,
            c,
            ell,
            f_eff: width,
            bound,
            max_q: width,
            oracle_calls: 0,
            measured: true,
        });
    }
    if oracle.c() != c {
        return Err(Error::Internal(format!(
            "oracle answers {}-tuples but c = {c}",
            oracle.c()
        )));
    }
    if let Some(a) = oracle.max_arity() {
        if a < 12 * k {
            return Err(Error::UnsupportedBlock(format!(
                "oracle `{}` accepts unions of {a} blocks; lift it first",
                oracle.name()
            )));
        }
    }
    let mut b = Builder::new(g, td, beta, oracle, c, k, opts.mode);
    if g.n() < 4 * k {
        let id = b.new_node();
        b.add_part(id, 0..g.n());
        b.bag(vec![id]);
    } else {
        let s_members: Vec<Vec<usize>> = (0..c - 1)
            .map(|i| if i < beta.len() { vec![i] } else { Vec::new() })
            .collect();
        let s_ids: Vec<usize> = (0..c - 1).map(|_| b.new_node()).collect();
        let y = b.new_node();
        let r: Vec<usize> = (0..4 * k).collect();
        let host = bits::full_mask(g.n());
        std::thread::scope(|scope| {
            std::thread::Builder::new()
                .stack_size(1 << 30)
                .spawn_scoped(scope, || {
                    b.build(&host, &s_members, &s_ids, &r, y, 0).map(|_| ())
                })
                .expect("spawn partition worker")
                .join()
                .expect("partition worker panicked")
        })?;
    }
    let (max_q, calls) = (b.max_q, b.calls);
    let mut partition = b.finish(g, c);
    let (f_eff, measured) = match oracle.bound(12 * k) {
        Some(f) => (f.max(4 * k), false),
        None => (max_q.max(4 * k), true),
    };
    let bound = (12 * ell * k).max(2 * c * ell * f_eff);
    partition.set_meta("bound", bound);
    partition.set_meta("k", k);
    partition.set_meta("ell", ell);
    partition.set_meta("f_eff", f_eff);
    partition.set_meta("oracle", oracle.name());
    if measured {
        partition.set_meta("f_eff_source", "measured");
    }
    if oracle.report().bound_unverified {
        partition.set_meta("flags", "bound unverified");
    }
    if opts.mode == CheckMode::Checked {
        crate::verify::validate_partition(g, &partition).into_result()?;
    }
    if partition.width() > bound {
        return Err(Error::WidthBoundExceeded {
            width: partition.width(),
            bound,
        });
    }
    Ok(PartitionRun {
        partition,
        k,
        c,
        ell,
        f_eff,
        bound,
        max_q,
        oracle_calls: calls,
        measured,
    })
}

/// Runs the construction with an oracle for single blocks, lifting it to unions.
pub fn compute_partition_cd<O: QOracle>(
    g: &Graph,
    td: &TreeDecomposition,
    beta: &Covering,
    base: O,
    c: usize,
    opts: PartitionOptions,
) -> Result<PartitionRun> {
    let lifted = crate::coverings::lift_oracle(base, beta.clone());
    compute_partition(g, td, beta, &lifted, c, opts)
}

struct Builder<'a> {
    g: &'a Graph,
    td: &'a TreeDecomposition,
    beta: &'a Covering,
    oracle: &'a dyn QOracle,
    c: usize,
    k: usize,
    mode: CheckMode,
    parts: Vec<Mask>,
    bags: Vec<Vec<usize>>,
    tree: Vec<(usize, usize)>,
    max_q: usize,
    calls: usize,
}

impl<'a> Builder<'a> {
    fn new(
        g: &'a Graph,
        td: &'a TreeDecomposition,
        beta: &'a Covering,
        oracle: &'a dyn QOracle,
        c: usize,
        k: usize,
        mode: CheckMode,
    ) -> Self {
        Builder {
            g,
            td,
            beta,
            oracle,
            c,
            k,
            mode,
            parts: Vec::new(),
            bags: Vec::new(),
            tree: Vec::new(),
            max_q: 0,
            calls: 0,
        }
    }

    fn new_node(&mut self) -> usize {
        self.parts.push(Mask::with_capacity(self.g.n()));
        self.parts.len() - 1
    }

    fn add_part(&mut self, id: usize, vs: impl IntoIterator<Item = usize>) {
        for v in vs {
            self.parts[id].insert(v);
        }
    }

    fn bag(&mut self, ids: Vec<usize>) -> usize {
        self.bags.push(ids);
        self.bags.len() - 1
    }

    fn link(&mut self, a: usize, b: usize) {
        self.tree.push((a, b));
    }

    /// Vertices of the union of the given blocks, restricted to `host`.
    fn union_in(&self, members: &[usize], host: &Mask) -> Mask {
        let mut m = Mask::with_capacity(self.g.n());
        for &i in members {
            for &v in self.beta.block(i) {
                if host.contains(v) {
                    m.insert(v);
                }
            }
        }
        m
    }

    /// Residuals `S_i' = S_i \ (S_1 ∪ ... ∪ S_{i-1})` inside `host`.
    fn residuals(&self, members: &[Vec<usize>], host: &Mask) -> Vec<Mask> {
        let mut seen = Mask::with_capacity(self.g.n());
        members
            .iter()
            .map(|m| {
                let mut s = self.union_in(m, host);
                s.difference_with(&seen);
                seen.union_with(&s);
                s
            })
            .collect()
    }

    /// Returns the index of a bag holding the clique `s_ids ∪ {y}`.
    fn build(
        &mut self,
        host: &Mask,
        s_members: &[Vec<usize>],
        s_ids: &[usize],
        r: &[usize],
        y: usize,
        depth: usize,
    ) -> Result<usize> {
        if depth > 4 * self.g.n() + 16 {
            return Err(Error::Internal(
                "partition recursion does not terminate".into(),
            ));
        }
        let res = self.residuals(s_members, host);
        let mut s_all = Mask::with_capacity(self.g.n());
        for s in &res {
            s_all.union_with(s);
        }
        let r_out: Vec<usize> = r.iter().copied().filter(|&v| !s_all.contains(v)).collect();
        let mut outside = host.clone();
        outside.difference_with(&s_all);
        for &v in &r_out {
            outside.set(v, false);
        }

        if outside.is_clear() {
            for (i, s) in res.iter().enumerate() {
                self.add_part(s_ids[i], s.ones());
            }
            self.add_part(y, r_out);
            let mut ids = s_ids.to_vec();
            ids.push(y);
            return Ok(self.bag(ids));
        }

        if r.len() <= 12 * self.k {
            return self.split_by_oracle(host, s_members, s_ids, &r_out, y, depth);
        }

        let td = self.td.restrict(host);
        let sep = balanced_separator_in(self.g, host, &td, r)?;
        let r_mask = bits::mask_of(self.g.n(), r);
        let mut bags_out = Vec::with_capacity(2);
        for side in [&sep.a, &sep.b] {
            let mut sub = bits::mask_of(self.g.n(), side);
            let mut r_side: Vec<usize> = side
                .iter()
                .copied()
                .filter(|&v| r_mask.contains(v))
                .collect();
            for &v in &sep.c {
                sub.insert(v);
                r_side.push(v);
            }
            r_side.sort_unstable();
            r_side.dedup();
            bags_out.push(self.build(&sub, s_members, s_ids, &r_side, y, depth + 1)?);
        }
        self.link(bags_out[0], bags_out[1]);
        Ok(bags_out[0])
    }

    fn split_by_oracle(
        &mut self,
        host: &Mask,
        s_members: &[Vec<usize>],
        s_ids: &[usize],
        r_out: &[usize],
        y: usize,
        depth: usize,
    ) -> Result<usize> {
        let c = self.c;
        // S_c: blocks covering R \ S, greedily by lowest index.
        let mut covered = Mask::with_capacity(self.g.n());
        let mut cover = Vec::new();
        for &v in r_out {
            if covered.contains(v) {
                continue;
            }
            let blk = self.beta.blocks_containing(v)[0];
            cover.push(blk);
            for &w in self.beta.block(blk) {
                covered.insert(w);
            }
        }
        let mut all_members = s_members.to_vec();
        all_members.push(cover);
        let mut all_ids = s_ids.to_vec();
        all_ids.push(y);
        let res = self.residuals(&all_members, host);
        for (i, s) in res.iter().enumerate() {
            self.add_part(all_ids[i], s.ones());
        }
        let central = self.bag(all_ids.clone());

        let mut s_union = Mask::with_capacity(self.g.n());
        for s in &res {
            s_union.union_with(s);
        }
        let mut rest = host.clone();
        rest.difference_with(&s_union);
        let full_blocks: Vec<BlockUnion> =
            all_members.iter().map(|m| self.beta.union_of(m)).collect();
        let nbhd: Vec<Mask> = res.iter().map(|s| bits::neighborhood(self.g, s)).collect();

        for comp in bits::components_in(self.g, &rest) {
            if comp.len() < 4 * self.k {
                let z = self.new_node();
                self.add_part(z, comp.iter().copied());
                let mut ids = all_ids.clone();
                ids.push(z);
                let b = self.bag(ids);
                self.link(central, b);
                continue;
            }
            let query = DisjointednessQuery::for_vertex(self.g, full_blocks.clone(), comp[0]);
            let w = self.oracle.query(&query)?;
            self.calls += 1;
            self.max_q = self.max_q.max(w.q.len());
            if self.mode == CheckMode::Checked {
                let bound = self.oracle.bound(12 * self.k);
                if let Some(d) = bound {
                    if w.q.len() > d {
                        return Err(Error::OracleViolation(format!(
                            "|Q| = {} exceeds the declared bound {d}",
                            w.q.len()
                        )));
                    }
                }
                let report = verify_witness(self.g, &query, &w, None);
                if !report.pass {
                    return Err(Error::OracleViolation(report.failures.join("; ")));
                }
            }
            let comp_mask = bits::mask_of(self.g.n(), &comp);
            let mut q_local: Vec<usize> =
                w.q.iter()
                    .copied()
                    .filter(|&v| comp_mask.contains(v))
                    .collect();
            let mut pieces = comp_mask.clone();
            for &v in &q_local {
                pieces.set(v, false);
            }
            let mut a_sets = vec![Mask::with_capacity(self.g.n()); c];
            for piece in bits::components_in(self.g, &pieces) {
                let i = nbhd
                    .iter()
                    .position(|nb| piece.iter().all(|&v| !nb.contains(v)))
                    .ok_or_else(|| {
                        Error::OracleViolation(format!(
                            "component at {} meets every residual neighbourhood",
                            piece[0]
                        ))
                    })?;
                for v in piece {
                    a_sets[i].insert(v);
                }
            }
            // Pad Q to at least 4k vertices of the component.
            let mut in_q = bits::mask_of(self.g.n(), &q_local);
            for &v in &comp {
                if q_local.len() >= 4 * self.k {
                    break;
                }
                if !in_q.contains(v) {
                    in_q.insert(v);
                    q_local.push(v);
                }
            }
            q_local.sort_unstable();

            let y_j = self.new_node();
            let mut plus = all_ids.clone();
            plus.push(y_j);
            let plus_bag = self.bag(plus);
            self.link(central, plus_bag);
            for i in 0..c {
                let mut sub = a_sets[i].clone();
                sub.union_with(&in_q);
                sub.union_with(&s_union);
                sub.difference_with(&res[i]);
                let child_members: Vec<Vec<usize>> = (0..c)
                    .filter(|&m| m != i)
                    .map(|m| all_members[m].clone())
                    .collect();
                let child_ids: Vec<usize> =
                    (0..c).filter(|&m| m != i).map(|m| all_ids[m]).collect();
                let child_bag =
                    self.build(&sub, &child_members, &child_ids, &q_local, y_j, depth + 1)?;
                self.link(plus_bag, child_bag);
            }
        }
        Ok(central)
    }

    /// Drops empty parts, renumbers nodes and assembles the certificate.
    fn finish(self, g: &Graph, c: usize) -> CTreePartition {
        let mut index = vec![usize::MAX; self.parts.len()];
        let mut parts = Vec::new();
        for (id, p) in self.parts.iter().enumerate() {
            if !p.is_clear() {
                index[id] = parts.len();
                parts.push(bits::to_vec(p));
            }
        }
        let bags: Vec<Vec<usize>> = self
            .bags
            .iter()
            .map(|b| {
                b.iter()
                    .filter(|&&x| index[x] != usize::MAX)
                    .map(|&x| index[x])
                    .collect()
            })
            .collect();
        let certificate = TreeDecomposition::new(bags, self.tree);
        let quotient = quotient_of(g, &parts);
        CTreePartition::new(g.n(), c, parts, quotient, certificate)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coverings::oracle_from_partition;
    use crate::families::{generate, FamilySpec};
    use crate::oracles::degree_oracle;
    use crate::treewidth::{exact_treewidth, heuristic_td};
    use crate::verify::{brute_min_tpw, validate_partition};

    fn run_degree(g: &Graph) -> PartitionRun {
        let td = heuristic_td(g);
        let beta = Covering::singletons(g.n());
        compute_partition(
            g,
            &td,
            &beta,
            &degree_oracle(g),
            1,
            PartitionOptions::default(),
        )
        .unwrap()
    }

    #[test]
    fn small_graphs_get_the_trivial_partition() {
        let g = generate(FamilySpec::Path(5)).unwrap();
        let run = run_degree(&g);
        assert_eq!(run.partition.parts.len(), 1);
    }

    #[test]
    fn long_path_with_degree_oracle() {
        let g = generate(FamilySpec::Path(20)).unwrap();
        let run = run_degree(&g);
        assert_eq!(run.k, 2);
        assert_eq!(run.bound, 96);
        assert!(validate_partition(&g, &run.partition).pass);
        assert!(run.partition.width() <= 96);
    }

    #[test]
    fn grids_with_degree_oracle() {
        for (a, b) in [(4, 4), (5, 7), (8, 8)] {
            let g = generate(FamilySpec::Grid(a, b)).unwrap();
            let run = run_degree(&g);
            assert!(validate_partition(&g, &run.partition).pass);
            assert!(run.partition.width() <= run.bound);
        }
    }

    #[test]
    fn partition_oracle_drives_a_two_tree_partition() {
        let g = generate("gcl 2 3".parse::<FamilySpec>().unwrap()).unwrap();
        let (ell, p) = brute_min_tpw(&g, 2, 13).unwrap();
        let oracle = oracle_from_partition(&g, &p).unwrap();
        let beta = p.as_covering().unwrap();
        let (_, td) = exact_treewidth(&g, 20).unwrap();
        let run =
            compute_partition_cd(&g, &td, &beta, oracle, 2, PartitionOptions::default()).unwrap();
        assert!(validate_partition(&g, &run.partition).pass);
        let d = 2 * ell;
        assert!(run.partition.width() <= 2 * 2 * d * ell * (12 * run.k).pow(2));
    }

    #[test]
    fn deterministic() {
        let g = generate(FamilySpec::Grid(6, 6)).unwrap();
        assert_eq!(run_degree(&g).partition, run_degree(&g).partition);
    }
}
