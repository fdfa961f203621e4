use proptest::prelude::*;
use treepart::constructions::{degree_partition, subdivide_partition};
use treepart::coverings::{
    oracle_from_partition, verify_witness, BlockUnion, DisjointednessQuery, QOracle,
};
use treepart::partition::CTreePartition;
use treepart::transforms::{robust_power, subdivide};
use treepart::treewidth::{best_td, exact_treewidth, heuristic_td};
use treepart::verify::{brute_min_tpw, observation1_audit, validate_partition};
use treepart::{generate, FamilySpec, Graph};

const EXACT: usize = 20;

/// Graphs on `1..=max_n` vertices with each pair present with probability 90/256.
fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<u8>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] < 90 {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

/// Bounded-degree graphs large enough to leave the base case of the partitioner.
fn sparse_graph() -> impl Strategy<Value = Graph> {
    (
        20usize..70,
        proptest::collection::vec((0usize..70, 0usize..70), 0..200),
    )
        .prop_map(|(n, pairs)| {
            let mut g = Graph::new(n);
            for (u, v) in pairs {
                let (u, v) = (u % n, v % n);
                if u != v && !g.has_edge(u, v) && g.degree(u) < 3 && g.degree(v) < 3 {
                    g.add_edge(u, v).unwrap();
                }
            }
            g
        })
}

/// Set partitions of `0..n` in restricted growth form.
fn set_partitions(n: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(labels: &mut Vec<usize>, n: usize, max: usize, f: &mut dyn FnMut(&[usize])) {
        if labels.len() == n {
            f(labels);
            return;
        }
        for l in 0..=max {
            labels.push(l);
            go(labels, n, max.max(l + 1), f);
            labels.pop();
        }
    }
    go(&mut Vec::new(), n, 0, f);
}

/// Smallest largest part over partitions whose quotient is a forest,
/// checked with a union-find instead of a treewidth computation.
fn forest_partition_width(g: &Graph) -> usize {
    let n = g.n();
    let mut best = n;
    set_partitions(n, &mut |labels| {
        let parts = labels.iter().max().map_or(0, |m| m + 1);
        let mut sizes = vec![0; parts];
        for &l in labels {
            sizes[l] += 1;
        }
        let width = sizes.into_iter().max().unwrap_or(0);
        if width >= best {
            return;
        }
        let mut quotient: Vec<(usize, usize)> = g
            .edges()
            .into_iter()
            .map(|(u, v)| (labels[u].min(labels[v]), labels[u].max(labels[v])))
            .filter(|(a, b)| a != b)
            .collect();
        quotient.sort_unstable();
        quotient.dedup();
        let mut root: Vec<usize> = (0..parts).collect();
        fn find(root: &mut [usize], x: usize) -> usize {
            if root[x] != x {
                let r = find(root, root[x]);
                root[x] = r;
            }
            root[x]
        }
        for (a, b) in quotient {
            let (ra, rb) = (find(&mut root, a), find(&mut root, b));
            if ra == rb {
                return;
            }
            root[ra] = rb;
        }
        best = width;
    });
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph_text_round_trips(g in graph(12)) {
        prop_assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn decompositions_are_valid_and_bound_treewidth(g in graph(10)) {
        let (tw, exact) = exact_treewidth(&g, EXACT).unwrap();
        exact.validate(&g).unwrap();
        prop_assert_eq!(exact.width(), tw);
        let h = heuristic_td(&g);
        h.validate(&g).unwrap();
        prop_assert!(h.width() >= tw);
    }

    #[test]
    fn degree_partitions_are_valid_and_within_bound(g in sparse_graph()) {
        let (td, _) = best_td(&g, EXACT);
        let run = degree_partition(&g, &td).unwrap();
        let report = validate_partition(&g, &run.partition);
        prop_assert!(report.pass, "{:?}", report.failures);
        prop_assert!(run.partition.width() <= run.bound);
        prop_assert!(run.partition.width() <= 24 * (td.width() + 1) * g.max_degree().max(1));
        let text = run.partition.to_text();
        prop_assert_eq!(CTreePartition::parse(&text).unwrap().to_text(), text);
        prop_assert!(observation1_audit(&g, &run.partition, 0).unwrap().pass);
    }

    #[test]
    fn forest_partition_width_matches_a_second_enumeration(g in graph(7)) {
        let (w, p) = brute_min_tpw(&g, 1, 10).unwrap();
        prop_assert_eq!(w, forest_partition_width(&g));
        prop_assert!(validate_partition(&g, &p).pass);
    }

    #[test]
    fn subdivided_partitions_keep_their_width(g in graph(7), counts in proptest::collection::vec(0usize..4, 21), c in 1usize..3) {
        let (t, p) = brute_min_tpw(&g, c, 10).unwrap();
        let sm = subdivide(&g, &counts[..g.m()]).unwrap();
        let out = subdivide_partition(&sm, &p, c).unwrap();
        let report = validate_partition(&sm.subdivided, &out);
        prop_assert!(report.pass, "{:?}", report.failures);
        prop_assert_eq!(out.c, c);
        let limit = if c == 1 { t * t + t } else { t };
        prop_assert!(out.width() <= limit);
    }

    #[test]
    fn robust_powers_do_not_raise_treewidth(g in graph(10), extra in 0usize..3) {
        let tw = exact_treewidth(&g, EXACT).unwrap().0;
        let power = robust_power(&g, tw + 1 + extra);
        prop_assert!(exact_treewidth(&power, EXACT).unwrap().0 <= tw);
        for (u, v) in power.edges() {
            prop_assert!(robust_power(&g, 1).has_edge(u, v));
        }
    }

    #[test]
    fn partition_oracle_answers_are_witnessed(g in graph(7), c in 1usize..3, picks in proptest::collection::vec(0usize..7, 2)) {
        let (ell, p) = brute_min_tpw(&g, c, 10).unwrap();
        let oracle = oracle_from_partition(&g, &p).unwrap();
        let parts: Vec<&Vec<usize>> = p.parts.iter().filter(|x| !x.is_empty()).collect();
        let blocks: Vec<BlockUnion> = picks[..c].iter().map(|&i| BlockUnion::from_vertices(parts[i % parts.len()].clone())).collect();
        for q in DisjointednessQuery::all_for(&g, &blocks) {
            let w = oracle.query(&q).unwrap();
            let report = verify_witness(&g, &q, &w, Some(c * ell));
            prop_assert!(report.pass, "{:?}", report.failures);
        }
    }

    #[test]
    fn family_specs_round_trip(idx in 0usize..6, a in 1usize..5, b in 1usize..4) {
        let spec = [
            FamilySpec::Path(a),
            FamilySpec::Cycle(a + 2),
            FamilySpec::Grid(a, b),
            FamilySpec::Gcl(a.min(3), b),
            FamilySpec::Ccl(a.min(3), b),
            FamilySpec::Spider(a, b),
        ][idx];
        let text = spec.to_string();
        prop_assert_eq!(text.parse::<FamilySpec>().unwrap(), spec);
        let g = generate(spec).unwrap();
        prop_assert_eq!(Some(g.n()), spec.vertex_count());
    }
}
