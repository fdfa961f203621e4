//! Vertex masks over a fixed graph.

use fixedbitset::FixedBitSet;

use crate::graph::Graph;

pub type Mask = FixedBitSet;

pub fn mask_of(n: usize, vs: &[usize]) -> Mask {
    let mut m = FixedBitSet::with_capacity(n);
    for &v in vs {
        m.insert(v);
    }
    m
}

pub fn full_mask(n: usize) -> Mask {
    let mut m = FixedBitSet::with_capacity(n);
    m.insert_range(..);
    m
}

pub fn to_vec(m: &Mask) -> Vec<usize> {
    m.ones().collect()
}

/// Connected components of `g[mask]`, each sorted, ordered by smallest vertex.
pub fn components_in(g: &Graph, mask: &Mask) -> Vec<Vec<usize>> {
    let mut seen = FixedBitSet::with_capacity(g.n());
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for s in mask.ones() {
        if seen.contains(s) {
            continue;
        }
        seen.insert(s);
        stack.push(s);
        let mut comp = Vec::new();
        while let Some(u) = stack.pop() {
            comp.push(u);
            for &w in g.neighbors(u) {
                if mask.contains(w) && !seen.contains(w) {
                    seen.insert(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// The component of `g[mask]` containing `v`.
pub fn component_of(g: &Graph, mask: &Mask, v: usize) -> Mask {
    let mut comp = FixedBitSet::with_capacity(g.n());
    if !mask.contains(v) {
        return comp;
    }
    comp.insert(v);
    let mut stack = vec![v];
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if mask.contains(w) && !comp.contains(w) {
                comp.insert(w);
                stack.push(w);
            }
        }
    }
    comp
}

/// Open neighbourhood of `set`: vertices outside `set` adjacent to it.
pub fn neighborhood(g: &Graph, set: &Mask) -> Mask {
    let mut out = FixedBitSet::with_capacity(g.n());
    for u in set.ones() {
        for &w in g.neighbors(u) {
            if !set.contains(w) {
                out.insert(w);
            }
        }
    }
    out
}

pub fn is_connected_in(g: &Graph, mask: &Mask) -> bool {
    match mask.ones().next() {
        None => true,
        Some(v) => component_of(g, mask, v).count_ones(..) == mask.count_ones(..),
    }
}
