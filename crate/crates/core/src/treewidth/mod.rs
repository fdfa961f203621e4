//! Tree decompositions, exact and heuristic treewidth, balanced separators.

mod decomposition;
mod exact;
mod heuristic;
mod separator;

pub use decomposition::{from_elimination_order, TreeDecomposition};
pub use exact::{exact_treewidth, DEFAULT_EXACT_BUDGET};
pub use heuristic::{heuristic_td, min_fill_order};
pub use separator::{balanced_separator, balanced_separator_in, Separation};

use crate::graph::Graph;

/// Exact decomposition when `g` fits the budget, min-fill otherwise.
/// The flag reports whether the width is exact.
pub fn best_td(g: &Graph, exact_budget: usize) -> (TreeDecomposition, bool) {
    match exact_treewidth(g, exact_budget) {
        Ok((_, td)) => (td, true),
        Err(_) => (heuristic_td(g), false),
    }
}
