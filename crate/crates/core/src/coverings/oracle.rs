use super::{DisjointednessQuery, QWitness};
use crate::error::Result;
use crate::graph::Graph;

/// Answers disjointedness queries on a fixed graph.
///
/// Implementations are immutable from the caller's view and may be queried
/// from several threads; any search state is local to a call.
pub trait QOracle: Send + Sync {
    /// The graph queries refer to.
    fn graph(&self) -> &Graph;

    /// Number of blocks per query.
    fn c(&self) -> usize;

    /// A priori bound on `|Q|` for queries whose blocks are unions of at most
    /// `t` covering blocks, or `None` if sizes are only measured at run time.
    fn bound(&self, t: usize) -> Option<usize>;

    /// Largest number of covering blocks per query block this oracle accepts.
    fn max_arity(&self) -> Option<usize> {
        None
    }

    fn query(&self, q: &DisjointednessQuery) -> Result<QWitness>;

    fn name(&self) -> String;

    /// Diagnostics accumulated so far.
    fn report(&self) -> OracleReport {
        OracleReport::default()
    }
}

/// Free-form oracle diagnostics.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OracleReport {
    /// Set when some answer's size bound could not be certified.
    pub bound_unverified: bool,
    pub notes: Vec<(String, String)>,
}

impl OracleReport {
    pub fn note(&mut self, key: &str, value: impl ToString) {
        self.notes.push((key.to_string(), value.to_string()));
    }
}
