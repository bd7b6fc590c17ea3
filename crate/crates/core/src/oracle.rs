//! The instrumented independent-set oracle.
//!
//! Algorithm code compiles against [`IsOracle`] only; the underlying graph is
//! not reachable through it. Brute-force accessors (exact degrees and edge
//! counts) live on [`crate::graph::Graph`] for tests and reporting.

use thiserror::Error;

use crate::graph::{Graph, Vertex, VertexSet};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("vertex {0} out of range for n = {1}")]
    VertexOutOfRange(Vertex, usize),
}

/// Independent-set query access to an unknown graph over `0..vertex_count()`.
pub trait IsOracle {
    fn vertex_count(&self) -> usize;

    /// Returns whether `set` (sorted, unique, in range) is an independent set.
    /// Each call counts as one query.
    fn is_independent(&mut self, set: &[Vertex]) -> bool;

    /// Queries answered so far; the run reports account per phase with this.
    fn query_count(&self) -> u64;
}

/// Answers `set` through the oracle, except that sets of size <= 1 are
/// independent in every simple graph and are answered without spending a
/// query. Strictly reduces query counts versus querying unconditionally.
#[inline]
pub fn query_is<O: IsOracle + ?Sized>(oracle: &mut O, set: &[Vertex]) -> bool {
    if set.len() <= 1 {
        true
    } else {
        oracle.is_independent(set)
    }
}

/// Wraps a [`Graph`] and answers IS queries while accumulating a query count
/// and a query-size histogram. One instance per algorithm run.
pub struct InstrumentedOracle<'g> {
    graph: &'g Graph,
    query_count: u64,
    size_hist: Vec<u64>,
}

impl<'g> InstrumentedOracle<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        InstrumentedOracle {
            graph,
            query_count: 0,
            size_hist: Vec::new(),
        }
    }

    /// Histogram of query sizes: `hist[s]` = number of queries with |S| = s.
    pub fn size_histogram(&self) -> &[u64] {
        &self.size_hist
    }

    pub fn reset(&mut self) {
        self.query_count = 0;
        self.size_hist.clear();
    }

    fn record(&mut self, size: usize) {
        self.query_count += 1;
        if self.size_hist.len() <= size {
            self.size_hist.resize(size + 1, 0);
        }
        self.size_hist[size] += 1;
    }

    /// Checked query interface. Out-of-range input is an error and is not
    /// counted as a query.
    pub fn try_is_independent(&mut self, set: &VertexSet) -> Result<bool, OracleError> {
        let n = self.graph.vertex_count();
        if !set.in_range(n) {
            let bad = set.iter().find(|&v| v as usize >= n).unwrap();
            return Err(OracleError::VertexOutOfRange(bad, n));
        }
        self.record(set.len());
        Ok(self.graph.set_is_independent(set))
    }
}

impl IsOracle for InstrumentedOracle<'_> {
    fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    fn is_independent(&mut self, set: &[Vertex]) -> bool {
        debug_assert!(set
            .last()
            .map_or(true, |&v| (v as usize) < self.graph.vertex_count()));
        self.record(set.len());
        self.graph.set_is_independent(set)
    }

    fn query_count(&self) -> u64 {
        self.query_count
    }
}
