//! Edge-count estimation under independent-set queries: instrumented
//! oracles, degree-bucket estimators, planted lower-bound instances, and the
//! query-budget accounting used by the benchmark harness.

pub mod degree_oracle;
pub mod estimator;
pub mod generators;
pub mod graph;
pub mod ground_truth;
pub mod lowerbound;
pub mod oracle;
pub mod params;
pub mod sampling;
pub mod search;
pub mod trials;

pub use graph::{Graph, GraphError, Vertex, VertexSet};
pub use oracle::{InstrumentedOracle, IsOracle, OracleError};
pub use params::{Params, ParamsError, Tunables};
