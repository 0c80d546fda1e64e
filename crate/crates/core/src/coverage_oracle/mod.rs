//! Streaming kernel for unweighted coverage when the objective is only
//! available through a value oracle.
//!
//! The algorithm in [`streaming`] is generic over [`ValueOracle`] and so has
//! no way to look at point sets; [`CoverageInstance`] backs the oracle and is
//! what verification code inspects.

mod oracle;
pub mod streaming;

pub use oracle::{
    disjoint_outside, same_points_within, CountingOracle, CoverageInstance, OpaqueOracle,
    ValueOracle,
};
pub use streaming::{
    extract_coverage_solution, n_bound, ArrivalStats, CoverageKernel, Node, PushOutcome,
    StreamingCoverage, Tree,
};
