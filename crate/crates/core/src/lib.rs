//! Minimum maximal matchings (edge domination): exact solvers, structural
//! detectors, constructive upper bounds and approximation certificates.

pub mod approx;
pub mod bounds;
pub mod generators;
pub mod graph;
pub mod matching;
pub mod saturator;
pub mod scalar;
pub mod structure;

pub use bounds::{BoundError, Construction, RationalBound, ReductionTrace, Rule};
pub use graph::{Graph, GraphError, VertexMap};
pub use matching::{ExactResult, Matching, MatchingError};
pub use scalar::Scalar;

/// Exact rational used for every bound comparison.
pub type Rational = num_rational::Ratio<i64>;
