//! Exact geometric foundation: graphs, rational configurations, distances,
//! equivalence and congruence predicates, affine maps and hyperplane
//! reflections.
//!
//! Everything in this module works over arbitrary-precision rationals, so
//! distance comparisons are exact decisions, never tolerance checks. Square
//! roots are never taken: all lengths are handled squared.
//!
//! All types are immutable values after construction and every operation is
//! pure, so values can be shared or sent across threads freely.

mod affine;
mod framework;
mod graph;
mod hyperplane;
pub(crate) mod linalg;
mod rational;

pub use affine::AffineMap;
pub use framework::{
    squared_distance, Configuration, EdgeLengthProfile, Framework, Point,
};
pub use graph::{Edge, Graph, VertexId};
pub use hyperplane::{hyperplane_through, Hyperplane};
pub use rational::{int, rat, Rational};

use thiserror::Error;

/// Errors raised by the exact layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vertex ids must be positive")]
    NonPositiveVertexId,
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: VertexId },
    #[error("edge endpoint {vertex} is not a vertex of the graph")]
    MissingEndpoint { vertex: VertexId },
    #[error("configuration must assign a point to exactly the graph's vertices")]
    VertexCoverMismatch,
    #[error("frameworks are defined on different graphs")]
    GraphMismatch,
    #[error("frameworks have different vertex sets")]
    VertexSetMismatch,
    #[error("affine map matrix is singular")]
    SingularMatrix,
    #[error("hyperplane normal must have a nonzero coordinate")]
    ZeroNormal,
    #[error("points affinely span dimension {found}, need {needed}")]
    AffineSpanTooSmall { found: usize, needed: usize },
    #[error("points affinely span the whole space, so no hyperplane contains them")]
    NotAHyperplane,
}
