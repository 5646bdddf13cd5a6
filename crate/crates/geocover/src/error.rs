//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Two segments share a sub-segment; the perturbation magnitude was too
    /// small to separate them.
    #[error("segments overlap along a shared sub-segment after perturbation")]
    DegenerateOverlap,

    /// A degenerate configuration survived the perturbation pass.
    #[error("degeneracy unresolved: {0}")]
    DegeneracyUnresolved(String),

    /// The affine transform of a disk prototype is not invertible.
    #[error("affine transform is singular (|det| below epsilon)")]
    SingularTransform,

    /// A convex-only path received a non-convex prototype.
    #[error("prototype is not convex")]
    NotConvex,

    /// Polygon input violates the shape invariants.
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    /// The canonical translates fail to cover some input point; indicates a
    /// reporter bug upstream.
    #[error("point {0} is not covered by any translate")]
    UncoveredPoint(usize),

    /// Instance exceeds a brute-force or solver cap.
    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
