use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension {0} out of supported range 1..=4")]
    BadDimension(usize),
    #[error("axis {axis} out of range for a {dim}-dimensional grid")]
    AxisOutOfRange { axis: usize, dim: usize },
    #[error("grid needs at least 4 points per axis, got {0}")]
    TooFewPoints(usize),
    #[error("grid bounds reversed or degenerate on axis {0}")]
    BadBounds(usize),
    #[error("field has {got} components, expected {expected}")]
    ComponentMismatch { expected: usize, got: usize },
    #[error("point lies on the singular set of the field")]
    SingularPoint,
    #[error("unknown profile name `{0}`")]
    UnknownProfile(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("contour sampling too coarse: max phase increment {0:.3} rad")]
    Undersampled(f64),
    #[error("rotation sample departs from orthogonality by {0:.3e}")]
    NotARotation(f64),
    #[error("time step {dt} violates the stability bound {limit}")]
    CflViolation { dt: f64, limit: f64 },
    #[error("boundary values still moving; sector charge undefined (edge slope {0:.3e})")]
    UnsettledBoundary(f64),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
