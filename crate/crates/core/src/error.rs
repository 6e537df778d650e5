//! Error types shared by the whole crate.

use thiserror::Error;

/// Coarse failure class, used by callers (e.g. the CLI) to map errors to
/// exit statuses without matching on every variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Bad inputs or configuration: mismatched dimensions, missing orders,
    /// malformed files.
    Input,
    /// Numerical failure: non-finite state, quadrature or ODE refinement
    /// checks that did not reach their target.
    Numerical,
    /// A constructor or verifier rejected the data on a named admissibility
    /// condition.
    Admissibility,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("cutoff mismatch: {0} vs {1}")]
    CutoffMismatch(i32, i32),

    #[error("invalid dimension {0}: need d >= 2")]
    InvalidDimension(usize),

    #[error("invalid cutoff {0}: need M >= 1")]
    InvalidCutoff(i32),

    #[error("zero wavevector is not a valid mode of a mean-zero field")]
    ZeroMode,

    #[error("mode {0:?} exceeds the field cutoff {1}")]
    ModeOutsideCutoff(Vec<i32>, i32),

    #[error("wavevector {0:?} has {1} components, field dimension is {2}")]
    ModeDimension(Vec<i32>, usize, usize),

    #[error("coefficient list for mode {0:?} has wrong length")]
    CoefficientLength(Vec<i32>),

    #[error("duplicate mode {0:?} in field document")]
    DuplicateMode(Vec<i32>),

    #[error("field document stores both k and -k with non-conjugate values at {0:?}")]
    HermitianConflict(Vec<i32>),

    #[error("order {value} is not usable here: {reason}")]
    InvalidOrder { value: f64, reason: String },

    #[error("no inequality constants configured for (p, n) = ({p}, {n})")]
    MissingConstants { p: f64, n: f64 },

    #[error("constants table entry ({p}, {n}) has a nonpositive value")]
    NonPositiveConstant { p: f64, n: f64 },

    #[error("{what} requires data at order {order}, which was not recorded")]
    MissingOrder { what: &'static str, order: f64 },

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid estimator set: {0}")]
    InvalidEstimators(String),

    #[error("non-finite state at t = {t}; last finite time {t_last}")]
    NonFiniteState { t: f64, t_last: f64 },

    #[error("{what}: refinement check reached {achieved:.3e}, target {target:.3e}; the grid is too coarse")]
    Refinement {
        what: &'static str,
        achieved: f64,
        target: f64,
    },

    #[error("rejected: {condition}")]
    Rejected { condition: String },

    #[error("field is not a Laplacian eigenfield: modes span shells {0:?}")]
    NotAnEigenfield(Vec<f64>),

    #[error("pair failed verification: {0}")]
    UnverifiedPair(String),

    #[error("trajectory is not certified decaying; refusing to extrapolate a decay budget")]
    NotDecaying,

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("toml: {0}")]
    Toml(#[from] toml::de::Error),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            NonFiniteState { .. } | Refinement { .. } => ErrorClass::Numerical,
            Rejected { .. } | NotAnEigenfield(_) | UnverifiedPair(_) | NotDecaying => {
                ErrorClass::Admissibility
            }
            _ => ErrorClass::Input,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
