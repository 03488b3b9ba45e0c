//! Error type shared by the whole crate.

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A base-system state is outside its state space (e.g. a rotation
    /// coordinate not in `[0,1)`).
    #[error("invalid base state: {0}")]
    InvalidState(String),

    /// A parameter fell outside the family interval.
    #[error("parameter {value} is outside the family interval [{min}, {max}]")]
    ParameterOutOfRange { value: f64, min: f64, max: f64 },

    /// An observable produced a non-finite value along an orbit.
    #[error("observable returned a non-finite value at orbit index {index}")]
    NonFiniteObservable { index: u64 },

    /// A derivative scan hit a non-finite value.
    #[error("non-finite derivative encountered while scanning {context}")]
    NonFiniteDerivative { context: String },

    /// The lift coordinate accumulated too many whole turns for exact
    /// bookkeeping.
    #[error("lift coordinate exceeded 2^52 whole turns; restart the orbit from a renormalized point")]
    CoordinateOverflow,

    /// A matrix that must lie in SL(2,R) does not.
    #[error("matrix determinant {det} differs from 1 beyond tolerance")]
    NotUnimodular { det: f64 },

    /// The closeness assumptions of the step/segment checks fail: they
    /// require `C*|a' - a| < 0.1` and `|a' - a| < C`.
    #[error(
        "step-bound precondition violated: need C*|a'-a| < 0.1 and |a'-a| < C, \
         got C*|a'-a| = {delta}, |a'-a| = {gap}, C = {c}"
    )]
    StepBoundPrecondition { delta: f64, gap: f64, c: f64 },

    /// Invalid run configuration (bad grids, missing anchors, ...).
    #[error("configuration error: {0}")]
    Config(String),

    /// A precondition on an operation argument failed.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// I/O failure while reading or writing artifacts.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// Malformed serialized data.
    #[error("parse error: {0}")]
    Parse(String),
}

/// Crate-wide result alias.
pub type Result<T, E = Error> = std::result::Result<T, E>;
