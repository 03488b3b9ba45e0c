//! Numerical tolerances shared across the crate.
//!
//! Each constant is pinned here so tests and certificates agree on the
//! exact slack they allow.

/// Acceptable departure of a transfer-matrix determinant from 1.
pub const DET_TOL: f64 = 1e-12;

/// Determinant tolerance for projectivizing a general matrix.
pub const PROJECTIVIZE_DET_TOL: f64 = 1e-9;

/// Slack allowed when checking the step/segment inequalities (they are
/// theorems; anything beyond this is an implementation bug).
pub const INEQUALITY_SLACK: f64 = 1e-9;

/// Slack used when comparing the two lifted orbits at a crossing, so a
/// translation by a decimal parameter crosses at the analytic step.
pub const CROSSING_SLACK: f64 = 1e-9;

/// Pivot guard for the tridiagonal inertia recursion; an exact zero pivot
/// is replaced by this magnitude with the sign it was heading to.
pub const PIVOT_GUARD: f64 = 1e-300;

/// A grid endpoint is included when the span divided by the step is this
/// close to an integer.
pub const GRID_END_TOL: f64 = 1e-9;

/// Rotation angles closer than this to a small rational trigger a
/// rationality warning.
pub const RATIONAL_ALPHA_TOL: f64 = 1e-12;

/// Largest denominator scanned by the rationality warning.
pub const RATIONAL_MAX_DEN: u64 = 1000;

/// Tolerance when testing membership of a parameter in the family
/// interval, relative to the interval width.
pub const INTERVAL_MEMBER_TOL: f64 = 1e-12;

/// Above this many whole turns the lift coordinate no longer resolves
/// increments of one and the orbit must be renormalized.
pub const MAX_TURNS: i64 = 1 << 52;
