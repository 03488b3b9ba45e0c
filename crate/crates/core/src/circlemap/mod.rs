//! Lifts of circle homeomorphisms, cocycle families over an ergodic base,
//! and rotation-number estimation.

mod family;
mod lift;
mod rotation;

pub use family::{CocycleFamily, FamilyKind};
pub use lift::{LiftKind, LiftMap, ProjectiveCover, ProjectiveLift, TabulatedLift};
pub use rotation::{
    compose_lift, lipschitz_bound, parameter_bound, rotation_difference, rotation_number,
    rotation_sweep, rotation_sweep_checkpoints, RotationEstimate,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::{approx_f64, real, Real};
use crate::tolerances;

/// A closed parameter interval `[min, max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval<T> {
    pub min: T,
    pub max: T,
}

impl<T: Real> Interval<T> {
    pub fn new(min: T, max: T) -> Result<Self> {
        if !(min.is_finite() && max.is_finite() && min <= max) {
            return Err(Error::InvalidArgument(format!(
                "invalid interval [{min}, {max}]"
            )));
        }
        Ok(Self { min, max })
    }

    pub fn width(&self) -> T {
        self.max - self.min
    }

    /// Membership up to a relative slack, so grid endpoints produced by
    /// repeated addition still count as inside.
    pub fn contains(&self, value: T) -> bool {
        let slack = real::<T>(tolerances::INTERVAL_MEMBER_TOL)
            * (T::one() + self.width().abs() + self.min.abs() + self.max.abs());
        value >= self.min - slack && value <= self.max + slack
    }

    pub(crate) fn require(&self, value: T) -> Result<()> {
        if self.contains(value) {
            Ok(())
        } else {
            Err(Error::ParameterOutOfRange {
                value: approx_f64(value),
                min: approx_f64(self.min),
                max: approx_f64(self.max),
            })
        }
    }
}

/// A point on the real line stored as whole turns plus a fractional part
/// in `[0,1)`, so long lifted orbits keep full precision in the fraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiftPoint<T> {
    turns: i64,
    frac: T,
}

impl<T: Real> LiftPoint<T> {
    /// Splits a coordinate into turns and fraction.
    pub fn new(x: T) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "lift coordinate {x} is not finite"
            )));
        }
        let fl = x.floor();
        let turns = fl
            .to_i64()
            .filter(|t| t.abs() < tolerances::MAX_TURNS)
            .ok_or(Error::CoordinateOverflow)?;
        let mut frac = x - fl;
        if frac >= T::one() {
            // only possible through rounding at huge magnitudes
            frac = frac - T::one();
        }
        Ok(Self { turns, frac })
    }

    pub(crate) fn from_parts(turns: i64, frac: T) -> Self {
        debug_assert!(frac >= T::zero() && frac < T::one());
        Self { turns, frac }
    }

    pub fn turns(&self) -> i64 {
        self.turns
    }

    pub fn frac(&self) -> T {
        self.frac
    }

    /// The coordinate as a scalar (loses precision beyond 2^53 turns).
    pub fn value(&self) -> T {
        T::from_i64(self.turns).expect("turn count fits the scalar") + self.frac
    }

    /// Exact difference `self - other` as a scalar; the integer parts
    /// cancel exactly.
    pub fn diff(&self, other: &Self) -> T {
        T::from_i64(self.turns - other.turns).expect("turn gap fits the scalar")
            + (self.frac - other.frac)
    }

    /// Shifts by a whole number of turns.
    pub fn shifted(&self, k: i64) -> Self {
        Self {
            turns: self.turns + k,
            frac: self.frac,
        }
    }

    pub(crate) fn check_turns(&self) -> Result<()> {
        if self.turns.abs() >= tolerances::MAX_TURNS {
            Err(Error::CoordinateOverflow)
        } else {
            Ok(())
        }
    }
}

impl<T: Real> PartialOrd for LiftPoint<T> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        match self.turns.cmp(&other.turns) {
            std::cmp::Ordering::Equal => self.frac.partial_cmp(&other.frac),
            ord => Some(ord),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lift_point_decomposition() {
        let p = LiftPoint::new(3.25f64).unwrap();
        assert_eq!(p.turns(), 3);
        assert_eq!(p.frac(), 0.25);
        assert_eq!(p.value(), 3.25);
        let q = LiftPoint::new(-1.75f64).unwrap();
        assert_eq!(q.turns(), -2);
        assert_eq!(q.frac(), 0.25);
        assert_eq!(p.diff(&q), 5.0);
    }

    #[test]
    fn lift_point_rejects_non_finite_and_huge() {
        assert!(LiftPoint::new(f64::NAN).is_err());
        assert!(LiftPoint::new(2f64.powi(60)).is_err());
    }

    #[test]
    fn interval_membership_has_slack() {
        let j = Interval::new(0.0f64, 1.0).unwrap();
        assert!(j.contains(1.0 + 1e-13));
        assert!(!j.contains(1.1));
        assert!(j.require(2.0).is_err());
    }
}
