//! Degree-one monotone lifts of orientation-preserving circle maps.
//!
//! A lift is represented canonically (value at 0 in `[0,1)`) plus an
//! integer representative shift. Projective maps of unimodular matrices
//! are evaluated through an exact rotation-stretch-rotation split, which
//! yields a globally continuous closed form with no branch decisions.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::{approx_f64, real, Real};
use crate::tolerances;

use super::LiftPoint;

/// Which circle a projectivized matrix acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProjectiveCover {
    /// The projective line: coordinate `x = (direction angle)/pi mod 1`.
    Line,
    /// The unit circle of direction vectors: `x = (direction angle)/(2 pi)`.
    /// This is the double cover of [`ProjectiveCover::Line`]; Schrödinger
    /// families use it so the rotation number anchors at 0 in the
    /// uniformly hyperbolic regime above the spectrum.
    Direction,
}

/// Projective action of a 2x2 matrix with determinant 1, split as
/// rotation(post) * diag(s1, s2) * rotation(pre) with `s1 >= s2 > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProjectiveLift<T> {
    /// Post-rotation angle divided by pi.
    post: T,
    /// Pre-rotation angle divided by pi.
    pre: T,
    s1: T,
    s2: T,
    cover: ProjectiveCover,
}

/// Splits a 2x2 matrix into rotation * diag(s1,s2) * rotation.
/// Returns (post angle, pre angle, s1, s2), angles in radians.
fn rotation_split<T: Real>(m: [[T; 2]; 2]) -> (T, T, T, T) {
    let half = real::<T>(0.5);
    let [[a, b], [c, d]] = m;
    let e = (a + d) * half;
    let f = (a - d) * half;
    let g = (c + b) * half;
    let h = (c - b) * half;
    let q = e.hypot(h);
    let r = f.hypot(g);
    let sum = h.atan2(e); // post + pre
    let dif = g.atan2(f); // post - pre
    ((sum + dif) * half, (sum - dif) * half, q + r, q - r)
}

impl<T: Real> ProjectiveLift<T> {
    /// Builds the projective lift of `m`; requires `det m = 1` within
    /// `1e-9`.
    pub fn new(m: [[T; 2]; 2], cover: ProjectiveCover) -> Result<Self> {
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if !det.is_finite()
            || (det - T::one()).abs() > real(tolerances::PROJECTIVIZE_DET_TOL)
        {
            return Err(Error::NotUnimodular {
                det: approx_f64(det),
            });
        }
        let (post, pre, s1, s2) = rotation_split(m);
        if !(s2 > T::zero()) {
            return Err(Error::NotUnimodular {
                det: approx_f64(det),
            });
        }
        Ok(Self {
            post: post / T::PI(),
            pre: pre / T::PI(),
            s1,
            s2,
            cover,
        })
    }

    /// Lift of the diagonal part: continuous, odd around every integer,
    /// fixing all half-integers.
    #[inline]
    fn stretch_lift(&self, z: T) -> T {
        let r = z.round();
        let w = z - r;
        let (sw, cw) = (T::PI() * w).sin_cos();
        r + (self.s2 * sw).atan2(self.s1 * cw) / T::PI()
    }

    /// Lift value before any representative shift.
    #[inline]
    pub fn eval(&self, x: T) -> T {
        match self.cover {
            ProjectiveCover::Line => self.post + self.stretch_lift(x + self.pre),
            ProjectiveCover::Direction => {
                (self.post + self.stretch_lift(x + x + self.pre)) * real(0.5)
            }
        }
    }

    /// Derivative of the lift; equals `1 / |m u|^2` at the corresponding
    /// input direction `u`.
    #[inline]
    pub fn derivative(&self, x: T) -> T {
        let w = match self.cover {
            ProjectiveCover::Line => x + self.pre,
            ProjectiveCover::Direction => x + x + self.pre,
        };
        let (sw, cw) = (T::PI() * w).sin_cos();
        let a = self.s1 * cw;
        let b = self.s2 * sw;
        (a * a + b * b).recip()
    }

    /// Largest derivative value, the squared operator norm of the matrix.
    pub fn max_derivative(&self) -> T {
        (self.s2 * self.s2).recip()
    }

    pub fn singular_values(&self) -> (T, T) {
        (self.s1, self.s2)
    }

    pub fn cover(&self) -> ProjectiveCover {
        self.cover
    }
}

/// A user-supplied circle-map lift tabulated on a grid of `[0,1]`.
///
/// The table must be strictly increasing; the final node is pinned to
/// `ys[0] + 1` so the degree-one seam is exact. Non-smooth maps declare
/// their Lipschitz data through the table slopes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TabulatedLift<T> {
    xs: Vec<T>,
    ys: Vec<T>,
    max_slope: T,
}

impl<T: Real> TabulatedLift<T> {
    pub fn new(xs: Vec<T>, mut ys: Vec<T>) -> Result<Self> {
        if xs.len() < 2 || xs.len() != ys.len() {
            return Err(Error::InvalidArgument(
                "tabulated lift needs matching xs/ys with at least two nodes".into(),
            ));
        }
        let eps = real::<T>(1e-9);
        if xs[0].abs() > eps || (xs[xs.len() - 1] - T::one()).abs() > eps {
            return Err(Error::InvalidArgument(
                "tabulated lift grid must span [0, 1]".into(),
            ));
        }
        if (ys[ys.len() - 1] - ys[0] - T::one()).abs() > eps {
            return Err(Error::InvalidArgument(
                "tabulated lift must satisfy y(1) = y(0) + 1 (degree one)".into(),
            ));
        }
        for w in xs.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::InvalidArgument(
                    "tabulated lift grid must be strictly increasing".into(),
                ));
            }
        }
        for w in ys.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::InvalidArgument(
                    "tabulated lift values must be strictly increasing (monotone map)".into(),
                ));
            }
        }
        let last = ys.len() - 1;
        ys[last] = ys[0] + T::one();
        let mut max_slope = T::zero();
        for i in 0..last {
            let s = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
            max_slope = max_slope.max(s);
        }
        Ok(Self { xs, ys, max_slope })
    }

    fn segment(&self, r: T) -> usize {
        // last i with xs[i] <= r
        match self
            .xs
            .binary_search_by(|x| x.partial_cmp(&r).expect("finite table"))
        {
            Ok(i) => i.min(self.xs.len() - 2),
            Err(i) => i.saturating_sub(1).min(self.xs.len() - 2),
        }
    }

    pub fn eval(&self, x: T) -> T {
        let fl = x.floor();
        let r = x - fl;
        let i = self.segment(r);
        let t = (r - self.xs[i]) / (self.xs[i + 1] - self.xs[i]);
        fl + self.ys[i] + t * (self.ys[i + 1] - self.ys[i])
    }

    /// Slope of the segment containing `x`; the declared Lipschitz data.
    pub fn slope(&self, x: T) -> T {
        let r = x - x.floor();
        let i = self.segment(r);
        (self.ys[i + 1] - self.ys[i]) / (self.xs[i + 1] - self.xs[i])
    }

    pub fn lipschitz(&self) -> T {
        self.max_slope
    }
}

/// The analytic form of a lift.
#[derive(Debug, Clone)]
pub enum LiftKind<T> {
    /// `x -> x + offset`.
    Rigid { offset: T },
    /// `x -> x + offset + amplitude * sin(2 pi (x + phase))`.
    Sine { offset: T, amplitude: T, phase: T },
    /// Projective action of a unimodular matrix.
    Projective(ProjectiveLift<T>),
    /// Piecewise-linear table.
    Tabulated(Arc<TabulatedLift<T>>),
}

/// A degree-one monotone lift `g: R -> R` of a circle homeomorphism,
/// carrying an integer representative shift.
#[derive(Debug, Clone)]
pub struct LiftMap<T> {
    kind: LiftKind<T>,
    shift: i64,
}

impl<T: Real> LiftMap<T> {
    pub fn rigid(offset: T) -> Self {
        Self {
            kind: LiftKind::Rigid { offset },
            shift: 0,
        }
    }

    /// Monotonicity requires `2 pi |amplitude| < 1`.
    pub fn sine(offset: T, amplitude: T, phase: T) -> Result<Self> {
        if real::<T>(2.0) * T::PI() * amplitude.abs() >= T::one() {
            return Err(Error::InvalidArgument(format!(
                "sine amplitude {amplitude} breaks monotonicity (need 2*pi*|amp| < 1)"
            )));
        }
        Ok(Self {
            kind: LiftKind::Sine {
                offset,
                amplitude,
                phase,
            },
            shift: 0,
        })
    }

    pub fn projective(lift: ProjectiveLift<T>) -> Self {
        Self {
            kind: LiftKind::Projective(lift),
            shift: 0,
        }
    }

    pub fn tabulated(table: Arc<TabulatedLift<T>>) -> Self {
        Self {
            kind: LiftKind::Tabulated(table),
            shift: 0,
        }
    }

    pub fn kind(&self) -> &LiftKind<T> {
        &self.kind
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    fn eval_kind(&self, x: T) -> T {
        match &self.kind {
            LiftKind::Rigid { offset } => x + *offset,
            LiftKind::Sine {
                offset,
                amplitude,
                phase,
            } => x + *offset + *amplitude * (real::<T>(2.0) * T::PI() * (x + *phase)).sin(),
            LiftKind::Projective(p) => p.eval(x),
            LiftKind::Tabulated(t) => t.eval(x),
        }
    }

    /// Lift value at `x`.
    pub fn eval(&self, x: T) -> T {
        self.eval_kind(x) + T::from_i64(self.shift).expect("shift fits the scalar")
    }

    /// Applies the lift to a turns/fraction point using the exact
    /// equivariance `g(x + k) = g(x) + k`.
    pub fn eval_point(&self, p: &LiftPoint<T>) -> Result<LiftPoint<T>> {
        let y = self.eval_kind(p.frac());
        let fl = y.floor();
        let k = fl
            .to_i64()
            .ok_or(Error::CoordinateOverflow)?;
        let mut frac = y - fl;
        if frac >= T::one() {
            frac = frac - T::one();
        }
        let out = LiftPoint::from_parts(p.turns() + self.shift + k, frac);
        out.check_turns()?;
        Ok(out)
    }

    /// Derivative (or declared slope) of the lift at `x`.
    pub fn derivative(&self, x: T) -> T {
        match &self.kind {
            LiftKind::Rigid { .. } => T::one(),
            LiftKind::Sine {
                amplitude, phase, ..
            } => {
                let two_pi = real::<T>(2.0) * T::PI();
                T::one() + two_pi * *amplitude * (two_pi * (x + *phase)).cos()
            }
            LiftKind::Projective(p) => p.derivative(x),
            LiftKind::Tabulated(t) => t.slope(x),
        }
    }

    /// Representative with value at 0 in `[0,1)`.
    pub fn canonical(&self) -> Self {
        let e0 = self.eval_kind(T::zero());
        let k = e0.floor().to_i64().unwrap_or(0);
        Self {
            kind: self.kind.clone(),
            shift: -k,
        }
    }

    /// Shifts the representative by `k` whole turns.
    pub fn shifted(&self, k: i64) -> Self {
        Self {
            kind: self.kind.clone(),
            shift: self.shift + k,
        }
    }
}
