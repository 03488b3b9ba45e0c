//! Ergodic base dynamics.
//!
//! A [`BaseSystem`] is one of a small catalog of ergodic transformations
//! together with its invariant measure: circle rotations, torus shifts,
//! the doubling map, two-sided iid symbol shifts, and the Fibonacci
//! substitution subshift realized through its rotation coding. The module
//! provides orbit generation and Birkhoff (time) averages of observables.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::{approx_f64, real, real_of, Real};
use crate::rng;
use crate::tolerances;

/// Distribution of one symbol of an iid shift.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum IidDistribution<T> {
    /// `1` with probability `p`, `0` otherwise.
    Bernoulli { p: T },
    /// Uniform on `[lo, hi)`.
    Uniform { lo: T, hi: T },
}

impl<T: Real> IidDistribution<T> {
    /// Deterministic sample of the stream `seed` at position `index`.
    pub fn sample_at(&self, seed: u64, index: i64) -> T {
        let u: T = real(rng::unit_f64(rng::stream_u64(seed, index)));
        match self {
            IidDistribution::Bernoulli { p } => {
                if u < *p {
                    T::one()
                } else {
                    T::zero()
                }
            }
            IidDistribution::Uniform { lo, hi } => *lo + u * (*hi - *lo),
        }
    }

    /// Exact mean of the distribution.
    pub fn mean(&self) -> T {
        match self {
            IidDistribution::Bernoulli { p } => *p,
            IidDistribution::Uniform { lo, hi } => (*lo + *hi) / real(2.0),
        }
    }

    /// Largest absolute value the distribution can produce.
    pub fn sup_abs(&self) -> T {
        match self {
            IidDistribution::Bernoulli { .. } => T::one(),
            IidDistribution::Uniform { lo, hi } => lo.abs().max(hi.abs()),
        }
    }
}

/// The transformation catalog.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum BaseKind<T> {
    /// Rotation of the circle by `alpha` in `(0,1)`.
    Rotation { alpha: T },
    /// Componentwise rotation of a torus.
    TorusShift { alphas: Vec<T> },
    /// `theta -> 2 theta mod 1`. Floating-point orbits of this map collapse
    /// onto `0` after about the mantissa width; it is kept for exact
    /// small-step experiments.
    Doubling,
    /// Two-sided iid symbol shift. Orbits are a pure function of
    /// `(seed, index)`, so regeneration is bit-for-bit.
    IidShift { dist: IidDistribution<T>, seed: u64 },
    /// Fibonacci substitution subshift, realized by the rotation coding
    /// `symbol(n) = [frac(n*alpha) >= 1 - alpha]` with `alpha = (sqrt 5 - 1)/2`.
    Fibonacci,
}

/// A point of the state space of a [`BaseSystem`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum BasePoint<T> {
    /// Circle coordinate in `[0,1)`.
    Angle(T),
    /// Torus coordinates, each in `[0,1)`.
    Torus(Vec<T>),
    /// Position `index` of the iid stream `seed`.
    Stream { seed: u64, index: i64 },
}

impl<T: Real> BasePoint<T> {
    fn check_angle(theta: T) -> Result<()> {
        if theta.is_finite() && theta >= T::zero() && theta < T::one() {
            Ok(())
        } else {
            Err(Error::InvalidState(format!(
                "circle coordinate {theta} is not in [0,1)"
            )))
        }
    }
}

/// Finds the best rational approximation `p/q` of `alpha` with `q <= max_den`,
/// by walking the continued-fraction convergents.
pub fn nearest_rational(alpha: f64, max_den: u64) -> (i64, u64) {
    let (mut p0, mut q0, mut p1, mut q1) = (1i64, 0u64, alpha.floor() as i64, 1u64);
    let mut x = alpha;
    loop {
        let fl = x.floor();
        x -= fl;
        if x < 1e-15 {
            break;
        }
        x = 1.0 / x;
        let a = x.floor() as i64;
        let q2 = q1.checked_mul(a as u64).and_then(|v| v.checked_add(q0));
        match q2 {
            Some(q2) if q2 <= max_den => {
                let p2 = a * p1 + p0;
                p0 = p1;
                q0 = q1;
                p1 = p2;
                q1 = q2;
            }
            _ => {
                // best semiconvergent still within the denominator budget
                let a_max = (max_den - q0) / q1;
                if a_max > 0 {
                    let pc = a_max as i64 * p1 + p0;
                    let qc = a_max * q1 + q0;
                    if (alpha - pc as f64 / qc as f64).abs() < (alpha - p1 as f64 / q1 as f64).abs()
                    {
                        return (pc, qc);
                    }
                }
                break;
            }
        }
    }
    (p1, q1)
}

/// An ergodic base system: a transformation with its invariant measure,
/// a sampler of typical points, and seeded deterministic orbits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaseSystem<T> {
    kind: BaseKind<T>,
}

impl<T: Real> BaseSystem<T> {
    /// Circle rotation by `alpha`. Emits a warning when `alpha` is within
    /// `1e-12` of a rational with denominator at most 1000, since the
    /// ergodic theory silently assumed everywhere needs an irrational angle.
    pub fn rotation(alpha: T) -> Result<Self> {
        if !(alpha > T::zero() && alpha < T::one()) {
            return Err(Error::InvalidState(format!(
                "rotation angle {alpha} must lie in (0,1)"
            )));
        }
        let a = approx_f64(alpha);
        let (p, q) = nearest_rational(a, tolerances::RATIONAL_MAX_DEN);
        if q > 0 && (a - p as f64 / q as f64).abs() < tolerances::RATIONAL_ALPHA_TOL {
            log::warn!(
                "rotation angle {a} is within {} of {p}/{q}; orbits will be (nearly) periodic",
                tolerances::RATIONAL_ALPHA_TOL
            );
        }
        Ok(Self {
            kind: BaseKind::Rotation { alpha },
        })
    }

    /// Torus shift by the vector `alphas`.
    pub fn torus_shift(alphas: Vec<T>) -> Result<Self> {
        if alphas.is_empty() {
            return Err(Error::InvalidState("torus shift needs at least one angle".into()));
        }
        for &a in &alphas {
            if !(a > T::zero() && a < T::one()) {
                return Err(Error::InvalidState(format!(
                    "torus angle {a} must lie in (0,1)"
                )));
            }
        }
        Ok(Self {
            kind: BaseKind::TorusShift { alphas },
        })
    }

    /// The doubling map.
    pub fn doubling() -> Self {
        Self {
            kind: BaseKind::Doubling,
        }
    }

    /// Two-sided iid shift with the given symbol distribution and stream seed.
    pub fn iid_shift(dist: IidDistribution<T>, seed: u64) -> Self {
        Self {
            kind: BaseKind::IidShift { dist, seed },
        }
    }

    /// Fibonacci substitution subshift via its rotation coding.
    pub fn fibonacci() -> Self {
        Self {
            kind: BaseKind::Fibonacci,
        }
    }

    /// Golden rotation angle `(sqrt 5 - 1)/2` used by the Fibonacci coding.
    pub fn golden_angle() -> T {
        (real::<T>(5.0).sqrt() - T::one()) / real(2.0)
    }

    pub fn kind(&self) -> &BaseKind<T> {
        &self.kind
    }

    /// Dimension of the state space (symbolic systems count as 1).
    pub fn state_dimension(&self) -> usize {
        match &self.kind {
            BaseKind::TorusShift { alphas } => alphas.len(),
            _ => 1,
        }
    }

    /// Checks that a point belongs to this system's state space.
    pub fn validate_point(&self, point: &BasePoint<T>) -> Result<()> {
        match (&self.kind, point) {
            (BaseKind::Rotation { .. }, BasePoint::Angle(t))
            | (BaseKind::Doubling, BasePoint::Angle(t))
            | (BaseKind::Fibonacci, BasePoint::Angle(t)) => BasePoint::check_angle(*t),
            (BaseKind::TorusShift { alphas }, BasePoint::Torus(ts)) => {
                if ts.len() != alphas.len() {
                    return Err(Error::InvalidState(format!(
                        "torus point has dimension {}, system has {}",
                        ts.len(),
                        alphas.len()
                    )));
                }
                ts.iter().try_for_each(|&t| BasePoint::check_angle(t))
            }
            (BaseKind::IidShift { .. }, BasePoint::Stream { .. }) => Ok(()),
            _ => Err(Error::InvalidState(
                "base point kind does not match the system".into(),
            )),
        }
    }

    /// One step of the transformation. Circle coordinates are reduced
    /// mod 1 after every step so they never drift out of `[0,1)`.
    pub fn step(&self, point: &BasePoint<T>) -> BasePoint<T> {
        match (&self.kind, point) {
            (BaseKind::Rotation { alpha }, BasePoint::Angle(t)) => {
                BasePoint::Angle(wrap_unit(*t + *alpha))
            }
            (BaseKind::Fibonacci, BasePoint::Angle(t)) => {
                BasePoint::Angle(wrap_unit(*t + Self::golden_angle()))
            }
            (BaseKind::Doubling, BasePoint::Angle(t)) => BasePoint::Angle(wrap_unit(*t + *t)),
            (BaseKind::TorusShift { alphas }, BasePoint::Torus(ts)) => BasePoint::Torus(
                ts.iter()
                    .zip(alphas)
                    .map(|(&t, &a)| wrap_unit(t + a))
                    .collect(),
            ),
            (BaseKind::IidShift { .. }, BasePoint::Stream { seed, index }) => BasePoint::Stream {
                seed: *seed,
                index: index + 1,
            },
            _ => point.clone(),
        }
    }

    /// Draws a point that is typical for the invariant measure: uniform on
    /// the circle/torus, a fresh two-sided stream for iid shifts.
    pub fn sample_point(&self, seed: u64) -> BasePoint<T> {
        match &self.kind {
            BaseKind::Rotation { .. } | BaseKind::Doubling | BaseKind::Fibonacci => {
                BasePoint::Angle(real(rng::unit_f64(rng::stream_u64(
                    rng::derive_seed(seed, 0x0A),
                    0,
                ))))
            }
            BaseKind::TorusShift { alphas } => {
                let s = rng::derive_seed(seed, 0x0B);
                BasePoint::Torus(
                    (0..alphas.len())
                        .map(|i| real(rng::unit_f64(rng::stream_u64(s, i as i64))))
                        .collect(),
                )
            }
            BaseKind::IidShift { seed: base, .. } => BasePoint::Stream {
                seed: rng::derive_seed(*base, seed),
                index: 0,
            },
        }
    }

    /// The natural coordinate of a point: the circle coordinate, the first
    /// torus coordinate, or the current symbol of an iid stream.
    pub fn coordinate(&self, point: &BasePoint<T>) -> T {
        match (&self.kind, point) {
            (_, BasePoint::Angle(t)) => *t,
            (_, BasePoint::Torus(ts)) => ts[0],
            (BaseKind::IidShift { dist, .. }, BasePoint::Stream { seed, index }) => {
                dist.sample_at(*seed, *index)
            }
            _ => T::zero(),
        }
    }

    /// Fibonacci coding symbol of a circle coordinate.
    pub fn fibonacci_symbol(theta: T) -> T {
        if theta >= T::one() - Self::golden_angle() {
            T::one()
        } else {
            T::zero()
        }
    }
}

/// Reduces a coordinate in `[0,2)` back to `[0,1)`; exact when the input is.
#[inline]
pub(crate) fn wrap_unit<T: Real>(t: T) -> T {
    if t >= T::one() {
        t - T::one()
    } else {
        t
    }
}

/// Integrability promise carried by an [`Observable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Integrability {
    /// Finite on the whole state space.
    Bounded,
    /// Only the log-moment is asserted finite; values may be large.
    LogIntegrableAsserted,
}

/// A real-valued function on the base, with its integrability tag.
#[derive(Clone)]
pub struct Observable<T> {
    eval: Arc<dyn Fn(&BasePoint<T>) -> T + Send + Sync>,
    integrability: Integrability,
}

impl<T> fmt::Debug for Observable<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Observable")
            .field("integrability", &self.integrability)
            .finish()
    }
}

impl<T: Real> Observable<T> {
    pub fn new(
        integrability: Integrability,
        eval: impl Fn(&BasePoint<T>) -> T + Send + Sync + 'static,
    ) -> Self {
        Self {
            eval: Arc::new(eval),
            integrability,
        }
    }

    /// The constant observable.
    pub fn constant(c: T) -> Self {
        Self::new(Integrability::Bounded, move |_| c)
    }

    /// `sin(2 pi theta)` of the natural coordinate.
    pub fn sine(sys: &BaseSystem<T>) -> Self {
        let sys = sys.clone();
        Self::new(Integrability::Bounded, move |p| {
            (real::<T>(2.0) * T::PI() * sys.coordinate(p)).sin()
        })
    }

    /// The natural coordinate itself (the identity symbol for iid shifts).
    pub fn coordinate(sys: &BaseSystem<T>) -> Self {
        let sys = sys.clone();
        Self::new(Integrability::Bounded, move |p| sys.coordinate(p))
    }

    pub fn integrability(&self) -> Integrability {
        self.integrability
    }

    pub fn eval(&self, point: &BasePoint<T>) -> T {
        (self.eval)(point)
    }
}

/// First `n` points of the orbit of `start`: `start, sigma(start), ...`.
pub fn orbit<T: Real>(
    sys: &BaseSystem<T>,
    start: &BasePoint<T>,
    n: u64,
) -> Result<Vec<BasePoint<T>>> {
    if n == 0 {
        return Err(Error::InvalidArgument("orbit length must be >= 1".into()));
    }
    sys.validate_point(start)?;
    let mut out = Vec::with_capacity(n as usize);
    let mut p = start.clone();
    for _ in 0..n {
        let next = sys.step(&p);
        out.push(p);
        p = next;
    }
    Ok(out)
}

/// Birkhoff average `(1/n) sum_{k=0}^{n-1} phi(sigma^k start)`.
///
/// Uses compensated summation so constant observables average exactly.
pub fn birkhoff_average<T: Real>(
    sys: &BaseSystem<T>,
    phi: &Observable<T>,
    start: &BasePoint<T>,
    n: u64,
) -> Result<T> {
    if n == 0 {
        return Err(Error::InvalidArgument("average needs n >= 1".into()));
    }
    sys.validate_point(start)?;
    let mut sum = T::zero();
    let mut comp = T::zero();
    let mut p = start.clone();
    for k in 0..n {
        let v = phi.eval(&p);
        if !v.is_finite() {
            return Err(Error::NonFiniteObservable { index: k });
        }
        // Kahan step
        let y = v - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        p = sys.step(&p);
    }
    Ok(sum / real_of(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt2m1() -> f64 {
        2f64.sqrt() - 1.0
    }

    #[test]
    fn rotation_orbit_matches_definition() {
        let sys = BaseSystem::rotation(sqrt2m1()).unwrap();
        let orb = orbit(&sys, &BasePoint::Angle(0.0), 3).unwrap();
        let a = sqrt2m1();
        let expect = [0.0, a, (2.0 * a) % 1.0];
        for (p, e) in orb.iter().zip(expect) {
            match p {
                BasePoint::Angle(t) => assert!((t - e).abs() < 1e-15, "{t} vs {e}"),
                _ => panic!("wrong point kind"),
            }
        }
    }

    #[test]
    fn doubling_orbit_example() {
        let sys = BaseSystem::<f64>::doubling();
        let orb = orbit(&sys, &BasePoint::Angle(0.25), 3).unwrap();
        assert_eq!(
            orb,
            vec![
                BasePoint::Angle(0.25),
                BasePoint::Angle(0.5),
                BasePoint::Angle(0.0)
            ]
        );
    }

    #[test]
    fn iid_orbits_are_bit_for_bit_reproducible() {
        let sys = BaseSystem::iid_shift(IidDistribution::<f64>::Bernoulli { p: 0.5 }, 42);
        let w0 = sys.sample_point(9);
        let o1 = orbit(&sys, &w0, 64).unwrap();
        let o2 = orbit(&sys, &w0, 64).unwrap();
        assert_eq!(o1, o2);
        let v1: Vec<f64> = o1.iter().map(|p| sys.coordinate(p)).collect();
        let v2: Vec<f64> = o2.iter().map(|p| sys.coordinate(p)).collect();
        assert_eq!(v1, v2);
        assert!(v1.iter().any(|&v| v == 0.0) && v1.iter().any(|&v| v == 1.0));
    }

    #[test]
    fn orbit_semigroup_property_is_exact() {
        let systems: Vec<BaseSystem<f64>> = vec![
            BaseSystem::rotation(sqrt2m1()).unwrap(),
            BaseSystem::doubling(),
            BaseSystem::iid_shift(IidDistribution::Uniform { lo: -1.0, hi: 1.0 }, 3),
            BaseSystem::fibonacci(),
        ];
        for sys in systems {
            let w0 = sys.sample_point(17);
            let (n, m) = (23u64, 41u64);
            let long = orbit(&sys, &w0, n + m).unwrap();
            let head = orbit(&sys, &w0, n).unwrap();
            let mid = sys.step(&long[(n - 1) as usize]);
            let tail = orbit(&sys, &mid, m).unwrap();
            assert_eq!(&long[..n as usize], &head[..]);
            assert_eq!(&long[n as usize..], &tail[..]);
        }
    }

    #[test]
    fn invalid_states_are_rejected() {
        let sys = BaseSystem::rotation(sqrt2m1()).unwrap();
        assert!(orbit(&sys, &BasePoint::Angle(1.5), 3).is_err());
        assert!(orbit(&sys, &BasePoint::Angle(-0.1), 3).is_err());
        assert!(orbit(&sys, &BasePoint::Stream { seed: 0, index: 0 }, 3).is_err());
        assert!(orbit(&sys, &BasePoint::Angle(0.0), 0).is_err());
        assert!(BaseSystem::rotation(0.0f64).is_err());
    }

    #[test]
    fn constant_average_is_exact() {
        let sys = BaseSystem::rotation(sqrt2m1()).unwrap();
        let c = 0.6931471805599453f64;
        let avg = birkhoff_average(&sys, &Observable::constant(c), &BasePoint::Angle(0.3), 1000)
            .unwrap();
        assert_eq!(avg, c);
    }

    #[test]
    fn sine_average_vanishes_by_unique_ergodicity() {
        // oracle: integral of sin(2 pi theta) over [0,1) is 0
        let sys = BaseSystem::rotation(sqrt2m1()).unwrap();
        let avg = birkhoff_average(&sys, &Observable::sine(&sys), &BasePoint::Angle(0.0), 1_000_000)
            .unwrap();
        assert!(avg.abs() < 1e-3, "average {avg}");
    }

    #[test]
    fn bernoulli_symbol_average_matches_mean() {
        // oracle: exact mean of Bernoulli(1/2) is 0.5
        let sys = BaseSystem::iid_shift(IidDistribution::<f64>::Bernoulli { p: 0.5 }, 42);
        let w0 = sys.sample_point(0);
        let avg =
            birkhoff_average(&sys, &Observable::coordinate(&sys), &w0, 1_000_000).unwrap();
        assert!((avg - 0.5).abs() < 5e-3, "average {avg}");
    }

    #[test]
    fn birkhoff_cauchy_trend() {
        let sys = BaseSystem::rotation(sqrt2m1()).unwrap();
        let phi = Observable::sine(&sys);
        let w0 = BasePoint::Angle(0.12);
        let mut gaps = Vec::new();
        for &n in &[1000u64, 2000, 4000, 8000] {
            let a = birkhoff_average(&sys, &phi, &w0, n).unwrap();
            let b = birkhoff_average(&sys, &phi, &w0, 2 * n).unwrap();
            gaps.push((a - b).abs());
        }
        assert!(gaps.last().unwrap() < gaps.first().unwrap());
    }

    #[test]
    fn non_finite_observable_names_the_index() {
        let sys = BaseSystem::<f64>::doubling();
        let phi = Observable::new(Integrability::Bounded, |p: &BasePoint<f64>| match p {
            BasePoint::Angle(t) if *t == 0.5 => f64::INFINITY,
            _ => 1.0,
        });
        let err = birkhoff_average(&sys, &phi, &BasePoint::Angle(0.25), 10).unwrap_err();
        match err {
            Error::NonFiniteObservable { index } => assert_eq!(index, 1),
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn rationality_detector_finds_small_denominators() {
        assert_eq!(nearest_rational(0.5, 1000), (1, 2));
        assert_eq!(nearest_rational(2.0 / 7.0, 1000), (2, 7));
        // golden-type angles stay far from all small rationals
        let a = 2f64.sqrt() - 1.0;
        let (p, q) = nearest_rational(a, 1000);
        assert!((a - p as f64 / q as f64).abs() > 1e-12);
    }

    #[test]
    fn fibonacci_coding_produces_fibonacci_words() {
        let sys = BaseSystem::<f64>::fibonacci();
        let w0 = BasePoint::Angle(0.0);
        let orb = orbit(&sys, &w0, 13).unwrap();
        let word: Vec<u8> = orb
            .iter()
            .map(|p| BaseSystem::fibonacci_symbol(sys.coordinate(p)) as u8)
            .collect();
        // the two-letter substitution word contains no "11" and no "000"
        for w in word.windows(2) {
            assert!(!(w[0] == 1 && w[1] == 1), "word {word:?}");
        }
        for w in word.windows(3) {
            assert!(w.iter().any(|&s| s == 1), "word {word:?}");
        }
    }
}
