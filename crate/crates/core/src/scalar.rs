//! Scalar abstraction for the floating-point side of the crate.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive, Zero};
use twofloat::TwoFloat;

use crate::rational::Rational;

/// A real floating-point scalar with exact conversions to and from
/// [`Rational`].
pub trait Real: Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static {
    /// Relative spacing of the format (half an ulp at 1).
    fn unit_roundoff() -> Self;

    /// Default relative width for certified root intervals.
    fn default_root_tol() -> Self;

    /// Default absolute tolerance (before scaling) for merging root clusters.
    fn default_cluster_tol() -> Self;

    /// Nearest representable value.
    fn from_rational(r: &Rational) -> Self;

    /// Exact rational value, `None` for NaN or infinities.
    fn to_rational(self) -> Option<Rational>;

    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count fits the format")
    }
}

impl Real for f64 {
    fn unit_roundoff() -> Self {
        f64::EPSILON / 2.0
    }

    fn default_root_tol() -> Self {
        1e-14
    }

    fn default_cluster_tol() -> Self {
        1e-8
    }

    fn from_rational(r: &Rational) -> Self {
        rational_to_f64(r)
    }

    fn to_rational(self) -> Option<Rational> {
        Rational::from_float(self)
    }
}

impl Real for f32 {
    fn unit_roundoff() -> Self {
        f32::EPSILON / 2.0
    }

    fn default_root_tol() -> Self {
        1e-6
    }

    fn default_cluster_tol() -> Self {
        1e-3
    }

    fn from_rational(r: &Rational) -> Self {
        rational_to_f64(r) as f32
    }

    fn to_rational(self) -> Option<Rational> {
        Rational::from_float(self)
    }
}

impl Real for TwoFloat {
    fn unit_roundoff() -> Self {
        TwoFloat::from(2f64.powi(-105))
    }

    fn default_root_tol() -> Self {
        TwoFloat::from(1e-28)
    }

    fn default_cluster_tol() -> Self {
        TwoFloat::from(1e-16)
    }

    fn from_rational(r: &Rational) -> Self {
        let hi = rational_to_f64(r);
        if !hi.is_finite() {
            return TwoFloat::from(hi);
        }
        let rest = r - Rational::from_float(hi).expect("finite");
        TwoFloat::from(hi) + TwoFloat::from(rational_to_f64(&rest))
    }

    // `FromPrimitive::from_f64` in twofloat truncates toward an integer.
    fn lit(x: f64) -> Self {
        TwoFloat::from(x)
    }

    fn from_count(n: usize) -> Self {
        TwoFloat::from(n as f64)
    }

    fn to_rational(self) -> Option<Rational> {
        let hi = Rational::from_float(self.hi())?;
        let lo = Rational::from_float(self.lo())?;
        Some(hi + lo)
    }
}

fn rational_to_f64(r: &Rational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    r.to_f64().unwrap_or_else(|| {
        // Only reached for magnitudes far outside the f64 range.
        let ln = crate::rational::ln_abs_big(r.numer()) - crate::rational::ln_abs_big(r.denom());
        let sign = if r.numer() < &BigInt::zero() { -1.0 } else { 1.0 };
        sign * ln.exp()
    })
}
