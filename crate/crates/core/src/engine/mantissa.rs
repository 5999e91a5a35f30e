//! Base-`b` mantissas (significands) in `[1, b)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{ln_abs_big, Rational};
use crate::scalar::Real;

pub fn check_base(b: u64) -> Result<()> {
    if b < 2 {
        return Err(Error::InvalidBase(b));
    }
    Ok(())
}

/// `M_b(x)`: the unique value in `[1, b)` with `x = M_b(x) b^m`, `m` an integer.
pub fn mantissa<F: Real>(x: F, b: u64) -> Result<F> {
    check_base(b)?;
    if !(x > F::zero()) || !x.is_finite() {
        return Err(Error::NonPositive);
    }
    let base = F::lit(b as f64);
    let m = (x.ln() / base.ln()).floor();
    let mut v = x / base.powf(m);
    // one correction step on either side absorbs the rounding of `m`
    if v >= base {
        v = v / base;
    }
    if v < F::one() {
        v = v * base;
    }
    Ok(v.max(F::one()).min(base - base * F::unit_roundoff()))
}

/// Exact mantissa of a positive rational, with the exponent `m` such that
/// `x = M_b(x) b^m`.
pub fn mantissa_exact(x: &Rational, b: u64) -> Result<(Rational, i64)> {
    check_base(b)?;
    if !x.is_positive() {
        return Err(Error::NonPositive);
    }
    let base = Rational::from_integer(BigInt::from(b));
    let estimate = (ln_abs_big(x.numer()) - ln_abs_big(x.denom())) / (b as f64).ln();
    let mut m = estimate.floor().to_i64().unwrap_or(0);
    let scaled = |m: i64| -> Rational {
        let p = base.pow(m.unsigned_abs() as i32);
        if m >= 0 {
            x / p
        } else {
            x * p
        }
    };
    let mut v = scaled(m);
    while v >= base {
        m += 1;
        v = scaled(m);
    }
    while v < Rational::one() {
        m -= 1;
        v = scaled(m);
    }
    Ok((v, m))
}

/// `log_b |n|` for a nonzero integer, with exact factors of `b` stripped
/// first so that exact powers of `b` give exact integers.
pub fn log_b_big(n: &BigInt, b: u64) -> f64 {
    debug_assert!(!n.is_zero());
    let bb = BigInt::from(b);
    let mut rest = n.abs();
    let mut v = 0i64;
    loop {
        let (q, r) = num_integer::Integer::div_rem(&rest, &bb);
        if !r.is_zero() {
            break;
        }
        rest = q;
        v += 1;
    }
    if rest.is_one() {
        return v as f64;
    }
    v as f64 + ln_abs_big(&rest) / (b as f64).ln()
}

/// `log_b x` for a positive rational, exact on powers of `b`.
pub fn log_b_rational(x: &Rational, b: u64) -> Result<f64> {
    check_base(b)?;
    if !x.is_positive() {
        return Err(Error::NonPositive);
    }
    Ok(log_b_big(x.numer(), b) - log_b_big(x.denom(), b))
}
