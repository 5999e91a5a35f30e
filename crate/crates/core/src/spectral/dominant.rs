//! Certified real roots: brackets whose endpoints are exact rationals with
//! opposite signs of `p`, refined by bisection and Newton polishing.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{format_rational, Rational};
use crate::scalar::Real;

/// Interval `[lo, hi]` containing a root of `p`. The endpoints are values of
/// `F` and `lo_exact`, `hi_exact` are their exact rational values, at which
/// `p` has been evaluated exactly with opposite signs (or is zero, in which
/// case `exact_root` is set and the interval is a point).
#[derive(Clone, Debug, PartialEq)]
pub struct RootInterval<F> {
    pub lo: F,
    pub hi: F,
    pub lo_exact: Rational,
    pub hi_exact: Rational,
    /// Best point estimate, inside `[lo, hi]`.
    pub estimate: F,
    pub exact_root: Option<Rational>,
}

impl<F: Real> RootInterval<F> {
    pub fn width(&self) -> F {
        self.hi - self.lo
    }

    pub fn relative_width(&self) -> F {
        self.width() / self.estimate.abs().max(F::min_positive_value())
    }

    /// Exact membership test.
    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo_exact <= x && x <= &self.hi_exact
    }

    /// Whether the interval provably lies strictly between `a` and `b`.
    pub fn inside_open(&self, a: &Rational, b: &Rational) -> bool {
        a < &self.lo_exact && &self.hi_exact < b
    }
}

#[derive(Clone, Copy, Debug)]
pub struct IntervalOptions<F> {
    /// Target relative width.
    pub tol: F,
    pub max_newton: usize,
}

impl<F: Real> Default for IntervalOptions<F> {
    fn default() -> Self {
        IntervalOptions { tol: F::default_root_tol(), max_newton: 60 }
    }
}

/// Unique positive root of `p = x^k - c_{k-1} x^{k-1} - ... - c_0` with all
/// `c_j >= 0` and `c_0 > 0`, bracketed in `[0, 1 + max c_j]`.
pub fn dominant_root<F: Real>(p: &Poly) -> Result<RootInterval<F>> {
    dominant_root_with(p, &IntervalOptions::default())
}

pub fn dominant_root_with<F: Real>(p: &Poly, opts: &IntervalOptions<F>) -> Result<RootInterval<F>> {
    let k = p.degree();
    let max_c = (0..k).map(|j| -p.coeff(j)).max().unwrap_or_else(Rational::zero);
    let hi = Rational::one() + max_c.max(Rational::zero());
    certified_root_with(p, &Rational::zero(), &hi, opts)
}

/// Root of `p` in `[lo, hi]`, where `p(lo)` and `p(hi)` must have opposite
/// signs (or one of them vanish).
pub fn certified_root<F: Real>(p: &Poly, lo: &Rational, hi: &Rational) -> Result<RootInterval<F>> {
    certified_root_with(p, lo, hi, &IntervalOptions::default())
}

pub fn certified_root_with<F: Real>(
    p: &Poly,
    lo: &Rational,
    hi: &Rational,
    opts: &IntervalOptions<F>,
) -> Result<RootInterval<F>> {
    for end in [lo, hi] {
        if p.sign_at(end) == 0 {
            return Ok(point(end.clone()));
        }
    }
    let s_lo = p.sign_at(lo);
    if s_lo == p.sign_at(hi) {
        return Err(Error::NoSignChange { lo: format_rational(lo), hi: format_rational(hi) });
    }
    // Work with endpoints representable in F: round outward, keep the sign
    // change exact.
    let mut a = representable_below::<F>(p, lo, s_lo)?;
    let mut b = representable_above::<F>(p, hi, -s_lo)?;
    if let Some(root) = a.1.clone().or(b.1.clone()) {
        return Ok(point(root));
    }

    // Coarse bisection to a relative width of about 1e-3.
    let coarse = F::lit(1e-3);
    while !narrow_enough(a.0, b.0, coarse) {
        match bisect_step(p, &mut a, &mut b, s_lo) {
            Some(root) => return Ok(point(root)),
            None if a.0 == b.0 => break,
            None => {}
        }
    }

    // Newton from the midpoint, then confirm a tight bracket around the result.
    let fx = p.to_real::<F>();
    let dfx = p.derivative().to_real::<F>();
    let mut x = (a.0 + b.0) / F::lit(2.0);
    for _ in 0..opts.max_newton {
        let (v, d) = (horner_real(&fx, x), horner_real(&dfx, x));
        if d == F::zero() {
            break;
        }
        let next = x - v / d;
        if !(next > a.0 && next < b.0) {
            break;
        }
        if next == x {
            break;
        }
        x = next;
    }
    if let Some(r) = x.to_rational() {
        if p.sign_at(&r) == 0 {
            return Ok(point(r));
        }
    }
    let target = opts.tol * x.abs().max(F::min_positive_value());
    let mut delta = (x.abs() * F::unit_roundoff() * F::lit(4.0)).max(F::min_positive_value());
    while delta < target {
        let below = x - delta;
        let above = x + delta;
        if below > a.0 && above < b.0 {
            if let (Some(rb), Some(ra)) = (below.to_rational(), above.to_rational()) {
                let (sb, sa) = (p.sign_at(&rb), p.sign_at(&ra));
                if sb == 0 {
                    return Ok(point(rb));
                }
                if sa == 0 {
                    return Ok(point(ra));
                }
                if sb == s_lo && sa == -s_lo {
                    a = (below, None, rb);
                    b = (above, None, ra);
                    break;
                }
            }
        }
        delta = delta * F::lit(2.0);
    }

    // Finish (or fall back) with bisection down to the target width.
    let mut guard = 0;
    while !narrow_enough(a.0, b.0, opts.tol) && guard < 4096 {
        guard += 1;
        match bisect_step(p, &mut a, &mut b, s_lo) {
            Some(root) => return Ok(point(root)),
            None if midpoint(a.0, b.0) == a.0 || midpoint(a.0, b.0) == b.0 => break,
            None => {}
        }
    }
    let estimate = if x >= a.0 && x <= b.0 { x } else { midpoint(a.0, b.0) };
    Ok(RootInterval { lo: a.0, hi: b.0, lo_exact: a.2, hi_exact: b.2, estimate, exact_root: None })
}

type Endpoint<F> = (F, Option<Rational>, Rational);

fn point<F: Real>(r: Rational) -> RootInterval<F> {
    let x = F::from_rational(&r);
    RootInterval { lo: x, hi: x, lo_exact: r.clone(), hi_exact: r.clone(), estimate: x, exact_root: Some(r) }
}

fn midpoint<F: Real>(a: F, b: F) -> F {
    a + (b - a) / F::lit(2.0)
}

fn narrow_enough<F: Real>(a: F, b: F, tol: F) -> bool {
    let mag = a.abs().max(b.abs());
    b - a <= tol * mag || mag == F::zero()
}

fn bisect_step<F: Real>(p: &Poly, a: &mut Endpoint<F>, b: &mut Endpoint<F>, s_lo: i8) -> Option<Rational> {
    let m = midpoint(a.0, b.0);
    let r = m.to_rational().expect("finite midpoint");
    match p.sign_at(&r) {
        0 => Some(r),
        s if s == s_lo => {
            *a = (m, None, r);
            None
        }
        _ => {
            *b = (m, None, r);
            None
        }
    }
}

/// Largest value of `F` at or below `x` (exactly `x` when representable)
/// whose sign under `p` is still `sign`, or an exact root met on the way.
fn representable_below<F: Real>(p: &Poly, x: &Rational, sign: i8) -> Result<Endpoint<F>> {
    nudge(p, x, sign, -F::one())
}

fn representable_above<F: Real>(p: &Poly, x: &Rational, sign: i8) -> Result<Endpoint<F>> {
    nudge(p, x, sign, F::one())
}

fn nudge<F: Real>(p: &Poly, x: &Rational, sign: i8, dir: F) -> Result<Endpoint<F>> {
    let mut v = F::from_rational(x);
    let mut step = v.abs().max(F::one()) * F::unit_roundoff() * F::lit(4.0);
    for _ in 0..200 {
        let r = v.to_rational().ok_or(Error::NonPositive)?;
        let outward = if dir > F::zero() { &r >= x } else { &r <= x };
        if outward {
            match p.sign_at(&r) {
                0 => return Ok((v, Some(r.clone()), r)),
                s if s == sign => return Ok((v, None, r)),
                _ => {}
            }
        }
        v = v + dir * step;
        step = step * F::lit(2.0);
    }
    Err(Error::NoSignChange { lo: format_rational(x), hi: format_rational(x) })
}

fn horner_real<F: Real>(coeffs: &[F], x: F) -> F {
    coeffs.iter().rev().fold(F::zero(), |acc, &c| acc * x + c)
}

/// Exact bracket for the dominant root in the regime `c_{k-1} >= 2`,
/// `c_{k-1} > sum_{j <= k-2} |c_j| + 1`: the open interval
/// `(c_{k-1} - 1, c_{k-1} + 1)`.
pub fn dominant_coefficient_bracket(p: &Poly) -> (Rational, Rational) {
    let c = -p.coeff(p.degree() - 1);
    (&c - Rational::one(), c + Rational::one())
}
