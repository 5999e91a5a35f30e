//! Rationality of `log_b rho` and the bases in which it fails.
//!
//! If `log_b rho = p/q` then `rho^q = b^p`, so every conjugate of `rho` has
//! modulus `rho`. When `rho` is the strictly dominant root of a polynomial with
//! rational coefficients it has no other conjugate of that modulus, so it is
//! rational; an irrational strictly dominant `rho` therefore has irrational
//! `log_b rho` in every base. A rational `rho = n/d` in lowest terms with
//! `n, d > 1` is never a rational power of an integer, and otherwise
//! `rho^{+-1} = u^c` with `u` not a perfect power, where `log_b rho` is
//! rational exactly when `b` is a power of `u`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::engine::check_base;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{format_rational, Rational};
use crate::recurrence::{rational_positive_roots, Recurrence};
use crate::spectral::{certified_root, condition2_test, dominant_coefficient_bracket, dominant_root, RootInterval};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LogRationality {
    Irrational,
    Rational,
    Unknown,
}

/// Exact structure of the dominant root `rho`, analyzed through
/// `rho^h`, the dominant root of the contracted polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RhoStructure {
    /// `rho = u^(c/h)`, or `u^(-c/h)` when `inverse`, with `u >= 2` not a
    /// perfect power.
    Power { u: BigUint, c: u32, h: u32, inverse: bool },
    /// `rho^h = n/d` in lowest terms with `n, d > 1`.
    RationalNonPower { rho_h: Rational, h: u32 },
    /// `rho^h` is irrational and strictly dominant.
    Irrational { h: u32 },
    /// `rho = 1`.
    Unit,
    /// Outside the regimes where the dominant root is certified.
    Unknown,
}

/// Exact evaluations backing an irrationality claim: `p` does not vanish at
/// the integers or inverse integers nearest to the certified interval, and
/// the interval contains no positive rational root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionChecks {
    /// `(x, sign of p(x))` at the integers bracketing the interval.
    pub integers: Vec<(String, i8)>,
    /// `(x, sign of p(x))` at the inverse integers `1/beta` bracketing it.
    pub inverse_integers: Vec<(String, i8)>,
    pub rational_roots_in_interval: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RhoAnalysis {
    pub structure: RhoStructure,
    /// Index `h` used for the contraction (1 outside the nonnegative regime).
    pub h: u32,
    /// The polynomial whose dominant root is `rho^h`.
    pub contracted: Poly,
    pub interval: Option<RootInterval<f64>>,
    pub exclusion: Option<ExclusionChecks>,
    /// Which exact hypothesis certifies strict dominance of `rho^h`.
    pub dominance_source: &'static str,
}

/// `n = u^c` with `c` maximal, so `u` is not a perfect power; `n >= 2`.
pub fn perfect_power_decompose(n: &BigUint) -> (BigUint, u32) {
    assert!(*n >= BigUint::from(2u32), "perfect_power_decompose needs n >= 2");
    let max_c = (n.bits() - 1) as u32;
    for c in (2..=max_c).rev() {
        let r = n.nth_root(c);
        if r > BigUint::one() && num_traits::pow(r.clone(), c as usize) == *n {
            return (r, c);
        }
    }
    (n.clone(), 1)
}

pub fn perfect_power_decompose_u64(n: u64) -> (u64, u32) {
    let (u, c) = perfect_power_decompose(&BigUint::from(n));
    (u.to_u64().expect("u <= n"), c)
}

/// Structure of `rho`, exact wherever the regime allows.
pub fn rho_structure(rec: &Recurrence) -> Result<RhoAnalysis> {
    let p = rec.char_poly();
    let (h, contracted, interval, source) = if rec.is_nonnegative_regime() {
        let h = rec.index_set().gcd_index();
        let q = contracted_poly(rec, h);
        let iv = dominant_root::<f64>(&q)?;
        (h, q, iv, "nonnegative coefficients with gcd(I(q) u {k'}) = 1")
    } else if condition2_test(&p) {
        let (lo, hi) = dominant_coefficient_bracket(&p);
        let iv = certified_root::<f64>(&p, &lo, &hi)?;
        (1, p, iv, "exact coefficient test c_{k-1} > sum |c_j| + 1")
    } else {
        return Ok(RhoAnalysis {
            structure: RhoStructure::Unknown,
            h: 1,
            contracted: p,
            interval: None,
            exclusion: None,
            dominance_source: "none",
        });
    };
    let h32 = h as u32;
    let rational: Vec<Rational> =
        rational_positive_roots(&contracted).into_iter().filter(|r| interval.contains(r)).collect();
    let exclusion = exclusion_checks(&contracted, &interval, rational.len());
    let structure = match rational.first() {
        None => RhoStructure::Irrational { h: h32 },
        Some(r) => structure_of_rational(r, h32),
    };
    Ok(RhoAnalysis {
        structure,
        h: h32,
        contracted,
        interval: Some(interval),
        exclusion: Some(exclusion),
        dominance_source: source,
    })
}

/// Structure of a positive rational `rho^h`.
pub fn structure_of_rational(r: &Rational, h: u32) -> RhoStructure {
    assert!(r.is_positive(), "structure_of_rational needs a positive value");
    if r.is_one() {
        return RhoStructure::Unit;
    }
    let (n, d) = (r.numer().magnitude(), r.denom().magnitude());
    if d.is_one() {
        let (u, c) = perfect_power_decompose(n);
        RhoStructure::Power { u, c, h, inverse: false }
    } else if n.is_one() {
        let (u, c) = perfect_power_decompose(d);
        RhoStructure::Power { u, c, h, inverse: true }
    } else {
        RhoStructure::RationalNonPower { rho_h: r.clone(), h }
    }
}

/// `q(y) = y^(k/h) - sum_j c_{hj} y^j`, whose roots are the `h`-th powers of
/// the roots of `p`.
pub fn contracted_poly(rec: &Recurrence, h: usize) -> Poly {
    match rec.contracted_coeffs(h) {
        Some(c) => {
            let mut coeffs: Vec<Rational> = c.into_iter().map(|x| -x).collect();
            coeffs.push(Rational::one());
            Poly::new(coeffs)
        }
        None => rec.char_poly(),
    }
}

fn exclusion_checks(p: &Poly, iv: &RootInterval<f64>, rational_roots: usize) -> ExclusionChecks {
    let mut integers = Vec::new();
    let floor = iv.lo_exact.floor().to_integer();
    let ceil = iv.hi_exact.ceil().to_integer();
    for n in [floor, ceil] {
        let x = Rational::from_integer(n);
        if !integers.iter().any(|(s, _): &(String, i8)| *s == format_rational(&x)) {
            integers.push((format_rational(&x), p.sign_at(&x)));
        }
    }
    let mut inverse_integers = Vec::new();
    if iv.lo_exact.is_positive() {
        let lo_beta = (Rational::one() / &iv.hi_exact).floor().to_integer().max(BigInt::one());
        let hi_beta = (Rational::one() / &iv.lo_exact).ceil().to_integer().max(BigInt::one());
        for beta in [lo_beta, hi_beta] {
            let x = Rational::new(BigInt::one(), beta);
            if !inverse_integers.iter().any(|(s, _): &(String, i8)| *s == format_rational(&x)) {
                inverse_integers.push((format_rational(&x), p.sign_at(&x)));
            }
        }
    }
    let holds = rational_roots == 0 && integers.iter().chain(&inverse_integers).all(|(_, s)| *s != 0);
    ExclusionChecks { integers, inverse_integers, rational_roots_in_interval: rational_roots, holds }
}

/// Whether `log_b rho` is irrational.
pub fn log_is_irrational(structure: &RhoStructure, b: u64) -> Result<LogRationality> {
    check_base(b)?;
    Ok(match structure {
        RhoStructure::Irrational { .. } | RhoStructure::RationalNonPower { .. } => LogRationality::Irrational,
        RhoStructure::Unit => LogRationality::Rational,
        RhoStructure::Power { u, .. } => {
            let (ub, _) = perfect_power_decompose(&BigUint::from(b));
            if &ub == u {
                LogRationality::Rational
            } else {
                LogRationality::Irrational
            }
        }
        RhoStructure::Unknown => LogRationality::Unknown,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BaseScope {
    AllBases,
    AlmostAll,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BaseScopeReport {
    pub scope: BaseScope,
    /// `B_N = {2 < b <= N : log_b rho rational}`, ascending.
    pub exceptional_bases: Vec<u64>,
    /// `sqrt(N) ln N / ln 2`.
    pub bound_value: f64,
    pub n: u64,
    pub bound_holds: bool,
}

pub fn density_bound(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let x = n as f64;
    x.sqrt() * x.ln() / std::f64::consts::LN_2
}

/// Enumerates `B_N`: the powers `u^d`, `2 < u^d <= N`, when `rho^(+-1)` is a
/// rational power of `u`; empty otherwise.
pub fn exceptional_bases(structure: &RhoStructure, n: u64) -> Result<BaseScopeReport> {
    let bound_value = density_bound(n);
    let (scope, bases) = match structure {
        RhoStructure::Unit => return Err(Error::UnitRoot),
        RhoStructure::Unknown => return Err(Error::UnknownRhoStructure),
        RhoStructure::Irrational { .. } | RhoStructure::RationalNonPower { .. } => (BaseScope::AllBases, Vec::new()),
        RhoStructure::Power { u, .. } => {
            let mut bases = Vec::new();
            if let Some(u) = u.to_u64() {
                let mut b = u;
                loop {
                    if b > 2 && b <= n {
                        bases.push(b);
                    }
                    match b.checked_mul(u) {
                        Some(next) if next <= n => b = next,
                        _ => break,
                    }
                }
            }
            (BaseScope::AlmostAll, bases)
        }
    };
    let bound_holds = (bases.len() as f64) <= bound_value * (1.0 + 1e-12);
    Ok(BaseScopeReport { scope, exceptional_bases: bases, bound_value, n, bound_holds })
}

/// Integers `(p, q)`, `q > 0`, with `rho^q = b^p` exactly, for a rational
/// `rho` and a base in `B_N`.
pub fn power_relation(rho: &Rational, b: u64) -> Option<(i64, u32)> {
    if !rho.is_positive() || rho.is_one() {
        return None;
    }
    let inverse = rho < &Rational::one();
    let r = if inverse { rho.recip() } else { rho.clone() };
    if !r.denom().is_one() {
        return None;
    }
    let (u, c) = perfect_power_decompose(r.numer().magnitude());
    let (ub, cb) = perfect_power_decompose(&BigUint::from(b));
    if u != ub {
        return None;
    }
    // rho^(cb/g) = u^(c cb/g) = b^(c/g)
    let g = c.gcd(&cb);
    let p = (c / g) as i64;
    Some((if inverse { -p } else { p }, cb / g))
}
