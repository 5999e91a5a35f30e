//! The limit `alpha = lim a_n / rho^n` and the exact test for its vanishing.

use num_traits::One;

use super::dominant::RootInterval;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::recurrence::Recurrence;
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq)]
pub struct PerronLimit<F> {
    pub rho: F,
    /// `lim A_n / rho^n` for the state `A_n = (a_n, ..., a_{n+k-1})`.
    pub limit_vector: Vec<F>,
    /// First component of the limit vector.
    pub alpha: F,
    /// The same limit from the closed form `s(rho) / (rho p'(rho))`.
    pub alpha_closed_form: F,
    pub iterations: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct PerronOptions<F> {
    pub tol: F,
    pub max_iterations: usize,
}

impl<F: Real> Default for PerronOptions<F> {
    fn default() -> Self {
        let tol = (F::unit_roundoff() * F::lit(1e4)).max(F::lit(1e-12).min(F::unit_roundoff().sqrt()));
        PerronOptions { tol, max_iterations: 1_000_000 }
    }
}

/// Iterates `y <- C y / rho` from `y = A_1 / rho` until the correction,
/// extrapolated by the observed contraction rate, drops below the tolerance.
pub fn perron_limit<F: Real>(rec: &Recurrence, rho: F) -> Result<PerronLimit<F>> {
    perron_limit_with(rec, rho, &PerronOptions::default())
}

pub fn perron_limit_with<F: Real>(rec: &Recurrence, rho: F, opts: &PerronOptions<F>) -> Result<PerronLimit<F>> {
    if !(rho > F::zero()) {
        return Err(Error::NonPositive);
    }
    let k = rec.order();
    let c: Vec<F> = rec.coeffs().iter().map(F::from_rational).collect();
    let mut y: Vec<F> = rec.initials().iter().map(|a| F::from_rational(a) / rho).collect();
    let mut prev_diff = F::infinity();
    for it in 1..=opts.max_iterations {
        let last = c.iter().zip(&y).fold(F::zero(), |acc, (&cj, &yj)| acc + cj * yj);
        let mut next = Vec::with_capacity(k);
        next.extend_from_slice(&y[1..]);
        next.push(last);
        for v in next.iter_mut() {
            *v = *v / rho;
        }
        let scale = next.iter().fold(F::one(), |m, v| m.max(v.abs()));
        let diff = next.iter().zip(&y).fold(F::zero(), |m, (a, b)| m.max((*a - *b).abs())) / scale;
        y = next;
        // contraction estimate over the last step, clamped away from 1
        let rate = if prev_diff.is_finite() && prev_diff > F::zero() {
            (diff / prev_diff).min(F::lit(0.999_999))
        } else {
            F::lit(0.5)
        };
        prev_diff = diff;
        if it >= k && diff <= opts.tol * (F::one() - rate) {
            let closed = closed_form_alpha(rec, rho);
            return Ok(PerronLimit { rho, alpha: y[0], limit_vector: y, alpha_closed_form: closed, iterations: it });
        }
        if y.iter().any(|v| !v.is_finite()) {
            break;
        }
    }
    Err(Error::NonConvergence { iterations: opts.max_iterations })
}

/// Left eigenvector weights `w_k = 1`, `w_{j-1} = x w_j - c_{j-1}` of the
/// companion matrix, as polynomials in `x`; `w[j-1]` holds `w_j`.
pub fn left_eigenvector_polys(rec: &Recurrence) -> Vec<Poly> {
    let k = rec.order();
    let mut w = vec![Poly::zero(); k];
    w[k - 1] = Poly::new(vec![crate::Rational::one()]);
    for j in (1..k).rev() {
        let shifted = &Poly::monomial(1) * &w[j];
        w[j - 1] = &shifted - &Poly::new(vec![rec.coeffs()[j].clone()]);
    }
    w
}

/// `s(x) = sum_j w_j(x) a_j`. For a simple dominant root `rho`,
/// `lim a_n / rho^n = s(rho) / (rho p'(rho))`.
pub fn dominant_coefficient_poly(rec: &Recurrence) -> Poly {
    left_eigenvector_polys(rec).iter().zip(rec.initials()).fold(Poly::zero(), |acc, (w, a)| {
        let term = w * &Poly::new(vec![a.clone()]);
        &acc - &(&Poly::zero() - &term)
    })
}

pub fn closed_form_alpha<F: Real>(rec: &Recurrence, rho: F) -> F {
    let s = dominant_coefficient_poly(rec).eval_real(rho);
    let dp = rec.char_poly().derivative().eval_real(rho);
    s / (rho * dp)
}

/// Exact test that the coefficient of `rho^n` in `a_n` is zero: `rho` is a
/// common root of `p` and `s`. Decided by a sign change (or an exact zero) of
/// `gcd(p, s)` on the certified interval, which isolates the simple root `rho`.
pub fn dominant_coefficient_vanishes<F: Real>(rec: &Recurrence, rho: &RootInterval<F>) -> bool {
    let s = dominant_coefficient_poly(rec);
    if s.is_zero() {
        return true;
    }
    let g = rec.char_poly().gcd(&s);
    if g.degree() == 0 {
        return false;
    }
    if let Some(r) = &rho.exact_root {
        return g.sign_at(r) == 0;
    }
    let (a, b) = (g.sign_at(&rho.lo_exact), g.sign_at(&rho.hi_exact));
    a == 0 || b == 0 || a != b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use crate::spectral::dominant::{certified_root, dominant_root};

    #[test]
    fn fibonacci_limit_matches_binet() {
        let rec = Recurrence::from_ints(&[1, 1], &[1, 1]).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let lim = perron_limit(&rec, phi).unwrap();
        // a_n = (phi^n - (-1/phi)^n) / sqrt 5, so a_n / phi^n -> 1 / sqrt 5
        assert!((lim.alpha - 1.0 / 5f64.sqrt()).abs() < 1e-11, "{}", lim.alpha);
        assert!((lim.alpha_closed_form - 1.0 / 5f64.sqrt()).abs() < 1e-14);
        assert!((lim.limit_vector[1] - phi / 5f64.sqrt()).abs() < 1e-11);
    }

    #[test]
    fn counterexample_limit_vanishes() {
        let rec = Recurrence::new(vec![ratio(-3, 10), ratio(31, 10)], vec![ratio(1, 10), ratio(1, 100)]).unwrap();
        let lim = perron_limit(&rec, 3.0f64).unwrap();
        assert!(lim.alpha.abs() < 1e-12);
        assert_eq!(dominant_coefficient_poly(&rec), Poly::new(vec![ratio(-3, 10), ratio(1, 10)]));
        let iv = certified_root::<f64>(&rec.char_poly(), &ratio(21, 10), &ratio(41, 10)).unwrap();
        assert!(dominant_coefficient_vanishes(&rec, &iv));

        let other = rec.with_initials(vec![int(1), int(1)]).unwrap();
        assert!(!dominant_coefficient_vanishes(&other, &iv));
        assert!(perron_limit(&other, 3.0f64).unwrap().alpha > 0.0);
    }

    #[test]
    fn geometric_limit() {
        let rec = Recurrence::from_ints(&[2], &[3]).unwrap();
        let lim = perron_limit(&rec, 2.0f64).unwrap();
        assert!((lim.alpha - 1.5).abs() < 1e-15);
    }

    #[test]
    fn vanishing_on_an_irrational_root() {
        // p = (x^2 - x - 1)(x - 1/2) with a_n = 2^-n: the phi^n coefficient
        // vanishes although phi is irrational.
        let rec =
            Recurrence::new(vec![ratio(-1, 2), ratio(1, 2), ratio(3, 2)], vec![ratio(1, 2), ratio(1, 4), ratio(1, 8)])
                .unwrap();
        let iv = certified_root::<f64>(&rec.char_poly(), &int(1), &int(2)).unwrap();
        assert!(iv.exact_root.is_none());
        assert!(dominant_coefficient_vanishes(&rec, &iv));
        let other = rec.with_initials(vec![int(1), int(1), int(1)]).unwrap();
        assert!(!dominant_coefficient_vanishes(&other, &iv));
        assert!(dominant_root::<f64>(&Poly::from_ints(&[-1, -1, 1])).is_ok());
    }

    #[test]
    fn periodic_recurrence_does_not_converge() {
        let rec = Recurrence::from_ints(&[1, 0], &[1, 2]).unwrap();
        let opts = PerronOptions { tol: 1e-12, max_iterations: 1000 };
        assert_eq!(perron_limit_with(&rec, 1.0, &opts), Err(Error::NonConvergence { iterations: 1000 }));
    }
}
