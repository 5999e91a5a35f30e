//! Dominance structure of the characteristic roots.

use num_complex::Complex;
use num_traits::{One, Signed, Zero};

use super::dominant::{certified_root, dominant_coefficient_bracket, dominant_root, RootInterval};
use super::roots::{all_roots_refined, RootSet};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::Rational;
use crate::recurrence::Recurrence;
use crate::scalar::Real;
use crate::structure::CompanionMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dominance {
    /// `rho` is the only root of maximal modulus.
    Strict,
    /// Exactly `h` roots of modulus `rho`, namely `rho * exp(2 pi i j / h)`.
    Cyclic(usize),
    /// Several roots of modulus `rho` that do not form the cyclic pattern.
    Irregular(usize),
    /// Some root has modulus larger than `rho`.
    Exceeded,
    /// Error radii straddle the decision boundary, or the roots are unresolved.
    Unresolved,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralProfile<F> {
    pub rho: F,
    pub interval: RootInterval<F>,
    pub roots: RootSet<F>,
    /// Number of roots (with multiplicity) on the circle `|z| = rho`.
    pub h_spectral: usize,
    pub dominance: Dominance,
    /// Imprimitivity index of the companion pattern, in the nonnegative regime.
    pub h_structural: Option<usize>,
}

impl<F: Real> SpectralProfile<F> {
    /// Whether the spectral and structural counts agree (`None` outside the
    /// nonnegative regime).
    pub fn cross_check(&self) -> Option<bool> {
        self.h_structural.map(|h| self.dominance != Dominance::Unresolved && h == self.h_spectral)
    }
}

/// Classifies the roots against `rho`, counting those whose modulus lies
/// within `tol * scale` of `rho`.
pub fn dominance_check<F: Real>(rho: &RootInterval<F>, roots: &RootSet<F>, tol: F) -> (usize, Dominance) {
    let r = rho.estimate;
    let band = tol * roots.scale + rho.width();
    let mut on_circle: Vec<Complex<F>> = Vec::new();
    let mut unresolved = !roots.is_resolved();
    let mut exceeded = false;
    for c in &roots.clusters {
        let gap = (c.center.norm() - r).abs();
        if gap + c.radius <= band {
            on_circle.extend(std::iter::repeat_n(c.center, c.multiplicity));
        } else if gap - c.radius > band {
            if c.center.norm() > r {
                exceeded = true;
            }
        } else {
            unresolved = true;
        }
    }
    let h = on_circle.len();
    if unresolved || h == 0 {
        return (h.max(1), Dominance::Unresolved);
    }
    if exceeded {
        return (h, Dominance::Exceeded);
    }
    if h == 1 {
        return (1, Dominance::Strict);
    }
    let tau = F::TAU();
    let mut matched = vec![false; h];
    let slack = band * F::lit(16.0) + F::lit(1e3) * F::unit_roundoff() * r;
    for j in 0..h {
        let target = Complex::from_polar(r, tau * F::from_count(j) / F::from_count(h));
        let hit = on_circle.iter().enumerate().find(|(i, z)| !matched[*i] && (**z - target).norm() <= slack);
        match hit {
            Some((i, _)) => matched[i] = true,
            None => return (h, Dominance::Irregular(h)),
        }
    }
    (h, Dominance::Cyclic(h))
}

/// Exact coefficient test `c_{k-1} >= 2` and `c_{k-1} > sum_{j<=k-2} |c_j| + 1`
/// on `p = x^k - c_{k-1} x^{k-1} - ... - c_0`.
pub fn condition2_test(p: &Poly) -> bool {
    let k = p.degree();
    if k == 0 {
        return false;
    }
    let top = -p.coeff(k - 1);
    let rest = (0..k - 1).fold(Rational::zero(), |acc, j| acc + p.coeff(j).abs());
    top >= Rational::from_integer(2.into()) && top > rest + Rational::one()
}

#[derive(Clone, Debug, PartialEq)]
pub struct Condition2<F> {
    /// The exact coefficient test passed.
    pub applies: bool,
    /// The roots confirm a single simple root in `(c-1, c+1)` and all others
    /// inside the unit disk.
    pub verified: bool,
    pub rho: Option<RootInterval<F>>,
    pub roots: Option<RootSet<F>>,
    /// The coefficient test passed but the numerical confirmation failed.
    pub critical_inconsistency: bool,
}

pub fn check_condition2<F: Real>(p: &Poly) -> Condition2<F> {
    if !condition2_test(p) {
        return Condition2 { applies: false, verified: false, rho: None, roots: None, critical_inconsistency: false };
    }
    let (lo, hi) = dominant_coefficient_bracket(p);
    let rho = certified_root::<F>(p, &lo, &hi).ok();
    let roots = all_roots_refined::<F>(p);
    let verified = rho.as_ref().is_some_and(|iv| iv.inside_open(&lo, &hi)) && condition2_roots_ok(&roots, &lo, &hi);
    Condition2 { applies: true, verified, rho, roots: Some(roots), critical_inconsistency: !verified }
}

fn condition2_roots_ok<F: Real>(roots: &RootSet<F>, lo: &Rational, hi: &Rational) -> bool {
    if !roots.is_resolved() {
        return false;
    }
    let (lo, hi) = (F::from_rational(lo), F::from_rational(hi));
    let mut in_window = 0;
    for c in &roots.clusters {
        let z = c.center;
        let real_in_window = z.re - c.radius > lo && z.re + c.radius < hi && z.im.abs() <= c.radius;
        if real_in_window && c.multiplicity == 1 {
            in_window += 1;
        } else if !(z.norm() + c.radius < F::one()) {
            return false;
        }
    }
    in_window == 1
}

/// Dominant root, full root set and dominance of the characteristic
/// polynomial. Defined in the nonnegative regime and in the regime of the
/// exact coefficient test; other recurrences are out of regime.
pub fn spectral_profile<F: Real>(rec: &Recurrence) -> Result<SpectralProfile<F>> {
    let p = rec.char_poly();
    let nonneg = rec.flags().coefficients_nonnegative;
    let interval = if nonneg {
        dominant_root::<F>(&p)?
    } else if condition2_test(&p) {
        let (lo, hi) = dominant_coefficient_bracket(&p);
        certified_root::<F>(&p, &lo, &hi)?
    } else {
        return Err(Error::OutOfRegime("dominant root needs nonnegative coefficients or a dominant top coefficient"));
    };
    let roots = all_roots_refined::<F>(&p);
    let (h_spectral, dominance) = dominance_check(&interval, &roots, F::default_cluster_tol());
    let h_structural = if nonneg { CompanionMatrix::new(rec).pattern().imprimitivity_index().ok() } else { None };
    Ok(SpectralProfile { rho: interval.estimate, interval, roots, h_spectral, dominance, h_structural })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn profile(coeffs: &[i64]) -> SpectralProfile<f64> {
        spectral_profile(&Recurrence::from_ints(coeffs, &vec![1; coeffs.len()]).unwrap()).unwrap()
    }

    #[test]
    fn strict_and_cyclic() {
        let fib = profile(&[1, 1]);
        assert_eq!(fib.dominance, Dominance::Strict);
        assert_eq!(fib.cross_check(), Some(true));

        let split = profile(&[1, 0, 1, 0]);
        assert_eq!(split.dominance, Dominance::Cyclic(2));
        assert_eq!(split.h_structural, Some(2));
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((split.rho - phi.sqrt()).abs() < 1e-13);

        let unity = profile(&[1, 0, 0]);
        assert_eq!(unity.dominance, Dominance::Cyclic(3));
        assert_eq!(unity.interval.exact_root, Some(int(1)));
        assert_eq!(unity.cross_check(), Some(true));
    }

    #[test]
    fn condition2_examples() {
        let cx = Poly::new(vec![ratio(3, 10), ratio(-31, 10), int(1)]);
        assert!(condition2_test(&cx));
        let v = check_condition2::<f64>(&cx);
        assert!(v.applies && v.verified && !v.critical_inconsistency);
        assert_eq!(v.rho.unwrap().exact_root, Some(int(3)));

        assert!(!condition2_test(&Poly::from_ints(&[-1, -1, 1])));
        assert!(!check_condition2::<f64>(&Poly::from_ints(&[-1, -1, 1])).applies);

        let p = Poly::from_ints(&[-1, -1, -5, 1]);
        let v = check_condition2::<f64>(&p);
        assert!(v.applies && v.verified);
        assert!(v.rho.unwrap().inside_open(&int(4), &int(6)));
        // boundary: 4 > 2 + 1 holds, 3 > 2 + 1 fails
        assert!(condition2_test(&Poly::from_ints(&[1, -1, -4, 1])));
        assert!(!condition2_test(&Poly::from_ints(&[1, -1, -3, 1])));
    }

    #[test]
    fn mixed_sign_profile_uses_the_condition2_bracket() {
        let rec = Recurrence::new(vec![ratio(-3, 10), ratio(31, 10)], vec![ratio(1, 10), ratio(1, 100)]).unwrap();
        let prof = spectral_profile::<f64>(&rec).unwrap();
        assert_eq!(prof.dominance, Dominance::Strict);
        assert_eq!(prof.rho, 3.0);
        assert_eq!(prof.h_structural, None);

        let out = Recurrence::from_ints(&[1, -1], &[1, 1]).unwrap();
        assert!(matches!(spectral_profile::<f64>(&out), Err(Error::OutOfRegime(_))));
    }

    #[test]
    fn irregular_circle() {
        // x^2 + 1 has roots +-i; against rho = 1 they lie on the circle but
        // 1 itself is not a root, so the cyclic pattern fails.
        let p = Poly::from_ints(&[1, 0, 1]);
        let roots = super::super::roots::all_roots::<f64>(&p);
        let iv = RootInterval {
            lo: 1.0,
            hi: 1.0,
            lo_exact: int(1),
            hi_exact: int(1),
            estimate: 1.0,
            exact_root: Some(int(1)),
        };
        assert_eq!(dominance_check(&iv, &roots, 1e-8), (2, Dominance::Irregular(2)));
    }
}
