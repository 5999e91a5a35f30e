//! Recurrences `a_{n+k} = c_{k-1} a_{n+k-1} + ... + c_0 a_n` with exact
//! coefficients and initial values, their characteristic polynomials and
//! index sets.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{divisors_up_to, format_rational, parse_rational_list, Rational};

/// Sign flags recorded at validation time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegimeFlags {
    pub coefficients_nonnegative: bool,
    pub initials_positive: bool,
    pub initials_nonnegative: bool,
    pub c0_positive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    coeffs: Vec<Rational>,
    initials: Vec<Rational>,
    flags: RegimeFlags,
}

impl Recurrence {
    /// Validates `c_0..c_{k-1}` and `a_1..a_k`.
    pub fn new(coeffs: Vec<Rational>, initials: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyRecurrence);
        }
        if coeffs.len() != initials.len() {
            return Err(Error::LengthMismatch { coeffs: coeffs.len(), initials: initials.len() });
        }
        if coeffs[0].is_zero() {
            return Err(Error::ZeroConstantCoefficient { order: coeffs.len() });
        }
        let flags = RegimeFlags {
            coefficients_nonnegative: coeffs.iter().all(|c| !c.is_negative()),
            initials_positive: initials.iter().all(Signed::is_positive),
            initials_nonnegative: initials.iter().all(|a| !a.is_negative()),
            c0_positive: coeffs[0].is_positive(),
        };
        Ok(Recurrence { coeffs, initials, flags })
    }

    pub fn from_ints(coeffs: &[i64], initials: &[i64]) -> Result<Self> {
        let lift = |v: &[i64]| v.iter().map(|&x| Rational::from_integer(x.into())).collect();
        Recurrence::new(lift(coeffs), lift(initials))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `c_0..c_{k-1}`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `a_1..a_k`.
    pub fn initials(&self) -> &[Rational] {
        &self.initials
    }

    pub fn flags(&self) -> RegimeFlags {
        self.flags
    }

    /// Nonnegative coefficients with `c_0 > 0`: the Perron–Frobenius regime.
    pub fn is_nonnegative_regime(&self) -> bool {
        self.flags.coefficients_nonnegative && self.flags.c0_positive
    }

    pub fn with_initials(&self, initials: Vec<Rational>) -> Result<Self> {
        Recurrence::new(self.coeffs.clone(), initials)
    }

    /// `p(x) = x^k - c_{k-1} x^{k-1} - ... - c_1 x - c_0`.
    pub fn char_poly(&self) -> Poly {
        let mut coeffs: Vec<Rational> = self.coeffs.iter().map(|c| -c.clone()).collect();
        coeffs.push(Rational::one());
        Poly::new(coeffs)
    }

    /// `{1 <= j <= k-1 : c_j != 0}`.
    pub fn index_set(&self) -> IndexSet {
        let members: BTreeSet<usize> = (1..self.order()).filter(|&j| !self.coeffs[j].is_zero()).collect();
        let all_positive = members.iter().all(|&j| self.coeffs[j].is_positive());
        IndexSet { members, order: self.order(), all_positive }
    }

    /// `{1 <= j <= k-1 : c_j > 0}`, the set used in the nonnegative theory.
    pub fn positive_index_set(&self) -> IndexSet {
        let members: BTreeSet<usize> = (1..self.order()).filter(|&j| self.coeffs[j].is_positive()).collect();
        IndexSet { members, order: self.order(), all_positive: true }
    }

    /// Coefficients `c'_j = c_{hj}`, `j = 0..k/h`, of the recurrence satisfied by
    /// every subsequence `a_{m + hn}` when `h` divides `k` and every index of a
    /// nonzero coefficient.
    pub fn contracted_coeffs(&self, h: usize) -> Option<Vec<Rational>> {
        let k = self.order();
        if h == 0 || !k.is_multiple_of(h) || (0..k).any(|j| j % h != 0 && !self.coeffs[j].is_zero()) {
            return None;
        }
        Some((0..k / h).map(|j| self.coeffs[h * j].clone()).collect())
    }

    /// Parses the plain-text record: a line with `k`, a line with
    /// `c_0 .. c_{k-1}` and a line with `a_1 .. a_k`. Blank lines and lines
    /// starting with `#` are skipped.
    pub fn parse_record(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let (kline, ktext) = lines.next().ok_or_else(|| Error::parse(1, 1, "missing order line"))?;
        let k: usize =
            ktext.trim().parse().map_err(|_| Error::parse(kline, 1, format!("invalid order '{}'", ktext.trim())))?;
        let (cline, ctext) = lines.next().ok_or_else(|| Error::parse(kline + 1, 1, "missing coefficient line"))?;
        let coeffs = parse_rational_list(ctext, cline)?;
        let (iline, itext) = lines.next().ok_or_else(|| Error::parse(cline + 1, 1, "missing initial-value line"))?;
        let initials = parse_rational_list(itext, iline)?;
        if let Some((extra, _)) = lines.next() {
            return Err(Error::parse(extra, 1, "unexpected trailing content"));
        }
        if coeffs.len() != k {
            return Err(Error::parse(cline, 1, format!("expected {k} coefficients, got {}", coeffs.len())));
        }
        if initials.len() != k {
            return Err(Error::parse(iline, 1, format!("expected {k} initial values, got {}", initials.len())));
        }
        Recurrence::new(coeffs, initials)
    }

    pub fn to_record(&self) -> String {
        let join = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>().join(" ");
        format!("{}\n{}\n{}\n", self.order(), join(&self.coeffs), join(&self.initials))
    }
}

impl fmt::Display for Recurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>().join(", ");
        write!(f, "coeffs [{}], initials [{}]", join(&self.coeffs), join(&self.initials))
    }
}

/// Indices `1 <= j < k` of nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexSet {
    pub members: BTreeSet<usize>,
    pub order: usize,
    /// Every member has a strictly positive coefficient.
    pub all_positive: bool,
}

impl IndexSet {
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `gcd(I ∪ {k})`; equals `k` when `I` is empty.
    pub fn gcd_index(&self) -> usize {
        self.members.iter().fold(self.order, |g, &j| g.gcd(&j))
    }
}

/// All positive rational roots of `p`, ascending, by the rational root
/// theorem on the primitive integer form: candidates `d/e` with `d | a_0`,
/// `e | a_n`, pruned by the Cauchy bound and confirmed by exact evaluation.
pub fn rational_positive_roots(p: &Poly) -> Vec<Rational> {
    if p.degree() == 0 {
        return Vec::new();
    }
    let mut ints = p.to_primitive_integer();
    // Roots at zero are not positive; drop the factor x^v.
    let lowest = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    ints.drain(..lowest);
    if ints.len() < 2 {
        return Vec::new();
    }
    let a0 = ints[0].magnitude().clone();
    let an = ints[ints.len() - 1].magnitude().clone();
    let stripped = Poly::new(ints.iter().cloned().map(Rational::from_integer).collect());
    let bound = stripped.cauchy_bound();

    let mut roots = BTreeSet::new();
    for den in divisors_up_to(&an, &an) {
        let cap = (bound.clone() * Rational::from_integer(den.clone().into())).floor().to_integer();
        let cap = cap.to_biguint().unwrap_or_else(BigUint::zero);
        for num in divisors_up_to(&a0, &cap) {
            if !num.gcd(&den).is_one() {
                continue;
            }
            let r = Rational::new(num.clone().into(), den.clone().into());
            if stripped.eval(&r).is_zero() {
                roots.insert(r);
            }
        }
    }
    roots.into_iter().collect()
}
