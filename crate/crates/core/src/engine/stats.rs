//! First-digit counts and the Kolmogorov discrepancy of mantissas against
//! the logarithmic law `P(M_b < t) = log_b t`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::scalar::Real;

use super::mantissa::check_base;
use super::stream::LogTerm;

/// Fractional parts of `log_b a_n` for the positive terms of a stream.
#[derive(Clone, Debug, PartialEq)]
pub struct MantissaSample<F> {
    pub base: u64,
    /// Fractional parts in `[0, 1)`, in stream order.
    pub fracs: Vec<F>,
    /// Zero terms skipped while collecting.
    pub zero_terms: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenfordStats<F> {
    pub base: u64,
    pub n: usize,
    /// Counts of leading digits `1..b-1`; entry `d - 1` is digit `d`.
    pub first_digit_counts: Vec<u64>,
    /// `sup_t |empirical CDF of M_b - log_b t|`.
    pub discrepancy: F,
    /// `max_d |frequency(d) - log_b(1 + 1/d)|`.
    pub digit_max_err: F,
    pub zero_terms: u64,
}

impl<F: Real> BenfordStats<F> {
    pub fn frequency(&self, d: usize) -> F {
        F::from_count(self.first_digit_counts[d - 1] as usize) / F::from_count(self.n)
    }
}

/// `log_b(1 + 1/d)` for `d = 1..b-1`.
pub fn benford_probabilities<F: Real>(b: u64) -> Vec<F> {
    let ln_b = F::lit(b as f64).ln();
    (1..b).map(|d| (F::one() + F::one() / F::lit(d as f64)).ln() / ln_b).collect()
}

/// Collects the first `n` positive terms, skipping exact zeros.
pub fn mantissa_sample<F: Real, I>(stream: I, b: u64, n: usize) -> Result<MantissaSample<F>>
where
    I: IntoIterator<Item = Result<LogTerm<F>>>,
{
    check_base(b)?;
    let mut fracs = Vec::with_capacity(n);
    let mut zero_terms = 0;
    for term in stream {
        if fracs.len() == n {
            break;
        }
        let term = term?;
        match term.frac() {
            Some(f) => fracs.push(snap_frac(f, term.logb.expect("positive term"))),
            None => zero_terms += 1,
        }
    }
    if fracs.len() < n {
        return Err(Error::InsufficientTerms { needed: n, got: fracs.len() });
    }
    Ok(MantissaSample { base: b, fracs, zero_terms })
}

/// Statistics of the first `n` positive terms of `stream`.
pub fn benford_stats<F: Real, I>(stream: I, b: u64, n: usize) -> Result<BenfordStats<F>>
where
    I: IntoIterator<Item = Result<LogTerm<F>>>,
{
    Ok(mantissa_sample(stream, b, n)?.stats())
}

/// A fractional part within rounding distance of 1 is a mantissa of 1.
fn snap_frac<F: Real>(f: F, logb: F) -> F {
    if F::one() - f <= slack(logb) {
        F::zero()
    } else {
        f
    }
}

fn slack<F: Real>(logb: F) -> F {
    F::lit(64.0) * F::unit_roundoff() * logb.abs().max(F::one())
}

impl<F: Real> MantissaSample<F> {
    pub fn len(&self) -> usize {
        self.fracs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fracs.is_empty()
    }

    /// Leading digit of `b^f`: the largest `d` with `log_b d <= f`, allowing a
    /// rounding slack so that exact values such as `log_10 2` land on `d = 2`.
    pub fn first_digits(&self) -> Vec<u64> {
        let thresholds = digit_thresholds::<F>(self.base);
        let tol = slack::<F>(F::one()) * F::lit(16.0);
        let mut counts = vec![0u64; self.base as usize - 1];
        for &f in &self.fracs {
            let d = thresholds.partition_point(|&t| t <= f + tol);
            counts[d.max(1) - 1] += 1;
        }
        counts
    }

    /// One-sample Kolmogorov statistic of the fractional parts against the
    /// uniform law on `[0, 1)`.
    pub fn discrepancy(&self) -> F {
        let mut u = self.fracs.clone();
        u.sort_by(|a, b| a.partial_cmp(b).expect("finite fractions"));
        kolmogorov(&u)
    }

    pub fn stats(&self) -> BenfordStats<F> {
        let n = self.fracs.len();
        let counts = self.first_digits();
        let probs = benford_probabilities::<F>(self.base);
        let total = F::from_count(n.max(1));
        let digit_max_err = counts
            .iter()
            .zip(&probs)
            .map(|(&c, &p)| (F::from_count(c as usize) / total - p).abs())
            .fold(F::zero(), F::max);
        BenfordStats {
            base: self.base,
            n,
            first_digit_counts: counts,
            discrepancy: self.discrepancy(),
            digit_max_err,
            zero_terms: self.zero_terms,
        }
    }

    /// `t,empirical_cdf,log_b_t` on `points` equally spaced values of `t` in `[1, b)`.
    pub fn cdf_csv(&self, points: usize) -> String {
        let mut u = self.fracs.clone();
        u.sort_by(|a, b| a.partial_cmp(b).expect("finite fractions"));
        let b = F::lit(self.base as f64);
        let ln_b = b.ln();
        let n = F::from_count(u.len().max(1));
        let mut out = String::from("t,empirical_cdf,log_b_t\n");
        for i in 0..points {
            let t = F::one() + (b - F::one()) * F::from_count(i) / F::from_count(points);
            let lt = t.ln() / ln_b;
            let below = u.partition_point(|&f| f < lt);
            let _ = writeln!(out, "{},{},{}", t, F::from_count(below) / n, lt);
        }
        out
    }
}

/// `log_b d` for `d = 1..b-1`.
fn digit_thresholds<F: Real>(b: u64) -> Vec<F> {
    let ln_b = F::lit(b as f64).ln();
    (1..b).map(|d| F::lit(d as f64).ln() / ln_b).collect()
}

/// `max_i max(i/N - u_i, u_i - (i-1)/N)` over sorted `u_1..u_N`.
pub fn kolmogorov<F: Real>(sorted: &[F]) -> F {
    let n = F::from_count(sorted.len().max(1));
    sorted.iter().enumerate().fold(F::zero(), |d, (i, &u)| {
        let hi = F::from_count(i + 1) / n - u;
        let lo = u - F::from_count(i) / n;
        d.max(hi).max(lo)
    })
}

/// `digit,count,expected` where `expected = N log_b(1 + 1/d)`.
pub fn histogram_csv<F: Real>(stats: &BenfordStats<F>) -> String {
    let probs = benford_probabilities::<F>(stats.base);
    let mut out = String::from("digit,count,expected\n");
    for (d, (&c, &p)) in stats.first_digit_counts.iter().zip(&probs).enumerate() {
        let _ = writeln!(out, "{},{},{}", d + 1, c, p * F::from_count(stats.n));
    }
    out
}
