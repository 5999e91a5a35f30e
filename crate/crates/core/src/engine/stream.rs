//! Log-space term streams. The float stream iterates the state vector
//! renormalized by its max-norm and keeps the scale as an exponent; the exact
//! stream iterates an integer rescaling of the recurrence.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::mantissa::{check_base, log_b_big};
use crate::error::{Error, Result};
use crate::rational::{lcm_of_denominators, Rational};
use crate::recurrence::Recurrence;
use crate::scalar::Real;
use crate::spectral::{certified_root, condition2_test, dominant_coefficient_bracket, dominant_coefficient_vanishes};

/// One term of a stream: `log_b a_n`, or `None` when `a_n = 0` exactly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogTerm<F> {
    pub index: u64,
    pub logb: Option<F>,
}

impl<F: Real> LogTerm<F> {
    pub fn is_zero(&self) -> bool {
        self.logb.is_none()
    }

    /// Fractional part of `log_b a_n` in `[0, 1)`.
    pub fn frac(&self) -> Option<F> {
        self.logb.map(|v| {
            let f = v - v.floor();
            if f >= F::one() {
                F::zero()
            } else {
                f
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StreamMode {
    /// Renormalized floating-point iteration.
    Float,
    /// Exact big-integer iteration; cost grows with the size of the terms.
    Exact,
    /// Exact when the float iteration is known to be unstable (the dominant
    /// coefficient vanishes in the mixed-sign regime), float otherwise.
    Auto,
}

/// Picks the concrete mode for `Auto`.
pub fn resolve_mode(rec: &Recurrence, mode: StreamMode) -> StreamMode {
    if mode != StreamMode::Auto {
        return mode;
    }
    let p = rec.char_poly();
    if !rec.is_nonnegative_regime() && condition2_test(&p) {
        let (lo, hi) = dominant_coefficient_bracket(&p);
        if let Ok(iv) = certified_root::<f64>(&p, &lo, &hi) {
            if dominant_coefficient_vanishes(rec, &iv) {
                return StreamMode::Exact;
            }
        }
    }
    StreamMode::Float
}

pub enum LogStream<F> {
    Float(FloatLogStream<F>),
    Exact(ExactLogStream),
}

impl<F: Real> Iterator for LogStream<F> {
    type Item = Result<LogTerm<F>>;

    fn next(&mut self) -> Option<Self::Item> {
        match self {
            LogStream::Float(s) => s.next(),
            LogStream::Exact(s) => s.next().map(|r| r.map(|t| LogTerm { index: t.index, logb: t.logb.map(F::lit) })),
        }
    }
}

/// Unbounded stream of `log_b a_n`, `n = 1, 2, ...`. The stream ends when the
/// state becomes exactly zero; a nonpositive term yields
/// [`Error::NegativeTerm`] and ends it.
pub fn generate_log_stream<F: Real>(rec: &Recurrence, b: u64, mode: StreamMode) -> Result<LogStream<F>> {
    check_base(b)?;
    Ok(match resolve_mode(rec, mode) {
        StreamMode::Exact => LogStream::Exact(ExactLogStream::new(rec, b)),
        _ => LogStream::Float(FloatLogStream::new(rec, b)),
    })
}

/// First `n` terms of the stream (fewer if it ends early).
pub fn log_terms<F: Real>(rec: &Recurrence, b: u64, n: usize, mode: StreamMode) -> Result<Vec<LogTerm<F>>> {
    generate_log_stream::<F>(rec, b, mode)?.take(n).collect()
}

pub struct FloatLogStream<F> {
    coeffs: Vec<F>,
    state: Vec<F>,
    /// Exact nonzero pattern of the state, tracked when no cancellation can
    /// occur (nonnegative coefficients and initials).
    pattern: Option<Vec<bool>>,
    coeff_nonzero: Vec<bool>,
    exponent: F,
    compensation: F,
    ln_b: F,
    index: u64,
    done: bool,
}

impl<F: Real> FloatLogStream<F> {
    pub fn new(rec: &Recurrence, b: u64) -> Self {
        let no_cancellation = rec.is_nonnegative_regime() && rec.flags().initials_nonnegative;
        let pattern = no_cancellation.then(|| rec.initials().iter().map(|a| !a.is_zero()).collect());
        let mut s = FloatLogStream {
            coeffs: rec.coeffs().iter().map(F::from_rational).collect(),
            state: rec.initials().iter().map(F::from_rational).collect(),
            pattern,
            coeff_nonzero: rec.coeffs().iter().map(|c| !c.is_zero()).collect(),
            exponent: F::zero(),
            compensation: F::zero(),
            ln_b: F::lit(b as f64).ln(),
            index: 1,
            done: false,
        };
        s.renormalize();
        s
    }

    fn add_exponent(&mut self, x: F) {
        // Kahan summation
        let y = x - self.compensation;
        let t = self.exponent + y;
        self.compensation = (t - self.exponent) - y;
        self.exponent = t;
    }

    fn renormalize(&mut self) {
        if let Some(p) = &self.pattern {
            for (v, &nz) in self.state.iter_mut().zip(p) {
                if !nz {
                    *v = F::zero();
                }
            }
        }
        let scale = self.state.iter().fold(F::zero(), |m, v| m.max(v.abs()));
        if scale == F::zero() || !scale.is_finite() {
            return;
        }
        for v in self.state.iter_mut() {
            *v = *v / scale;
        }
        let lg = scale.ln() / self.ln_b;
        self.add_exponent(lg);
    }

    fn all_zero(&self) -> bool {
        match &self.pattern {
            Some(p) => p.iter().all(|&nz| !nz),
            None => self.state.iter().all(|v| *v == F::zero()),
        }
    }

    fn step(&mut self) {
        let next = self.coeffs.iter().zip(&self.state).fold(F::zero(), |acc, (&c, &y)| acc + c * y);
        self.state.rotate_left(1);
        *self.state.last_mut().expect("order >= 1") = next;
        if let Some(p) = &mut self.pattern {
            let nz = self.coeff_nonzero.iter().zip(p.iter()).any(|(&c, &v)| c && v);
            p.rotate_left(1);
            *p.last_mut().expect("order >= 1") = nz;
        }
        self.renormalize();
    }
}

impl<F: Real> Iterator for FloatLogStream<F> {
    type Item = Result<LogTerm<F>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done || self.all_zero() {
            return None;
        }
        let n = self.index;
        let zero = self.pattern.as_ref().is_some_and(|p| !p[0]);
        let item = if zero {
            Ok(LogTerm { index: n, logb: None })
        } else if self.state[0] > F::zero() {
            let lg = self.exponent + self.state[0].ln() / self.ln_b;
            Ok(LogTerm { index: n, logb: Some(lg) })
        } else {
            self.done = true;
            return Some(Err(Error::NegativeTerm { index: n }));
        };
        self.step();
        self.index += 1;
        Some(item)
    }
}

/// Exact stream over the integer sequence `B_n = d q^(n-1) a_n`, where `q` is
/// the common denominator of the coefficients and `d` that of the initial
/// values. `B_n` satisfies a recurrence with integer coefficients
/// `q^(k-1-j) q c_j`, so the iteration never leaves the integers.
pub struct ExactLogStream {
    coeffs: Vec<BigInt>,
    state: Vec<BigInt>,
    log_d: f64,
    log_q: f64,
    b: u64,
    index: u64,
    done: bool,
}

/// Exact stream terms carry `f64` logarithms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExactTerm {
    pub index: u64,
    pub logb: Option<f64>,
}

impl ExactLogStream {
    pub fn new(rec: &Recurrence, b: u64) -> Self {
        let k = rec.order();
        let q = lcm_of_denominators(rec.coeffs());
        let d = lcm_of_denominators(rec.initials());
        let coeffs = rec
            .coeffs()
            .iter()
            .enumerate()
            .map(|(j, c)| (c * Rational::from_integer(q.pow((k - j) as u32))).to_integer())
            .collect();
        let state = rec
            .initials()
            .iter()
            .enumerate()
            .map(|(j, a)| (a * Rational::from_integer(&d * q.pow(j as u32))).to_integer())
            .collect();
        ExactLogStream { coeffs, state, log_d: log_b_big(&d, b), log_q: log_b_big(&q, b), b, index: 1, done: false }
    }
}

impl Iterator for ExactLogStream {
    type Item = Result<ExactTerm>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done || self.state.iter().all(Zero::is_zero) {
            return None;
        }
        let n = self.index;
        let head = &self.state[0];
        let item = if head.is_zero() {
            ExactTerm { index: n, logb: None }
        } else if head.is_positive() {
            let lg = log_b_big(head, self.b) - self.log_d - (n - 1) as f64 * self.log_q;
            ExactTerm { index: n, logb: Some(lg) }
        } else {
            self.done = true;
            return Some(Err(Error::NegativeTerm { index: n }));
        };
        let next = self.coeffs.iter().zip(&self.state).fold(BigInt::zero(), |acc, (c, y)| acc + c * y);
        self.state.rotate_left(1);
        *self.state.last_mut().expect("order >= 1") = next;
        self.index += 1;
        Some(Ok(item))
    }
}

pub const DEFAULT_EXACT_PREFIX_CAP: usize = 200;

/// `a_1..a_m` by exact rational iteration, `m <= 200`.
pub fn exact_prefix(rec: &Recurrence, m: usize) -> Result<Vec<Rational>> {
    exact_prefix_with_cap(rec, m, DEFAULT_EXACT_PREFIX_CAP)
}

pub fn exact_prefix_with_cap(rec: &Recurrence, m: usize, cap: usize) -> Result<Vec<Rational>> {
    if m > cap {
        return Err(Error::BudgetExceeded { what: "exact prefix length", value: m as u64, cap: cap as u64 });
    }
    let k = rec.order();
    let mut out: Vec<Rational> = rec.initials().iter().take(m).cloned().collect();
    while out.len() < m {
        let n = out.len();
        let next = rec.coeffs().iter().zip(&out[n - k..]).fold(Rational::zero(), |acc, (c, a)| acc + c * a);
        out.push(next);
    }
    Ok(out)
}

/// Convenience for the exact sign pattern: indices `n <= m` with `a_n = 0`.
pub fn exact_zero_indices(rec: &Recurrence, m: usize) -> Result<Vec<u64>> {
    Ok(exact_prefix(rec, m)?.iter().enumerate().filter(|(_, a)| a.is_zero()).map(|(i, _)| i as u64 + 1).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::mantissa::log_b_rational;
    use crate::rational::{int, ratio};

    fn counterexample() -> Recurrence {
        Recurrence::new(vec![ratio(-3, 10), ratio(31, 10)], vec![ratio(1, 10), ratio(1, 100)]).unwrap()
    }

    #[test]
    fn fibonacci_small_values() {
        let rec = Recurrence::from_ints(&[1, 1], &[1, 1]).unwrap();
        let terms = log_terms::<f64>(&rec, 10, 5, StreamMode::Float).unwrap();
        let want = [0.0, 0.0, 2f64.log10(), 3f64.log10(), 5f64.log10()];
        for (t, w) in terms.iter().zip(want) {
            assert!((t.logb.unwrap() - w).abs() < 1e-15, "{t:?}");
        }
        assert_eq!(terms.iter().map(|t| t.index).collect::<Vec<_>>(), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn zero_pattern_propagates() {
        let rec = Recurrence::from_ints(&[1, 0, 1, 0], &[1, 0, 1, 0]).unwrap();
        let terms = log_terms::<f64>(&rec, 10, 40, StreamMode::Float).unwrap();
        let exact = exact_prefix(&rec, 40).unwrap();
        for (t, a) in terms.iter().zip(&exact) {
            assert_eq!(t.is_zero(), a.is_zero(), "n = {}", t.index);
            assert_eq!(t.is_zero(), t.index % 2 == 0);
        }
    }

    #[test]
    fn counterexample_is_exactly_minus_n() {
        let rec = counterexample();
        assert_eq!(resolve_mode(&rec, StreamMode::Auto), StreamMode::Exact);
        let terms = log_terms::<f64>(&rec, 10, 500, StreamMode::Auto).unwrap();
        for t in &terms {
            assert_eq!(t.logb, Some(-(t.index as f64)));
        }
        // the float iteration drifts off the vanishing mode
        let float = log_terms::<f64>(&rec, 10, 60, StreamMode::Float).unwrap();
        assert!((float[59].logb.unwrap() + 60.0).abs() > 1.0);
    }

    #[test]
    fn auto_mode_picks_float_elsewhere() {
        let fib = Recurrence::from_ints(&[1, 1], &[1, 1]).unwrap();
        assert_eq!(resolve_mode(&fib, StreamMode::Auto), StreamMode::Float);
        let cx = counterexample().with_initials(vec![int(1), int(1)]).unwrap();
        assert_eq!(resolve_mode(&cx, StreamMode::Auto), StreamMode::Float);
    }

    #[test]
    fn exact_prefixes() {
        let fib = Recurrence::from_ints(&[1, 1], &[1, 1]).unwrap();
        let want: Vec<Rational> = [1, 1, 2, 3, 5, 8, 13, 21, 34, 55].iter().map(|&v| int(v)).collect();
        assert_eq!(exact_prefix(&fib, 10).unwrap(), want);

        let trib = Recurrence::from_ints(&[1, 1, 1], &[1, 1, 1]).unwrap();
        let want: Vec<Rational> = [1, 1, 1, 3, 5, 9, 17].iter().map(|&v| int(v)).collect();
        assert_eq!(exact_prefix(&trib, 7).unwrap(), want);

        let cx = exact_prefix(&counterexample(), 4).unwrap();
        assert_eq!(cx, vec![ratio(1, 10), ratio(1, 100), ratio(1, 1000), ratio(1, 10000)]);

        assert!(matches!(exact_prefix(&fib, 201), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn float_and_exact_streams_agree_with_exact_logs() {
        let recs = [
            Recurrence::from_ints(&[1, 1], &[1, 1]).unwrap(),
            Recurrence::from_ints(&[1, 1, 1], &[1, 1, 1]).unwrap(),
            Recurrence::new(vec![ratio(1, 3), ratio(5, 2)], vec![ratio(2, 7), int(3)]).unwrap(),
        ];
        for rec in &recs {
            let exact = exact_prefix(rec, 200).unwrap();
            let float = log_terms::<f64>(rec, 10, 200, StreamMode::Float).unwrap();
            let big = log_terms::<f64>(rec, 10, 200, StreamMode::Exact).unwrap();
            for ((a, f), e) in exact.iter().zip(&float).zip(&big) {
                let want = log_b_rational(a, 10).unwrap();
                assert!((f.logb.unwrap() - want).abs() < 1e-9, "{rec} n={}", f.index);
                assert!((e.logb.unwrap() - want).abs() < 1e-12, "{rec} n={}", e.index);
            }
        }
    }

    #[test]
    fn negative_terms_abort() {
        let rec = Recurrence::from_ints(&[-1, 1], &[1, 1]).unwrap();
        let got: Vec<_> = generate_log_stream::<f64>(&rec, 10, StreamMode::Float).unwrap().take(10).collect();
        // 1, 1, 0, -1: the zero is not certified (mixed signs), so it aborts
        assert_eq!(got.last().unwrap(), &Err(Error::NegativeTerm { index: 3 }));
        assert_eq!(got.len(), 3);
        let exact: Vec<_> = generate_log_stream::<f64>(&rec, 10, StreamMode::Exact).unwrap().take(10).collect();
        assert_eq!(exact[2], Ok(LogTerm { index: 3, logb: None }));
        assert_eq!(exact[3], Err(Error::NegativeTerm { index: 4 }));
    }

    #[test]
    fn identically_zero_stream_ends() {
        let rec = Recurrence::from_ints(&[1, 1], &[0, 0]).unwrap();
        assert_eq!(generate_log_stream::<f64>(&rec, 10, StreamMode::Float).unwrap().count(), 0);
        assert_eq!(generate_log_stream::<f64>(&rec, 10, StreamMode::Exact).unwrap().count(), 0);
    }
}
