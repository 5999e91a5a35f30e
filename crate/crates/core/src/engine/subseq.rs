//! Subsequences `a_{Q(n)}` along an integer polynomial `Q`.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Real;

use super::stream::LogTerm;

/// Integer polynomial in `n`, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexPoly {
    coeffs: Vec<i64>,
}

/// Largest index a subsequence may reach.
pub const MAX_SUBSEQUENCE_INDEX: u64 = 100_000_000;

impl IndexPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IndexPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Parses sums of terms such as `n^2+1`, `2n+1`, `3*n^2 - n + 2`.
    pub fn parse(text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::parse(1, 1, "empty index polynomial"));
        }
        let mut coeffs: Vec<i64> = Vec::new();
        let bytes = s.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let start = pos;
            let mut sign = 1i64;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -1;
                }
                pos += 1;
            } else if pos > 0 {
                return Err(Error::parse(1, pos + 1, "expected '+' or '-'"));
            }
            let digits_start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let has_coeff = pos > digits_start;
            let mut c: i64 = if has_coeff {
                s[digits_start..pos].parse().map_err(|_| Error::parse(1, digits_start + 1, "coefficient too large"))?
            } else {
                1
            };
            let mut power = 0u32;
            if pos < bytes.len() && bytes[pos] == b'*' {
                if !has_coeff {
                    return Err(Error::parse(1, pos + 1, "'*' without a coefficient"));
                }
                pos += 1;
                if pos >= bytes.len() || bytes[pos] != b'n' {
                    return Err(Error::parse(1, pos + 1, "expected 'n' after '*'"));
                }
            }
            if pos < bytes.len() && bytes[pos] == b'n' {
                pos += 1;
                power = 1;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    let ds = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if pos == ds {
                        return Err(Error::parse(1, pos + 1, "expected an exponent after '^'"));
                    }
                    power = s[ds..pos].parse().map_err(|_| Error::parse(1, ds + 1, "exponent too large"))?;
                }
            } else if !has_coeff {
                return Err(Error::parse(1, start + 1, "expected a number or 'n'"));
            }
            if pos < bytes.len() && bytes[pos] != b'+' && bytes[pos] != b'-' {
                return Err(Error::parse(1, pos + 1, format!("unexpected '{}'", bytes[pos] as char)));
            }
            c *= sign;
            let p = power as usize;
            if p > 32 {
                return Err(Error::parse(1, start + 1, "exponent above 32"));
            }
            if coeffs.len() <= p {
                coeffs.resize(p + 1, 0);
            }
            coeffs[p] = coeffs[p].checked_add(c).ok_or_else(|| Error::parse(1, start + 1, "coefficient overflow"))?;
        }
        Ok(IndexPoly::new(coeffs))
    }

    pub fn eval(&self, n: u64) -> Result<i128> {
        let x = n as i128;
        let mut acc: i128 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(x).and_then(|v| v.checked_add(c as i128)).ok_or(Error::IndexOverflow { n })?;
        }
        Ok(acc)
    }

    /// `Q(1), ..., Q(count)`, each checked to be at least 1.
    pub fn indices(&self, count: usize) -> Result<Vec<u64>> {
        if self.degree() == 0 {
            return Err(Error::ConstantIndexPoly);
        }
        (1..=count as u64)
            .map(|n| {
                let v = self.eval(n)?;
                if v < 1 {
                    return Err(Error::IndexBelowOne { n, value: v });
                }
                u64::try_from(v).map_err(|_| Error::IndexOverflow { n })
            })
            .collect()
    }
}

impl fmt::Display for IndexPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (p, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let m = c.unsigned_abs();
            match (p, m) {
                (0, _) => write!(f, "{m}")?,
                (1, 1) => write!(f, "n")?,
                (1, _) => write!(f, "{m}n")?,
                (_, 1) => write!(f, "n^{p}")?,
                _ => write!(f, "{m}n^{p}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Terms `a_{Q(1)}, ..., a_{Q(count)}` taken from one pass over `stream`
/// (which must start at index 1). Each emitted term keeps its original index.
pub fn subsequence_stream<F: Real, I>(stream: I, q: &IndexPoly, count: usize) -> Result<Vec<LogTerm<F>>>
where
    I: IntoIterator<Item = Result<LogTerm<F>>>,
{
    let targets = q.indices(count)?;
    let max = targets.iter().copied().max().unwrap_or(0);
    if max > MAX_SUBSEQUENCE_INDEX {
        return Err(Error::BudgetExceeded { what: "subsequence index", value: max, cap: MAX_SUBSEQUENCE_INDEX });
    }
    let mut order: Vec<usize> = (0..targets.len()).collect();
    order.sort_by_key(|&i| targets[i]);
    let mut out: Vec<Option<LogTerm<F>>> = vec![None; targets.len()];
    let mut next = 0;
    for term in stream {
        if next == order.len() {
            break;
        }
        let term = term?;
        while next < order.len() && targets[order[next]] == term.index {
            out[order[next]] = Some(term);
            next += 1;
        }
    }
    // targets past the end of the stream lie where the sequence is identically zero
    Ok(out.into_iter().zip(&targets).map(|(t, &idx)| t.unwrap_or(LogTerm { index: idx, logb: None })).collect())
}
