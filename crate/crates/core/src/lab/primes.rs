//! Primes at the indices `l, l^2, ..., l^n`, by a segmented odd-only sieve.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default largest prime index the sieve will reach.
pub const DEFAULT_PRIME_INDEX_CAP: u64 = 20_000_000;

/// Odd numbers per segment (one bit each).
const SEGMENT_ODDS: usize = 1 << 18;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrimeRow {
    pub n: u32,
    pub index: u64,
    pub prime: u64,
    /// `p_{l^n} / (n l^n)`, which tends to `ln l`.
    pub pnt_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrimeDemoRecord {
    pub ell: u64,
    pub rows: Vec<PrimeRow>,
}

impl PrimeDemoRecord {
    /// `|ratio / ln l - 1|` per row.
    pub fn relative_errors(&self) -> Vec<f64> {
        let ln = (self.ell as f64).ln();
        self.rows.iter().map(|r| (r.pnt_ratio / ln - 1.0).abs()).collect()
    }

    /// `n,index,prime,ratio,ln_ell`.
    pub fn to_csv(&self) -> String {
        let ln = (self.ell as f64).ln();
        let mut out = String::from("n,index,prime,ratio,ln_ell\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{},{},{}", r.n, r.index, r.prime, r.pnt_ratio, ln);
        }
        out
    }
}

pub fn prime_subsequence(ell: u64, nmax: u32) -> Result<PrimeDemoRecord> {
    prime_subsequence_with_cap(ell, nmax, DEFAULT_PRIME_INDEX_CAP)
}

pub fn prime_subsequence_with_cap(ell: u64, nmax: u32, cap: u64) -> Result<PrimeDemoRecord> {
    if ell < 2 {
        return Err(Error::InvalidBase(ell));
    }
    let mut indices = Vec::with_capacity(nmax as usize);
    let mut idx = 1u64;
    for _ in 0..nmax {
        idx = idx.checked_mul(ell).filter(|&v| v <= cap).ok_or(Error::BudgetExceeded {
            what: "prime index",
            value: idx.saturating_mul(ell),
            cap,
        })?;
        indices.push(idx);
    }
    let primes = nth_primes(&indices);
    let rows = indices
        .iter()
        .zip(primes)
        .enumerate()
        .map(|(i, (&index, prime))| {
            let n = i as u32 + 1;
            PrimeRow { n, index, prime, pnt_ratio: prime as f64 / (n as f64 * index as f64) }
        })
        .collect();
    Ok(PrimeDemoRecord { ell, rows })
}

/// Upper bound for the `n`-th prime: `n (ln n + ln ln n)` for `n >= 6`.
pub fn nth_prime_upper_bound(n: u64) -> u64 {
    if n < 6 {
        return 13;
    }
    let x = n as f64;
    (x * (x.ln() + x.ln().ln())).ceil() as u64 + 1
}

/// Primes `p_i` for the given ascending indices (1-based, `p_1 = 2`).
pub fn nth_primes(indices: &[u64]) -> Vec<u64> {
    debug_assert!(indices.windows(2).all(|w| w[0] <= w[1]));
    let Some(&last) = indices.last() else {
        return Vec::new();
    };
    let limit = nth_prime_upper_bound(last);
    let mut out = Vec::with_capacity(indices.len());
    let mut next = 0;
    let mut count = 1u64;
    while next < indices.len() && indices[next] == 1 {
        out.push(2);
        next += 1;
    }
    let base = small_odd_primes(limit.isqrt() + 1);
    // next odd multiple of each base prime still to be crossed out
    let mut cursor: Vec<u64> = base.iter().map(|&p| p * p).collect();
    let mut bits = vec![0u64; SEGMENT_ODDS / 64];
    let mut low = 3u64;
    while next < indices.len() && low <= limit {
        let high = (low + 2 * SEGMENT_ODDS as u64).min(limit + 1);
        bits.iter_mut().for_each(|w| *w = 0);
        for (&p, c) in base.iter().zip(cursor.iter_mut()) {
            let mut m = *c;
            while m < high {
                let i = ((m - low) / 2) as usize;
                bits[i / 64] |= 1 << (i % 64);
                m += 2 * p;
            }
            *c = m;
        }
        let odds = (high - low).div_ceil(2) as usize;
        for (w, word) in bits.iter().enumerate() {
            let start = w * 64;
            if start >= odds || next == indices.len() {
                break;
            }
            let valid = (odds - start).min(64);
            let mask = if valid == 64 { u64::MAX } else { (1u64 << valid) - 1 };
            let primes_here = (!word & mask).count_ones() as u64;
            if count + primes_here < indices[next] {
                count += primes_here;
                continue;
            }
            for b in 0..valid {
                if word & (1 << b) == 0 {
                    count += 1;
                    while next < indices.len() && indices[next] == count {
                        out.push(low + 2 * (start + b) as u64);
                        next += 1;
                    }
                }
            }
        }
        low = high + high.is_multiple_of(2) as u64;
    }
    out
}

/// Odd primes up to `n` by a plain sieve.
fn small_odd_primes(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in (3..=n).step_by(2) {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        for j in (i * i..=n).step_by(2 * i) {
            composite[j] = true;
        }
    }
    out
}
