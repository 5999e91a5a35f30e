//! The family `p_{k,m}(x) = x^k - m x^{k-1} - ... - m x - m`, whose dominant
//! roots are Pisot numbers increasing in `k` towards `m + 1`.

use std::fmt::Write as _;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{int, Rational};
use crate::spectral::{all_roots_refined, dominant_root, RootInterval};

/// Modulus margin for the non-dominant roots.
pub const DISK_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct PisotRecord {
    pub k: usize,
    pub m: u32,
    pub rho: RootInterval<f64>,
    /// `p_{k,m}(m+1) = 1`.
    pub value_at_m_plus_one: bool,
    /// `p_{k,m}(1) = 1 - km`.
    pub value_at_one: bool,
    /// `(x - 1) p_{k,m}(x) = x^{k+1} - (m+1) x^k + m`.
    pub auxiliary_identity: bool,
    /// `m < rho < m + 1` on the certified interval.
    pub between_m_and_m_plus_one: bool,
    /// `(m+1) k / (k+1) < rho` on the certified interval.
    pub lower_bound: bool,
    pub other_roots_in_unit_disk: bool,
    pub max_other_modulus: f64,
}

pub fn pisot_poly(k: usize, m: u32) -> Poly {
    let mut c = vec![-int(m as i64); k];
    c.push(Rational::one());
    Poly::new(c)
}

pub fn pisot_family(k: usize, m: u32) -> Result<PisotRecord> {
    if k < 2 || m < 1 {
        return Err(Error::OutOfRegime("Pisot family needs k >= 2 and m >= 1"));
    }
    let p = pisot_poly(k, m);
    let mi = int(m as i64);
    let m1 = &mi + Rational::one();
    let value_at_m_plus_one = p.eval(&m1).is_one();
    let value_at_one = p.eval(&Rational::one()) == int(1 - k as i64 * m as i64);
    let x_minus_one = Poly::new(vec![-Rational::one(), Rational::one()]);
    let mut aux = vec![Rational::zero(); k + 2];
    aux[0] = mi.clone();
    aux[k] = -m1.clone();
    aux[k + 1] = Rational::one();
    let auxiliary_identity = &x_minus_one * &p == Poly::new(aux);

    let rho = dominant_root::<f64>(&p)?;
    let between_m_and_m_plus_one = mi < rho.lo_exact && rho.hi_exact < m1;
    let lower = Rational::new((m1.to_integer()) * (k as i64), (k as i64 + 1).into());
    let lower_bound = lower < rho.lo_exact;

    let roots = all_roots_refined::<f64>(&p);
    let mut max_other_modulus = 0.0f64;
    let mut dominant_seen = false;
    let mut radius_ok = roots.is_resolved();
    for c in &roots.clusters {
        let is_rho =
            !dominant_seen && (c.center.re - rho.estimate).abs() <= c.radius.max(rho.width()) + 1e-12 * rho.estimate;
        if is_rho {
            dominant_seen = true;
            continue;
        }
        max_other_modulus = max_other_modulus.max(c.center.norm());
        radius_ok &= c.radius < DISK_TOL;
    }
    let other_roots_in_unit_disk = dominant_seen && radius_ok && max_other_modulus < 1.0 - DISK_TOL;
    Ok(PisotRecord {
        k,
        m,
        rho,
        value_at_m_plus_one,
        value_at_one,
        auxiliary_identity,
        between_m_and_m_plus_one,
        lower_bound,
        other_roots_in_unit_disk,
        max_other_modulus,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthScan {
    pub m: u32,
    /// Records for `k = 2..=kmax`.
    pub records: Vec<PisotRecord>,
    /// `rho_{k,m} < rho_{k+1,m}` on disjoint certified intervals, per `k`.
    pub increasing: Vec<bool>,
    /// `p_{k+1,m}(lo) < -m < p_{k+1,m}(hi)` on the interval of `rho_{k,m}`,
    /// with `p_{k+1,m}(rho_{k,m})` at the estimate.
    pub step_identity: Vec<(bool, f64)>,
    /// `m + 1 - rho_{k,m}` strictly decreasing.
    pub gap_decreasing: bool,
    /// Smallest `k` from which the lower bound holds through `kmax`.
    pub lower_bound_from: Option<usize>,
}

impl GrowthScan {
    pub fn is_increasing(&self) -> bool {
        self.increasing.iter().all(|&b| b)
    }

    /// `k,m,rho,lo,hi,m_lt_rho_lt_m1,lower_bound,other_in_disk,max_other_modulus`.
    pub fn to_csv(&self) -> String {
        pisot_csv(&self.records)
    }
}

pub fn pisot_csv(records: &[PisotRecord]) -> String {
    let mut out = String::from("k,m,rho,lo,hi,m_lt_rho_lt_m1,lower_bound,other_in_disk,max_other_modulus\n");
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.k,
            r.m,
            r.rho.estimate,
            r.rho.lo,
            r.rho.hi,
            r.between_m_and_m_plus_one,
            r.lower_bound,
            r.other_roots_in_unit_disk,
            r.max_other_modulus
        );
    }
    out
}

pub fn pisot_growth_scan(m: u32, kmax: usize) -> Result<GrowthScan> {
    if kmax < 3 {
        return Err(Error::OutOfRegime("growth scan needs kmax >= 3"));
    }
    let records = (2..=kmax).map(|k| pisot_family(k, m)).collect::<Result<Vec<_>>>()?;
    let mi = int(m as i64);
    let mut increasing = Vec::new();
    let mut step_identity = Vec::new();
    for w in records.windows(2) {
        let (a, b) = (&w[0].rho, &w[1].rho);
        increasing.push(a.hi_exact < b.lo_exact);
        let next = pisot_poly(w[0].k + 1, m);
        let target = -mi.clone();
        let (lo, hi) = (next.eval(&a.lo_exact), next.eval(&a.hi_exact));
        let holds = if a.exact_root.is_some() { lo == target } else { lo < target && target < hi };
        step_identity.push((holds, next.eval_real(a.estimate)));
    }
    let gaps: Vec<f64> = records.iter().map(|r| (m + 1) as f64 - r.rho.estimate).collect();
    let gap_decreasing = gaps.windows(2).all(|w| w[1] < w[0]);
    let lower_bound_from =
        records.iter().rposition(|r| !r.lower_bound).map_or(Some(2), |i| records.get(i + 1).map(|r| r.k));
    Ok(GrowthScan { m, records, increasing, step_identity, gap_decreasing, lower_bound_from })
}
