//! The JSON report shared by every subcommand. Numbers are tagged
//! `{"exact": "p/q"}` or `{"float": x}`.

use benford_core::classify::{BaseAnswer, BaseScope, Check, ClassStatus};
use benford_core::rational::format_rational;
use benford_core::{Rational, Recurrence};
use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "benford-report";
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Num {
    Exact(String),
    Float(f64),
}

impl Num {
    pub fn rational(r: &Rational) -> Self {
        Num::Exact(format_rational(r))
    }

    pub fn int(n: impl ToString) -> Self {
        Num::Exact(n.to_string())
    }

    pub fn float(x: f64) -> Self {
        Num::Float(x)
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Num::Float(x) => Some(*x),
            Num::Exact(s) => s.parse().ok(),
        }
    }
}

/// A section that may fail without failing the report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Section<T> {
    Ok(T),
    Unavailable { reason: String },
}

impl<T> Section<T> {
    pub fn from_result<E: std::fmt::Display>(r: Result<T, E>) -> Self {
        match r {
            Ok(v) => Section::Ok(v),
            Err(e) => Section::Unavailable { reason: e.to_string() },
        }
    }

    pub fn ok(&self) -> Option<&T> {
        match self {
            Section::Ok(v) => Some(v),
            Section::Unavailable { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub version: u32,
    pub command: String,
    pub precision: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recurrence: Option<RecurrenceDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub char_poly: Option<Vec<Num>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index_set: Option<IndexSetDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primitivity: Option<PrimitivityDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectral: Option<Section<SpectralDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perron: Option<Section<PerronDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<VerdictDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<ClassDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_scope: Option<Section<BaseScopeDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub empirical: Option<Section<StatsDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<CrossCheckDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pisot: Option<PisotDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primes: Option<PrimesDoc>,
    pub timings: Vec<Timing>,
}

impl Report {
    pub fn new(command: &str, precision: &str) -> Self {
        Report {
            schema: SCHEMA.into(),
            version: SCHEMA_VERSION,
            command: command.into(),
            precision: precision.into(),
            recurrence: None,
            char_poly: None,
            index_set: None,
            primitivity: None,
            spectral: None,
            perron: None,
            verdict: None,
            classes: None,
            base_scope: None,
            empirical: None,
            cross_check: None,
            pisot: None,
            primes: None,
            timings: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecurrenceDoc {
    pub order: Num,
    /// `c_0, ..., c_{k-1}`.
    pub coeffs: Vec<Num>,
    /// `a_1, ..., a_k`.
    pub initials: Vec<Num>,
}

impl From<&Recurrence> for RecurrenceDoc {
    fn from(rec: &Recurrence) -> Self {
        RecurrenceDoc {
            order: Num::int(rec.order()),
            coeffs: rec.coeffs().iter().map(Num::rational).collect(),
            initials: rec.initials().iter().map(Num::rational).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndexSetDoc {
    pub members: Vec<Num>,
    pub gcd: Num,
    pub all_positive: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrimitivityDoc {
    pub nonnegative_regime: bool,
    pub irreducible: bool,
    pub primitive: Option<bool>,
    pub exponent: Option<Num>,
    pub imprimitivity_index: Option<Num>,
    pub wielandt_bound: Num,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralDoc {
    pub rho: Num,
    pub rho_lo: Num,
    pub rho_hi: Num,
    pub rho_exact: Option<Num>,
    pub roots: Vec<RootDoc>,
    pub root_status: String,
    pub h_spectral: Num,
    pub dominance: String,
    pub h_structural: Option<Num>,
    pub cross_check: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootDoc {
    pub re: Num,
    pub im: Num,
    pub radius: Num,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PerronDoc {
    /// `lim a_n / rho^n`.
    pub alpha: Num,
    pub alpha_closed_form: Num,
    pub limit_vector: Vec<Num>,
    pub iterations: Num,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictDoc {
    pub rule: String,
    pub benford_capable: bool,
    pub base_scope: ScopeDoc,
    pub structure: String,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<BaseAnswerDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScopeDoc {
    SingleBase { base: Num },
    AllBases,
    AlmostAll { exceptions: Vec<Num>, up_to: Num },
    None,
}

impl From<&BaseScope> for ScopeDoc {
    fn from(s: &BaseScope) -> Self {
        match s {
            BaseScope::SingleBase(b) => ScopeDoc::SingleBase { base: Num::int(b) },
            BaseScope::AllBases => ScopeDoc::AllBases,
            BaseScope::AlmostAll { exceptions, up_to } => {
                ScopeDoc::AlmostAll { exceptions: exceptions.iter().map(Num::int).collect(), up_to: Num::int(up_to) }
            }
            BaseScope::None => ScopeDoc::None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BaseAnswerDoc {
    pub base: Num,
    pub answer: BaseAnswer,
    /// Discrepancy of a short simulation, attached when the answer is unknown.
    pub evidence_n: Option<Num>,
    pub evidence_discrepancy: Option<Num>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassDoc {
    pub residue: Num,
    pub h: Num,
    pub first_index: Num,
    pub status: ClassStatus,
    pub contracted: RecurrenceDoc,
    pub contracted_gcd: Num,
    /// `lim a_{first + h n} / (rho^h)^n`.
    pub alpha: Option<Num>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BaseScopeDoc {
    pub structure: String,
    pub scope: String,
    pub max_base: Num,
    pub exceptional_bases: Vec<Num>,
    /// `sqrt(N) ln N / ln 2`.
    pub bound_value: Num,
    pub bound_holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub log_rationality: Option<LogDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogDoc {
    pub base: Num,
    pub log_b_rho: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StatsDoc {
    pub base: Num,
    pub n: Num,
    pub stream: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index_poly: Option<String>,
    /// Entry `d - 1` is digit `d`.
    pub first_digit_counts: Vec<Num>,
    pub frequencies: Vec<Num>,
    pub expected: Vec<Num>,
    pub discrepancy: Num,
    pub digit_max_err: Num,
    pub zero_terms: Num,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossCheckDoc {
    /// Spectral and structural counts of dominant roots agree.
    pub spectral_structural: Option<bool>,
    /// A decided answer agrees with the simulated discrepancy.
    pub verdict_empirical: Option<bool>,
    pub discrepancy_threshold: Num,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PisotDoc {
    pub m: Num,
    pub kmax: Num,
    pub increasing: bool,
    pub gap_decreasing: bool,
    pub lower_bound_from: Option<Num>,
    pub rows: Vec<PisotRowDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PisotRowDoc {
    pub k: Num,
    pub rho: Num,
    pub rho_lo: Num,
    pub rho_hi: Num,
    pub value_at_m_plus_one: bool,
    pub value_at_one: bool,
    pub auxiliary_identity: bool,
    pub between_m_and_m_plus_one: bool,
    pub lower_bound: bool,
    pub other_roots_in_unit_disk: bool,
    pub max_other_modulus: Num,
    /// Comparison with the next row; absent on the last row.
    pub below_next: Option<bool>,
    pub step_identity: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrimesDoc {
    pub ell: Num,
    pub ln_ell: Num,
    pub rows: Vec<PrimeRowDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrimeRowDoc {
    pub n: Num,
    pub index: Num,
    pub prime: Num,
    /// `p_{l^n} / (n l^n)`.
    pub ratio: Num,
    pub relative_error: Num,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub stage: String,
    pub seconds: Num,
}
