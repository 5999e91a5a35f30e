//! Benford verdicts for a recurrence, assembled from exact coefficient tests,
//! the dominant root and the rationality of `log_b rho`.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::engine::{check_base, generate_log_stream, mantissa_sample, StreamMode};
use crate::error::{Error, Result};
use crate::number_theory::{
    exceptional_bases, log_is_irrational, rho_structure, structure_of_rational, BaseScope as Scope, LogRationality,
    RhoStructure,
};
use crate::rational::{format_rational, Rational};
use crate::recurrence::Recurrence;
use crate::spectral::{
    certified_root, check_condition2, condition2_test, dominant_coefficient_bracket, dominant_coefficient_vanishes,
    dominant_root, perron_limit,
};
use crate::structure::CompanionMatrix;

/// Which decision rule produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rule {
    /// Nonnegative coefficients, `c_0 > 0`, `gcd(I ∪ {k}) = 1`.
    PrimitiveDominance,
    /// `c_{k-1} >= 2` and `c_{k-1} > sum_{j<k-1} |c_j| + 1`, with `a_n` not tending to 0.
    DominantCoefficient,
    /// Nonnegative coefficients with `gcd(I ∪ {k}) = h > 1`: `h` interleaved
    /// subsequences, each driven by a primitive contracted recurrence.
    PeriodicSplit {
        h: usize,
    },
    /// `I` is empty: `a_{n+k} = c_0 a_n`, so every residue class mod `k` is geometric.
    PureGeometric,
    /// The dominant coefficient test passed but the `rho^n` component of `a_n`
    /// vanishes, so `a_n -> 0`.
    TendsToZero,
    Inconclusive,
}

impl Rule {
    /// Rules under which the sequence is Benford in every base where
    /// `log_b rho` is irrational.
    pub fn is_benford_capable(&self) -> bool {
        !matches!(self, Rule::TendsToZero | Rule::Inconclusive)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::PrimitiveDominance => write!(f, "primitive-dominance"),
            Rule::DominantCoefficient => write!(f, "dominant-coefficient"),
            Rule::PeriodicSplit { h } => write!(f, "periodic-split({h})"),
            Rule::PureGeometric => write!(f, "pure-geometric"),
            Rule::TendsToZero => write!(f, "tends-to-zero"),
            Rule::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BaseScope {
    SingleBase(u64),
    AllBases,
    /// Every base except the listed ones up to `up_to`.
    AlmostAll {
        exceptions: Vec<u64>,
        up_to: u64,
    },
    None,
}

/// One exact test behind a verdict, with its inputs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub detail: String,
    pub holds: bool,
}

impl Check {
    fn new(name: &str, detail: impl Into<String>, holds: bool) -> Self {
        Check { name: name.to_string(), detail: detail.into(), holds }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassStatus {
    BenfordCandidate,
    IdenticallyZero,
}

/// The terms `a_n` with `n ≡ m (mod h)`, as a recurrence of order `k/h`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubsequenceClass {
    pub residue: usize,
    pub h: usize,
    /// `b_j = a_{first + h (j - 1)}`; `first` is `m`, or `h` for `m = 0`.
    pub contracted: Recurrence,
    /// `gcd(I(q) ∪ {k/h})` of the contracted recurrence.
    pub contracted_gcd: usize,
    pub status: ClassStatus,
    /// `lim a_{m + hn} / (rho^h)^n`.
    pub alpha: Option<f64>,
}

impl SubsequenceClass {
    pub fn first_index(&self) -> usize {
        if self.residue == 0 {
            self.h
        } else {
            self.residue
        }
    }

    /// Indices of the first `count` terms of the class.
    pub fn indices(&self, count: usize) -> Vec<u64> {
        (0..count as u64).map(|j| self.first_index() as u64 + self.h as u64 * j).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub rule: Rule,
    pub base_scope: BaseScope,
    pub checks: Vec<Check>,
    pub classes: Vec<SubsequenceClass>,
    pub structure: RhoStructure,
}

/// Largest base scanned for exceptions when no base is given.
pub const DEFAULT_MAX_BASE: u64 = 100;

pub fn classify(rec: &Recurrence, b: Option<u64>) -> Result<Verdict> {
    classify_with(rec, b, DEFAULT_MAX_BASE)
}

/// Decision tree: empty index set, primitive nonnegative, dominant
/// coefficient (with the vanishing test), periodic split, else inconclusive.
/// The base scope is `SingleBase(b)` when `b` is given and `log_b rho` is
/// irrational, otherwise the exceptional bases up to `max_base`.
pub fn classify_with(rec: &Recurrence, b: Option<u64>, max_base: u64) -> Result<Verdict> {
    if let Some(b) = b {
        check_base(b)?;
    }
    let mut checks = Vec::new();
    let flags = rec.flags();
    let index = rec.index_set();
    let k = rec.order();
    let join = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>().join(", ");
    let members: Vec<String> = index.members.iter().map(|j| j.to_string()).collect();

    if rec.initials().iter().all(Zero::is_zero) {
        checks.push(Check::new("initials-zero", "a_1 = ... = a_k = 0", true));
        return Ok(inconclusive(checks));
    }

    if index.is_empty() {
        let c0 = rec.coeffs()[0].clone();
        checks.push(Check::new("index-set-empty", format!("I = {{}}, a_(n+{k}) = {} a_n", format_rational(&c0)), true));
        if c0.is_negative() {
            checks.push(Check::new("alternating-sign", "c_0 < 0: the statement concerns |a_n|", true));
        }
        let structure = structure_of_rational(&c0.abs(), k as u32);
        let classes = classes_for(rec, k);
        let mut verdict =
            Verdict { rule: Rule::PureGeometric, base_scope: BaseScope::None, checks, classes, structure };
        resolve_scope(&mut verdict, b, max_base)?;
        return Ok(verdict);
    }

    let nonneg = rec.is_nonnegative_regime() && flags.initials_nonnegative;
    let h = index.gcd_index();
    checks.push(Check::new(
        "index-set",
        format!("I = {{{}}}, k = {k}, gcd(I ∪ {{k}}) = {h}", members.join(", ")),
        true,
    ));

    if nonneg && h == 1 {
        checks.push(Check::new(
            "nonnegative-coefficients",
            format!("c = [{}], c_0 > 0, initials [{}] >= 0", join(rec.coeffs()), join(rec.initials())),
            true,
        ));
        checks.push(Check::new("gcd-one", format!("gcd(I ∪ {{{k}}}) = 1"), true));
        if k <= 64 {
            let primitive = CompanionMatrix::new(rec).pattern().is_primitive().unwrap_or(false);
            checks.push(Check::new(
                "boolean-primitivity",
                "some power of the companion pattern is all true",
                primitive,
            ));
        }
        let analysis = rho_structure(rec)?;
        push_structure_checks(&mut checks, &analysis);
        let classes = classes_for(rec, 1);
        let mut verdict = Verdict {
            rule: Rule::PrimitiveDominance,
            base_scope: BaseScope::None,
            checks,
            classes,
            structure: analysis.structure,
        };
        resolve_scope(&mut verdict, b, max_base)?;
        return Ok(verdict);
    }

    let p = rec.char_poly();
    if condition2_test(&p) {
        let top = rec.coeffs()[k - 1].clone();
        let rest: Rational = rec.coeffs()[..k - 1].iter().map(|c| c.abs()).sum();
        checks.push(Check::new(
            "dominant-coefficient-test",
            format!(
                "c_(k-1) = {} >= 2 and > sum |c_j| + 1 = {}",
                format_rational(&top),
                format_rational(&(rest + Rational::one()))
            ),
            true,
        ));
        let confirm = check_condition2::<f64>(&p);
        checks.push(Check::new(
            "dominant-coefficient-roots",
            "one simple root in (c-1, c+1), all others in the unit disk",
            confirm.verified,
        ));
        let (lo, hi) = dominant_coefficient_bracket(&p);
        let iv = certified_root::<f64>(&p, &lo, &hi)?;
        let vanishes = dominant_coefficient_vanishes(rec, &iv);
        checks.push(Check::new(
            "dominant-component-vanishes",
            format!("gcd(p, s) changes sign on [{}, {}]", format_rational(&iv.lo_exact), format_rational(&iv.hi_exact)),
            vanishes,
        ));
        if vanishes {
            let analysis = rho_structure(rec)?;
            return Ok(Verdict {
                rule: Rule::TendsToZero,
                base_scope: BaseScope::None,
                checks,
                classes: Vec::new(),
                structure: analysis.structure,
            });
        }
        let alpha = perron_limit(rec, iv.estimate)
            .map(|l| l.alpha)
            .unwrap_or_else(|_| crate::spectral::closed_form_alpha(rec, iv.estimate));
        checks.push(Check::new("dominant-component-positive", format!("alpha = {alpha:e}"), alpha > 0.0));
        if !(alpha > 0.0) {
            return Ok(inconclusive(checks));
        }
        let analysis = rho_structure(rec)?;
        push_structure_checks(&mut checks, &analysis);
        let mut classes = classes_for(rec, 1);
        for c in classes.iter_mut() {
            c.alpha = Some(alpha);
        }
        let mut verdict = Verdict {
            rule: Rule::DominantCoefficient,
            base_scope: BaseScope::None,
            checks,
            classes,
            structure: analysis.structure,
        };
        resolve_scope(&mut verdict, b, max_base)?;
        return Ok(verdict);
    }

    if nonneg {
        checks.push(Check::new(
            "nonnegative-coefficients",
            format!("c = [{}], c_0 > 0, initials [{}] >= 0", join(rec.coeffs()), join(rec.initials())),
            true,
        ));
        checks.push(Check::new("gcd-above-one", format!("gcd(I ∪ {{{k}}}) = {h}"), true));
        let analysis = rho_structure(rec)?;
        push_structure_checks(&mut checks, &analysis);
        let classes = classes_for(rec, h);
        let zero: Vec<String> = classes
            .iter()
            .filter(|c| c.status == ClassStatus::IdenticallyZero)
            .map(|c| c.residue.to_string())
            .collect();
        checks.push(Check::new(
            "zero-classes",
            format!("residues with zero initial vector: {{{}}}", zero.join(", ")),
            true,
        ));
        let mut verdict = Verdict {
            rule: Rule::PeriodicSplit { h },
            base_scope: BaseScope::None,
            checks,
            classes,
            structure: analysis.structure,
        };
        resolve_scope(&mut verdict, b, max_base)?;
        return Ok(verdict);
    }

    checks.push(Check::new("nonnegative-regime", "coefficients, c_0 or initials fail the sign requirements", false));
    checks.push(Check::new("dominant-coefficient-test", "c_(k-1) > sum |c_j| + 1 fails", false));
    Ok(inconclusive(checks))
}

fn inconclusive(checks: Vec<Check>) -> Verdict {
    Verdict {
        rule: Rule::Inconclusive,
        base_scope: BaseScope::None,
        checks,
        classes: Vec::new(),
        structure: RhoStructure::Unknown,
    }
}

fn push_structure_checks(checks: &mut Vec<Check>, analysis: &crate::number_theory::RhoAnalysis) {
    if let Some(iv) = &analysis.interval {
        checks.push(Check::new(
            "dominant-root-interval",
            format!(
                "rho^{} in [{}, {}] for q = {}",
                analysis.h,
                format_rational(&iv.lo_exact),
                format_rational(&iv.hi_exact),
                analysis.contracted
            ),
            true,
        ));
    }
    if let Some(ex) = &analysis.exclusion {
        let signs: Vec<String> =
            ex.integers.iter().chain(&ex.inverse_integers).map(|(x, s)| format!("sign q({x}) = {s}")).collect();
        checks.push(Check::new(
            "integer-exclusion",
            format!("{}; rational roots in interval: {}", signs.join(", "), ex.rational_roots_in_interval),
            ex.holds,
        ));
    }
    checks.push(Check::new("dominance-source", analysis.dominance_source, analysis.interval.is_some()));
    checks.push(Check::new("rho-structure", describe(&analysis.structure), true));
}

pub fn describe(s: &RhoStructure) -> String {
    match s {
        RhoStructure::Power { u, c, h, inverse } => {
            format!("rho^{h} = {u}^{}{c}", if *inverse { "-" } else { "" })
        }
        RhoStructure::RationalNonPower { rho_h, h } => {
            format!("rho^{h} = {} (numerator and denominator above 1)", format_rational(rho_h))
        }
        RhoStructure::Irrational { h } => format!("rho^{h} irrational (no rational root in the interval)"),
        RhoStructure::Unit => "rho = 1".to_string(),
        RhoStructure::Unknown => "unknown".to_string(),
    }
}

fn resolve_scope(v: &mut Verdict, b: Option<u64>, max_base: u64) -> Result<()> {
    match b {
        Some(b) => {
            let r = log_is_irrational(&v.structure, b)?;
            v.checks.push(Check::new("log-irrational", format!("log_{b} rho: {r:?}"), r == LogRationality::Irrational));
            if r == LogRationality::Irrational {
                v.base_scope = BaseScope::SingleBase(b);
            }
        }
        None => match exceptional_bases(&v.structure, max_base) {
            Ok(report) => {
                v.checks.push(Check::new(
                    "exceptional-bases",
                    format!("|B_{}| = {} <= {:.3}", report.n, report.exceptional_bases.len(), report.bound_value),
                    report.bound_holds,
                ));
                v.base_scope = match report.scope {
                    Scope::AllBases => BaseScope::AllBases,
                    Scope::AlmostAll => BaseScope::AlmostAll { exceptions: report.exceptional_bases, up_to: max_base },
                };
            }
            Err(Error::UnitRoot) | Err(Error::UnknownRhoStructure) => {}
            Err(e) => return Err(e),
        },
    }
    Ok(())
}

/// The `h` residue classes of a nonnegative recurrence with
/// `h = gcd(I ∪ {k})`. A class is identically zero exactly when its initial
/// vector is zero.
pub fn decompose_subsequences(rec: &Recurrence) -> Result<Vec<SubsequenceClass>> {
    if !(rec.is_nonnegative_regime() && rec.flags().initials_nonnegative) {
        return Err(Error::OutOfRegime(
            "subsequence decomposition needs nonnegative coefficients and initials with c_0 > 0",
        ));
    }
    Ok(classes_for(rec, rec.index_set().gcd_index()))
}

fn classes_for(rec: &Recurrence, h: usize) -> Vec<SubsequenceClass> {
    let k = rec.order();
    let coeffs = rec.contracted_coeffs(h).expect("h divides k and every index of a nonzero coefficient");
    let kq = k / h;
    let q_poly = crate::number_theory::contracted_poly(rec, h);
    let rho_q =
        if rec.is_nonnegative_regime() { dominant_root::<f64>(&q_poly).ok().map(|iv| iv.estimate) } else { None };
    (0..h)
        .map(|m| {
            let first = if m == 0 { h } else { m };
            let initials: Vec<Rational> = (0..kq).map(|j| rec.initials()[first - 1 + h * j].clone()).collect();
            let zero = initials.iter().all(Zero::is_zero);
            let contracted = Recurrence::new(coeffs.clone(), initials).expect("contracted recurrence is valid");
            let contracted_gcd = contracted.index_set().gcd_index();
            let alpha = match (zero, rho_q) {
                (true, _) => Some(0.0),
                (false, Some(r)) => {
                    perron_limit(&contracted, r).ok().map(|l| if m == 0 { l.alpha } else { r * l.alpha })
                }
                (false, None) => None,
            };
            SubsequenceClass {
                residue: m,
                h,
                contracted,
                contracted_gcd,
                status: if zero { ClassStatus::IdenticallyZero } else { ClassStatus::BenfordCandidate },
                alpha,
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BaseAnswer {
    Benford,
    NotBenford,
    Unknown,
}

/// Empirical discrepancy attached to an undecided answer; evidence only.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub n: usize,
    pub discrepancy: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BaseDecision {
    pub base: u64,
    pub answer: BaseAnswer,
    pub verdict: Verdict,
    pub evidence: Option<Evidence>,
}

/// Terms simulated for the evidence attached to an undecided answer.
pub const EVIDENCE_TERMS: usize = 10_000;

/// Whether the sequence is Benford in base `b`: decided when `log_b rho` is
/// settled exactly, otherwise `Unknown` with the discrepancy of the first
/// `10^4` terms attached.
pub fn verdict_for_base(rec: &Recurrence, b: u64) -> Result<BaseDecision> {
    let verdict = classify(rec, Some(b))?;
    let answer = match verdict.rule {
        Rule::TendsToZero => BaseAnswer::NotBenford,
        Rule::Inconclusive => BaseAnswer::Unknown,
        _ => match log_is_irrational(&verdict.structure, b)? {
            LogRationality::Irrational => BaseAnswer::Benford,
            LogRationality::Rational => BaseAnswer::NotBenford,
            LogRationality::Unknown => BaseAnswer::Unknown,
        },
    };
    let evidence = if answer == BaseAnswer::Unknown { empirical_discrepancy(rec, b, EVIDENCE_TERMS) } else { None };
    Ok(BaseDecision { base: b, answer, verdict, evidence })
}

pub fn empirical_discrepancy(rec: &Recurrence, b: u64, n: usize) -> Option<Evidence> {
    let stream = generate_log_stream::<f64>(rec, b, StreamMode::Auto).ok()?;
    let sample = mantissa_sample(stream, b, n).ok()?;
    Some(Evidence { n, discrepancy: sample.discrepancy() })
}
