//! The five subcommands. Each builds a [`Report`] and, where the data is
//! tabular, a CSV rendering.

use std::time::Instant;

use benford_core::classify::{
    classify_with, describe, verdict_for_base, BaseAnswer, BaseDecision, SubsequenceClass, Verdict,
};
use benford_core::engine::{
    benford_probabilities, generate_log_stream, histogram_csv, mantissa_sample, resolve_mode, subsequence_stream,
    IndexPoly, MantissaSample, StreamMode,
};
use benford_core::lab::{pisot_growth_scan, prime_subsequence};
use benford_core::number_theory::{exceptional_bases, log_is_irrational, BaseScope, RhoStructure};
use benford_core::spectral::{perron_limit, spectral_profile, Dominance, PerronLimit, SpectralProfile};
use benford_core::structure::CompanionMatrix;
use benford_core::{Extended, Real, Recurrence};

use crate::args::{AnalyzeArgs, BasesArgs, Cli, Command, Format, PisotArgs, Precision, PrimesArgs, SimulateArgs};
use crate::error::{CliError, Result};
use crate::input::load_recurrence;
use crate::report::*;

/// Below this discrepancy a simulation counts as agreeing with a Benford answer.
pub const DISCREPANCY_THRESHOLD: f64 = 0.02;

pub struct Output {
    pub report: Report,
    pub csv: Option<String>,
}

pub fn execute(cli: &Cli) -> Result<Output> {
    if cli.format == Format::Csv && matches!(cli.command, Command::Analyze(_) | Command::Bases(_)) {
        return Err(CliError::Input("CSV output is available for simulate, pisot and primes".into()));
    }
    let p = cli.precision;
    match &cli.command {
        Command::Analyze(a) => match p {
            Precision::F32 => analyze::<f32>(a, p),
            Precision::F64 => analyze::<f64>(a, p),
            Precision::Extended => analyze::<Extended>(a, p),
        },
        Command::Simulate(a) => match p {
            Precision::F32 => simulate::<f32>(a, p),
            Precision::F64 => simulate::<f64>(a, p),
            Precision::Extended => simulate::<Extended>(a, p),
        },
        Command::Bases(a) => bases(a, p),
        Command::Pisot(a) => pisot(a, p),
        Command::Primes(a) => primes(a, p),
    }
}

pub fn render(out: &Output, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(&out.report)? + "\n"),
        Format::Csv => out.csv.clone().ok_or_else(|| CliError::Input("no tabular output for this command".into())),
    }
}

struct Clock {
    start: Instant,
    stage: Instant,
    timings: Vec<Timing>,
}

impl Clock {
    fn new() -> Self {
        let now = Instant::now();
        Clock { start: now, stage: now, timings: Vec::new() }
    }

    fn lap(&mut self, stage: &str) {
        let now = Instant::now();
        self.timings.push(Timing { stage: stage.into(), seconds: Num::float((now - self.stage).as_secs_f64()) });
        self.stage = now;
    }

    fn finish(mut self) -> Vec<Timing> {
        self.timings.push(Timing { stage: "total".into(), seconds: Num::float(self.start.elapsed().as_secs_f64()) });
        self.timings
    }
}

fn f<F: Real>(x: F) -> Num {
    Num::float(x.to_f64().unwrap_or(f64::NAN))
}

fn analyze<F: Real>(args: &AnalyzeArgs, precision: Precision) -> Result<Output> {
    let mut clock = Clock::new();
    let rec = load_recurrence(&args.recurrence)?;
    let mut r = Report::new("analyze", precision.name());
    describe_recurrence(&mut r, &rec);
    clock.lap("structure");

    let profile = spectral_profile::<F>(&rec);
    r.spectral = Some(Section::from_result(profile.as_ref().map(spectral_doc)));
    r.perron = Some(match &profile {
        Ok(p) if p.dominance == Dominance::Strict => {
            Section::from_result(perron_limit::<F>(&rec, p.rho).as_ref().map(perron_doc))
        }
        Ok(p) => Section::Unavailable {
            reason: format!(
                "dominance {}: a_n / rho^n has no limit; see the class limits",
                dominance_name(p.dominance)
            ),
        },
        Err(e) => Section::Unavailable { reason: format!("no certified dominant root: {e}") },
    });
    clock.lap("spectral");

    let (verdict, decision) = match args.base {
        Some(b) => {
            let d = verdict_for_base(&rec, b).map_err(|e| CliError::core("classify", e))?;
            (d.verdict.clone(), Some(d))
        }
        None => (classify_with(&rec, None, args.max_base).map_err(|e| CliError::core("classify", e))?, None),
    };
    r.verdict = Some(verdict_doc(&verdict, decision.as_ref()));
    r.classes = Some(verdict.classes.iter().map(class_doc).collect());
    r.base_scope = Some(if verdict.rule.is_benford_capable() {
        base_scope_section(&verdict.structure, args.max_base, args.base)?
    } else {
        Section::Unavailable { reason: format!("rule {} makes no Benford claim", verdict.rule) }
    });
    clock.lap("verdict");

    let base = args.base.unwrap_or(10);
    let empirical = simulate_stats::<F>(&rec, base, args.n, None).map(|(doc, _)| doc);
    let discrepancy = empirical.as_ref().ok().and_then(|s| s.discrepancy.as_f64());
    r.empirical = Some(Section::from_result(empirical));
    clock.lap("simulation");

    let verdict_empirical = match (decision.as_ref().map(|d| d.answer), discrepancy) {
        (Some(BaseAnswer::Benford), Some(d)) => Some(d < DISCREPANCY_THRESHOLD),
        (Some(BaseAnswer::NotBenford), Some(d)) => Some(d >= DISCREPANCY_THRESHOLD),
        _ => None,
    };
    r.cross_check = Some(CrossCheckDoc {
        spectral_structural: profile.as_ref().ok().and_then(SpectralProfile::cross_check),
        verdict_empirical,
        discrepancy_threshold: Num::float(DISCREPANCY_THRESHOLD),
    });
    r.timings = clock.finish();
    Ok(Output { report: r, csv: None })
}

fn simulate<F: Real>(args: &SimulateArgs, precision: Precision) -> Result<Output> {
    let mut clock = Clock::new();
    let rec = load_recurrence(&args.recurrence)?;
    let q =
        args.index_poly.as_deref().map(IndexPoly::parse).transpose().map_err(|e| CliError::core("--index-poly", e))?;
    let mut r = Report::new("simulate", precision.name());
    r.recurrence = Some((&rec).into());
    let (doc, sample) =
        simulate_stats::<F>(&rec, args.base, args.n, q.as_ref()).map_err(|e| CliError::core("simulation", e))?;
    r.empirical = Some(Section::Ok(doc));
    clock.lap("simulation");
    r.timings = clock.finish();
    let stats = sample.stats();
    let csv = format!("{}\n{}", histogram_csv(&stats), sample.cdf_csv(args.cdf_points));
    Ok(Output { report: r, csv: Some(csv) })
}

fn bases(args: &BasesArgs, precision: Precision) -> Result<Output> {
    let mut clock = Clock::new();
    let rec = load_recurrence(&args.recurrence)?;
    let mut r = Report::new("bases", precision.name());
    r.recurrence = Some((&rec).into());
    let verdict = classify_with(&rec, None, args.max_base).map_err(|e| CliError::core("classify", e))?;
    r.base_scope = Some(base_scope_section(&verdict.structure, args.max_base, args.base)?);
    r.verdict = Some(verdict_doc(&verdict, None));
    clock.lap("bases");
    r.timings = clock.finish();
    Ok(Output { report: r, csv: None })
}

fn pisot(args: &PisotArgs, precision: Precision) -> Result<Output> {
    let mut clock = Clock::new();
    let scan = pisot_growth_scan(args.m, args.kmax as usize).map_err(|e| CliError::core("pisot", e))?;
    let rows = scan
        .records
        .iter()
        .enumerate()
        .map(|(i, rec)| PisotRowDoc {
            k: Num::int(rec.k),
            rho: Num::float(rec.rho.estimate),
            rho_lo: Num::rational(&rec.rho.lo_exact),
            rho_hi: Num::rational(&rec.rho.hi_exact),
            value_at_m_plus_one: rec.value_at_m_plus_one,
            value_at_one: rec.value_at_one,
            auxiliary_identity: rec.auxiliary_identity,
            between_m_and_m_plus_one: rec.between_m_and_m_plus_one,
            lower_bound: rec.lower_bound,
            other_roots_in_unit_disk: rec.other_roots_in_unit_disk,
            max_other_modulus: Num::float(rec.max_other_modulus),
            below_next: scan.increasing.get(i).copied(),
            step_identity: scan.step_identity.get(i).map(|s| s.0),
        })
        .collect();
    let mut r = Report::new("pisot", precision.name());
    r.pisot = Some(PisotDoc {
        m: Num::int(args.m),
        kmax: Num::int(args.kmax),
        increasing: scan.is_increasing(),
        gap_decreasing: scan.gap_decreasing,
        lower_bound_from: scan.lower_bound_from.map(Num::int),
        rows,
    });
    clock.lap("pisot");
    r.timings = clock.finish();
    Ok(Output { report: r, csv: Some(scan.to_csv()) })
}

fn primes(args: &PrimesArgs, precision: Precision) -> Result<Output> {
    let mut clock = Clock::new();
    let record = prime_subsequence(args.ell, args.nmax).map_err(|e| CliError::core("primes", e))?;
    let rows = record
        .rows
        .iter()
        .zip(record.relative_errors())
        .map(|(row, err)| PrimeRowDoc {
            n: Num::int(row.n),
            index: Num::int(row.index),
            prime: Num::int(row.prime),
            ratio: Num::float(row.pnt_ratio),
            relative_error: Num::float(err),
        })
        .collect();
    let mut r = Report::new("primes", precision.name());
    r.primes = Some(PrimesDoc { ell: Num::int(args.ell), ln_ell: Num::float((args.ell as f64).ln()), rows });
    clock.lap("sieve");
    r.timings = clock.finish();
    Ok(Output { report: r, csv: Some(record.to_csv()) })
}

fn describe_recurrence(r: &mut Report, rec: &Recurrence) {
    r.recurrence = Some(rec.into());
    r.char_poly = Some(rec.char_poly().coeffs().iter().map(Num::rational).collect());
    let is = rec.index_set();
    r.index_set = Some(IndexSetDoc {
        members: is.members.iter().map(Num::int).collect(),
        gcd: Num::int(is.gcd_index()),
        all_positive: is.all_positive,
    });
    let pattern = CompanionMatrix::new(rec).pattern();
    r.primitivity = Some(PrimitivityDoc {
        nonnegative_regime: rec.is_nonnegative_regime(),
        irreducible: pattern.is_irreducible(),
        primitive: pattern.is_primitive().ok(),
        exponent: pattern.primitivity_exponent().ok().flatten().map(Num::int),
        imprimitivity_index: pattern.imprimitivity_index().ok().map(Num::int),
        wielandt_bound: Num::int(pattern.wielandt_bound()),
    });
}

fn dominance_name(d: Dominance) -> String {
    match d {
        Dominance::Strict => "strict".into(),
        Dominance::Cyclic(h) => format!("cyclic({h})"),
        Dominance::Irregular(h) => format!("irregular({h})"),
        Dominance::Exceeded => "exceeded".into(),
        Dominance::Unresolved => "unresolved".into(),
    }
}

fn spectral_doc<F: Real>(p: &SpectralProfile<F>) -> SpectralDoc {
    let roots = p
        .roots
        .approximations
        .iter()
        .zip(&p.roots.radii)
        .map(|(z, &radius)| RootDoc { re: f(z.re), im: f(z.im), radius: f(radius) })
        .collect();
    SpectralDoc {
        rho: f(p.rho),
        rho_lo: Num::rational(&p.interval.lo_exact),
        rho_hi: Num::rational(&p.interval.hi_exact),
        rho_exact: p.interval.exact_root.as_ref().map(Num::rational),
        roots,
        root_status: format!("{:?}", p.roots.status).to_lowercase(),
        h_spectral: Num::int(p.h_spectral),
        dominance: dominance_name(p.dominance),
        h_structural: p.h_structural.map(Num::int),
        cross_check: p.cross_check(),
    }
}

fn perron_doc<F: Real>(p: &PerronLimit<F>) -> PerronDoc {
    PerronDoc {
        alpha: f(p.alpha),
        alpha_closed_form: f(p.alpha_closed_form),
        limit_vector: p.limit_vector.iter().map(|&x| f(x)).collect(),
        iterations: Num::int(p.iterations),
    }
}

fn verdict_doc(v: &Verdict, decision: Option<&BaseDecision>) -> VerdictDoc {
    VerdictDoc {
        rule: v.rule.to_string(),
        benford_capable: v.rule.is_benford_capable(),
        base_scope: (&v.base_scope).into(),
        structure: describe(&v.structure),
        checks: v.checks.clone(),
        base: decision.map(|d| BaseAnswerDoc {
            base: Num::int(d.base),
            answer: d.answer,
            evidence_n: d.evidence.map(|e| Num::int(e.n)),
            evidence_discrepancy: d.evidence.map(|e| Num::float(e.discrepancy)),
        }),
    }
}

fn class_doc(c: &SubsequenceClass) -> ClassDoc {
    ClassDoc {
        residue: Num::int(c.residue),
        h: Num::int(c.h),
        first_index: Num::int(c.first_index()),
        status: c.status,
        contracted: (&c.contracted).into(),
        contracted_gcd: Num::int(c.contracted_gcd),
        alpha: c.alpha.map(Num::float),
    }
}

fn base_scope_section(structure: &RhoStructure, max_base: u64, base: Option<u64>) -> Result<Section<BaseScopeDoc>> {
    let log_rationality = match base {
        Some(b) => Some(LogDoc {
            base: Num::int(b),
            log_b_rho: format!("{:?}", log_is_irrational(structure, b).map_err(|e| CliError::core("--base", e))?)
                .to_lowercase(),
        }),
        None => None,
    };
    Ok(Section::from_result(exceptional_bases(structure, max_base).map(|report| BaseScopeDoc {
        structure: describe(structure),
        scope: match report.scope {
            BaseScope::AllBases => "all-bases".into(),
            BaseScope::AlmostAll => "almost-all".into(),
        },
        max_base: Num::int(report.n),
        exceptional_bases: report.exceptional_bases.iter().map(Num::int).collect(),
        bound_value: Num::float(report.bound_value),
        bound_holds: report.bound_holds,
        log_rationality,
    })))
}

fn simulate_stats<F: Real>(
    rec: &Recurrence,
    b: u64,
    n: usize,
    q: Option<&IndexPoly>,
) -> benford_core::Result<(StatsDoc, MantissaSample<F>)> {
    let mode = resolve_mode(rec, StreamMode::Auto);
    let stream = generate_log_stream::<F>(rec, b, mode)?;
    let sample = match q {
        None => mantissa_sample(stream, b, n)?,
        Some(q) => mantissa_sample(subsequence_stream(stream, q, n)?.into_iter().map(Ok), b, n)?,
    };
    let stats = sample.stats();
    let doc = StatsDoc {
        base: Num::int(b),
        n: Num::int(stats.n),
        stream: if mode == StreamMode::Exact { "exact" } else { "float" }.into(),
        index_poly: q.map(|q| q.to_string()),
        first_digit_counts: stats.first_digit_counts.iter().map(Num::int).collect(),
        frequencies: (1..b as usize).map(|d| f(stats.frequency(d))).collect(),
        expected: benford_probabilities::<F>(b).into_iter().map(f).collect(),
        discrepancy: f(stats.discrepancy),
        digit_max_err: f(stats.digit_max_err),
        zero_terms: Num::int(stats.zero_terms),
    };
    Ok((doc, sample))
}
