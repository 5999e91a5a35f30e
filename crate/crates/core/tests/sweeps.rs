//! Seeded random sweeps and exhaustive scans.

use benford_core::classify::{classify, verdict_for_base, BaseAnswer, BaseScope};
use benford_core::engine::{
    exact_prefix, generate_log_stream, mantissa_sample, subsequence_stream, IndexPoly, StreamMode,
};
use benford_core::lab::{pisot_growth_scan, prime_subsequence};
use benford_core::number_theory::{log_is_irrational, rho_structure, LogRationality, RhoStructure};
use benford_core::rational::ratio;
use benford_core::spectral::{dominant_root, perron_limit, spectral_profile, Dominance};
use benford_core::structure::CompanionMatrix;
use benford_core::{LogTerm64, Rational, Recurrence};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Coefficients in `(0, 5]` with denominators up to 4, positive initials.
fn positive_recurrence(rng: &mut ChaCha8Rng) -> Recurrence {
    let k = rng.gen_range(2..=6usize);
    let coeffs: Vec<Rational> = (0..k)
        .map(|_| {
            let d = rng.gen_range(1..=4i64);
            ratio(rng.gen_range(1..=5 * d), d)
        })
        .collect();
    let initials: Vec<Rational> = (0..k).map(|_| ratio(rng.gen_range(1..=9), 1)).collect();
    Recurrence::new(coeffs, initials).unwrap()
}

fn sparse_primitive(rng: &mut ChaCha8Rng) -> Recurrence {
    loop {
        let k = rng.gen_range(2..=7usize);
        let mut coeffs: Vec<i64> = (0..k).map(|_| if rng.gen_bool(0.5) { 0 } else { rng.gen_range(1..=4) }).collect();
        coeffs[0] = rng.gen_range(1..=4);
        let initials: Vec<i64> = (0..k).map(|_| rng.gen_range(0..=5)).collect();
        if initials.iter().all(|&a| a == 0) {
            continue;
        }
        let rec = Recurrence::from_ints(&coeffs, &initials).unwrap();
        if rec.index_set().gcd_index() == 1 {
            return rec;
        }
    }
}

#[test]
fn perron_limits_match_exact_ratios() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut gapped = 0;
    for i in 0..200 {
        let rec = positive_recurrence(&mut rng);
        let rho = dominant_root::<f64>(&rec.char_poly()).unwrap().estimate;
        let limit = perron_limit(&rec, rho).unwrap();
        assert!(limit.alpha > 0.0);
        let terms = exact_prefix(&rec, 60).unwrap();
        let err = |n: usize| (terms[n - 1].to_f64().unwrap() / rho.powi(n as i32) - limit.alpha).abs() / limit.alpha;
        let profile = spectral_profile::<f64>(&rec).unwrap();
        let second = profile
            .roots
            .approximations
            .iter()
            .map(|z| z.norm())
            .filter(|m| (m - rho).abs() > 1e-9 * rho)
            .fold(0.0, f64::max);
        // the error decays like (second / rho)^n
        if (second / rho).powi(60) < 1e-9 {
            gapped += 1;
            assert!(err(60) < 1e-6, "sample {i}: {rec}: {:e}", err(60));
        }
        // below 1e-9 both are limited by the precision of alpha and rho^n
        assert!(err(60) <= err(20).max(1e-9), "sample {i}: {rec}: {:e} {:e}", err(20), err(60));
        assert!((limit.alpha - limit.alpha_closed_form).abs() <= 1e-9 * limit.alpha);
    }
    assert!(gapped >= 150, "{gapped}");
}

#[test]
fn sparse_limits_match_the_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..200 {
        let rec = sparse_primitive(&mut rng);
        let rho = dominant_root::<f64>(&rec.char_poly()).unwrap().estimate;
        let limit = perron_limit(&rec, rho).unwrap();
        assert!(limit.alpha > 0.0, "sample {i}: {rec}");
        let rel = (limit.alpha - limit.alpha_closed_form).abs() / limit.alpha;
        assert!(rel < 1e-8, "sample {i}: {rec}: {} vs {}", limit.alpha, limit.alpha_closed_form);
    }
}

#[test]
fn spectral_and_structural_periods_agree() {
    for k in 2..=7usize {
        for mask in 0u32..(1 << (k - 1)) {
            let mut coeffs = vec![1i64];
            coeffs.extend((1..k).map(|j| ((mask >> (j - 1)) & 1) as i64));
            let rec = Recurrence::from_ints(&coeffs, &vec![1; k]).unwrap();
            let gcd = rec.index_set().gcd_index();
            let structural = CompanionMatrix::new(&rec).pattern().imprimitivity_index().unwrap();
            assert_eq!(structural, gcd, "{coeffs:?}");
            let profile = spectral_profile::<f64>(&rec).unwrap();
            assert_eq!(profile.h_spectral, gcd, "{coeffs:?}");
            let expected = if gcd == 1 { Dominance::Strict } else { Dominance::Cyclic(gcd) };
            assert_eq!(profile.dominance, expected, "{coeffs:?}");
            assert_eq!(profile.cross_check(), Some(true));
        }
    }
}

fn discrepancy(rec: &Recurrence, b: u64, n: usize) -> f64 {
    let stream = generate_log_stream::<f64>(rec, b, StreamMode::Auto).unwrap();
    mantissa_sample(stream, b, n).unwrap().discrepancy()
}

#[test]
fn benford_verdicts_agree_with_simulation() {
    let mut cases: Vec<(Recurrence, u64)> = vec![
        (Recurrence::from_ints(&[1, 1], &[1, 1]).unwrap(), 10),
        (Recurrence::from_ints(&[1, 1, 1], &[1, 1, 2]).unwrap(), 10),
        (Recurrence::new(vec![ratio(-3, 10), ratio(31, 10)], vec![ratio(1, 1), ratio(1, 1)]).unwrap(), 10),
        (Recurrence::from_ints(&[1, 1], &[2, 1]).unwrap(), 7),
        (Recurrence::from_ints(&[1, 1, 1, 1], &[1, 2, 3, 4]).unwrap(), 3),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    while cases.len() < 55 {
        let rec = sparse_primitive(&mut rng);
        let b = rng.gen_range(3..=12u64);
        cases.push((rec, b));
    }
    let mut decided = 0;
    for (rec, b) in &cases {
        let d = verdict_for_base(rec, *b).unwrap();
        if d.answer == BaseAnswer::Benford {
            decided += 1;
            assert_eq!(d.verdict.base_scope, BaseScope::SingleBase(*b));
            let dn = discrepancy(rec, *b, 100_000);
            assert!(dn < 0.02, "{rec} base {b}: D_N = {dn}");
        }
    }
    assert!(decided >= 50, "{decided} decided");

    let counterexample =
        Recurrence::new(vec![ratio(-3, 10), ratio(31, 10)], vec![ratio(1, 10), ratio(1, 100)]).unwrap();
    assert_eq!(verdict_for_base(&counterexample, 10).unwrap().answer, BaseAnswer::NotBenford);
    assert!(discrepancy(&counterexample, 10, 100_000) > 0.1);
    let doubling = Recurrence::from_ints(&[2], &[1]).unwrap();
    assert_eq!(verdict_for_base(&doubling, 4).unwrap().answer, BaseAnswer::NotBenford);
    assert!(discrepancy(&doubling, 4, 100_000) > 0.1);
    let integer_rho = Recurrence::from_ints(&[2, 1], &[1, 1]).unwrap();
    assert_eq!(verdict_for_base(&integer_rho, 8).unwrap().answer, BaseAnswer::NotBenford);
    assert!(discrepancy(&integer_rho, 8, 100_000) > 0.1);
}

#[test]
fn weyl_discrepancy_shrinks() {
    let alpha = ((1.0 + 5f64.sqrt()) / 2.0).log10();
    let d = |n: usize| {
        let terms = (1..=n).map(|i| Ok(LogTerm64 { index: i as u64, logb: Some(i as f64 * alpha) }));
        mantissa_sample(terms, 10, n).unwrap().discrepancy()
    };
    let (d3, d4, d5) = (d(1_000), d(10_000), d(100_000));
    assert!(d3 > d4 && d4 > d5, "{d3} {d4} {d5}");
    assert!(d5 < 0.01);
}

#[test]
fn irrationality_provenance_holds() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut irrational = 0;
    for _ in 0..200 {
        let rec = sparse_primitive(&mut rng);
        let a = rho_structure(&rec).unwrap();
        if let RhoStructure::Irrational { h } = a.structure {
            irrational += 1;
            assert_eq!(h, 1);
            let ex = a.exclusion.as_ref().unwrap();
            assert!(ex.holds, "{rec}: {ex:?}");
            assert_eq!(ex.rational_roots_in_interval, 0);
            for b in [3u64, 10, 16] {
                assert_eq!(log_is_irrational(&a.structure, b).unwrap(), LogRationality::Irrational);
            }
            let v = classify(&rec, None).unwrap();
            assert_eq!(v.base_scope, BaseScope::AllBases);
        }
    }
    assert!(irrational > 100);
}

#[test]
fn pisot_lower_bound_from() {
    for m in 1..=5 {
        let scan = pisot_growth_scan(m, 12).unwrap();
        assert_eq!(scan.lower_bound_from, Some(2), "m = {m}");
        assert!(scan.gap_decreasing);
        assert!(scan.step_identity.iter().all(|(ok, _)| *ok));
    }
}

#[test]
fn prime_ratios_approach_ln_2() {
    let r = prime_subsequence(2, 20).unwrap();
    let primes: Vec<u64> = r.rows[9..].iter().map(|r| r.prime).collect();
    assert_eq!(primes, vec![8161, 17863, 38873, 84017, 180503, 386093, 821641, 1742537, 3681131, 7754077, 16290047]);
    assert!(r.rows.iter().all(|r| r.pnt_ratio > 0.0));
    let errors = r.relative_errors();
    assert!(errors[9..].windows(2).all(|w| w[1] < w[0]), "{:?}", &errors[9..]);
}

#[test]
fn square_index_subsequence_matches_oracle() {
    // D_N of F_{n^2} from 50-digit logarithms of Binet's formula
    let rec = Recurrence::from_ints(&[1, 1], &[1, 1]).unwrap();
    let q = IndexPoly::parse("n^2").unwrap();
    for (n, oracle) in [(300, 0.076_910_139_650_180_62), (1000, 0.021_668_807_829_326_564)] {
        let stream = generate_log_stream::<f64>(&rec, 10, StreamMode::Float).unwrap();
        let terms = subsequence_stream(stream, &q, n).unwrap();
        let d = mantissa_sample(terms.into_iter().map(Ok), 10, n).unwrap().discrepancy();
        assert!((d - oracle).abs() < 1e-9, "N = {n}: {d} vs {oracle}");
    }
}
