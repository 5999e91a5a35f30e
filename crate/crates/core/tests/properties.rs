use benford_core::classify::{decompose_subsequences, ClassStatus};
use benford_core::engine::{exact_prefix, log_terms, mantissa, mantissa_exact, mantissa_sample, StreamMode};
use benford_core::number_theory::{exceptional_bases, perfect_power_decompose_u64, power_relation, RhoStructure};
use benford_core::poly::Poly;
use benford_core::rational::{int, ratio};
use benford_core::recurrence::rational_positive_roots;
use benford_core::spectral::{all_roots, dominant_root};
use benford_core::structure::BoolMatrix;
use benford_core::{Rational, Recurrence};
use num_bigint::BigUint;
use num_complex::Complex;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| ratio(n, d))
}

fn recurrence_strategy() -> impl Strategy<Value = Recurrence> {
    (1usize..=6)
        .prop_flat_map(|k| (prop::collection::vec(small_rational(), k), prop::collection::vec(small_rational(), k)))
        .prop_filter_map("c_0 must be nonzero", |(c, a)| Recurrence::new(c, a).ok())
}

/// Nonnegative recurrences with `c_0 > 0` whose index gcd is `h`.
fn periodic_strategy() -> impl Strategy<Value = Recurrence> {
    (1usize..=3, 1usize..=3)
        .prop_flat_map(|(h, kq)| {
            let k = h * kq;
            (Just(h), prop::collection::vec(0i64..=4, kq), prop::collection::vec(0i64..=5, k))
        })
        .prop_filter_map("c_0 > 0 and some nonzero initial", |(h, cq, a)| {
            if cq[0] == 0 || a.iter().all(|&x| x == 0) {
                return None;
            }
            let k = h * cq.len();
            let mut c = vec![0i64; k];
            for (j, v) in cq.iter().enumerate() {
                c[h * j] = *v;
            }
            Recurrence::from_ints(&c, &a).ok()
        })
}

fn poly_with_planted_root() -> impl Strategy<Value = (Poly, Rational)> {
    (prop::collection::vec(-6i64..=6, 1..=5), 1i64..=9, 1i64..=5).prop_map(|(c, num, den)| {
        let mut c = c;
        if c.iter().all(|&x| x == 0) {
            c[0] = 1;
        }
        let root = ratio(num, den);
        let base = Poly::from_ints(&c);
        let factor = Poly::new(vec![-root.clone(), Rational::one()]);
        (&base * &factor, root)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rational_roots_are_exact((p, planted) in poly_with_planted_root()) {
        let roots = rational_positive_roots(&p);
        prop_assert!(roots.contains(&planted));
        for r in &roots {
            prop_assert!(p.eval(r).is_zero());
        }
        let ints = p.to_primitive_integer();
        let lowest = ints.iter().position(|c| !c.is_zero()).unwrap();
        let a0 = ints[lowest].magnitude().clone();
        let an = ints.last().unwrap().magnitude().clone();
        let small = |n: &BigUint| -> Vec<i64> {
            (1..=60i64).filter(|d| (n % BigUint::from(*d as u64)).is_zero()).collect()
        };
        for d in small(&a0) {
            for e in small(&an) {
                let x = ratio(d, e);
                if !roots.contains(&x) {
                    prop_assert!(!p.eval(&x).is_zero());
                }
            }
        }
    }

    #[test]
    fn char_poly_shape(rec in recurrence_strategy()) {
        let k = rec.order();
        let p = rec.char_poly();
        prop_assert_eq!(p.degree(), k);
        prop_assert!(p.is_monic());
        for j in 0..k {
            prop_assert_eq!(p.coeff(j), -rec.coeffs()[j].clone());
        }
        prop_assert_eq!(k % rec.index_set().gcd_index(), 0);
    }

    #[test]
    fn boolean_powers_stabilize(bits in prop::collection::vec(any::<bool>(), 16), extra in (0usize..4, 0usize..4)) {
        let rows: Vec<Vec<bool>> = bits.chunks(4).map(|r| r.to_vec()).collect();
        let m = BoolMatrix::from_rows(&rows);
        let mut power = m.clone();
        for _ in 0..20 {
            let next = power.mul(&m);
            if power.all_true() {
                prop_assert!(next.all_true());
            }
            power = next;
        }
        if let Ok(true) = m.is_primitive() {
            prop_assert!(m.is_irreducible());
            let mut more = m.clone();
            more.set(extra.0, extra.1, true);
            prop_assert_eq!(more.is_primitive(), Ok(true));
        }
    }

    #[test]
    fn roots_reconstruct_the_polynomial(c in prop::collection::vec(-9i64..=9, 1..=10), lead in 1i64..=3) {
        let mut c = c;
        if c[0] == 0 {
            c[0] = 1;
        }
        c.push(lead);
        let p = Poly::from_ints(&c);
        // multiple roots are only determined to about sqrt(u)
        prop_assume!(p.gcd(&p.derivative()).degree() == 0);
        let roots = all_roots::<f64>(&p);
        prop_assume!(roots.is_resolved());
        let rebuilt = roots.reconstruct();
        let norm = c.iter().map(|x| x.abs() as f64).fold(0.0, f64::max) / lead as f64;
        for (j, &cj) in c.iter().enumerate() {
            let target = Complex::new(cj as f64 / lead as f64, 0.0);
            prop_assert!((rebuilt[j] - target).norm() < 1e-9 * norm.max(1.0), "coefficient {} off", j);
        }
    }

    #[test]
    fn dominant_root_is_the_largest_positive_root(c in prop::collection::vec(0i64..=6, 1..=7)) {
        let mut c = c;
        if c[0] == 0 {
            c[0] = 1;
        }
        let rec = Recurrence::from_ints(&c, &vec![1; c.len()]).unwrap();
        let p = rec.char_poly();
        let rho = dominant_root::<f64>(&p).unwrap();
        let roots = all_roots::<f64>(&p);
        let best = roots
            .approximations
            .iter()
            .filter(|z| z.re > 0.0 && z.im.abs() <= 1e-6 * z.re.max(1.0))
            .map(|z| z.re)
            .fold(0.0, f64::max);
        prop_assert!((best - rho.estimate).abs() <= 1e-6 * rho.estimate, "{} vs {}", best, rho.estimate);
    }

    #[test]
    fn mantissas_are_in_range(x in 1e-300f64..1e300, b in 2u64..=36) {
        let m = mantissa(x, b).unwrap();
        prop_assert!(m >= 1.0 && m < b as f64);
    }

    #[test]
    fn exact_mantissa_is_scale_invariant(n in 1i64..1_000_000, d in 1i64..1_000_000, b in 2u64..=16) {
        let x = ratio(n, d);
        let (m, e) = mantissa_exact(&x, b).unwrap();
        prop_assert!(m >= Rational::one() && m < int(b as i64));
        let (mb, eb) = mantissa_exact(&(&x * int(b as i64)), b).unwrap();
        prop_assert_eq!(mb, m);
        prop_assert_eq!(eb, e + 1);
    }

    #[test]
    fn zero_flags_are_exact(rec in periodic_strategy()) {
        let logs = log_terms::<f64>(&rec, 10, 120, StreamMode::Float).unwrap();
        let exact = exact_prefix(&rec, 120).unwrap();
        for t in &logs {
            if t.is_zero() {
                prop_assert!(exact[t.index as usize - 1].is_zero());
            }
        }
    }

    #[test]
    fn digit_error_within_twice_discrepancy(start in 0.0f64..1.0, step in 0.001f64..0.999, n in 50usize..2000) {
        let terms = (0..n).map(|i| Ok(benford_core::LogTerm64 { index: i as u64 + 1, logb: Some(start + step * i as f64) }));
        let s = mantissa_sample(terms, 10, n).unwrap().stats();
        prop_assert!(s.digit_max_err <= 2.0 * s.discrepancy + 1e-12);
    }

    #[test]
    fn classes_partition_the_indices(rec in periodic_strategy()) {
        let classes = decompose_subsequences(&rec).unwrap();
        let h = classes.len();
        let n = 60;
        let mut seen: Vec<u64> = classes.iter().flat_map(|c| c.indices(n / h)).collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, (1..=(n / h * h) as u64).collect::<Vec<_>>());
        let full = exact_prefix(&rec, 200).unwrap();
        for c in &classes {
            prop_assert_eq!(c.contracted_gcd, 1);
            let count = (200 - c.first_index()) / h + 1;
            let sub = exact_prefix(&c.contracted, count.min(100)).unwrap();
            for (j, idx) in c.indices(count.min(100)).into_iter().enumerate() {
                prop_assert_eq!(&sub[j], &full[idx as usize - 1]);
            }
            if c.status == ClassStatus::IdenticallyZero {
                for idx in c.indices(count) {
                    prop_assert!(full[idx as usize - 1].is_zero());
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn perfect_power_structure(u in 2u64..=60, c in 1u32..=8) {
        let n = u.pow(c);
        let (v, e) = perfect_power_decompose_u64(n);
        prop_assert_eq!(v.pow(e), n);
        prop_assert_eq!(perfect_power_decompose_u64(v), (v, 1));
        prop_assert_eq!(e, c * perfect_power_decompose_u64(u).1);
    }

    #[test]
    fn exceptional_sets_respect_the_bound(u in 2u64..=50, c in 1u32..=4, inverse in any::<bool>(), n in 3u64..=10_000) {
        let (base, e) = perfect_power_decompose_u64(u);
        let s = RhoStructure::Power { u: base.into(), c: c * e, h: 1, inverse };
        let r = exceptional_bases(&s, n).unwrap();
        prop_assert!(r.bound_holds);
        prop_assert!(r.exceptional_bases.len() as f64 <= r.bound_value * (1.0 + 1e-12));
        let rho = {
            let v = int(u.pow(c) as i64);
            if inverse { v.recip() } else { v }
        };
        for &b in &r.exceptional_bases {
            prop_assert!(b > 2 && b <= n);
            let (p, q) = power_relation(&rho, b).expect("listed base has a power relation");
            let lhs = rho.pow(q as i32);
            let rhs = int(b as i64).pow(p as i32);
            prop_assert_eq!(lhs, rhs);
            prop_assert!(p.is_positive() != inverse);
        }
    }
}
