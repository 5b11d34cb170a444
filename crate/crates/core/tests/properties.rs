use std::collections::BTreeMap;

use lmeasure_core::arith::{gcd, PrimeSieve};
use lmeasure_core::char_group::CharacterTable;
use lmeasure_core::lfunction::special::zeta;
use lmeasure_core::lfunction::{
    l_euler_product, l_value, l_values, polylog, potential_with, CoefficientTail, EulerCoefficients,
    TruncationPolicy,
};
use lmeasure_core::limit_laws::uniform_l_moment;
use lmeasure_core::measures::{build_measure, l_measure, sample, uniform_measure, MeasureKind};
use lmeasure_core::moments::{exact_moment, riemann_moment, zeta_q, MomentSpec, RiemannSum, Support};
use lmeasure_core::rng::CounterRng;
use lmeasure_core::stats::mean_with_se;
use lmeasure_core::Complex64;
use proptest::prelude::*;

#[test]
fn orthogonality_small_moduli() {
    for q in 1..=60u64 {
        let t = CharacterTable::new(q).unwrap();
        let phi = t.len();
        let units: Vec<i64> = (1..=q as i64).filter(|&a| gcd(a as u64, q) == 1).collect();
        let cols: Vec<Vec<u64>> = units.iter().map(|&a| t.column(a).unwrap()).collect();
        let e = t.exponent();
        for i in 0..phi {
            for j in 0..phi {
                let mut acc = Complex64::new(0.0, 0.0);
                for c in &cols {
                    acc += t.root((c[i] + e - c[j]) % e);
                }
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((acc / phi as f64 - expect).norm() < 1e-12, "q={q} {i} {j}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn evaluation_is_multiplicative_and_periodic(q in 1u64..400, idx in 0usize..1_000_000, m in -10_000i64..10_000, n in -10_000i64..10_000) {
        let t = CharacterTable::new(q).unwrap();
        let chi = t.character(idx % t.len());
        prop_assert_eq!(chi.value(m * n), chi.value(m).mul(chi.value(n)));
        prop_assert_eq!(chi.value(n + q as i64), chi.value(n));
        prop_assert_eq!(chi.value(n).is_null(), gcd(n.unsigned_abs() % q, q) != 1 && q > 1);
        prop_assert_eq!(chi.conjugate().value(n), chi.value(n).conj());
    }
}

#[test]
fn l_values_respect_conjugation() {
    let policy = TruncationPolicy::default();
    for q in 1..=100u64 {
        let t = CharacterTable::new(q).unwrap();
        let vals = l_values(2.0, &t).unwrap();
        for chi in t.iter() {
            let a = vals[chi.index()].value;
            let b = vals[chi.conjugate().index()].value;
            assert!((a - b.conj()).norm() < 2.0 * policy.tol, "q={q}");
        }
    }
}

#[test]
fn series_and_euler_product_agree() {
    let p_max = 100_000;
    let sieve = PrimeSieve::new(p_max);
    let mut rng = CounterRng::new(2024, 1);
    let policy = TruncationPolicy::default();
    for _ in 0..100 {
        let q = 1 + rng.next_u64() % 100;
        let s = 1.2 + 3.0 * rng.uniform();
        let t = CharacterTable::new(q).unwrap();
        let chi = t.character((rng.next_u64() % t.len() as u64) as usize);
        let series = l_value(s, &chi, &policy).unwrap();
        let product = l_euler_product(s, &chi, &sieve, p_max);
        let gap = (series.value - product.value).norm();
        assert!(gap <= series.bound + product.bound, "q={q} s={s} gap {gap}");
    }
}

#[test]
fn polylog_bound_shrinks_with_more_terms() {
    let mut last = f64::INFINITY;
    for tol in [1e-2, 1e-4, 1e-6, 1e-8] {
        let v = polylog(2.0, 0.3, &TruncationPolicy::new(tol, 100_000_000).unwrap()).unwrap();
        assert!(v.bound <= last && v.bound <= tol);
        last = v.bound;
    }
}

#[test]
fn gibbs_potential_converges_monotonically() {
    let t = CharacterTable::new(5).unwrap();
    let sieve = PrimeSieve::new(100_000);
    let policy = TruncationPolicy::default();
    for chi in t.iter() {
        let target = l_value(2.0, &chi, &policy).unwrap().value.norm_sqr();
        let gaps: Vec<f64> = [1_000u64, 10_000, 100_000]
            .iter()
            .map(|&p| (libm::exp(-2.0 * potential_with(2.0, &chi, &sieve, p)) - target).abs())
            .collect();
        assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2], "{gaps:?}");
        // the discarded log-tail is at most about sum_{n > P} n^{-2} < 1/P
        assert!(gaps[2] < 3.0 * target / 100_000.0, "{gaps:?}");
    }
}

#[test]
fn sampled_mean_matches_exact_moment() {
    let t = CharacterTable::new(101).unwrap();
    let m = l_measure(&t, 2.0).unwrap();
    let batch = sample(&m, 100_000, 17);
    let draws: Vec<Complex64> = batch.character_indices.iter().map(|&i| t.character(i).eval(2)).collect();
    let exact = exact_moment(&m, &MomentSpec::single(101, Some(2.0), 2, 1, 0).unwrap()).unwrap().value;
    let (re, se_re) = mean_with_se(&draws.iter().map(|z| z.re).collect::<Vec<_>>());
    let (im, se_im) = mean_with_se(&draws.iter().map(|z| z.im).collect::<Vec<_>>());
    assert!((re - exact.re).abs() < 4.0 * se_re, "{re} vs {}", exact.re);
    assert!((im - exact.im).abs() < 4.0 * se_im);
}

#[test]
fn uniform_l_moment_matches_character_average() {
    for q in [5u64, 12, 31] {
        let t = CharacterTable::new(q).unwrap();
        let vals = l_values(2.0, &t).unwrap();
        let avg: f64 = vals.iter().map(|v| v.value.norm_sqr()).sum::<f64>() / t.len() as f64;
        let u = uniform_l_moment(2.0, 1, q, 0, Support::Coprime).unwrap();
        assert!((u.value.re - avg).abs() < 1e-6);
        let avg2: f64 = vals.iter().map(|v| v.value.norm_sqr().powi(2)).sum::<f64>() / t.len() as f64;
        let u2 = uniform_l_moment(2.0, 2, q, 100_000, Support::Coprime).unwrap();
        assert!((u2.value.re - avg2).abs() <= u2.bound + 1e-9, "q={q}");
    }
}

#[test]
fn zeta_q_matches_riemann_denominator() {
    for (s, q) in [(1.5, 7u64), (2.0, 12), (3.0, 101)] {
        let z = zeta_q(s, q, 10_000_000).unwrap();
        let d = RiemannSum::new(s, q, Support::Unrestricted).unwrap().parts(1, 0, 0);
        assert!((z.value.re - d.denominator).abs() <= z.bound + d.denominator_error, "s={s} q={q}");
        assert!(z.value.re >= zeta(2.0 * s));
    }
}

#[test]
fn uniform_measure_moments_are_indicators() {
    let t = CharacterTable::new(36).unwrap();
    let u = uniform_measure(&t);
    let spec = MomentSpec::new(36, None, vec![5, 7], vec![2, 1], vec![0, 3]).unwrap();
    let e = exact_moment(&u, &spec).unwrap();
    // 25 * 7 = 175 = 31 and 343 = 19 mod 36
    assert!(e.value.norm() < 1e-12);
    let same = MomentSpec::new(36, None, vec![5, 25], vec![2, 0], vec![0, 1]).unwrap();
    assert!((exact_moment(&u, &same).unwrap().value.re - 1.0).abs() < 1e-12);
}

#[test]
fn a_measure_approaches_limit() {
    let mut overrides = BTreeMap::new();
    overrides.insert(2, 0.3);
    overrides.insert(3, 0.2);
    let a = EulerCoefficients::new(overrides, CoefficientTail::Power { s: 2.0 }).unwrap();
    let policy = TruncationPolicy::default();
    let mut last = f64::INFINITY;
    for q in [101u64, 1009] {
        let t = CharacterTable::new(q).unwrap();
        let m = build_measure(&t, MeasureKind::A(a.clone()), &policy).unwrap();
        let spec = MomentSpec::new(q, None, vec![2, 3], vec![1, 0], vec![0, 1]).unwrap();
        let dev = (exact_moment(&m, &spec).unwrap().value - 0.06).norm();
        assert!(dev < last, "q={q} {dev}");
        last = dev;
    }
    assert!(last < 1e-2);
}

#[test]
fn riemann_coprime_reproduces_bruteforce_on_composites() {
    for q in [9u64, 10, 15, 16, 24] {
        let t = CharacterTable::new(q).unwrap();
        let m = l_measure(&t, 2.5).unwrap();
        for base in 2..=6u64 {
            for (k, l) in [(1, 0), (2, 1), (0, 2)] {
                let e = exact_moment(&m, &MomentSpec::single(q, Some(2.5), base, k, l).unwrap()).unwrap();
                let r = riemann_moment(2.5, q, base, k, l, Support::Coprime).unwrap();
                assert!((e.value - r.value).norm() < 1e-9, "q={q} m={base} k={k} l={l}");
            }
        }
    }
}
