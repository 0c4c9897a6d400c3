//! Duality, monotonicity, closed-form agreement and asymptotic behavior of
//! the classical additive analogues.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use qsandor::classic::{
    asymptotic_ratio, p_of, p_star, s_of, s_star, z_of, z_star, AsymptoticKind,
};

#[test]
fn duality_on_integer_grid() {
    // F* <= F <= F* + 1 on the common domain
    for n in 2..=100_000u64 {
        let x = n as f64;
        let ss = s_star(x).unwrap();
        let s = s_of(x).unwrap();
        assert!(ss <= s && s <= ss + 1, "S at {n}: {ss} vs {s}");
        let zs = z_star(x).unwrap();
        let z = z_of(x).unwrap();
        assert!(zs <= z && z <= zs + 1, "Z at {n}: {zs} vs {z}");
    }
}

#[test]
fn monotone_on_sampled_grids() {
    let xs: Vec<f64> = (0..2000).map(|i| 1.0 + i as f64 * 7.3).collect();
    let mut prev = [0u64; 6];
    for x in xs {
        let vals = [
            s_of(x + 1.0).unwrap(),
            s_star(x).unwrap(),
            z_of(x).unwrap(),
            z_star(x).unwrap(),
            p_of(x, 2.0).unwrap(),
            p_star(x, 2.0).unwrap(),
        ];
        for (i, v) in vals.iter().enumerate() {
            assert!(*v >= prev[i], "function {i} decreased at x={x}");
        }
        prev = vals;
    }
}

/// Brute-force Z* by scanning triangular numbers from m = 1.
fn z_star_scan(n: u64) -> u64 {
    let mut m = 1u64;
    loop {
        let next = (m + 1) as u128 * (m + 2) as u128 / 2;
        if next > n as u128 {
            return m;
        }
        m += 1;
    }
}

#[test]
fn z_star_closed_form_vs_linear_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let n = rng.random_range(1..=1_000_000_000u64);
        assert_eq!(z_star(n as f64).unwrap(), z_star_scan(n), "n={n}");
    }
    for _ in 0..5 {
        let n = rng.random_range(10_000_000_000..=100_000_000_000u64);
        assert_eq!(z_star(n as f64).unwrap(), z_star_scan(n), "n={n}");
    }
}

#[test]
fn t13_ratio_tight_at_1e8() {
    let r = asymptotic_ratio(AsymptoticKind::T13, 1e8, 0.0).unwrap();
    assert!((r - 1.0).abs() <= 1e-4, "ratio {r}");
}

#[test]
fn t11_ratio_value_at_1e12() {
    // Exact S*(1e12) = 14 (14! = 8.7e10 <= 1e12 < 15! = 1.3e12), so the
    // ratio sits at 14 / (ln 1e12 / ln ln 1e12) ~ 1.68. The law converges so
    // slowly that no double-precision x brings the ratio within 0.25 of 1;
    // what is checkable is agreement with the exact index and the decreasing
    // envelope (see the T11 verification grid).
    let x = 1e12;
    assert_eq!(s_star(x).unwrap(), 14);
    let expected = 14.0 * x.ln().ln() / x.ln();
    let r = asymptotic_ratio(AsymptoticKind::T11, x, 0.0).unwrap();
    assert!((r - expected).abs() < 1e-12);
    assert!((r - 1.6817).abs() < 1e-3);
}

#[test]
fn t11_envelope_decreases_along_factorials() {
    let mut prev = f64::INFINITY;
    for m in [10u64, 20, 40, 80, 160] {
        let log_fact: f64 = (2..=m).map(|k| (k as f64).ln()).sum();
        let x = log_fact.exp() * (1.0 + 1e-6);
        let r = asymptotic_ratio(AsymptoticKind::T11, x, 0.0).unwrap();
        assert!(r > 1.0 && r < prev, "m={m}: ratio {r} prev {prev}");
        prev = r;
    }
}

#[test]
fn t15_ratio_at_1e4() {
    let r3 = asymptotic_ratio(AsymptoticKind::T15, 1e3, 2.0).unwrap();
    let r4 = asymptotic_ratio(AsymptoticKind::T15, 1e4, 2.0).unwrap();
    assert!(r4 > r3, "ratio should improve: {r3} -> {r4}");
    assert!((r4 - 1.0).abs() <= 0.25, "ratio {r4}");
    let r = asymptotic_ratio(AsymptoticKind::T15, 1e4, 10.0).unwrap();
    assert!((r - 1.0).abs() <= 0.25, "ratio {r}");
}

proptest! {
    #[test]
    fn z_star_matches_integer_sqrt(n in 1u64..=100_000_000_000) {
        let closed = z_star(n as f64).unwrap();
        let oracle = ((8 * n + 1).isqrt() - 1) / 2;
        prop_assert_eq!(closed, oracle);
        let t = |m: u64| (m as u128) * (m as u128 + 1) / 2;
        prop_assert!(t(oracle) <= n as u128 && (n as u128) < t(oracle + 1));
    }

    #[test]
    fn s_duality_real_arguments(x in 1.000001f64..1e15) {
        let ss = s_star(x).unwrap();
        let s = s_of(x).unwrap();
        prop_assert!(ss <= s && s <= ss + 1);
    }

    #[test]
    fn p_duality_real_arguments(x in 1.0f64..2e4, p in 1.1f64..16.0) {
        let ps = p_star(x, p).unwrap();
        let pf = p_of(x, p).unwrap();
        prop_assert!(ps <= pf && pf <= ps + 1);
    }
}
