//! Property and oracle tests for the q-gamma stack: the recurrence,
//! factorial consistency, the classical limit against an independent
//! log-gamma, the Moak ratio, and truncation soundness.

use proptest::prelude::*;
use qsandor::qspecial::{
    log_q_gamma, moak_log_gamma_approx, q_factorial, q_pochhammer_inf, Precision, QParam,
};

fn qp(q: f64) -> QParam {
    QParam::new(q).unwrap()
}

/// [x]_q for real x, written out directly so the test does not share code
/// with the implementation.
fn q_number(x: f64, q: f64) -> f64 {
    (1.0 - q.powf(x)) / (1.0 - q)
}

#[test]
fn recurrence_both_regimes() {
    // log Γ_q(x+1) - log Γ_q(x) = log [x]_q to 1e-10 absolute
    let prec = Precision::default();
    for q in [0.1, 0.5, 0.9, 2.0, 5.0] {
        let qp = qp(q);
        let mut worst = 0.0f64;
        for i in 1..=40 {
            let x = i as f64 * 0.5;
            let lhs = log_q_gamma(x + 1.0, qp, prec).unwrap().log()
                - log_q_gamma(x, qp, prec).unwrap().log();
            let rhs = q_number(x, q).ln();
            worst = worst.max((lhs - rhs).abs());
        }
        assert!(worst < 1e-10, "q={q}: worst recurrence error {worst:e}");
    }
}

#[test]
fn factorial_consistency() {
    // log Γ_q(n+1) = log (n!)_q to 1e-10 for n <= 50
    let prec = Precision::default();
    for q in [0.1, 0.5, 0.9] {
        let qp = qp(q);
        for n in 0..=50u64 {
            let gamma = log_q_gamma(n as f64 + 1.0, qp, prec).unwrap().log();
            let fact = q_factorial(n, qp).log();
            assert!(
                (gamma - fact).abs() < 1e-10,
                "q={q} n={n}: {gamma} vs {fact}"
            );
        }
    }
}

#[test]
fn classical_limit_against_independent_log_gamma() {
    // Γ_q(x) -> Γ(x) as q -> 1 with leading deviation
    // ln Γ_q(x) - ln Γ(x) = -(1-q)(x-1)(x-2)/4 + O((1-q)^2),
    // so at q = 1 - 1e-4 the integer points up to x = 7 sit inside 1e-3 of
    // Γ(x) and the rest follow the linear rate; at q = 1 - 1e-5 the whole
    // range x in [2, 10] is inside 1e-3. Γ comes from statrs, independent of
    // the product formulas under test.
    let gamma = |x: f64| statrs::function::gamma::ln_gamma(x).exp();

    let q4 = qp(1.0 - 1e-4);
    let prec4 = Precision::new(1e-8, 2_000_000).unwrap();
    for xi in 2..=7u32 {
        let x = xi as f64;
        let rel = (log_q_gamma(x, q4, prec4).unwrap().value() - gamma(x)).abs() / gamma(x);
        assert!(rel < 1e-3, "q=1-1e-4 x={x}: relative error {rel:e}");
    }

    let q5 = qp(1.0 - 1e-5);
    let prec5 = Precision::new(1e-6, 4_000_000).unwrap();
    for xi in 2..=10u32 {
        let x = xi as f64;
        let rel5 = (log_q_gamma(x, q5, prec5).unwrap().value() - gamma(x)).abs() / gamma(x);
        assert!(rel5 < 1e-3, "q=1-1e-5 x={x}: relative error {rel5:e}");
        // linear convergence rate in (1-q): tenfold closer q, tenfold
        // smaller deviation
        let rel4 = (log_q_gamma(x, q4, prec4).unwrap().value() - gamma(x)).abs() / gamma(x);
        if xi >= 4 {
            let rate = rel5 / rel4;
            assert!(
                (0.08..0.12).contains(&rate),
                "x={x}: rate {rate} (rel4 {rel4:e}, rel5 {rel5:e})"
            );
        }
        // leading-order deviation constant (x-1)(x-2)/4
        let predicted = (1.0 - q4.value()) * (x - 1.0) * (x - 2.0) / 4.0;
        assert!(
            (rel4 - predicted).abs() < 0.1 * predicted.max(1e-8),
            "x={x}: deviation {rel4:e} vs predicted {predicted:e}"
        );
    }
}

#[test]
fn moak_ratio_tightens_toward_one() {
    let q = qp(0.5);
    let prec = Precision::default();
    let mut prev_dev = f64::INFINITY;
    for n in [10u64, 100, 1_000, 10_000] {
        let approx = moak_log_gamma_approx(n, q).unwrap();
        let exact = log_q_gamma(n as f64 + 1.0, q, prec).unwrap().log();
        let dev = (exact / approx.coarse - 1.0).abs();
        assert!(dev < prev_dev, "n={n}: deviation {dev} did not shrink");
        prev_dev = dev;
        // the two reduced forms also agree asymptotically
        assert!((approx.mid / approx.coarse - 1.0).abs() <= 1.0 / n as f64);
        if n == 10_000 {
            assert!(dev < 1e-3, "n=1e4 deviation {dev}");
        }
    }
}

#[test]
fn truncation_soundness_halving() {
    // halving rel_tol never moves the result by more than the previous tol
    for (a, q) in [(0.5, 0.5), (0.3, 0.9), (0.9, 0.2), (0.05, 0.95)] {
        let qp = qp(q);
        let mut tol = 1e-4;
        let mut prev = q_pochhammer_inf(a, qp, Precision::new(tol, 1_000_000).unwrap())
            .unwrap()
            .log();
        while tol > 1e-12 {
            let next_tol = tol / 2.0;
            let next = q_pochhammer_inf(a, qp, Precision::new(next_tol, 1_000_000).unwrap())
                .unwrap()
                .log();
            assert!(
                (next - prev).abs() <= tol,
                "a={a} q={q} tol={tol:e}: moved {:e}",
                (next - prev).abs()
            );
            prev = next;
            tol = next_tol;
        }
    }
}

proptest! {
    #[test]
    fn pochhammer_truncation_bound(a in 0.0f64..0.95, q in 0.05f64..0.95) {
        let qp = QParam::new(q).unwrap();
        let coarse = q_pochhammer_inf(a, qp, Precision::new(1e-6, 1_000_000).unwrap())
            .unwrap().log();
        let fine = q_pochhammer_inf(a, qp, Precision::new(1e-9, 1_000_000).unwrap())
            .unwrap().log();
        prop_assert!((coarse - fine).abs() <= 1e-6);
    }

    #[test]
    fn gamma_recurrence_random_points(x in 0.1f64..30.0, q in 0.05f64..0.95) {
        let qp = QParam::new(q).unwrap();
        let prec = Precision::default();
        let lhs = log_q_gamma(x + 1.0, qp, prec).unwrap().log()
            - log_q_gamma(x, qp, prec).unwrap().log();
        let rhs = q_number(x, q).ln();
        prop_assert!((lhs - rhs).abs() < 1e-9);
    }
}
