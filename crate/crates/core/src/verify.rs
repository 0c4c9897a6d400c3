//! Executable theorem checks: one grid per claim, reported as a
//! machine-diffable [`VerifyReport`] with the parameter grid embedded.
//!
//! The slowly-converging asymptotic laws (T11, T15) are checked the only way
//! a double-precision desk allows: the ratio envelope must move toward 1,
//! with loose pinned tolerances where a pointwise bound is meaningful.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::classic::{asymptotic_ratio, p_star, z_star, AsymptoticKind};
use crate::error::Result;
use crate::qanalog::{
    ladder_sup, p_q, p_q_star, p_q_star_asymptote, q_triangular, z_q, z_q_star, z_q_star_bounds,
};
use crate::qspecial::{q_integer, Precision, QParam};
use crate::series::{partial_sums, default_checkpoints, SeriesKind, SeriesSpec, VerdictHint};

/// Seed for the randomized T13 cross-check; fixed so reports reproduce.
pub const DEFAULT_SEED: u64 = 0x5eed_cafe;

/// Theorem and inequality identifiers accepted by `verify`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    T11,
    T12,
    T13,
    T14,
    T15,
    T16,
    T21,
    T22,
    SandwichZ,
    SandwichP,
    LimitQ1,
}

impl Theorem {
    pub const ALL: [Theorem; 11] = [
        Theorem::T11,
        Theorem::T12,
        Theorem::T13,
        Theorem::T14,
        Theorem::T15,
        Theorem::T16,
        Theorem::T21,
        Theorem::T22,
        Theorem::SandwichZ,
        Theorem::SandwichP,
        Theorem::LimitQ1,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Theorem::T11 => "T11",
            Theorem::T12 => "T12",
            Theorem::T13 => "T13",
            Theorem::T14 => "T14",
            Theorem::T15 => "T15",
            Theorem::T16 => "T16",
            Theorem::T21 => "T21",
            Theorem::T22 => "T22",
            Theorem::SandwichZ => "SANDWICH_Z",
            Theorem::SandwichP => "SANDWICH_P",
            Theorem::LimitQ1 => "LIMIT_Q1",
        }
    }

    pub fn parse(s: &str) -> Option<Theorem> {
        Theorem::ALL.into_iter().find(|t| t.id() == s)
    }
}

/// One failed grid point.
#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub point: String,
    pub lhs: Value,
    pub rhs: Value,
    pub violation: f64,
}

/// Outcome of one theorem grid.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub theorem: String,
    pub grid: Value,
    pub points_checked: u64,
    pub failures: Vec<Failure>,
    pub worst_violation: f64,
    pub passed: bool,
}

impl VerifyReport {
    fn new(theorem: Theorem, grid: Value) -> Self {
        Self {
            theorem: theorem.id().to_string(),
            grid,
            points_checked: 0,
            failures: Vec::new(),
            worst_violation: 0.0,
            passed: true,
        }
    }

    /// Record one grid point; violation > 0 marks it failed.
    fn check(&mut self, point: String, lhs: Value, rhs: Value, violation: f64) {
        self.points_checked += 1;
        if violation > 0.0 {
            self.worst_violation = self.worst_violation.max(violation);
            self.passed = false;
            self.failures.push(Failure {
                point,
                lhs,
                rhs,
                violation,
            });
        }
    }
}

/// Optional grid overrides from the CLI.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub x_max: Option<f64>,
    pub samples: Option<u64>,
    pub n_max: Option<u64>,
    pub seed: Option<u64>,
}

/// Run one theorem grid.
pub fn run(theorem: Theorem, ov: &Overrides) -> Result<VerifyReport> {
    match theorem {
        Theorem::T11 => verify_t11(),
        Theorem::T12 => verify_t12(ov),
        Theorem::T13 => verify_t13(ov),
        Theorem::T14 => verify_t14(ov),
        Theorem::T15 => verify_t15(ov),
        Theorem::T16 => verify_t16(ov),
        Theorem::T21 => verify_t21(ov),
        Theorem::T22 => verify_t22(ov),
        Theorem::SandwichZ => verify_sandwich_z(ov),
        Theorem::SandwichP => verify_sandwich_p(ov),
        Theorem::LimitQ1 => verify_limit_q1(),
    }
}

/// Log-spaced grid on [lo, hi), first point exactly lo.
fn log_grid_exclusive(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi.ln() - lo.ln()) / n as f64;
    (0..n)
        .map(|i| {
            if i == 0 {
                lo
            } else {
                (lo.ln() + step * i as f64).exp()
            }
        })
        .collect()
}

/// Log-spaced grid on [lo, hi], both endpoints exact.
fn log_grid_inclusive(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi.ln() - lo.ln()) / (n - 1) as f64;
    (0..n)
        .map(|i| {
            if i == 0 {
                lo
            } else if i == n - 1 {
                hi
            } else {
                (lo.ln() + step * i as f64).exp()
            }
        })
        .collect()
}

/// S*(x)·loglog x / log x at x = m!(1 + 1e-6) for doubling m. The pointwise
/// limit is far beyond double range (the ratio infimum over representable x
/// is about 1.58), so the check is that the envelope decreases toward 1.
fn verify_t11() -> Result<VerifyReport> {
    let ms = [10u64, 20, 40, 80, 160];
    let grid = json!({
        "x": "m!(1 + 1e-6) for m in [10, 20, 40, 80, 160]",
        "check": "ratio S*(x) loglog x / log x strictly decreasing, > 1",
    });
    let mut report = VerifyReport::new(Theorem::T11, grid);
    let mut prev = f64::INFINITY;
    for m in ms {
        let log_fact: f64 = (2..=m).map(|k| (k as f64).ln()).sum();
        let x = log_fact.exp() * (1.0 + 1e-6);
        let ratio = asymptotic_ratio(AsymptoticKind::T11, x, 0.0)?;
        let mut violation: f64 = 0.0;
        if ratio <= 1.0 {
            violation = 1.0 - ratio;
        }
        if ratio >= prev {
            violation = violation.max(ratio - prev);
        }
        report.check(format!("m={m}"), json!(ratio), json!(prev), violation);
        prev = ratio;
    }
    Ok(report)
}

fn expect_verdict(
    report: &mut VerifyReport,
    kind: SeriesKind,
    alpha: f64,
    p: Option<f64>,
    n_max: u64,
    accepted: &[VerdictHint],
) -> Result<()> {
    let spec = SeriesSpec::new(kind, alpha, p, n_max)?;
    let rep = partial_sums(&spec, &default_checkpoints(n_max))?;
    let ok = accepted.contains(&rep.verdict_hint);
    let expected: Vec<&str> = accepted.iter().map(|v| v.token()).collect();
    report.check(
        format!("{} alpha={alpha}", kind.token()),
        json!(rep.verdict_hint.token()),
        json!(expected),
        if ok { 0.0 } else { 1.0 },
    );
    Ok(())
}

/// Theorem 1.2 sides: Σ 1/(n S*(n)^α) converges iff α > 1.
fn verify_t12(ov: &Overrides) -> Result<VerifyReport> {
    let n_max = ov.n_max.unwrap_or(1_000_000);
    let grid = json!({
        "series": "S_STAR_WEIGHTED",
        "alpha": [2.0, 1.0],
        "n_max": n_max,
        "checkpoints": "decades with doubles",
    });
    let mut report = VerifyReport::new(Theorem::T12, grid);
    expect_verdict(
        &mut report,
        SeriesKind::SStarWeighted,
        2.0,
        None,
        n_max,
        &[VerdictHint::DeltaVanishing],
    )?;
    expect_verdict(
        &mut report,
        SeriesKind::SStarWeighted,
        1.0,
        None,
        n_max,
        &[VerdictHint::DeltaPersistent],
    )?;
    Ok(report)
}

/// Theorem 1.3 ratio plus the closed-form vs exact-inversion cross-check.
fn verify_t13(ov: &Overrides) -> Result<VerifyReport> {
    let x = ov.x_max.unwrap_or(1e8);
    let samples = ov.samples.unwrap_or(100_000);
    let seed = ov.seed.unwrap_or(DEFAULT_SEED);
    const TOL: f64 = 1e-4;
    let grid = json!({
        "ratio_x": x,
        "ratio_tol": TOL,
        "random_samples": samples,
        "sample_range": "1..=1e11",
        "seed": seed,
    });
    let mut report = VerifyReport::new(Theorem::T13, grid);

    let ratio = asymptotic_ratio(AsymptoticKind::T13, x, 0.0)?;
    report.check(
        format!("x={x}"),
        json!(ratio),
        json!(1.0),
        ((ratio - 1.0).abs() - TOL).max(0.0),
    );

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = 0u64;
    let mut first_bad: Option<u64> = None;
    for _ in 0..samples {
        let n: u64 = rng.random_range(1..=100_000_000_000u64);
        let closed = z_star(n as f64)?;
        let s = (8 * n + 1).isqrt();
        let oracle = (s - 1) / 2;
        let t = |m: u64| (m as u128) * (m as u128 + 1) / 2;
        let certified = t(oracle) <= n as u128 && (n as u128) < t(oracle + 1);
        if closed != oracle || !certified {
            mismatches += 1;
            first_bad.get_or_insert(n);
        }
    }
    report.check(
        format!("{samples} random n (first mismatch: {first_bad:?})"),
        json!(mismatches),
        json!(0),
        mismatches as f64,
    );
    Ok(report)
}

/// Theorem 1.4 sides: Σ 1/Z*(n)^α converges iff α > 2; the n-weighted series
/// converges for every α > 0.
fn verify_t14(ov: &Overrides) -> Result<VerifyReport> {
    let n_max = ov.n_max.unwrap_or(1_000_000);
    let grid = json!({
        "series": ["Z_STAR_PLAIN", "Z_STAR_WEIGHTED"],
        "alpha": [3.0, 2.0, 0.5],
        "n_max": n_max,
    });
    let mut report = VerifyReport::new(Theorem::T14, grid);
    expect_verdict(
        &mut report,
        SeriesKind::ZStarPlain,
        3.0,
        None,
        n_max,
        &[VerdictHint::DeltaVanishing],
    )?;
    expect_verdict(
        &mut report,
        SeriesKind::ZStarPlain,
        2.0,
        None,
        n_max,
        &[VerdictHint::DeltaPersistent],
    )?;
    expect_verdict(
        &mut report,
        SeriesKind::ZStarWeighted,
        0.5,
        None,
        n_max,
        &[VerdictHint::DeltaVanishing],
    )?;
    Ok(report)
}

/// Theorem 1.5: log P*(x) / log x within 0.25 of 1 at the grid edge. The law
/// converges like loglog x / log x, so this is the honest double-precision
/// tolerance.
fn verify_t15(ov: &Overrides) -> Result<VerifyReport> {
    let x = ov.x_max.unwrap_or(1e4);
    const TOL: f64 = 0.25;
    let grid = json!({ "x": x, "p": [2.0, 10.0], "tol": TOL });
    let mut report = VerifyReport::new(Theorem::T15, grid);
    for p in [2.0, 10.0] {
        let ratio = asymptotic_ratio(AsymptoticKind::T15, x, p)?;
        report.check(
            format!("x={x} p={p}"),
            json!(ratio),
            json!(1.0),
            ((ratio - 1.0).abs() - TOL).max(0.0),
        );
    }
    Ok(report)
}

/// Theorem 1.6 family: loglog terms move too slowly for a desk verdict, so
/// the expected sets explicitly accept INCONCLUSIVE.
fn verify_t16(ov: &Overrides) -> Result<VerifyReport> {
    let n_max = ov.n_max.unwrap_or(1_000_000);
    let grid = json!({
        "series": "P_STAR_LOGLOG",
        "p": 2.0,
        "alpha": [2.0, 1.0],
        "n_max": n_max,
        "note": "INCONCLUSIVE accepted on both sides",
    });
    let mut report = VerifyReport::new(Theorem::T16, grid);
    expect_verdict(
        &mut report,
        SeriesKind::PStarLogLog,
        2.0,
        Some(2.0),
        n_max,
        &[VerdictHint::DeltaVanishing, VerdictHint::Inconclusive],
    )?;
    expect_verdict(
        &mut report,
        SeriesKind::PStarLogLog,
        1.0,
        Some(2.0),
        n_max,
        &[VerdictHint::DeltaPersistent, VerdictHint::Inconclusive],
    )?;
    Ok(report)
}

const SUB_UNIT_QS: [f64; 3] = [0.2, 0.5, 0.8];

/// x grid for the Theorem 2.1 / Z-sandwich checks: log-spaced across
/// [T_q(1), 0.999·sup), with the first point nudged one part in 10^12 above
/// T_q(1) so a non-representable endpoint cannot flip the domain comparison.
fn theorem21_grid(q: QParam, samples: usize) -> Result<Vec<f64>> {
    let t1 = q_triangular(1, q)?;
    let hi = 0.999 * ladder_sup(q)?;
    Ok(log_grid_exclusive(t1 * (1.0 + 1e-12), hi, samples))
}

/// Theorem 2.1: lower < Z_q*(x) <= upper, strict/weak exactly as stated.
fn verify_t21(ov: &Overrides) -> Result<VerifyReport> {
    let samples = ov.samples.unwrap_or(200) as usize;
    let grid = json!({
        "q": SUB_UNIT_QS,
        "x": format!("{samples} log-spaced in [T_q(1)(1+1e-12), 0.999/(2(1-q)^2))"),
    });
    let mut report = VerifyReport::new(Theorem::T21, grid);
    for qv in SUB_UNIT_QS {
        let q = QParam::new(qv)?;
        for x in theorem21_grid(q, samples)? {
            let zs = z_q_star(x, q)?;
            let b = z_q_star_bounds(x, q)?;
            let mut violation: f64 = 0.0;
            if !(zs > b.lower) {
                violation = (b.lower - zs).max(f64::MIN_POSITIVE);
            }
            if !(zs <= b.upper) {
                violation = violation.max(zs - b.upper);
            }
            report.check(
                format!("q={qv} x={x}"),
                json!(zs),
                json!({ "lower": b.lower, "upper": b.upper }),
                violation,
            );
        }
    }
    Ok(report)
}

/// Theorem 2.2: P_q*(x) log(1/(1-q)) / (x log p) pinned at 1% for x = 1e4
/// and 0.1% for x = 1e6 (q = 1/2, p = 2).
fn verify_t22(ov: &Overrides) -> Result<VerifyReport> {
    let x_cap = ov.x_max.unwrap_or(1e6);
    let q = QParam::new(0.5)?;
    let p = 2.0;
    let points = [(1e4, 1e-2), (1e6, 1e-3)];
    let grid = json!({
        "q": 0.5,
        "p": p,
        "x": [1e4, 1e6],
        "tol": [1e-2, 1e-3],
        "x_max": x_cap,
    });
    let mut report = VerifyReport::new(Theorem::T22, grid);
    for (x, tol) in points {
        if x > x_cap {
            continue;
        }
        let m = p_q_star(x, q, p, Precision::default())?;
        let ratio = m as f64 / p_q_star_asymptote(x, q, p)?;
        report.check(
            format!("x={x}"),
            json!(ratio),
            json!(1.0),
            ((ratio - 1.0).abs() - tol).max(0.0),
        );
    }
    Ok(report)
}

/// Z_q* <= Z_q <= Z_q* + 1 on the Theorem 2.1 grids.
fn verify_sandwich_z(ov: &Overrides) -> Result<VerifyReport> {
    let samples = ov.samples.unwrap_or(200) as usize;
    let grid = json!({
        "q": SUB_UNIT_QS,
        "x": format!("{samples} log-spaced in [T_q(1)(1+1e-12), 0.999/(2(1-q)^2))"),
    });
    let mut report = VerifyReport::new(Theorem::SandwichZ, grid);
    for qv in SUB_UNIT_QS {
        let q = QParam::new(qv)?;
        for x in theorem21_grid(q, samples)? {
            let zs = z_q_star(x, q)?;
            let z = z_q(x, q)?;
            let violation = (zs - z).max(z - (zs + 1.0)).max(0.0);
            report.check(
                format!("q={qv} x={x}"),
                json!(z),
                json!({ "z_star": zs, "z_star_plus_1": zs + 1.0 }),
                violation,
            );
        }
    }
    Ok(report)
}

/// P_q* <= P_q <= P_q* + 1 for q in {0.2, 0.5, 0.8}, p in {1.5, 2, 10},
/// 100 log-spaced x in [1, 1e4].
fn verify_sandwich_p(ov: &Overrides) -> Result<VerifyReport> {
    let samples = ov.samples.unwrap_or(100) as usize;
    let x_hi = ov.x_max.unwrap_or(1e4);
    let ps = [1.5, 2.0, 10.0];
    let grid = json!({
        "q": SUB_UNIT_QS,
        "p": ps,
        "x": format!("{samples} log-spaced in [1, {x_hi}]"),
    });
    let mut report = VerifyReport::new(Theorem::SandwichP, grid);
    let prec = Precision::default();
    for qv in SUB_UNIT_QS {
        let q = QParam::new(qv)?;
        for p in ps {
            for x in log_grid_inclusive(1.0, x_hi, samples) {
                let ps_val = p_q_star(x, q, p, prec)? as i128;
                let pq_val = p_q(x, q, p, prec)? as i128;
                let violation = (ps_val - pq_val).max(pq_val - ps_val - 1).max(0) as f64;
                report.check(
                    format!("q={qv} p={p} x={x}"),
                    json!(pq_val),
                    json!({ "p_star": ps_val, "p_star_plus_1": ps_val + 1 }),
                    violation,
                );
            }
        }
    }
    Ok(report)
}

/// q -> 1 recovery at q = 1 - 1e-4: Z_q* lands within 1e-2 of the classical
/// index mapped through [.]_q, and P_q* reproduces the classical P* index at
/// non-boundary integer x.
fn verify_limit_q1() -> Result<VerifyReport> {
    let qv = 1.0 - 1e-4;
    let q = QParam::new(qv)?;
    let grid = json!({
        "q": qv,
        "z_part": "integer x in [1, 50], |Z_q*(x) - [Z*(x)]_q| <= 1e-2",
        "p_part": "integer x in [1, 20], p = 2, P_q*(x) == P*(x)",
    });
    let mut report = VerifyReport::new(Theorem::LimitQ1, grid);
    for xi in 1..=50u64 {
        let x = xi as f64;
        let got = z_q_star(x, q)?;
        let expected = q_integer(z_star(x)?, q);
        report.check(
            format!("z x={xi}"),
            json!(got),
            json!(expected),
            ((got - expected).abs() - 1e-2).max(0.0),
        );
    }
    let prec = Precision::default();
    for xi in 1..=20u64 {
        let x = xi as f64;
        let got = p_q_star(x, q, 2.0, prec)?;
        let expected = p_star(x, 2.0)?;
        report.check(
            format!("p x={xi}"),
            json!(got),
            json!(expected),
            (got as i128 - expected as i128).unsigned_abs() as f64,
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_ids_round_trip() {
        for t in Theorem::ALL {
            assert_eq!(Theorem::parse(t.id()), Some(t));
        }
        assert_eq!(Theorem::parse("T99"), None);
    }

    #[test]
    fn t11_envelope_decreases() {
        let rep = verify_t11().unwrap();
        assert!(rep.passed, "failures: {:?}", rep.failures);
        assert_eq!(rep.points_checked, 5);
    }

    #[test]
    fn t13_certificate_small_sample() {
        let ov = Overrides {
            samples: Some(2_000),
            ..Default::default()
        };
        let rep = run(Theorem::T13, &ov).unwrap();
        assert!(rep.passed, "failures: {:?}", rep.failures);
    }

    #[test]
    fn t21_grid_size_and_pass() {
        let rep = run(Theorem::T21, &Overrides::default()).unwrap();
        assert!(rep.passed, "failures: {:?}", rep.failures);
        assert_eq!(rep.points_checked, 600);
    }

    #[test]
    fn t22_default_pass() {
        let rep = run(Theorem::T22, &Overrides::default()).unwrap();
        assert!(rep.passed, "failures: {:?}", rep.failures);
        assert_eq!(rep.points_checked, 2);
    }

    #[test]
    fn limit_q1_pass() {
        let rep = run(Theorem::LimitQ1, &Overrides::default()).unwrap();
        assert!(rep.passed, "failures: {:?}", rep.failures);
        assert_eq!(rep.points_checked, 70);
    }

    #[test]
    fn report_serializes_with_schema_fields() {
        let rep = run(Theorem::T15, &Overrides::default()).unwrap();
        let v = serde_json::to_value(&rep).unwrap();
        for key in [
            "theorem",
            "grid",
            "points_checked",
            "failures",
            "worst_violation",
            "passed",
        ] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
    }
}
