//! Partial-sum engines and finite-N convergence diagnostics for the S*, Z*
//! and P* series families.
//!
//! Sums stream in ascending n with compensated accumulation and the O(1)
//! cursor evaluators from [`crate::classic`], so a 10^8-term sweep stays
//! cheap. The verdict is a finite-N heuristic over doubling deltas
//! sum(2N) - sum(N), not a proof; its thresholds are explicit constants in
//! [`DiagnosticConfig`].

use serde::Serialize;

use crate::accum::CompensatedSum;
use crate::classic::{p_star, s_star, z_star, PStarCursor, SStarCursor, ZStarCursor};
use crate::error::{Error, Result};

/// Which series family a sweep runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SeriesKind {
    /// Σ 1/(n S*(n)^α) — convergent iff α > 1.
    #[serde(rename = "S_STAR_WEIGHTED")]
    SStarWeighted,
    /// Σ 1/Z*(n)^α — convergent iff α > 2.
    #[serde(rename = "Z_STAR_PLAIN")]
    ZStarPlain,
    /// Σ 1/(n Z*(n)^α) — convergent for every α > 0.
    #[serde(rename = "Z_STAR_WEIGHTED")]
    ZStarWeighted,
    /// Σ (1/n)(log log n / log P*(n))^α — convergent iff α > 1.
    #[serde(rename = "P_STAR_LOGLOG")]
    PStarLogLog,
}

impl SeriesKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "S_STAR_WEIGHTED" => Some(Self::SStarWeighted),
            "Z_STAR_PLAIN" => Some(Self::ZStarPlain),
            "Z_STAR_WEIGHTED" => Some(Self::ZStarWeighted),
            "P_STAR_LOGLOG" => Some(Self::PStarLogLog),
            _ => None,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Self::SStarWeighted => "S_STAR_WEIGHTED",
            Self::ZStarPlain => "Z_STAR_PLAIN",
            Self::ZStarWeighted => "Z_STAR_WEIGHTED",
            Self::PStarLogLog => "P_STAR_LOGLOG",
        }
    }
}

/// A fully specified series sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesSpec {
    pub kind: SeriesKind,
    pub alpha: f64,
    pub p: Option<f64>,
    pub n_max: u64,
}

pub const N_MAX_CAP: u64 = 100_000_000;

impl SeriesSpec {
    pub fn new(kind: SeriesKind, alpha: f64, p: Option<f64>, n_max: u64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::Spec(format!("alpha must be positive, got {alpha}")));
        }
        if !(4..=N_MAX_CAP).contains(&n_max) {
            return Err(Error::Spec(format!(
                "n_max must lie in [4, {N_MAX_CAP}], got {n_max}"
            )));
        }
        if kind == SeriesKind::PStarLogLog {
            match p {
                Some(p) if p.is_finite() && p > 1.0 => {}
                _ => {
                    return Err(Error::Spec(format!(
                        "the P* series needs a base p > 1, got {p:?}"
                    )))
                }
            }
        }
        Ok(Self {
            kind,
            alpha,
            p,
            n_max,
        })
    }

    /// First summed index. 1 for the S*/Z* families. The P* family needs
    /// log log n > 0 (n >= 3) and log P*(n) > 0 (P*(n) >= 2), so it starts
    /// at the first n >= 3 where both factors are positive.
    pub fn start_index(&self) -> u64 {
        match self.kind {
            SeriesKind::PStarLogLog => {
                let p = self.p.expect("validated at construction");
                let mut n = 3u64;
                while p_star(n as f64, p).map(|m| m < 2).unwrap_or(true) {
                    n += 1;
                }
                n
            }
            _ => 1,
        }
    }
}

/// Finite-N verdict over the doubling deltas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VerdictHint {
    #[serde(rename = "DELTA_VANISHING")]
    DeltaVanishing,
    #[serde(rename = "DELTA_PERSISTENT")]
    DeltaPersistent,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

impl VerdictHint {
    pub fn token(self) -> &'static str {
        match self {
            Self::DeltaVanishing => "DELTA_VANISHING",
            Self::DeltaPersistent => "DELTA_PERSISTENT",
            Self::Inconclusive => "INCONCLUSIVE",
        }
    }
}

/// Tunable constants of the verdict heuristic. Any finite-N divergence call
/// is a judgment call, so none of these are hard-coded at use sites.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagnosticConfig {
    /// Total shrink (first delta over last delta) required to call a
    /// monotone delta sequence vanishing.
    pub shrink_factor: f64,
    /// Persistence band: the trailing window must satisfy
    /// max <= min * (1 + persist_band).
    pub persist_band: f64,
    /// Deltas below floor_factor * eps * sum count as numerical silence.
    pub floor_factor: f64,
    /// How many trailing deltas the window checks look at.
    pub window: usize,
}

impl Default for DiagnosticConfig {
    fn default() -> Self {
        Self {
            shrink_factor: 2.0,
            persist_band: 0.5,
            floor_factor: 10.0,
            window: 3,
        }
    }
}

/// Checkpointed partial sums with doubling deltas and the verdict.
#[derive(Debug, Clone, Serialize)]
pub struct SeriesReport {
    pub spec: SeriesSpec,
    /// (N, sum of terms with n <= N), one entry per requested checkpoint.
    pub checkpoints: Vec<(u64, f64)>,
    /// (N, sum(2N) - sum(N)) for every checkpoint pair (N, 2N).
    pub doubling_deltas: Vec<(u64, f64)>,
    pub verdict_hint: VerdictHint,
}

/// The n-th term of the series.
pub fn term_of(spec: &SeriesSpec, n: u64) -> Result<f64> {
    let start = spec.start_index();
    if n < start {
        return Err(Error::Spec(format!(
            "term index {n} precedes the series start {start}"
        )));
    }
    let nf = n as f64;
    match spec.kind {
        SeriesKind::SStarWeighted => {
            let m = s_star(nf)? as f64;
            Ok(1.0 / (nf * m.powf(spec.alpha)))
        }
        SeriesKind::ZStarPlain => {
            let m = z_star(nf)? as f64;
            Ok(1.0 / m.powf(spec.alpha))
        }
        SeriesKind::ZStarWeighted => {
            let m = z_star(nf)? as f64;
            Ok(1.0 / (nf * m.powf(spec.alpha)))
        }
        SeriesKind::PStarLogLog => {
            let p = spec.p.expect("validated at construction");
            let m = p_star(nf, p)? as f64;
            Ok((nf.ln().ln() / m.ln()).powf(spec.alpha) / nf)
        }
    }
}

/// Cursor-driven term stream; reproduces [`term_of`] bit for bit while only
/// recomputing the m-dependent factor when the index steps.
struct TermStream {
    kind: SeriesKind,
    alpha: f64,
    s_cur: SStarCursor,
    z_cur: ZStarCursor,
    p_cur: Option<PStarCursor>,
    last_m: u64,
    cached: f64,
}

impl TermStream {
    fn new(spec: &SeriesSpec) -> Result<Self> {
        let p_cur = match spec.kind {
            SeriesKind::PStarLogLog => Some(PStarCursor::new(spec.p.unwrap())?),
            _ => None,
        };
        Ok(Self {
            kind: spec.kind,
            alpha: spec.alpha,
            s_cur: SStarCursor::new(),
            z_cur: ZStarCursor::new(),
            p_cur,
            last_m: 0,
            cached: 0.0,
        })
    }

    #[inline]
    fn term(&mut self, n: u64) -> f64 {
        let nf = n as f64;
        match self.kind {
            SeriesKind::SStarWeighted => {
                let m = self.s_cur.advance(n);
                if m != self.last_m {
                    self.last_m = m;
                    self.cached = (m as f64).powf(self.alpha);
                }
                1.0 / (nf * self.cached)
            }
            SeriesKind::ZStarPlain => {
                let m = self.z_cur.advance(n);
                if m != self.last_m {
                    self.last_m = m;
                    self.cached = (m as f64).powf(self.alpha);
                }
                1.0 / self.cached
            }
            SeriesKind::ZStarWeighted => {
                let m = self.z_cur.advance(n);
                if m != self.last_m {
                    self.last_m = m;
                    self.cached = (m as f64).powf(self.alpha);
                }
                1.0 / (nf * self.cached)
            }
            SeriesKind::PStarLogLog => {
                let m = self.p_cur.as_mut().unwrap().advance(n);
                if m != self.last_m {
                    self.last_m = m;
                    self.cached = (m as f64).ln();
                }
                (nf.ln().ln() / self.cached).powf(self.alpha) / nf
            }
        }
    }
}

/// Stream the series, recording sums at the checkpoints, with default
/// diagnostic constants.
pub fn partial_sums(spec: &SeriesSpec, checkpoints: &[u64]) -> Result<SeriesReport> {
    partial_sums_with(spec, checkpoints, &DiagnosticConfig::default())
}

/// Stream the series with explicit diagnostic constants.
pub fn partial_sums_with(
    spec: &SeriesSpec,
    checkpoints: &[u64],
    cfg: &DiagnosticConfig,
) -> Result<SeriesReport> {
    if checkpoints.is_empty() {
        return Err(Error::Spec("at least one checkpoint is required".into()));
    }
    for w in checkpoints.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::Spec(format!(
                "checkpoints must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
    }
    let last = *checkpoints.last().unwrap();
    if last > spec.n_max {
        return Err(Error::Spec(format!(
            "checkpoint {last} exceeds n_max = {}",
            spec.n_max
        )));
    }

    let start = spec.start_index();
    let mut stream = TermStream::new(spec)?;
    let mut acc = CompensatedSum::new();
    let mut sums = Vec::with_capacity(checkpoints.len());
    let mut n = start;
    for &cp in checkpoints {
        while n <= cp {
            acc.add(stream.term(n));
            n += 1;
        }
        sums.push((cp, acc.value()));
    }

    let mut deltas = Vec::new();
    for &(nv, sv) in &sums {
        if let Some(&(_, s2)) = sums.iter().find(|&&(n2, _)| n2 == 2 * nv) {
            deltas.push((nv, s2 - sv));
        }
    }

    let final_sum = sums.last().map(|&(_, s)| s).unwrap_or(0.0);
    let verdict_hint = verdict(cfg, &deltas, final_sum);
    Ok(SeriesReport {
        spec: *spec,
        checkpoints: sums,
        doubling_deltas: deltas,
        verdict_hint,
    })
}

/// Classify the doubling-delta sequence.
///
/// Persistence is checked first: the trailing window sits in a flat band
/// above the numerical floor. Vanishing needs the whole delta sequence
/// non-increasing with total shrink of at least `shrink_factor`, or the
/// window already below the floor. Everything else is inconclusive.
fn verdict(cfg: &DiagnosticConfig, deltas: &[(u64, f64)], final_sum: f64) -> VerdictHint {
    if deltas.len() < cfg.window || cfg.window == 0 {
        return VerdictHint::Inconclusive;
    }
    let tail = &deltas[deltas.len() - cfg.window..];
    let mut mx = f64::NEG_INFINITY;
    let mut mn = f64::INFINITY;
    for &(_, d) in tail {
        mx = mx.max(d);
        mn = mn.min(d);
    }
    let floor = cfg.floor_factor * f64::EPSILON * final_sum.abs();
    if mx <= floor {
        return VerdictHint::DeltaVanishing;
    }
    if mn > floor && mx <= mn * (1.0 + cfg.persist_band) {
        return VerdictHint::DeltaPersistent;
    }
    let monotone = deltas
        .windows(2)
        .all(|w| w[1].1 <= w[0].1 * (1.0 + 1e-12));
    let first = deltas[0].1;
    let last = deltas[deltas.len() - 1].1;
    if monotone && first >= last * cfg.shrink_factor {
        return VerdictHint::DeltaVanishing;
    }
    VerdictHint::Inconclusive
}

/// Decade checkpoints with their doubles — {10^k, 2·10^k} up to n_max, plus
/// n_max itself — giving doubling deltas spaced a decade apart.
pub fn default_checkpoints(n_max: u64) -> Vec<u64> {
    let mut pts = Vec::new();
    let mut base = 10u64;
    while base <= n_max {
        pts.push(base);
        if 2 * base <= n_max {
            pts.push(2 * base);
        }
        match base.checked_mul(10) {
            Some(next) => base = next,
            None => break,
        }
    }
    if pts.last() != Some(&n_max) {
        pts.push(n_max);
    }
    pts
}
