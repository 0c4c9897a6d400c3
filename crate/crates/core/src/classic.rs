//! Sándor's classical additive analogues S, S*, Z, Z*, P, P*, their
//! asymptotic ratios, and streaming cursors for high-volume series sweeps.
//!
//! Factorial comparisons stay on the exact u64 table while the argument fits
//! below 20!, and switch to cumulative log-factorials past that, so boundary
//! cases (x exactly m!) remain exact wherever they are representable.

use crate::error::{Error, Result};

/// n! for n <= 20; all entries are exactly representable as f64 and 20! is
/// the largest factorial below 2^63.
pub(crate) const FACTORIALS: [u64; 21] = [
    1,
    1,
    2,
    6,
    24,
    120,
    720,
    5_040,
    40_320,
    362_880,
    3_628_800,
    39_916_800,
    479_001_600,
    6_227_020_800,
    87_178_291_200,
    1_307_674_368_000,
    20_922_789_888_000,
    355_687_428_096_000,
    6_402_373_705_728_000,
    121_645_100_408_832_000,
    2_432_902_008_176_640_000,
];

/// Past this the triangular index no longer fits the exact-integer machinery.
const TRIANGULAR_X_LIMIT: f64 = 9.2e18;

#[inline]
fn tri(m: u64) -> u128 {
    (m as u128) * (m as u128 + 1) / 2
}

/// S(x) = min { m : x <= m! }, for x > 1.
///
/// ```
/// assert_eq!(qsandor::classic::s_of(10.0).unwrap(), 4); // 3! = 6 < 10 <= 24
/// ```
pub fn s_of(x: f64) -> Result<u64> {
    if !x.is_finite() || x <= 1.0 {
        return Err(Error::Domain(format!("S(x) requires x > 1, got {x}")));
    }
    if x <= FACTORIALS[20] as f64 {
        let mut m = 1usize;
        while (FACTORIALS[m] as f64) < x {
            m += 1;
        }
        return Ok(m as u64);
    }
    let lx = x.ln();
    let mut m = 1u64;
    let mut log_fact = 0.0;
    while log_fact < lx {
        m += 1;
        log_fact += (m as f64).ln();
    }
    Ok(m)
}

/// S*(x) = max { m : m! <= x }, for x >= 1.
pub fn s_star(x: f64) -> Result<u64> {
    if !x.is_finite() || x < 1.0 {
        return Err(Error::Domain(format!("S*(x) requires x >= 1, got {x}")));
    }
    if x <= FACTORIALS[20] as f64 {
        let mut m = 1usize;
        while m < 20 && (FACTORIALS[m + 1] as f64) <= x {
            m += 1;
        }
        return Ok(m as u64);
    }
    let lx = x.ln();
    let mut m = 1u64;
    let mut log_next = (2.0f64).ln();
    while log_next <= lx {
        m += 1;
        log_next += ((m + 1) as f64).ln();
    }
    Ok(m)
}

/// Z*(x) = max { m : m(m+1)/2 <= x }, for x >= 1, through the closed form
/// floor((sqrt(8x+1)-1)/2) with an exact-integer boundary repair (the float
/// sqrt may stray across a triangular number).
pub fn z_star(x: f64) -> Result<u64> {
    if !x.is_finite() || x < 1.0 {
        return Err(Error::Domain(format!("Z*(x) requires x >= 1, got {x}")));
    }
    if x >= TRIANGULAR_X_LIMIT {
        return Err(Error::Domain(format!(
            "triangular inversion supports x < {TRIANGULAR_X_LIMIT:e}, got {x}"
        )));
    }
    let mut m = (((8.0 * x + 1.0).sqrt() - 1.0) / 2.0).floor() as u64;
    m = m.max(1);
    while m > 1 && tri(m) as f64 > x {
        m -= 1;
    }
    while tri(m + 1) as f64 <= x {
        m += 1;
    }
    Ok(m)
}

/// Z(x) = min { m : x <= m(m+1)/2 }, for x > 0.
pub fn z_of(x: f64) -> Result<u64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!("Z(x) requires x > 0, got {x}")));
    }
    if x >= TRIANGULAR_X_LIMIT {
        return Err(Error::Domain(format!(
            "triangular inversion supports x < {TRIANGULAR_X_LIMIT:e}, got {x}"
        )));
    }
    if x <= 1.0 {
        return Ok(1);
    }
    let mut m = (((8.0 * x + 1.0).sqrt() - 1.0) / 2.0).ceil() as u64;
    m = m.max(1);
    while m > 1 && tri(m - 1) as f64 >= x {
        m -= 1;
    }
    while (tri(m) as f64) < x {
        m += 1;
    }
    Ok(m)
}

/// P*(x) = max { m : m! <= p^x } for p > 1, x >= 1, compared as cumulative
/// log-factorial against x log p. Cost is O(P*(x)) log evaluations.
pub fn p_star(x: f64, p: f64) -> Result<u64> {
    check_p(p)?;
    if !x.is_finite() || x < 1.0 {
        return Err(Error::Domain(format!("P*(x) requires x >= 1, got {x}")));
    }
    let target = x * p.ln();
    let mut m = 1u64;
    let mut log_next = (2.0f64).ln();
    while log_next <= target {
        m += 1;
        log_next += ((m + 1) as f64).ln();
    }
    Ok(m)
}

/// P(x) = min { m : p^x <= m! } for p > 1, x > 0.
pub fn p_of(x: f64, p: f64) -> Result<u64> {
    check_p(p)?;
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!("P(x) requires x > 0, got {x}")));
    }
    let target = x * p.ln();
    let mut m = 1u64;
    let mut log_fact = 0.0;
    while log_fact < target {
        m += 1;
        log_fact += (m as f64).ln();
    }
    Ok(m)
}

fn check_p(p: f64) -> Result<()> {
    if !p.is_finite() || p <= 1.0 {
        return Err(Error::Domain(format!("the base must satisfy p > 1, got {p}")));
    }
    Ok(())
}

/// Which asymptotic law a ratio is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AsymptoticKind {
    /// S*(x) vs log x / log log x (x > e).
    T11,
    /// Z*(x) vs sqrt(8x+1)/2 (x >= 1).
    T13,
    /// log P*(x) vs log x (x > 1, needs p).
    T15,
}

/// Function value divided by its asymptote; a conforming implementation
/// drives this toward 1 as x grows. T11 and T15 close in on 1 only
/// logarithmically, so expect them to sit visibly away from 1 at any
/// double-precision abscissa.
pub fn asymptotic_ratio(kind: AsymptoticKind, x: f64, p: f64) -> Result<f64> {
    match kind {
        AsymptoticKind::T11 => {
            if !x.is_finite() || x <= std::f64::consts::E {
                return Err(Error::Domain(format!(
                    "the T11 ratio requires x > e, got {x}"
                )));
            }
            let s = s_star(x)? as f64;
            Ok(s * x.ln().ln() / x.ln())
        }
        AsymptoticKind::T13 => {
            let z = z_star(x)? as f64;
            Ok(z / (0.5 * (8.0 * x + 1.0).sqrt()))
        }
        AsymptoticKind::T15 => {
            if !x.is_finite() || x <= 1.0 {
                return Err(Error::Domain(format!(
                    "the T15 ratio requires x > 1, got {x}"
                )));
            }
            let m = p_star(x, p)? as f64;
            Ok(m.ln() / x.ln())
        }
    }
}

/// Streaming S*(n) over non-decreasing integer arguments. Since 21! exceeds
/// u64::MAX, the exact table covers every reachable n.
#[derive(Debug, Clone, Default)]
pub struct SStarCursor {
    m: usize,
}

impl SStarCursor {
    pub fn new() -> Self {
        Self { m: 1 }
    }

    /// Largest m with m! <= n; `n` must not decrease between calls.
    #[inline]
    pub fn advance(&mut self, n: u64) -> u64 {
        while self.m < 20 && FACTORIALS[self.m + 1] <= n {
            self.m += 1;
        }
        self.m as u64
    }
}

/// Streaming Z*(n) over non-decreasing integer arguments.
#[derive(Debug, Clone)]
pub struct ZStarCursor {
    m: u64,
    next: u128,
}

impl ZStarCursor {
    pub fn new() -> Self {
        Self { m: 1, next: tri(2) }
    }

    /// Largest m with m(m+1)/2 <= n; `n` must not decrease between calls.
    #[inline]
    pub fn advance(&mut self, n: u64) -> u64 {
        while self.next <= n as u128 {
            self.m += 1;
            self.next = tri(self.m + 1);
        }
        self.m
    }
}

impl Default for ZStarCursor {
    fn default() -> Self {
        Self::new()
    }
}

/// Streaming P*(n) over non-decreasing integer arguments. Accumulates the
/// log-factorial ladder exactly like [`p_star`], so the two agree bit for
/// bit on every n.
#[derive(Debug, Clone)]
pub struct PStarCursor {
    ln_p: f64,
    m: u64,
    log_next: f64,
}

impl PStarCursor {
    pub fn new(p: f64) -> Result<Self> {
        check_p(p)?;
        Ok(Self {
            ln_p: p.ln(),
            m: 1,
            log_next: (2.0f64).ln(),
        })
    }

    #[inline]
    pub fn advance(&mut self, n: u64) -> u64 {
        let target = n as f64 * self.ln_p;
        while self.log_next <= target {
            self.m += 1;
            self.log_next += ((self.m + 1) as f64).ln();
        }
        self.m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_examples() {
        assert_eq!(s_of(2.0).unwrap(), 2);
        assert_eq!(s_of(10.0).unwrap(), 4);
        assert_eq!(s_of(720.0).unwrap(), 6); // boundary inclusive: x <= m!
        assert!(s_of(1.0).is_err());
        assert!(s_of(0.5).is_err());
    }

    #[test]
    fn s_star_examples() {
        assert_eq!(s_star(1.0).unwrap(), 1);
        assert_eq!(s_star(10.0).unwrap(), 3);
        assert_eq!(s_star(24.0).unwrap(), 4); // boundary inclusive: m! <= x
        assert!(s_star(0.999).is_err());
    }

    #[test]
    fn s_log_path_agrees_at_crossover() {
        // 20! is the last exact-table entry; just above it the log path takes
        // over and must continue seamlessly
        let x20 = FACTORIALS[20] as f64;
        assert_eq!(s_star(x20).unwrap(), 20);
        assert_eq!(s_of(x20).unwrap(), 20);
        assert_eq!(s_star(x20 * 1.0001).unwrap(), 20);
        assert_eq!(s_of(x20 * 1.0001).unwrap(), 21);
        assert_eq!(s_star(1e300).unwrap(), 166);
        assert_eq!(s_of(1e300).unwrap(), 167);
    }

    #[test]
    fn z_examples() {
        assert_eq!(z_star(1.0).unwrap(), 1);
        assert_eq!(z_star(10.0).unwrap(), 4); // T(4) = 10
        assert_eq!(z_of(10.0).unwrap(), 4);
        assert_eq!(z_of(0.5).unwrap(), 1);
        assert_eq!(z_of(11.0).unwrap(), 5);
        assert_eq!(z_star(14.999).unwrap(), 4);
        assert_eq!(z_star(15.0).unwrap(), 5);
        assert!(z_star(0.5).is_err());
        assert!(z_of(0.0).is_err());
        assert!(z_star(1e19).is_err());
    }

    #[test]
    fn p_examples() {
        assert_eq!(p_star(1.0, 2.0).unwrap(), 2); // 2! = 2 <= 2^1 < 3!
        assert_eq!(p_star(3.0, 2.0).unwrap(), 3); // 6 <= 8 < 24
        assert_eq!(p_of(3.0, 2.0).unwrap(), 4); // min m with 8 <= m!
        assert_eq!(p_of(0.1, 2.0).unwrap(), 2);
        assert!(p_star(0.5, 2.0).is_err());
        assert!(p_of(-1.0, 2.0).is_err());
        assert!(p_star(2.0, 1.0).is_err());
        assert!(p_of(2.0, 0.5).is_err());
    }

    #[test]
    fn duality_at_thresholds() {
        // F(F*'s threshold) hits the boundary exactly
        for m in 2..=8u64 {
            let f = FACTORIALS[m as usize] as f64;
            assert_eq!(s_of(f).unwrap(), m);
            assert_eq!(s_star(f).unwrap(), m);
            let t = (m * (m + 1) / 2) as f64;
            assert_eq!(z_of(t).unwrap(), m);
            assert_eq!(z_star(t).unwrap(), m);
        }
    }

    #[test]
    fn asymptotic_ratio_examples() {
        // Z*(5000) = 99, asymptote sqrt(40001)/2
        let r = asymptotic_ratio(AsymptoticKind::T13, 5000.0, 0.0).unwrap();
        assert!((r - 99.0 / (0.5 * 40_001f64.sqrt())).abs() < 1e-15);
        assert!((r - 0.98999).abs() < 1e-5);
        let r = asymptotic_ratio(AsymptoticKind::T13, 1.0, 0.0).unwrap();
        assert!((r - 1.0 / 1.5).abs() < 1e-15);
        assert!(asymptotic_ratio(AsymptoticKind::T11, 2.0, 0.0).is_err());
        assert!(asymptotic_ratio(AsymptoticKind::T15, 1.0, 2.0).is_err());
    }

    #[test]
    fn cursors_match_one_shot() {
        let mut sc = SStarCursor::new();
        let mut zc = ZStarCursor::new();
        let mut pc = PStarCursor::new(2.0).unwrap();
        for n in 1..=5000u64 {
            let nf = n as f64;
            assert_eq!(sc.advance(n), s_star(nf).unwrap(), "S* at {n}");
            assert_eq!(zc.advance(n), z_star(nf).unwrap(), "Z* at {n}");
            assert_eq!(pc.advance(n), p_star(nf, 2.0).unwrap(), "P* at {n}");
        }
    }
}
