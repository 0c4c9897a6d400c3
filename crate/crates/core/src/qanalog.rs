//! q-analogues of the pseudo-Smarandache and Smarandache-simple additive
//! functions: Z_q, Z_q*, the bracketing bounds for Z_q*, and P_q, P_q* with
//! the P_q* asymptote. All of these live below q = 1.
//!
//! The domain backbone is the q-triangular ladder
//! T_q(m) = Γ_q(m+2)/(2 Γ_q(m)) = [m]_q [m+1]_q / 2, which increases
//! strictly to the finite supremum 1/(2(1-q)^2). Above the supremum the
//! defining sets of Z_q / Z_q* degenerate, so evaluation there raises
//! `SupExceeded` instead of inventing a value.
//!
//! Threshold decisions never touch the infinite products: x vs T_q(m) is
//! compared in the exact product form (1-q^m)(1-q^{m+1}) vs 2x(1-q)^2.

use crate::error::{Error, Result};
use crate::qspecial::{q_integer, qpow, Precision, QParam};

/// Supremum of the q-triangular ladder, 1/(2(1-q)^2).
pub fn ladder_sup(q: QParam) -> Result<f64> {
    let q = q.require_sub_unit("the q-triangular ladder")?;
    let d = 1.0 - q.value();
    Ok(1.0 / (2.0 * d * d))
}

/// T_q(m) = (1-q^m)(1-q^{m+1}) / (2(1-q)^2), the exact product form of
/// Γ_q(m+2)/(2 Γ_q(m)).
pub fn q_triangular(m: u64, q: QParam) -> Result<f64> {
    let q = q.require_sub_unit("T_q")?;
    if m == 0 {
        return Err(Error::Domain("T_q(m) requires m >= 1".into()));
    }
    let qv = q.value();
    let d = 1.0 - qv;
    Ok((1.0 - qpow(qv, m)) * (1.0 - qpow(qv, m + 1)) / (2.0 * d * d))
}

/// Cached prefix of the q-triangular ladder together with its supremum.
/// Immutable to readers; extending the cache needs `&mut` and returns the
/// same values as cache-free evaluation.
#[derive(Debug, Clone)]
pub struct QTriangularLadder {
    q: QParam,
    values: Vec<f64>,
    sup: f64,
}

impl QTriangularLadder {
    pub fn new(q: QParam) -> Result<Self> {
        let sup = ladder_sup(q)?;
        Ok(Self {
            q,
            values: Vec::new(),
            sup,
        })
    }

    #[inline]
    pub fn q(&self) -> QParam {
        self.q
    }

    /// 1/(2(1-q)^2); every rung stays strictly below this.
    #[inline]
    pub fn sup(&self) -> f64 {
        self.sup
    }

    /// T_q(m) for m >= 1, extending the cache as needed.
    pub fn value(&mut self, m: u64) -> f64 {
        assert!(m >= 1, "ladder rungs are 1-based");
        while (self.values.len() as u64) < m {
            let next = self.values.len() as u64 + 1;
            self.values
                .push(q_triangular(next, self.q).expect("sub-unit by construction"));
        }
        self.values[(m - 1) as usize]
    }

    /// The rungs computed so far.
    pub fn computed(&self) -> &[f64] {
        &self.values
    }
}

/// T_q(m) <= x in the exact product form.
#[inline]
fn rung_le_x(m: u64, x: f64, qv: f64) -> bool {
    let d = 1.0 - qv;
    (1.0 - qpow(qv, m)) * (1.0 - qpow(qv, m + 1)) <= 2.0 * x * d * d
}

/// T_q(m) >= x in the exact product form.
#[inline]
fn rung_ge_x(m: u64, x: f64, qv: f64) -> bool {
    let d = 1.0 - qv;
    (1.0 - qpow(qv, m)) * (1.0 - qpow(qv, m + 1)) >= 2.0 * x * d * d
}

/// Greatest m with T_q(m) <= x. Caller guarantees T_q(1) <= x < sup.
///
/// Seeded from the closed-form root y1 of the Theorem 2.1 proof
/// (T_q(m) <= x iff q^m >= y1), then bracketed by galloping and finished by
/// bisection on the exact comparator, so a sloppy seed can never produce a
/// wrong index.
fn ladder_index_max(x: f64, qv: f64) -> u64 {
    let s = (1.0 + 8.0 * x * qv).sqrt();
    let y1 = (1.0 + qv - (1.0 - qv) * s) / (2.0 * qv);
    let seed = if y1 > 0.0 {
        (y1.ln() / qv.ln()).floor().max(1.0).min(9.0e18) as u64
    } else {
        1
    };
    let mut lo = 1u64;
    if seed > 1 && rung_le_x(seed, x, qv) {
        lo = seed;
    }
    let mut step = 1u64;
    let mut hi = lo.saturating_add(1);
    while rung_le_x(hi, x, qv) {
        lo = hi;
        step = step.saturating_mul(2);
        hi = lo.saturating_add(step);
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if rung_le_x(mid, x, qv) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Z_q*(x) = [m]_q for the greatest m with T_q(m) <= x.
/// Defined for T_q(1) <= x < 1/(2(1-q)^2).
pub fn z_q_star(x: f64, q: QParam) -> Result<f64> {
    Ok(q_integer(z_q_star_index(x, q)?, q))
}

/// The index m realizing Z_q*(x).
pub fn z_q_star_index(x: f64, q: QParam) -> Result<u64> {
    let q = q.require_sub_unit("Z_q*")?;
    let qv = q.value();
    if !x.is_finite() {
        return Err(Error::Domain(format!("Z_q*(x) requires finite x, got {x}")));
    }
    let sup = ladder_sup(q)?;
    if x >= sup {
        return Err(Error::SupExceeded { x, sup });
    }
    if !rung_le_x(1, x, qv) {
        return Err(Error::Domain(format!(
            "Z_q*(x) requires x >= T_q(1) = {}, got {x}",
            (1.0 + qv) / 2.0
        )));
    }
    Ok(ladder_index_max(x, qv))
}

/// Z_q(x) = [m]_q for the least m with x <= T_q(m); equals 1 on (0, T_q(1)].
/// Defined for 0 < x < 1/(2(1-q)^2).
pub fn z_q(x: f64, q: QParam) -> Result<f64> {
    Ok(q_integer(z_q_index(x, q)?, q))
}

/// The index m realizing Z_q(x).
pub fn z_q_index(x: f64, q: QParam) -> Result<u64> {
    let q = q.require_sub_unit("Z_q")?;
    let qv = q.value();
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!("Z_q(x) requires x > 0, got {x}")));
    }
    let sup = ladder_sup(q)?;
    if x >= sup {
        return Err(Error::SupExceeded { x, sup });
    }
    if rung_ge_x(1, x, qv) {
        return Ok(1);
    }
    let m = ladder_index_max(x, qv);
    if rung_ge_x(m, x, qv) {
        Ok(m) // x sits exactly on the rung
    } else {
        Ok(m + 1)
    }
}

/// The bracket around Z_q*(x): lower < Z_q*(x) <= upper.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QBoundPair {
    /// (sqrt(1+8xq) - (1+2q)) / (2q^2), strict lower bound.
    pub lower: f64,
    /// (sqrt(1+8xq) - 1) / (2q), weak upper bound.
    pub upper: f64,
}

/// The closed-form bracket for Z_q*(x), valid for x >= T_q(1).
pub fn z_q_star_bounds(x: f64, q: QParam) -> Result<QBoundPair> {
    let q = q.require_sub_unit("the Z_q* bounds")?;
    let qv = q.value();
    if !x.is_finite() || !rung_le_x(1, x, qv) {
        return Err(Error::Domain(format!(
            "the Z_q* bounds require x >= T_q(1) = {}, got {x}",
            (1.0 + qv) / 2.0
        )));
    }
    let s = (1.0 + 8.0 * x * qv).sqrt();
    Ok(QBoundPair {
        lower: (s - (1.0 + 2.0 * qv)) / (2.0 * qv * qv),
        upper: (s - 1.0) / (2.0 * qv),
    })
}

/// Incremental log Γ_q(m+1) = Σ_{k<=m} log(1-q^k) - m log(1-q). The Σ prefix
/// is cached and treated as converged once |log(1-q^k)| drops below the
/// relative tolerance, which keeps each comparison O(1) amortized even at
/// m around 10^6.
struct LogQGammaLadder {
    qv: f64,
    log_one_minus_q: f64,
    prefix: Vec<f64>,
    converged: bool,
    rel_tol: f64,
    max_terms: usize,
}

impl LogQGammaLadder {
    fn new(qv: f64, prec: Precision) -> Self {
        Self {
            qv,
            log_one_minus_q: (1.0 - qv).ln(),
            prefix: vec![0.0],
            converged: false,
            rel_tol: prec.rel_tol(),
            max_terms: prec.max_terms(),
        }
    }

    fn log_gamma_idx(&mut self, m: u64) -> Result<f64> {
        Ok(self.prefix_sum(m)? - m as f64 * self.log_one_minus_q)
    }

    fn prefix_sum(&mut self, m: u64) -> Result<f64> {
        let want = m as usize;
        while self.prefix.len() <= want && !self.converged {
            if self.prefix.len() > self.max_terms {
                return Err(Error::TermCapExceeded {
                    required: want,
                    cap: self.max_terms,
                });
            }
            let k = self.prefix.len() as u64;
            let term = (-qpow(self.qv, k)).ln_1p();
            if term.abs() < self.rel_tol {
                self.converged = true;
                break;
            }
            let last = *self.prefix.last().unwrap();
            self.prefix.push(last + term);
        }
        Ok(if want < self.prefix.len() {
            self.prefix[want]
        } else {
            *self.prefix.last().unwrap()
        })
    }
}

/// P_q*(x) = max { m : Γ_q(m+1) <= p^x } for p > 1, x >= 1, sub-unit q.
/// Compared as log Γ_q(m+1) vs x log p, seeded by the Theorem 2.2 asymptote
/// and repaired against the incremental ladder.
pub fn p_q_star(x: f64, q: QParam, p: f64, prec: Precision) -> Result<u64> {
    let q = q.require_sub_unit("P_q*")?;
    check_base(p)?;
    if !x.is_finite() || x < 1.0 {
        return Err(Error::Domain(format!("P_q*(x) requires x >= 1, got {x}")));
    }
    let qv = q.value();
    let target = x * p.ln();
    let mut ladder = LogQGammaLadder::new(qv, prec);
    let seed = asymptote_seed(target, qv);

    // greatest m with g(m) <= target; g(1) = 0 <= target always
    let mut lo = 1u64;
    if seed > 1 && ladder.log_gamma_idx(seed)? <= target {
        lo = seed;
    }
    let mut step = 1u64;
    let mut hi = lo.saturating_add(1);
    while ladder.log_gamma_idx(hi)? <= target {
        lo = hi;
        step = step.saturating_mul(2);
        hi = lo.saturating_add(step);
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ladder.log_gamma_idx(mid)? <= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// P_q(x) = min { m : p^x <= Γ_q(m+1) } for p > 1, x > 0, sub-unit q.
pub fn p_q(x: f64, q: QParam, p: f64, prec: Precision) -> Result<u64> {
    let q = q.require_sub_unit("P_q")?;
    check_base(p)?;
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!("P_q(x) requires x > 0, got {x}")));
    }
    let qv = q.value();
    let target = x * p.ln();
    let mut ladder = LogQGammaLadder::new(qv, prec);
    let seed = asymptote_seed(target, qv);

    // least m with g(m) >= target; g(1) = 0 < target always
    let mut lo = 1u64;
    if seed > 1 && ladder.log_gamma_idx(seed)? < target {
        lo = seed;
    }
    let mut step = 1u64;
    let mut hi = lo.saturating_add(1);
    while ladder.log_gamma_idx(hi)? < target {
        lo = hi;
        step = step.saturating_mul(2);
        hi = lo.saturating_add(step);
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ladder.log_gamma_idx(mid)? < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}

fn asymptote_seed(target: f64, qv: f64) -> u64 {
    let denom = -(1.0 - qv).ln();
    ((target / denom).floor().max(1.0).min(9.0e18)) as u64
}

fn check_base(p: f64) -> Result<()> {
    if !p.is_finite() || p <= 1.0 {
        return Err(Error::Domain(format!("the base must satisfy p > 1, got {p}")));
    }
    Ok(())
}

/// x log p / log(1/(1-q)), the asymptote P_q*(x) tends to (Theorem 2.2 side).
pub fn p_q_star_asymptote(x: f64, q: QParam, p: f64) -> Result<f64> {
    let q = q.require_sub_unit("the P_q* asymptote")?;
    check_base(p)?;
    if !x.is_finite() || x < 1.0 {
        return Err(Error::Domain(format!(
            "the P_q* asymptote requires x >= 1, got {x}"
        )));
    }
    Ok(x * p.ln() / -(1.0 - q.value()).ln())
}

/// Z_q*(x) <= Z_q(x) <= Z_q*(x) + 1 at x (intersection of both domains).
pub fn sandwich_check(x: f64, q: QParam) -> Result<bool> {
    let zs = z_q_star(x, q)?;
    let z = z_q(x, q)?;
    Ok(zs <= z && z <= zs + 1.0)
}

/// P_q*(x) <= P_q(x) <= P_q*(x) + 1 at x.
pub fn sandwich_check_p(x: f64, q: QParam, p: f64, prec: Precision) -> Result<bool> {
    let ps = p_q_star(x, q, p, prec)?;
    let pq = p_q(x, q, p, prec)?;
    Ok(ps <= pq && pq <= ps + 1)
}
