//! Core q-series primitives: q-integers, the q-factorial, the infinite
//! q-Pochhammer symbol, both branches of Jackson's q-gamma function, and the
//! reduced Moak q-Stirling approximation.
//!
//! Gamma-scale magnitudes overflow doubles quickly (for small q, Γ_q(m)
//! leaves the double range near m ≈ 10^3), so gamma-sized quantities are
//! carried as natural logs in [`LogValue`].

use crate::accum::CompensatedSum;
use crate::error::{Error, Result};

/// Width of the rejection band around q = 1 for Γ_q and the q-Pochhammer
/// symbol. Inside the band the truncation count of the infinite products
/// grows like 1/|1-q|; q-integers stay available there through the
/// explicit-sum path.
pub const Q_ONE_GUARD: f64 = 1e-6;

/// Which side of q = 1 the deformation parameter lies on. The two regimes
/// select different Γ_q formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// 0 < q < 1.
    SubUnit,
    /// q > 1.
    SuperUnit,
}

/// Validated deformation parameter: q finite, q > 0, q != 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QParam {
    q: f64,
    regime: Regime,
}

impl QParam {
    pub fn new(q: f64) -> Result<Self> {
        if !q.is_finite() || q <= 0.0 {
            return Err(Error::Domain(format!(
                "q must be finite and positive, got {q}"
            )));
        }
        if q == 1.0 {
            return Err(Error::Domain(
                "q = 1 is the classical limit, not a valid deformation".into(),
            ));
        }
        let regime = if q < 1.0 {
            Regime::SubUnit
        } else {
            Regime::SuperUnit
        };
        Ok(Self { q, regime })
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.q
    }

    #[inline]
    pub fn regime(self) -> Regime {
        self.regime
    }

    #[inline]
    pub fn is_sub_unit(self) -> bool {
        self.regime == Regime::SubUnit
    }

    pub(crate) fn reject_near_one(self) -> Result<Self> {
        if (self.q - 1.0).abs() < Q_ONE_GUARD {
            Err(Error::QTooCloseToOne {
                q: self.q,
                limit: Q_ONE_GUARD,
            })
        } else {
            Ok(self)
        }
    }

    pub(crate) fn require_sub_unit(self, what: &str) -> Result<Self> {
        if self.is_sub_unit() {
            Ok(self)
        } else {
            Err(Error::Domain(format!(
                "{what} requires 0 < q < 1, got q = {}",
                self.q
            )))
        }
    }
}

/// Truncation control for all infinite-product evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Precision {
    rel_tol: f64,
    max_terms: usize,
}

impl Precision {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol < 1e-3) {
            return Err(Error::Spec(format!(
                "rel_tol must lie in (0, 1e-3), got {rel_tol}"
            )));
        }
        if max_terms < 64 {
            return Err(Error::Spec(format!(
                "max_terms must be at least 64, got {max_terms}"
            )));
        }
        Ok(Self { rel_tol, max_terms })
    }

    #[inline]
    pub fn rel_tol(self) -> f64 {
        self.rel_tol
    }

    #[inline]
    pub fn max_terms(self) -> usize {
        self.max_terms
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            max_terms: 10_000,
        }
    }
}

/// Natural log of a strictly positive quantity.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LogValue {
    log_magnitude: f64,
}

impl LogValue {
    pub fn new(log_magnitude: f64) -> Self {
        Self { log_magnitude }
    }

    /// ln of the represented value.
    #[inline]
    pub fn log(self) -> f64 {
        self.log_magnitude
    }

    /// The represented value; overflows to +inf outside the double range.
    #[inline]
    pub fn value(self) -> f64 {
        self.log_magnitude.exp()
    }
}

/// q^m without losing exponent range for very large m.
#[inline]
pub(crate) fn qpow(q: f64, m: u64) -> f64 {
    if m <= i32::MAX as u64 {
        q.powi(m as i32)
    } else {
        (m as f64 * q.ln()).exp()
    }
}

/// The q-integer [m]_q = (1 - q^m)/(1 - q) = 1 + q + ... + q^{m-1}.
///
/// The closed form cancels catastrophically near q = 1, so inputs with
/// |1 - q| < [`Q_ONE_GUARD`] take the explicit-sum path instead.
///
/// ```
/// use qsandor::qspecial::{q_integer, QParam};
/// let q = QParam::new(0.5).unwrap();
/// assert_eq!(q_integer(3, q), 1.75);
/// ```
pub fn q_integer(m: u64, q: QParam) -> f64 {
    let qv = q.value();
    if (1.0 - qv).abs() < Q_ONE_GUARD {
        let mut sum = 0.0;
        let mut power = 1.0;
        for _ in 0..m {
            sum += power;
            power *= qv;
        }
        return sum;
    }
    (1.0 - qpow(qv, m)) / (1.0 - qv)
}

/// log (n!)_q = Σ_{k=1}^{n} log [k]_q, with (0!)_q = 1 as the empty product.
pub fn q_factorial(n: u64, q: QParam) -> LogValue {
    let mut acc = CompensatedSum::new();
    for k in 1..=n {
        acc.add(q_integer(k, q).ln());
    }
    LogValue::new(acc.value())
}

/// Truncation index N for (a;q)_inf: the log tail past N is bounded by
/// a q^{N+1} / ((1-q)(1 - a q^{N+1})) via -log(1-t) <= t/(1-t) and geometric
/// summation, so it suffices to solve a q^{N+1} < c with
/// c = rel_tol (1-q) / (1 + rel_tol (1-q)). No iterative refinement needed.
fn truncation_index(a_abs: f64, q: f64, rel_tol: f64) -> usize {
    if a_abs == 0.0 {
        return 0;
    }
    let c = rel_tol * (1.0 - q) / (1.0 + rel_tol * (1.0 - q));
    if a_abs < c {
        return 0;
    }
    ((c / a_abs).ln() / q.ln()).floor() as usize
}

/// log (a;q)_inf = log Π_{n>=0} (1 - a q^n), truncated so the dropped log
/// tail stays below `prec.rel_tol()`. Requires 0 < q < 1; every factor must
/// be strictly positive (guaranteed for a < 1).
pub fn q_pochhammer_inf(a: f64, q: QParam, prec: Precision) -> Result<LogValue> {
    let q = q.require_sub_unit("(a;q)_inf")?;
    let qv = q.value();
    if !a.is_finite() {
        return Err(Error::Domain(format!("a must be finite, got {a}")));
    }
    let cut = truncation_index(a.abs(), qv, prec.rel_tol());
    if cut > prec.max_terms() {
        return Err(Error::TermCapExceeded {
            required: cut,
            cap: prec.max_terms(),
        });
    }
    let mut acc = CompensatedSum::new();
    let mut aqn = a;
    for index in 0..=cut {
        if 1.0 - aqn <= 0.0 {
            return Err(Error::NonPositiveFactor { a, q: qv, index });
        }
        acc.add((-aqn).ln_1p());
        aqn *= qv;
        if aqn == 0.0 {
            break;
        }
    }
    Ok(LogValue::new(acc.value()))
}

/// log Γ_q(x) for x > 0.
///
/// Sub-unit branch: Γ_q(x) = (q;q)_inf / (q^x;q)_inf · (1-q)^{1-x}.
/// Super-unit branch: base r = 1/q with the extra factor
/// (q-1)^{1-x} q^{x(x-1)/2}; the binomial exponent is read as x(x-1)/2 for
/// real x, which is what makes the recurrence Γ_q(x+1) = [x]_q Γ_q(x) hold
/// on that side too.
pub fn log_q_gamma(x: f64, q: QParam, prec: Precision) -> Result<LogValue> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!("Gamma_q requires x > 0, got {x}")));
    }
    let q = q.reject_near_one()?;
    let qv = q.value();
    match q.regime() {
        Regime::SubUnit => {
            let numer = q_pochhammer_inf(qv, q, prec)?;
            let denom = q_pochhammer_inf(qv.powf(x), q, prec)?;
            let log = numer.log() - denom.log() + (1.0 - x) * (1.0 - qv).ln();
            Ok(LogValue::new(log))
        }
        Regime::SuperUnit => {
            let r = QParam::new(1.0 / qv)?;
            let rv = r.value();
            let numer = q_pochhammer_inf(rv, r, prec)?;
            let denom = q_pochhammer_inf(rv.powf(x), r, prec)?;
            let log = numer.log() - denom.log()
                + (1.0 - x) * (qv - 1.0).ln()
                + 0.5 * x * (x - 1.0) * qv.ln();
            Ok(LogValue::new(log))
        }
    }
}

/// The two reduced forms of Moak's q-Stirling approximation to log Γ_q(n+1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoakApprox {
    /// (n + 1/2) · log((q^{n+1} - 1)/(q - 1)) = (n + 1/2) · log [n+1]_q.
    pub mid: f64,
    /// n · log(1/(1-q)).
    pub coarse: f64,
}

/// Both reduced Moak forms for log Γ_q(n+1), sub-unit q only.
pub fn moak_log_gamma_approx(n: u64, q: QParam) -> Result<MoakApprox> {
    let q = q.require_sub_unit("the Moak approximation")?;
    if n == 0 {
        return Err(Error::Domain("Moak approximation requires n >= 1".into()));
    }
    let mid = (n as f64 + 0.5) * q_integer(n + 1, q).ln();
    let coarse = -(n as f64) * (1.0 - q.value()).ln();
    Ok(MoakApprox { mid, coarse })
}
