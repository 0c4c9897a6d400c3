//! Error type shared by all modules.

use thiserror::Error;

/// Library-wide error. `Display` output starts with the stable error name
/// (also available through [`Error::name`]), which is what the CLI prints.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the defining domain of a function.
    #[error("DomainError: {0}")]
    Domain(String),
    /// q so close to 1 that infinite-product truncation cannot terminate in
    /// a sane number of factors.
    #[error("QTooCloseToOne: q = {q} is within {limit:e} of 1")]
    QTooCloseToOne { q: f64, limit: f64 },
    /// A factor 1 - a q^n of an infinite product is not strictly positive.
    #[error("NonPositiveFactor: 1 - a*q^n <= 0 at n = {index} (a = {a}, q = {q})")]
    NonPositiveFactor { a: f64, q: f64, index: usize },
    /// The truncation index needed for the requested tolerance exceeds the
    /// configured term cap.
    #[error("TermCapExceeded: {required} terms needed, cap is {cap}")]
    TermCapExceeded { required: usize, cap: usize },
    /// x at or above the supremum of the q-triangular ladder; the defining
    /// set of Z_q / Z_q* is empty or unbounded there.
    #[error("SupExceeded: x = {x} >= 1/(2(1-q)^2) = {sup}")]
    SupExceeded { x: f64, sup: f64 },
    /// Invalid series or precision specification.
    #[error("SpecError: {0}")]
    Spec(String),
}

impl Error {
    /// Machine-readable error name, the prefix of the `Display` output.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Domain(_) => "DomainError",
            Error::QTooCloseToOne { .. } => "QTooCloseToOne",
            Error::NonPositiveFactor { .. } => "NonPositiveFactor",
            Error::TermCapExceeded { .. } => "TermCapExceeded",
            Error::SupExceeded { .. } => "SupExceeded",
            Error::Spec(_) => "SpecError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_starts_with_name() {
        let errs = [
            Error::Domain("x".into()),
            Error::QTooCloseToOne { q: 1.0, limit: 1e-6 },
            Error::NonPositiveFactor { a: 2.0, q: 0.5, index: 0 },
            Error::TermCapExceeded { required: 100, cap: 64 },
            Error::SupExceeded { x: 3.0, sup: 2.0 },
            Error::Spec("bad".into()),
        ];
        for e in errs {
            assert!(e.to_string().starts_with(e.name()));
        }
    }
}
