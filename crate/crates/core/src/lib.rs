//! Numerical library for Jackson's q-gamma function and the classical and
//! q-deformed Smarandache-type additive analogues, with executable checks of
//! the bounds, asymptotics, and series behavior they obey.
//!
//! - [`qspecial`]: q-integers, q-factorial, (a;q)_inf, both Γ_q branches,
//!   reduced Moak q-Stirling forms
//! - [`classic`]: S, S*, Z, Z*, P, P* and their asymptotic ratios
//! - [`qanalog`]: Z_q, Z_q*, P_q, P_q*, the Z_q* bracket, the P_q* asymptote
//! - [`series`]: partial-sum engines and doubling-delta diagnostics
//! - [`verify`]: per-theorem verification grids producing [`verify::VerifyReport`]

pub mod accum;
pub mod classic;
pub mod error;
pub mod qanalog;
pub mod qspecial;
pub mod series;
pub mod verify;

pub use classic::{
    asymptotic_ratio, p_of, p_star, s_of, s_star, z_of, z_star, AsymptoticKind, PStarCursor,
    SStarCursor, ZStarCursor,
};
pub use error::{Error, Result};
pub use qanalog::{
    ladder_sup, p_q, p_q_star, p_q_star_asymptote, q_triangular, sandwich_check, sandwich_check_p,
    z_q, z_q_index, z_q_star, z_q_star_bounds, z_q_star_index, QBoundPair, QTriangularLadder,
};
pub use qspecial::{
    log_q_gamma, moak_log_gamma_approx, q_factorial, q_integer, q_pochhammer_inf, LogValue,
    MoakApprox, Precision, QParam, Regime,
};
pub use series::{
    default_checkpoints, partial_sums, partial_sums_with, term_of, DiagnosticConfig, SeriesKind,
    SeriesReport, SeriesSpec, VerdictHint,
};
pub use verify::{Overrides, Theorem, VerifyReport};
