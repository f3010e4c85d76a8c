//! Special functions underpinning the closed-form link expressions:
//! gamma/log-gamma, Bessel J₀, generalized hypergeometric series, and a
//! restricted Meijer G evaluator with a Mellin–Barnes contour fallback.
//!
//! Everything here is a pure function of its inputs; all evaluators are
//! re-entrant and safe to call concurrently.

mod bessel;
mod gamma;
mod hyper;
mod meijer;

pub use bessel::bessel_j0;
pub use gamma::{gamma, ln_gamma, ln_gamma_complex, ln_gamma_signed};
pub use hyper::hyp_pfq;
pub use meijer::{meijer_g, meijer_g_contour, meijer_g_series, MeijerGSpec, PoleStructure};

use thiserror::Error as ThisError;

/// Errors from the special-function evaluators.
#[derive(Debug, Clone, ThisError)]
pub enum Error {
    /// Argument outside the function's domain (gamma pole, non-positive
    /// Meijer argument, bad parameter counts, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// Two or more gamma-factor pole ladders coincide; the residue series is
    /// invalid and the caller must use the contour route.
    #[error("coincident poles: {0}")]
    PoleCoincidence(String),
    /// The two pole families interleave, so no straight vertical
    /// Mellin–Barnes contour exists (bent contours are out of scope).
    #[error("contour not separable: {0}")]
    ContourNotSeparable(String),
    /// Series or quadrature failed to reach its tolerance within budget.
    #[error("non-convergent: {0}")]
    NonConvergent(String),
    /// Parameter combination outside the evaluator's restricted class.
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
}
