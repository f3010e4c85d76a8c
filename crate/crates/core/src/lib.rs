//! Performance modeling of a dual-hop RF/FSO relay link.
//!
//! The link under study is a radio first hop into one of `N` parallel
//! amplify-and-forward relays (fixed gain, partial relay selection on
//! possibly outdated channel knowledge) followed by a free-space optical
//! second hop whose irradiance fades as the product of two independent
//! Weibull variables. Transmit hardware at the source and the relay adds
//! residual distortion, so the end-to-end figure of merit is a
//! signal-to-noise-plus-distortion ratio (SNDR) rather than a plain SNR.
//!
//! The crate provides three independent evaluation routes for every
//! headline quantity and is built so they can be checked against each
//! other:
//!
//! - closed forms (Meijer G expressions) in [`analysis`],
//! - direct numerical integration of the defining integrals, and
//! - trial-level Monte Carlo simulation of the full signal chain in
//!   [`montecarlo`].
//!
//! Module map:
//!
//! - [`specfun`] — gamma, Bessel J₀, generalized hypergeometric series and
//!   a restricted Meijer G evaluator (residue series + Mellin–Barnes
//!   contour fallback),
//! - [`quad`] — adaptive Gauss–Kronrod quadrature,
//! - [`rng`] — counter-based splittable random streams for reproducible
//!   parallel sampling,
//! - [`rf`] — first-hop statistics: correlated Rayleigh fading, outdated
//!   partial relay selection, order-statistic SNR,
//! - [`fso`] — second-hop statistics: Weibull / double-Weibull irradiance
//!   and the induced electrical SNR under heterodyne or IM/DD detection,
//! - [`link`] — impairment aggregation, fixed relay gain, SNDR and the
//!   impairment-induced ceilings,
//! - [`analysis`] — outage probability and ergodic-capacity evaluators,
//! - [`montecarlo`] — trial simulation with confidence intervals,
//! - [`scenario`] / [`sweep`] — JSON scenario files, sweep grids, CSV
//!   output and the analytic-vs-Monte-Carlo validation report.
//!
//! Start with the runnable examples (`cargo run --release --example
//! outage_vs_snr`) or the `rfso` CLI in the companion binary crate.

// domain guards are written `!(x > 0.0)` on purpose: they reject NaN along
// with the out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod fso;
pub mod link;
pub mod montecarlo;
pub mod quad;
pub mod rf;
pub mod rng;
pub mod scenario;
pub mod specfun;
pub mod sweep;

pub use analysis::OutageQuery;
pub use fso::{Detection, OpticalHopConfig};
pub use link::{ImpairmentProfile, LinkConfig};
pub use montecarlo::McEstimate;
pub use rf::RfHopConfig;
pub use scenario::{Scenario, SweepAxis, SweepOutput, SweepSpec};

