//! First-hop (RF) statistics: correlated Rayleigh fading with partial relay
//! selection on outdated channel state.
//!
//! The source ranks the `N` relay channels by their reported (possibly
//! stale) SNR and picks rank `m` (ascending, so `m = N` is the best). By
//! the time the transmission happens the channel has decorrelated to
//! `h = sqrt(ρ) h_stale + sqrt(1−ρ) w`, with `w` an independent gain of the
//! same variance. The resulting transmission-time SNR of the selected relay
//! follows a signed mixture of exponentials:
//!
//! ```text
//! f(x) = m C(N,m) Σ_{n=0}^{m−1} C(m−1,n) (−1)^n / A_n · exp(−K_n x / A_n)
//!   A_n = [(N−m+n)(1−ρ) + 1] γ̄₁,   K_n = N−m+n+1
//! ```
//!
//! with matching CDF `1 − m C(N,m) Σ C(m−1,n) (−1)^n / K_n · exp(−K_n x / A_n)`
//! and mean `m C(N,m) Σ C(m−1,n) (−1)^n A_n / K_n²`.

use crate::rng::Stream;
use crate::specfun::bessel_j0;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum RfError {
    /// The Jakes autocorrelation came out negative (argument beyond the
    /// first Bessel root); the sqrt-correlation channel update cannot
    /// represent that regime.
    #[error("negative Jakes correlation {value}: 2π f_d T_d is beyond the first J0 root")]
    NegativeCorrelation { value: f64 },
    #[error("invalid RF hop configuration: {0}")]
    InvalidConfig(String),
}

/// Time correlation between the stale and current channel under the Jakes
/// model, ρ = J₀(2π f_d T_d).
///
/// Values in [−1e−6, 0) — the numerical neighbourhood of the first root —
/// are clamped to 0; anything more negative is an error.
pub fn jakes_rho(doppler_hz: f64, delay_s: f64) -> Result<f64, RfError> {
    if doppler_hz < 0.0 || delay_s < 0.0 {
        return Err(RfError::InvalidConfig(format!(
            "doppler {doppler_hz} Hz and delay {delay_s} s must be nonnegative"
        )));
    }
    let v = bessel_j0(2.0 * PI * doppler_hz * delay_s);
    if v < -1e-6 {
        return Err(RfError::NegativeCorrelation { value: v });
    }
    Ok(v.clamp(0.0, 1.0))
}

/// Configuration of the RF hop.
#[derive(Debug, Clone, PartialEq)]
pub struct RfHopConfig {
    /// Number of parallel relays N.
    pub relay_count: u32,
    /// Selected rank m in ascending order, 1..=N (N = best).
    pub selected_rank: u32,
    /// Time correlation ρ between selection and transmission, in [0, 1].
    pub correlation: f64,
    /// Average per-relay SNR γ̄₁ (linear).
    pub avg_snr: f64,
}

impl RfHopConfig {
    pub fn new(relay_count: u32, selected_rank: u32, correlation: f64, avg_snr: f64) -> Result<Self, RfError> {
        let cfg = RfHopConfig {
            relay_count,
            selected_rank,
            correlation,
            avg_snr,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), RfError> {
        if self.relay_count == 0 || self.relay_count > 64 {
            return Err(RfError::InvalidConfig(format!(
                "relay_count {} outside 1..=64",
                self.relay_count
            )));
        }
        if self.selected_rank == 0 || self.selected_rank > self.relay_count {
            return Err(RfError::InvalidConfig(format!(
                "selected_rank {} outside 1..={}",
                self.selected_rank, self.relay_count
            )));
        }
        if !(0.0..=1.0).contains(&self.correlation) {
            return Err(RfError::InvalidConfig(format!(
                "correlation {} outside [0, 1]",
                self.correlation
            )));
        }
        if !(self.avg_snr > 0.0) {
            return Err(RfError::InvalidConfig(format!(
                "avg_snr {} must be positive",
                self.avg_snr
            )));
        }
        Ok(())
    }

    /// Signed-mixture coefficients (weight, scale A_n, rate K_n) shared by
    /// the pdf, cdf and mean.
    fn mixture(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        let n_relays = self.relay_count as f64;
        let m = self.selected_rank as f64;
        let lead = m * binomial(self.relay_count, self.selected_rank);
        (0..self.selected_rank).map(move |n| {
            let shifted = n_relays - m + n as f64; // N − m + n
            let weight =
                lead * binomial(self.selected_rank - 1, n) * if n % 2 == 0 { 1.0 } else { -1.0 };
            let scale = (shifted * (1.0 - self.correlation) + 1.0) * self.avg_snr;
            let rate = shifted + 1.0;
            (weight, scale, rate)
        })
    }

    /// Density of the selected relay's transmission-time SNR.
    pub fn pdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        self.mixture()
            .map(|(w, a, k)| w / a * (-k * x / a).exp())
            .sum()
    }

    /// Distribution function of the selected relay's transmission-time SNR.
    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        let tail: f64 = self
            .mixture()
            .map(|(w, a, k)| w / k * (-k * x / a).exp())
            .sum();
        (1.0 - tail).clamp(0.0, 1.0)
    }

    /// Mean SNR E[γ₁(m)] of the selected relay.
    pub fn mean(&self) -> f64 {
        self.mixture().map(|(w, a, k)| w * a / (k * k)).sum()
    }

    /// Largest exponential scale in the mixture; the density is negligible
    /// beyond a few dozen of these.
    pub(crate) fn max_scale(&self) -> f64 {
        self.mixture()
            .map(|(_, a, k)| a / k)
            .fold(f64::MIN_POSITIVE, f64::max)
    }

    /// Draw one transmission-time SNR: rank the stale gains, evolve the
    /// selected one through the correlation model, scale by γ̄₁.
    pub fn sample(&self, rng: &mut Stream) -> f64 {
        let n = self.relay_count as usize;
        let mut gains = [0.0f64; 64];
        let gains = &mut gains[..n];
        for g in gains.iter_mut() {
            *g = rng.next_exp(); // |h_stale|², unit mean
        }
        gains.sort_unstable_by(f64::total_cmp);
        let stale_mag = gains[self.selected_rank as usize - 1].sqrt();

        let rho = self.correlation;
        let noise_std = ((1.0 - rho) * 0.5).sqrt(); // per real component
        let re = rho.sqrt() * stale_mag + noise_std * rng.next_normal();
        let im = noise_std * rng.next_normal();
        (re * re + im * im) * self.avg_snr
    }
}

/// Binomial coefficient as f64 (exact for the small arguments used here).
fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}
