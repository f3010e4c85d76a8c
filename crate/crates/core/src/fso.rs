//! Second-hop (optical) statistics: double-Weibull irradiance and the
//! electrical SNR it induces under heterodyne or IM/DD detection.
//!
//! The irradiance is the product `I = X·Y` of two independent Weibull
//! variables capturing large- and small-scale turbulent eddies:
//!
//! ```text
//! f_X(x) = β₁ x^{β₁−1} / Ω₁ · exp(−x^{β₁}/Ω₁)
//! ```
//!
//! Closed forms for the product distribution require positive integers
//! `(k, l)` with `l/k = β₂/β₁`; the resulting density and distribution are
//! Meijer G expressions with parameter lists `Δ(l;·), Δ(k;·)`. Every closed
//! form here has a second, Meijer-free evaluation route by direct
//! product-distribution quadrature (`*_numeric`), which serves as the
//! arbitration oracle.
//!
//! The detected electrical SNR is `γ₂ = I^r · γ̄_r` with `r = 1` for
//! heterodyne and `r = 2` for IM/DD.

use crate::quad;
use crate::rng::Stream;
use crate::specfun::{self, gamma, meijer_g, MeijerGSpec};
use serde::{Deserialize, Serialize};
use std::f64::consts::{E, PI};
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum FsoError {
    /// β₂/β₁ admits no small-integer ratio within tolerance.
    #[error("shape ratio {ratio} not rationalizable with k+l <= {max_sum} at tolerance {tol:e}")]
    NotRationalizable { ratio: f64, tol: f64, max_sum: u32 },
    #[error("invalid optical hop configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    SpecFun(#[from] specfun::Error),
    #[error(transparent)]
    Quadrature(#[from] quad::NonConvergent),
}

/// Optical signal detection mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Detection {
    /// Coherent detection: γ₂ scales linearly with irradiance.
    Heterodyne,
    /// Intensity modulation / direct detection: γ₂ scales with I².
    ImDd,
}

impl Detection {
    /// Irradiance exponent r.
    pub fn r(self) -> f64 {
        match self {
            Detection::Heterodyne => 1.0,
            Detection::ImDd => 2.0,
        }
    }

    /// Capacity constant c in log₂(1 + c·SNDR): 1 for heterodyne,
    /// e/(2π) for IM/DD.
    pub fn capacity_constant(self) -> f64 {
        match self {
            Detection::Heterodyne => 1.0,
            Detection::ImDd => E / (2.0 * PI),
        }
    }
}

/// Scale Ω making a Weibull shape-β variable unit mean:
/// Ω = (1/Γ(1+1/β))^β, so E[X] = Ω^{1/β} Γ(1+1/β) = 1.
pub fn weibull_scale_unit_mean(beta: f64) -> f64 {
    (1.0 / gamma(1.0 + 1.0 / beta).expect("beta > 0")).powf(beta)
}

/// Shape parameter from a normalized irradiance variance via the power law
/// λ = σ^{−1.0852}.
pub fn lambda_from_scintillation(sigma2: f64) -> f64 {
    sigma2.sqrt().powf(-1.0852)
}

/// Scintillation index of a unit-mean Weibull fade:
/// σ² = E[X²]/E[X]² − 1 = Γ(1+2/β)/Γ(1+1/β)² − 1.
pub fn scintillation_index(beta: f64) -> f64 {
    let g1 = gamma(1.0 + 1.0 / beta).expect("beta > 0");
    let g2 = gamma(1.0 + 2.0 / beta).expect("beta > 0");
    g2 / (g1 * g1) - 1.0
}

/// Smallest positive integers (k, l) with l/k ≈ β₂/β₁ to relative tolerance
/// `tol`, found by continued-fraction convergents. Pairs with k+l > 64 are
/// rejected to keep the Meijer parameter counts sane.
pub fn rationalize_kl(beta1: f64, beta2: f64, tol: f64) -> Result<(u32, u32), FsoError> {
    const MAX_SUM: u32 = 64;
    if !(beta1 > 0.0 && beta2 > 0.0) {
        return Err(FsoError::InvalidConfig(format!(
            "shapes must be positive, got {beta1}, {beta2}"
        )));
    }
    let ratio = beta2 / beta1;
    // continued-fraction convergents h/k of ratio
    let mut x = ratio;
    let (mut h0, mut h1) = (0u64, 1u64); // numerators
    let (mut k0, mut k1) = (1u64, 0u64); // denominators
    for _ in 0..40 {
        let a = x.floor();
        let ai = a as u64;
        let h2 = ai.saturating_mul(h1).saturating_add(h0);
        let k2 = ai.saturating_mul(k1).saturating_add(k0);
        if h2 + k2 > MAX_SUM as u64 {
            break;
        }
        (h0, h1) = (h1, h2);
        (k0, k1) = (k1, k2);
        if k1 > 0 {
            let approx = h1 as f64 / k1 as f64;
            if (approx - ratio).abs() <= tol * ratio {
                return Ok((k1 as u32, h1 as u32));
            }
        }
        let frac = x - a;
        if frac.abs() < 1e-15 {
            break;
        }
        x = 1.0 / frac;
    }
    Err(FsoError::NotRationalizable {
        ratio,
        tol,
        max_sum: MAX_SUM,
    })
}

/// Configuration of the optical hop.
#[derive(Debug, Clone, PartialEq)]
pub struct OpticalHopConfig {
    /// Large-scale fluctuation shape β₁ (> 0).
    pub beta1: f64,
    /// Small-scale fluctuation shape β₂ (> 0).
    pub beta2: f64,
    /// Positive integers with l/k = β₂/β₁.
    pub k: u32,
    pub l: u32,
    /// Average fading powers Ω₁, Ω₂ (> 0).
    pub omega1: f64,
    pub omega2: f64,
    pub detection: Detection,
    /// Average electrical SNR γ̄_r of the hop (linear).
    pub avg_elec_snr: f64,
}

impl OpticalHopConfig {
    /// Build with explicit (k, l); errors if l/k disagrees with β₂/β₁
    /// beyond the rationalization tolerance.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        beta1: f64,
        beta2: f64,
        k: u32,
        l: u32,
        omega1: f64,
        omega2: f64,
        detection: Detection,
        avg_elec_snr: f64,
    ) -> Result<Self, FsoError> {
        let cfg = OpticalHopConfig {
            beta1,
            beta2,
            k,
            l,
            omega1,
            omega2,
            detection,
            avg_elec_snr,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Build from the shapes alone: (k, l) from continued fractions, scales
    /// normalized to unit mean irradiance on both factors.
    pub fn unit_mean(
        beta1: f64,
        beta2: f64,
        detection: Detection,
        avg_elec_snr: f64,
    ) -> Result<Self, FsoError> {
        let (k, l) = rationalize_kl(beta1, beta2, 1e-9)?;
        OpticalHopConfig::new(
            beta1,
            beta2,
            k,
            l,
            weibull_scale_unit_mean(beta1),
            weibull_scale_unit_mean(beta2),
            detection,
            avg_elec_snr,
        )
    }

    pub fn validate(&self) -> Result<(), FsoError> {
        if !(self.beta1 > 0.0 && self.beta2 > 0.0) {
            return Err(FsoError::InvalidConfig(format!(
                "shapes must be positive: beta1 = {}, beta2 = {}",
                self.beta1, self.beta2
            )));
        }
        if self.k == 0 || self.l == 0 || self.k + self.l > 64 {
            return Err(FsoError::InvalidConfig(format!(
                "(k, l) = ({}, {}) must be positive with k+l <= 64",
                self.k, self.l
            )));
        }
        let lhs = self.beta1 * self.l as f64;
        let rhs = self.beta2 * self.k as f64;
        if (lhs - rhs).abs() > 1e-9 * lhs.max(rhs) {
            return Err(FsoError::InvalidConfig(format!(
                "β₁·l = {lhs} and β₂·k = {rhs} disagree: l/k must equal β₂/β₁"
            )));
        }
        if !(self.omega1 > 0.0 && self.omega2 > 0.0) {
            return Err(FsoError::InvalidConfig(format!(
                "scales must be positive: omega1 = {}, omega2 = {}",
                self.omega1, self.omega2
            )));
        }
        if !(self.avg_elec_snr > 0.0) {
            return Err(FsoError::InvalidConfig(format!(
                "avg_elec_snr {} must be positive",
                self.avg_elec_snr
            )));
        }
        Ok(())
    }

    // -- Meijer parameter blocks --------------------------------------------

    fn lambda0(&self) -> Vec<f64> {
        let mut v = MeijerGSpec::delta(self.l, 0.0);
        v.extend(MeijerGSpec::delta(self.k, 0.0));
        v
    }

    fn lambda1(&self) -> Vec<f64> {
        let mut v = MeijerGSpec::delta(self.l, 1.0);
        v.extend(MeijerGSpec::delta(self.k, 1.0));
        v
    }

    /// (Ω₁ l)^l (Ω₂ k)^k, the scale block shared by the closed forms.
    pub(crate) fn omega_block(&self) -> f64 {
        (self.omega1 * self.l as f64).powi(self.l as i32)
            * (self.omega2 * self.k as f64).powi(self.k as i32)
    }

    // -- Closed forms ---------------------------------------------------------

    /// Density of the irradiance I = X·Y:
    /// β₂k√(kl) / ((2π)^{(k+l)/2−1} I) · G^{0,k+l}_{k+l,0}((Ω₂k/I^{β₂})^k (Ω₁l)^l | Λ₀; −).
    pub fn irradiance_pdf(&self, i: f64) -> Result<f64, FsoError> {
        if !(i > 0.0) {
            return Err(FsoError::InvalidConfig(format!(
                "irradiance must be positive, got {i}"
            )));
        }
        let (kf, lf) = (self.k as f64, self.l as f64);
        let arg = (self.omega2 * kf / i.powf(self.beta2)).powi(self.k as i32)
            * (self.omega1 * lf).powi(self.l as i32);
        let spec = MeijerGSpec::new(0, (self.k + self.l) as usize, self.lambda0(), vec![], arg)?;
        let pref = self.beta2 * kf * (kf * lf).sqrt()
            / ((2.0 * PI).powf((kf + lf) / 2.0 - 1.0) * i);
        Ok(pref * meijer_g(&spec)?)
    }

    /// Distribution of the irradiance:
    /// √(kl)/(2π)^{(k+l)/2−1} · G^{k+l,1}_{1,k+l+1}(I^{β₁l}/((Ω₁l)^l(Ω₂k)^k) | 1; Λ₁, 0).
    pub fn irradiance_cdf(&self, i: f64) -> Result<f64, FsoError> {
        if !(i > 0.0) {
            return Err(FsoError::InvalidConfig(format!(
                "irradiance must be positive, got {i}"
            )));
        }
        let (kf, lf) = (self.k as f64, self.l as f64);
        let arg = i.powf(self.beta1 * lf) / self.omega_block();
        let mut b = self.lambda1();
        b.push(0.0);
        let spec = MeijerGSpec::new((self.k + self.l) as usize, 1, vec![1.0], b, arg)?;
        let pref = (kf * lf).sqrt() / (2.0 * PI).powf((kf + lf) / 2.0 - 1.0);
        Ok(pref * meijer_g(&spec)?)
    }

    // -- Quadrature oracle route ---------------------------------------------

    fn weibull_pdf(x: f64, beta: f64, omega: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        beta * x.powf(beta - 1.0) / omega * (-x.powf(beta) / omega).exp()
    }

    fn weibull_cdf(x: f64, beta: f64, omega: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        -(-x.powf(beta) / omega).exp_m1()
    }

    /// Meijer-free density via the product convolution
    /// f_I(I) = ∫ f_X(x) f_Y(I/x) dx/x, evaluated in the log domain.
    pub fn irradiance_pdf_numeric(&self, i: f64) -> Result<f64, FsoError> {
        if !(i > 0.0) {
            return Err(FsoError::InvalidConfig(format!(
                "irradiance must be positive, got {i}"
            )));
        }
        let (b1, o1, b2, o2) = (self.beta1, self.omega1, self.beta2, self.omega2);
        // integrand walls: x^{β₁}/Ω₁ = 60 on the right, (I/x)^{β₂}/Ω₂ = 60 on the left
        let t_right = (60.0 * o1).ln() / b1;
        let t_left = i.ln() - (60.0 * o2).ln() / b2;
        let lo = t_left.min(t_right) - 3.0;
        let hi = t_left.max(t_right) + 3.0;
        let f = |t: f64| {
            let x = t.exp();
            Self::weibull_pdf(x, b1, o1) * Self::weibull_pdf(i / x, b2, o2)
        };
        let r = quad::integrate(&f, lo, hi, 1e-13, 1e-10, 4000)?;
        Ok(r.value)
    }

    /// Meijer-free distribution via F_I(I) = ∫ f_X(x) F_Y(I/x) dx with the
    /// substitution u = x^{β₁} that removes the endpoint singularity.
    pub fn irradiance_cdf_numeric(&self, i: f64) -> Result<f64, FsoError> {
        if !(i > 0.0) {
            return Err(FsoError::InvalidConfig(format!(
                "irradiance must be positive, got {i}"
            )));
        }
        let (b1, o1, b2, o2) = (self.beta1, self.omega1, self.beta2, self.omega2);
        let f = |u: f64| {
            let x = u.powf(1.0 / b1);
            (-u / o1).exp() / o1 * Self::weibull_cdf(i / x, b2, o2)
        };
        let r = quad::integrate(&f, 0.0, 60.0 * o1, 1e-12, 1e-10, 4000)?;
        Ok(r.value.clamp(0.0, 1.0))
    }

    // -- Electrical SNR γ₂ = I^r γ̄_r -----------------------------------------

    /// Irradiance corresponding to an electrical SNR value.
    #[inline]
    pub fn snr_to_irradiance(&self, g: f64) -> f64 {
        (g / self.avg_elec_snr).powf(1.0 / self.detection.r())
    }

    /// Density of γ₂ (closed form): change of variables on the irradiance
    /// density, f_{γ₂}(g) = f_I(I)·I/(r·g) at I = (g/γ̄_r)^{1/r}.
    pub fn gamma2_pdf(&self, g: f64) -> Result<f64, FsoError> {
        if !(g > 0.0) {
            return Err(FsoError::InvalidConfig(format!("SNR must be positive, got {g}")));
        }
        let i = self.snr_to_irradiance(g);
        Ok(self.irradiance_pdf(i)? * i / (self.detection.r() * g))
    }

    /// Distribution of γ₂ (closed form): F_I((g/γ̄_r)^{1/r}).
    pub fn gamma2_cdf(&self, g: f64) -> Result<f64, FsoError> {
        if !(g > 0.0) {
            return Err(FsoError::InvalidConfig(format!("SNR must be positive, got {g}")));
        }
        self.irradiance_cdf(self.snr_to_irradiance(g))
    }

    /// Meijer-free variants of the γ₂ density / distribution.
    pub fn gamma2_pdf_numeric(&self, g: f64) -> Result<f64, FsoError> {
        if !(g > 0.0) {
            return Err(FsoError::InvalidConfig(format!("SNR must be positive, got {g}")));
        }
        let i = self.snr_to_irradiance(g);
        Ok(self.irradiance_pdf_numeric(i)? * i / (self.detection.r() * g))
    }

    pub fn gamma2_cdf_numeric(&self, g: f64) -> Result<f64, FsoError> {
        if !(g > 0.0) {
            return Err(FsoError::InvalidConfig(format!("SNR must be positive, got {g}")));
        }
        self.irradiance_cdf_numeric(self.snr_to_irradiance(g))
    }

    /// Raw moment E[γ₂ⁿ] = γ̄_rⁿ Ω₁^{nr/β₁} Ω₂^{nr/β₂} Γ(1+nr/β₁) Γ(1+nr/β₂).
    pub fn gamma2_moment(&self, order: u32) -> f64 {
        assert!(order >= 1, "moment order must be >= 1");
        let n = order as f64;
        let r = self.detection.r();
        self.avg_elec_snr.powf(n)
            * self.omega1.powf(n * r / self.beta1)
            * self.omega2.powf(n * r / self.beta2)
            * gamma(1.0 + n * r / self.beta1).expect("positive argument")
            * gamma(1.0 + n * r / self.beta2).expect("positive argument")
    }

    // -- Sampling --------------------------------------------------------------

    /// One irradiance draw I = X·Y by inverse transform on both factors.
    pub fn irradiance_sample(&self, rng: &mut Stream) -> f64 {
        let x = sample_weibull(rng, self.beta1, self.omega1);
        let y = sample_weibull(rng, self.beta2, self.omega2);
        x * y
    }

    /// One electrical SNR draw γ₂ = I^r γ̄_r.
    pub fn gamma2_sample(&self, rng: &mut Stream) -> f64 {
        let i = self.irradiance_sample(rng);
        let r = self.detection.r();
        if r == 1.0 {
            i * self.avg_elec_snr
        } else {
            i * i * self.avg_elec_snr
        }
    }

    /// Irradiance value below which the distribution holds mass `p` — used
    /// by tests to pick evaluation grids (by bisection on the numeric CDF).
    pub fn irradiance_quantile_numeric(&self, p: f64) -> Result<f64, FsoError> {
        assert!((0.0..1.0).contains(&p) && p > 0.0);
        let (mut lo, mut hi) = (1e-12, 1.0);
        while self.irradiance_cdf_numeric(hi)? < p {
            hi *= 2.0;
            if hi > 1e12 {
                break;
            }
        }
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if self.irradiance_cdf_numeric(mid)? < p {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

#[inline]
fn sample_weibull(rng: &mut Stream, beta: f64, omega: f64) -> f64 {
    let e = omega * rng.next_exp(); // −Ω ln U
    if beta == 1.0 {
        e
    } else {
        e.powf(1.0 / beta)
    }
}
