//! End-to-end SNDR composition: impairment aggregation, fixed relay gain,
//! and the impairment-induced performance ceilings.
//!
//! With residual distortion levels κ₁ (source) and κ₂ (relay), the
//! end-to-end signal-to-noise-plus-distortion ratio of the fixed-gain link
//! is
//!
//! ```text
//! γ = γ₁ γ₂ / (δ γ₁ γ₂ + (1 + κ₂²) γ₂ + C)
//! δ = κ₁² + κ₂² + κ₁² κ₂²,    C = E[γ₁](1 + κ₁²) + 1
//! ```
//!
//! For δ > 0 the SNDR is capped at γ* = 1/δ however strong both hops get,
//! and the ergodic capacity at C* = log₂(1 + c/δ).

use crate::fso::{Detection, OpticalHopConfig};
use crate::rf::RfHopConfig;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum LinkError {
    /// Ideal hardware (δ = 0): the SNDR and capacity grow without bound, so
    /// there is no ceiling to report.
    #[error("ideal hardware (δ = 0) has no ceiling")]
    InfiniteCeiling,
}

/// Residual hardware distortion levels at the source and the relay.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImpairmentProfile {
    pub kappa1: f64,
    pub kappa2: f64,
}

impl ImpairmentProfile {
    pub fn new(kappa1: f64, kappa2: f64) -> Self {
        assert!(
            kappa1 >= 0.0 && kappa2 >= 0.0,
            "impairment levels must be nonnegative"
        );
        ImpairmentProfile { kappa1, kappa2 }
    }

    pub fn ideal() -> Self {
        ImpairmentProfile {
            kappa1: 0.0,
            kappa2: 0.0,
        }
    }

    /// Aggregate distortion level δ = κ₁² + κ₂² + κ₁²κ₂².
    pub fn delta(&self) -> f64 {
        let k1 = self.kappa1 * self.kappa1;
        let k2 = self.kappa2 * self.kappa2;
        k1 + k2 + k1 * k2
    }

    pub fn is_ideal(&self) -> bool {
        self.kappa1 == 0.0 && self.kappa2 == 0.0
    }
}

/// Full parameterization of one link scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkConfig {
    pub rf: RfHopConfig,
    pub optical: OpticalHopConfig,
    pub impairments: ImpairmentProfile,
}

impl LinkConfig {
    pub fn new(rf: RfHopConfig, optical: OpticalHopConfig, impairments: ImpairmentProfile) -> Self {
        LinkConfig {
            rf,
            optical,
            impairments,
        }
    }

    /// Detection mode of the optical hop (fixes r and the capacity constant c).
    pub fn detection(&self) -> Detection {
        self.optical.detection
    }

    /// Fixed relay gain constant C = E[γ₁(m)](1 + κ₁²) + 1, computed once
    /// per configuration from the average first-hop statistics.
    pub fn gain_constant(&self) -> f64 {
        let k1 = self.impairments.kappa1;
        self.rf.mean() * (1.0 + k1 * k1) + 1.0
    }

    /// End-to-end SNDR for one realization of the two hop SNRs.
    ///
    /// `gain_c` is [`LinkConfig::gain_constant`], passed in so trial loops
    /// evaluate it once.
    pub fn sndr(&self, gamma1: f64, gamma2: f64, gain_c: f64) -> f64 {
        let k2 = self.impairments.kappa2;
        let num = gamma1 * gamma2;
        num / (self.impairments.delta() * num + (1.0 + k2 * k2) * gamma2 + gain_c)
    }

    /// Ideal-hardware end-to-end SNR γ₁γ₂/(γ₂ + E[γ₁] + 1).
    pub fn snr_ideal(&self, gamma1: f64, gamma2: f64) -> f64 {
        gamma1 * gamma2 / (gamma2 + self.rf.mean() + 1.0)
    }
}

/// SNDR ceiling γ* = 1/δ; an error for ideal hardware.
pub fn sndr_ceiling(imp: &ImpairmentProfile) -> Result<f64, LinkError> {
    let delta = imp.delta();
    if delta == 0.0 {
        Err(LinkError::InfiniteCeiling)
    } else {
        Ok(1.0 / delta)
    }
}

/// Ergodic-capacity ceiling C* = log₂(1 + c/δ) in bps/Hz.
pub fn capacity_ceiling(imp: &ImpairmentProfile, detection: Detection) -> Result<f64, LinkError> {
    let gamma_star = sndr_ceiling(imp)?;
    Ok((1.0 + detection.capacity_constant() * gamma_star).log2())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Stream;

    fn test_link(kappa: f64) -> LinkConfig {
        LinkConfig::new(
            RfHopConfig::new(2, 2, 1.0, 1.0).unwrap(),
            OpticalHopConfig::unit_mean(1.0, 1.0, Detection::Heterodyne, 1.0).unwrap(),
            ImpairmentProfile::new(kappa, kappa),
        )
    }

    #[test]
    fn delta_aggregation() {
        assert_eq!(ImpairmentProfile::ideal().delta(), 0.0);
        let imp = ImpairmentProfile::new(0.1, 0.1);
        assert!((imp.delta() - 0.0201).abs() < 1e-15);
        let imp = ImpairmentProfile::new(0.2, 0.2);
        assert!((imp.delta() - 0.0816).abs() < 1e-15);
    }

    #[test]
    fn gain_constant_examples() {
        // single relay, unit SNR, ideal source: C = 1·1 + 1 = 2
        let link = LinkConfig::new(
            RfHopConfig::new(1, 1, 0.5, 1.0).unwrap(),
            OpticalHopConfig::unit_mean(1.0, 1.0, Detection::Heterodyne, 1.0).unwrap(),
            ImpairmentProfile::ideal(),
        );
        assert!((link.gain_constant() - 2.0).abs() < 1e-14);

        // best of 2 at full correlation: E[γ₁] = 3/2, κ₁ = 0.2
        let link = LinkConfig::new(
            RfHopConfig::new(2, 2, 1.0, 1.0).unwrap(),
            OpticalHopConfig::unit_mean(1.0, 1.0, Detection::Heterodyne, 1.0).unwrap(),
            ImpairmentProfile::new(0.2, 0.0),
        );
        assert!((link.gain_constant() - (1.5 * 1.04 + 1.0)).abs() < 1e-14);
    }

    #[test]
    fn sndr_direct_arithmetic() {
        // δ = 0.0201: 100 / (2.01 + 10.1 + 2)
        let link = test_link(0.1);
        let v = link.sndr(10.0, 10.0, 2.0);
        assert!((v - 100.0 / 14.11).abs() < 1e-12, "got {v}");
    }

    #[test]
    fn ideal_reduction() {
        let link = test_link(0.0);
        let c = link.gain_constant();
        for &(g1, g2) in &[(0.5, 3.0), (10.0, 1.0), (200.0, 50.0)] {
            let a = link.sndr(g1, g2, c);
            let b = link.snr_ideal(g1, g2);
            assert!((a - b).abs() <= 1e-14 * b.abs().max(1.0));
        }
    }

    #[test]
    fn sndr_approaches_ceiling() {
        let link = test_link(0.2);
        let c = link.gain_constant();
        let v = link.sndr(1e9, 1e9, c);
        let ceiling = sndr_ceiling(&link.impairments).unwrap();
        assert!((v - ceiling).abs() < 1e-4);
        assert!(v < ceiling);
    }

    #[test]
    fn ceiling_values() {
        // κ = 0.2 both: γ* = 1/0.0816, about 10.88 dB
        let imp = ImpairmentProfile::new(0.2, 0.2);
        let g = sndr_ceiling(&imp).unwrap();
        assert!((g - 12.254901960784315).abs() < 1e-12);
        assert!((10.0 * g.log10() - 10.883).abs() < 5e-4);

        // κ = 0.4 both: γ* = 1/0.3456, about 4.61 dB
        let imp = ImpairmentProfile::new(0.4, 0.4);
        let g = sndr_ceiling(&imp).unwrap();
        assert!((g - 2.8935185185185186).abs() < 1e-12);
        assert!((10.0 * g.log10() - 4.614).abs() < 5e-4);

        assert!(matches!(
            sndr_ceiling(&ImpairmentProfile::ideal()),
            Err(LinkError::InfiniteCeiling)
        ));
    }

    #[test]
    fn capacity_ceiling_values() {
        let imp = ImpairmentProfile::new(0.2, 0.2);
        // heterodyne: log2(1 + 12.2549...) = log2(13.2549)
        let het = capacity_ceiling(&imp, Detection::Heterodyne).unwrap();
        assert!((het - 13.254901960784315f64.log2()).abs() < 1e-13);
        assert!((het - 3.7285).abs() < 1e-4);

        // IM/DD: log2(1 + (e/2π)·12.2549)
        let imdd = capacity_ceiling(&imp, Detection::ImDd).unwrap();
        let expect = (1.0 + Detection::ImDd.capacity_constant() * 12.254901960784315).log2();
        assert!((imdd - expect).abs() < 1e-13);
        assert!(het > imdd);

        // heterodyne beats IM/DD for every δ > 0
        for &k in &[0.05, 0.15, 0.3, 0.6] {
            let imp = ImpairmentProfile::new(k, k);
            assert!(
                capacity_ceiling(&imp, Detection::Heterodyne).unwrap()
                    > capacity_ceiling(&imp, Detection::ImDd).unwrap()
            );
        }

        assert!(capacity_ceiling(&ImpairmentProfile::ideal(), Detection::Heterodyne).is_err());
    }

    #[test]
    fn sndr_monotone_and_bounded() {
        let link = test_link(0.15);
        let c = link.gain_constant();
        let ceiling = sndr_ceiling(&link.impairments).unwrap();
        let mut rng = Stream::from_seed(5);
        for _ in 0..100_000 {
            let g1 = rng.next_exp() * 100.0;
            let g2 = rng.next_exp() * 100.0;
            let v = link.sndr(g1, g2, c);
            assert!(v < ceiling, "SNDR {v} at ceiling {ceiling}");
            // monotone in each argument
            assert!(link.sndr(g1 * 1.1, g2, c) >= v - 1e-15);
            assert!(link.sndr(g1, g2 * 1.1, c) >= v - 1e-15);
        }
    }
}
