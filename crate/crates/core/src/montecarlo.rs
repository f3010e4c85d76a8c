//! Trial-level simulation of the full chain — relay selection, channel
//! decorrelation, optical fading, hardware distortion — and estimation of
//! outage probability and ergodic capacity with confidence intervals.
//!
//! Trials are split into fixed-size chunks; chunk `i` of grid point `p`
//! always consumes the stream derived from `(seed, p, i)`, and chunk
//! results are reduced in chunk order. Estimates are therefore bit-identical
//! for a given `(config, trials, seed)` no matter how many worker threads
//! run the chunks.

use crate::link::LinkConfig;
use crate::rng::Stream;
use crate::specfun::ln_gamma;
use rayon::prelude::*;

const CHUNK: u64 = 1 << 16;

/// A Monte Carlo estimate with a 95% confidence half-width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub value: f64,
    pub half_width: f64,
    pub trials: u64,
    pub seed: u64,
    /// Set when fewer than ~10 qualifying events were seen, so the relative
    /// error of `value` is large.
    pub unreliable: bool,
}

/// One end-to-end SNDR realization.
pub fn run_trial(cfg: &LinkConfig, gain_c: f64, rng: &mut Stream) -> f64 {
    let gamma1 = cfg.rf.sample(rng);
    let gamma2 = cfg.optical.gamma2_sample(rng);
    cfg.sndr(gamma1, gamma2, gain_c)
}

/// Raw per-trial record for external analysis.
#[derive(Debug, Clone, Copy)]
pub struct TrialSample {
    pub gamma1: f64,
    pub irradiance: f64,
    pub gamma2: f64,
    pub sndr: f64,
}

/// Dump `count` raw channel/SNDR samples (sequential; meant for inspection,
/// not estimation).
pub fn sample_trials(cfg: &LinkConfig, count: u64, seed: u64) -> Vec<TrialSample> {
    let gain_c = cfg.gain_constant();
    let r = cfg.optical.detection.r();
    let mut rng = Stream::derive(seed, 0, 0);
    (0..count)
        .map(|_| {
            let gamma1 = cfg.rf.sample(&mut rng);
            let irradiance = cfg.optical.irradiance_sample(&mut rng);
            let gamma2 = if r == 1.0 {
                irradiance * cfg.optical.avg_elec_snr
            } else {
                irradiance * irradiance * cfg.optical.avg_elec_snr
            };
            TrialSample {
                gamma1,
                irradiance,
                gamma2,
                sndr: cfg.sndr(gamma1, gamma2, gain_c),
            }
        })
        .collect()
}

fn chunk_bounds(trials: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut start = 0;
    while start < trials {
        let len = CHUNK.min(trials - start);
        out.push((start, len));
        start += len;
    }
    out
}

/// Outage probability at threshold `gamma_th`: the fraction of trials whose
/// SNDR falls below it. `point` tags the grid point for stream derivation.
pub fn estimate_op_at(
    gamma_th: f64,
    cfg: &LinkConfig,
    trials: u64,
    seed: u64,
    point: u64,
) -> McEstimate {
    assert!(trials > 0, "trials must be positive");
    let gain_c = cfg.gain_constant();

    let hits: u64 = chunk_bounds(trials)
        .par_iter()
        .enumerate()
        .map(|(i, &(_, len))| {
            let mut rng = Stream::derive(seed, point, i as u64);
            let mut h = 0u64;
            for _ in 0..len {
                if run_trial(cfg, gain_c, &mut rng) < gamma_th {
                    h += 1;
                }
            }
            h
        })
        .collect::<Vec<_>>()
        .iter()
        .sum();

    let n = trials as f64;
    let p = hits as f64 / n;
    let rare = hits.min(trials - hits);
    let half_width = if rare < 30 {
        let (lo, hi) = clopper_pearson(hits, trials, 0.05);
        0.5 * (hi - lo)
    } else {
        1.959963984540054 * (p * (1.0 - p) / n).sqrt()
    };
    McEstimate {
        value: p,
        half_width,
        trials,
        seed,
        // fewer than ~10 events says nothing about the tail — except at
        // gamma_th <= 0, where zero outages is exact (SNDR > 0 a.s.)
        unreliable: hits < 10 && gamma_th > 0.0,
    }
}

/// Outage probability for a standalone run (grid point 0).
pub fn estimate_op(gamma_th: f64, cfg: &LinkConfig, trials: u64, seed: u64) -> McEstimate {
    estimate_op_at(gamma_th, cfg, trials, seed, 0)
}

/// Ergodic capacity E[log₂(1 + c·SNDR)] in bps/Hz.
pub fn estimate_ec_at(cfg: &LinkConfig, trials: u64, seed: u64, point: u64) -> McEstimate {
    assert!(trials > 0, "trials must be positive");
    let gain_c = cfg.gain_constant();
    let c = cfg.optical.detection.capacity_constant();

    let partials: Vec<(f64, f64)> = chunk_bounds(trials)
        .par_iter()
        .enumerate()
        .map(|(i, &(_, len))| {
            let mut rng = Stream::derive(seed, point, i as u64);
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            for _ in 0..len {
                let v = (1.0 + c * run_trial(cfg, gain_c, &mut rng)).log2();
                sum += v;
                sum_sq += v * v;
            }
            (sum, sum_sq)
        })
        .collect();

    // fixed reduction order
    let (sum, sum_sq) = partials
        .iter()
        .fold((0.0, 0.0), |(a, b), &(s, s2)| (a + s, b + s2));
    let n = trials as f64;
    let mean = sum / n;
    let var = (sum_sq / n - mean * mean).max(0.0);
    McEstimate {
        value: mean,
        half_width: 1.959963984540054 * (var / n).sqrt(),
        trials,
        seed,
        unreliable: false,
    }
}

/// Ergodic capacity for a standalone run (grid point 0).
pub fn estimate_ec(cfg: &LinkConfig, trials: u64, seed: u64) -> McEstimate {
    estimate_ec_at(cfg, trials, seed, 0)
}

/// Exact binomial (Clopper–Pearson) 1−α interval for `hits` out of `n`.
/// Used when the success or failure count is too small for the normal
/// approximation; the rare tail is summed directly, so this stays cheap.
fn clopper_pearson(hits: u64, n: u64, alpha: f64) -> (f64, f64) {
    let flip = hits > n - hits;
    let k = if flip { n - hits } else { hits };

    // P(X <= k; n, p) with at most k+1 terms
    let cdf = |p: f64| -> f64 {
        if p <= 0.0 {
            return 1.0;
        }
        if p >= 1.0 {
            return 0.0;
        }
        let ln_p = p.ln();
        let ln_q = (1.0 - p).max(f64::MIN_POSITIVE).ln();
        let mut acc = 0.0;
        for j in 0..=k {
            let ln_c = ln_binomial(n, j);
            acc += (ln_c + j as f64 * ln_p + (n - j) as f64 * ln_q).exp();
        }
        acc.min(1.0)
    };

    let solve = |target: f64| -> f64 {
        // p where P(X <= k; p) = target; cdf is decreasing in p
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if cdf(mid) > target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };

    let lower = if k == 0 { 0.0 } else { solve(1.0 - alpha / 2.0) };
    let upper = if k == n { 1.0 } else { solve(alpha / 2.0) };
    if flip {
        (1.0 - upper, 1.0 - lower)
    } else {
        (lower, upper)
    }
}

fn ln_binomial(n: u64, k: u64) -> f64 {
    if k == 0 || k == n {
        return 0.0;
    }
    let n = n as f64;
    let k = k as f64;
    ln_gamma(n + 1.0).unwrap() - ln_gamma(k + 1.0).unwrap() - ln_gamma(n - k + 1.0).unwrap()
}
