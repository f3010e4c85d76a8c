//! Shared brute-force oracles for the integration suites.
//!
//! Everything here is deliberately independent of the library's evaluation
//! paths: Bessel K by Simpson's rule on the integral representation,
//! order statistics by the combinatorial formula, KS distances from sorted
//! samples against a gridded reference CDF.

#![allow(dead_code)]

use rfso::rng::Stream;

/// K_ν(x) = ∫₀^∞ e^{−x cosh t} cosh(νt) dt by Simpson's rule on a fixed
/// fine grid. Good to ~1e-10 for x ≥ 0.05, plenty for oracle duty.
pub fn bessel_k(nu: f64, x: f64) -> f64 {
    assert!(x > 0.0);
    // integrand dies once x cosh t > ~75
    let t_max = (2.0 * 75.0 / x).max(4.0).ln() + 1.0;
    let n = 40_000; // even
    let h = t_max / n as f64;
    let f = |t: f64| (-x * t.cosh()).exp() * (nu * t).cosh();
    let mut acc = f(0.0) + f(t_max);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(h * i as f64);
    }
    acc * h / 3.0
}

pub fn bessel_k0(x: f64) -> f64 {
    bessel_k(0.0, x)
}

pub fn bessel_k1(x: f64) -> f64 {
    bessel_k(1.0, x)
}

/// CDF of the m-th ascending order statistic of `n` iid Exp(mean) draws:
/// Σ_{j=m}^{n} C(n,j) F^j (1−F)^{n−j}.
pub fn iid_exp_order_stat_cdf(x: f64, n: u32, m: u32, mean: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let f = 1.0 - (-x / mean).exp();
    let mut acc = 0.0;
    for j in m..=n {
        acc += binomial(n, j) * f.powi(j as i32) * (1.0 - f).powi((n - j) as i32);
    }
    acc
}

/// Mean of the m-th ascending order statistic of n iid Exp(1):
/// H_n − H_{n−m}.
pub fn iid_exp_order_stat_mean(n: u32, m: u32) -> f64 {
    (n - m + 1..=n).map(|j| 1.0 / j as f64).sum()
}

pub fn binomial(n: u32, k: u32) -> f64 {
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

/// Upper bound on the Kolmogorov–Smirnov distance between the empirical
/// distribution of `sorted` and a monotone reference CDF supplied on a
/// grid. Exact at the grid points; between them the deviation can exceed
/// the grid value by at most the largest CDF increment, which is returned
/// separately.
pub fn ks_bound(sorted: &[f64], grid: &[(f64, f64)]) -> (f64, f64) {
    let n = sorted.len() as f64;
    let mut ks = 0.0f64;
    let mut max_gap = grid.first().map(|&(_, f)| f).unwrap_or(0.0);
    let mut prev_f = 0.0;
    for &(x, f) in grid {
        let idx = sorted.partition_point(|&s| s <= x) as f64;
        ks = ks.max((idx / n - f).abs());
        max_gap = max_gap.max(f - prev_f);
        prev_f = f;
    }
    max_gap = max_gap.max(1.0 - prev_f);
    (ks, max_gap)
}

/// Grid of (x, F(x)) pairs spaced uniformly in probability: `levels` points
/// with CDF increments ≈ 1/levels, found by bisection. Keeps the
/// [`ks_bound`] grid-gap penalty uniformly small.
pub fn quantile_grid<F: Fn(f64) -> f64>(cdf: F, levels: usize, mut hi: f64) -> Vec<(f64, f64)> {
    while cdf(hi) < 1.0 - 0.5 / levels as f64 && hi < 1e12 {
        hi *= 2.0;
    }
    (1..levels)
        .map(|i| {
            let target = i as f64 / levels as f64;
            let (mut a, mut b) = (0.0f64, hi);
            for _ in 0..70 {
                let mid = 0.5 * (a + b);
                if cdf(mid) < target {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            let x = 0.5 * (a + b);
            (x, cdf(x))
        })
        .collect()
}

/// Draw `count` values and sort them.
pub fn sorted_samples<F: FnMut(&mut Stream) -> f64>(
    count: usize,
    seed: u64,
    mut draw: F,
) -> Vec<f64> {
    let mut rng = Stream::from_seed(seed);
    let mut v: Vec<f64> = (0..count).map(|_| draw(&mut rng)).collect();
    v.sort_unstable_by(f64::total_cmp);
    v
}

// -- Randomized scenario suite -------------------------------------------------

use rfso::fso::{Detection, OpticalHopConfig};
use rfso::link::{ImpairmentProfile, LinkConfig};
use rfso::rf::RfHopConfig;

/// Deterministic randomized link configurations inside the closed-form
/// parameter family (β₂k integer, small k+l), spanning both detection
/// modes and the full impairment/correlation ranges.
pub fn random_link_configs(seed: u64, count: usize) -> Vec<LinkConfig> {
    let mut rng = Stream::from_seed(seed);
    let kl_choices: [(u32, u32); 5] = [(1, 1), (1, 2), (2, 1), (2, 3), (1, 3)];
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n_relays = 1 + (rng.next_u64() % 5) as u32;
        let rank = 1 + (rng.next_u64() % n_relays as u64) as u32;
        let rho = rng.next_f64();
        let (k, l) = kl_choices[(rng.next_u64() % 5) as usize];
        let j = 1 + (rng.next_u64() % 3) as u32; // β₂k = j
        let beta1 = j as f64 / l as f64;
        let beta2 = j as f64 / k as f64;
        if !(0.5..=3.5).contains(&beta1) || !(0.5..=3.5).contains(&beta2) {
            continue;
        }
        let detection = if rng.next_u64().is_multiple_of(2) {
            Detection::Heterodyne
        } else {
            Detection::ImDd
        };
        let snr1_db = 8.0 + 14.0 * rng.next_f64();
        let snr2_db = 8.0 + 14.0 * rng.next_f64();
        let kappa1 = 0.2 * rng.next_f64();
        let kappa2 = 0.2 * rng.next_f64();
        let omega1 = 0.7 + 0.7 * rng.next_f64();
        let omega2 = 0.7 + 0.7 * rng.next_f64();

        let rf = RfHopConfig::new(n_relays, rank, rho, 10f64.powf(snr1_db / 10.0)).unwrap();
        let optical = OpticalHopConfig::new(
            beta1,
            beta2,
            k,
            l,
            omega1,
            omega2,
            detection,
            10f64.powf(snr2_db / 10.0),
        )
        .unwrap();
        out.push(LinkConfig::new(
            rf,
            optical,
            ImpairmentProfile::new(kappa1, kappa2),
        ));
    }
    out
}

#[cfg(test)]
mod self_checks {
    use super::*;

    #[test]
    fn bessel_k_half_is_elementary() {
        // K_{1/2}(x) = sqrt(π/(2x)) e^{−x}
        for &x in &[0.5, 1.0, 2.0, 5.0] {
            let exact = (std::f64::consts::PI / (2.0 * x)).sqrt() * (-x).exp();
            assert!((bessel_k(0.5, x) - exact).abs() < 1e-10 * exact);
        }
    }

    #[test]
    fn order_stat_cdf_extremes() {
        // m = n is the max, m = 1 the min
        let x = 0.8f64;
        let f = 1.0 - (-x).exp();
        assert!((iid_exp_order_stat_cdf(x, 3, 3, 1.0) - f.powi(3)).abs() < 1e-14);
        let min_cdf = 1.0 - (-3.0 * x).exp();
        assert!((iid_exp_order_stat_cdf(x, 3, 1, 1.0) - min_cdf).abs() < 1e-14);
    }
}
