//! Statistical properties of the trial simulator and its estimators.

mod common;

use rfso::fso::{Detection, OpticalHopConfig};
use rfso::link::{ImpairmentProfile, LinkConfig};
use rfso::montecarlo;
use rfso::rf::RfHopConfig;
use rfso::rng::Stream;

fn test_link() -> LinkConfig {
    LinkConfig::new(
        RfHopConfig::new(3, 2, 0.7, 100.0).unwrap(),
        OpticalHopConfig::unit_mean(1.0, 1.0, Detection::Heterodyne, 100.0).unwrap(),
        ImpairmentProfile::new(0.1, 0.1),
    )
}

#[test]
fn half_width_shrinks_as_root_trials() {
    let cfg = test_link();
    let a = montecarlo::estimate_op(2.0, &cfg, 10_000, 4);
    let b = montecarlo::estimate_op(2.0, &cfg, 100_000, 4);
    let ratio = a.half_width / b.half_width;
    let expect = 10f64.sqrt();
    assert!(
        (ratio / expect - 1.0).abs() < 0.2,
        "half-width ratio {ratio} vs sqrt(10) = {expect}"
    );

    let a = montecarlo::estimate_ec(&cfg, 10_000, 4);
    let b = montecarlo::estimate_ec(&cfg, 100_000, 4);
    let ratio = a.half_width / b.half_width;
    assert!(
        (ratio / expect - 1.0).abs() < 0.2,
        "EC half-width ratio {ratio} vs {expect}"
    );
}

#[test]
fn trial_gamma1_marginal_is_the_selected_order_statistic() {
    // with ρ = 1 and m = N = 5 the first-hop SNR inside a trial follows
    // the iid max distribution (1 − e^{−x/γ̄})⁵
    let cfg = LinkConfig::new(
        RfHopConfig::new(5, 5, 1.0, 1.0).unwrap(),
        OpticalHopConfig::unit_mean(1.0, 1.0, Detection::Heterodyne, 1.0).unwrap(),
        ImpairmentProfile::ideal(),
    );
    let mut rng = Stream::from_seed(606);
    let mut samples: Vec<f64> = (0..1_000_000).map(|_| cfg.rf.sample(&mut rng)).collect();
    samples.sort_unstable_by(f64::total_cmp);
    let grid = common::quantile_grid(|x| common::iid_exp_order_stat_cdf(x, 5, 5, 1.0), 4000, 10.0);
    let (ks, gap) = common::ks_bound(&samples, &grid);
    assert!(ks + gap < 0.002, "KS bound {ks} (+{gap})");
}

#[test]
fn outage_estimates_flag_rare_events() {
    let cfg = test_link();
    // at a microscopic threshold no trial fails: value 0, flagged unreliable
    let est = montecarlo::estimate_op(1e-9, &cfg, 20_000, 12);
    assert_eq!(est.value, 0.0);
    assert!(est.unreliable);
    // at a bulk threshold plenty of events: not flagged
    let est = montecarlo::estimate_op(2.0, &cfg, 20_000, 12);
    assert!(!est.unreliable);
    assert!(est.value > 0.01);
}

#[test]
fn point_index_changes_the_stream_but_not_the_statistics() {
    let cfg = test_link();
    let a = montecarlo::estimate_op_at(2.0, &cfg, 200_000, 5, 0);
    let b = montecarlo::estimate_op_at(2.0, &cfg, 200_000, 5, 1);
    assert_ne!(a.value.to_bits(), b.value.to_bits(), "streams must differ");
    assert!(
        (a.value - b.value).abs() < 3.0 * (a.half_width + b.half_width),
        "estimates from different streams disagree beyond noise"
    );
}
