//! Draw raw channel realizations and compare their sample statistics with
//! the analytic moments — the quickest end-to-end sanity check of the
//! samplers.
//!
//! ```bash
//! cargo run --release --example channel_sampling
//! ```

use rfso::montecarlo::sample_trials;
use rfso::scenario::Scenario;

fn main() {
    let scenario = Scenario::representative();
    let cfg = scenario.resolve().expect("scenario resolves");
    let n = 500_000;
    let rows = sample_trials(&cfg, n, 99);

    let mean = |f: fn(&rfso::montecarlo::TrialSample) -> f64| {
        rows.iter().map(f).sum::<f64>() / n as f64
    };

    let g1 = mean(|r| r.gamma1);
    let irr = mean(|r| r.irradiance);
    let g2 = mean(|r| r.gamma2);
    let g2_sq = mean(|r| r.gamma2 * r.gamma2);

    println!("# {n} trials of the representative scenario\n");
    println!("{:<28} {:>12} {:>12}", "quantity", "sampled", "analytic");
    println!("{:<28} {:>12.4} {:>12.4}", "E[γ₁] (selected relay)", g1, cfg.rf.mean());
    println!("{:<28} {:>12.4} {:>12.4}", "E[I] (irradiance)", irr, 1.0);
    println!("{:<28} {:>12.4} {:>12.4}", "E[γ₂]", g2, cfg.optical.gamma2_moment(1));
    println!("{:<28} {:>12.4} {:>12.4}", "E[γ₂²]", g2_sq, cfg.optical.gamma2_moment(2));

    let gain_c = cfg.gain_constant();
    println!("\nfixed relay gain constant C = {gain_c:.4}");
    let ceiling = rfso::link::sndr_ceiling(&cfg.impairments).unwrap();
    let max_sndr = rows.iter().map(|r| r.sndr).fold(0.0f64, f64::max);
    println!("largest sampled SNDR {max_sndr:.4} < ceiling 1/δ = {ceiling:.4}");

    println!("\nfirst rows (also available as CSV via `rfso sample`):");
    println!("{:>10} {:>10} {:>10} {:>10}", "gamma1", "irradiance", "gamma2", "sndr");
    for r in rows.iter().take(5) {
        println!(
            "{:>10.4} {:>10.4} {:>10.4} {:>10.4}",
            r.gamma1, r.irradiance, r.gamma2, r.sndr
        );
    }
}
