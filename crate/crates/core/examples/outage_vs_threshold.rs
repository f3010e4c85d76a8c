//! Outage probability versus the SNDR threshold: impairments force the
//! curve to hit 1 exactly at the ceiling 10·log₁₀(1/δ), while the ideal
//! link saturates only far beyond the plot.
//!
//! ```bash
//! cargo run --release --example outage_vs_threshold
//! ```

use rfso::link::{sndr_ceiling, ImpairmentProfile};
use rfso::scenario::{linear_to_db, Scenario, SweepAxis, SweepOutput, SweepSpec};
use rfso::sweep::run_sweep;

fn main() {
    let kappas = [0.0, 0.2, 0.3, 0.4];
    let spec = SweepSpec {
        axis: SweepAxis::GammaThDb,
        grid: SweepSpec::grid_from_range(-2.0, 14.0, 0.5).unwrap(),
        outputs: vec![SweepOutput::OpClosed],
        trials: 10_000, // unused: no MC outputs requested
        seed: 1,
    };

    let mut curves = Vec::new();
    for &kappa in &kappas {
        let mut s = Scenario::representative();
        s.impairments.kappa1 = kappa;
        s.impairments.kappa2 = kappa;
        curves.push(run_sweep(&s, &spec).expect("sweep runs"));
    }

    println!("# outage vs threshold at 20 dB average SNR, heterodyne");
    for &kappa in &kappas[1..] {
        let ceiling = sndr_ceiling(&ImpairmentProfile::new(kappa, kappa)).unwrap();
        println!("#   κ = {kappa}: OP = 1 from {:.2} dB on", linear_to_db(ceiling));
    }
    print!("{:>9}", "γth[dB]");
    for &kappa in &kappas {
        print!("   κ={kappa:<10}");
    }
    println!();
    for (i, &th) in spec.grid.iter().enumerate() {
        print!("{th:>9.1}");
        for curve in &curves {
            print!(" {:>12.6e}", curve.points[i].cells[0].unwrap());
        }
        println!();
    }
}
