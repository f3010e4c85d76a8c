//! Outage probability versus the joint average SNR, for ideal and impaired
//! hardware under both detection modes — closed form next to Monte Carlo.
//!
//! ```bash
//! cargo run --release --example outage_vs_snr
//! ```

use rfso::fso::Detection;
use rfso::scenario::{Scenario, SweepAxis, SweepOutput, SweepSpec};
use rfso::sweep::run_sweep;

fn main() {
    let spec = SweepSpec {
        axis: SweepAxis::AvgSnrDb,
        grid: SweepSpec::grid_from_range(6.0, 40.0, 2.0).unwrap(),
        outputs: vec![SweepOutput::OpClosed, SweepOutput::OpMc],
        trials: 200_000,
        seed: 1,
    };

    let cases = [
        (Detection::Heterodyne, 0.0, "het ideal"),
        (Detection::Heterodyne, 0.2, "het κ=0.2"),
        (Detection::ImDd, 0.0, "imdd ideal"),
        (Detection::ImDd, 0.2, "imdd κ=0.2"),
    ];

    let mut curves = Vec::new();
    for &(detection, kappa, _) in &cases {
        let mut s = Scenario::representative();
        s.optical.detection = detection;
        s.impairments.kappa1 = kappa;
        s.impairments.kappa2 = kappa;
        curves.push(run_sweep(&s, &spec).expect("sweep runs"));
    }

    println!("# outage at γth = 3 dB, N = 3 relays, rank 2, ρ = 0.7, β₁ = β₂ = 1");
    print!("{:>8}", "SNR[dB]");
    for &(_, _, label) in &cases {
        print!(" {label:>14}");
    }
    println!();
    for (i, &snr) in spec.grid.iter().enumerate() {
        print!("{snr:>8.1}");
        for curve in &curves {
            // column 0 is op_closed
            print!(" {:>14.6e}", curve.points[i].cells[0].unwrap());
        }
        println!();
    }

    println!("\n# Monte Carlo check at the last point ({} trials):", spec.trials);
    for (curve, &(_, _, label)) in curves.iter().zip(&cases) {
        let p = curve.points.last().unwrap();
        println!(
            "  {label:>11}: closed {:.4e}, MC {:.4e} ± {:.1e}",
            p.cells[0].unwrap(),
            p.cells[1].unwrap(),
            p.cells[2].unwrap()
        );
    }
}
