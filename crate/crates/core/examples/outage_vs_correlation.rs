//! How stale channel knowledge degrades relay selection: outage versus SNR
//! for several correlation coefficients, under moderate and strong optical
//! turbulence.
//!
//! With fresh knowledge (ρ = 1) the best relay really is selected and the
//! turbulence strength matters; with fully stale knowledge (ρ = 0) the
//! selection is blind and the two turbulence regimes nearly coincide.
//!
//! ```bash
//! cargo run --release --example outage_vs_correlation
//! ```

use rfso::analysis::{self, OutageQuery};
use rfso::fso::{Detection, OpticalHopConfig};
use rfso::link::{ImpairmentProfile, LinkConfig};
use rfso::rf::{jakes_rho, RfHopConfig};
use rfso::scenario::db_to_linear;

fn main() {
    // ρ can come straight from a Doppler × delay product
    let from_jakes = jakes_rho(30.0, 0.002).unwrap();
    println!("# e.g. 30 Hz Doppler × 2 ms feedback delay → ρ = {from_jakes:.4}\n");

    let rhos = [0.0, 0.5, 1.0];
    let betas = [(2.0, "moderate β=2"), (1.0, "strong β=1")];

    print!("{:>8}", "SNR[dB]");
    for &rho in &rhos {
        for &(_, label) in &betas {
            print!("  ρ={rho:<3} {label:<14}");
        }
    }
    println!();

    for snr_db in (4..=36).step_by(4) {
        let snr = db_to_linear(snr_db as f64);
        print!("{snr_db:>8}");
        for &rho in &rhos {
            for &(beta, _) in &betas {
                let cfg = LinkConfig::new(
                    RfHopConfig::new(4, 4, rho, snr).unwrap(),
                    OpticalHopConfig::unit_mean(beta, beta, Detection::Heterodyne, snr).unwrap(),
                    ImpairmentProfile::new(0.1, 0.1),
                );
                let op = analysis::op_quadrature(&OutageQuery::new(&cfg, 2.0).unwrap()).unwrap();
                print!("  {op:>20.6e}");
            }
        }
        println!();
    }
}
