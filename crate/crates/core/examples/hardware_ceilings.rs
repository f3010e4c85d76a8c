//! The performance ceilings hardware distortion imposes, as a table over
//! the impairment level: δ, the SNDR cap 1/δ and the capacity cap
//! log₂(1 + c/δ) for both detection modes.
//!
//! ```bash
//! cargo run --example hardware_ceilings
//! ```

use rfso::fso::Detection;
use rfso::link::{capacity_ceiling, sndr_ceiling, ImpairmentProfile};
use rfso::scenario::linear_to_db;

fn main() {
    println!(
        "{:>6} {:>6} {:>10} {:>12} {:>12} {:>14} {:>14}",
        "κ₁", "κ₂", "δ", "γ*", "γ*[dB]", "C* het", "C* im/dd"
    );
    for &(k1, k2) in &[
        (0.05, 0.05),
        (0.1, 0.1),
        (0.15, 0.2),
        (0.2, 0.2),
        (0.3, 0.3),
        (0.4, 0.4),
    ] {
        let imp = ImpairmentProfile::new(k1, k2);
        let gamma_star = sndr_ceiling(&imp).unwrap();
        println!(
            "{k1:>6.2} {k2:>6.2} {:>10.5} {:>12.4} {:>12.3} {:>14.4} {:>14.4}",
            imp.delta(),
            gamma_star,
            linear_to_db(gamma_star),
            capacity_ceiling(&imp, Detection::Heterodyne).unwrap(),
            capacity_ceiling(&imp, Detection::ImDd).unwrap(),
        );
    }
    println!("\nideal hardware (κ = 0): no ceiling — SNDR and capacity grow without bound");
    assert!(sndr_ceiling(&ImpairmentProfile::ideal()).is_err());
}
