//! Run the built-in cross-validation report: closed forms vs defining
//! integrals vs Monte Carlo on one scenario, with PASS/FAIL per check.
//!
//! ```bash
//! cargo run --release --example cross_validate
//! ```

use rfso::scenario::Scenario;
use rfso::sweep::validate;

fn main() {
    let scenario = Scenario::representative();
    println!("# scenario:\n{}\n", scenario.to_json_pretty());
    let report = validate(&scenario, 200_000, 7).expect("scenario resolves");
    print!("{}", report.render());
    println!(
        "\noverall: {}",
        if report.passed() { "PASS" } else { "FAIL" }
    );
    std::process::exit(if report.passed() { 0 } else { 1 });
}
