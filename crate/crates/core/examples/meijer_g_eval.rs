//! Evaluate Meijer G-functions with the two built-in routes: the residue
//! (Slater) series where the poles allow it, and the Mellin–Barnes contour
//! everywhere else.
//!
//! ```bash
//! cargo run --example meijer_g_eval
//! ```

use rfso::specfun::{meijer_g, meijer_g_contour, meijer_g_series, MeijerGSpec, PoleStructure};

fn show(label: &str, spec: &MeijerGSpec, reference: Option<(f64, &str)>) {
    let series = meijer_g_series(spec);
    let contour = meijer_g_contour(spec);
    println!("{label}");
    println!("  series : {}", fmt(&series));
    println!("  contour: {}", fmt(&contour));
    if let Some((v, name)) = reference {
        println!("  exact  : {v:.12e}  ({name})");
    }
    println!("  meijer_g dispatch → {:.12e}\n", meijer_g(spec).unwrap());
}

fn fmt(r: &Result<f64, rfso::specfun::Error>) -> String {
    match r {
        Ok(v) => format!("{v:.12e}"),
        Err(e) => format!("refused: {e}"),
    }
}

fn main() {
    // G^{1,0}_{0,1}(z | −; 0) = e^{−z}
    let spec = MeijerGSpec::new(1, 0, vec![], vec![0.0], 1.0).unwrap();
    show(
        "G^{1,0}_{0,1}(1 | −; 0)",
        &spec,
        Some(((-1.0f64).exp(), "e^{-1}")),
    );

    // coincident pole ladders: the series refuses, the contour answers
    let spec = MeijerGSpec::new(2, 0, vec![], vec![0.0, 0.0], 1.0).unwrap();
    let poles = PoleStructure::analyze(&spec.b);
    println!(
        "pole ladders of Γ(−s)²: locations {:?}, multiplicities {:?}",
        poles.pole_locations, poles.multiplicities
    );
    show("G^{2,0}_{0,2}(1 | −; 0, 0) = 2K₀(2)", &spec, None);

    // simple fractional poles: both routes live and agree
    let spec = MeijerGSpec::new(2, 0, vec![], vec![0.25, -0.25], 1.0).unwrap();
    show(
        "G^{2,0}_{0,2}(1 | −; 1/4, −1/4) = 2K_{1/2}(2)",
        &spec,
        Some((std::f64::consts::PI.sqrt() * (-2.0f64).exp(), "√π e^{-2}")),
    );

    // argument inversion identity
    let spec = MeijerGSpec::new(0, 1, vec![1.0], vec![], 2.0).unwrap();
    println!(
        "inversion: G^{{0,1}}_{{1,0}}(2 | 1; −) = {:.12e} = e^{{-1/2}} = {:.12e}",
        meijer_g(&spec).unwrap(),
        (-0.5f64).exp()
    );
    let inv = spec.inverted();
    println!(
        "           its inverted form G^{{1,0}}_{{0,1}}({} | −; {}) agrees: {:.12e}",
        inv.z,
        inv.b[0],
        meijer_g(&inv).unwrap()
    );
}
