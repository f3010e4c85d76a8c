//! Restricted Meijer G-function evaluator for positive real arguments.
//!
//! The G-function is the Mellin–Barnes integral
//!
//! ```text
//!                       1    ⌠   Π_{j≤m} Γ(b_j − s) · Π_{j≤n} Γ(1 − a_j + s)
//! G^{m,n}_{p,q}(z|a;b) = ── ⎮  ───────────────────────────────────────────── z^s ds
//!                      2πi  ⌡   Π_{j>m} Γ(1 − b_j + s) · Π_{j>n} Γ(a_j − s)
//! ```
//!
//! over a vertical contour separating the ascending pole ladders of the
//! Γ(b_j − s) factors from the descending ladders of the Γ(1 − a_j + s).
//!
//! Two evaluation routes are provided:
//!
//! - [`meijer_g_series`]: the residue (Slater) expansion — a finite sum of
//!   generalized hypergeometric series, one per right-family pole ladder.
//!   Fast, but only valid when all those poles are simple; coincident
//!   ladders (integer-spaced b parameters) are refused with
//!   [`Error::PoleCoincidence`].
//! - [`meijer_g_contour`]: direct numerical integration along the vertical
//!   contour. Slower, but indifferent to pole multiplicities — this is the
//!   fallback for the logarithmic cases and the cross-check oracle for the
//!   series.
//!
//! [`meijer_g`] dispatches: series first, contour when the series refuses.

use super::gamma::{ln_gamma_complex, ln_gamma_signed};
use super::hyper::hyp_pfq;
use super::Error;
use crate::quad;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Tolerance for deciding that two poles coincide (spacing from an integer).
const POLE_TOL: f64 = 1e-9;

/// Parameter block for one Meijer G evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct MeijerGSpec {
    /// Count of Γ(b_j − s) factors in the numerator.
    pub m: usize,
    /// Count of Γ(1 − a_j + s) factors in the numerator.
    pub n: usize,
    /// Total number of a parameters.
    pub p: usize,
    /// Total number of b parameters.
    pub q: usize,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    /// Argument; restricted to the positive real axis.
    pub z: f64,
}

impl MeijerGSpec {
    pub fn new(m: usize, n: usize, a: Vec<f64>, b: Vec<f64>, z: f64) -> Result<Self, Error> {
        let (p, q) = (a.len(), b.len());
        if m > q || n > p {
            return Err(Error::Domain(format!(
                "order out of range: m = {m} > q = {q} or n = {n} > p = {p}"
            )));
        }
        if !(z > 0.0 && z.is_finite()) {
            return Err(Error::Domain(format!("argument must be positive, got {z}")));
        }
        Ok(MeijerGSpec { m, n, p, q, a, b, z })
    }

    /// The argument-inversion identity
    /// G^{m,n}_{p,q}(z | a; b) = G^{n,m}_{q,p}(1/z | 1−b; 1−a).
    pub fn inverted(&self) -> Self {
        MeijerGSpec {
            m: self.n,
            n: self.m,
            p: self.q,
            q: self.p,
            a: self.b.iter().map(|v| 1.0 - v).collect(),
            b: self.a.iter().map(|v| 1.0 - v).collect(),
            z: 1.0 / self.z,
        }
    }

    /// Δ(j; x) = x/j, (x+1)/j, …, (x+j−1)/j.
    pub fn delta(j: u32, x: f64) -> Vec<f64> {
        let jf = j as f64;
        (0..j).map(|i| (x + i as f64) / jf).collect()
    }
}

/// Pole ladder structure of a product Π_j Γ(b_j − s): each factor owns the
/// ascending ladder b_j, b_j + 1, b_j + 2, …
#[derive(Debug, Clone)]
pub struct PoleStructure {
    /// Sorted ladder start positions (the b_j, ascending).
    pub pole_locations: Vec<f64>,
    /// Multiplicity of the integrand pole at each listed location: the number
    /// of ladders passing through it.
    pub multiplicities: Vec<u32>,
}

impl PoleStructure {
    pub fn analyze(starts: &[f64]) -> Self {
        let mut locations: Vec<f64> = starts.to_vec();
        locations.sort_by(f64::total_cmp);
        let multiplicities = locations
            .iter()
            .map(|&loc| {
                locations
                    .iter()
                    .filter(|&&s| {
                        let d = loc - s;
                        d >= -POLE_TOL && (d - d.round()).abs() <= POLE_TOL
                    })
                    .count() as u32
            })
            .collect();
        PoleStructure {
            pole_locations: locations,
            multiplicities,
        }
    }

    /// True when every integrand pole of the family is simple, i.e. no two
    /// ladder starts differ by an integer.
    pub fn all_simple(&self) -> bool {
        self.multiplicities.iter().all(|&m| m == 1)
    }
}

fn is_nonpositive_integer(v: f64) -> bool {
    v <= POLE_TOL && (v - v.round()).abs() <= POLE_TOL
}

fn is_integer_at_least_one(v: f64) -> bool {
    v >= 1.0 - POLE_TOL && (v - v.round()).abs() <= POLE_TOL
}

/// Pick the orientation (as given or argument-inverted) in which the residue
/// expansion over the right pole family converges.
fn series_orientation(spec: &MeijerGSpec) -> Result<MeijerGSpec, Error> {
    let candidates = [spec.clone(), spec.inverted()];
    for c in &candidates {
        if c.m == 0 {
            continue;
        }
        if c.p < c.q || (c.p == c.q && c.z < 1.0) {
            return Ok(c.clone());
        }
    }
    Err(Error::Unsupported(format!(
        "no convergent residue expansion for m={}, n={}, p={}, q={}, z={}",
        spec.m, spec.n, spec.p, spec.q, spec.z
    )))
}

/// Residue-series (Slater) evaluation.
///
/// After normalizing the orientation, the value is
///
/// ```text
/// G = Σ_{h≤m} P_h · z^{b_h} · ₚF_{q−1}({1+b_h−a_j}_j ; {1+b_h−b_j}_{j≠h} ; (−1)^{p−m−n} z)
/// ```
///
/// with P_h the ratio of gamma factors at the ladder start. Requires all
/// right-family poles simple; coincident ladders get
/// [`Error::PoleCoincidence`] and the caller should fall back to
/// [`meijer_g_contour`].
pub fn meijer_g_series(spec: &MeijerGSpec) -> Result<f64, Error> {
    let s = series_orientation(spec)?;
    let (m, n, p, q) = (s.m, s.n, s.p, s.q);

    let poles = PoleStructure::analyze(&s.b[..m]);
    if !poles.all_simple() {
        return Err(Error::PoleCoincidence(format!(
            "right pole family has coincident ladders: b[..m] = {:?}",
            &s.b[..m]
        )));
    }
    for h in 0..m {
        for j in 0..n {
            if is_integer_at_least_one(s.a[j] - s.b[h]) {
                return Err(Error::PoleCoincidence(format!(
                    "left ladder at a = {} collides with right ladder at b = {}",
                    s.a[j], s.b[h]
                )));
            }
        }
        for j in m..q {
            if is_integer_at_least_one(s.b[j] - s.b[h]) {
                return Err(Error::PoleCoincidence(format!(
                    "denominator parameter b = {} sits on the ladder of b = {}",
                    s.b[j], s.b[h]
                )));
            }
        }
    }

    let sign_flip = (p + m + n) % 2 == 1; // parity of p − m − n
    let ln_z = s.z.ln();
    let mut total = 0.0f64;

    'branch: for h in 0..m {
        let bh = s.b[h];
        // a denominator gamma at a pole kills the whole ladder
        for j in n..p {
            if is_nonpositive_integer(s.a[j] - bh) {
                continue 'branch;
            }
        }

        let mut ln_pref = bh * ln_z;
        let mut sign = 1.0f64;
        for j in 0..m {
            if j != h {
                let (l, sg) = ln_gamma_signed(s.b[j] - bh)?;
                ln_pref += l;
                sign *= sg;
            }
        }
        for j in 0..n {
            let (l, sg) = ln_gamma_signed(1.0 - s.a[j] + bh)?;
            ln_pref += l;
            sign *= sg;
        }
        for j in m..q {
            let (l, sg) = ln_gamma_signed(1.0 - s.b[j] + bh)?;
            ln_pref -= l;
            sign *= sg;
        }
        for j in n..p {
            let (l, sg) = ln_gamma_signed(s.a[j] - bh)?;
            ln_pref -= l;
            sign *= sg;
        }

        let upper: Vec<f64> = s.a.iter().map(|&aj| 1.0 + bh - aj).collect();
        let lower: Vec<f64> = (0..q)
            .filter(|&j| j != h)
            .map(|j| 1.0 + bh - s.b[j])
            .collect();
        let zz = if sign_flip { -s.z } else { s.z };
        let series = hyp_pfq(&upper, &lower, zz)?;

        total += sign * ln_pref.exp() * series;
    }
    Ok(total)
}

/// Direct numerical Mellin–Barnes integration along a vertical contour.
///
/// The contour runs at Re s = σ: the midpoint of the gap between the two
/// pole families when both are present, otherwise offset 1/2 from the single
/// family. The integrand decays like exp(−c*·π·|Im s|) with
/// c* = m + n − (p+q)/2, which must be positive.
pub fn meijer_g_contour(spec: &MeijerGSpec) -> Result<f64, Error> {
    let (m, n, p, q) = (spec.m, spec.n, spec.p, spec.q);
    if m + n == 0 {
        return Err(Error::Unsupported(
            "contour evaluation needs at least one numerator gamma family".into(),
        ));
    }
    let c_star = (m + n) as f64 - 0.5 * (p + q) as f64;
    if c_star <= 0.0 {
        return Err(Error::NonConvergent(format!(
            "vertical contour integrand does not decay: m+n−(p+q)/2 = {c_star}"
        )));
    }

    let right_min = spec.b[..m].iter().cloned().fold(f64::INFINITY, f64::min);
    let left_max = spec.a[..n]
        .iter()
        .map(|a| a - 1.0)
        .fold(f64::NEG_INFINITY, f64::max);

    let sigma = if m > 0 && n > 0 {
        if left_max >= right_min - POLE_TOL {
            return Err(Error::ContourNotSeparable(format!(
                "pole families interleave: max left pole {left_max} >= min right pole {right_min} \
                 (a = {:?}, b = {:?})",
                spec.a, spec.b
            )));
        }
        0.5 * (left_max + right_min)
    } else if m > 0 {
        right_min - 0.5
    } else {
        left_max + 0.5
    };

    let ln_z = spec.z.ln();
    let log_integrand = |y: f64| -> Complex64 {
        let s = Complex64::new(sigma, y);
        let mut acc = s * ln_z;
        for j in 0..m {
            acc += ln_gamma_complex(Complex64::new(spec.b[j], 0.0) - s);
        }
        for j in 0..n {
            acc += ln_gamma_complex(Complex64::new(1.0 - spec.a[j], 0.0) + s);
        }
        for j in m..q {
            acc -= ln_gamma_complex(Complex64::new(1.0 - spec.b[j], 0.0) + s);
        }
        for j in n..p {
            acc -= ln_gamma_complex(Complex64::new(spec.a[j], 0.0) - s);
        }
        acc
    };

    // rescale so the integrand is O(1) near y = 0
    let l0 = log_integrand(0.0).re;
    let f = |y: f64| (log_integrand(y) - l0).exp().re;

    // block width tied to the oscillation frequency ln z of z^{iy}
    let width = (2.0 * PI / (1.0 + ln_z.abs())).clamp(0.25, 2.0);
    let param_scale: f64 = spec.a.iter().chain(spec.b.iter()).map(|v| v.abs()).sum::<f64>()
        + sigma.abs()
        + (p + q) as f64;
    let y_max = (45.0 + 3.0 * param_scale.max(1.0).ln() * param_scale) / (c_star * PI) + 20.0;

    let mut acc = 0.0f64;
    let mut y = 0.0f64;
    let mut quiet_blocks = 0usize;
    while y < y_max {
        let y1 = (y + width).min(y_max);
        // the abs floor sits above the ~50·eps·|f| noise floor of the
        // Kronrod error estimate for the rescaled O(1) integrand
        let r = quad::integrate(&f, y, y1, 1e-13, 1e-11, 600)
            .map_err(|e| Error::NonConvergent(format!("contour block [{y}, {y1}]: {e}")))?;
        acc += r.value;
        // envelope check at the block end: after rescaling the peak is ~1
        let tail_mag = (log_integrand(y1).re - l0).exp();
        if tail_mag < 1e-17 {
            quiet_blocks += 1;
            if quiet_blocks >= 2 {
                return Ok(acc / PI * l0.exp());
            }
        } else {
            quiet_blocks = 0;
        }
        y = y1;
    }
    Err(Error::NonConvergent(format!(
        "contour tail still {:.3e} of peak at Im s = {y_max}",
        (log_integrand(y_max).re - l0).exp()
    )))
}

/// Evaluate a Meijer G-function: residue series when the poles allow it,
/// contour integration otherwise.
pub fn meijer_g(spec: &MeijerGSpec) -> Result<f64, Error> {
    match meijer_g_series(spec) {
        Ok(v) => Ok(v),
        Err(Error::PoleCoincidence(_)) | Err(Error::Unsupported(_)) => meijer_g_contour(spec),
        Err(e) => Err(e),
    }
}
