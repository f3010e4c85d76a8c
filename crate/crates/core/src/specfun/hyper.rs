//! Generalized hypergeometric series ₚF_q.

use super::Error;

/// Maximum number of series terms before giving up.
const MAX_TERMS: usize = 10_000;
/// A term quiet streak this long ends the summation.
const QUIET_STREAK: usize = 30;

/// ₚF_q(a₁,…,a_p; b₁,…,b_q; z) = Σ_t (a₁)_t ⋯ (a_p)_t / [(b₁)_t ⋯ (b_q)_t] · z^t / t!
///
/// Terms are built by the ratio recurrence. A non-positive-integer upper
/// parameter terminates the series (a polynomial); a non-positive-integer
/// lower parameter that is reached before termination is a domain error.
pub fn hyp_pfq(upper: &[f64], lower: &[f64], z: f64) -> Result<f64, Error> {
    const TOL: f64 = 1e-9;

    // termination order, if any: smallest t with some (u + t) = 0
    let terminates_at = upper
        .iter()
        .filter(|&&u| u <= TOL && (u - u.round()).abs() <= TOL)
        .map(|&u| (-u.round()) as usize)
        .min();

    if let Some(t_stop) = terminates_at {
        // a lower parameter hitting zero strictly before the series terminates
        // leaves the value undefined
        for &l in lower {
            if l <= TOL && (l - l.round()).abs() <= TOL && ((-l.round()) as usize) < t_stop {
                return Err(Error::Domain(format!(
                    "lower parameter {l} reaches a pole before the series terminates"
                )));
            }
        }
    } else {
        for &l in lower {
            if l <= TOL && (l - l.round()).abs() <= TOL {
                return Err(Error::Domain(format!(
                    "non-terminating series with non-positive integer lower parameter {l}"
                )));
            }
        }
    }

    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut comp = 0.0f64; // Kahan compensation
    let mut quiet = 0usize;

    for t in 0..MAX_TERMS {
        if let Some(t_stop) = terminates_at {
            if t >= t_stop {
                return Ok(sum);
            }
        }
        let tf = t as f64;
        let mut ratio = z / (tf + 1.0);
        for &u in upper {
            ratio *= u + tf;
        }
        for &l in lower {
            ratio /= l + tf;
        }
        term *= ratio;
        if !term.is_finite() {
            return Err(Error::NonConvergent(format!(
                "hypergeometric term overflow at t = {t} (p = {}, q = {}, z = {z})",
                upper.len(),
                lower.len()
            )));
        }
        // Kahan step
        let y = term - comp;
        let s = sum + y;
        comp = (s - sum) - y;
        sum = s;

        if term.abs() < 1e-16 * sum.abs().max(f64::MIN_POSITIVE) {
            quiet += 1;
            if quiet >= QUIET_STREAK {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergent(format!(
        "hypergeometric series did not settle in {MAX_TERMS} terms (z = {z})"
    )))
}
