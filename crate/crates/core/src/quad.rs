//! Adaptive Gauss–Kronrod quadrature on finite intervals.
//!
//! The workhorse is [`integrate`]: a 21-point Kronrod rule with embedded
//! 10-point Gauss rule, refined by greedy bisection of the interval with
//! the largest error estimate until the requested tolerance is met.

use thiserror::Error;

/// Quadrature failure: the subdivision budget ran out before the error
/// estimate dropped below the requested tolerance.
#[derive(Debug, Clone, Error)]
#[error("quadrature did not converge: achieved error {achieved:e}, requested {requested:e}")]
pub struct NonConvergent {
    pub achieved: f64,
    pub requested: f64,
}

/// Result of an adaptive integration: the value and the final error estimate.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
}

// 10-21 Gauss-Kronrod pair. Abscissae are the positive half (symmetric rule);
// even indices are Kronrod-only nodes, odd indices carry the Gauss weights.
#[allow(clippy::excessive_precision)]
const XGK21: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
];

#[allow(clippy::excessive_precision)]
const WGK21: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077958109831074,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

#[allow(clippy::excessive_precision)]
const WG10: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

/// Single 21-point Kronrod panel on `[a, b]`; returns (value, error estimate).
pub fn kronrod21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = f(center);
    let mut kronrod = fc * WGK21[10];
    let mut gauss = 0.0;
    let mut res_abs = kronrod.abs();

    let mut fv = [0.0f64; 21];
    fv[10] = fc;

    for (i, &x) in XGK21.iter().enumerate().take(10) {
        let dx = half * x;
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv[i] = f1;
        fv[20 - i] = f2;
        let sum = f1 + f2;
        kronrod += WGK21[i] * sum;
        res_abs += WGK21[i] * (f1.abs() + f2.abs());
        if i % 2 == 1 {
            gauss += WG10[i / 2] * sum;
        }
    }

    let mean = kronrod * 0.5;
    let mut res_asc = WGK21[10] * (fc - mean).abs();
    for (i, &v) in fv.iter().enumerate() {
        let w = if i <= 10 { WGK21[i] } else { WGK21[20 - i] };
        if i != 10 {
            res_asc += w * (v - mean).abs();
        }
    }

    let value = kronrod * half;
    res_abs *= half.abs();
    res_asc *= half.abs();

    let mut err = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * 1.0f64.min((200.0 * err / res_asc).powf(1.5));
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    (value, err)
}

/// Adaptively integrate `f` over `[a, b]` until the total error estimate is
/// below `max(abs_tol, rel_tol * |integral|)` or `max_panels` bisections have
/// been spent.
pub fn integrate<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
) -> Result<QuadResult, NonConvergent> {
    #[derive(Debug)]
    struct Panel {
        a: f64,
        b: f64,
        value: f64,
        error: f64,
    }

    let (v0, e0) = kronrod21(f, a, b);
    let mut panels = vec![Panel {
        a,
        b,
        value: v0,
        error: e0,
    }];

    loop {
        let total: f64 = panels.iter().map(|p| p.value).sum();
        let err: f64 = panels.iter().map(|p| p.error).sum();
        let tol = abs_tol.max(rel_tol * total.abs());
        if err <= tol {
            return Ok(QuadResult { value: total, error: err });
        }
        if panels.len() >= max_panels {
            return Err(NonConvergent {
                achieved: err,
                requested: tol,
            });
        }
        // split the worst panel
        let (worst, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("at least one panel");
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a || mid >= p.b {
            // interval no longer splittable in f64; accept what we have
            let total: f64 = panels.iter().map(|q| q.value).sum::<f64>() + p.value;
            let err: f64 = panels.iter().map(|q| q.error).sum::<f64>() + p.error;
            return Ok(QuadResult { value: total, error: err });
        }
        let (v1, e1) = kronrod21(f, p.a, mid);
        let (v2, e2) = kronrod21(f, mid, p.b);
        panels.push(Panel {
            a: p.a,
            b: mid,
            value: v1,
            error: e1,
        });
        panels.push(Panel {
            a: mid,
            b: p.b,
            value: v2,
            error: e2,
        });
    }
}

/// Convenience wrapper with the tolerances used by the statistical oracles:
/// absolute 1e-12, relative 1e-10.
pub fn integrate_tight<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<QuadResult, NonConvergent> {
    integrate(f, a, b, 1e-12, 1e-10, 2000)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(&|x: f64| x * x * x - 2.0 * x + 1.0, -1.0, 3.0, 1e-12, 1e-13, 100).unwrap();
        // antiderivative x^4/4 - x^2 + x
        let exact = (81.0 / 4.0 - 9.0 + 3.0) - (0.25 - 1.0 - 1.0);
        assert!((r.value - exact).abs() < 1e-12);
    }

    #[test]
    fn oscillatory_integrand() {
        let r = integrate(&|x: f64| (20.0 * x).sin(), 0.0, 1.0, 1e-13, 1e-13, 500).unwrap();
        let exact = (1.0 - (20.0f64).cos()) / 20.0;
        assert!((r.value - exact).abs() < 1e-12);
    }

    #[test]
    fn gaussian_tail() {
        // integral of e^{-x^2} over [0, 10] = sqrt(pi)/2 to machine accuracy
        let r = integrate(&|x: f64| (-x * x).exp(), 0.0, 10.0, 1e-14, 1e-13, 500).unwrap();
        assert!((r.value - 0.5 * std::f64::consts::PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn budget_exhaustion_reports_error() {
        let e = integrate(&|x: f64| (1e4 * x).sin().abs(), 0.0, 1.0, 1e-14, 1e-14, 4).unwrap_err();
        assert!(e.achieved > e.requested);
    }
}
