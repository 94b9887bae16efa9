use super::special::{ln_gamma, regularized_incomplete_beta};
use super::EsdError;

/// `P(T > t)` for `t ≥ 0` under Student-t with `nu` degrees of freedom.
fn upper_tail(t: f64, nu: f64) -> f64 {
    let x = nu / (nu + t * t);
    0.5 * regularized_incomplete_beta(0.5 * nu, 0.5, x).expect("arguments are in domain")
}

fn pdf(t: f64, nu: f64) -> f64 {
    let ln_norm = ln_gamma(0.5 * (nu + 1.0)) - ln_gamma(0.5 * nu) - 0.5 * (nu * std::f64::consts::PI).ln();
    (ln_norm - 0.5 * (nu + 1.0) * (t * t / nu).ln_1p()).exp()
}

pub fn t_cdf(t: f64, nu: f64) -> f64 {
    if t >= 0.0 {
        1.0 - upper_tail(t, nu)
    } else {
        upper_tail(-t, nu)
    }
}

/// Inverse CDF of Student-t with `nu ≥ 1` degrees of freedom.
///
/// Solves on the tail probability with a bracketed Newton iteration, falling
/// back to bisection whenever a Newton step leaves the bracket.
pub fn t_quantile(p: f64, nu: f64) -> Result<f64, EsdError> {
    if !(nu >= 1.0 && nu.is_finite()) {
        return Err(EsdError::Domain(format!("degrees of freedom must be >= 1 (got {nu})")));
    }
    if p.is_nan() || p <= 0.0 || p >= 1.0 {
        return Err(EsdError::Domain(format!("quantile is infinite or undefined for p = {p}")));
    }
    if p == 0.5 {
        return Ok(0.0);
    }
    if p < 0.5 {
        Ok(-upper_quantile(p, nu))
    } else {
        Ok(upper_quantile(1.0 - p, nu))
    }
}

/// The `t > 0` with `P(T > t) = q`, for `0 < q < 0.5`.
fn upper_quantile(q: f64, nu: f64) -> f64 {
    let mut lo = 0.0;
    let mut hi = 1.0;
    while upper_tail(hi, nu) > q {
        lo = hi;
        hi *= 2.0;
        if !hi.is_finite() {
            return f64::MAX;
        }
    }

    let mut t = 0.5 * (lo + hi);
    for _ in 0..300 {
        let f = upper_tail(t, nu) - q;
        if f == 0.0 {
            return t;
        }
        // the tail is decreasing in t
        if f > 0.0 {
            lo = t;
        } else {
            hi = t;
        }
        let newton = t + f / pdf(t, nu);
        let next = if newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
        if (next - t).abs() <= 4.0 * f64::EPSILON * t.abs().max(1.0) || hi - lo <= f64::EPSILON * hi {
            return next;
        }
        t = next;
    }
    t
}
