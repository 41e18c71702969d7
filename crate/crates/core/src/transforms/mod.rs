//! Symmetrization, Fourier-cosine, Mellin and theta transforms.

pub(crate) mod hermite;

pub use hermite::{
    eigen_check, eigen_continuation_residual, hermite_fn, hermite_polynomial, HermiteKind,
};

use std::cell::RefCell;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::complex::{c, C64};
use crate::error::{Error, Result};
use crate::poisson_space::TestFunction;
use crate::quadrature::{
    alternating_tail, integrate, power_weighted_lower, power_weighted_upper, truncation_point, Integral,
    QuadratureSpec, Scalar, TailStrategy,
};

/// Contract for infinite sums.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesSpec {
    pub max_terms: usize,
    pub tail_tol: f64,
    /// Weight exponent `l > 1` of the tail bound.
    pub tail_exponent: f64,
}

impl Default for SeriesSpec {
    fn default() -> Self {
        SeriesSpec {
            max_terms: 100_000_000,
            tail_tol: 1e-9,
            tail_exponent: 2.0,
        }
    }
}

impl SeriesSpec {
    pub fn validate(&self) -> Result<()> {
        if self.max_terms == 0 || !(self.tail_tol > 0.0) || !(self.tail_exponent > 1.0) {
            return Err(Error::precondition(
                "series spec needs max_terms >= 1, tail_tol > 0, tail exponent > 1",
            ));
        }
        Ok(())
    }
}

/// A transform value with its error estimate. `cross_check` carries an
/// independent evaluation (closed form or quadrature) when one exists.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransformValue<T> {
    pub value: T,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub cross_check: Option<T>,
}

/// `x -> f(|x|)`.
pub fn symmetrize(f: &TestFunction) -> impl Fn(f64) -> f64 + Send + Sync + '_ {
    move |x: f64| f.value_at(x.abs())
}

/// `2 int_0^inf cos(2 pi x y) f(y) dy`. Uses the analytic transform when the
/// function carries one, with the quadrature value as cross-check.
pub fn fourier_cosine(f: &TestFunction, x: f64, q: &QuadratureSpec) -> Result<TransformValue<f64>> {
    let quad = fourier_cosine_quadrature(f, x, q)?;
    match f.fourier_at(x) {
        Some(v) => Ok(TransformValue {
            value: v,
            error_estimate: 0.0,
            evaluations: quad.evaluations,
            cross_check: Some(quad.value),
        }),
        None => Ok(quad),
    }
}

const MAX_DIRECT_PANELS: f64 = 4000.0;

/// Purely numerical Fourier-cosine transform.
pub fn fourier_cosine_quadrature(f: &TestFunction, x: f64, q: &QuadratureSpec) -> Result<TransformValue<f64>> {
    q.validate()?;
    if !x.is_finite() {
        return Err(Error::domain("Fourier argument must be finite"));
    }
    let x = x.abs();
    let tol = q.tolerance();
    let goal = 0.1 * tol.abs;
    let (x_env, tail_of) = match q.tail_strategy {
        TailStrategy::None => (q.upper_truncation, None),
        _ => {
            let env = f
                .tail_envelope(q)?
                .ok_or_else(|| Error::precondition("no envelope"))?;
            let tail = move |t: f64| 2.0 * env.tail_integral(0.0, t);
            let xe = truncation_point(tail, goal, 1.0, q.upper_truncation);
            (xe, Some(tail))
        }
    };
    let tail_bound = tail_of.map(|t| t(x_env)).unwrap_or(0.0);
    let g = |y: f64| 2.0 * (2.0 * PI * x * y).cos() * f.value_at(y);
    let mut fixed: Vec<f64> = f.breakpoints().iter().copied().filter(|&b| b > 0.0).collect();

    if x * x_env <= MAX_DIRECT_PANELS {
        let mut pts = vec![0.0, x_env];
        pts.append(&mut fixed);
        if x > 0.0 {
            // zeros of the cosine
            let mut j = 0.0;
            loop {
                let z = (2.0 * j + 1.0) / (4.0 * x);
                if z >= x_env {
                    break;
                }
                pts.push(z);
                j += 1.0;
            }
        }
        let mut y = 1.0;
        while y < x_env {
            pts.push(y);
            y *= 2.0;
        }
        let body = integrate(g, &pts, tol.scaled(0.5), q.max_subdivisions.max(pts.len() * 4));
        return finish("Fourier-cosine quadrature", body, tail_bound, q);
    }

    // Long oscillatory tail: sum half-period panels and extrapolate.
    let half = 1.0 / (2.0 * x);
    let first_zero = 1.0 / (4.0 * x);
    let mut start = first_zero;
    let settle = fixed.iter().copied().fold(1.0f64, f64::max);
    while start < settle {
        start += half;
    }
    let mut head_pts = vec![0.0, start];
    head_pts.extend(fixed.iter().copied().filter(|&b| b < start));
    let mut z = first_zero;
    while z < start {
        head_pts.push(z);
        z += half;
    }
    let head = integrate(&g, &head_pts, tol.scaled(0.25), q.max_subdivisions.max(head_pts.len() * 4));
    let tail = alternating_tail(&g, start, half, tol.scaled(0.75), 400);
    let body = head.combine(tail);
    finish("Fourier-cosine quadrature", body, 0.0, q)
}

fn finish<T: Scalar>(what: &str, body: Integral<T>, tail: f64, q: &QuadratureSpec) -> Result<TransformValue<T>> {
    let error = body.error + tail;
    let target = q.tolerance().target(body.value.abs());
    if !body.converged || !(error <= target.max(q.abs_tol)) {
        return Err(Error::NonConvergence {
            what: what.to_string(),
            achieved: error,
            requested: target,
        });
    }
    Ok(TransformValue {
        value: body.value,
        error_estimate: error,
        evaluations: body.evaluations,
        cross_check: None,
    })
}

/// `int_0^inf x^(s-1) f(x) dx` by quadrature, split at `q.split_point`. The
/// analytic companion, when present, is reported as cross-check.
pub fn mellin(f: &TestFunction, s: C64, q: &QuadratureSpec) -> Result<TransformValue<C64>> {
    q.validate()?;
    if !(s.re > 0.0) || !s.im.is_finite() {
        return Err(Error::domain(format!("Mellin transform needs Re s > 0, got {s}")));
    }
    let w = s - 1.0;
    let a = q.split_point;
    let tol = q.tolerance();
    let g = |x: f64| c(f.value_at(x), 0.0);
    let lower = power_weighted_lower(g, w, a, f.near_zero(), f.breakpoints(), tol.scaled(0.5), q.max_subdivisions)?;
    let env = f.tail_envelope(q)?;
    let cap = q.upper_truncation;
    let k = w.re;
    let upper = match env {
        Some(env) => power_weighted_upper(g, w, a, |x| env.tail_integral(k, x), cap, f.breakpoints(), tol.scaled(0.5), q.max_subdivisions)?,
        None => power_weighted_upper(g, w, a, |x| if x < cap { f64::INFINITY } else { 0.0 }, cap, f.breakpoints(), tol.scaled(0.5), q.max_subdivisions)?,
    };
    let total = lower.combine(upper);
    let mut out = finish("Mellin quadrature", total, 0.0, q)?;
    out.cross_check = match f.mellin_at(s) {
        Some(Ok(v)) => Some(v),
        _ => None,
    };
    Ok(out)
}

/// `sum_{n>=1} f(n x)`, stopped once the weighted-supremum tail bound drops
/// below `sp.tail_tol`.
pub fn theta(f: &TestFunction, x: f64, sp: &SeriesSpec) -> Result<TransformValue<f64>> {
    sp.validate()?;
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("theta needs x > 0, got {x}")));
    }
    let env = f.require_envelope()?;
    let l = sp.tail_exponent;
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut remainder = f64::INFINITY;
    let mut n = 0usize;
    while n < sp.max_terms {
        n += 1;
        let term = f.value_at(n as f64 * x);
        // Neumaier compensated summation
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
        if n < 64 || n % 64 == 0 {
            remainder = env.theta_remainder(x, n, l);
            if remainder < sp.tail_tol {
                break;
            }
        }
    }
    if !(remainder < sp.tail_tol) {
        remainder = env.theta_remainder(x, n, l);
        if !(remainder < sp.tail_tol) {
            return Err(Error::NonConvergence {
                what: format!("theta series of {} at x = {x}", f.name()),
                achieved: remainder,
                requested: sp.tail_tol,
            });
        }
    }
    Ok(TransformValue {
        value: sum + comp,
        error_estimate: remainder,
        evaluations: n,
        cross_check: f.theta_closed_form(x),
    })
}

/// θ(f)(x) from the closed form when present, otherwise by the series.
pub(crate) fn theta_value(f: &TestFunction, x: f64, sp: &SeriesSpec) -> Result<(f64, f64)> {
    match f.theta_closed_form(x) {
        Some(v) => Ok((v, 0.0)),
        None => theta(f, x, sp).map(|t| (t.value, t.error_estimate)),
    }
}

/// `int_1^inf x^w theta(f)(scale x) dx`, truncated with the theta tail bound
/// of the declared envelope.
pub(crate) fn theta_weighted_integral(
    f: &TestFunction,
    scale: f64,
    w: C64,
    q: &QuadratureSpec,
    sp: &SeriesSpec,
) -> Result<Integral<C64>> {
    let inner = SeriesSpec {
        tail_tol: sp.tail_tol.min(0.01 * q.abs_tol),
        ..*sp
    };
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let g = |x: f64| match theta_value(f, scale * x, &inner) {
        Ok((v, _)) => c(v, 0.0),
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            c(f64::NAN, 0.0)
        }
    };
    let k = w.re;
    let tol = q.tolerance();
    let cap = q.upper_truncation;
    let body = match f.tail_envelope(q)? {
        Some(env) => {
            let tail = |x: f64| scale.powf(-(k + 1.0)) * env.theta_tail_integral(k, scale * x);
            power_weighted_upper(g, w, 1.0, tail, cap, &[], tol, q.max_subdivisions)?
        }
        None => power_weighted_upper(g, w, 1.0, |x| if x < cap { f64::INFINITY } else { 0.0 }, cap, &[], tol, q.max_subdivisions)?,
    };
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    body.require(&format!("theta integral of {}", f.name()), tol)
}

#[cfg(test)]
mod tests;
