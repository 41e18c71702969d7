use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::complex::c;
use crate::error::{Error, Result};
use crate::quadrature::{integrate, Integral, QuadratureSpec, Tolerance};
use crate::special_functions::gamma;

/// `y0 exp(-y0^2/(2x)) / (sqrt(2 pi) x^(3/2))`, the 1/2-stable law.
pub fn levy_density(x: f64, y0: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("Lévy density needs x > 0, got {x}")));
    }
    if !(y0 > 0.0) || !y0.is_finite() {
        return Err(Error::domain(format!("Lévy parameter must be positive, got {y0}")));
    }
    Ok(y0 * (-y0 * y0 / (2.0 * x)).exp() / ((2.0 * PI).sqrt() * x.powf(1.5)))
}

/// `(y0^2/2)^u Γ(1/2 - u)/sqrt(pi)` for `u < 1/2`.
pub fn levy_moment_closed_form(u: f64, y0: f64) -> Result<f64> {
    if !(u < 0.5) {
        return Err(Error::domain(format!("moment of order {u} is infinite")));
    }
    Ok((0.5 * y0 * y0).powf(u) * gamma(c(0.5 - u, 0.0))?.re / PI.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Converged,
    Diverging,
    Inconclusive,
}

/// Partial integrals over a truncation ladder and the growth fitted to them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivergenceDiagnostic {
    pub truncations: Vec<f64>,
    pub partial_values: Vec<f64>,
    pub verdict: Verdict,
    /// Fitted exponent `k` of the increments, `P(10T) - P(T) ~ T^k`.
    pub growth_exponent_estimate: f64,
    pub r_squared: f64,
    /// Increments constant in `log T`: partial values grow like `log T`.
    pub log_growth: bool,
}

pub const DEFAULT_LADDER: [f64; 5] = [1e2, 1e3, 1e4, 1e5, 1e6];

const EXPONENT_BAND: f64 = 0.02;
const MIN_R2: f64 = 0.99;

fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    (slope, r2)
}

/// Classifies a nondecreasing sequence of partial integrals. Increments
/// decaying like a negative power mean convergence, growing like a positive
/// power mean divergence; increments flat within the band are logarithmic
/// growth, also divergent. The ladder cannot tell exponents within the band
/// of zero apart from logarithmic growth.
pub fn diagnose(truncations: &[f64], partial_values: &[f64]) -> Result<DivergenceDiagnostic> {
    if truncations.len() < 3 || truncations.len() != partial_values.len() {
        return Err(Error::precondition("need at least three truncations with matching values"));
    }
    let inc: Vec<f64> = partial_values.windows(2).map(|w| w[1] - w[0]).collect();
    let log_t: Vec<f64> = truncations[1..].iter().map(|t| t.ln()).collect();
    let mut diag = DivergenceDiagnostic {
        truncations: truncations.to_vec(),
        partial_values: partial_values.to_vec(),
        verdict: Verdict::Inconclusive,
        growth_exponent_estimate: f64::NAN,
        r_squared: 0.0,
        log_growth: false,
    };
    if inc.iter().any(|&d| !(d > 0.0)) {
        if inc.iter().all(|&d| d.abs() == 0.0) {
            diag.verdict = Verdict::Converged;
            diag.growth_exponent_estimate = f64::NEG_INFINITY;
            diag.r_squared = 1.0;
        }
        return Ok(diag);
    }
    let log_inc: Vec<f64> = inc.iter().map(|d| d.ln()).collect();
    // increments over a geometric ladder: log dP = k log T + const
    let (k, r2) = linear_fit(&log_t, &log_inc);
    diag.growth_exponent_estimate = k;
    diag.r_squared = r2;
    let all_log_t: Vec<f64> = truncations.iter().map(|t| t.ln()).collect();
    let (slope, r2_log) = linear_fit(&all_log_t, partial_values);
    if k.abs() <= EXPONENT_BAND {
        if r2_log > MIN_R2 && slope > 0.0 {
            diag.log_growth = true;
            diag.verdict = Verdict::Diverging;
            diag.r_squared = r2_log;
        }
    } else if r2 > MIN_R2 {
        diag.verdict = if k > 0.0 { Verdict::Diverging } else { Verdict::Converged };
    }
    Ok(diag)
}

/// Either a finite moment or the evidence of divergence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum LevyMoment {
    Finite {
        value: f64,
        error: f64,
        closed_form: f64,
    },
    Divergent(DivergenceDiagnostic),
}

impl LevyMoment {
    pub fn value(&self) -> Option<f64> {
        match self {
            LevyMoment::Finite { value, .. } => Some(*value),
            LevyMoment::Divergent(_) => None,
        }
    }

    pub fn verdict(&self) -> Verdict {
        match self {
            LevyMoment::Finite { .. } => Verdict::Converged,
            LevyMoment::Divergent(d) => d.verdict,
        }
    }
}

/// `int_{x_lo}^{exp(y_max)} x^u d(x) dx` on the scale `x = e^y`.
fn log_scale_integral(u: f64, y0: f64, y_max: f64, tol: Tolerance, max_subdivisions: usize) -> Integral<f64> {
    let a = 0.5 * y0 * y0;
    let norm = y0 / (2.0 * PI).sqrt();
    // exp(-a e^-y) < e^-400 below this point
    let y_lo = (a / 400.0).ln();
    let f = |y: f64| norm * ((u - 0.5) * y - a * (-y).exp()).exp();
    let mut pts = vec![y_lo, y_max];
    let mut y = y_lo.ceil();
    while y < y_max {
        pts.push(y);
        y += 1.0;
    }
    integrate(f, &pts, tol, max_subdivisions.max(pts.len() * 4))
}

/// Partial integrals of `x^u d(x)` up to each truncation.
pub fn levy_ladder(u: f64, y0: f64, truncations: &[f64], q: &QuadratureSpec) -> Result<Vec<f64>> {
    levy_density(1.0, y0)?;
    let tol = q.tolerance();
    truncations
        .iter()
        .map(|&t| {
            if !(t > 0.0) {
                return Err(Error::domain("truncations must be positive"));
            }
            Ok(log_scale_integral(u, y0, t.ln(), tol, q.max_subdivisions)
                .require("Lévy partial integral", tol)?
                .value)
        })
        .collect()
}

/// `E(L^u)`: quadrature with an analytic tail bound for `u < 1/2`, the
/// divergence ladder otherwise.
pub fn levy_moment(u: f64, y0: f64, q: &QuadratureSpec) -> Result<LevyMoment> {
    q.validate()?;
    levy_density(1.0, y0)?;
    if !u.is_finite() {
        return Err(Error::domain("moment order must be finite"));
    }
    if u >= 0.5 {
        let partial = levy_ladder(u, y0, &DEFAULT_LADDER, q)?;
        return Ok(LevyMoment::Divergent(diagnose(&DEFAULT_LADDER, &partial)?));
    }
    let tol = q.tolerance();
    let rate = 0.5 - u;
    let norm = y0 / (2.0 * PI).sqrt();
    let goal = 0.1 * tol.abs;
    // tail int_Y^inf norm e^((u-1/2) y) dy = norm e^(-rate Y)/rate
    let y_max = ((norm / (rate * goal)).ln() / rate).max((0.5 * y0 * y0).ln() + 5.0);
    let tail = norm * (-rate * y_max).exp() / rate;
    let body = log_scale_integral(u, y0, y_max, tol.scaled(0.5), q.max_subdivisions).require("Lévy moment", tol)?;
    Ok(LevyMoment::Finite {
        value: body.value,
        error: body.error + tail,
        closed_form: levy_moment_closed_form(u, y0)?,
    })
}
