use std::f64::consts::{E, PI};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use statrs::function::erf::erf;

use crate::complex::{c, C64};
use crate::error::{Error, Result};
use crate::quadrature::{integrate, power_weighted_lower, NearZero, QuadratureSpec, Tolerance};
use crate::special_functions::gamma;

use super::brownian::{draw_cell, marginal_sample};
use super::levy::{levy_moment, LevyMoment};
use super::mc::{check_samples, fan_out, MCEstimate, Moments};
use super::{gaussian_weight, MomentFunction};

/// `E|N(mu, sigma^2)| = sigma sqrt(2/pi) exp(-mu^2/(2 sigma^2)) + mu erf(mu/(sigma sqrt 2))`.
pub fn folded_normal_mean(mu: f64, sigma: f64) -> Result<f64> {
    if !(sigma > 0.0) || !sigma.is_finite() || !mu.is_finite() {
        return Err(Error::domain(format!("folded normal needs sigma > 0, got {sigma}")));
    }
    Ok(folded(mu, sigma))
}

fn folded(mu: f64, sigma: f64) -> f64 {
    if sigma == 0.0 {
        return mu.abs();
    }
    sigma * (2.0 / PI).sqrt() * (-mu * mu / (2.0 * sigma * sigma)).exp() + mu * erf(mu / (sigma * 2f64.sqrt()))
}

/// Default Lévy parameter of the lower bound, which assumes `y0 > 1`.
pub const DEFAULT_Y0: f64 = 2.0;

/// Pieces of the Brownian characteristic number `b_u` and its bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BsReport {
    pub u: f64,
    pub y0: f64,
    pub drift: String,
    /// `int_0^inf x^(u-1) G(x) E|B^m_sqrt(x)| dx` with `Var B_sqrt(x) = sqrt(x)`.
    pub direct: f64,
    pub direct_error: f64,
    /// The same with variance `x`.
    pub direct_variance_x: f64,
    /// `int_0^inf x^(u-1) G(x) m(x) dx`.
    pub upper_drift_piece: f64,
    /// `int_0^inf x^(u-1) G(x) E|B^0_sqrt(x)| dx`.
    pub upper_brownian_piece: f64,
    pub upper_bound: f64,
    /// `E(L^u) (2 y0^-2 max(x^2 G) + 2 max(x G))`, finite only for `u < 1/2`.
    pub levy_upper_piece: Option<f64>,
    pub levy_factor: LevyMoment,
    /// `int_1^inf x^(u-1) G(x) E|B^0_sqrt(x)| dx`.
    pub lower_tail: f64,
    /// `2 min_{x>=1} x^2 G(x) + 2 min_{x>=1} x G(x)`, which is 0.
    pub lower_prefactor: f64,
    /// Prefactor times `E(L^u)`; absent when that is `0 * inf`.
    pub lower_bound: Option<f64>,
    pub bound_ordering_holds: bool,
}

/// `b_s_components_with(u, m, q, DEFAULT_Y0)`.
pub fn b_s_components(u: f64, m: &MomentFunction, q: &QuadratureSpec) -> Result<BsReport> {
    b_s_components_with(u, m, q, DEFAULT_Y0)
}

pub fn b_s_components_with(u: f64, m: &MomentFunction, q: &QuadratureSpec, y0: f64) -> Result<BsReport> {
    if !(u > 0.0 && u < 1.0) {
        return Err(Error::domain(format!("b_s needs 0 < u < 1, got {u}")));
    }
    q.validate()?;
    let tol = q.tolerance();
    let w = c(u - 1.0, 0.0);
    let l = m.lipschitz_bound();
    let root_two_over_pi = (2.0 / PI).sqrt();
    let kinks: Vec<f64> = m.breakpoints().iter().map(|b| b * b).collect();

    let lower_piece = |g: &dyn Fn(f64) -> f64, near: NearZero, breaks: &[f64], what: &str| -> Result<(f64, f64)> {
        let r = power_weighted_lower(|x| c(g(x), 0.0), w, 1.0, near, breaks, tol.scaled(0.5), q.max_subdivisions)?
            .require(what, tol)?;
        Ok((r.value.re, r.error))
    };
    let tail_piece = |power: f64| -> Result<(f64, f64)> {
        let f = |x: f64| x.powf(u - 1.0 + power) * gaussian_weight(x) * root_two_over_pi;
        let r = integrate(f, &[1.0, 2.0, 4.0, 8.0], tol.scaled(0.5), q.max_subdivisions).require("b_s tail", tol)?;
        // beyond 8 the integrand is below e^-200
        Ok((r.value, r.error))
    };

    let near_quarter = NearZero {
        g0: 1.0,
        holder: PI + l + 1.0,
        exponent: 0.25,
    };
    let g_direct = |x: f64| gaussian_weight(x) * folded(m.value_at(x.sqrt()), x.powf(0.25));
    let (head, head_err) = lower_piece(&g_direct, near_quarter, &kinks, "b_s direct")?;
    let (tail, tail_err) = tail_piece(0.25)?;
    let near_half = NearZero { exponent: 0.5, ..near_quarter };
    let g_var_x = |x: f64| gaussian_weight(x) * folded(m.value_at(x.sqrt()), x.sqrt());
    let (head_x, _) = lower_piece(&g_var_x, near_half, &kinks, "b_s direct, variance x")?;
    let (tail_x, _) = tail_piece(0.5)?;

    let near_drift = NearZero {
        g0: 1.0,
        holder: PI + l,
        exponent: 1.0,
    };
    let g_drift = |x: f64| gaussian_weight(x) * m.value_at(x);
    let (drift_piece, _) = lower_piece(&g_drift, near_drift, m.breakpoints(), "b_s drift piece")?;
    // sqrt(2/pi) int x^(u-3/4) e^(-pi x^2) = sqrt(2/pi) pi^(-(u+1/4)/2) Γ((u+1/4)/2)/2
    let a = u + 0.25;
    let brownian_piece = root_two_over_pi * 0.5 * PI.powf(-0.5 * a) * gamma(c(0.5 * a, 0.0))?.re;

    let levy = levy_moment(u, y0, q)?;
    let max_x2g = 1.0 / (PI * E);
    let max_xg = (-0.5f64).exp() / (2.0 * PI).sqrt();
    let levy_upper_piece = levy.value().map(|e| e * (2.0 * max_x2g / (y0 * y0) + 2.0 * max_xg));
    // x^2 G(x) and x G(x) tend to 0, so their infima over [1, inf) vanish
    let lower_prefactor = 0.0;
    let lower_bound = levy.value().map(|e| lower_prefactor * e);

    let direct = head + tail;
    let upper_bound = drift_piece + brownian_piece;
    Ok(BsReport {
        u,
        y0,
        drift: m.name().to_string(),
        direct,
        direct_error: head_err + tail_err,
        direct_variance_x: head_x + tail_x,
        upper_drift_piece: drift_piece,
        upper_brownian_piece: brownian_piece,
        upper_bound,
        levy_upper_piece,
        levy_factor: levy,
        lower_tail: tail,
        lower_prefactor,
        lower_bound,
        bound_ordering_holds: direct <= upper_bound * (1.0 + 1e-12),
    })
}

fn check_strip(s: C64) -> Result<()> {
    if !(s.re > 0.0 && s.re < 1.0) || !s.im.is_finite() {
        return Err(Error::domain(format!("needs 0 < Re s < 1, got {s}")));
    }
    Ok(())
}

/// `int_0^1 x^(s-1) G(x) m(sqrt x)/2 dx`, the mean of `int x^(s-1) p(x) dx`
/// under the measure (only the first cell contributes).
pub fn m_s_value(s: C64, m: &MomentFunction, q: &QuadratureSpec) -> Result<C64> {
    m_s_integral(s, m, q).map(|(v, _)| v)
}

pub(crate) fn m_s_integral(s: C64, m: &MomentFunction, q: &QuadratureSpec) -> Result<(C64, f64)> {
    check_strip(s)?;
    let near = NearZero {
        g0: 0.5,
        holder: 0.5 * (PI + m.lipschitz_bound()),
        exponent: 0.5,
    };
    let kinks: Vec<f64> = m.breakpoints().iter().map(|b| b * b).collect();
    let tol: Tolerance = q.tolerance();
    let r = power_weighted_lower(
        |x| c(0.5 * gaussian_weight(x) * m.value_at(x.sqrt()), 0.0),
        s - 1.0,
        1.0,
        near,
        &kinks,
        tol,
        q.max_subdivisions,
    )?
    .require("m_s integral", tol)?;
    Ok((r.value, r.error))
}

/// Monte Carlo estimate of `m_s` by sampling the process: `x = V^(1/u)` with
/// `V` uniform, weight `x^(i v)/u`. Returns the real and imaginary parts.
pub fn m_s_mc(s: C64, m: &MomentFunction, samples: u64, seed: u64, workers: usize) -> Result<(MCEstimate, MCEstimate)> {
    check_strip(s)?;
    check_samples(samples, workers)?;
    let (u, v) = (s.re, s.im);
    let draw = |rng: &mut ChaCha8Rng| -> C64 {
        let x = rng.random::<f64>().powf(1.0 / u);
        let n = draw_cell(rng);
        let p = marginal_sample(x, n, m, rng);
        let phase = v * x.ln();
        c(phase.cos(), phase.sin()) * (p / u)
    };
    let parts = fan_out(samples, seed, workers, |rng, count| {
        let (mut re, mut im) = (Moments::default(), Moments::default());
        for _ in 0..count {
            let z = draw(rng);
            re.push(z.re);
            im.push(z.im);
        }
        (re, im)
    });
    let (re, im) = parts
        .into_iter()
        .fold((Moments::default(), Moments::default()), |(a, b), (x, y)| (a.merge(x), b.merge(y)));
    Ok((re.estimate(seed), im.estimate(seed)))
}
