use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::complex::{c, ComplexPoint, C64};
use crate::error::{Error, Result};

use super::gamma::ln_gamma;
use super::zeta::{riemann_zeta, zeta_h};

/// |ζ| below which a refined point counts as a zero.
pub const ZERO_TOLERANCE: f64 = 1e-6;
const BRACKET_TOLERANCE: f64 = 1e-9;

/// A zero of ζ on the critical line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroRecord {
    pub ordinate: f64,
    pub location: ComplexPoint,
    pub zeta_magnitude: f64,
    pub bracket_width: f64,
}

/// Riemann-Siegel theta: Im ln Γ(1/4 + it/2) - (t/2) ln π.
pub fn hardy_theta(t: f64) -> f64 {
    let lg = ln_gamma(c(0.25, 0.5 * t)).expect("1/4 + it/2 is never a pole");
    lg.im - 0.5 * t * PI.ln()
}

/// Hardy's Z(t) = e^(iθ(t)) ζ(1/2 + it), real for real t.
pub fn hardy_z(t: f64) -> f64 {
    let zeta = riemann_zeta(c(0.5, t)).expect("critical line avoids the pole");
    let rotated = C64::from_polar(1.0, hardy_theta(t)) * zeta;
    debug_assert!(
        rotated.im.abs() < 1e-10 * zeta.norm().max(1.0),
        "Z({t}) has imaginary part {}",
        rotated.im
    );
    rotated.re
}

fn refine(mut lo: f64, mut hi: f64, mut z_lo: f64) -> f64 {
    while hi - lo > BRACKET_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        let z_mid = hardy_z(mid);
        if z_mid == 0.0 {
            return mid;
        }
        if (z_mid < 0.0) == (z_lo < 0.0) {
            lo = mid;
            z_lo = z_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Sign changes of Z on the grid `t_min, t_min + step, ...` refined by bisection.
pub fn zero_scan(t_min: f64, t_max: f64, step: f64) -> Result<Vec<ZeroRecord>> {
    if !(t_min < t_max) || !(step > 0.0) || !t_min.is_finite() || !t_max.is_finite() {
        return Err(Error::precondition(format!(
            "zero_scan needs t_min < t_max and step > 0 (got {t_min}, {t_max}, {step})"
        )));
    }
    let count = ((t_max - t_min) / step).floor() as usize;
    let mut grid: Vec<f64> = (0..=count).map(|j| t_min + j as f64 * step).collect();
    if *grid.last().unwrap() < t_max {
        grid.push(t_max);
    }
    let values: Vec<f64> = grid.iter().map(|&t| hardy_z(t)).collect();
    let mut out = Vec::new();
    for j in 0..grid.len() - 1 {
        let (a, b) = (values[j], values[j + 1]);
        let ordinate = if a == 0.0 {
            grid[j]
        } else if (a < 0.0) != (b < 0.0) && b != 0.0 {
            refine(grid[j], grid[j + 1], a)
        } else {
            continue;
        };
        if ordinate <= 0.0 {
            continue;
        }
        let location = ComplexPoint::new(0.5, ordinate)?;
        let zeta_magnitude = riemann_zeta(location.to_c64())?.norm();
        if zeta_magnitude >= ZERO_TOLERANCE {
            return Err(Error::NonConvergence {
                what: format!("zero refinement near t = {ordinate}"),
                achieved: zeta_magnitude,
                requested: ZERO_TOLERANCE,
            });
        }
        out.push(ZeroRecord {
            ordinate,
            location,
            zeta_magnitude,
            bracket_width: BRACKET_TOLERANCE,
        });
    }
    Ok(out)
}

/// N(T) = θ(T)/π + 1 + S(T), with S(T) = arg ζ(1/2 + iT)/π followed
/// continuously from 2 + iT.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroCount {
    pub height: f64,
    pub theta_over_pi: f64,
    pub s_term: f64,
    pub estimate: f64,
    pub count: usize,
}

pub fn riemann_von_mangoldt_count(height: f64) -> Result<ZeroCount> {
    if !(height > 0.0) {
        return Err(Error::precondition("count height must be positive"));
    }
    let steps = 600;
    let mut prev = riemann_zeta(c(2.0, height))?;
    let mut arg = prev.arg();
    for j in 1..=steps {
        let sigma = 2.0 - 1.5 * j as f64 / steps as f64;
        let cur = riemann_zeta(c(sigma, height))?;
        if cur.norm() < 1e-12 {
            return Err(Error::precondition(format!("ζ vanishes on the count path at height {height}")));
        }
        arg += (cur / prev).arg();
        prev = cur;
    }
    let theta_over_pi = hardy_theta(height) / PI;
    let s_term = arg / PI;
    let estimate = theta_over_pi + 1.0 + s_term;
    Ok(ZeroCount {
        height,
        theta_over_pi,
        s_term,
        estimate,
        count: estimate.round().max(0.0) as usize,
    })
}

/// Axis-parallel rectangle in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rectangle {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

/// Winding number of f around 0 along the boundary of `rect`, with segments
/// subdivided until each step turns by less than π/4.
pub fn winding_number<F>(f: F, rect: Rectangle, per_side: usize) -> Result<i64>
where
    F: Fn(C64) -> Result<C64>,
{
    let corners = [
        c(rect.re_min, rect.im_min),
        c(rect.re_max, rect.im_min),
        c(rect.re_max, rect.im_max),
        c(rect.re_min, rect.im_max),
    ];
    let mut total = 0.0;
    for k in 0..4 {
        let (a, b) = (corners[k], corners[(k + 1) % 4]);
        let n = per_side.max(1);
        let mut stack: Vec<(C64, C64, C64, C64, u32)> = Vec::new();
        for j in (0..n).rev() {
            let z0 = a + (b - a) * (j as f64 / n as f64);
            let z1 = a + (b - a) * ((j + 1) as f64 / n as f64);
            stack.push((z0, z1, f(z0)?, f(z1)?, 0));
        }
        while let Some((z0, z1, f0, f1, depth)) = stack.pop() {
            if f0.norm() < 1e-300 || f1.norm() < 1e-300 {
                return Err(Error::precondition("function vanishes on the contour"));
            }
            let turn = (f1 / f0).arg();
            if turn.abs() < PI / 4.0 || depth >= 30 {
                total += turn;
            } else {
                let zm = 0.5 * (z0 + z1);
                let fm = f(zm)?;
                stack.push((zm, z1, fm, f1, depth + 1));
                stack.push((z0, zm, f0, fm, depth + 1));
            }
        }
    }
    Ok((total / (2.0 * PI)).round() as i64)
}

/// One horizontal strip of the ζ_H zero scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZetaHCell {
    pub rect: Rectangle,
    pub zeros: i64,
}

/// Argument-principle count of ζ_H zeros in stacked cells of height
/// `cell_height` covering `rect`. Exploratory; no location is asserted.
pub fn zeta_h_zero_scan(rect: Rectangle, cell_height: f64) -> Result<Vec<ZetaHCell>> {
    if !(rect.re_min < rect.re_max && rect.im_min < rect.im_max && cell_height > 0.0) {
        return Err(Error::precondition("degenerate scan rectangle"));
    }
    let mut cells = Vec::new();
    let mut lo = rect.im_min;
    while lo < rect.im_max {
        let hi = (lo + cell_height).min(rect.im_max);
        let cell = Rectangle {
            im_min: lo,
            im_max: hi,
            ..rect
        };
        let per_side = (((hi - lo).max(rect.re_max - rect.re_min)) * 8.0).ceil() as usize;
        let zeros = winding_number(zeta_h, cell, per_side)?;
        cells.push(ZetaHCell { rect: cell, zeros });
        lo = hi;
    }
    Ok(cells)
}
