use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::complex::C64;
use crate::error::{Error, Result};
use crate::poisson_space::builtins::hermite_even;
use crate::quadrature::QuadratureSpec;
use crate::report::{Diagnostics, ReportVariant, ResidualReport};
use crate::special_functions::riemann_zeta;

use super::{fourier_cosine_quadrature, mellin, theta_weighted_integral, SeriesSpec};

/// Which even Hermite-type function `H_p^n` denotes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HermiteKind {
    /// n-th derivative of `exp(-p^2 x^2)`.
    Derivative,
    /// `H_n(sqrt(2) p x) exp(-p^2 x^2)`, a true eigenfunction of the scaled transform.
    Eigen,
}

/// Physicists' Hermite polynomial by the three-term recurrence.
pub fn hermite_polynomial(n: usize, x: f64) -> f64 {
    let mut h0 = 1.0;
    if n == 0 {
        return h0;
    }
    let mut h1 = 2.0 * x;
    for k in 1..n {
        let h2 = 2.0 * x * h1 - 2.0 * k as f64 * h0;
        h0 = h1;
        h1 = h2;
    }
    h1
}

/// Monomial coefficients of `H_n`.
pub(crate) fn hermite_coefficients(n: usize) -> Vec<f64> {
    let mut prev = vec![1.0];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![0.0, 2.0];
    for k in 1..n {
        let mut next = vec![0.0; k + 2];
        for (j, &a) in cur.iter().enumerate() {
            next[j + 1] += 2.0 * a;
        }
        for (j, &a) in prev.iter().enumerate() {
            next[j] -= 2.0 * k as f64 * a;
        }
        prev = cur;
        cur = next;
    }
    cur
}

pub(crate) fn check_even(n: usize, p: f64) -> Result<()> {
    if n % 2 != 0 {
        return Err(Error::domain(format!(
            "odd order {n} has imaginary eigenvalues; only even n is supported"
        )));
    }
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::domain(format!("scale p must be positive, got {p}")));
    }
    Ok(())
}

/// `d^n/dx^n exp(-p^2 x^2) = (-p)^n H_n(p x) exp(-p^2 x^2)`.
pub fn hermite_fn(n: usize, p: f64, x: f64) -> Result<f64> {
    check_even(n, p)?;
    Ok(p.powi(n as i32) * hermite_polynomial(n, p * x) * (-p * p * x * x).exp())
}

/// `(-1)^(n/2) sqrt(pi)/p`.
pub(crate) fn eigenvalue(n: usize, p: f64) -> f64 {
    let sign = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
    sign * PI.sqrt() / p
}

/// Max over the grid of `|F^p h(x) - lambda h(x)|` where
/// `F^p h(x) = int exp(2 i p^2 x y) h(y) dy`, evaluated by quadrature.
pub fn eigen_check(n: usize, p: f64, kind: HermiteKind, x_grid: &[f64], q: &QuadratureSpec) -> Result<f64> {
    check_even(n, p)?;
    let h = hermite_even(n, p, kind)?.without_companions();
    let lambda = eigenvalue(n, p);
    let mut worst = 0.0f64;
    for &x in x_grid {
        let transformed = fourier_cosine_quadrature(&h, p * p * x / PI, q)?;
        worst = worst.max((transformed.value - lambda * h.value_at(x)).abs());
    }
    Ok(worst)
}

/// Both sides of the eigen-continuation relation for `omega = H_p^n`,
/// evaluated as printed:
/// `sum_{g in {id, 1-s}} |lambda|^(-2 g) M(omega)(g) zeta(g)` against
/// `(lambda+1) omega(0)/(2 s (s-1)) + (1/|lambda| + sgn lambda) int_1^inf theta(omega)(lambda^2 x)(x^(s-1) + sgn lambda x^(-s)) dx`.
pub fn eigen_continuation_residual(
    n: usize,
    p: f64,
    kind: HermiteKind,
    s: C64,
    q: &QuadratureSpec,
    sp: &SeriesSpec,
) -> Result<ResidualReport> {
    check_even(n, p)?;
    if s.norm() == 0.0 {
        return Err(Error::pole("the eigen-continuation relation", s));
    }
    if (s - 1.0).norm() == 0.0 {
        return Err(Error::pole("zeta", s));
    }
    if !(s.re > n as f64) {
        return Err(Error::domain(format!("needs Re s > {n}, got {s}")));
    }
    let omega = hermite_even(n, p, kind)?;
    let lambda = eigenvalue(n, p);
    let abs_l = lambda.abs();
    let sgn = lambda.signum();
    let mut diag = Diagnostics::default();

    let m_s = mellin(&omega, s, q)?;
    diag.lhs_error += m_s.error_estimate;
    diag.evaluations += m_s.evaluations;
    let first = C64::from(abs_l).powc(-2.0 * s) * m_s.value * riemann_zeta(s)?;
    let z = C64::new(1.0, 0.0) - s;
    let second = C64::from(abs_l).powc(-2.0 * z) * mellin_zeta_continued(&omega, z, &mut diag)?;
    let lhs = first + second;

    let constant = (lambda + 1.0) * omega.value_at(0.0) / (2.0 * s * (s - 1.0));
    let scale = lambda * lambda;
    let a = theta_weighted_integral(&omega, scale, s - 1.0, q, sp)?;
    let b = theta_weighted_integral(&omega, scale, -s, q, sp)?;
    diag.rhs_error += a.error + b.error;
    diag.evaluations += a.evaluations + b.evaluations;
    let rhs = constant + (1.0 / abs_l + sgn) * (a.value + sgn * b.value);
    diag.notes.push(format!("lambda = {lambda}"));
    ResidualReport::new(s, lhs, rhs, ReportVariant::Paper, diag)
}

/// `M(omega)(z) zeta(z)` through the analytic Mellin companion, averaging
/// over a small cross of points where a gamma pole meets a trivial zero.
fn mellin_zeta_continued(omega: &crate::poisson_space::TestFunction, z: C64, diag: &mut Diagnostics) -> Result<C64> {
    let eval = |w: C64| -> Result<C64> {
        let m = omega
            .mellin_at(w)
            .ok_or_else(|| Error::precondition(format!("{} has no analytic Mellin continuation", omega.name())))??;
        Ok(m * riemann_zeta(w)?)
    };
    match eval(z) {
        Ok(v) => Ok(v),
        Err(Error::Pole { .. }) => {
            let h = 1e-3;
            let offsets = [C64::new(h, 0.0), C64::new(-h, 0.0), C64::new(0.0, h), C64::new(0.0, -h)];
            let mut acc = C64::new(0.0, 0.0);
            for o in offsets {
                acc += eval(z + o)?;
            }
            diag.notes.push(format!("removable singularity at {z} resolved by symmetric averaging"));
            Ok(acc / 4.0)
        }
        Err(e) => Err(e),
    }
}
