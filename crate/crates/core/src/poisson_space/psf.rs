use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::transforms::{theta, SeriesSpec};

use super::{check_membership, SamplingGrid, TestFunction};

/// Both forms of the summation identity at 1.
///
/// The asserted identity is the two-sided one,
/// `2 θ(f)(1) + f(0) = 2 θ(f̂)(1) + f̂(0)`. The one-sided combination
/// `θ(f)(1) + f(0)` and its counterpart are reported alongside.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsfReport {
    pub name: String,
    pub theta: f64,
    pub fourier_theta: f64,
    pub value_at_zero: f64,
    pub fourier_at_zero: f64,
    pub two_sided_lhs: f64,
    pub two_sided_rhs: f64,
    pub residual: f64,
    pub one_sided_lhs: f64,
    pub one_sided_rhs: f64,
    pub one_sided_residual: f64,
    pub series_error: f64,
    pub terms: usize,
}

/// Summation-formula residual of a member of the space. Fails with a
/// membership error for non-members.
pub fn psf_residual(f: &TestFunction, sp: &SeriesSpec) -> Result<PsfReport> {
    let report = check_membership(f, &SamplingGrid::default());
    if !report.member {
        return Err(Error::Membership {
            name: f.name().to_string(),
            failed: report.failed(),
        });
    }
    let fhat = f
        .fourier_function()
        .ok_or_else(|| Error::precondition(format!("{} carries no analytic transform", f.name())))?;
    let t = theta(f, 1.0, sp)?;
    let th = theta(&fhat, 1.0, sp)?;
    let f0 = f.value_at(0.0);
    let fh0 = fhat.value_at(0.0);
    let two_sided_lhs = 2.0 * t.value + f0;
    let two_sided_rhs = 2.0 * th.value + fh0;
    let one_sided_lhs = t.value + f0;
    let one_sided_rhs = th.value + fh0;
    Ok(PsfReport {
        name: f.name().to_string(),
        theta: t.value,
        fourier_theta: th.value,
        value_at_zero: f0,
        fourier_at_zero: fh0,
        two_sided_lhs,
        two_sided_rhs,
        residual: (two_sided_lhs - two_sided_rhs).abs(),
        one_sided_lhs,
        one_sided_rhs,
        one_sided_residual: (one_sided_lhs - one_sided_rhs).abs(),
        series_error: 2.0 * (t.error_estimate + th.error_estimate),
        terms: t.evaluations + th.evaluations,
    })
}

/// `|2 θ(f)(a) + f(0) - (2 θ(f̂)(1/a) + f̂(0)) / a|`.
pub fn psf_scaled_residual(f: &TestFunction, a: f64, sp: &SeriesSpec) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::domain(format!("scale must be positive, got {a}")));
    }
    let fhat = f
        .fourier_function()
        .ok_or_else(|| Error::precondition(format!("{} carries no analytic transform", f.name())))?;
    let lhs = 2.0 * theta(f, a, sp)?.value + f.value_at(0.0);
    let rhs = (2.0 * theta(&fhat, 1.0 / a, sp)?.value + fhat.value_at(0.0)) / a;
    Ok((lhs - rhs).abs())
}
