//! Müntz-type functional equations, the rotated-ray continuation of ζ and
//! the trivial zeta.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::complex::{c, C64};
use crate::error::{Error, Result};
use crate::poisson_space::{check_membership, SamplingGrid, TestFunction};
use crate::quadrature::{alternating_tail, integrate, power_weighted_upper, Integral, QuadratureSpec, Tolerance};
use crate::report::{Diagnostics, ReportVariant, ResidualReport};
use crate::special_functions::{bernoulli_ratios, reciprocal_gamma, riemann_zeta};
use crate::transforms::{mellin, theta_value, theta_weighted_integral, SeriesSpec};

/// `Im(s) (2 Re(s) - 1)`.
pub fn trivial_zeta(s: C64) -> f64 {
    s.im * (2.0 * s.re - 1.0)
}

fn check_poles(s: C64, what: &'static str) -> Result<()> {
    if s == c(0.0, 0.0) || s == c(1.0, 0.0) {
        return Err(Error::pole(what, s));
    }
    Ok(())
}

/// `1/(s(s-1))`.
pub fn congruence_zeta_p1(s: C64) -> Result<C64> {
    check_poles(s, "1/(s(s-1))")?;
    Ok(1.0 / (s * (s - 1.0)))
}

/// `Im(1/(s(s-1)))`, which equals `-trivial_zeta(s)/|s(s-1)|^2`.
pub fn im_inverse_pole(s: C64) -> Result<f64> {
    Ok(congruence_zeta_p1(s)?.im)
}

/// Constant term of the relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstantRule {
    /// `1/(s(s-1))`
    Paper,
    /// `p̂(0)/(2(s-1)) - p(0)/(2s)`, from the summation formula
    Derived,
}

/// Second integrand of the relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SecondRule {
    /// `x^-s θ(p̂)(x)`
    ThetaOfFourier,
    /// `x^-s p̂(x)`
    BareFourier,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuntzVariant {
    pub constant: ConstantRule,
    pub second: SecondRule,
}

impl MuntzVariant {
    /// The relation as printed.
    pub fn paper() -> Self {
        MuntzVariant {
            constant: ConstantRule::Paper,
            second: SecondRule::BareFourier,
        }
    }

    /// The form that follows from the summation formula.
    pub fn derived() -> Self {
        MuntzVariant {
            constant: ConstantRule::Derived,
            second: SecondRule::ThetaOfFourier,
        }
    }

    pub fn label(&self) -> ReportVariant {
        match self.constant {
            ConstantRule::Paper => ReportVariant::Paper,
            ConstantRule::Derived => ReportVariant::Derived,
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "paper" => Ok(Self::paper()),
            "derived" => Ok(Self::derived()),
            "paper-constant" => Ok(MuntzVariant {
                constant: ConstantRule::Paper,
                second: SecondRule::ThetaOfFourier,
            }),
            "bare-fourier" => Ok(MuntzVariant {
                constant: ConstantRule::Derived,
                second: SecondRule::BareFourier,
            }),
            other => Err(Error::UnknownName(format!("variant {other}"))),
        }
    }
}

fn require_member(p: &TestFunction) -> Result<()> {
    let report = check_membership(p, &SamplingGrid::default());
    if report.member {
        Ok(())
    } else {
        Err(Error::Membership {
            name: p.name().to_string(),
            failed: report.failed(),
        })
    }
}

fn require_fourier(p: &TestFunction) -> Result<TestFunction> {
    p.fourier_function()
        .ok_or_else(|| Error::precondition(format!("{} carries no analytic transform", p.name())))
}

fn lhs_unchecked(p: &TestFunction, s: C64, q: &QuadratureSpec) -> Result<(C64, f64, usize)> {
    check_poles(s, "zeta")?;
    let m = mellin(p, s, q)?;
    let z = riemann_zeta(s)?;
    Ok((m.value * z, m.error_estimate * z.norm(), m.evaluations))
}

/// `M(p)(s) ζ(s)` with the Mellin transform by quadrature.
pub fn muntz_lhs(p: &TestFunction, s: C64, q: &QuadratureSpec) -> Result<C64> {
    check_poles(s, "zeta")?;
    require_member(p)?;
    Ok(lhs_unchecked(p, s, q)?.0)
}

struct RhsParts {
    constant: C64,
    first: Integral<C64>,
    second: Integral<C64>,
}

fn rhs_parts(p: &TestFunction, s: C64, v: MuntzVariant, q: &QuadratureSpec, sp: &SeriesSpec) -> Result<RhsParts> {
    check_poles(s, "the constant term")?;
    let fhat = require_fourier(p)?;
    let constant = match v.constant {
        ConstantRule::Paper => 1.0 / (s * (s - 1.0)),
        ConstantRule::Derived => fhat.value_at(0.0) / (2.0 * (s - 1.0)) - p.value_at(0.0) / (2.0 * s),
    };
    let first = theta_weighted_integral(p, 1.0, s - 1.0, q, sp)?;
    let second = match v.second {
        SecondRule::ThetaOfFourier => theta_weighted_integral(&fhat, 1.0, -s, q, sp)?,
        SecondRule::BareFourier => {
            let env = fhat.require_envelope()?;
            let k = -s.re;
            power_weighted_upper(
                |x| c(fhat.value_at(x), 0.0),
                -s,
                1.0,
                |x| env.tail_integral(k, x),
                q.upper_truncation,
                &[],
                q.tolerance(),
                q.max_subdivisions,
            )?
            .require("bare transform integral", q.tolerance())?
        }
    };
    Ok(RhsParts { constant, first, second })
}

/// Constant term plus `int_1^inf [x^(s-1) θ(p)(x) + x^-s (θ(p̂) or p̂)(x)] dx`.
pub fn muntz_rhs(p: &TestFunction, s: C64, v: MuntzVariant, q: &QuadratureSpec, sp: &SeriesSpec) -> Result<C64> {
    check_poles(s, "the constant term")?;
    require_member(p)?;
    let r = rhs_parts(p, s, v, q, sp)?;
    Ok(r.constant + r.first.value + r.second.value)
}

/// Compares both sides of the relation at `s`.
pub fn muntz_residual(p: &TestFunction, s: C64, v: MuntzVariant, q: &QuadratureSpec, sp: &SeriesSpec) -> Result<ResidualReport> {
    check_poles(s, "zeta")?;
    require_member(p)?;
    let (lhs, lhs_error, lhs_evals) = lhs_unchecked(p, s, q)?;
    let r = rhs_parts(p, s, v, q, sp)?;
    let rhs = r.constant + r.first.value + r.second.value;
    let mut diag = Diagnostics {
        lhs_error,
        rhs_error: r.first.error + r.second.error,
        evaluations: lhs_evals + r.first.evaluations + r.second.evaluations,
        notes: vec![format!("{}; {:?}/{:?}", p.name(), v.constant, v.second)],
    };
    if v.second == SecondRule::BareFourier {
        diag.notes.push("second integrand uses the bare transform".into());
    }
    ResidualReport::new(s, lhs, rhs, v.label(), diag)
}

/// ζ(s) from the Bose integral `Γ(s)ζ(s) = int_0^inf x^(s-1)/(e^x - 1) dx`
/// taken along the ray `arg x = φ`: the part below `|x| = 1` through the
/// Bernoulli expansion, the rest by quadrature. The ray angle is tilted
/// towards the imaginary axis for large `|Im s|` to avoid cancellation.
pub fn rface_zeta(s: C64) -> Result<C64> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::domain("non-finite argument"));
    }
    if s == c(1.0, 0.0) {
        return Err(Error::pole("zeta", s));
    }
    let t = s.im;
    let (phi, delta) = if t.abs() <= 3.0 {
        (0.0, PI / 2.0)
    } else {
        let d = (1.0 / t.abs()).clamp(0.02, 0.5);
        (t.signum() * (PI / 2.0 - d), d)
    };
    let rot = C64::from_polar(1.0, phi);
    let b = bernoulli_ratios();
    // B_n/n! for n = 0, 1, 2, ...
    let coeff = |n: usize| -> f64 {
        match n {
            0 => 1.0,
            1 => -0.5,
            _ if n % 2 == 1 => 0.0,
            _ => b.get(n / 2 - 1).copied().unwrap_or(0.0),
        }
    };
    let max_n = 2 * b.len();

    // nonpositive integers: only the term with s + n - 1 = 0 survives 1/Γ
    if s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0 {
        let m = (-s.re) as usize;
        if m + 1 > max_n {
            return Err(Error::domain(format!("ζ({s}) is outside the Bernoulli table")));
        }
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        // (-1)^m m! B_{m+1}/(m+1)! = (-1)^m B_{m+1}/(m+1)
        let m_fact = (1..=m).fold(1.0, |acc, j| acc * j as f64);
        return Ok(c(sign * coeff(m + 1) * m_fact, 0.0));
    }

    let mut series = c(0.0, 0.0);
    let mut rot_pow = rot.inv();
    for n in 0..max_n {
        let a = coeff(n);
        if a != 0.0 {
            series += a * rot_pow / (s + (n as f64 - 1.0));
        }
        rot_pow *= rot;
    }

    let r_max = 37.0 / delta.sin() + 4.0 * s.re.abs();
    let mut pts = vec![1.0, r_max];
    let mut k = 1.0;
    while 2.0 * PI * k < r_max {
        pts.push(2.0 * PI * k);
        k += 1.0;
    }
    let mut r = 2.0;
    while r < r_max {
        pts.push(r);
        r *= 2.0;
    }
    let sm1 = s - 1.0;
    let integrand = |r: f64| {
        let z = rot * r;
        (sm1 * r.ln()).exp() / crate::complex::expm1(z)
    };
    let body = integrate(integrand, &pts, Tolerance::new(1e-15, 1e-14), 20_000);
    let bracket = series + body.value;
    Ok((C64::new(0.0, phi) * s).exp() * bracket * reciprocal_gamma(s)?)
}

/// Constant used on the right of the imaginary-part equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ImConstant {
    /// `Im(p̂(0)/(2(s-1)) - p(0)/(2s))`
    Derived,
    /// `Im(1/(s(s-1)))`
    InversePole,
}

/// Oscillating factor of the imaginary-part integrand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Oscillation {
    /// `sin(v ln x)`, the imaginary part of `x^(i v)`
    Logarithmic,
    /// `sin(v x)` as printed
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImMuntzOptions {
    pub constant: ImConstant,
    pub oscillation: Oscillation,
}

impl Default for ImMuntzOptions {
    fn default() -> Self {
        ImMuntzOptions {
            constant: ImConstant::Derived,
            oscillation: Oscillation::Logarithmic,
        }
    }
}

/// Imaginary part of the relation inside the critical strip:
/// `Im(M(p)(s) ζ(s))` against the constant plus
/// `int_1^inf [x^(u-1) θ(p)(x) - x^-u θ(p̂)(x)] osc(x) dx`.
pub fn im_muntz_residual(
    p: &TestFunction,
    s: C64,
    opts: ImMuntzOptions,
    q: &QuadratureSpec,
    sp: &SeriesSpec,
) -> Result<ResidualReport> {
    if !(s.re > 0.0 && s.re < 1.0) {
        return Err(Error::domain(format!("imaginary-part equation needs 0 < Re s < 1, got {s}")));
    }
    require_member(p)?;
    let fhat = require_fourier(p)?;
    let (lhs, lhs_error, lhs_evals) = lhs_unchecked(p, s, q)?;
    let constant = match opts.constant {
        ImConstant::Derived => (fhat.value_at(0.0) / (2.0 * (s - 1.0)) - p.value_at(0.0) / (2.0 * s)).im,
        ImConstant::InversePole => im_inverse_pole(s)?,
    };
    let (integral, error, evals) = match opts.oscillation {
        Oscillation::Logarithmic => {
            let a = theta_weighted_integral(p, 1.0, s - 1.0, q, sp)?;
            let b = theta_weighted_integral(&fhat, 1.0, -s, q, sp)?;
            (a.value.im + b.value.im, a.error + b.error, a.evaluations + b.evaluations)
        }
        Oscillation::Linear => {
            let r = linear_oscillation_integral(p, &fhat, s, q, sp)?;
            (r.value, r.error, r.evaluations)
        }
    };
    let rhs = constant + integral;
    let variant = if opts == ImMuntzOptions::default() {
        ReportVariant::Derived
    } else {
        ReportVariant::Paper
    };
    let diag = Diagnostics {
        lhs_error,
        rhs_error: error,
        evaluations: lhs_evals + evals,
        notes: vec![format!("{}; {:?}/{:?}", p.name(), opts.constant, opts.oscillation)],
    };
    ResidualReport::new(s, c(lhs.im, 0.0), c(rhs, 0.0), variant, diag)
}

fn linear_oscillation_integral(
    p: &TestFunction,
    fhat: &TestFunction,
    s: C64,
    q: &QuadratureSpec,
    sp: &SeriesSpec,
) -> Result<Integral<f64>> {
    let (u, v) = (s.re, s.im);
    let inner = SeriesSpec {
        tail_tol: sp.tail_tol.min(0.01 * q.abs_tol),
        ..*sp
    };
    let failure = std::cell::RefCell::new(None);
    let g = |x: f64| {
        let a = theta_value(p, x, &inner);
        let b = theta_value(fhat, x, &inner);
        match (a, b) {
            (Ok((a, _)), Ok((b, _))) => (x.powf(u - 1.0) * a - x.powf(-u) * b) * (v * x).sin(),
            (Err(e), _) | (_, Err(e)) => {
                failure.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        }
    };
    let tol = q.tolerance();
    if v == 0.0 {
        return Ok(Integral {
            value: 0.0,
            error: 0.0,
            evaluations: 0,
            converged: true,
        });
    }
    let half = PI / v.abs();
    let start = (1.0 / half).ceil() * half;
    let head = integrate(&g, &[1.0, start], tol.scaled(0.25), q.max_subdivisions);
    let tail = alternating_tail(&g, start, half, tol.scaled(0.75), 2000);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    head.combine(tail).require("linear-oscillation integral", tol)
}
