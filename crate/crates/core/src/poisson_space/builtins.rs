use std::f64::consts::PI;
use std::sync::Arc;

use crate::complex::C64;
use crate::error::{Error, Result};
use crate::quadrature::Envelope;
use crate::special_functions::{bernoulli_ratios, gamma};
use crate::transforms::HermiteKind;

use super::test_function::{RealFn, TestFunction};

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: [&str; 5] = [
    "gaussian",
    "exp_inverse",
    "gaussian_p(p)",
    "hermite_even(n,p[,derivative|eigen])",
    "constant",
];

/// Looks up a built-in test function: `gaussian`, `exp_inverse`,
/// `gaussian_p(p)`, `hermite_even(n,p)`, `hermite_even(n,p,eigen)`, `constant`.
pub fn builtin(name: &str) -> Result<TestFunction> {
    let name = name.trim();
    match name {
        "gaussian" | "G" => return Ok(gaussian()),
        "exp_inverse" | "exp-1" => return Ok(exp_inverse()),
        "constant" => return Ok(constant()),
        _ => {}
    }
    let (head, args) = match (name.find('('), name.strip_suffix(')')) {
        (Some(i), Some(body)) => (&name[..i], body[i + 1..].split(',').map(str::trim).collect::<Vec<_>>()),
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    let num = |s: &str| -> Result<f64> {
        s.parse::<f64>()
            .map_err(|_| Error::Parse(format!("bad numeric argument '{s}' in {name}")))
    };
    match (head, args.as_slice()) {
        ("gaussian_p", [p]) => gaussian_p(num(p)?),
        ("hermite_even", [n, p]) => hermite_even(parse_order(n)?, num(p)?, HermiteKind::Derivative),
        ("hermite_even", [n, p, kind]) => {
            let kind = match *kind {
                "derivative" => HermiteKind::Derivative,
                "eigen" => HermiteKind::Eigen,
                other => return Err(Error::UnknownName(format!("hermite kind {other}"))),
            };
            hermite_even(parse_order(n)?, num(p)?, kind)
        }
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

fn parse_order(s: &str) -> Result<usize> {
    s.parse::<usize>()
        .map_err(|_| Error::Parse(format!("bad order '{s}'")))
}

/// `G(x) = exp(-pi x^2)`, its own Fourier transform.
pub fn gaussian() -> TestFunction {
    let env = Envelope::Gaussian { c: 1.0, rate: PI };
    TestFunction::new("gaussian", |x| (-PI * x * x).exp(), (PI, 2.0))
        .with_decay_constants(Some(1.0), Some(1.0))
        .with_envelope(env)
        .with_fourier(|x| (-PI * x * x).exp(), env, (PI, 2.0))
        .with_mellin(|s| Ok(0.5 * (-0.5 * s * PI.ln()).exp() * gamma(0.5 * s)?))
}

/// `exp(-x)` with transform `2/(1+4 pi^2 x^2)` and Mellin transform Γ.
pub fn exp_inverse() -> TestFunction {
    let theta: RealFn = Arc::new(|x: f64| 1.0 / x.exp_m1());
    let fourier_theta: RealFn = Arc::new(lorentzian_theta);
    TestFunction::new("exp_inverse", |x| (-x).exp(), (1.0, 1.0))
        .with_decay_constants(Some(1.0), Some(2.0))
        .with_envelope(Envelope::Exponential { c: 1.0, rate: 1.0 })
        .with_fourier(
            |x| 2.0 / (1.0 + 4.0 * PI * PI * x * x),
            Envelope::Power {
                sup: 2.0,
                c: 1.0 / (2.0 * PI * PI),
                exponent: 2.0,
            },
            (8.0 * PI * PI, 2.0),
        )
        .with_mellin(gamma)
        .with_theta(Some(theta), Some(fourier_theta))
}

/// `sum_{n>=1} 2/(1+4 pi^2 n^2 x^2) = y coth y - 1` with `y = 1/(2x)`.
fn lorentzian_theta(x: f64) -> f64 {
    let y = 0.5 / x;
    if y >= 0.5 {
        return y / y.tanh() - 1.0;
    }
    // y coth y - 1 = sum_k B_2k/(2k)! (2y)^(2k)
    let u = 1.0 / (x * x);
    let mut pow = u;
    let mut sum = 0.0;
    for &b in bernoulli_ratios().iter() {
        let term = b * pow;
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
        pow *= u;
    }
    sum
}

/// `exp(-p^2 x^2)`.
pub fn gaussian_p(p: f64) -> Result<TestFunction> {
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::domain(format!("gaussian_p needs p > 0, got {p}")));
    }
    let r = p * p;
    let fr = PI * PI / r;
    let amp = PI.sqrt() / p;
    Ok(TestFunction::new(format!("gaussian_p({p})"), move |x| (-r * x * x).exp(), (r, 2.0))
        .with_envelope(Envelope::Gaussian { c: 1.0, rate: r })
        .with_fourier(
            move |x| amp * (-fr * x * x).exp(),
            Envelope::Gaussian { c: amp, rate: fr },
            (amp * fr, 2.0),
        )
        .with_mellin(move |s| Ok(0.5 * C64::from(p).powc(-s) * gamma(0.5 * s)?)))
}

/// `sum_k a_k x^k exp(-rate x^2)`.
#[derive(Debug, Clone)]
struct PolyGauss {
    coeffs: Vec<f64>,
    rate: f64,
}

impl PolyGauss {
    fn value(&self, x: f64) -> f64 {
        let poly = self.coeffs.iter().rev().fold(0.0, |acc, &a| acc * x + a);
        poly * (-self.rate * x * x).exp()
    }

    fn envelope(&self) -> Envelope {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let k = k as f64;
                let sup = if k == 0.0 { 1.0 } else { (k / self.rate).powf(0.5 * k) * (-0.5 * k).exp() };
                a.abs() * sup
            })
            .sum();
        Envelope::Gaussian { c, rate: 0.5 * self.rate }
    }

    /// Bound of |f'| on [0, 1].
    fn lipschitz_unit(&self) -> f64 {
        let mut d = vec![0.0; self.coeffs.len() + 1];
        for (k, &a) in self.coeffs.iter().enumerate() {
            if k > 0 {
                d[k - 1] += k as f64 * a;
            }
            d[k + 1] -= 2.0 * self.rate * a;
        }
        d.iter().map(|a| a.abs()).sum()
    }

    fn mellin(&self, s: C64) -> Result<C64> {
        let mut acc = C64::new(0.0, 0.0);
        for (k, &a) in self.coeffs.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            let z = s + k as f64;
            acc += a * 0.5 * C64::from(self.rate).powc(-0.5 * z) * gamma(0.5 * z)?;
        }
        Ok(acc)
    }

    fn into_test_function(self, name: String, fourier: PolyGauss) -> TestFunction {
        let env = self.envelope();
        let holder = self.lipschitz_unit();
        let fenv = fourier.envelope();
        let fholder = fourier.lipschitz_unit();
        let me = self.clone();
        let mm = self.clone();
        TestFunction::new(name, move |x| me.value(x), (holder, 1.0))
            .with_envelope(env)
            .with_fourier(move |x| fourier.value(x), fenv, (fholder, 1.0))
            .with_mellin(move |s| mm.mellin(s))
    }
}

/// Even Hermite-type function of order `n` and scale `p`, with analytic
/// transform and Mellin transform attached.
pub fn hermite_even(n: usize, p: f64, kind: HermiteKind) -> Result<TestFunction> {
    crate::transforms::hermite::check_even(n, p)?;
    let h = crate::transforms::hermite::hermite_coefficients(n);
    let lambda = crate::transforms::hermite::eigenvalue(n, p);
    let r = p * p;
    let sign = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let (f, fhat, label) = match kind {
        HermiteKind::Derivative => {
            let coeffs = h.iter().enumerate().map(|(k, a)| p.powi(n as i32) * a * p.powi(k as i32)).collect();
            let mut fc = vec![0.0; n + 1];
            fc[n] = sign * (2.0 * PI).powi(n as i32) * PI.sqrt() / p;
            (
                PolyGauss { coeffs, rate: r },
                PolyGauss { coeffs: fc, rate: PI * PI / r },
                "",
            )
        }
        HermiteKind::Eigen => {
            let sc = (2.0f64).sqrt() * p;
            let coeffs: Vec<f64> = h.iter().enumerate().map(|(k, a)| a * sc.powi(k as i32)).collect();
            let fc = coeffs
                .iter()
                .enumerate()
                .map(|(k, a)| lambda * a * (PI / r).powi(k as i32))
                .collect();
            (
                PolyGauss { coeffs, rate: r },
                PolyGauss { coeffs: fc, rate: PI * PI / r },
                ",eigen",
            )
        }
    };
    Ok(f.into_test_function(format!("hermite_even({n},{p}{label})"), fhat))
}

/// The constant 1; not integrable, so it fails membership.
pub fn constant() -> TestFunction {
    TestFunction::new("constant", |_| 1.0, (0.0, 1.0))
}
