use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// A point of the complex plane with finite components.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPoint")]
pub struct ComplexPoint {
    re: f64,
    im: f64,
}

#[derive(Deserialize)]
struct RawPoint {
    re: f64,
    im: f64,
}

impl TryFrom<RawPoint> for ComplexPoint {
    type Error = Error;
    fn try_from(r: RawPoint) -> Result<Self> {
        ComplexPoint::new(r.re, r.im)
    }
}

impl ComplexPoint {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !re.is_finite() || !im.is_finite() {
            return Err(Error::domain(format!("non-finite complex point ({re}, {im})")));
        }
        Ok(ComplexPoint { re, im })
    }

    pub fn real(re: f64) -> Result<Self> {
        Self::new(re, 0.0)
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }

    pub fn to_c64(self) -> C64 {
        C64::new(self.re, self.im)
    }

    pub fn conj(self) -> Self {
        ComplexPoint {
            re: self.re,
            im: -self.im,
        }
    }
}

impl TryFrom<C64> for ComplexPoint {
    type Error = Error;
    fn try_from(z: C64) -> Result<Self> {
        ComplexPoint::new(z.re, z.im)
    }
}

impl From<ComplexPoint> for C64 {
    fn from(p: ComplexPoint) -> C64 {
        p.to_c64()
    }
}

impl fmt::Display for ComplexPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_complex(f, self.re, self.im, f.precision())
    }
}

fn format_complex(f: &mut fmt::Formatter<'_>, re: f64, im: f64, prec: Option<usize>) -> fmt::Result {
    let sign = if im < 0.0 || (im == 0.0 && im.is_sign_negative()) { '-' } else { '+' };
    match prec {
        Some(p) => write!(f, "{re:.p$}{sign}{:.p$}i", im.abs()),
        None => write!(f, "{re}{sign}{}i", im.abs()),
    }
}

impl FromStr for ComplexPoint {
    type Err = Error;

    /// Accepts `a`, `bi`, `a+bi`, `a-bi` (also `j` for the imaginary unit).
    fn from_str(text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("cannot parse complex number '{text}'"));
        if s.is_empty() {
            return Err(bad());
        }
        let Some(body) = s.strip_suffix(['i', 'j']) else {
            let re: f64 = s.parse().map_err(|_| bad())?;
            return ComplexPoint::new(re, 0.0);
        };
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
        let (re_txt, im_txt) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let re: f64 = re_txt.parse().map_err(|_| bad())?;
        let im: f64 = match im_txt {
            "" | "+" => 1.0,
            "-" => -1.0,
            t => t.parse().map_err(|_| bad())?,
        };
        ComplexPoint::new(re, im)
    }
}

pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub(crate) fn is_finite(z: C64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// sin(pi z) with argument reduction on the real part.
pub fn sin_pi(z: C64) -> C64 {
    let n = z.re.round();
    let r = C64::new(z.re - n, z.im);
    let v = (r * std::f64::consts::PI).sin();
    if (n as i64).rem_euclid(2) == 1 {
        -v
    } else {
        v
    }
}

/// exp(z) - 1 without cancellation for small |z|.
pub fn expm1(z: C64) -> C64 {
    if z.norm() < 0.5 {
        z * exprel(z)
    } else {
        z.exp() - 1.0
    }
}

/// (exp(z) - 1) / z, entire, equal to 1 at z = 0.
pub fn exprel(z: C64) -> C64 {
    if z.norm() < 0.5 {
        let mut term = C64::new(1.0, 0.0);
        let mut sum = term;
        for k in 2..40 {
            term = term * z / k as f64;
            sum += term;
            if term.norm() < 1e-18 * sum.norm() {
                break;
            }
        }
        sum
    } else {
        (z.exp() - 1.0) / z
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_common_forms() {
        let cases = [
            ("2", 2.0, 0.0),
            ("0.5+14.134725i", 0.5, 14.134725),
            ("1.5-3i", 1.5, -3.0),
            ("-2i", 0.0, -2.0),
            ("i", 0.0, 1.0),
            ("2-i", 2.0, -1.0),
            ("1e-3+2e1i", 1e-3, 20.0),
            ("-1.5e+2-2.5E-1j", -150.0, -0.25),
            (" 0.25 + 5 i ", 0.25, 5.0),
        ];
        for (text, re, im) in cases {
            let p: ComplexPoint = text.parse().unwrap();
            assert_eq!((p.re(), p.im()), (re, im), "{text}");
        }
    }

    #[test]
    fn rejects_garbage() {
        for text in ["", "abc", "1+", "1++2i", "nan", "inf+2i"] {
            assert!(text.parse::<ComplexPoint>().is_err(), "{text}");
        }
    }

    #[test]
    fn display_round_trips() {
        let p = ComplexPoint::new(0.3, -2.0).unwrap();
        let q: ComplexPoint = p.to_string().parse().unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn sin_pi_is_exact_at_integers() {
        for n in -5..=5 {
            assert_eq!(sin_pi(c(n as f64, 0.0)).norm(), 0.0);
        }
        let z = c(0.3, 0.7);
        assert!((sin_pi(z) - (z * std::f64::consts::PI).sin()).norm() < 1e-14);
    }

    #[test]
    fn expm1_small_arguments() {
        let z = c(1e-10, -2e-10);
        assert!((expm1(z) - z).norm() < 1e-19);
        assert!((exprel(c(0.0, 0.0)) - 1.0).norm() < 1e-16);
    }
}
