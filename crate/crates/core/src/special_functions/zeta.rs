use std::f64::consts::{LN_2, PI};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::complex::{c, exprel, expm1, is_finite, sin_pi, C64};
use crate::error::{Error, Result};

use super::gamma::{gamma, is_pole};

const BERNOULLI_TERMS: usize = 40;

/// B_2k / (2k)! for k = 1..=40, from (-1)^(k+1) 2 ζ(2k) / (2π)^(2k).
pub(crate) fn bernoulli_ratios() -> &'static [f64; BERNOULLI_TERMS] {
    static TABLE: OnceLock<[f64; BERNOULLI_TERMS]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = [0.0; BERNOULLI_TERMS];
        let two_pi_sq = (2.0 * PI) * (2.0 * PI);
        let mut scale = 1.0;
        for (i, slot) in out.iter_mut().enumerate() {
            let k = i + 1;
            scale /= two_pi_sq;
            let zeta_2k: f64 = if k == 1 {
                PI * PI / 6.0
            } else {
                let e = 2 * k as i32;
                let n = 200.0f64;
                let head: f64 = (1..200).rev().map(|j| (j as f64).powi(-e)).sum();
                let ef = e as f64;
                head + n.powi(1 - e) / (ef - 1.0) + 0.5 * n.powi(-e) + ef * n.powi(-e - 1) / 12.0
            };
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            *slot = sign * 2.0 * zeta_2k * scale;
        }
        out
    })
}

fn check_finite(s: C64) -> Result<()> {
    if is_finite(s) {
        Ok(())
    } else {
        Err(Error::domain(format!("non-finite argument {s}")))
    }
}

fn cpow_real(x: f64, s: C64) -> C64 {
    (s * x.ln()).exp()
}

fn em_cutoff(s: C64) -> usize {
    (s.norm() + 10.0).ceil().max(20.0) as usize
}

/// Euler-Maclaurin correction terms sum_k B_2k/(2k)! (s)_(2k-1) x^(1-s-2k),
/// evaluated for several offsets at once.
fn em_bernoulli_tail(s: C64, x: f64, scale: f64) -> C64 {
    let bern = bernoulli_ratios();
    let mut poch = s;
    let mut power = cpow_real(x, -s) / x; // x^(-s-1)
    let inv_x2 = 1.0 / (x * x);
    let mut sum = c(0.0, 0.0);
    for (i, &b) in bern.iter().enumerate() {
        let k = (i + 1) as f64;
        let term = poch * power * b;
        sum += term;
        if term.norm() <= 1e-18 * scale.max(sum.norm()) {
            break;
        }
        poch *= (s + 2.0 * k - 1.0) * (s + 2.0 * k);
        power *= inv_x2;
    }
    sum
}

/// ζ(s, a) by Euler-Maclaurin summation; valid for every s ≠ 1.
fn hurwitz_em(s: C64, a: f64) -> C64 {
    let n = em_cutoff(s);
    let mut head = c(0.0, 0.0);
    for k in (0..n).rev() {
        head += cpow_real(k as f64 + a, -s);
    }
    let x = n as f64 + a;
    let xs = cpow_real(x, -s);
    let pole = xs * x / (s - 1.0);
    head + pole + xs * 0.5 + em_bernoulli_tail(s, x, head.norm())
}

/// Number of terms for the alternating-series route at height t, or None when
/// the coefficients would overflow.
fn borwein_terms(t: f64) -> Option<usize> {
    let need = (PI * t.abs() / 2.0 + (3.0 * (1.0 + 2.0 * t.abs())).ln() + 36.8) / (3.0 + 8f64.sqrt()).ln();
    let n = need.ceil() as usize + 2;
    (n <= 380).then_some(n)
}

/// Dirichlet eta by Borwein's accelerated alternating series.
fn eta_borwein(s: C64, n: usize) -> C64 {
    let nf = n as f64;
    let mut d = Vec::with_capacity(n + 1);
    let mut term = 1.0;
    let mut acc = 1.0;
    d.push(acc);
    for i in 1..=n {
        let fi = i as f64;
        term *= (nf + fi - 1.0) * 4.0 * (nf - fi + 1.0) / ((2.0 * fi) * (2.0 * fi - 1.0));
        acc += term;
        d.push(acc);
    }
    let dn = d[n];
    let mut sum = c(0.0, 0.0);
    for k in (0..n).rev() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += cpow_real(k as f64 + 1.0, -s) * (sign * (d[k] - dn) / dn);
    }
    -sum
}

/// Riemann ζ(s). Euler-Maclaurin for Re s >= 1, Borwein's alternating series
/// for -1 <= Re s < 1, the functional equation below.
pub fn riemann_zeta(s: C64) -> Result<C64> {
    check_finite(s)?;
    if s == c(1.0, 0.0) {
        return Err(Error::pole("riemann_zeta", s));
    }
    if s.re >= 1.0 {
        return Ok(hurwitz_em(s, 1.0));
    }
    if s.re >= -1.0 {
        return Ok(match borwein_terms(s.im) {
            Some(n) => eta_borwein(s, n) / -expm1((1.0 - s) * LN_2),
            None => hurwitz_em(s, 1.0),
        });
    }
    // ζ(s) = 2^s π^(s-1) sin(πs/2) Γ(1-s) ζ(1-s)
    let one_minus = 1.0 - s;
    let factor = (s * LN_2).exp() * ((s - 1.0) * PI.ln()).exp() * sin_pi(s * 0.5);
    if factor == c(0.0, 0.0) {
        return Ok(c(0.0, 0.0));
    }
    Ok(factor * gamma(one_minus)? * riemann_zeta(one_minus)?)
}

/// Hurwitz ζ(s, a) = sum_{n>=0} (n+a)^-s, 0 < a <= 1.
pub fn hurwitz_zeta(s: C64, a: f64) -> Result<C64> {
    check_finite(s)?;
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::domain(format!("Hurwitz parameter a = {a} outside (0, 1]")));
    }
    if s == c(1.0, 0.0) {
        return Err(Error::pole("hurwitz_zeta", s));
    }
    Ok(hurwitz_em(s, a))
}

/// ζ(s, a) - ζ(s, b), entire in s: the pole terms are combined before
/// evaluation.
pub fn hurwitz_difference(s: C64, a: f64, b: f64) -> Result<C64> {
    check_finite(s)?;
    for p in [a, b] {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::domain(format!("Hurwitz parameter {p} outside (0, 1]")));
        }
    }
    let n = em_cutoff(s);
    let mut head = c(0.0, 0.0);
    for k in (0..n).rev() {
        head += cpow_real(k as f64 + a, -s) - cpow_real(k as f64 + b, -s);
    }
    let xa = n as f64 + a;
    let xb = n as f64 + b;
    let w = 1.0 - s;
    let r = (xb / xa).ln();
    // (xa^w - xb^w)/(s-1) = xa^w r exprel(w r)
    let pole = cpow_real(xa, w) * r * exprel(w * r);
    let half = (cpow_real(xa, -s) - cpow_real(xb, -s)) * 0.5;
    let tail = em_bernoulli_tail(s, xa, head.norm()) - em_bernoulli_tail(s, xb, head.norm());
    Ok(head + pole + half + tail)
}

/// η = (√(10 - 2√5) - 2)/(√5 - 1).
pub fn eta_constant() -> f64 {
    let r5 = 5f64.sqrt();
    ((10.0 - 2.0 * r5).sqrt() - 2.0) / (r5 - 1.0)
}

/// ζ_H(s) = 5^-s [ζ(s,1/5) + η ζ(s,2/5) - η ζ(s,3/5) - ζ(s,4/5)].
pub fn zeta_h(s: C64) -> Result<C64> {
    check_finite(s)?;
    let outer = hurwitz_difference(s, 0.2, 0.8)?;
    let inner = hurwitz_difference(s, 0.4, 0.6)?;
    Ok((-s * 5f64.ln()).exp() * (outer + eta_constant() * inner))
}

/// Γ pairing used in the functional equation of ζ_H.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GammaPairing {
    /// Γ((1+s)/2) on the left, Γ(1-s/2) on the right.
    Printed,
    /// Γ(s/2) on the left, Γ((1-s)/2) on the right.
    EvenCharacter,
}

/// Both sides of the ζ_H functional equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FunctionalEquationSides {
    pub lhs: C64,
    pub rhs: C64,
    pub residual: f64,
    pub pairing: GammaPairing,
}

/// (5/π)^(s/2) Γ_L(s) ζ_H(s) against (5/π)^((1-s)/2) Γ_R(s) ζ_H(1-s).
pub fn functional_eq_sides_h(s: C64, pairing: GammaPairing) -> Result<FunctionalEquationSides> {
    check_finite(s)?;
    let (gl, gr) = match pairing {
        GammaPairing::Printed => ((1.0 + s) * 0.5, 1.0 - s * 0.5),
        GammaPairing::EvenCharacter => (s * 0.5, (1.0 - s) * 0.5),
    };
    if is_pole(gl) || is_pole(gr) {
        return Err(Error::pole("functional equation gamma factor", s));
    }
    let ln_ratio = (5.0 / PI).ln();
    let lhs = (s * 0.5 * ln_ratio).exp() * gamma(gl)? * zeta_h(s)?;
    let rhs = ((1.0 - s) * 0.5 * ln_ratio).exp() * gamma(gr)? * zeta_h(1.0 - s)?;
    Ok(FunctionalEquationSides {
        lhs,
        rhs,
        residual: (lhs - rhs).norm(),
        pairing,
    })
}

/// |lhs - rhs| of the ζ_H functional equation under the given Γ pairing.
pub fn functional_eq_residual_h(s: C64, pairing: GammaPairing) -> Result<f64> {
    Ok(functional_eq_sides_h(s, pairing)?.residual)
}

/// Residuals of both pairings and the one that annihilates the residual.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairingComparison {
    pub printed: f64,
    pub even_character: f64,
    pub working: GammaPairing,
}

pub fn compare_gamma_pairings(s: C64) -> Result<PairingComparison> {
    let printed = functional_eq_residual_h(s, GammaPairing::Printed)?;
    let even_character = functional_eq_residual_h(s, GammaPairing::EvenCharacter)?;
    let working = if printed <= even_character {
        GammaPairing::Printed
    } else {
        GammaPairing::EvenCharacter
    };
    Ok(PairingComparison {
        printed,
        even_character,
        working,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1.0)
    }

    #[test]
    fn bernoulli_table() {
        let b = bernoulli_ratios();
        assert!((b[0] - 1.0 / 12.0).abs() < 1e-17);
        assert!((b[1] + 1.0 / 720.0).abs() < 1e-18);
        assert!((b[2] - 1.0 / 30240.0).abs() < 1e-19);
    }

    #[test]
    fn zeta_examples() {
        assert!(close(riemann_zeta(c(2.0, 0.0)).unwrap(), c(PI * PI / 6.0, 0.0), 1e-14));
        assert!(close(riemann_zeta(c(0.0, 0.0)).unwrap(), c(-0.5, 0.0), 1e-14));
        assert!(matches!(riemann_zeta(c(1.0, 0.0)), Err(Error::Pole { .. })));
        assert_eq!(riemann_zeta(c(-4.0, 0.0)).unwrap(), c(0.0, 0.0));
    }

    // mpmath.zeta at 30 digits
    #[test]
    fn zeta_reference_values() {
        let cases = [
            (c(0.5, 14.134725), c(1.76742984138490391e-8, -1.11020289309231167e-7)),
            (c(0.5, 0.0), c(-1.46035450880958681, 0.0)),
            (c(0.2, 5.0), c(0.661916922516011324, 0.266089789326556781)),
            (c(0.8, -30.0), c(0.252251829185607348, 0.52592076265002481)),
            (c(1.0, 3.0), c(0.628851733951825534, -0.10747576015058644)),
            (c(-0.5, 2.0), c(0.22809497171652633, -0.144529171733713596)),
            (c(-3.5, 1.0), c(0.00455067148380678456, 0.0123444569328554577)),
            (c(3.0, 40.0), c(0.932609143928498361, -0.0637575060711775902)),
            (c(0.999, 0.0), c(-999.422857155787902, 0.0)),
        ];
        for (s, want) in cases {
            let got = riemann_zeta(s).unwrap();
            assert!((got - want).norm() < 1e-12 * want.norm().max(1.0), "s={s}: {got} vs {want}");
        }
    }

    #[test]
    fn hurwitz_examples() {
        let h1 = hurwitz_zeta(c(2.0, 0.0), 1.0).unwrap();
        assert!(close(h1, riemann_zeta(c(2.0, 0.0)).unwrap(), 1e-14));
        let h = hurwitz_zeta(c(2.0, 0.0), 0.5).unwrap();
        assert!((h.re - PI * PI / 2.0).abs() < 1e-13);
        assert!(matches!(hurwitz_zeta(c(2.0, 0.0), 0.0), Err(Error::Domain(_))));
        assert!(matches!(hurwitz_zeta(c(1.0, 0.0), 0.5), Err(Error::Pole { .. })));
    }

    #[test]
    fn difference_is_regular_at_one() {
        let d = hurwitz_difference(c(1.0, 0.0), 0.2, 0.8).unwrap();
        // ζ(s,a)-ζ(s,b) -> ψ(b) - ψ(a) = π cot(π a) for b = 1-a
        assert!((d.re - PI / (PI * 0.2).tan()).abs() < 1e-12, "{d}");
        let near = c(1.0 + 1e-9, 0.0);
        let direct = hurwitz_zeta(near, 0.2).unwrap() - hurwitz_zeta(near, 0.8).unwrap();
        assert!((hurwitz_difference(near, 0.2, 0.8).unwrap() - direct).norm() < 1e-5);
    }

    #[test]
    fn eta_value() {
        let e = eta_constant();
        assert!((e - 0.284079043840412296).abs() < 1e-15);
        assert!(e > 0.0 && e < 1.0);
    }

    #[test]
    fn zeta_h_reference() {
        // mpmath: 5^-s sum of Hurwitz terms at 30 digits
        let z = zeta_h(c(2.0, 0.0)).unwrap();
        assert!((z.re - 1.00006833780978269647).abs() < 1e-13, "{z}");
        let s = c(0.3, 2.0);
        assert!((zeta_h(s.conj()).unwrap() - zeta_h(s).unwrap().conj()).norm() < 1e-14);
    }

    #[test]
    fn printed_pairing_is_the_working_form() {
        let cmp = compare_gamma_pairings(c(0.3, 2.0)).unwrap();
        assert!(cmp.printed < 1e-8, "{cmp:?}");
        assert!(cmp.even_character > 1e-3);
        assert_eq!(cmp.working, GammaPairing::Printed);
        assert!(functional_eq_residual_h(c(0.5, 0.0), GammaPairing::Printed).unwrap() < 1e-15);
        assert!(matches!(
            functional_eq_residual_h(c(-1.0, 0.0), GammaPairing::Printed),
            Err(Error::Pole { .. })
        ));
    }
}
