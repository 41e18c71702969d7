use std::f64::consts::PI;

use crate::complex::{c, is_finite, sin_pi, C64};
use crate::error::{Error, Result};

// Lanczos g = 7, n = 9 (Godfrey)
const LANCZOS_G: f64 = 7.0;
const LANCZOS_P: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

fn check_finite(s: C64) -> Result<()> {
    if is_finite(s) {
        Ok(())
    } else {
        Err(Error::domain(format!("non-finite argument {s}")))
    }
}

pub(crate) fn is_pole(s: C64) -> bool {
    s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0
}

/// ln Γ(z) for Re z >= 0.5 via Lanczos.
fn ln_gamma_lanczos(z: C64) -> C64 {
    let z = z - 1.0;
    let mut sum = c(LANCZOS_P[0], 0.0);
    for (i, &p) in LANCZOS_P.iter().enumerate().skip(1) {
        sum += p / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (z + 0.5) * t.ln() - t + HALF_LN_2PI + sum.ln()
}

/// Γ(s). Reflection is used for Re s < 1/2.
pub fn gamma(s: C64) -> Result<C64> {
    check_finite(s)?;
    if is_pole(s) {
        return Err(Error::pole("gamma", s));
    }
    if s.re < 0.5 {
        let g = ln_gamma_lanczos(1.0 - s).exp();
        Ok(PI / (sin_pi(s) * g))
    } else {
        Ok(ln_gamma_lanczos(s).exp())
    }
}

/// 1/Γ(s), entire; zero at the nonpositive integers.
pub fn reciprocal_gamma(s: C64) -> Result<C64> {
    check_finite(s)?;
    if is_pole(s) {
        return Ok(c(0.0, 0.0));
    }
    if s.re < 0.5 {
        Ok(sin_pi(s) * ln_gamma_lanczos(1.0 - s).exp() / PI)
    } else {
        Ok((-ln_gamma_lanczos(s)).exp())
    }
}

const STIRLING_SHIFT: f64 = 15.0;

/// ln Γ(z) on the branch obtained from Stirling's series at Re z >= 15 and the
/// recurrence with principal logarithms; continuous on Re z > 0.
pub fn ln_gamma(z: C64) -> Result<C64> {
    check_finite(z)?;
    if is_pole(z) {
        return Err(Error::pole("ln_gamma", z));
    }
    let mut shift = c(0.0, 0.0);
    let mut w = z;
    while w.re < STIRLING_SHIFT {
        shift += w.ln();
        w += 1.0;
    }
    // B_2k / (2k (2k-1))
    const COEF: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360360.0,
        1.0 / 156.0,
        -3617.0 / 122400.0,
    ];
    let inv = 1.0 / w;
    let inv2 = inv * inv;
    let mut term = inv;
    let mut series = c(0.0, 0.0);
    for &k in &COEF {
        series += term * k;
        term *= inv2;
    }
    Ok((w - 0.5) * w.ln() - w + HALF_LN_2PI + series - shift)
}
