use serde::{Deserialize, Serialize};

use crate::complex::c;
use crate::quadrature::{power_weighted_lower, zeta2, QuadratureSpec, Tolerance};
use crate::transforms::{fourier_cosine_quadrature, mellin};

use super::TestFunction;

/// Sample points used by [`check_membership`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplingGrid {
    /// Points of the decay-bound grid on `[0, x_max]`.
    pub points: usize,
    pub x_max: f64,
    /// Points per axis of the `(0, 4]^2` grid for the shifted double sums.
    pub pair_points: usize,
    /// Terms of the shifted sums evaluated numerically.
    pub pair_terms: usize,
    /// Exponents `Re s` of the endpoint-integrability check.
    pub mt_exponents: Vec<f64>,
}

impl Default for SamplingGrid {
    fn default() -> Self {
        SamplingGrid {
            points: 1000,
            x_max: 50.0,
            pair_points: 16,
            pair_terms: 2000,
            mt_exponents: vec![0.1, 0.5, 0.9],
        }
    }
}

/// Verdict on one condition, with the quantity measured and its threshold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionVerdict {
    pub condition: String,
    pub passed: bool,
    pub witness: f64,
    pub threshold: f64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub name: String,
    pub verdicts: Vec<ConditionVerdict>,
    pub member: bool,
}

impl MembershipReport {
    pub fn failed(&self) -> Vec<String> {
        self.verdicts
            .iter()
            .filter(|v| !v.passed)
            .map(|v| v.condition.clone())
            .collect()
    }

    pub fn verdict(&self, condition: &str) -> Option<&ConditionVerdict> {
        self.verdicts.iter().find(|v| v.condition == condition)
    }
}

const SLACK: f64 = 1e-12;

/// Checks the conditions P0..P4 and MT numerically. Never fails; every
/// problem shows up as a failed verdict.
pub fn check_membership(f: &TestFunction, grid: &SamplingGrid) -> MembershipReport {
    let n = grid.points.max(2);
    let xs: Vec<f64> = (0..n)
        .map(|i| {
            let t = i as f64 / (n - 1) as f64;
            grid.x_max * t * t
        })
        .collect();
    let fourier_values: Option<Vec<f64>> = if f.has_fourier() {
        Some(xs.iter().map(|&x| f.fourier_at(x).unwrap_or(f64::NAN)).collect())
    } else {
        None
    };

    let mut verdicts = Vec::new();

    let f0 = f.value_at(0.0);
    verdicts.push(ConditionVerdict {
        condition: "P0".into(),
        passed: f0 == 1.0,
        witness: f0,
        threshold: 1.0,
        detail: "value at 0 must equal 1".into(),
    });

    verdicts.push(decay_verdict(f, &xs, fourier_values.as_deref()));
    verdicts.push(shifted_sum_verdict("P2", f.decay_constant(), |x| f.value_at(x), grid));
    let fhat = |x: f64| f.fourier_at(x).unwrap_or(f64::NAN);
    let p3 = if f.has_fourier() {
        shifted_sum_verdict("P3", f.fourier_decay_constant(), fhat, grid)
    } else {
        let mut v = shifted_sum_verdict("P3", f.fourier_decay_constant(), |_| 0.0, grid);
        v.detail.push_str("; transform values unavailable, bound certified from the declared constant only");
        v
    };
    verdicts.push(p3);
    verdicts.push(mellin_verdict(f));
    verdicts.push(endpoint_verdict(f, &grid.mt_exponents));

    let member = verdicts.iter().all(|v| v.passed);
    MembershipReport {
        name: f.name().to_string(),
        verdicts,
        member,
    }
}

fn ratio_max(values: impl Iterator<Item = (f64, f64)>, c: f64) -> f64 {
    values.fold(0.0f64, |m, (x, v)| {
        let r = v.abs() * (1.0 + x * x) / c;
        if r.is_nan() {
            f64::INFINITY
        } else {
            m.max(r)
        }
    })
}

fn decay_verdict(f: &TestFunction, xs: &[f64], fourier: Option<&[f64]>) -> ConditionVerdict {
    let mut detail = String::new();
    let witness = match f.decay_constant() {
        Some(c) if c > 0.0 && c.is_finite() => ratio_max(xs.iter().map(|&x| (x, f.value_at(x))), c),
        _ => {
            detail.push_str("no quadratic decay constant declared; ");
            f64::INFINITY
        }
    };
    let fourier_witness = match (f.fourier_decay_constant(), fourier) {
        (Some(c), Some(vals)) if c > 0.0 && c.is_finite() => ratio_max(xs.iter().copied().zip(vals.iter().copied()), c),
        (Some(c), None) if c > 0.0 && c.is_finite() => {
            // sparse sample through quadrature
            let q = QuadratureSpec::default().with_tol(1e-9);
            let sample: Vec<f64> = xs.iter().step_by((xs.len() / 25).max(1)).copied().collect();
            let mut worst = 0.0f64;
            for x in sample {
                match fourier_cosine_quadrature(f, x, &q) {
                    Ok(v) => worst = worst.max(v.value.abs() * (1.0 + x * x) / c),
                    Err(_) => worst = f64::INFINITY,
                }
            }
            detail.push_str("transform sampled by quadrature; ");
            worst
        }
        _ => {
            detail.push_str("no decay constant for the transform; ");
            f64::INFINITY
        }
    };
    let w = witness.max(fourier_witness);
    detail.push_str("max of |f|(1+x^2)/C over f and its transform");
    ConditionVerdict {
        condition: "P1".into(),
        passed: w <= 1.0 + SLACK,
        witness: w,
        threshold: 1.0,
        detail,
    }
}

fn shifted_sum_verdict(label: &str, constant: Option<f64>, g: impl Fn(f64) -> f64, grid: &SamplingGrid) -> ConditionVerdict {
    let c = match constant {
        Some(c) if c > 0.0 && c.is_finite() => c,
        _ => {
            return ConditionVerdict {
                condition: label.into(),
                passed: false,
                witness: f64::INFINITY,
                threshold: f64::INFINITY,
                detail: "no quadratic decay constant declared".into(),
            }
        }
    };
    let m = grid.pair_points.max(1);
    let mut worst_bound = 0.0f64;
    let mut worst_excess = 0.0f64;
    for i in 1..=m {
        let x = 4.0 * i as f64 / m as f64;
        for j in 1..=m {
            let y = 4.0 * j as f64 / m as f64;
            let bound = x * x * c * (1.0 / (1.0 + x * x) + zeta2() / (y * y));
            worst_bound = worst_bound.max(bound);
            let sum: f64 = (0..grid.pair_terms).map(|n| x * x * g(x + n as f64 * y).abs()).sum();
            let excess = if sum.is_nan() { f64::INFINITY } else { sum / bound };
            worst_excess = worst_excess.max(excess);
        }
    }
    ConditionVerdict {
        condition: label.into(),
        passed: worst_bound.is_finite() && worst_excess <= 1.0 + SLACK,
        witness: worst_excess,
        threshold: 1.0,
        detail: format!("shifted sums over (0,4]^2 against x^2 C (1/(1+x^2) + zeta(2)/y^2), largest bound {worst_bound:.6e}"),
    }
}

fn mellin_verdict(f: &TestFunction) -> ConditionVerdict {
    let q = QuadratureSpec::default().with_tol(1e-8);
    let (passed, witness, detail) = match mellin(f, c(0.5, 0.0), &q) {
        Ok(v) => (v.value.norm().is_finite(), v.value.norm(), "Mellin transform at s = 1/2 converges".to_string()),
        Err(e) => (false, f64::INFINITY, e.to_string()),
    };
    ConditionVerdict {
        condition: "P4".into(),
        passed,
        witness,
        threshold: f64::INFINITY,
        detail,
    }
}

fn endpoint_verdict(f: &TestFunction, exponents: &[f64]) -> ConditionVerdict {
    let near = f.near_zero();
    let abs_near = crate::quadrature::NearZero { g0: near.g0.abs(), ..near };
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    for &sigma in exponents {
        let r = power_weighted_lower(
            |x| c(f.value_at(x).abs(), 0.0),
            c(sigma - 1.0, 0.0),
            1.0,
            abs_near,
            f.breakpoints(),
            Tolerance::new(1e-10, 1e-10),
            2000,
        );
        match r {
            Ok(v) if v.converged && v.value.re.is_finite() && near.holder.is_finite() => worst = worst.max(v.value.re),
            Ok(_) => failures.push(format!("sigma={sigma}: no convergence")),
            Err(e) => failures.push(format!("sigma={sigma}: {e}")),
        }
    }
    let passed = failures.is_empty();
    ConditionVerdict {
        condition: "MT".into(),
        passed,
        witness: if passed { worst } else { f64::INFINITY },
        threshold: f64::INFINITY,
        detail: if passed {
            format!("int_0^1 x^(sigma-1)|f| finite for sigma in {exponents:?}")
        } else {
            failures.join("; ")
        },
    }
}
