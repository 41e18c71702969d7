use std::f64::consts::{E, PI};

use super::*;
use crate::error::Error;
use crate::transforms::{HermiteKind, SeriesSpec};

#[test]
fn builtin_lookup() {
    let g = builtin("gaussian").unwrap();
    assert_eq!(g.value_at(0.0), 1.0);
    assert_eq!(g.fourier_at(0.0), Some(1.0));
    let e = builtin("exp_inverse").unwrap();
    assert_eq!(e.value_at(1.0), (-1.0f64).exp());
    assert!(matches!(builtin("nope"), Err(Error::UnknownName(_))));
    assert!(matches!(builtin("gaussian_p(x)"), Err(Error::Parse(_))));
    let p = builtin("gaussian_p(2)").unwrap();
    assert!((p.value_at(0.5) - (-1.0f64).exp()).abs() < 1e-15);
    let h = builtin("hermite_even(2, 1.5, eigen)").unwrap();
    assert_eq!(h.name(), "hermite_even(2,1.5,eigen)");
    assert!(matches!(builtin("hermite_even(3,1)"), Err(Error::Domain(_))));
}

#[test]
fn members_pass_every_condition() {
    for name in ["gaussian", "exp_inverse", "gaussian_p(0.7)", "gaussian_p(3)"] {
        let r = check_membership(&builtin(name).unwrap(), &SamplingGrid::default());
        assert!(r.member, "{name}: {:?}", r.failed());
        assert_eq!(r.verdicts.len(), 6);
    }
}

#[test]
fn constant_fails_integrability() {
    let r = check_membership(&constant(), &SamplingGrid::default());
    assert!(!r.member);
    assert!(!r.verdict("P1").unwrap().passed);
    assert!(r.verdict("P0").unwrap().passed);
}

#[test]
fn hermite_derivative_fails_normalization() {
    let h = hermite_even(2, 1.0, HermiteKind::Derivative).unwrap();
    let r = check_membership(&h, &SamplingGrid::default());
    assert!(!r.verdict("P0").unwrap().passed);
    assert!(r.verdict("P1").unwrap().passed, "{:?}", r.verdict("P1"));
    assert!(r.verdict("MT").unwrap().passed);
}

#[test]
fn understated_decay_constant_is_caught() {
    let f = gaussian().with_decay_constants(Some(0.5), Some(1.0));
    let r = check_membership(&f, &SamplingGrid::default());
    assert!(!r.verdict("P1").unwrap().passed);
}

#[test]
fn psf_gaussian() {
    let r = psf_residual(&gaussian(), &SeriesSpec::default()).unwrap();
    assert!(r.residual < 1e-12);
    assert!(r.one_sided_residual < 1e-12);
}

#[test]
fn psf_exp_inverse() {
    let r = psf_residual(&exp_inverse(), &SeriesSpec::default()).unwrap();
    assert!(r.residual < 1e-8, "{r:?}");
    assert!((r.one_sided_lhs - (1.0 / (E - 1.0) + 1.0)).abs() <= r.series_error);
    assert!((r.two_sided_lhs - (E + 1.0) / (E - 1.0)).abs() <= r.series_error);
    // the one-sided form is off by (f̂(0) - f(0))/2
    assert!((r.one_sided_residual - 0.5).abs() < 1e-8);
}

#[test]
fn psf_rejects_non_members() {
    assert!(matches!(
        psf_residual(&constant(), &SeriesSpec::default()),
        Err(Error::Membership { .. })
    ));
}

#[test]
fn scaled_psf() {
    let sp = SeriesSpec {
        tail_tol: 1e-13,
        ..SeriesSpec::default()
    };
    for a in [0.3, 1.0, 2.5] {
        assert!(psf_scaled_residual(&gaussian(), a, &sp).unwrap() < 1e-12, "a={a}");
        assert!(psf_scaled_residual(&gaussian_p(1.7).unwrap(), a, &sp).unwrap() < 1e-11, "a={a}");
    }
}

#[test]
fn fourier_function_swaps_roles() {
    let f = exp_inverse();
    let fh = f.fourier_function().unwrap();
    assert_eq!(fh.value_at(0.0), 2.0);
    assert_eq!(fh.fourier_at(1.0), Some((-1.0f64).exp()));
    assert_eq!(fh.decay_constant(), Some(2.0));
    assert!((fh.value_at(0.5) - 2.0 / (1.0 + PI * PI)).abs() < 1e-15);
}

#[test]
fn toml_loader() {
    let text = r#"
[[function]]
name = "wide"
family = "gaussian_p"
p = 0.5
companions = false

[[function]]
name = "h4"
family = "hermite_even"
n = 4
p = 1.2
kind = "eigen"

[[function]]
name = "plain"
family = "exp_inverse"
decay_constant = 1.5
"#;
    let fs = parse_test_functions(text).unwrap();
    assert_eq!(fs.len(), 3);
    assert_eq!(fs[0].name(), "wide");
    assert!(!fs[0].has_fourier());
    assert!(fs[1].has_fourier());
    assert_eq!(fs[2].decay_constant(), Some(1.5));
    assert_eq!(resolve("plain", &fs).unwrap().decay_constant(), Some(1.5));
    assert_eq!(resolve("gaussian", &fs).unwrap().name(), "gaussian");
    assert!(parse_test_functions("[[function]]\nname='x'\nfamily='gaussian_p'\n").is_err());
    assert!(parse_test_functions("[[function]]\nname='x'\nfamily='gaussian'\nbogus=1\n").is_err());
}
