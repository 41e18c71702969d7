use super::*;
use crate::special_functions::zero_scan;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

#[test]
fn tent_family_examples() {
    let m1 = tent_moment(1).unwrap();
    assert_eq!(m1.value_at(0.0), 1.0);
    assert_eq!(m1.value_at(1.0), 0.0);
    for k in [1, 2, 4, 8, 16] {
        assert_eq!(tent_moment(k).unwrap().value_at(2.0), 0.0);
    }
    for &x in &[0.01, 0.1, 0.3] {
        let vals: Vec<f64> = [1, 2, 4, 8].iter().map(|&k| tent_moment(k).unwrap().value_at(x)).collect();
        assert!(vals.windows(2).all(|w| w[1] <= w[0]));
    }
    assert!(tent_moment(0).is_err());
}

#[test]
fn tent_theta_closed_form_matches_series() {
    for &(k, x) in &[(1u32, 1.3), (4, 2.7), (16, 37.5), (3, 0.4)] {
        let n = 200_000;
        let partial: f64 = (1..=n).map(|j| tent_fourier(k, j as f64 * x)).sum();
        // the tail averages sin² to 1/2
        let tail = k as f64 / (2.0 * PI * PI * x * x * n as f64);
        assert!(close(partial + tail, tent_theta_fourier(k, x), 1e-9), "k={k} x={x}");
    }
    assert_eq!(tent_fourier(2, 0.0), 0.5);
}

#[test]
fn tent_correction_matches_oracle() {
    let tol = Tolerance::new(1e-12, 1e-12);
    let cases = [
        (c(0.25, 5.0), 1, 0.01913120827856480433911533303047014643628),
        (c(0.25, 5.0), 2, 0.04301458172338616364741679331760085087826),
        (c(0.4, 14.0), 16, 0.03341951244592342100744907000580505524168),
    ];
    for (s, k, want) in cases {
        let (v, err) = tent_correction(s, k, tol, 4000).unwrap();
        assert!((v - want).abs() < 1e-10, "s={s} k={k}: {v} vs {want}");
        assert!(err < 1e-10);
    }
}

#[test]
fn config_validation() {
    let ok = ExperimentConfig::default();
    assert!(ok.validate().is_ok());
    let mut bad = ok.clone();
    bad.s_grid = vec![ComplexPoint::new(0.6, 3.0).unwrap()];
    assert!(bad.validate().is_err());
    let mut bad = ok.clone();
    bad.s_grid = vec![ComplexPoint::new(0.25, 0.0).unwrap()];
    assert!(bad.validate().is_err());
    let mut bad = ok.clone();
    bad.k_list = vec![1, 4, 2];
    assert!(bad.validate().is_err());
    let mut bad = ok;
    bad.drift_family = "bump".into();
    assert!(bad.validate().is_err());
}

fn small_config() -> ExperimentConfig {
    ExperimentConfig {
        s_grid: vec![ComplexPoint::new(0.25, 5.0).unwrap()],
        k_list: vec![1, 2],
        mc_samples: 4000,
        ..ExperimentConfig::default()
    }
}

#[test]
fn experiment_rows_match_oracle() {
    let rows = run_limit_experiment(&small_config()).unwrap();
    assert_eq!(rows.len(), 2);
    let want = [0.00227661033553717856976350408567143, 0.000826301688407821598368927877326397];
    for (r, w) in rows.iter().zip(want) {
        assert!((r.lhs_k - w).abs() < 1e-11, "k={}: {} vs {w}", r.k, r.lhs_k);
        let s = r.s.to_c64();
        assert!(close(r.rhs_variant_a, -im_inverse_pole(s).unwrap(), 1e-12));
        assert!(close(r.residual_a, r.lhs_k - r.rhs_variant_a + r.correction_term, 1e-15));
        assert!(!r.diag_flags.iter().any(|f| f.starts_with("error")), "{:?}", r.diag_flags);
    }
    assert_eq!(rows[0].rhs_variant_a, rows[1].rhs_variant_a);
    assert_eq!(rows[0].rhs_variant_b, rows[1].rhs_variant_b);
}

#[test]
fn experiment_csv_is_deterministic() {
    let cfg = small_config();
    let mut a = Vec::new();
    let mut b = Vec::new();
    write_experiment_csv(&run_limit_experiment(&cfg).unwrap(), &mut a).unwrap();
    write_experiment_csv(&run_limit_experiment(&cfg).unwrap(), &mut b).unwrap();
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("s_re,s_im,k,lhs,rhs_a,rhs_b,correction,residual_a,residual_b,diag_flags\n"));
}

#[test]
fn empty_k_list_gives_no_rows() {
    let cfg = ExperimentConfig { k_list: vec![], ..small_config() };
    assert!(run_limit_experiment(&cfg).unwrap().is_empty());
}

#[test]
fn mac_audit_of_scanned_zeros() {
    assert!(mac_audit(&[]).is_empty());
    let zeros = zero_scan(10.0, 40.0, 0.05).unwrap();
    let audit = mac_audit(&zeros);
    assert_eq!(audit.len(), zeros.len());
    for a in &audit {
        let rho = a.zero.location;
        assert!(a.distance_to_critical_line < 1e-6);
        assert_eq!(a.trivial_zeta_value, rho.im() * (2.0 * rho.re() - 1.0));
        assert!(close(a.distance_to_critical_line, a.trivial_zeta_value.abs() / rho.im(), 1e-15));
    }
}

#[test]
fn zero_symmetry() {
    let rho = ComplexPoint::new(0.5, 14.134725141734694).unwrap();
    let (conj, refl) = zero_symmetry_check(rho, 1e-4).unwrap();
    assert!(conj < 1e-3 && refl < 1e-3);
    assert!(matches!(
        zero_symmetry_check(ComplexPoint::new(0.5, 20.0).unwrap(), 1e-4),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn ledger_numbers_are_locked() {
    let l = discrepancy_ledger(&QuadratureSpec::default(), &SeriesSpec::default()).unwrap();
    assert!(l.sign_identity_max_deviation < 1e-12);
    assert_eq!(l.value_at_zero_measured, 0.5);
    assert_eq!(l.value_at_zero_printed, 1.0);
    assert!((l.one_sided_psf_residual_exp_inverse - 0.5).abs() < 1e-8);
    let (_, _, at_two) = &l.paper_constant_residuals[0];
    assert!((at_two - 0.25).abs() < 1e-8);
    for (name, s, r) in &l.paper_constant_residuals {
        let s = s.to_c64();
        let f_hat0 = if name == "exp_inverse" { 2.0 } else { 1.0 };
        let derived = f_hat0 / (2.0 * (s - 1.0)) - 1.0 / (2.0 * s);
        let want = (1.0 / (s * (s - 1.0)) - derived).norm();
        assert!((r - want).abs() < 1e-8, "{name} at {s}: {r} vs {want}");
    }
    assert!(l.paper_printed_residuals.iter().all(|(_, _, r)| *r > 1e-3));
    assert!(l.derived_constant_residuals.iter().all(|(_, _, r)| *r < 1e-6));
}
