use std::f64::consts::PI;

use super::*;
use crate::poisson_space::{builtin, exp_inverse, gaussian, gaussian_p, hermite_even};

fn q() -> QuadratureSpec {
    QuadratureSpec::default()
}

fn close(a: C64, b: C64, rel: f64) -> bool {
    (a - b).norm() <= rel * b.norm()
}

#[test]
fn symmetrize_reflects() {
    let f = exp_inverse();
    let s = symmetrize(&f);
    assert_eq!(s(-2.0), (-2.0f64).exp());
    assert_eq!(s(0.0), f.value_at(0.0));
    let g = gaussian();
    let sg = symmetrize(&g);
    for x in [-1.5, -0.2, 0.7] {
        assert_eq!(sg(x), (-PI * x * x).exp());
    }
}

#[test]
fn fourier_of_gaussian_is_fixed() {
    let g = gaussian().without_companions();
    for x in [0.0, 0.05, 0.3, 1.0, 2.5] {
        let v = fourier_cosine(&g, x, &q()).unwrap();
        assert!((v.value - (-PI * x * x).exp()).abs() < 1e-10, "x={x}");
    }
}

#[test]
fn fourier_of_exp_inverse() {
    let f = exp_inverse();
    let v = fourier_cosine(&f, 0.3, &q()).unwrap();
    assert!((v.value - 0.439265254816011524640313429596).abs() < 1e-12);
    let cross = v.cross_check.unwrap();
    assert!((cross - v.value).abs() < 1e-8);
    let at0 = fourier_cosine_quadrature(&f, 0.0, &q()).unwrap();
    assert!((at0.value - 2.0).abs() < 1e-10);
}

#[test]
fn fourier_of_scaled_gaussian() {
    let f = gaussian_p(2.0).unwrap().without_companions();
    let v = fourier_cosine(&f, 0.7, &q()).unwrap();
    assert!((v.value - 0.264527840332126212157731671921).abs() < 1e-10);
}

#[test]
fn fourier_of_slowly_decaying_transform() {
    // the transform of 2/(1+4 pi^2 y^2) is exp(-|x|)
    let fhat = exp_inverse().fourier_function().unwrap().without_companions();
    for x in [0.5, 1.0, 3.0] {
        let v = fourier_cosine_quadrature(&fhat, x, &q().with_tol(1e-9)).unwrap();
        assert!((v.value - (-x).exp()).abs() < 1e-7, "x={x}: {}", v.value);
    }
}

#[test]
fn mellin_matches_gamma() {
    let f = exp_inverse();
    let refs = [
        (c(0.25, 0.0), c(3.62560990822190831193068515587, 0.0)),
        (c(0.5, 0.0), c(1.77245385090551602729816748334, 0.0)),
        (c(1.5, 0.0), c(0.886226925452758013649083741671, 0.0)),
        (c(1.5, 3.0), c(-0.00987325923556971071293908033379, 0.0677696940759227771357776536647)),
        (c(0.5, 5.0), c(-0.000969480705269949478320551888591, 0.0000836303912996137246610082764236)),
    ];
    for (s, want) in refs {
        let v = mellin(&f, s, &q()).unwrap();
        assert!(close(v.value, want, 1e-9), "s={s}: {} vs {want}", v.value);
        assert!(close(v.cross_check.unwrap(), want, 1e-12));
    }
}

#[test]
fn mellin_of_gaussian() {
    let g = gaussian();
    let v = mellin(&g, c(2.0, 0.0), &q()).unwrap();
    assert!((v.value.re - 1.0 / (2.0 * PI)).abs() < 1e-12);
    let refs = [
        (c(0.5, 10.0), c(-0.000243791600238783084348215209701, -0.0000182006268547892074981748022553)),
        (c(3.0, -2.0), c(0.0285631290278969873968885001485, 0.0437675698627294638244850313291)),
        (c(0.2, 0.0), c(4.24224445843102002209072074829, 0.0)),
    ];
    for (s, want) in refs {
        let v = mellin(&g, s, &q()).unwrap();
        assert!(close(v.value, want, 1e-8), "s={s}: {} vs {want}", v.value);
    }
}

#[test]
fn mellin_rejects_left_half_plane() {
    let g = gaussian();
    assert!(matches!(mellin(&g, c(-1.0, 0.0), &q()), Err(Error::Domain(_))));
    assert!(matches!(mellin(&g, c(0.0, 2.0), &q()), Err(Error::Domain(_))));
}

#[test]
fn hermite_mellin_companions_agree_with_quadrature() {
    let s = c(1.5, 2.0);
    let d = hermite_even(2, 1.3, HermiteKind::Derivative).unwrap();
    let want = c(1.18821547482324048656826371726, 0.245120151880952428806720868292);
    let v = mellin(&d, s, &q()).unwrap();
    assert!(close(v.value, want, 1e-9));
    assert!(close(v.cross_check.unwrap(), want, 1e-12));
    let e = hermite_even(2, 1.3, HermiteKind::Eigen).unwrap();
    let want = c(1.55714299716965831040227244676, -0.0237173105071923928042733885537);
    assert!(close(mellin(&e, s, &q()).unwrap().value, want, 1e-9));
    assert!(close(e.mellin_at(s).unwrap().unwrap(), want, 1e-12));
}

#[test]
fn hermite_transform_companion() {
    let e = hermite_even(4, 0.8, HermiteKind::Eigen).unwrap();
    assert!((e.fourier_at(0.9).unwrap() - 0.0732893994551790515881525347427).abs() < 1e-12);
    let quad = fourier_cosine_quadrature(&e.clone().without_companions(), 0.9, &q()).unwrap();
    assert!((quad.value - 0.0732893994551790515881525347427).abs() < 1e-9);
}

#[test]
fn theta_examples() {
    let sp = SeriesSpec::default();
    let g = theta(&gaussian(), 1.0, &sp).unwrap();
    assert!((g.value - 0.0432174056066540072876580607551).abs() <= g.error_estimate);
    let tight = SeriesSpec { tail_tol: 1e-15, ..sp };
    let g = theta(&gaussian(), 1.0, &tight).unwrap();
    assert!((g.value - 0.0432174056066540072876580607551).abs() < 1e-16);
    assert!(g.evaluations <= 4);
    let h = theta(&gaussian(), 0.5, &tight).unwrap();
    assert!((h.value - 0.500006974684712417991279357456).abs() < 1e-14);
    let e = theta(&exp_inverse(), 1.0, &tight).unwrap();
    assert!((e.value - 1.0 / (1.0f64.exp() - 1.0)).abs() < 1e-14);
    assert!(matches!(theta(&gaussian(), 0.0, &sp), Err(Error::Domain(_))));
}

#[test]
fn lorentzian_theta_closed_form() {
    let fhat = exp_inverse().fourier_function().unwrap();
    for (x, want) in [
        (1.0, 0.081976706869326424385002005109),
        (3.0, 0.0092421577190430081706602058188),
        (0.2, 1.53391827453152113088335348407),
    ] {
        assert!((fhat.theta_closed_form(x).unwrap() - want).abs() < 1e-15 * want.max(1.0) * 10.0, "x={x}");
    }
    let series = theta(&fhat, 3.0, &SeriesSpec::default()).unwrap();
    assert!((series.value - 0.0092421577190430081706602058188).abs() <= series.error_estimate + 1e-14);
}

#[test]
fn theta_tail_bound_is_honest() {
    let sp = SeriesSpec {
        tail_tol: 1e-6,
        ..SeriesSpec::default()
    };
    let fhat = exp_inverse().fourier_function().unwrap();
    let short = theta(&fhat, 0.7, &sp).unwrap();
    let long = theta(&fhat, 0.7, &SeriesSpec { tail_tol: 1e-8, ..sp }).unwrap();
    assert!(long.evaluations > short.evaluations);
    assert!((long.value - short.value).abs() <= short.error_estimate);
}

#[test]
fn theta_needs_envelope() {
    let one = builtin("constant").unwrap();
    assert!(matches!(theta(&one, 1.0, &SeriesSpec::default()), Err(Error::Precondition(_))));
}

#[test]
fn eigen_checks() {
    let grid = [0.0, 0.3, 0.8, 1.5];
    let sq = PI.sqrt();
    assert!(eigen_check(0, sq, HermiteKind::Derivative, &grid, &q()).unwrap() < 1e-9);
    assert!(eigen_check(0, 1.0, HermiteKind::Derivative, &grid, &q()).unwrap() < 1e-9);
    assert!(eigen_check(2, sq, HermiteKind::Eigen, &grid, &q()).unwrap() < 1e-7);
    assert!(eigen_check(4, 0.8, HermiteKind::Eigen, &grid, &q()).unwrap() < 1e-7);
    // the second derivative of the gaussian is not an eigenfunction: at x = 0
    // the transform vanishes while lambda h(0) = -2 p^2 lambda
    let r = eigen_check(2, sq, HermiteKind::Derivative, &[0.0], &q()).unwrap();
    assert!((r - 2.0 * PI).abs() < 1e-8);
    assert!(matches!(eigen_check(1, 1.0, HermiteKind::Eigen, &grid, &q()), Err(Error::Domain(_))));
}

#[test]
fn eigen_continuation_classical_case() {
    let sp = SeriesSpec::default();
    let r = eigen_continuation_residual(0, PI.sqrt(), HermiteKind::Derivative, c(2.0, 0.0), &q(), &sp).unwrap();
    assert!(r.abs_residual < 1e-6, "{r:?}");
    let r3 = eigen_continuation_residual(0, 1.0, HermiteKind::Derivative, c(3.0, 0.0), &q(), &sp).unwrap();
    assert!(r3.abs_residual.is_finite());
    assert!(matches!(
        eigen_continuation_residual(0, 1.0, HermiteKind::Derivative, c(1.0, 0.0), &q(), &sp),
        Err(Error::Pole { .. })
    ));
    assert!(matches!(
        eigen_continuation_residual(2, 1.0, HermiteKind::Derivative, c(1.5, 0.0), &q(), &sp),
        Err(Error::Domain(_))
    ));
}
