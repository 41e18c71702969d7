use super::*;
use crate::complex::c;
use crate::quadrature::QuadratureSpec;

fn q() -> QuadratureSpec {
    QuadratureSpec::default()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

#[test]
fn tent_is_valid_and_bad_drifts_are_rejected() {
    let t = MomentFunction::tent(3).unwrap();
    assert_eq!(t.value_at(0.0), 1.0);
    assert!(close(t.value_at(0.2), 0.4, 1e-15));
    assert_eq!(t.value_at(0.5), 0.0);
    assert_eq!(t.breakpoints(), &[1.0 / 3.0]);
    assert!(MomentFunction::tent(0).is_err());
    assert!(MomentFunction::new("half", |x: f64| (1.0 - x).max(0.0) * 0.5, 1.0).is_err());
    assert!(MomentFunction::new("steep", |x: f64| (1.0 - 4.0 * x).max(0.0), 1.0).is_err());
    assert!(MomentFunction::new("long", |x: f64| (1.0 - 0.5 * x).max(0.0), 1.0).is_err());
    assert_eq!(MomentFunction::by_name("tent(2)").unwrap().name(), "tent(2)");
    assert_eq!(MomentFunction::by_name("zero").unwrap().value_at(0.0), 0.0);
    assert!(MomentFunction::by_name("nope").is_err());
}

#[test]
fn folded_normal_examples() {
    assert!(close(folded_normal_mean(0.3, 0.7).unwrap(), 0.60904086786310220487479854592, 1e-13));
    assert!(close(folded_normal_mean(-1.0, 2.0).unwrap(), 1.7911862296052241183741309876, 1e-13));
    assert!(close(folded_normal_mean(0.0, 1.0).unwrap(), 0.797884560802865355879892119869, 1e-14));
    assert!(folded_normal_mean(1.0, 0.0).is_err());
}

#[test]
fn chunks_cover_the_sample_count() {
    let c = chunk_sizes(10, 4);
    assert_eq!(c, vec![3, 3, 2, 2]);
    assert_eq!(c.iter().sum::<u64>(), 10);
}

#[test]
fn monte_carlo_is_deterministic_per_seed_and_workers() {
    let f = |rng: &mut rand_chacha::ChaCha8Rng| {
        use rand::Rng;
        rng.random::<f64>()
    };
    let a = monte_carlo(5000, 11, 4, f).unwrap();
    let b = monte_carlo(5000, 11, 4, f).unwrap();
    assert_eq!(a, b);
    let c = monte_carlo(5000, 12, 4, f).unwrap();
    assert_ne!(a.mean, c.mean);
    assert!(a.agrees_with(0.5, 4.0));
    assert!(monte_carlo(0, 1, 1, f).is_err());
}

#[test]
fn merged_moments_match_single_pass() {
    let xs: Vec<f64> = (0..100).map(|i| ((i * 37) % 101) as f64 / 7.0).collect();
    let mut all = Moments::default();
    xs.iter().for_each(|&x| all.push(x));
    let (mut a, mut b) = (Moments::default(), Moments::default());
    xs[..33].iter().for_each(|&x| a.push(x));
    xs[33..].iter().for_each(|&x| b.push(x));
    let m = a.merge(b);
    assert_eq!(m.n, all.n);
    assert!(close(m.mean, all.mean, 1e-14));
    assert!(close(m.variance(), all.variance(), 1e-12));
}

#[test]
fn brownian_increments_are_standard() {
    let s = increment_stats(4000, 64, 7, 4).unwrap();
    assert!(s.passes(4.0), "{s:?}");
}

#[test]
fn brownian_path_starts_at_zero_and_drift_adds() {
    let grid: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
    let p = sample_brownian(&grid, 3).unwrap();
    assert_eq!(p.values[0], 0.0);
    let m = MomentFunction::tent(2).unwrap();
    let d = add_drift(&p, &m);
    for (i, &t) in grid.iter().enumerate() {
        assert!(close(d.values[i] - p.values[i], m.value_at(t), 1e-15));
    }
    assert!(sample_brownian(&[0.0, 0.5, 0.4], 1).is_err());
}

#[test]
fn measure_mean_closed_form() {
    let m = MomentFunction::tent(1).unwrap();
    assert!(close(mean_under_r_m(0.0, &m).unwrap(), 0.5, 1e-15));
    // cell 3 at t = 2 and m(sqrt 2) = 0
    assert_eq!(mean_under_r_m(2.0, &m).unwrap(), 0.0);
    let t = 0.25;
    assert!(close(mean_under_r_m(t, &m).unwrap(), 0.5 * gaussian_weight(t) * 0.5, 1e-15));
}

#[test]
fn measure_mean_monte_carlo_agrees() {
    let m = MomentFunction::tent(1).unwrap();
    for (i, &t) in [0.0, 0.5, 2.0].iter().enumerate() {
        let est = mean_under_r_m_mc(t, &m, 40_000, 100 + i as u64, 4).unwrap();
        let exact = mean_under_r_m(t, &m).unwrap();
        assert!(est.agrees_with(exact, 3.0) || (est.mean - exact).abs() < 1e-12, "t={t}: {est:?} vs {exact}");
    }
}

#[test]
fn cell_frequencies_follow_the_geometric_law() {
    let f = cell_frequencies(40_000, 5, 4, 4).unwrap();
    for (i, e) in f.iter().enumerate() {
        assert!(e.agrees_with(0.5f64.powi(i as i32 + 1), 4.0), "cell {}: {e:?}", i + 1);
    }
    assert!(close(cell_mass(60), 1.0, 1e-15));
}

#[test]
fn wiener_riemann_path_is_drifted_on_its_cell() {
    let m = MomentFunction::tent(1).unwrap();
    let p = wiener_riemann_path(2, &m, 16, 9).unwrap();
    assert_eq!(p.n, 2);
    assert_eq!(p.values[0], p.value_at(0.0));
    assert_eq!(p.values[0], p.value_at(0.5));
}

#[test]
fn levy_density_normalizes_and_peaks() {
    let y0 = 1.5;
    let total = crate::quadrature::integrate(
        |y: f64| {
            let x = y.exp();
            x * levy_density(x, y0).unwrap()
        },
        &[-10.0, -2.0, 0.0, 2.0, 10.0, 40.0],
        crate::quadrature::Tolerance::new(1e-13, 1e-13),
        4000,
    );
    // mass beyond e^40 is about sqrt(2/pi) y0 e^-20
    assert!(close(total.value, 1.0, 1e-8));
    let peak = y0 * y0 / 3.0;
    let d = |x: f64| levy_density(x, y0).unwrap();
    assert!(d(peak) > d(peak * 1.01) && d(peak) > d(peak * 0.99));
    assert!(levy_density(0.0, y0).is_err());
}

#[test]
fn levy_moment_matches_closed_form() {
    assert!(close(levy_moment_closed_form(0.25, 1.0).unwrap(), 1.72007997464903907075240724893, 1e-13));
    for &u in &[0.1, 0.25, 0.4] {
        for &y0 in &[0.5, 1.0, 2.0] {
            match levy_moment(u, y0, &q()).unwrap() {
                LevyMoment::Finite { value, closed_form, .. } => {
                    assert!(close(value, closed_form, 1e-6), "u={u} y0={y0}: {value} vs {closed_form}")
                }
                other => panic!("u={u}: {other:?}"),
            }
        }
    }
}

#[test]
fn levy_moment_diverges_from_one_half() {
    for &u in &[0.5, 0.75] {
        let m = levy_moment(u, 1.0, &q()).unwrap();
        assert_eq!(m.verdict(), Verdict::Diverging, "u={u}: {m:?}");
        assert!(m.value().is_none());
    }
    assert!(levy_moment_closed_form(0.5, 1.0).is_err());
}

#[test]
fn diagnose_recognizes_growth_shapes() {
    let t = DEFAULT_LADDER;
    let power: Vec<f64> = t.iter().map(|x| x.powf(0.25)).collect();
    assert_eq!(diagnose(&t, &power).unwrap().verdict, Verdict::Diverging);
    let log: Vec<f64> = t.iter().map(|x| x.ln()).collect();
    let d = diagnose(&t, &log).unwrap();
    assert_eq!(d.verdict, Verdict::Diverging);
    assert!(d.log_growth);
    let conv: Vec<f64> = t.iter().map(|x| 2.0 - x.powf(-0.5)).collect();
    assert_eq!(diagnose(&t, &conv).unwrap().verdict, Verdict::Converged);
}

#[test]
fn b_s_pieces_match_oracle() {
    let cases = [
        (1, 0.25, 2.75517109222241137405546355153, 2.64012206323376028536428629572, 2.91469510784562802500171707111),
        (1, 0.6, 0.812376361279971509346236706011, 0.744186199420769947820913528291, 0.82877912505583504549845109986),
        (2, 0.25, 2.42281646815594837681559283441, 2.23142611186223450240523761137, 2.61083548854618887649357130206),
        (2, 0.6, 0.680113179610622286687888585117, 0.574611649923262963860256412337, 0.638835405090631382623464249514),
    ];
    for (k, u, direct, var_x, drift) in cases {
        let m = MomentFunction::tent(k).unwrap();
        let r = b_s_components(u, &m, &q()).unwrap();
        assert!(close(r.direct, direct, 1e-10), "k={k} u={u}: {}", r.direct);
        assert!(close(r.direct_variance_x, var_x, 1e-10), "k={k} u={u}: {}", r.direct_variance_x);
        assert!(close(r.upper_drift_piece, drift, 1e-10), "k={k} u={u}: {}", r.upper_drift_piece);
        assert!(r.bound_ordering_holds);
        assert_eq!(r.lower_prefactor, 0.0);
        assert_eq!(r.levy_factor.value().is_some(), u < 0.5);
        assert_eq!(r.lower_bound.is_some(), u < 0.5);
    }
    assert!(b_s_components(1.0, &MomentFunction::tent(1).unwrap(), &q()).is_err());
}

#[test]
fn m_s_matches_oracle_and_monte_carlo() {
    let m = MomentFunction::tent(2).unwrap();
    let s = c(0.5, 3.0);
    let v = m_s_value(s, &m, &q()).unwrap();
    assert!((v - c(0.00992645333336872063586716783165, -0.00717474243084953240797745044471)).norm() < 1e-10);
    let (re, im) = m_s_mc(s, &m, 200_000, 21, 4).unwrap();
    assert!(re.agrees_with(v.re, 4.0), "{re:?} vs {}", v.re);
    assert!(im.agrees_with(v.im, 4.0), "{im:?} vs {}", v.im);
    assert!(m_s_value(c(1.2, 0.0), &m, &q()).is_err());
}
