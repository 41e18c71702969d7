use serde_json::Value;
use zetalab_core::experiment::{
    discrepancy_ledger, mac_audit, run_limit_experiment, ExperimentConfig, EXPERIMENT_CSV_HEADER,
};
use zetalab_core::muntz_relations::{
    im_muntz_residual, muntz_residual, rface_zeta, ImConstant, ImMuntzOptions, MuntzVariant, Oscillation,
};
use zetalab_core::poisson_space::{check_membership, load_test_functions, psf_residual, resolve, SamplingGrid};
use zetalab_core::report::RESIDUAL_CSV_HEADER;
use zetalab_core::special_functions::{hurwitz_zeta, riemann_zeta, zero_scan, zeta_h};
use zetalab_core::stochastic::{
    add_drift, b_s_components, cell_frequencies, increment_stats, levy_moment, m_s_mc, m_s_value, mean_under_r_m,
    mean_under_r_m_mc, sample_brownian, LevyMoment, MomentFunction,
};
use zetalab_core::transforms::{fourier_cosine, mellin, theta};
use zetalab_core::{ComplexPoint, QuadratureSpec, ResidualReport, SeriesSpec, TestFunction, C64};

use crate::args::{
    Command, Common, ImConstantArg, McTask, OscillationArg, Points, Route, TestFn, TransformKind, ZetaFunction,
};
use crate::error::CliError;
use crate::table::{s9, Cell, Table};

/// What a command produced: lines for stdout, tables for files and any
/// extra parameters worth recording in the manifest.
pub struct Outcome {
    pub summary: Vec<String>,
    pub tables: Vec<Table>,
    pub parameters: Option<Value>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            summary: Vec::new(),
            tables: Vec::new(),
            parameters: None,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse_complex(text: &str) -> Result<C64, CliError> {
    let p: ComplexPoint = text.parse().map_err(|e: zetalab_core::Error| usage(e.to_string()))?;
    Ok(p.to_c64())
}

fn points(p: &Points) -> Result<Option<Vec<C64>>, CliError> {
    let mut out = Vec::new();
    if let Some(s) = &p.s {
        out.push(parse_complex(s)?);
    }
    if let Some(grid) = &p.s_grid {
        for item in grid.split(',').filter(|t| !t.trim().is_empty()) {
            out.push(parse_complex(item)?);
        }
    }
    Ok(if out.is_empty() { None } else { Some(out) })
}

fn require_points(p: &Points) -> Result<Vec<C64>, CliError> {
    points(p)?.ok_or_else(|| usage("give --s or --s-grid"))
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| usage(format!("bad {what} '{t}'"))))
        .collect()
}

fn quadrature(c: &Common) -> Result<QuadratureSpec, CliError> {
    if !(c.tol > 0.0) {
        return Err(usage("--tol must be positive"));
    }
    Ok(QuadratureSpec::default().with_tol(c.tol))
}

fn test_function(t: &TestFn) -> Result<TestFunction, CliError> {
    let extra = match &t.testfn_file {
        Some(path) => load_test_functions(path)?,
        None => Vec::new(),
    };
    Ok(resolve(&t.testfn, &extra)?)
}

fn cplx(z: C64) -> String {
    format!("{}{}{}i", s9(z.re), if z.im < 0.0 { "-" } else { "+" }, s9(z.im.abs()))
}

pub fn execute(cmd: &Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Zeta { points: p, route, function, a, .. } => zeta(&require_points(p)?, *route, *function, *a),
        Command::Zeros { t_min, t_max, step, .. } => zeros(*t_min, *t_max, *step),
        Command::Muntz { points: p, testfn, variant, im, im_constant, oscillation, common } => {
            let f = test_function(testfn)?;
            let opts = ImMuntzOptions {
                constant: match im_constant {
                    ImConstantArg::Derived => ImConstant::Derived,
                    ImConstantArg::InversePole => ImConstant::InversePole,
                },
                oscillation: match oscillation {
                    OscillationArg::Logarithmic => Oscillation::Logarithmic,
                    OscillationArg::Linear => Oscillation::Linear,
                },
            };
            let variant = if *im { None } else { Some(MuntzVariant::parse(variant).map_err(|e| usage(e.to_string()))?) };
            muntz(&f, &require_points(p)?, variant, opts, common)
        }
        Command::Psf { testfn, .. } => psf(&test_function(testfn)?),
        Command::Transform { kind, points: p, x, testfn, common } => {
            transform(*kind, p, x.as_deref(), &test_function(testfn)?, common)
        }
        Command::Levy { u, y0, common } => levy(&parse_list(u, "moment order")?, *y0, common),
        Command::Mc { task, t, k, steps, u, points: p, common } => mc(*task, t, *k, *steps, *u, p, common),
        Command::Experiment { points: p, k_list, common } => experiment(p, k_list, common),
        Command::Report { inputs, ledger, common } => report(inputs, *ledger, common),
        Command::Replay { .. } => unreachable!("replay is handled by the manifest module"),
    }
}

fn zeta(points: &[C64], route: Route, function: ZetaFunction, a: f64) -> Result<Outcome, CliError> {
    let mut out = Outcome::new();
    let mut t = Table::new("", &["s_re", "s_im", "value_re", "value_im", "route", "route_difference"]);
    for &s in points {
        let (value, label, diff) = match function {
            ZetaFunction::Hurwitz => (hurwitz_zeta(s, a)?, "hurwitz", f64::NAN),
            ZetaFunction::ZetaH => (zeta_h(s)?, "zeta-h", f64::NAN),
            ZetaFunction::Riemann => match route {
                Route::Auto => (riemann_zeta(s)?, "auto", f64::NAN),
                Route::Rface => (rface_zeta(s)?, "rface", f64::NAN),
                Route::Both => {
                    let v = riemann_zeta(s)?;
                    (v, "both", (v - rface_zeta(s)?).norm())
                }
            },
        };
        out.summary.push(if value.im == 0.0 { s9(value.re) } else { cplx(value) });
        if diff.is_finite() {
            out.summary.push(format!("route difference {}", s9(diff)));
        }
        t.push(vec![s.re.into(), s.im.into(), value.re.into(), value.im.into(), label.into(), diff.into()]);
    }
    out.tables.push(t);
    Ok(out)
}

fn zeros(t_min: f64, t_max: f64, step: f64) -> Result<Outcome, CliError> {
    let zs = zero_scan(t_min, t_max, step)?;
    let audit = mac_audit(&zs);
    let mut t = Table::new(
        "",
        &["ordinate", "re", "im", "zeta_abs", "bracket_width", "distance_to_critical_line", "trivial_zeta"],
    );
    for a in &audit {
        let z = &a.zero;
        t.push(vec![
            z.ordinate.into(),
            z.location.re().into(),
            z.location.im().into(),
            z.zeta_magnitude.into(),
            z.bracket_width.into(),
            a.distance_to_critical_line.into(),
            a.trivial_zeta_value.into(),
        ]);
    }
    let max_d = audit.iter().map(|a| a.distance_to_critical_line).fold(0.0, f64::max);
    let mut out = Outcome::new();
    out.summary.push(format!("{} zeros in [{t_min}, {t_max}]", zs.len()));
    for z in &zs {
        out.summary.push(format!("  {}", s9(z.ordinate)));
    }
    out.summary.push(format!("max distance to the critical line {}", s9(max_d)));
    out.tables.push(t);
    Ok(out)
}

fn residual_row(t: &mut Table, r: &ResidualReport) {
    t.push(vec![
        r.s.re().into(),
        r.s.im().into(),
        r.lhs.re().into(),
        r.lhs.im().into(),
        r.rhs.re().into(),
        r.rhs.im().into(),
        r.abs_residual.into(),
        r.rel_residual.into(),
        r.variant.as_str().into(),
    ]);
}

fn muntz(
    f: &TestFunction,
    points: &[C64],
    variant: Option<MuntzVariant>,
    opts: ImMuntzOptions,
    c: &Common,
) -> Result<Outcome, CliError> {
    let q = quadrature(c)?;
    let sp = SeriesSpec::default();
    let mut out = Outcome::new();
    let mut t = Table::new("", &RESIDUAL_CSV_HEADER);
    for &s in points {
        let r = match variant {
            Some(v) => muntz_residual(f, s, v, &q, &sp)?,
            None => im_muntz_residual(f, s, opts, &q, &sp)?,
        };
        out.summary.push(format!(
            "{} s={}: abs_residual {} ({})",
            f.name(),
            cplx(s),
            s9(r.abs_residual),
            r.variant.as_str()
        ));
        residual_row(&mut t, &r);
    }
    out.tables.push(t);
    Ok(out)
}

fn psf(f: &TestFunction) -> Result<Outcome, CliError> {
    let m = check_membership(f, &SamplingGrid::default());
    let mut out = Outcome::new();
    let mut t = Table::new("membership", &["condition", "passed", "witness", "threshold", "detail"]);
    for v in &m.verdicts {
        t.push(vec![
            v.condition.as_str().into(),
            v.passed.into(),
            v.witness.into(),
            v.threshold.into(),
            v.detail.as_str().into(),
        ]);
    }
    out.tables.push(t);
    out.summary.push(format!("{}: member = {}", f.name(), m.member));
    if !m.member {
        out.summary.push(format!("failed: {}", m.failed().join(", ")));
        return Ok(out);
    }
    let r = psf_residual(f, &SeriesSpec::default())?;
    let mut s = Table::new("summation", &["quantity", "value"]);
    for (k, v) in [
        ("theta", r.theta),
        ("fourier_theta", r.fourier_theta),
        ("value_at_zero", r.value_at_zero),
        ("fourier_at_zero", r.fourier_at_zero),
        ("two_sided_lhs", r.two_sided_lhs),
        ("two_sided_rhs", r.two_sided_rhs),
        ("residual", r.residual),
        ("one_sided_lhs", r.one_sided_lhs),
        ("one_sided_rhs", r.one_sided_rhs),
        ("one_sided_residual", r.one_sided_residual),
        ("series_error", r.series_error),
    ] {
        s.push(vec![k.into(), v.into()]);
    }
    out.summary.push(format!(
        "two-sided {} = {}, residual {}",
        s9(r.two_sided_lhs),
        s9(r.two_sided_rhs),
        s9(r.residual)
    ));
    out.summary.push(format!("one-sided residual {}", s9(r.one_sided_residual)));
    out.tables.push(s);
    Ok(out)
}

fn transform(kind: TransformKind, p: &Points, x: Option<&str>, f: &TestFunction, c: &Common) -> Result<Outcome, CliError> {
    let q = quadrature(c)?;
    let sp = SeriesSpec::default();
    let mut out = Outcome::new();
    let mut t = Table::new(
        "",
        &["arg_re", "arg_im", "value_re", "value_im", "error_estimate", "cross_check_re", "cross_check_im"],
    );
    let nan = f64::NAN;
    match kind {
        TransformKind::Mellin => {
            for s in require_points(p)? {
                let v = mellin(f, s, &q)?;
                let cc = v.cross_check.unwrap_or(C64::new(nan, nan));
                out.summary.push(format!("M({})({}) = {}", f.name(), cplx(s), cplx(v.value)));
                t.push(vec![
                    s.re.into(),
                    s.im.into(),
                    v.value.re.into(),
                    v.value.im.into(),
                    v.error_estimate.into(),
                    cc.re.into(),
                    cc.im.into(),
                ]);
            }
        }
        TransformKind::Theta | TransformKind::Fourier => {
            let xs: Vec<f64> = parse_list(x.ok_or_else(|| usage("give --x"))?, "argument")?;
            for x in xs {
                let v = if kind == TransformKind::Theta { theta(f, x, &sp)? } else { fourier_cosine(f, x, &q)? };
                let label = if kind == TransformKind::Theta { "θ" } else { "F" };
                out.summary.push(format!("{label}({})({}) = {}", f.name(), s9(x), s9(v.value)));
                t.push(vec![
                    x.into(),
                    0.0.into(),
                    v.value.into(),
                    0.0.into(),
                    v.error_estimate.into(),
                    v.cross_check.unwrap_or(nan).into(),
                    0.0.into(),
                ]);
            }
        }
    }
    out.tables.push(t);
    Ok(out)
}

fn levy(us: &[f64], y0: f64, c: &Common) -> Result<Outcome, CliError> {
    let q = quadrature(c)?;
    let mut out = Outcome::new();
    let mut t = Table::new(
        "",
        &["u", "y0", "verdict", "value", "error", "closed_form", "growth_exponent", "r_squared", "log_growth"],
    );
    let mut ladder = Table::new("ladder", &["u", "truncation", "partial_value"]);
    for &u in us {
        let m = levy_moment(u, y0, &q)?;
        match &m {
            LevyMoment::Finite { value, error, closed_form } => {
                out.summary.push(format!(
                    "u={} y0={}: verdict=converged E(L^u) = {} (closed form {})",
                    s9(u),
                    s9(y0),
                    s9(*value),
                    s9(*closed_form)
                ));
                t.push(vec![
                    u.into(),
                    y0.into(),
                    "converged".into(),
                    (*value).into(),
                    (*error).into(),
                    (*closed_form).into(),
                    f64::NAN.into(),
                    f64::NAN.into(),
                    false.into(),
                ]);
            }
            LevyMoment::Divergent(d) => {
                let verdict = serde_json::to_value(d.verdict)?.as_str().unwrap_or("unknown").to_string();
                out.summary.push(format!(
                    "u={} y0={}: verdict={verdict} (increment exponent {}, R² {})",
                    s9(u),
                    s9(y0),
                    s9(d.growth_exponent_estimate),
                    s9(d.r_squared)
                ));
                t.push(vec![
                    u.into(),
                    y0.into(),
                    verdict.into(),
                    f64::NAN.into(),
                    f64::NAN.into(),
                    f64::NAN.into(),
                    d.growth_exponent_estimate.into(),
                    d.r_squared.into(),
                    d.log_growth.into(),
                ]);
                for (tr, pv) in d.truncations.iter().zip(&d.partial_values) {
                    ladder.push(vec![u.into(), (*tr).into(), (*pv).into()]);
                }
            }
        }
    }
    out.tables.push(t);
    if !ladder.rows.is_empty() {
        out.tables.push(ladder);
    }
    Ok(out)
}

fn mc(task: McTask, ts: &str, k: u32, steps: usize, u: f64, p: &Points, c: &Common) -> Result<Outcome, CliError> {
    let m = if k == 0 { MomentFunction::zero() } else { MomentFunction::tent(k)? };
    let mut out = Outcome::new();
    match task {
        McTask::Mean => {
            let mut t = Table::new("", &["t", "exact", "mc_mean", "std_error", "samples", "within_3se"]);
            for (i, time) in parse_list::<f64>(ts, "time")?.into_iter().enumerate() {
                let exact = mean_under_r_m(time, &m)?;
                let est = mean_under_r_m_mc(time, &m, c.samples, c.seed.wrapping_add(i as u64), c.workers)?;
                let ok = est.agrees_with(exact, 3.0);
                out.summary.push(format!(
                    "t={}: exact {}, Monte Carlo {} ± {}",
                    s9(time),
                    s9(exact),
                    s9(est.mean),
                    s9(est.std_error)
                ));
                t.push(vec![
                    time.into(),
                    exact.into(),
                    est.mean.into(),
                    est.std_error.into(),
                    est.n_samples.into(),
                    ok.into(),
                ]);
            }
            out.tables.push(t);
        }
        McTask::Increments => {
            let s = increment_stats(c.samples, steps, c.seed, c.workers)?;
            let mut t = Table::new("", &["quantity", "value", "std_error", "target"]);
            t.push(vec!["increment_variance".into(), s.variance.into(), s.variance_se.into(), 1.0.into()]);
            t.push(vec!["increment_kurtosis".into(), s.kurtosis.into(), s.kurtosis_se.into(), 3.0.into()]);
            t.push(vec![
                "terminal_variance".into(),
                s.terminal_variance.into(),
                s.terminal_variance_se.into(),
                1.0.into(),
            ]);
            out.summary.push(format!(
                "variance {} ± {}, kurtosis {} ± {}, Var B_1 {} ± {}; within 3·SE: {}",
                s9(s.variance),
                s9(s.variance_se),
                s9(s.kurtosis),
                s9(s.kurtosis_se),
                s9(s.terminal_variance),
                s9(s.terminal_variance_se),
                s.passes(3.0)
            ));
            out.tables.push(t);
        }
        McTask::Path => {
            let n = steps.max(1);
            let grid: Vec<f64> = (0..=n).map(|j| j as f64 / n as f64).collect();
            let b = sample_brownian(&grid, c.seed)?;
            let d = add_drift(&b, &m);
            let mut t = Table::new("", &["t", "brownian", "with_drift"]);
            for i in 0..grid.len() {
                t.push(vec![grid[i].into(), b.values[i].into(), d.values[i].into()]);
            }
            out.summary.push(format!("B_1 = {}, drift {}", s9(b.values[n]), m.name()));
            out.tables.push(t);
        }
        McTask::Cells => {
            let f = cell_frequencies(c.samples, c.seed, c.workers, 8)?;
            let mut t = Table::new("", &["cell", "frequency", "std_error", "expected"]);
            for (i, e) in f.iter().enumerate() {
                let expected = 0.5f64.powi(i as i32 + 1);
                t.push(vec![(i + 1).into(), e.mean.into(), e.std_error.into(), expected.into()]);
                out.summary.push(format!("cell {}: {} (expected {})", i + 1, s9(e.mean), s9(expected)));
            }
            out.tables.push(t);
        }
        McTask::MS => {
            let q = quadrature(c)?;
            let mut t = Table::new("", &["s_re", "s_im", "m_s_re", "m_s_im", "mc_re", "mc_re_se", "mc_im", "mc_im_se"]);
            for (i, s) in require_points(p)?.into_iter().enumerate() {
                let v = m_s_value(s, &m, &q)?;
                let (re, im) = m_s_mc(s, &m, c.samples, c.seed.wrapping_add(i as u64), c.workers)?;
                out.summary.push(format!(
                    "m_s({}) = {}; Monte Carlo {} ± {}, {} ± {}",
                    cplx(s),
                    cplx(v),
                    s9(re.mean),
                    s9(re.std_error),
                    s9(im.mean),
                    s9(im.std_error)
                ));
                t.push(vec![
                    s.re.into(),
                    s.im.into(),
                    v.re.into(),
                    v.im.into(),
                    re.mean.into(),
                    re.std_error.into(),
                    im.mean.into(),
                    im.std_error.into(),
                ]);
            }
            out.tables.push(t);
        }
        McTask::BS => {
            let q = quadrature(c)?;
            let r = b_s_components(u, &m, &q)?;
            let opt = |x: Option<f64>| x.unwrap_or(f64::NAN);
            let mut t = Table::new("", &["quantity", "value"]);
            for (k, v) in [
                ("direct", r.direct),
                ("direct_error", r.direct_error),
                ("direct_variance_x", r.direct_variance_x),
                ("upper_drift_piece", r.upper_drift_piece),
                ("upper_brownian_piece", r.upper_brownian_piece),
                ("upper_bound", r.upper_bound),
                ("levy_upper_piece", opt(r.levy_upper_piece)),
                ("levy_factor", opt(r.levy_factor.value())),
                ("lower_tail", r.lower_tail),
                ("lower_prefactor", r.lower_prefactor),
                ("lower_bound", opt(r.lower_bound)),
            ] {
                t.push(vec![k.into(), v.into()]);
            }
            out.summary.push(format!(
                "b_u at u={} ({}): direct {}, upper bound {}, ordering holds: {}",
                s9(u),
                m.name(),
                s9(r.direct),
                s9(r.upper_bound),
                r.bound_ordering_holds
            ));
            out.tables.push(t);
        }
    }
    Ok(out)
}

fn experiment(p: &Points, k_list: &str, c: &Common) -> Result<Outcome, CliError> {
    let mut cfg = ExperimentConfig {
        k_list: parse_list(k_list, "k")?,
        mc_samples: c.samples,
        seed: c.seed,
        workers: c.workers,
        quadrature: quadrature(c)?,
        ..ExperimentConfig::default()
    };
    if let Some(pts) = points(p)? {
        cfg.s_grid = pts.into_iter().map(ComplexPoint::try_from).collect::<Result<_, _>>()?;
    }
    let rows = run_limit_experiment(&cfg)?;
    let mut t = Table::new("", &EXPERIMENT_CSV_HEADER);
    let mut out = Outcome::new();
    for r in &rows {
        let flags = if r.diag_flags.is_empty() { "ok".to_string() } else { r.diag_flags.join(";") };
        out.summary.push(format!(
            "s={} k={}: lhs {}, rhs_a {}, rhs_b {}, correction {} [{flags}]",
            cplx(r.s.to_c64()),
            r.k,
            s9(r.lhs_k),
            s9(r.rhs_variant_a),
            s9(r.rhs_variant_b),
            s9(r.correction_term)
        ));
        t.push(vec![
            r.s.re().into(),
            r.s.im().into(),
            r.k.into(),
            r.lhs_k.into(),
            r.rhs_variant_a.into(),
            r.rhs_variant_b.into(),
            r.correction_term.into(),
            r.residual_a.into(),
            r.residual_b.into(),
            Cell::Text(flags),
        ]);
    }
    out.tables.push(t);
    out.parameters = Some(serde_json::to_value(&cfg)?);
    Ok(out)
}

fn report(inputs: &[std::path::PathBuf], ledger: bool, c: &Common) -> Result<Outcome, CliError> {
    let mut out = Outcome::new();
    if ledger {
        let l = discrepancy_ledger(&quadrature(c)?, &SeriesSpec::default())?;
        let mut t = Table::new("ledger", &["quantity", "testfn", "s_re", "s_im", "value"]);
        let groups = [
            ("paper_printed_residual", &l.paper_printed_residuals),
            ("paper_constant_residual", &l.paper_constant_residuals),
            ("derived_constant_residual", &l.derived_constant_residuals),
        ];
        for (label, list) in groups {
            for (name, s, r) in list.iter() {
                t.push(vec![label.into(), name.as_str().into(), s.re().into(), s.im().into(), (*r).into()]);
            }
        }
        let nan = f64::NAN;
        for (label, v) in [
            ("sign_identity_max_deviation", l.sign_identity_max_deviation),
            ("value_at_zero_measured", l.value_at_zero_measured),
            ("value_at_zero_printed", l.value_at_zero_printed),
            ("one_sided_psf_residual", l.one_sided_psf_residual_exp_inverse),
        ] {
            t.push(vec![label.into(), "".into(), nan.into(), nan.into(), v.into()]);
            out.summary.push(format!("{label}: {}", s9(v)));
        }
        out.tables.push(t);
        out.parameters = Some(serde_json::to_value(&l)?);
    }
    if !inputs.is_empty() {
        let mut merged: Option<Table> = None;
        for path in inputs {
            let mut r = csv::Reader::from_path(path)?;
            let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
            let t = merged.get_or_insert_with(|| Table {
                name: "merged".into(),
                columns: header.clone(),
                rows: Vec::new(),
            });
            if t.columns != header {
                return Err(usage(format!("{} has a different header", path.display())));
            }
            for rec in r.records() {
                let rec = rec?;
                t.rows.push(
                    rec.iter()
                        .map(|v| v.parse::<f64>().map_or_else(|_| Cell::Text(v.to_string()), Cell::Num))
                        .collect(),
                );
            }
        }
        let merged = merged.expect("at least one input");
        let mut summary = Table::new("summary", &["column", "finite", "min", "max"]);
        for (j, col) in merged.columns.iter().enumerate() {
            let vals: Vec<f64> = merged
                .rows
                .iter()
                .filter_map(|r| match r[j] {
                    Cell::Num(x) if x.is_finite() => Some(x),
                    _ => None,
                })
                .collect();
            if vals.is_empty() {
                continue;
            }
            let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            out.summary.push(format!("{col}: {} finite values in [{}, {}]", vals.len(), s9(lo), s9(hi)));
            summary.push(vec![col.as_str().into(), vals.len().into(), lo.into(), hi.into()]);
        }
        out.summary.insert(0, format!("{} rows from {} files", merged.rows.len(), inputs.len()));
        out.tables.push(merged);
        out.tables.push(summary);
    }
    if out.tables.is_empty() {
        return Err(usage("report needs input files or --ledger"));
    }
    Ok(out)
}
