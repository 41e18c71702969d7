use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn zetalab(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zetalab"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn zeta_at_two() {
    let dir = tempfile::tempdir().unwrap();
    let o = zetalab(&["zeta", "--s", "2"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("1.64493407"), "{}", stdout(&o));
    let csv = fs::read_to_string(dir.path().join("zeta.csv")).unwrap();
    let mut r = csv::Reader::from_reader(csv.as_bytes());
    let headers = r.headers().unwrap().clone();
    let re_col = headers.iter().position(|h| h == "value_re").expect("value_re column");
    let rec = r.records().next().unwrap().unwrap();
    let v: f64 = rec[re_col].parse().unwrap();
    assert!((v - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-13);
}

#[test]
fn levy_divergence_is_a_result_not_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = zetalab(&["levy", "--u", "0.5", "--y0", "1"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("diverging"), "{}", stdout(&o));
}

#[test]
fn pole_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let o = zetalab(&["muntz", "--s", "1", "--testfn", "gaussian"], dir.path());
    assert_eq!(o.status.code(), Some(3));
    assert!(!o.stderr.is_empty());
}

#[test]
fn usage_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(zetalab(&["zeta", "--bogus"], dir.path()).status.code(), Some(1));
    assert_eq!(zetalab(&["zeta", "--s", "not-a-number"], dir.path()).status.code(), Some(1));
    assert_eq!(zetalab(&["nonsense"], dir.path()).status.code(), Some(1));
}

#[test]
fn replay_reproduces_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let o = zetalab(&["mc", "--task", "mean", "--samples", "4000", "--seed", "9"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let manifest = dir.path().join("mc.manifest.json");
    let m: serde_json::Value = serde_json::from_str(&fs::read_to_string(&manifest).unwrap()).unwrap();
    assert_eq!(m["seed"], 9);
    assert!(!m["outputs"].as_array().unwrap().is_empty());

    let again = dir.path().join("again");
    let o = Command::new(env!("CARGO_BIN_EXE_zetalab"))
        .args(["replay", manifest.to_str().unwrap(), "--out", again.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(
        fs::read(dir.path().join("mc.csv")).unwrap(),
        fs::read(again.join("mc.csv")).unwrap()
    );
}

#[test]
fn replay_detects_tampering() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(zetalab(&["zeta", "--s", "3"], dir.path()).status.code(), Some(0));
    let manifest = dir.path().join("zeta.manifest.json");
    let mut m: serde_json::Value = serde_json::from_str(&fs::read_to_string(&manifest).unwrap()).unwrap();
    m["outputs"][0]["sha256"] = "00".into();
    fs::write(&manifest, serde_json::to_string(&m).unwrap()).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_zetalab"))
        .args(["replay", manifest.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn csv_and_json_agree() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["zeta", "--s-grid", "0.5+14i,2,-3.5"];
    let csv_dir = dir.path().join("csv");
    let json_dir = dir.path().join("json");
    assert_eq!(zetalab(&args, &csv_dir).status.code(), Some(0));
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    assert_eq!(zetalab(&json_args, &json_dir).status.code(), Some(0));

    let csv = fs::read_to_string(csv_dir.join("zeta.csv")).unwrap();
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(json_dir.join("zeta.json")).unwrap()).unwrap();
    let rows = json.as_array().expect("array of rows");
    let mut r = csv::Reader::from_reader(csv.as_bytes());
    let headers = r.headers().unwrap().clone();
    let mut n = 0;
    for (i, rec) in r.records().enumerate() {
        let rec = rec.unwrap();
        for (h, v) in headers.iter().zip(rec.iter()) {
            let j = &rows[i][h];
            match v.parse::<f64>() {
                Ok(x) if j.is_number() => assert_eq!(Some(x), j.as_f64(), "{h}"),
                _ if j.is_null() => assert!(v.is_empty() || v == "NaN", "{h}: {v}"),
                _ => assert_eq!(j.as_str().map(str::to_string).unwrap_or_else(|| j.to_string()), v, "{h}"),
            }
        }
        n += 1;
    }
    assert_eq!(n, rows.len());
    assert_eq!(n, 3);
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# mc settings\nseed = 5\nsamples = 2000\ntask = mean\nt = 0.5\n").unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    let c = dir.path().join("c");
    let cfg = cfg.to_str().unwrap();
    assert_eq!(zetalab(&["mc", "--config", cfg], &a).status.code(), Some(0));
    assert_eq!(zetalab(&["mc", "--config", cfg, "--seed", "6"], &b).status.code(), Some(0));
    assert_eq!(
        zetalab(&["mc", "--task", "mean", "--t", "0.5", "--samples", "2000", "--seed", "5"], &c).status.code(),
        Some(0)
    );
    let read = |d: &Path| fs::read(d.join("mc.csv")).unwrap();
    assert_eq!(read(&a), read(&c));
    assert_ne!(read(&a), read(&b));
    let m: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(b.join("mc.manifest.json")).unwrap()).unwrap();
    assert_eq!(m["seed"], 6);
}

#[test]
fn experiment_writes_one_row_per_point_and_index() {
    let dir = tempfile::tempdir().unwrap();
    let o = zetalab(
        &["experiment", "--s-grid", "0.25+5i", "--k-list", "1,2", "--samples", "500", "--workers", "2"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(dir.path().join("experiment.csv")).unwrap();
    let mut r = csv::Reader::from_reader(csv.as_bytes());
    let headers = r.headers().unwrap().clone();
    let lhs = headers.iter().position(|h| h == "lhs").expect("lhs column");
    let rows: Vec<_> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 2);
    let v: f64 = rows[0][lhs].parse().unwrap();
    assert!((v - 0.00227661033553717857).abs() < 1e-9);
}

#[test]
fn bad_experiment_config_is_a_domain_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = zetalab(&["experiment", "--s-grid", "0.7+5i", "--k-list", "1"], dir.path());
    assert_ne!(o.status.code(), Some(0));
}
