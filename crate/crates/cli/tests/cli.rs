use std::path::Path;
use std::process::{Command, Output};
use twomode::entanglement::{negativity, transient_negativity};

fn twomode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twomode"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

struct Csv {
    meta: Vec<(String, String)>,
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Csv {
    fn parse(text: &str) -> Self {
        let mut meta = Vec::new();
        let mut body = String::new();
        for line in text.lines() {
            match line.strip_prefix("# ") {
                Some(kv) => {
                    let (k, v) = kv.split_once('=').unwrap();
                    meta.push((k.to_string(), v.to_string()));
                }
                None => {
                    body.push_str(line);
                    body.push('\n');
                }
            }
        }
        let mut rdr = csv::Reader::from_reader(body.as_bytes());
        let columns = rdr.headers().unwrap().iter().map(String::from).collect();
        let rows = rdr
            .records()
            .map(|r| r.unwrap().iter().map(String::from).collect())
            .collect();
        Csv {
            meta,
            columns,
            rows,
        }
    }

    fn meta(&self, key: &str) -> &str {
        &self.meta.iter().find(|(k, _)| k == key).expect(key).1
    }

    fn col(&self, name: &str) -> Vec<f64> {
        let i = self.columns.iter().position(|c| c == name).expect(name);
        self.rows.iter().map(|r| r[i].parse().unwrap()).collect()
    }

    fn text(&self, name: &str) -> Vec<String> {
        let i = self.columns.iter().position(|c| c == name).expect(name);
        self.rows.iter().map(|r| r[i].clone()).collect()
    }
}

fn run_csv(args: &[&str]) -> Csv {
    let o = twomode(args);
    assert!(
        o.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    Csv::parse(&stdout(&o))
}

#[test]
fn trajectory_ends_on_the_transient_formula() {
    let t = run_csv(&[
        "trajectory",
        "--kappa",
        "0.5",
        "--nth",
        "0.2",
        "--xi",
        "1.5",
    ]);
    assert_eq!(t.rows.len(), 1001);
    assert_eq!(
        t.columns,
        [
            "t",
            "f1",
            "f3",
            "f5",
            "f9",
            "f12",
            "negativity",
            "invariant_residual"
        ]
    );
    let neg = t.col("negativity");
    let want = transient_negativity(10.0, 0.5, 0.2, 1.5).unwrap();
    assert!((neg[1000] - want).abs() < 1e-8, "{} vs {want}", neg[1000]);
    assert_eq!(t.col("t")[1000], 10.0);
}

#[test]
fn emitted_negativity_is_the_library_value() {
    let t = run_csv(&[
        "trajectory",
        "--kappa1",
        "0.4",
        "--kappa2",
        "0.9",
        "--nth1",
        "0.3",
        "--xi",
        "1.1",
        "--delta",
        "0.2",
        "--phi",
        "1",
        "--t-max",
        "3",
        "--t-steps",
        "30",
    ]);
    let (f3, f5, f9, f12) = (t.col("f3"), t.col("f5"), t.col("f9"), t.col("f12"));
    for (i, n) in t.col("negativity").into_iter().enumerate() {
        assert_eq!(n, negativity(f3[i], f5[i], f9[i], f12[i]).unwrap().value);
    }
}

#[test]
fn no_drive_no_entanglement() {
    let t = run_csv(&["trajectory", "--xi", "0", "--nth", "0.4", "--t-steps", "50"]);
    assert!(t.col("negativity").iter().all(|&v| v == 0.0));
}

#[test]
fn undamped_run_diverges() {
    let o = twomode(&["trajectory", "--kappa", "0", "--xi", "1", "--t-max", "100"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("diverge"));
}

#[test]
fn sweep_finds_the_thermal_threshold() {
    let t = run_csv(&[
        "sweep",
        "--kappa",
        "1",
        "--xi",
        "2",
        "--axis",
        "nth:0.3:0.7:21",
    ]);
    assert_eq!(t.rows.len(), 21);
    for (n, neg) in t.col("nth").into_iter().zip(t.col("negativity")) {
        if n < 0.5 - 1e-12 {
            assert!(neg > 0.0, "nth={n}");
        } else {
            assert!(neg.abs() < 1e-12, "nth={n}: {neg}");
        }
    }
    assert!(t.text("error").iter().all(String::is_empty));
}

#[test]
fn sweep_is_continuous_across_the_regime_boundary() {
    let t = run_csv(&[
        "sweep",
        "--kappa",
        "1",
        "--nth",
        "0.05",
        "--axis",
        "xi:1.9:2.1:41",
    ]);
    let neg = t.col("negativity");
    let regimes = t.text("regime");
    assert!(
        regimes.contains(&"overdamped".to_string()) && regimes.contains(&"underdamped".to_string())
    );
    for w in neg.windows(2) {
        assert!((w[1] - w[0]).abs() < 5e-3, "{w:?}");
    }
}

#[test]
fn sweep_verdicts_match_the_analytic_boundary() {
    let t = run_csv(&[
        "sweep",
        "--kappa",
        "1",
        "--delta",
        "0.25",
        "--axis",
        "nth:0:1:6",
        "--axis",
        "xi:0.1:3:6",
    ]);
    assert_eq!(t.rows.len(), 36);
    assert_eq!(t.text("separable"), t.text("analytic_separable"));
}

#[test]
fn single_point_sweep() {
    let t = run_csv(&["sweep", "--axis", "xi:1.5:1.5:1"]);
    assert_eq!(t.rows.len(), 1);
}

#[test]
fn sweep_records_failures_and_continues() {
    let t = run_csv(&["sweep", "--axis", "kappa:-1:1:3"]);
    let errors = t.text("error");
    assert!(errors[0].contains("kappa"));
    assert!(errors[2].is_empty());
}

#[test]
fn sweep_output_is_independent_of_jobs() {
    let args = [
        "sweep",
        "--nth",
        "0.1",
        "--axis",
        "xi:0.2:3:12",
        "--axis",
        "delta:0:0.5:3",
    ];
    let one = twomode(&[&args[..], &["--jobs", "1"]].concat());
    let four = twomode(&[&args[..], &["--jobs", "4"]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn thermal_at_zero_temperature_matches_vacuum() {
    let t = run_csv(&["thermal", "--xi", "1.2", "--t-steps", "40"]);
    assert_eq!(t.col("negativity_thermal"), t.col("negativity_vacuum"));
    assert_eq!(t.meta("onset_time"), "0");
}

#[test]
fn thermal_onset_and_its_absence() {
    let t = run_csv(&["thermal", "--nth", "0.2", "--xi", "3", "--t-steps", "200"]);
    let onset: f64 = t.meta("onset_time").parse().unwrap();
    assert!(onset > 0.0);
    for (time, neg) in t.col("t").into_iter().zip(t.col("negativity_thermal")) {
        if time < onset * (1.0 - 1e-6) {
            assert_eq!(neg, 0.0, "t={time}");
        } else if time > onset * (1.0 + 1e-6) {
            assert!(neg > 0.0, "t={time}");
        }
    }
    let t = run_csv(&["thermal", "--nth", "0.5", "--xi", "1.5", "--t-steps", "50"]);
    assert_eq!(t.meta("onset_time"), "none");
    assert!(t.col("negativity_thermal").iter().all(|&v| v == 0.0));
}

#[test]
fn thermal_needs_identical_resonant_baths() {
    assert_eq!(
        twomode(&["thermal", "--kappa2", "2"]).status.code(),
        Some(64)
    );
    assert_eq!(
        twomode(&["thermal", "--delta", "0.1"]).status.code(),
        Some(64)
    );
}

#[test]
fn steady_reproduces_known_values() {
    let t = run_csv(&["steady", "--kappa", "1", "--xi", "1"]);
    assert!((t.col("f3")[0] - 1.0 / 15.0).abs() < 1e-12);
    assert!((t.col("negativity")[0] - 0.25).abs() < 1e-12);
    let t = run_csv(&["steady", "--kappa", "1", "--xi", "4"]);
    assert!((t.col("negativity")[0] - 1.0).abs() < 1e-12);
    assert_eq!(t.meta("regime"), "underdamped");
}

#[test]
fn negativity_of_explicit_state() {
    let t = run_csv(&["negativity", "--f3", "0.25", "--f5", "0.75"]);
    assert_eq!(t.col("negativity")[0], 1.0);
    assert_eq!(t.text("cvs_separable")[0], "false");
    let t = run_csv(&["negativity", "--f3", "0.2", "--f5", "0.1", "--f9", "0.05"]);
    assert_eq!(t.text("cvs_separable")[0], "n/a");
    assert_eq!(t.text("separable")[0], "true");
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(
        &cfg,
        "# symmetric run\nkappa = 0.5\nnth = 0.2\nxi = 1.5\nt-steps = 10\n",
    )
    .unwrap();
    let out = dir.path().join("traj.csv");
    let o = twomode(&[
        "trajectory",
        "--config",
        cfg.to_str().unwrap(),
        "--xi",
        "1.0",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let t = Csv::parse(&std::fs::read_to_string(&out).unwrap());
    assert_eq!(t.meta("kappa1"), "0.5");
    assert_eq!(t.meta("nth2"), "0.2");
    assert_eq!(t.meta("xi"), "1");
    assert_eq!(t.rows.len(), 11);
}

#[test]
fn json_mirrors_csv() {
    let args = [
        "trajectory",
        "--kappa",
        "0.5",
        "--xi",
        "1.5",
        "--t-steps",
        "5",
    ];
    let csv = run_csv(&args);
    let o = twomode(&[&args[..], &["--format", "json"]].concat());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let cols: Vec<&str> = v["columns"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap())
        .collect();
    assert_eq!(cols, csv.columns);
    assert_eq!(v["rows"].as_array().unwrap().len(), 6);
    assert_eq!(v["rows"][5][6].as_f64().unwrap(), csv.col("negativity")[5]);
    assert_eq!(v["meta"]["command"], "trajectory");
}

#[test]
fn output_is_deterministic() {
    let args = [
        "trajectory",
        "--kappa1",
        "0.3",
        "--kappa2",
        "0.7",
        "--xi",
        "1",
        "--t-steps",
        "100",
    ];
    assert_eq!(twomode(&args).stdout, twomode(&args).stdout);
}

#[test]
fn usage_errors_exit_64() {
    for args in [
        &["frobnicate"][..],
        &["trajectory", "--speed", "3"],
        &["trajectory", "--kappa", "-1"],
        &["trajectory", "--rtol", "0.5"],
        &["sweep", "--axis", "temperature:0:1:3"],
        &["sweep", "--axis", "xi:0:1:0"],
        &["sweep"],
        &["trajectory", "--config", "/nonexistent/run.cfg"],
    ] {
        assert_eq!(twomode(args).status.code(), Some(64), "{args:?}");
    }
    assert_eq!(twomode(&["--help"]).status.code(), Some(0));
}

#[test]
fn validate_quick_grid_passes() {
    let o = twomode(&["validate", "--quick", "--format", "json"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().all(|r| r[2] == "pass"));
}

#[test]
fn validate_catches_injected_fault() {
    let o = twomode(&["validate", "--quick", "--inject-fault", "f5-damping-sign"]);
    assert_eq!(o.status.code(), Some(1));
    let t = Csv::parse(&stdout(&o));
    assert!(t.text("status").iter().any(|s| s == "fail"));
    assert_eq!(t.meta("passed"), "false");
}

#[test]
fn validate_flags_unrepresentable_points() {
    let o = twomode(&[
        "validate",
        "--quick",
        "--cutoff-bound",
        "1e-12",
        "--cutoff-cap",
        "16",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    let t = Csv::parse(&stdout(&o));
    assert!(t.text("status").iter().any(|s| s == "inconclusive"));
    assert!(!t.text("status").iter().any(|s| s == "fail"));
}

#[test]
fn out_path_in_missing_directory_is_a_usage_error() {
    let bad = Path::new("/nonexistent-dir/out.csv");
    let o = twomode(&["steady", "--out", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(64));
}
