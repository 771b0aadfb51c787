use std::path::Path;
use std::process::{Command, Output};

fn wishart(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wishart"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn zeros_csv_small_case() {
    let o = wishart(&[
        "charpoly", "zeros", "--r", "2", "--kappa", "0", "--nu", "0", "--n", "2",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "index,zero,rescaled_zero");
    assert_eq!(lines.len(), 3);
    let z: f64 = lines[1].split(',').nth(1).unwrap().parse().unwrap();
    assert!((z - (4.0 - 10f64.sqrt()) / 3.0).abs() < 1e-12);
}

#[test]
fn eval_columns_and_sign() {
    let o = wishart(&[
        "charpoly", "eval", "--r", "2", "--kappa", "0", "--nu", "0", "--n", "1", "--x", "0.5,2",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "x,value,sign,log_abs_value,precision_bits,rel_error_bound"
    );
    let signs: Vec<&str> = lines.map(|l| l.split(',').nth(2).unwrap()).collect();
    assert_eq!(signs, ["1", "-1"]);
}

#[test]
fn fig1_table_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("fig1.csv");
    let svg = dir.path().join("fig1.svg");
    let o = wishart(&[
        "asymptotics",
        "fig1",
        "--points",
        "40",
        "--out",
        path(&csv),
        "--svg",
        path(&svg),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("phi,x,normalized_poly,cosine_approximant\n"));
    assert_eq!(text.lines().count(), 41);
    let plot = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(plot.matches("<polyline").count(), 2);
}

#[test]
fn json_output_carries_meta() {
    let o = wishart(&[
        "raney", "moments", "--r", "3", "--n", "3", "--format", "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["raney_number"][3], 33.0 / 16.0);
    assert_eq!(v["meta"]["r"], 3);
}

#[test]
fn simulate_then_ks() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("sim.csv");
    let o = wishart(&[
        "simulate",
        "--r",
        "2",
        "--n",
        "40",
        "--kappa",
        "1",
        "--nu",
        "0",
        "--trials",
        "10",
        "--seed",
        "3",
        "--out",
        path(&csv),
    ]);
    assert!(o.status.success());
    let o = wishart(&["ks", "--input", path(&csv), "--r", "2"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let ks = v["ks"].as_f64().unwrap();
    assert!(ks > 0.0 && ks < 0.08, "{ks}");
}

#[test]
fn ks_on_zeros_picks_rescaled_column() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("z.csv");
    let o = wishart(&[
        "charpoly",
        "zeros",
        "--r",
        "2",
        "--kappa",
        "0",
        "--nu",
        "0",
        "--n",
        "50",
        "--out",
        path(&csv),
    ]);
    assert!(o.status.success());
    let o = wishart(&["ks", "--input", path(&csv), "--r", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["ks"].as_f64().unwrap() < 0.03);
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        vec!["charpoly", "zeros", "--r", "2"],
        vec!["raney", "density", "--r", "1"],
        vec![
            "charpoly", "zeros", "--r", "3", "--kappa", "0", "--nu", "0", "--n", "3",
        ],
        vec![
            "asymptotics",
            "phases",
            "--r",
            "2",
            "--kappa",
            "0",
            "--nu",
            "0",
            "--phi-max",
            "2",
        ],
        vec!["frobnicate"],
    ] {
        let o = wishart(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{err}");
        assert!(err.starts_with("wishart: error["), "{err}");
    }
}

#[test]
fn empty_input_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("empty.csv");
    std::fs::write(&csv, "value\n").unwrap();
    let o = wishart(&["ks", "--input", path(&csv), "--r", "3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn io_errors_exit_three() {
    let o = wishart(&["ks", "--input", "/nonexistent/dir/in.csv", "--r", "3"]);
    assert_eq!(o.status.code(), Some(3));
    let o = wishart(&[
        "raney",
        "sample",
        "--r",
        "3",
        "--count",
        "5",
        "--out",
        "/nonexistent/dir/out.csv",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn help_and_version_succeed() {
    assert!(wishart(&["--help"]).status.success());
    assert!(wishart(&["--version"]).status.success());
    assert!(wishart(&["raney", "--help"]).status.success());
}

#[test]
fn seeded_outputs_repeat_across_jobs() {
    let args = [
        "simulate", "--r", "3", "--n", "20", "--kappa", "1", "--nu", "0,0", "--trials", "6",
        "--seed", "9",
    ];
    let runs: Vec<Vec<u8>> = ["1", "3", "3"]
        .iter()
        .map(|j| {
            let mut a = vec!["--jobs", j];
            a.extend(args);
            let o = wishart(&a);
            assert!(o.status.success());
            o.stdout
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[1], runs[2]);
}
