use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use orlicz_maxima::orlicz::{mixed_norm, CoefficientMatrix, InnerNorm};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_orlicz-maxima"));
    cmd.env_remove("ORLICZ_MAXIMA_WORKERS");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn field(text: &str, key: &str) -> f64 {
    text.lines()
        .find_map(|l| {
            l.strip_prefix(key)
                .map(|v| v.trim().parse::<f64>().unwrap())
        })
        .unwrap_or_else(|| panic!("no `{key}` in {text}"))
}

#[test]
fn norm_examples() {
    let out = run(&["norm", "--M", "power:2", "--x", "3,4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "5.00000000000");
    let out = run(&["norm", "--M", "loggamma:2", "--x", "1,1"]);
    assert_eq!(stdout(&out).trim(), "1.41421356237");
    let out = run(&["norm", "--M", "gaussian", "--x", "0,-2,0"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn matrix_norm_round_trips_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("A.csv");
    fs::write(&path, "0.5,1.25,-2\n3,0.125,0.75\n").unwrap();
    let out = run(&[
        "norm",
        "--matrix",
        path.to_str().unwrap(),
        "--outer",
        "1.5",
        "--inner",
        "lq:1.8",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let a = CoefficientMatrix::from_rows(&[vec![0.5, 1.25, -2.0], vec![3.0, 0.125, 0.75]]).unwrap();
    let want = mixed_norm(&a, 1.5, &InnerNorm::Lq(1.8)).unwrap();
    let got: f64 = stdout(&out).trim().parse().unwrap();
    assert!((got - want).abs() <= 1e-11 * want);
}

#[test]
fn malformed_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.csv");
    fs::write(&path, "1,abc\n").unwrap();
    let out = run(&[
        "norm",
        "--matrix",
        path.to_str().unwrap(),
        "--outer",
        "1",
        "--inner",
        "lq:2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    assert_eq!(
        run(&["norm", "--M", "nonsense:1", "--x", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["norm", "--M", "power:2", "--x", "1,zz"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["verify", "t9", "--seed", "1"]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_with_three() {
    let out = run(&["verify", "t2", "--p", "1.8", "--q", "1.2", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1< p < q<2"));
    assert_eq!(
        run(&["norm", "--M", "power:0.5", "--x", "1"]).status.code(),
        Some(3)
    );
    assert_eq!(
        run(&[
            "estimate",
            "--dist",
            "stable:2.5",
            "--x",
            "1",
            "--seed",
            "1"
        ])
        .status
        .code(),
        Some(3)
    );
}

#[test]
fn verify_requires_a_seed() {
    let out = run(&["verify", "func-t2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn estimate_loggamma_pair() {
    let out = run(&[
        "estimate",
        "--dist",
        "loggamma:2",
        "--x",
        "1,1",
        "--samples",
        "100000",
        "--replicates",
        "15",
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let value = field(&stdout(&out), "value");
    assert!((value / (8.0 / 3.0) - 1.0).abs() <= 0.02, "{value}");
}

#[test]
fn estimate_gaussian_atom_and_zero_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let atom = dir.path().join("atom.csv");
    fs::write(&atom, "1,0\n0,0\n").unwrap();
    let out = run(&[
        "estimate",
        "--dist1",
        "gaussian",
        "--dist2",
        "gaussian",
        "--matrix",
        atom.to_str().unwrap(),
        "--samples",
        "50000",
        "--seed",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let (value, spread) = (field(&text, "value"), field(&text, "spread"));
    assert!(
        (value - 2.0 / std::f64::consts::PI).abs() <= 4.0 * spread + 1e-3,
        "{value} ± {spread}"
    );

    let zero = dir.path().join("zero.csv");
    fs::write(&zero, "0,0\n0,0\n").unwrap();
    let out_file = dir.path().join("zero.json");
    let out = run(&[
        "estimate",
        "--dist1",
        "gaussian",
        "--dist2",
        "loggamma:2",
        "--matrix",
        zero.to_str().unwrap(),
        "--out",
        out_file.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(field(&stdout(&out), "value"), 0.0);
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&out_file).unwrap()).unwrap();
    assert_eq!(json["value"], 0.0);
    let manifest: serde_json::Value = serde_json::from_str(
        &fs::read_to_string(dir.path().join("zero.json.manifest.json")).unwrap(),
    )
    .unwrap();
    // The entropy seed is recorded so the run can be replayed.
    assert!(manifest["master_seed"].is_u64());
    assert_eq!(manifest["command"], "estimate");
}

#[test]
fn workers_default_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out_file = dir.path().join("est.csv");
    let out = bin()
        .env("ORLICZ_MAXIMA_WORKERS", "2")
        .args([
            "estimate",
            "--dist",
            "gaussian",
            "--x",
            "1,2",
            "--samples",
            "500",
            "--seed",
            "1",
        ])
        .arg("--out")
        .arg(&out_file)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let manifest = fs::read_to_string(dir.path().join("est.csv.manifest.json")).unwrap();
    let manifest: serde_json::Value = serde_json::from_str(&manifest).unwrap();
    assert_eq!(manifest["parameters"]["estimate"]["workers"], 2);
    let csv = fs::read_to_string(&out_file).unwrap();
    assert!(csv.starts_with("value,spread,samples_total,estimator\n"));
}

fn assert_same_file(a: &Path, b: &Path) {
    assert_eq!(
        fs::read(a).unwrap(),
        fs::read(b).unwrap(),
        "{} vs {}",
        a.display(),
        b.display()
    );
}

#[test]
fn replay_reproduces_outputs_for_any_worker_count() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first");
    let out = run(&[
        "verify",
        "t6",
        "--seed",
        "12",
        "--shapes",
        "2x3,3x2",
        "--trials",
        "1",
        "--samples",
        "300",
        "--replicates",
        "3",
        "--out-dir",
        first.to_str().unwrap(),
    ]);
    assert!(matches!(out.status.code(), Some(0) | Some(1)));
    let manifest = first.join("t6.manifest.json");
    for workers in ["1", "2", "8"] {
        let again = dir.path().join(format!("w{workers}"));
        let out = run(&[
            "replay",
            manifest.to_str().unwrap(),
            "--workers",
            workers,
            "--out-dir",
            again.to_str().unwrap(),
        ]);
        assert!(matches!(out.status.code(), Some(0) | Some(1)));
        assert_same_file(&first.join("t6.csv"), &again.join("t6.csv"));
        assert_same_file(&first.join("t6.json"), &again.join("t6.json"));
    }

    let est = dir.path().join("est.json");
    run(&[
        "estimate",
        "--dist",
        "stable:1.5",
        "--x",
        "1,2,3",
        "--samples",
        "500",
        "--out",
        est.to_str().unwrap(),
    ]);
    let replayed = dir.path().join("again");
    let manifest = dir.path().join("est.json.manifest.json");
    let out = run(&[
        "replay",
        manifest.to_str().unwrap(),
        "--workers",
        "8",
        "--out-dir",
        replayed.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_same_file(&est, &replayed.join("est.json"));
}

#[test]
fn verify_gaussian_not_l2_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "verify",
        "gauss-not-l2",
        "--ns",
        "4,16,64,256,1024",
        "--seed",
        "2",
        "--samples",
        "20000",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).starts_with("PASS gauss-not-l2"));
    let csv = fs::read_to_string(dir.path().join("gauss-not-l2.csv")).unwrap();
    assert!(csv.starts_with("theorem_id,config,n,m,p,q,mc_value,mc_spread,norm_value,ratio\n"));
    assert_eq!(
        csv.lines()
            .filter(|l| l.starts_with("gauss-m-control,"))
            .count(),
        5
    );
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("gauss-not-l2.json")).unwrap())
            .unwrap();
    assert_eq!(json["summary"]["threshold"], 0.5);
    assert_eq!(json["summary"]["pass"], true);
}

#[test]
fn table_dumps_the_function() {
    let out = run(&[
        "table",
        "--M",
        "loggamma:2",
        "--s-min",
        "0.5",
        "--s-max",
        "2",
        "--count",
        "4",
        "--spacing",
        "linear",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "s,M");
    assert_eq!(lines.len(), 5);
    let last: Vec<f64> = lines[4].split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(last, vec![2.0, 3.0]);
}

#[test]
fn help_documents_the_matrix_layout() {
    let out = run(&["norm", "--help"]);
    assert!(stdout(&out).contains("inner norm runs over i"));
}
