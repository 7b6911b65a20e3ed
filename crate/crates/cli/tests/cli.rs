use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use quantumness_cli::ensemble_file::EnsembleFile;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quantumness"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn compute_prints_twelve_decimals() {
    let dir = tempfile::tempdir().unwrap();
    let classical = write(
        dir.path(),
        "classical.json",
        r#"{"dim": 2, "members": [
            {"p": 0.4, "rho": [[[0.7, 0], [0, 0]], [[0, 0], [0.3, 0]]]},
            {"p": 0.6, "psi": [[0, 0], [1, 0]]}]}"#,
    );
    let overlap = write(
        dir.path(),
        "overlap.json",
        r#"{"dim": 2, "members": [
            {"p": 0.5, "psi": [[1, 0], [0, 0]]},
            {"p": 0.5, "psi": [[0.7071067811865476, 0], [0.7071067811865476, 0]]}]}"#,
    );
    let bloch = write(
        dir.path(),
        "bloch.json",
        r#"{"dim": 2, "members": [{"p": 0.5, "bloch": [1, 0, 0]}, {"p": 0.5, "bloch": [0, 0, 1]}]}"#,
    );
    for norm in ["trace", "frobenius", "spectral", "schatten:3", "kyfan:1"] {
        let o = run(&["compute", &classical, "--norm", norm]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), "0.000000000000\n");
    }
    assert_eq!(stdout(&run(&["compute", &overlap, "--norm", "trace"])), "1.000000000000\n");
    assert_eq!(stdout(&run(&["compute", &bloch, "--norm", "frobenius"])), "0.707106781187\n");
}

#[test]
fn compute_rejects_bad_input_with_member_index() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"dim": 2, "members": [{"p": 0.5, "bloch": [0, 0, 1]}, {"p": 0.5, "psi": [[1, 0], [1, 0]]}]}"#,
    );
    let o = run(&["compute", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("member 1"));

    let good = write(dir.path(), "good.json", r#"{"dim": 2, "members": [{"p": 1, "bloch": [0, 0, 1]}]}"#);
    for norm in ["schatten:0.5", "kyfan:3", "nuclear"] {
        assert_eq!(run(&["compute", &good, "--norm", norm]).status.code(), Some(2), "{norm}");
    }
    assert_eq!(run(&["compute", "/nonexistent/file.json"]).status.code(), Some(2));
}

#[test]
fn random_is_deterministic_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let c = dir.path().join("c.json");
    for (path, seed) in [(&a, "11"), (&b, "11"), (&c, "12")] {
        let o = run(&["random", "--dim", "3", "--members", "4", "--seed", seed, "--out", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_ne!(fs::read(&a).unwrap(), fs::read(&c).unwrap());
    let first = run(&["compute", a.to_str().unwrap(), "--norm", "frobenius"]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(stdout(&first), stdout(&run(&["compute", a.to_str().unwrap(), "--norm", "frobenius"])));
}

#[test]
fn random_rank_one_members_are_pure() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pure.json");
    let o = run(&["random", "--dim", "4", "--members", "5", "--rank", "1", "--seed", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let ensemble = EnsembleFile::load(&path).unwrap().to_ensemble().unwrap();
    for m in ensemble.members() {
        assert!((m.state.purity() - 1.0).abs() <= 1e-9);
    }
    let bad = run(&["random", "--dim", "2", "--members", "2", "--rank", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(2));
}

fn read_csv(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(|x| x.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn sweeps_to_stdout_and_file() {
    let o = run(&["sweep", "phase-damping"]);
    assert_eq!(o.status.code(), Some(0));
    let (header, rows) = read_csv(&stdout(&o));
    assert_eq!(header, ["p1", "theta", "phi", "lambda", "M_formula", "M_matrix"]);
    assert_eq!(rows.len(), 101);
    assert!(rows.windows(2).all(|w| w[1][5] >= w[0][5]));

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bloch.csv");
    let o = run(&["sweep", "bloch-angle", "--alpha", "0", "--r1", "0:1:0.25", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let (_, rows) = read_csv(&fs::read_to_string(&out).unwrap());
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r[5] == 0.0));

    let (_, rows) = read_csv(&stdout(&run(&["sweep", "overlap"])));
    let peak = rows.iter().max_by(|a, b| a[4].total_cmp(&b[4])).unwrap();
    assert!((peak[1] - std::f64::consts::FRAC_1_SQRT_2).abs() <= 0.001);
}

#[test]
fn sweep_rejects_invalid_grids() {
    for args in [
        &["sweep", "overlap", "--c", "1:0:0.1"][..],
        &["sweep", "overlap", "--c", "0:2:0.5"],
        &["sweep", "phase-damping", "--lambda", "0:1:0"],
        &["sweep", "bloch-angle", "--r1", "2"],
        &["sweep", "nonsense"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn check_properties_reports_and_validates() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.txt");
    let args = ["check-properties", "--dim", "2", "--members", "3", "--trials", "50", "--seed", "42", "--norm", "trace"];
    let mut with_report = args.to_vec();
    with_report.extend(["--report", report.to_str().unwrap()]);
    let o = run(&with_report);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("seed: 42"));
    assert!(text.contains("worst slack:"));
    assert!(text.contains("result: PASS"));
    assert_eq!(fs::read_to_string(&report).unwrap(), text);
    let body = |t: &str| t.lines().skip(1).map(String::from).collect::<Vec<_>>();
    let plain = stdout(&run(&args));
    assert!(plain.starts_with("command: quantumness check-properties --dim 2"));
    assert_eq!(body(&plain), body(&text));

    let verbose = stdout(&run(&[&args[..], &["--verbose"]].concat()));
    let line = verbose.lines().find(|l| l.starts_with("trial 7 sub-seed")).unwrap();
    let sub_seed = line.split_whitespace().nth(3).unwrap();
    let replay = run(&["check-properties", "--dim", "2", "--members", "3", "--trials", "1", "--replay", sub_seed]);
    assert_eq!(replay.status.code(), Some(0));

    for bad in [
        &["check-properties", "--dim", "2", "--members", "3", "--trials", "0"][..],
        &["check-properties", "--dim", "1", "--members", "3", "--trials", "5"],
        &["check-properties", "--dim", "2", "--members", "1", "--trials", "5"],
        &["check-properties", "--dim", "2", "--members", "2", "--trials", "5", "--norm", "kyfan:3"],
    ] {
        assert_eq!(run(bad).status.code(), Some(2), "{bad:?}");
    }
}

#[test]
fn examples_writes_six_passing_tables() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("artifacts");
    let o = run(&["examples", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let mut names: Vec<String> = fs::read_dir(&out)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(names.len(), 6);
    for name in &names {
        let text = fs::read_to_string(out.join(name)).unwrap();
        assert!(!text.contains('\r'));
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let width = r.headers().unwrap().len();
        assert_eq!(r.headers().unwrap().iter().next_back(), Some("status"));
        assert!(r.records().all(|rec| &rec.unwrap()[width - 1] == "PASS"));
    }
    let six = fs::read_to_string(out.join("example6_classical_quantum.csv")).unwrap();
    assert!(six.lines().any(|l| l.starts_with("classical-classical,0,0,PASS")));

    let blocked = dir.path().join("file");
    fs::write(&blocked, "").unwrap();
    assert_eq!(run(&["examples", "--out", blocked.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn help_for_every_subcommand() {
    for sub in ["compute", "sweep", "check-properties", "examples", "random"] {
        let o = run(&[sub, "--help"]);
        assert_eq!(o.status.code(), Some(0), "{sub}");
        assert!(stdout(&o).contains("Usage"));
    }
}
