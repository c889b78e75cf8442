use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn resilmax(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_resilmax"))
        .args(args)
        .env_remove("RESILMAX_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    let prefix = format!("{key}: ");
    text.lines()
        .find_map(|l| l.strip_prefix(prefix.as_str()))
        .unwrap_or_else(|| panic!("no '{key}' in:\n{text}"))
}

#[test]
fn solve_w1() {
    let w1 = data("w1.json");
    let out = resilmax(&["solve", w1.to_str().unwrap(), "--algorithm", "myopic"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(field(&text, "chosen"), "[0,1]");
    assert_eq!(field(&text, "selection_order"), "[0,1]");
    assert_eq!(field(&text, "resilient_value"), "2");

    let out = resilmax(&["solve", w1.to_str().unwrap(), "--algorithm", "exact"]);
    let text = stdout(&out);
    assert_eq!(field(&text, "chosen"), "[0,1]");
    assert_eq!(field(&text, "resilient_value"), "2");

    let out = resilmax(&[
        "solve",
        w1.to_str().unwrap(),
        "--algorithm",
        "greedy",
        "--json",
    ]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["chosen"], serde_json::json!([0, 1]));
    assert_eq!(json["algorithm"], "greedy");
}

#[test]
fn solve_rank_zero() {
    let out = resilmax(&["solve", data("rank0.json").to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(field(&text, "chosen"), "[]");
    assert_eq!(field(&text, "resilient_value"), "0");
}

#[test]
fn curvature_goldens() {
    let nu = |file: &str| {
        let out = resilmax(&["curvature", data(file).to_str().unwrap()]);
        assert!(out.status.success());
        field(&stdout(&out), "nu").parse::<f64>().unwrap()
    };
    assert_eq!(nu("modular321.json"), 0.0);
    assert!((nu("w3.json") - 0.5).abs() < 1e-12);
    assert_eq!(nu("w1.json"), 1.0);
}

#[test]
fn adversary_goldens() {
    let w1 = data("w1.json");
    let out = resilmax(&["adversary", w1.to_str().unwrap(), "--set", "0,1"]);
    let text = stdout(&out);
    assert_eq!(field(&text, "removed"), "[0]");
    assert_eq!(field(&text, "value"), "2");

    let out = resilmax(&[
        "adversary",
        data("w1_alpha2.json").to_str().unwrap(),
        "--set",
        "0,1,2",
        "--greedy",
    ]);
    let text = stdout(&out);
    assert_eq!(field(&text, "removed"), "[0,1]");
    assert_eq!(field(&text, "value"), "1");
    assert_eq!(field(&text, "exact"), "false");

    let out = resilmax(&["adversary", w1.to_str().unwrap(), "--set", "0,7"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn adversary_alpha_zero_keeps_the_set() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("alpha0.json");
    let text = std::fs::read_to_string(data("w1.json"))
        .unwrap()
        .replace("\"alpha\": 1", "\"alpha\": 0");
    std::fs::write(&path, text).unwrap();
    let out = resilmax(&["adversary", path.to_str().unwrap(), "--set", "1,2"]);
    let text = stdout(&out);
    assert_eq!(field(&text, "removed"), "[]");
    assert_eq!(field(&text, "value"), "2");
}

#[test]
fn verify_goldens() {
    for file in [
        "w1.json",
        "modular321.json",
        "alpha_ge_rank.json",
        "w3.json",
    ] {
        let out = resilmax(&["verify", data(file).to_str().unwrap()]);
        let text = stdout(&out);
        assert_eq!(out.status.code(), Some(0), "{file}:\n{text}");
        assert_eq!(field(&text, "theorem_holds"), "true");
        assert_eq!(field(&text, "all_hold"), "true");
    }
    let text = stdout(&resilmax(&[
        "verify",
        data("modular321.json").to_str().unwrap(),
    ]));
    assert_eq!(field(&text, "ratio"), "1");
    let text = stdout(&resilmax(&[
        "verify",
        data("alpha_ge_rank.json").to_str().unwrap(),
    ]));
    assert_eq!(field(&text, "value_sol"), "0");
    assert_eq!(field(&text, "ratio"), "1");

    let out = resilmax(&["verify", data("w1.json").to_str().unwrap(), "--json"]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["theorem_holds"], true);
    assert_eq!(json["proof_chain"]["all_hold"], true);
}

#[test]
fn load_errors_exit_nonzero() {
    let out = resilmax(&["verify", data("supermodular.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = resilmax(&["solve", data("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_resilmax"))
        .args(["solve", data("w1.json").to_str().unwrap()])
        .env("RESILMAX_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gen_is_deterministic_and_loadable() {
    let a = resilmax(&["gen", "coverage", "--n", "8", "--seed", "1"]);
    let b = resilmax(&["gen", "coverage", "--n", "8", "--seed", "1"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let dir = tempfile::tempdir().unwrap();
    for (family, extra) in [
        ("modular", vec!["--n", "3", "--seed", "7"]),
        ("coverage", vec!["--n", "8", "--seed", "1"]),
        (
            "facility",
            vec![
                "--n",
                "6",
                "--seed",
                "3",
                "--matroid",
                "partition",
                "--blocks",
                "2",
                "--rank",
                "3",
            ],
        ),
    ] {
        let path = dir.path().join(format!("{family}.json"));
        let mut args = vec!["gen", family];
        args.extend(extra);
        args.extend(["--out", path.to_str().unwrap()]);
        assert!(resilmax(&args).status.success());
        let out = resilmax(&["verify", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    }
    assert_eq!(
        resilmax(&["gen", "modular", "--n", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        resilmax(&["gen", "cubic", "--n", "3"]).status.code(),
        Some(2)
    );
}

#[test]
fn bench_zero_trials_is_header_only() {
    let out = resilmax(&["bench", "--trials", "0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), format!("{}\n", resilmax::bench::CSV_HEADER));
}

#[test]
fn bench_writes_csv_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bench.csv");
    let out = resilmax(&[
        "bench",
        "--trials",
        "12",
        "--seed",
        "5",
        "--n-max",
        "7",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(&path).unwrap();
    assert_eq!(csv.lines().count(), 13);
    assert!(stdout(&out).contains("violations=0"));
    for line in csv.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 15);
        let nu: f64 = cols[5].parse().unwrap();
        let ratio: f64 = cols[10].parse().unwrap();
        assert!(ratio >= 1.0 - nu - 1e-9);
        assert_eq!(cols[14], "0");
    }
}
