use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use su2k_core::anyon::{evaluate_braidword, AnyonModel, Braidword};
use su2k_core::metrics::{
    braid_class_distance, leakage_metrics, phase_invariant_distance, t_gate, ClassTarget,
};

const SMALL: [&str; 8] = [
    "--set",
    "population_size=60",
    "--set",
    "crossovers_per_generation=30",
    "--set",
    "survivors=12",
    "--set",
    "generations=8",
];

fn su2k(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_su2k"))
        .args(args)
        .env_remove("SU2K_CONFIG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn ebm_prints_eight_digits_and_residuals() {
    let o = su2k(&["ebm", "--k", "5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("-0.78183148+0.62348980i"));
    assert!(text.contains("0.97492791+0.22252093i"));
    assert!(text.contains("residuals yang_baxter="));

    let text = stdout(&su2k(&["ebm", "--k", "6", "--encoding", "two_qubit"]));
    assert!(text.contains("-0.08080906+0.40625456i"));
    assert_eq!(text.matches("sigma").count(), 5);

    let fib = stdout(&su2k(&["ebm", "--k", "3"]));
    assert!(fib.contains("label=2"));
}

#[test]
fn ebm_rejects_low_levels() {
    assert_eq!(su2k(&["ebm", "--k", "2"]).status.code(), Some(1));
    assert_eq!(
        su2k(&["ebm", "--k", "5", "--label", "2"]).status.code(),
        Some(1)
    );
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(su2k(&["nope"]).status.code(), Some(1));
    assert_eq!(su2k(&["compile", "--k", "5"]).status.code(), Some(1));
    let o = su2k(&[
        "compile",
        "--k",
        "5",
        "--target",
        "H",
        "--encoding",
        "two_qubit",
        "--length",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = su2k(&["compile", "--k", "5", "--target", "CNOT", "--sk-level", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let o = su2k(&[
        "compile", "--k", "5", "--target", "H", "--length", "2", "--set", "bogus=1",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(su2k(&["--help"]).status.code(), Some(0));
}

#[test]
fn budget_refusal_exits_three() {
    let o = su2k(&[
        "compile",
        "--k",
        "5",
        "--target",
        "CNOT",
        "--engine",
        "exhaustive",
        "--length",
        "12",
        "--set",
        "exhaustive_budget=1000",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("use GA"));
}

#[test]
fn verify_reports_offenders() {
    let o = su2k(&["verify", "--quiet"]);
    assert_eq!(o.status.code(), Some(2));
    let text = stdout(&o);
    assert!(text.contains("failing:"));
    assert!(text.contains("table II k=5 CNOT fwd"));
    assert!(!text.contains("PASS"));
}

#[test]
fn verify_passes_on_healthy_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fx.txt");
    std::fs::write(
        &path,
        "R 7 0 -0.86602540+0.5i\nW III 6 SWAP fwd CDEBCADBC 1.23e-32 -\n",
    )
    .unwrap();
    let o = su2k(&["verify", "--fixtures", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("4 of 4 fixtures pass"));
}

#[test]
fn compile_is_byte_identical_and_round_trips() {
    let mut args = vec![
        "compile", "--k", "7", "--target", "T", "--engine", "ga", "--length", "12", "--seed", "4",
    ];
    args.extend(SMALL);
    let a = su2k(&args);
    let b = su2k(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let rec = json(&a);
    assert!(rec.get("wall_ms").is_none());
    assert_eq!(rec["seed"], 4);
    assert_eq!(rec["config"]["generations"], 8);
    let word = Braidword::parse(rec["word"].as_str().unwrap(), 2).unwrap();
    assert_eq!(word.len(), 12);
    let gens = AnyonModel::new(7).unwrap().one_qubit_generators();
    let m = evaluate_braidword(&word, &gens).unwrap();
    assert_eq!(
        phase_invariant_distance(&m, &t_gate()),
        rec["distance"].as_f64().unwrap()
    );

    args.push("--timing");
    assert!(json(&su2k(&args))["wall_ms"].is_number());
}

#[test]
fn two_qubit_record_round_trips() {
    let rec = json(&su2k(&[
        "compile", "--k", "6", "--target", "CNOT", "--length", "4",
    ]));
    assert_eq!(rec["engine"], "exhaustive");
    assert_eq!(rec["inverses"], false);
    let word = Braidword::parse(rec["word"].as_str().unwrap(), 5).unwrap();
    let gens = AnyonModel::new(6)
        .unwrap()
        .two_qubit_generators()
        .with_inverses(false);
    let m = evaluate_braidword(&word, &gens).unwrap();
    assert_eq!(
        braid_class_distance(&m, &ClassTarget::CNOT).unwrap(),
        rec["distance"].as_f64().unwrap()
    );
    let leak = leakage_metrics(&m);
    assert_eq!(leak.m11, rec["m11"].as_f64().unwrap());
    assert_eq!(leak.d_u, rec["dU"].as_f64().unwrap());
}

#[test]
fn config_file_env_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("search.conf");
    std::fs::write(
        &cfg,
        "population_size = 40\ncrossovers_per_generation = 20\nsurvivors = 10\ngenerations = 3\nrng_seed = 11\n",
    )
    .unwrap();
    let base = [
        "compile", "--k", "5", "--target", "H", "--engine", "ga", "--length", "6",
    ];
    let o = Command::new(env!("CARGO_BIN_EXE_su2k"))
        .args(base)
        .args(["--set", "generations=2"])
        .env("SU2K_CONFIG", &cfg)
        .output()
        .unwrap();
    let rec = json(&o);
    assert_eq!(rec["config"]["population_size"], 40);
    assert_eq!(rec["config"]["generations"], 2);
    assert_eq!(rec["seed"], 11);

    let mut args = base.to_vec();
    args.extend(["--config", cfg.to_str().unwrap(), "--seed", "3"]);
    let rec = json(&su2k(&args));
    assert_eq!(rec["seed"], 3);
    assert_eq!(rec["config"]["generations"], 3);
}

#[test]
fn custom_targets() {
    let dir = tempfile::tempdir().unwrap();
    let x = dir.path().join("x.txt");
    std::fs::write(&x, "0 1\n1 0\n").unwrap();
    let rec = json(&su2k(&[
        "compile",
        "--k",
        "5",
        "--target",
        "custom",
        "--matrix",
        x.to_str().unwrap(),
        "--length",
        "3",
    ]));
    assert_eq!(rec["encoding"], "one_qubit");
    assert_eq!(rec["target"], "custom");

    let swap = dir.path().join("swap.txt");
    std::fs::write(&swap, "1 0 0 0\n0 0 1 0\n0 1 0 0\n0 0 0 1\n").unwrap();
    let rec = json(&su2k(&[
        "compile",
        "--k",
        "5",
        "--target",
        "custom",
        "--matrix",
        swap.to_str().unwrap(),
        "--length",
        "9",
        "--inverses",
        "false",
    ]));
    assert!(rec["distance"].as_f64().unwrap() <= 1e-28);
}

fn read_csv(path: &Path) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header: Vec<String> = r.headers().unwrap().iter().map(String::from).collect();
    let mut rows = vec![header];
    rows.extend(
        r.records()
            .map(|rec| rec.unwrap().iter().map(String::from).collect()),
    );
    rows
}

#[test]
fn sweep_writes_fixed_header_in_order() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    let mut args = vec![
        "sweep",
        "--k",
        "5,7",
        "--target",
        "CNOT",
        "--lengths",
        "1..4",
        "--threshold",
        "3",
        "--seeds",
        "0..1",
        "--out",
        out.to_str().unwrap(),
    ];
    args.extend(SMALL);
    let o = su2k(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = read_csv(&out);
    assert_eq!(
        rows[0],
        ["model_k", "encoding", "engine", "length", "seed", "distance", "m11", "dU", "wall_ms"]
    );
    assert_eq!(rows.len(), 1 + 2 * 4 * 2);
    let engines: Vec<&str> = rows[1..9].iter().map(|r| r[2].as_str()).collect();
    assert_eq!(
        engines,
        [
            "exhaustive",
            "exhaustive",
            "exhaustive",
            "exhaustive",
            "exhaustive",
            "exhaustive",
            "ga",
            "ga"
        ]
    );
    for r in &rows[1..] {
        let m11: f64 = r[6].parse().unwrap();
        assert!(m11 <= 1.0 + 1e-12);
    }
    // exhaustive segment: best distance never increases with length
    // once lengths of the same parity are compared
    let d = |i: usize| rows[i][5].parse::<f64>().unwrap();
    assert!(d(5) <= d(1) + 1e-15);

    // deterministic apart from wall time
    let out2 = dir.path().join("again.csv");
    let last = args
        .iter()
        .position(|a| *a == out.to_str().unwrap())
        .unwrap();
    args[last] = out2.to_str().unwrap();
    assert!(su2k(&args).status.success());
    let strip = |rows: Vec<Vec<String>>| -> Vec<Vec<String>> {
        rows.into_iter()
            .map(|mut r| {
                r.pop();
                r
            })
            .collect()
    };
    assert_eq!(strip(read_csv(&out)), strip(read_csv(&out2)));
}

#[test]
fn sk_level_sweep() {
    let mut args = vec![
        "sweep",
        "--k",
        "5",
        "--target",
        "H",
        "--sk-levels",
        "0..1",
        "--seeds",
        "2",
        "--set",
        "base_length=6",
    ];
    args.extend(SMALL);
    let o = su2k(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("5,one_qubit,sk,6,2,"));
    assert!(lines[2].starts_with("5,one_qubit,sk,30,2,"));
    assert_eq!(
        su2k(&["sweep", "--target", "CNOT", "--sk-levels", "0..1"])
            .status
            .code(),
        Some(1)
    );
}
