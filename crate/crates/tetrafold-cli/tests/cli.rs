//! End-to-end tests of the installed binary: exit codes, file outputs,
//! manifest reproducibility, and the config-file merge order.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::tempdir;

const BIN: &str = env!("CARGO_BIN_EXE_tetrafold");

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary should run")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn manifest(dir: &Path, prefix: &str) -> Value {
    let text = fs::read_to_string(dir.join(format!("{prefix}.manifest.json"))).unwrap();
    serde_json::from_str(&text).unwrap()
}

#[test]
fn fold_exhaustive_writes_complete_run() {
    let dir = tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["fold", "--seq", "LHPGAGK", "--solver", "exhaustive", "--out", "zika"],
    );
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));

    let pdb = fs::read_to_string(dir.path().join("zika.pdb")).unwrap();
    assert_eq!(pdb.lines().filter(|l| l.starts_with("ATOM")).count(), 7);
    assert!(pdb.contains(" CA "));

    let xyz = fs::read_to_string(dir.path().join("zika.xyz")).unwrap();
    assert!(xyz.starts_with("7\n"));

    let trace = fs::read_to_string(dir.path().join("zika.trace.csv")).unwrap();
    assert!(trace.starts_with("step,objective,best_so_far\n"));

    let m = manifest(dir.path(), "zika");
    assert!((m["result"]["best_energy"].as_f64().unwrap() - (-4.16)).abs() < 1e-9);
    assert_eq!(m["result"]["evaluations"].as_u64().unwrap(), 54);
    let turns: Vec<u64> = m["result"]["turns"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    assert_eq!(turns, [0, 2, 1, 0, 2, 0]);
    assert!((m["result"]["radius_of_gyration"].as_f64().unwrap() - 4.2050).abs() < 1e-3);

    // Every defaulted knob is echoed so the run can be reproduced exactly.
    assert_eq!(m["config"]["solver"], "exhaustive");
    assert_eq!(m["config"]["mode"], "physical");
    assert_eq!(m["config"]["penalties"]["overlap"].as_f64().unwrap(), 50.0);
    assert_eq!(m["config"]["anneal"]["sweeps"].as_u64().unwrap(), 400);
    assert_eq!(m["config"]["vqe"]["alpha"].as_f64().unwrap(), 0.1);
    assert_eq!(m["files"]["pdb"], "zika.pdb");
}

#[test]
fn fold_rejects_short_chains_with_exit_2() {
    let dir = tempdir().unwrap();
    let out = run_in(dir.path(), &["fold", "--seq", "AAA"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("N ≥ 4 required"), "got: {}", stderr(&out));
}

#[test]
fn fold_rejects_unknown_residues_with_exit_2() {
    let dir = tempdir().unwrap();
    let out = run_in(dir.path(), &["fold", "--seq", "AAXBA"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("unknown amino-acid symbol"));
}

#[test]
fn fold_vqe_refuses_physical_mode() {
    let dir = tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["fold", "--seq", "LHPGAGK", "--solver", "vqe", "--mode", "physical"],
    );
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("clamped"));
}

#[test]
fn same_invocation_same_seed_gives_identical_manifests_except_timestamp() {
    let d1 = tempdir().unwrap();
    let d2 = tempdir().unwrap();
    let args = [
        "fold", "--seq", "LHPGAGK", "--solver", "anneal", "--seed", "11", "--out", "run",
    ];
    assert_eq!(exit_code(&run_in(d1.path(), &args)), 0);
    assert_eq!(exit_code(&run_in(d2.path(), &args)), 0);

    let strip = |dir: &Path| -> Vec<String> {
        fs::read_to_string(dir.join("run.manifest.json"))
            .unwrap()
            .lines()
            .filter(|l| !l.contains("timestamp"))
            .map(str::to_owned)
            .collect()
    };
    assert_eq!(strip(d1.path()), strip(d2.path()));
    assert_eq!(
        fs::read(d1.path().join("run.pdb")).unwrap(),
        fs::read(d2.path().join("run.pdb")).unwrap()
    );
}

#[test]
fn vqe_fold_reaches_the_exhaustive_minimum() {
    let dir = tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["fold", "--seq", "LHPGAGK", "--solver", "vqe", "--seed", "3", "--out", "v"],
    );
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    let m = manifest(dir.path(), "v");
    assert_eq!(m["config"]["mode"], "clamped");
    assert!((m["result"]["best_energy"].as_f64().unwrap() - (-4.16)).abs() < 1e-9);
}

#[test]
fn config_file_fills_gaps_and_flags_win() {
    let dir = tempdir().unwrap();
    fs::write(
        dir.path().join("cfg.toml"),
        "solver = \"anneal\"\nseed = 9\n\n[anneal]\nsweeps = 5\n",
    )
    .unwrap();

    let out = run_in(
        dir.path(),
        &["fold", "--seq", "LHPGAGK", "--config", "cfg.toml", "--out", "a"],
    );
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    let m = manifest(dir.path(), "a");
    assert_eq!(m["config"]["solver"], "anneal");
    assert_eq!(m["config"]["seed"].as_u64().unwrap(), 9);
    assert_eq!(m["config"]["anneal"]["sweeps"].as_u64().unwrap(), 5);

    let out = run_in(
        dir.path(),
        &[
            "fold", "--seq", "LHPGAGK", "--config", "cfg.toml", "--sweeps", "7", "--out", "b",
        ],
    );
    assert_eq!(exit_code(&out), 0);
    let m = manifest(dir.path(), "b");
    assert_eq!(m["config"]["anneal"]["sweeps"].as_u64().unwrap(), 7);
}

#[test]
fn config_file_with_unknown_keys_exits_2() {
    let dir = tempdir().unwrap();
    fs::write(dir.path().join("bad.toml"), "nonsense = 1\n").unwrap();
    let out = run_in(
        dir.path(),
        &["fold", "--seq", "LHPGAGK", "--config", "bad.toml"],
    );
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("unknown field"));
}

#[test]
fn unwritable_out_prefix_exits_3() {
    let dir = tempdir().unwrap();
    fs::write(dir.path().join("block"), "").unwrap();
    let out = run_in(
        dir.path(),
        &["fold", "--seq", "LHPGAGK", "--out", "block/run"],
    );
    assert_eq!(exit_code(&out), 3);
}

#[test]
fn missing_fasta_exits_3() {
    let dir = tempdir().unwrap();
    let out = run_in(dir.path(), &["fold", "--fasta", "absent.fasta"]);
    assert_eq!(exit_code(&out), 3);
}

#[test]
fn thread_count_flag_is_recorded() {
    let dir = tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["fold", "--seq", "LHPGAGK", "--threads", "2", "--out", "t"],
    );
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    let m = manifest(dir.path(), "t");
    assert_eq!(m["config"]["threads"].as_u64().unwrap(), 2);
}

#[test]
fn thread_env_var_must_be_numeric() {
    let dir = tempdir().unwrap();
    let out = Command::new(BIN)
        .args(["resources", "--n", "5"])
        .env("TETRAFOLD_THREADS", "abc")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("TETRAFOLD_THREADS"));
}

#[test]
fn resources_reports_the_qubit_anchor() {
    let dir = tempdir().unwrap();
    let out = run_in(dir.path(), &["resources", "--n", "22"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(
        stdout(&out).trim(),
        "N=22: 37 config + 81 interaction = 118 total qubits"
    );

    let out = run_in(dir.path(), &["resources", "--n", "22", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["total_qubits"].as_u64().unwrap(), 118);
}

#[test]
fn resources_curve_is_csv() {
    let dir = tempdir().unwrap();
    let out = run_in(dir.path(), &["resources", "--lo", "4", "--hi", "6"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("N,config,interaction,total"));
    assert_eq!(lines.clone().count(), 3);
    assert_eq!(lines.next(), Some("4,1,0,1"));
}

#[test]
fn resources_full_estimate_includes_shot_bounds() {
    let dir = tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["resources", "--seq", "LHPGAGK", "--epsilons", "1,5,10", "--json"],
    );
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["total_qubits"].as_u64().unwrap(), 9);
    assert_eq!(v["spin_terms"].as_u64().unwrap(), 63);
    assert!((v["h_max"].as_f64().unwrap() - 87.92).abs() < 1e-9);
    let shots: Vec<u64> = v["shots_bound"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b["shots"].as_u64().unwrap())
        .collect();
    assert_eq!(shots, [494_716, 19_789, 4_948]);
}

#[test]
fn resources_requires_exactly_one_mode() {
    let dir = tempdir().unwrap();
    let out = run_in(dir.path(), &["resources"]);
    assert_eq!(exit_code(&out), 2);
    let out = run_in(dir.path(), &["resources", "--n", "5", "--seq", "AAAA"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn levinthal_small_chain() {
    let dir = tempdir().unwrap();
    let out = run_in(dir.path(), &["levinthal", "--n", "2"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("9 conformations"), "got: {}", stdout(&out));

    let out = run_in(dir.path(), &["levinthal", "--n", "150", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["conformations"].as_str().unwrap().len(), 143);
}

#[test]
fn metrics_rmsd_of_identical_files_is_zero() {
    let dir = tempdir().unwrap();
    run_in(dir.path(), &["fold", "--seq", "LHPGAGK", "--out", "m"]);
    let out = run_in(dir.path(), &["metrics", "rmsd", "m.pdb", "m.pdb"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out).trim(), "0.000");

    let out = run_in(dir.path(), &["metrics", "rg", "m.pdb", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v["radius_of_gyration"].as_f64().unwrap() - 4.2050).abs() < 1e-3);
}

#[test]
fn qubo_reports_variable_counts() {
    let dir = tempdir().unwrap();
    let out = run_in(dir.path(), &["qubo", "--seq", "LHPGAGK", "--out", "q"]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["original_variables"].as_u64().unwrap(), 9);
    assert_eq!(v["variables"].as_u64().unwrap(), 23);
    assert!(dir.path().join("q.qubo.txt").exists());
    assert!(dir.path().join("q.meta.json").exists());
}

#[test]
fn hamiltonian_meta_goes_to_stdout() {
    let dir = tempdir().unwrap();
    let out = run_in(dir.path(), &["hamiltonian", "--seq", "LHPGAGK"]);
    assert_eq!(exit_code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["residues"].as_u64().unwrap(), 7);
    assert_eq!(v["config_bits"].as_u64().unwrap(), 7);
    assert_eq!(v["spin_terms"].as_u64().unwrap(), 63);
}

#[test]
fn screen_emits_tsv_on_request() {
    let dir = tempdir().unwrap();
    fs::write(
        dir.path().join("aln.fasta"),
        ">query\nLHPGAGK\n>hom1\nLHPGAGR\n",
    )
    .unwrap();
    let out = run_in(
        dir.path(),
        &["screen", "--seq", "LHPGAGK", "--alignment", "aln.fasta", "--tsv"],
    );
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("sequence\tlength\tmutations\tn_eff\tqubit_need\ttier\tmsa_flag\tamenable")
    );
    let row = lines.next().unwrap();
    assert!(row.starts_with("LHPGAGK\t7\t"));
    assert!(row.ends_with("\ttrue"));
}

#[test]
fn screen_defaults_to_json() {
    let dir = tempdir().unwrap();
    let out = run_in(dir.path(), &["screen", "--seq", "LHPGAGK"]);
    assert_eq!(exit_code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["qubit_need"].as_u64().unwrap(), 9);
    assert_eq!(v["msa_flag"], "unknown");
    assert_eq!(v["amenable"], false);
}
