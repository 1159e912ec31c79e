use std::process::Command;

use apolar::cli::{run, AppendixTable, CiCase, Experiment, ExperimentConfig};
use apolar::linalg::PrimeField;
use apolar::poly::{parse_polynomials, Ring};
use apolar::resolution::BettiTable;
use serde_json::Value;

fn apolar(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_apolar"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn config(experiment: Experiment, seed: u64) -> ExperimentConfig {
    let mut c = ExperimentConfig::new(experiment);
    c.seed = seed;
    c
}

#[test]
fn reports_are_deterministic() {
    for e in [
        Experiment::Chern,
        Experiment::SaVerify { n: 4, seeds: 3 },
        Experiment::MukaiP5 { seeds: 3 },
        Experiment::CiDemo { case: CiCase::P3 },
    ] {
        let a = run(&config(e.clone(), 7));
        let b = run(&config(e.clone(), 7));
        assert!(a.passed, "{}", e.name());
        assert_eq!(a.to_json_without_timing(), b.to_json_without_timing(), "{}", e.name());
    }
}

#[test]
fn json_output_matches_between_thread_counts() {
    let strip = |s: &str| {
        let mut v: Value = serde_json::from_str(s).unwrap();
        v.as_object_mut().unwrap().remove("timing_secs");
        v
    };
    let (c1, one, _) = apolar(&["run", "sa-verify", "--n", "3", "--seeds", "6", "--format", "json", "--threads", "1"]);
    let (c4, four, _) = apolar(&["run", "sa-verify", "--n", "3", "--seeds", "6", "--format", "json", "--threads", "4"]);
    assert_eq!((c1, c4), (0, 0));
    let (a, b) = (strip(&one), strip(&four));
    assert_eq!(a, b);
    assert_eq!(a["schema"], 1);
    assert_eq!(a["passed"], true);
}

#[test]
fn betti_tables_match_golden_files() {
    for t in [AppendixTable::Lg510, AppendixTable::G26] {
        let (code, out, _) = apolar(&["run", "betti", t.name()]);
        assert_eq!(code, 0, "{out}");
        let body: String = out.lines().skip(1).take_while(|l| !l.starts_with("PASS")).collect::<Vec<_>>().join("\n");
        assert_eq!(BettiTable::parse(&body).unwrap(), BettiTable::parse(t.golden()).unwrap());
    }
}

#[test]
fn golden_files_are_self_dual() {
    for t in [AppendixTable::Lg510, AppendixTable::G26, AppendixTable::Lg510Sq, AppendixTable::G26Sq] {
        let table = BettiTable::parse(t.golden()).unwrap();
        assert_eq!(table.render().trim_end(), t.golden().trim_end(), "{}", t.name());
        let self_dual = matches!(t, AppendixTable::Lg510 | AppendixTable::G26);
        assert_eq!(table.is_self_dual(), self_dual, "{}", t.name());
    }
}

#[test]
fn failures_name_the_operation() {
    let (code, out, err) = apolar(&["run", "chern", "--prime", "91"]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL"));
    assert!(err.starts_with("failed: linalg::PrimeField::new"), "{err}");
    let (code, out, _) = apolar(&["run", "chern", "--prime", "91", "--format", "json"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], false);
    assert_eq!(v["failure"]["module"], "linalg");
}

#[test]
fn timeouts_exit_with_status_three() {
    let (code, out, _) = apolar(&["run", "betti", "g26", "--timeout-secs", "0"]);
    assert_eq!(code, 3);
    assert!(out.contains("timed out"));
}

#[test]
fn output_file_and_dump_ideal() {
    let dir = std::env::temp_dir().join(format!("apolar-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("g26.txt");
    let (code, out, _) = apolar(&["run", "dump-ideal", "g26", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# dump-ideal g26"));
    let ring = Ring::new(PrimeField::default_large(), 15).unwrap();
    assert_eq!(parse_polynomials(&ring, &text).unwrap().len(), 15);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn small_prime_default_for_ci_demo() {
    let r = run(&config(Experiment::CiDemo { case: CiCase::P2 }, 0));
    assert!(r.passed);
    assert_eq!(r.prime, 101);
}
