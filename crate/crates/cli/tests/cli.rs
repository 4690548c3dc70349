//! The `fano` binary: exit codes, overrides and report files.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fano(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fano")).args(args).output().expect("binary runs")
}

fn scenario(file: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("scenarios")
        .join(file)
        .display()
        .to_string()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn report(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn passing_scenario_writes_report_and_exits_0() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = fano(&["verify", &scenario("conic_on_cubic.toml"), "--out", out.to_str().unwrap(), "--trials", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let keys: Vec<&str> = text
        .lines()
        .filter_map(|l| l.strip_prefix("  \""))
        .filter_map(|l| l.split('"').next())
        .collect();
    assert_eq!(
        keys,
        [
            "name", "check", "params", "field", "seed", "prng", "trials", "resamples", "results", "expected",
            "aggregate", "notes", "version", "catalog_version", "timestamp"
        ]
    );
    let r = report(&out);
    assert_eq!(r["trials"], 3);
    assert_eq!(r["results"].as_array().unwrap().len(), 3);
    assert_eq!(r["aggregate"]["status"], "pass");
    assert_eq!(r["prng"], "splitmix64");
}

#[test]
fn report_goes_to_stdout_without_out() {
    let o = fano(&["verify", &scenario("g3_witness.toml")]);
    assert_eq!(o.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["results"][0]["values"]["rank_deg4"], 70);
    assert_eq!(r["field"], "QQ");
}

#[test]
fn wrong_expectation_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(
        dir.path(),
        "s.toml",
        "name = \"wrong\"\ncheck = \"conic_on_cubic\"\ntrials = 2\n[expected]\nh0_N = 5\n",
    );
    let out = dir.path().join("r.json");
    let o = fano(&["verify", &s, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["aggregate"]["status"], "fail");
    assert_eq!(r["expected"]["provenance"], "scenario file");
    assert_eq!(r["results"][0]["mismatches"][0], "h0_N: expected 5, got 4");
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad_toml = write(dir.path(), "a.toml", "name = \n");
    let bad_check = write(dir.path(), "b.toml", "name = \"x\"\ncheck = \"nope\"\n");
    let unknown_key = write(dir.path(), "c.toml", "name = \"x\"\ncheck = \"g3_witness\"\ncolour = 1\n");
    let rational_random = write(dir.path(), "d.toml", "name = \"x\"\ncheck = \"conic_on_cubic\"\nfield = \"rational\"\n");
    for s in [&bad_toml, &bad_check, &unknown_key, &rational_random] {
        assert_eq!(fano(&["verify", s]).status.code(), Some(2), "{s}");
    }
    assert_eq!(fano(&["verify", "/nonexistent/scenario.toml"]).status.code(), Some(2));
    assert_eq!(fano(&["verify", &scenario("conic_on_cubic.toml"), "--prime", "4"]).status.code(), Some(2));
    assert_eq!(fano(&["verify", &scenario("conic_on_cubic.toml"), "--trials", "0"]).status.code(), Some(2));
}

#[test]
fn insufficient_samples_exit_3() {
    // GF(5) has too few points on the discriminant to reach the target
    let dir = tempfile::tempdir().unwrap();
    let s = write(
        dir.path(),
        "s.toml",
        "name = \"tiny field\"\ncheck = \"discriminant_net\"\nprime = 5\n[params]\nm = 3\npoints = 500\n",
    );
    let out = dir.path().join("r.json");
    let o = fano(&["verify", &s, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(report(&out)["aggregate"]["status"], "insufficient_samples");
}

#[test]
fn seed_override_changes_trial_seeds_only() {
    let a = fano(&["verify", &scenario("cayley_bacharach_coplanar.toml"), "--seed", "1", "--trials", "2"]);
    let b = fano(&["verify", &scenario("cayley_bacharach_coplanar.toml"), "--seed", "2", "--trials", "2"]);
    let (a, b): (serde_json::Value, serde_json::Value) =
        (serde_json::from_slice(&a.stdout).unwrap(), serde_json::from_slice(&b.stdout).unwrap());
    assert_ne!(a["results"][0]["seed"], b["results"][0]["seed"]);
    assert_eq!(a["results"][0]["values"], b["results"][0]["values"]);
}

#[test]
fn catalog_and_selftest() {
    let o = fano(&["catalog"]);
    assert_eq!(o.status.code(), Some(0));
    let table = String::from_utf8(o.stdout).unwrap();
    assert!(table.contains("conics_d3") && table.contains("canonical_g3"));
    let o = fano(&["selftest", "--threads", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!String::from_utf8(o.stdout).unwrap().contains("FAIL"));
}
