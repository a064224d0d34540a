use std::path::Path;
use std::process::{Command, Output};

fn run(cache: Option<&Path>, args: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_nashcurve"));
    match cache {
        Some(dir) => cmd.arg("--cache-dir").arg(dir),
        None => cmd.arg("--no-cache"),
    };
    cmd.args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn hgen_prints_the_generator() {
    let o = run(None, &["hgen", "5,7", "--m", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "x^7 - (7/5)*x^5*y^2 - (2/5)*y^7\n");
}

#[test]
fn check_reports_not_normal() {
    let o = run(None, &["check", "3,4", "--n", "2", "--mode", "simple"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "not normal\n");
    let o = run(None, &["check", "3,4", "--n", "2", "--mode", "flag"]);
    assert_eq!(stdout(&o), "normal\n");
}

#[test]
fn nash_and_table_output() {
    let o = run(None, &["nash", "5,7", "--n", "2"]);
    assert!(stdout(&o).starts_with("Nash_2(⟨5,7⟩) = ⟨3,5,7⟩\n"));
    let o = run(None, &["nash", "<5,7>", "--n", "2", "--mode", "flag"]);
    assert!(stdout(&o).starts_with("fNash_2(⟨5,7⟩) = ⟨2,3⟩\n"));
    let o = run(None, &["table", "5,7", "--n", "5"]);
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("Nash_n") && l.contains("⟨3,5,7⟩")));
    assert_eq!(text.lines().filter(|l| !l.is_empty()).count(), 5);
}

#[test]
fn product_example() {
    let o = run(None, &["product", "1", "3,4", "--n", "2", "--mode", "simple"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("regular\n"), "{text}");
    assert!(text.contains("factor-wise simple normal: true false"));
    assert!(text.contains("cluster identity colengths: 1 3 6"));
}

#[test]
fn domain_errors_exit_one() {
    for args in [
        &["nash", "0,3", "--n", "1"][..],
        &["nash", "4,6", "--n", "1"],
        &["check", "3,4", "--n", "1", "--mode", "point"],
        &["product", "3,4", "--n", "1", "--mode", "simple"],
        &["verify", "nope"],
        &["sweep", "--bounds", "1,2", "--out", "/dev/null"],
        &["frobnicate"],
        &["hgen", "5,7"],
    ] {
        let o = run(None, args);
        assert_eq!(o.status.code(), Some(1), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn internal_errors_exit_two() {
    let o = run(None, &["--inject-fault", "internal", "semigroup", "5,7"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(None, &["--inject-fault", "domain", "semigroup", "5,7"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn cache_hit_matches_fresh_output() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 6] = [
        &["hgen", "5,7", "--m", "6"],
        &["nash", "5,7", "--n", "3"],
        &["table", "5,7", "--n", "5"],
        &["product", "1", "3,4", "--n", "3", "--mode", "flag"],
        &["--json", "conjecture", "5,7", "--n", "3"],
        &["semigroup", "3,5,7"],
    ];
    for args in cases {
        let first = run(Some(dir.path()), args);
        let hit = run(Some(dir.path()), args);
        let fresh = run(None, args);
        assert!(first.status.success() && hit.status.success());
        assert_eq!(first.stdout, hit.stdout, "{args:?}");
        assert_eq!(hit.stdout, fresh.stdout, "{args:?}");
    }
    let entries = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(entries, cases.len());
}

#[test]
fn cache_entries_are_keyed_json() {
    let dir = tempfile::tempdir().unwrap();
    run(Some(dir.path()), &["hgen", "5,7", "--m", "2"]);
    // Spelling of the generators does not change the key.
    run(Some(dir.path()), &["hgen", "⟨7,5⟩", "--m", "2"]);
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 1);
    let name = files[0].file_stem().unwrap().to_str().unwrap();
    assert_eq!(name.len(), 64);
    let entry: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&files[0]).unwrap()).unwrap();
    assert!(entry["key"].as_str().unwrap().contains("hgen"));
    assert!(entry["created_at"].as_u64().is_some());
    assert_eq!(entry["value"]["kind"], "h");
}

#[test]
fn corrupt_cache_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["nash", "5,7", "--n", "2"];
    let good = run(Some(dir.path()), &args);
    for f in std::fs::read_dir(dir.path()).unwrap() {
        std::fs::write(f.unwrap().path(), "garbage").unwrap();
    }
    let again = run(Some(dir.path()), &args);
    assert_eq!(good.stdout, again.stdout);
}

#[test]
fn json_round_trips() {
    let o = run(None, &["--json", "nash", "5,7", "--n", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["kind"], "nash");
    assert_eq!(v["data"]["n"], 2);
    assert_eq!(v["data"]["output"]["generators"], serde_json::json!([3, 5, 7]));
    let prov = v["data"]["provenance"].as_array().unwrap();
    assert!(prov.iter().any(|p| p["coefficient"] == "-25/7" && p["exponent"] == 3));
    let o = run(None, &["--json", "hgen", "5,7", "--m", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["data"]["polynomial"], "x^7 - (7/5)*x^5*y^2 - (2/5)*y^7");
}

#[test]
fn sweep_writes_jsonl() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.jsonl");
    let o = run(None, &["sweep", "--bounds", "5,12,3", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("theorem mismatches: 0"));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(!text.is_empty());
    for line in text.lines() {
        let rec: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(rec["agree"], true, "{line}");
    }
}

#[test]
fn empty_sweep_is_empty() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("empty.jsonl");
    let o = run(None, &["sweep", "--bounds", "0,0,0", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "");
}

#[test]
fn quick_verify_suites_pass() {
    for suite in ["h-golden", "table", "two-five", "example", "conjecture"] {
        let o = run(None, &["verify", suite]);
        assert_eq!(o.status.code(), Some(0), "{suite}");
        assert!(stdout(&o).starts_with(&format!("{suite}: PASS\n")));
    }
}
