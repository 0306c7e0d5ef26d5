use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hecke(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke"))
        .args(args)
        .env("HECKE_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn ints(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|c| {
            assert_eq!(c["denominator"], "1");
            c["numerator"].as_str().unwrap().to_string()
        })
        .collect()
}

#[test]
fn compute_examples() {
    let dir = tempfile::tempdir().unwrap();
    let o = hecke(dir.path(), &["compute", "--form", "j", "--m", "3", "--terms", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["schema_version"], "v1");
    assert_eq!(ints(&v["coefficients"]), ["1", "744", "196884"]);
    assert_eq!(v["exponents"], serde_json::json!([-1, 0, 1]));

    let o = hecke(dir.path(), &["compute", "--form", "h4", "--m", "4", "--terms", "2"]);
    assert_eq!(ints(&json(&o)["coefficients"]), ["1", "384"]);

    let o = hecke(dir.path(), &["compute", "--form", "h4", "--m", "4", "--terms", "2", "--format", "csv"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "exponent,numerator,denominator\n0,1,1\n1,384,1\n");
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["compute", "--form", "j", "--m", "2", "--terms", "3"][..],
        &["compute", "--form", "nope", "--m", "3", "--terms", "3"],
        &["compute", "--form", "j", "--m", "3", "--terms", "0"],
        &["verify", "--conjecture", "9"],
        &["plot", "--family", "j", "--n", "3", "--res", "5000", "--out", "x.ppm"],
        &[],
    ] {
        assert_eq!(hecke(dir.path(), args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn cache_round_trip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["compute", "--form", "delta-dagger", "--m", "7", "--terms", "6"];
    let first = hecke(dir.path(), &args);
    let files: Vec<_> = fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1, "one pipeline-version directory");
    let second = hecke(dir.path(), &args);
    assert_eq!(first.stdout, second.stdout);
    let uncached = Command::new(env!("CARGO_BIN_EXE_hecke"))
        .args(["--no-cache"])
        .args(args)
        .output()
        .unwrap();
    assert_eq!(first.stdout, uncached.stdout);

    let o = hecke(dir.path(), &["--verify-cache"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["ok"], true);
    assert_eq!(v["verify_cache"]["checked"], 1);

    // Corrupt the entry: verification reports it and exits 1.
    let version_dir = fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let entry = fs::read_dir(&version_dir).unwrap().next().unwrap().unwrap().path();
    let text = fs::read_to_string(&entry).unwrap().replacen("\"1\"", "\"2\"", 1);
    fs::write(&entry, text).unwrap();
    let o = hecke(dir.path(), &["--verify-cache"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn interpolate_examples() {
    let dir = tempfile::tempdir().unwrap();
    let o = hecke(dir.path(), &["interpolate", "--family", "h4", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["results"][0]["polynomial"]["expr"], "16*x^2 + 32*x");

    let o = hecke(dir.path(), &["interpolate", "--family", "delta-dagger", "--n", "2"]);
    let v = json(&o);
    assert_eq!(
        v["results"][0]["polynomial"]["expr"],
        "-624*x^6 + 1520*x^5 - 1056*x^4 + 4160*x^3 + 1920*x^2"
    );
    assert!(v["results"][0].get("discrepancy").is_none());

    let o = hecke(dir.path(), &["interpolate", "--family", "j", "--n", "0"]);
    let v = json(&o);
    let d = &v["results"][0]["discrepancy"];
    assert_eq!(d["status"], "discrepancy");
    assert_eq!(d["printed"]["provenance"], "paper");
    assert_eq!(d["printed"]["value_at_3"]["numerator"], "248");
    assert_eq!(d["computed"]["value_at_3"]["numerator"], "744");

    let o = hecke(dir.path(), &["interpolate", "--family", "j", "--n", "3..4"]);
    let v = json(&o);
    assert_eq!(v["results"][1]["structure"]["monomial_power"], 5);
}

#[test]
fn verify_exit_code_and_reproducibility() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify", "--conjecture", "2,7", "--n", "0..6", "--m", "3..20"];
    let a = hecke(dir.path(), &args);
    assert_eq!(a.status.code(), Some(0));
    let b = hecke(dir.path(), &args);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["schema_version"], "v1");
    assert!(v["reports"].as_array().unwrap().iter().all(|r| r["status"] == "pass"));

    // The p = 3 leading-coefficient clause of conjecture 4 fails.
    let o = hecke(dir.path(), &["verify", "--conjecture", "4", "--n", "1..5"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    let fail = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["status"] == "fail")
        .unwrap();
    assert!(fail["counterexample"].as_str().unwrap().contains("ord_3(l_3)"));
}

#[test]
fn plot_is_deterministic_with_summary() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.ppm");
    let b = dir.path().join("b.ppm");
    let run = |out: &Path| {
        hecke(
            dir.path(),
            &["plot", "--family", "j", "--n", "6", "--window", "-6,6,-6,6", "--res", "120", "--out", out.to_str().unwrap()],
        )
    };
    let o = run(&a);
    assert_eq!(o.status.code(), Some(0));
    run(&b);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let v = json(&o);
    assert_eq!(v["root_count"], 21);
    assert_eq!(v["bound_check"]["within_bound"], true);
}
