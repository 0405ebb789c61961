use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parahecke"))
        .args(args)
        .env("PARAHECKE_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn report(cache: &Path, args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = run(cache, &all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v)
}

#[test]
fn jtower_example() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["jtower", "--type", "A", "--rank", "2", "--J", "s1", "--w", "s2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[{s1} → ∅]"), "{text}");

    let (code, v) = report(dir.path(), &["jtower", "--type", "A", "--rank", "2", "--J", "s1", "--w", "s2"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "parahecke.report/v1");
    assert_eq!(v["result"]["chain"], serde_json::json!(["{s1}", "∅"]));
}

#[test]
fn verify_all_on_a2() {
    let dir = tempfile::tempdir().unwrap();
    let (code, v) = report(dir.path(), &["verify-all", "--type", "A", "--rank", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    for want in ["duality involution", "Mackey formula", "sign identity"] {
        assert!(names.iter().any(|n| n.contains(want)), "{names:?}");
    }
}

#[test]
fn parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(dir.path(), &["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["jtower", "--type", "A", "--rank", "2"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["coset-reps", "--type", "Q", "--rank", "2"]).status.code(), Some(2));
    // s1 has a left descent in J = {s1}
    let out = run(dir.path(), &["jtower", "--type", "A", "--rank", "2", "--J", "s1", "--w", "s1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a minimal representative"));
    let out = run(dir.path(), &["duality", "--type", "A", "--rank", "2", "--eps", "flip", "--J", "s1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cache_admin() {
    let dir = tempfile::tempdir().unwrap();
    let (code, v) = report(dir.path(), &["cache", "clear"]);
    assert_eq!((code, v["result"]["removed"].as_u64()), (0, Some(0)));

    let (code, v) = report(dir.path(), &["cache", "warm", "--groups", "B2"]);
    assert_eq!(code, 0);
    let fp = v["result"]["groups"][0]["fingerprint"].clone();
    let (_, v) = report(dir.path(), &["cache", "status"]);
    assert_eq!(v["result"]["entries"], 1);
    assert_eq!(v["result"]["files"][0]["fingerprint"], fp);

    let (_, v) = report(dir.path(), &["cache", "clear"]);
    assert_eq!(v["result"]["removed"], 1);
    let (_, v) = report(dir.path(), &["cache", "clear"]);
    assert_eq!(v["result"]["removed"], 0);

    let out = run(dir.path(), &["cache", "warm", "--groups", "E8"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds the bound"));
}

#[test]
fn unwritable_cache_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("plain-file");
    std::fs::write(&file, "x").unwrap();
    let out = run(&file.join("sub"), &["cache", "warm", "--groups", "A2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn reports_are_deterministic_and_jobs_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["hecke", "--type", "B", "--rank", "3", "--params", "1,1,2", "--w", "s3 s2", "--u", "s2 s3", "--seed", "11"];
    let a = run(dir.path(), &[&args[..], &["--json"]].concat());
    let b = run(dir.path(), &[&args[..], &["--json", "--sequential"]].concat());
    let strip = |o: &Output| {
        let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v["job"].as_object_mut().unwrap().remove("sequential");
        v
    };
    assert_eq!(strip(&a), strip(&b));

    let spec = run(dir.path(), &[&args[..], &["--dump-spec"]].concat());
    let path = dir.path().join("job.json");
    std::fs::write(&path, &spec.stdout).unwrap();
    let c = run(dir.path(), &["run", path.to_str().unwrap(), "--json"]);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn hecke_product_terms() {
    let dir = tempfile::tempdir().unwrap();
    // T_{s1 s2} T_{s2} = T_{s1} ((c-1) T_{s2} + c) with c = v^4
    let (code, v) = report(dir.path(), &["hecke", "--group", "B2", "--params", "1,2", "--w", "s1 s2", "--u", "s2"]);
    assert_eq!(code, 0);
    let terms = v["result"]["product"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert!(terms.contains(&serde_json::json!({"w": "s1", "coeff": {"4": 1}})));
    assert!(terms.contains(&serde_json::json!({"w": "s1 s2", "coeff": {"0": -1, "4": 1}})));
}

#[test]
fn sp_model_and_omega() {
    let dir = tempfile::tempdir().unwrap();
    let (_, v) = report(dir.path(), &["sp-model", "--n", "7", "--k", "1"]);
    assert_eq!(v["result"]["admissible"], true);
    assert_eq!(v["result"]["exponents"], serde_json::json!([10]));
    let (_, v) = report(dir.path(), &["sp-model", "--n", "5", "--k", "1"]);
    assert_eq!(v["result"]["admissible"], false);

    let (code, v) = report(dir.path(), &["omega", "--type", "D", "--rank", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["shape"], "Z/2 x Z/2");
    let (_, v) = report(dir.path(), &["omega", "--type", "A", "--rank", "3", "--eps", "flip"]);
    assert_eq!(v["result"]["order"], 4);
    assert_eq!(v["result"]["cases"][0]["case"], "ii");
}

#[test]
fn parabolic_commands() {
    let dir = tempfile::tempdir().unwrap();
    let (code, v) = report(dir.path(), &["coset-reps", "--type", "B", "--rank", "3", "--J", "s1 s2"]);
    assert_eq!(code, 0);
    // |W(B3)| / |W(A2)| = 48 / 6
    assert_eq!(v["result"]["count"], 8);
    let (code, v) = report(dir.path(), &["signsum", "--group", "D4", "--eps", "triality", "--H", "", "--K", "s2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["sum"], v["result"]["expected"]);
    let (code, v) = report(dir.path(), &["series", "--group", "B2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["series"].as_array().unwrap().len(), 4);
    let (code, _) = report(dir.path(), &["cuspidal", "--group", "A3", "--eps", "flip"]);
    assert_eq!(code, 0);
    let (code, _) = report(dir.path(), &["quasirat", "--group", "A2", "--eps", "flip"]);
    assert_eq!(code, 0);
}
