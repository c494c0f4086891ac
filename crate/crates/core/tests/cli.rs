use std::path::PathBuf;
use std::process::{Command, Output};

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn subtrop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subtrop")).args(args).output().expect("binary runs")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = subtrop(args);
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn path(name: &str) -> String {
    golden(name).to_string_lossy().into_owned()
}

#[test]
fn decide_example2_json() {
    let (code, stdout, _) = run(&["decide", &path("example2.spp"), "--format", "json", "--check"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["status"], "sat");
    let n: Vec<i64> = v["n"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
    assert_eq!(n.len(), 2);
    // every clause of C(n) for this system, checked by hand
    let lit = |a: i64, b: i64| a * n[0] + b * n[1] >= 1;
    assert!(lit(-3, 1) || lit(-5, 2));
    assert!(lit(0, 1) || lit(-2, 2));
    assert!(lit(5, -3) || lit(2, -2) || lit(2, -3));
}

#[test]
fn decide_example3_json() {
    let (code, stdout, _) = run(&["decide", &path("example3.spp"), "--format", "json", "--check"]);
    assert_eq!((code, stdout.as_str()), (1, "{\"status\":\"unsat\"}\n"));
}

#[test]
fn decide_zero_row() {
    let (code, stdout, _) = run(&["decide", &path("zero_row.spp"), "--format", "json"]);
    assert_eq!(code, 1);
    assert_eq!(stdout, "{\"status\":\"unsat\",\"reason\":\"zero-row\",\"row\":2}\n");
    let (code, stdout, _) = run(&["decide", &path("zero_row.spp")]);
    assert_eq!(code, 1);
    assert!(stdout.contains("zero-row"));
}

#[test]
fn witness_outputs() {
    let (code, stdout, _) = run(&["witness", &path("example2.spp"), "--check", "--seed", "11"]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("t = 1 + c11/c12 + c11/c15 + c13/c12 + c13/c15 + c24/c21 + c24/c22 + c24/c23; z = (t^"));
    let (code, stdout, _) = run(&["witness", &path("intro_f.spp"), "--shrink"]);
    assert_eq!((code, stdout.as_str()), (0, "t = 1 + c1/c2 + c1/c0; z = (t^1)\n"));
    let (code, stdout, _) = run(&["witness", &path("all_positive.spp")]);
    assert_eq!((code, stdout.as_str()), (0, "t = 1; z = (t^0, t^0)\n"));
    let (code, _, stderr) = run(&["witness", &path("intro_g.spp")]);
    assert_eq!(code, 1);
    assert!(stderr.contains("no parametric positive solution"));
}

#[test]
fn witness_json_is_stable() {
    let args = ["witness", &path("example2.spp"), "--format", "json"];
    let first = subtrop(&args).stdout;
    assert_eq!(first, subtrop(&args).stdout);
    let v: serde_json::Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(v["t"]["one"], 1);
    assert_eq!(v["t"]["terms"][0], serde_json::json!(["c11", "c12"]));
    assert_eq!(v["t"]["terms"].as_array().unwrap().len(), 7);
}

#[test]
fn verify_intro_f() {
    let coeffs = path("intro_f_ones.coeffs");
    let (code, stdout, _) = run(&["verify", &path("intro_f.spp"), "--coeffs", &coeffs, "--shrink"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "t = 3\nr = 3\nn = (1)\npoint = (3)\nvalues = (7)\nok\n");
    let (code, _, stderr) = run(&["verify", &path("intro_f.spp")]);
    assert_eq!(code, 2);
    assert!(stderr.contains("--coeffs"));
}

#[test]
fn verify_example2_all_ones() {
    let coeffs = path("example2_ones.coeffs");
    let (code, stdout, _) = run(&["verify", &path("example2.spp"), "--coeffs", &coeffs, "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["t"], "8");
    assert_eq!(v["ok"], true);
    let n: Vec<i64> = v["n"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
    let expected: Vec<String> = n.iter().map(|&k| format!("1/{}", 8u128.pow(u32::try_from(-k).unwrap()))).collect();
    assert_eq!(v["point"], serde_json::json!(expected));
}

#[test]
fn verify_with_uniform_bound() {
    let (code, stdout, _) = run(&["verify", &path("all_positive.spp"), "--use-uniform-bound"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("r = 1\n"));
    let src = std::env::temp_dir().join(format!("subtrop-cli-{}.spp", std::process::id()));
    std::fs::write(&src, "vars x\npoly f = 2*x^2 - x + 4\n").unwrap();
    let (code, stdout, _) = run(&["verify", src.to_str().unwrap(), "--use-uniform-bound"]);
    std::fs::remove_file(&src).ok();
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("t = 7/4\nr = 4\n"), "{stdout}");
}

#[test]
fn verify_size_limit() {
    let coeffs = path("example2_ones.coeffs");
    let (code, _, stderr) = run(&["verify", &path("example2.spp"), "--coeffs", &coeffs, "--max-bits", "16"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("bits"), "{stderr}");
}

#[test]
fn explain_text() {
    let (code, stdout, _) = run(&["explain", &path("example2.spp")]);
    assert_eq!(code, 0);
    assert!(stdout.contains("clause 1 1: [2: -3 1] [5: -5 2]\n"), "{stdout}");
    assert!(stdout.contains("clause 2 4: [1: 5 -3] [2: 2 -2] [3: 2 -3]\n"), "{stdout}");
    let (_, json, _) = run(&["explain", &path("intro_g.spp"), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["clauses"].as_array().unwrap().len(), 2);
    assert_eq!(v["branches"].as_array().unwrap().len(), 1);
}

#[test]
fn usage_and_parse_errors() {
    let (code, _, _) = run(&["decide"]);
    assert_eq!(code, 2);
    let (code, _, stderr) = run(&["decide", "/nonexistent/file.spp"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("file.spp"));
    let src = std::env::temp_dir().join(format!("subtrop-bad-{}.spp", std::process::id()));
    std::fs::write(&src, "vars x\npoly f = 2*x +\n").unwrap();
    let (code, _, stderr) = run(&["decide", src.to_str().unwrap()]);
    std::fs::remove_file(&src).ok();
    assert_eq!(code, 2);
    assert!(stderr.contains(":2:"), "{stderr}");
}
