use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fsgkit")).args(args).output().expect("binary runs")
}

fn run_env(args: &[&str], key: &str, val: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fsgkit")).args(args).env(key, val).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn strings(v: &Value) -> Vec<&str> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect()
}

#[test]
fn psl_4_3_order() {
    let v = json(&["orders", "--family", "PSL", "--n", "4", "--q", "3"]);
    assert_eq!(v["order"], "6065280");
    assert_eq!(v["simple"], true);
}

#[test]
fn j_coefficients() {
    let v = json(&["moonshine", "--j", "--terms", "3"]);
    assert_eq!(strings(&v["j"]["coefficients"]), ["1", "744", "196884", "21493760", "864299970"]);
}

#[test]
fn alt5_report() {
    let v = json(&["group", "--name", "alt", "--n", "5", "--report"]);
    assert_eq!(v["order"], "60");
    assert_eq!(v["simple"], true);
    assert_eq!(strings(&v["classes"]), ["1", "15", "20", "12", "12"]);
}

#[test]
fn m12_from_generators() {
    let v = json(&[
        "group",
        "--degree",
        "12",
        "--gens",
        "(0 1 2 3 4 5 6 7 8 9 10);(2 6 10 7)(3 9 4 5);(0 11)(1 10)(2 5)(3 7)(4 8)(6 9)",
    ]);
    assert_eq!(v["order"], "95040");
    assert_eq!(v["transitivity"]["k"], "5");
    assert_eq!(v["transitivity"]["sharp"], true);
}

#[test]
fn projective_pgl() {
    let v = json(&["group", "--projective", "PGL", "--n", "2", "--q", "9"]);
    assert_eq!(v["order"], "720");
    assert_eq!(v["degree"], "10");
}

#[test]
fn golay_and_leech() {
    let g = json(&["golay", "--mathieu"]);
    assert_eq!(g["min_weight"], "8");
    assert_eq!(g["steiner"]["octads"], "759");
    assert_eq!(g["mathieu"]["order"], "244823040");
    let l = json(&["leech"]);
    assert_eq!(l["kissing_number"], "196560");
    assert_eq!(l["theta"]["coeffs"][2], "196560");
}

#[test]
fn census_small() {
    let v = json(&["census", "--bound", "10000"]);
    assert_eq!(v["count"], "20");
    let orders: Vec<&str> = v["entries"].as_array().unwrap().iter().map(|e| e["order"].as_str().unwrap()).collect();
    assert!(orders.contains(&"7920"));
}

#[test]
fn field_inverse_roundtrip() {
    let inv = json(&["field", "--p", "2", "--f", "8", "--op", "inv", "--a", "5"]);
    let idx = inv["index"].as_str().unwrap().to_string();
    let prod = json(&["field", "--p", "2", "--f", "8", "--op", "mul", "--a", "5", "--b", &idx]);
    assert_eq!(prod["index"], "1");
}

#[test]
fn zoo_and_chartab() {
    assert_eq!(json(&["zoo", "--abelian", "72"])["count"], "6");
    assert_eq!(json(&["zoo", "--aut", "dihedral:4"])["aut_order"], "8");
    let t = json(&["chartab", "--name", "S", "--n", "4"]);
    assert_eq!(strings(&t["degrees"]), ["1", "1", "2", "3", "3"]);
}

#[test]
fn algebra_ops() {
    let v = json(&["algebra", "--algebra", "H", "--a", "0,1,0,0", "--b", "0,0,1,0"]);
    assert_eq!(v["product"]["display"], "k");
    let p = json(&["algebra", "--algebra", "O", "--op", "probe", "--samples", "20"]);
    assert_eq!(p["passed"], true);
    assert_eq!(p["norm_failures"], "0");
}

#[test]
fn sporadic_lookup() {
    assert_eq!(json(&["sporadic", "--symbol", "J1"])["order"], "175560");
}

#[test]
fn json_round_trips() {
    for args in
        [&["moonshine", "--monster"][..], &["orders", "--family", "E8", "--q", "2"], &["zoo", "--catalog"], &["golay"]]
    {
        let out = run(args);
        assert!(out.status.success());
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
        assert_eq!(again.as_bytes(), &out.stdout[..], "{args:?}");
    }
}

#[test]
fn numbers_are_strings() {
    fn walk(v: &Value) {
        match v {
            Value::Number(n) => panic!("bare number {n}"),
            Value::Array(a) => a.iter().for_each(walk),
            Value::Object(o) => o.values().for_each(walk),
            _ => {}
        }
    }
    walk(&json(&["moonshine", "--monster", "--identities"]));
    walk(&json(&["leech"]));
}

#[test]
fn validation_exit_code() {
    for args in [
        &["orders", "--family", "PSL", "--n", "2", "--q", "6"][..],
        &["orders", "--family", "Nope", "--q", "2"],
        &["group", "--name", "nope", "--n", "3"],
        &["field", "--p", "4"],
        &["algebra", "--algebra", "O", "--a", "1,2"],
        &["verify-all", "--only", "99"],
        &["no-such-command"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn resource_exit_code() {
    assert_eq!(run(&["census", "--bound", "100000000"]).status.code(), Some(3));
    let out = run_env(&["field", "--p", "13"], "FSGKIT_MAX_FIELD_SIZE", "10");
    assert_eq!(out.status.code(), Some(3));
    let out = run_env(&["moonshine", "--delta", "--terms", "50"], "FSGKIT_SERIES_TERMS", "10");
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn unsupported_family_is_a_usage_error() {
    let out = run(&["orders", "--family", "POmega_odd", "--n", "3", "--q", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn verify_all_text_table() {
    let out = run(&["--format", "text", "verify-all"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 11);
}
