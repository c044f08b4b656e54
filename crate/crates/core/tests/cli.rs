use std::process::Command;

use serde_json::Value;

fn holokit(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_holokit"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let (code, out, err) = holokit(&a);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn cup_from_file() {
    let v = json(&["cup", "data/echelon6.pres"]);
    assert_eq!(v["values"], serde_json::json!(["8/3", "-7", "0"]));
    assert_eq!(v["h1_basis"], serde_json::json!(["x2", "x5", "x6"]));
}

#[test]
fn whitehead_report() {
    let v = json(&["onerelator", "data/whitehead.pres"]);
    assert_eq!(v["weight"], 4);
    assert_eq!(v["graded_formal"], false);
    assert_eq!(v["discrepancy"]["degree"], 4);
}

#[test]
fn koszul_coefficients() {
    let v = json(&["series", "koszul", "1", "4", "5"]);
    let c = v["coefficients"].as_array().unwrap();
    assert_eq!(c[c.len() - 2..], [serde_json::json!("44"), serde_json::json!("-29")]);
}

#[test]
fn non_pbw_series_is_a_field() {
    let v = json(&["series", "invert", "1", "1", "-1"]);
    assert_eq!(v["not_pbw"]["degree"], 2);
    assert_eq!(v["not_pbw"]["value"], "-2");
}

#[test]
fn chen_and_holonomy() {
    let v = json(&["chen", "--inline", "gens: x y; rels:"]);
    assert_eq!(v["quotient_dims"], serde_json::json!([2, 1, 2, 3, 4, 5]));
    let v = json(&["holonomy", "data/heisenberg.pres", "--cap", "3"]);
    assert_eq!(v["relations"], serde_json::json!([]));
    assert_eq!(v["dropped_zero_relations"], serde_json::json!([2, 3]));
}

#[test]
fn mild_with_ordering() {
    let v = json(&["mild", "data/three_quadratic.pres", "--order", "x4,x3,x2,x1"]);
    assert_eq!(v["ordering"], serde_json::json!(["x4", "x3", "x2", "x1"]));
    assert_eq!(v["hilbert"]["agrees"], true);
    let (code, _, _) = holokit(&["mild", "data/three_quadratic.pres", "--order", "x9"]);
    assert_eq!(code, 1);
}

#[test]
fn fdlie_and_seifert() {
    let v = json(&["fdlie", "data/nilpotent5.json"]);
    assert_eq!(v["original_profile"]["center_dim"], 1);
    assert_eq!(v["graded_profile"]["center_dim"], 2);
    assert_eq!(v["obstruction_found"], true);
    let v = json(&["seifert", "data/seifert_g2_b1.json", "--cap", "3"]);
    assert_eq!(v["closed_form"]["phi_bar"], serde_json::json!(["4", "6", "20"]));
    assert_eq!(v["closed_form"]["phi"], serde_json::json!(["4", "6", "16"]));
    assert_eq!(v["engine_phi_bar"], serde_json::json!([4, 6, 20]));
    assert_eq!(v["euler"], "-1");
}

#[test]
fn exit_codes() {
    assert_eq!(holokit(&["nonsense"]).0, 1);
    assert_eq!(holokit(&["cup", "data/missing.pres"]).0, 1);
    assert_eq!(holokit(&["onerelator", "--cap", "3", "data/whitehead.pres"]).0, 2);
    assert_eq!(holokit(&["chen", "--cap", "12", "--inline", "gens: x; rels:"]).0, 1);
    let (code, out, _) = holokit(&["cup", "--format", "json", "--inline", "gens: x;\nrels: q"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"]["line"], 2);
    assert_eq!(holokit(&["--help"]).0, 0);
}

#[test]
fn json_is_byte_stable() {
    let a = holokit(&["holonomy", "data/surface2.pres", "--format", "json", "--level", "2", "--cap", "4"]);
    let b = holokit(&["holonomy", "data/surface2.pres", "--format", "json", "--level", "2", "--cap", "4"]);
    assert_eq!(a, b);
}
