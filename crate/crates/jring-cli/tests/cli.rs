use std::process::{Command, Output};

use serde_json::Value;

fn jring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jring"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let o = jring(&all);
    serde_json::from_str(&stdout(&o)).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", stdout(&o)))
}

const NATURAL_S3: &str = "[[1,0,2],[0,2,1]]";

#[test]
fn centralizer_of_sp6_class() {
    let v = json(&[
        "centralizer",
        "--type",
        "C",
        "--rank",
        "3",
        "--partition",
        "2,2,2",
    ]);
    assert_eq!(v["factors"], serde_json::json!([["O", 3]]));
    assert_eq!(v["component_group_order"], 2);
    assert_eq!(v["a_value"], 3);
}

#[test]
fn poincare_b3_at_one() {
    let o = jring(&["poincare", "--type", "B", "--rank", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("P_W(1) = 48"), "{}", stdout(&o));
    let v = json(&["poincare", "--weyl", "A1xA1", "--check"]);
    assert_eq!(v["value_at_1"], "4");
    assert_eq!(v["enumeration_agrees"], true);
}

#[test]
fn rigid_sl2_check() {
    let o = jring(&["rigid", "--example", "sl2", "--check"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).contains("det = (q^1/2 + q^-1/2)^2"),
        "{}",
        stdout(&o)
    );
    let v = json(&["rigid", "--example", "so7", "--check"]);
    assert_eq!(v["det_b"], "128");
    assert_eq!(v["structure_ok"], true);
}

#[test]
fn fdeg_examples() {
    let k =
        |den: &str| json(&["fdeg-check", "--den", den, "--type", "A", "--rank", "1"])["k"].clone();
    assert_eq!(k("1+q"), 1);
    assert_eq!(k("1+2q+q^2"), 2);
    assert_eq!(k("1+q^2"), Value::Null);
    let o = jring(&["fdeg-check", "--den", "1+q^2", "--type", "A", "--rank", "1"]);
    assert_eq!(o.status.code(), Some(1));
    // A numerator sharing the factor cancels it.
    let v = json(&[
        "fdeg-check",
        "--num",
        "1+q^2",
        "--den",
        "1+q^2",
        "--type",
        "A",
        "--rank",
        "1",
    ]);
    assert_eq!(v["k"], 0);
}

#[test]
fn exit_codes() {
    assert_eq!(jring(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        jring(&["centralizer", "--type", "C", "--rank", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        jring(&[
            "centralizer",
            "--type",
            "C",
            "--rank",
            "3",
            "--partition",
            "3,2,1"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        jring(&["coinvariants", "--matrix", "1,1;0,1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(jring(&["rigid", "--example", "gl3"]).status.code(), Some(2));
}

#[test]
fn coinvariant_reports() {
    let v = json(&["coinvariants", "--matrix", "0,1;1,0"]);
    assert_eq!(
        (v["free_rank"].clone(), v["torsion"].clone()),
        (1.into(), serde_json::json!([]))
    );
    let v = json(&["coinvariants", "--matrix=-1"]);
    assert_eq!(v["torsion"], serde_json::json!(["2"]));
    let v = json(&["coinvariants", "--fixture", "s3-root"]);
    let d: Vec<i64> = v["components"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["d"].as_i64().unwrap())
        .collect();
    assert_eq!(d, vec![2, 1, 0]);
}

#[test]
fn idempotents_and_specializations() {
    let v = json(&["idempotents", "--group", "S3", "--action", NATURAL_S3]);
    assert_eq!(v["ok"], true);
    assert_eq!(v["members"].as_array().unwrap().len(), 2);
    let v = json(&[
        "specialize",
        "--group",
        "S3",
        "--action",
        NATURAL_S3,
        "--idempotent",
        "std",
    ]);
    let ranks: Vec<i64> = v["specializations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["rank"].as_i64().unwrap())
        .collect();
    // Identity: rank 2; transpositions fix one point where std vanishes; 3-cycles fix nothing.
    assert_eq!(ranks, vec![2, 0, 0, 0, 0, 0]);
    let o = jring(&["idempotents", "--group", "S3", "--action", "[[0,1],[0,1]]"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn characters_and_models() {
    let v = json(&[
        "char", "--group", "Spin", "--rank", "3", "--which", "delta+",
    ]);
    assert_eq!(v["dimension"], 4);
    let v = json(&["char", "--group", "Pin", "--rank", "2", "--presentation"]);
    assert!(v["presentation"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["holds"] == true));
    let v = json(&["jmodel", "--name", "sl2-j0", "--fiber", "zeta4"]);
    assert_eq!(v["fiber"]["dimension"], 2);
    let v = json(&[
        "jmodel",
        "--name",
        "sl2-j0",
        "--fiber",
        "1",
        "--closure-test",
        "50",
    ]);
    assert_eq!(v["fiber"]["dimension"], 4);
    assert_eq!(v["closure"]["passed"], 50);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec![
            "jmodel",
            "--name",
            "bdd-sp6",
            "--closure-test",
            "20",
            "--json",
        ],
        vec![
            "idempotents",
            "--group",
            "Z2xZ2",
            "--action",
            "[[1,0,3,2],[2,3,0,1]]",
            "--json",
        ],
    ] {
        assert_eq!(stdout(&jring(&args)), stdout(&jring(&args)));
    }
}
