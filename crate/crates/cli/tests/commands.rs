use std::path::PathBuf;
use std::process::Command;

use concentra_cli::{run, Output};
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn cli(args: &[&str]) -> Output {
    run(args.iter().map(|s| s.to_string()))
}

/// The fenced JSON block at the end of a report.
fn block(out: &Output) -> Value {
    let start = out.stdout.find("```json\n").expect("json block") + 8;
    let end = out.stdout.rfind("```").unwrap();
    serde_json::from_str(&out.stdout[start..end]).unwrap()
}

#[test]
fn check_conc_on_the_first_structure() {
    let out = cli(&["check-conc", &fixture("e1.doc"), "--partition", "sim_a", "--max-n", "3"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("all axioms hold"));
    assert_eq!(block(&out)["axioms"]["existence_3"]["verdict"], "holds");
}

#[test]
fn monoid_prints_the_cyclic_table_of_order_four() {
    let out = cli(&["monoid", &fixture("e1.doc"), "--partition", "sim_a"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("isomorphic to Z4"));
    let b = block(&out);
    assert_eq!(b["monoid"]["table"].as_array().unwrap().len(), 4);
    assert_eq!(b["isomorphic_to"], serde_json::json!(["Z4"]));
}

#[test]
fn the_bridge_category_has_only_the_trivial_structure() {
    let out = cli(&["enumerate-conc", &fixture("e1m.doc")]);
    assert_eq!(out.code, 0);
    let b = block(&out);
    assert_eq!(b["count"], 1);
    assert_eq!(b["partitions"][0].as_array().unwrap().len(), 1);
}

#[test]
fn other_structures_give_the_expected_groups() {
    for (p, group) in [("sim_b", "Z2"), ("sim_c", "Z4"), ("sim_d", "Z2")] {
        let out = cli(&["monoid", &fixture("e1.doc"), "--partition", p]);
        assert_eq!(out.code, 0);
        assert!(block(&out)["isomorphic_to"].as_array().unwrap().contains(&Value::from(group)), "{p}");
    }
    let out = cli(&["monoid", &fixture("klein.doc"), "--partition", "color"]);
    assert_eq!(block(&out)["isomorphic_to"], serde_json::json!(["V4"]));
}

#[test]
fn failing_properties_exit_one_with_a_witness() {
    let out = cli(&["check-conc", &fixture("z3color.doc"), "--partition", "color", "--max-n", "3"]);
    assert_eq!(out.code, 1);
    let b = block(&out);
    assert_eq!(b["is_concentration"], true);
    assert_eq!(b["axioms"]["existence_3"]["witnesses"][0], serde_json::json!(["r_CE", "r_CE", "r_CE"]));

    let out = cli(&["pullback", &fixture("triangle.doc"), "--functor", "F", "--partition", "discrete"]);
    assert_eq!(out.code, 1);
    assert_eq!(block(&out)["witness"], serde_json::json!(["1", "1"]));

    let out = cli(&["check-conc", &fixture("e1.doc"), "--partition", "discrete"]);
    assert_eq!(out.code, 1);
    assert_eq!(block(&out)["axioms"]["associativity"]["verdict"], "not evaluated");

    let out = cli(&["monoid", &fixture("e1.doc"), "--partition", "discrete"]);
    assert_eq!(out.code, 1);

    let out = cli(&["iso", "--left", "Z4", "--right", "V4"]);
    assert_eq!(out.code, 1);
}

#[test]
fn pullback_along_a_2_lifting_functor() {
    let out = cli(&["pullback", &fixture("e1.doc"), "--functor", "parity", "--partition", "discrete_Z2"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let b = block(&out);
    assert_eq!(b["induced_hom_bijective"], true);
    let sim_b = block(&cli(&["monoid", &fixture("e1.doc"), "--partition", "sim_b"]));
    assert_eq!(b["classes"], sim_b["classes"]);
    let out = cli(&["pullback", &fixture("triangle.doc"), "--functor", "F", "--partition", "trivial"]);
    assert_eq!(out.code, 1);
}

#[test]
fn quotient_by_a_normal_subcategory() {
    let out = cli(&[
        "quotient",
        &fixture("e1.doc"),
        "--partition",
        "sim_a",
        "--objects",
        "C",
        "--morphisms",
        "0_C,1_C",
    ]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let b = block(&out);
    assert_eq!(b["normal"], true);
    assert_eq!(b["monoid"]["table"].as_array().unwrap().len(), 2);
}

#[test]
fn semidirect_output_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("sd.doc");
    let out_str = out_path.to_string_lossy().into_owned();
    let args = [
        "semidirect",
        &fixture("semidirect-s3.doc"),
        "--action",
        "inversion",
        "--fiber-partition",
        "discrete_Z3",
        "--base-partition",
        "discrete_Z2",
        "--output",
        &out_str,
    ];
    let out = cli(&args);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let b = block(&out);
    assert_eq!(b["isomorphic_to"], serde_json::json!(["S3"]));
    assert_eq!(cli(&["validate", &out_str]).code, 0);

    let check = cli(&["check-conc", &out_str, "--partition", "semidirect"]);
    assert_eq!(check.code, 0);
    let reloaded = cli(&["monoid", &out_str, "--partition", "semidirect"]);
    assert_eq!(block(&reloaded)["monoid"]["table"], b["monoid"]["table"]);
    assert_eq!(cli(&["iso", &out_str, "--left", "semidirect", "--right", "S3"]).code, 0);
}

#[test]
fn direct_limits() {
    let out = cli(&["dirlim", &fixture("dirlim-chain.doc"), "--diagram", "doubling", "--action", "trivial"]);
    assert_eq!(out.code, 0);
    assert_eq!(block(&out)["limit"]["table"].as_array().unwrap().len(), 4);
    let out = cli(&["dirlim", &fixture("dirlim-swap.doc"), "--diagram", "constant", "--action", "swap"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("(V4)"));
}

#[test]
fn adjunction_and_groupoid_models() {
    for p in ["sim_a", "sim_b", "trivial"] {
        assert_eq!(cli(&["adjunction", &fixture("e1.doc"), "--partition", p]).code, 0);
    }
    for g in ["Z2", "Z3", "Z4", "Z6", "V4", "S3"] {
        let out = cli(&["groupoid-model", &fixture("groups.doc"), "--group", g, "--objects", "3", "--cover"]);
        assert_eq!(out.code, 0, "{g}: {}", out.stdout);
    }
}

#[test]
fn reports_are_deterministic() {
    let runs = [
        vec!["enumerate-conc".to_string(), fixture("e1.doc"), "--category".into(), "E1".into()],
        vec!["check-conc".to_string(), fixture("klein.doc"), "--partition".into(), "color".into()],
        vec!["groupoid-model".to_string(), "--group".into(), "S3".into(), "--objects".into(), "4".into()],
    ];
    for args in runs {
        let a = run(args.clone());
        assert_eq!(a.code, 0, "{}", a.stderr);
        assert_eq!(a, run(args));
    }
}

#[test]
fn malformed_documents_exit_two_with_a_field_path() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(fixture("e1.doc")).unwrap();
    let mut value: Value = serde_json::from_str(&text).unwrap();

    let mut bad = value.clone();
    bad["categories"]["E1"]["composition"][3][2] = Value::from("nope");
    let path = dir.path().join("bad1.doc");
    std::fs::write(&path, bad.to_string()).unwrap();
    let out = cli(&["check-conc", path.to_str().unwrap(), "--partition", "sim_a"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("categories.E1.composition[3][2]"), "{}", out.stderr);

    let mut bad = value.clone();
    bad["categories"]["E1"]["objects"] = Value::from(5);
    let path = dir.path().join("bad2.doc");
    std::fs::write(&path, bad.to_string()).unwrap();
    let out = cli(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("categories.E1.objects"), "{}", out.stderr);

    let mut bad = value.clone();
    bad["partitions"]["sim_a"]["classes"][0][1] = Value::from("9_D");
    let path = dir.path().join("bad3.doc");
    std::fs::write(&path, bad.to_string()).unwrap();
    let out = cli(&["monoid", path.to_str().unwrap(), "--partition", "sim_a"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("partitions.sim_a.classes[0][1]"), "{}", out.stderr);

    value["format"] = Value::from(7);
    let path = dir.path().join("bad4.doc");
    std::fs::write(&path, value.to_string()).unwrap();
    let out = cli(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("format"));

    let out = cli(&["check-conc", &fixture("e1.doc")]);
    assert_eq!(out.code, 2);
    let out = cli(&["monoid", &fixture("e1.doc"), "--partition", "sim_z"]);
    assert_eq!(out.code, 2);
}

#[test]
fn validate_reports_broken_categories() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(fixture("e1.doc")).unwrap();
    let mut value: Value = serde_json::from_str(&text).unwrap();
    let comp = value["categories"]["E1"]["composition"].as_array_mut().unwrap();
    let entry = comp.iter_mut().find(|t| t[0] == "1_C" && t[1] == "1_C").unwrap();
    entry[2] = Value::from("1_D");
    let path = dir.path().join("broken.doc");
    std::fs::write(&path, value.to_string()).unwrap();
    let out = cli(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.code, 1, "{}", out.stdout);
    assert!(out.stdout.contains("1_C ∘ 1_C = 1_D has the wrong source or target"), "{}", out.stdout);
    let out = cli(&["check-conc", path.to_str().unwrap(), "--partition", "sim_a"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("not a category"));
}

#[test]
fn seed_controls_the_sampled_paths() {
    let bin = env!("CARGO_BIN_EXE_concentra");
    let go = |seed: &str| {
        let out = Command::new(bin)
            .args(["groupoid-model", "--group", "S3", "--objects", "4"])
            .env("CONCENTRA_SEED", seed)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        String::from_utf8(out.stdout).unwrap()
    };
    assert_eq!(go("7"), go("7"));
    let outputs: std::collections::BTreeSet<String> = (0..6).map(|s| go(&s.to_string())).collect();
    assert!(outputs.len() > 1);
    let bad = Command::new(bin)
        .args(["groupoid-model", "--group", "S3"])
        .env("CONCENTRA_SEED", "x")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    let bin = env!("CARGO_BIN_EXE_concentra");
    let out = Command::new(bin).arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}
