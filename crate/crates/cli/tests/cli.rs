use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn group(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../groups").join(name);
    p.to_string_lossy().into_owned()
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

/// Runs the binary and returns (exit code, parsed stdout, stderr).
fn grpart(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_grpart")).args(args).output().expect("binary runs");
    let stdout = String::from_utf8_lossy(&out.stdout);
    let json = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), json, String::from_utf8_lossy(&out.stderr).into_owned())
}

#[test]
fn classify_evens_large() {
    let (code, v, _) = grpart(&["classify", "--group", &group("z.json"), "--set", "evens", "--prop", "large", "--F", "0,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"]["status"], "holds");
    assert_eq!(v["property"], "large");
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn classify_lambda_a_large_in_f2() {
    let (code, v, _) = grpart(&[
        "classify", "--group", &group("f2.json"), "--set", "lambda=a", "--prop", "large", "--F", "e,a", "--radius", "6",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["window"]["radius"], 6);
}

#[test]
fn classify_empty_set_thin() {
    let (code, v, _) = grpart(&["classify", "--set", "explicit[]", "--prop", "thin"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"]["status"], "holds");
}

#[test]
fn classify_failure_exits_one() {
    let (code, v, _) = grpart(&["classify", "--set", "evens", "--prop", "large", "--F", "0", "--radius", "50"]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"]["status"], "fails");
}

#[test]
fn classify_derivation_of_evens() {
    let (code, v, _) = grpart(&[
        "classify", "--set", "evens", "--prop", "derivation", "--radius", "1000", "--margin", "0", "--threshold", "10",
    ]);
    assert_eq!(code, 0);
    let d = v["extra"]["derivation"].as_array().unwrap();
    assert!(d.iter().all(|x| x.as_str().unwrap().parse::<i64>().unwrap() % 2 == 0));
    assert_eq!(d.len(), 1001);
}

#[test]
fn parse_error_reports_position() {
    let (code, _, err) = grpart(&["classify", "--set", "evens union", "--prop", "thin"]);
    assert_eq!(code, 3);
    assert!(err.contains("position 11"), "{err}");
}

#[test]
fn unknown_property_is_an_error() {
    let (code, _, _) = grpart(&["classify", "--set", "evens", "--prop", "huge"]);
    assert_eq!(code, 3);
}

#[test]
fn margin_must_be_below_radius() {
    let (code, _, err) = grpart(&["classify", "--set", "evens", "--prop", "thin", "--radius", "5", "--margin", "5"]);
    assert_eq!(code, 3);
    assert!(err.contains("margin"), "{err}");
}

#[test]
fn free_3large_two_cells_and_reserved() {
    let (code, v, _) = grpart(&["partition", "--method", "free-3large", "--group", &group("f2.json"), "--radius", "6"]);
    assert_eq!(code, 0);
    let labels: Vec<&str> = v["cells"].as_array().unwrap().iter().map(|c| c["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["letter:0", "letter:1", "reserved"]);
    assert_eq!(v["status"], "holds");
}

#[test]
fn three_sets_from_map_file() {
    let path = tmp("map.txt");
    std::fs::write(&path, "1 2\n2 3\n3 1\n4 4\n5 1\n").unwrap();
    let (code, v, _) = grpart(&["partition", "--method", "three-sets", "--map", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let cells = v["cells"].as_array().unwrap();
    assert!(cells.len() <= 4);
    assert_eq!(cells[0]["elements"], serde_json::json!(["4"]));
    // the 3-cycle rules out three classes
    let (code, _, err) = grpart(&["partition", "--method", "three-sets", "--cells", "3", "--map", path.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert!(err.contains("odd cycle"), "{err}");
}

#[test]
fn thick_three_cells_on_z() {
    let (code, v, _) = grpart(&["partition", "--method", "thick", "--cells", "3", "--group", &group("z.json")]);
    assert_eq!(code, 0);
    let cells = v["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 3);
    assert!(cells.iter().all(|c| c["certificates"][0]["verdict"]["status"] == "holds"));
}

#[test]
fn method_needs_matching_group() {
    let (code, _, err) = grpart(&["partition", "--method", "free-3large", "--group", &group("z.json"), "--radius", "5"]);
    assert_eq!(code, 3);
    assert!(err.contains("free group"), "{err}");
}

#[test]
fn m_thin_rejects_evens() {
    let (code, v, _) = grpart(&["partition", "--method", "m-thin", "--set", "evens", "--radius", "200"]);
    assert_eq!(code, 1);
    assert_eq!(v["failure"]["reason"], "not m-thin");
}

fn round_trip(args: &[&str], file: &str) {
    let out = tmp(file);
    let mut full = args.to_vec();
    full.extend(["--out", out.to_str().unwrap()]);
    let (code, _, err) = grpart(&full);
    assert_eq!(code, 0, "{err}");
    let (code, v, err) = grpart(&["verify", "--partition", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(v["mismatches"], 0);
    for c in v["cells"].as_array().unwrap() {
        for cert in c["certificates"].as_array().unwrap() {
            assert_eq!(cert["agrees"], true);
        }
    }
}

#[test]
fn partitions_round_trip() {
    round_trip(&["partition", "--method", "free-3large", "--group", &group("f2.json"), "--radius", "5"], "f3.json");
    round_trip(&["partition", "--method", "free-4large", "--group", &group("f4.json"), "--radius", "3"], "f4.json");
    round_trip(&["partition", "--method", "thick", "--radius", "500"], "thick.json");
    round_trip(&["partition", "--method", "grasshopper-large", "--cells", "3", "--radius", "300"], "gl.json");
    round_trip(&["partition", "--method", "three-sets", "--element", "2", "--radius", "40"], "ts.json");
    round_trip(
        &["partition", "--method", "filtration-small", "--group", &group("sum-z2.json"), "--size", "256", "--core", "256"],
        "fs.json",
    );
    round_trip(&["partition", "--method", "scattered", "--group", &group("sum-z2.json"), "--size", "64"], "sc.json");
    round_trip(&["partition", "--method", "free-bipartition", "--group", &group("f2.json"), "--radius", "5"], "fb.json");
    round_trip(&["partition", "--method", "m-thin", "--set", "powers(2)", "--radius", "600"], "mt.json");
}

#[test]
fn tampered_partition_is_rejected() {
    let out = tmp("tampered.json");
    let (code, _, _) =
        grpart(&["partition", "--method", "thick", "--radius", "200", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    // move one element from cell 1 to cell 0: the cells then overlap
    let x = v["cells"][1]["elements"][0].clone();
    v["cells"][0]["elements"].as_array_mut().unwrap().push(x);
    std::fs::write(&out, v.to_string()).unwrap();
    let (code, _, err) = grpart(&["verify", "--partition", out.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert!(err.contains("overlap"), "{err}");
}

#[test]
fn verify_with_tiny_cap_is_inconclusive() {
    let (code, v, _) = grpart(&["verify", "--element-cap", "10", "--criteria", "1,6,9"]);
    assert_eq!(code, 2);
    let statuses: Vec<&str> = v["criteria"].as_array().unwrap().iter().map(|c| c["status"].as_str().unwrap()).collect();
    assert_eq!(statuses, ["inconclusive", "inconclusive", "holds"]);
    assert_eq!(v["element_cap"], 10);
}

#[test]
fn verify_unknown_group_file() {
    let (code, _, err) = grpart(&["verify", "--group", "/nonexistent/group.json"]);
    assert_eq!(code, 3);
    assert!(err.contains("descriptor"), "{err}");
}

#[test]
fn sample_groups_load() {
    for name in ["z.json", "f2.json", "f4.json", "sum-z2.json", "sum-z3.json", "z6.json", "s3.json"] {
        let (code, _, err) = grpart(&["classify", "--group", &group(name), "--set", "explicit[]", "--prop", "thin", "--radius", "2"]);
        assert_eq!(code, 0, "{name}: {err}");
    }
}

#[test]
fn seed_is_recorded() {
    let (_, v, _) = grpart(&["classify", "--set", "evens", "--prop", "thin", "--radius", "20", "--seed", "7"]);
    assert_eq!(v["seed"], 7);
}
