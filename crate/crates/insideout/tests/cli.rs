use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_insideout");

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write_record(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut full = args.to_vec();
    let p = path.to_str().unwrap();
    full.extend(["-o", p]);
    let out = run(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn regular_hexagon_verifies_with_three_pieces() {
    let dir = tempfile::tempdir().unwrap();
    let rec = write_record(dir.path(), "hex.json", &["dissect", "regular", "--n", "6"]);
    let out = run(&["verify", rec.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["pass"], true);
    assert_eq!(report["piece_count"], 3);
    assert_eq!(report["diagnostics"].as_array().unwrap().len(), 0);
}

#[test]
fn generic_triangle_has_seven_pieces() {
    let out = run(&["dissect", "generic", "--input", data("right.json").to_str().unwrap()]);
    assert!(out.status.success());
    let rec = json(&out);
    assert_eq!(rec["mode"], "exact");
    assert_eq!(rec["pieces"].as_array().unwrap().len(), 7);
}

#[test]
fn tetrahedron_census() {
    let dir = tempfile::tempdir().unwrap();
    let rec = write_record(dir.path(), "tet.json", &["dissect", "tet"]);
    let out = run(&["census", rec.to_str().unwrap()]);
    assert!(out.status.success());
    let expected = serde_json::json!({
        "tet": { "3": 4, "2": 12, "1": 4, "0": 4 },
        "oct": { "3": 4, "2": 6 }
    });
    assert_eq!(json(&out), expected);
}

#[test]
fn corrupted_record_fails_with_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    let rec = write_record(dir.path(), "sq.json", &["dissect", "generic", "--input", data("square.json").to_str().unwrap()]);
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&rec).unwrap()).unwrap();
    // Shift one piece's translation; the moved pieces no longer tile.
    v["pieces"][2]["motion"]["translation"][0] = Value::from("1/3");
    std::fs::write(&rec, serde_json::to_string_pretty(&v).unwrap()).unwrap();

    let out = run(&["verify", rec.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    assert_eq!(report["pass"], false);
    assert_eq!(report["conditions"]["rearranged_partition"], false);
    let diags = report["diagnostics"].as_array().unwrap();
    assert!(!diags.is_empty());
    assert!(diags.iter().all(|d| d["violation"].is_string()));
}

#[test]
fn bad_inputs_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "{ not json").unwrap();
    let missing = dir.path().join("absent.json");
    let zero = dir.path().join("zero.json");
    std::fs::write(&zero, r#"[[0,0],[1,0],[0,"2/0"]]"#).unwrap();

    for args in [
        vec!["verify", junk.to_str().unwrap()],
        vec!["verify", missing.to_str().unwrap()],
        vec!["dissect", "generic", "--input", zero.to_str().unwrap()],
        vec!["dissect", "regular", "--n", "2"],
        vec!["render", junk.to_str().unwrap(), "--svg", "x.svg"],
        vec!["frobnicate"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn render_writes_svg_and_off() {
    let dir = tempfile::tempdir().unwrap();
    let hex = write_record(dir.path(), "hex.json", &["dissect", "regular", "--n", "6"]);
    let svg = dir.path().join("hex.svg");
    let out = run(&["render", hex.to_str().unwrap(), "--svg", svg.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<polygon").count(), 6);

    let tet = write_record(dir.path(), "tet.json", &["dissect", "tet"]);
    let off = dir.path().join("tet.off");
    let out = run(&["render", tet.to_str().unwrap(), "--off", off.to_str().unwrap(), "--explode", "1.2"]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&off).unwrap();
    assert_eq!(text.lines().nth(1), Some("156 176 0"));

    // A planar record cannot become a mesh.
    let out = run(&["render", hex.to_str().unwrap(), "--off", off.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn explicit_vertices_choose_mode() {
    let dir = tempfile::tempdir().unwrap();
    let exact = dir.path().join("exact.json");
    std::fs::write(&exact, r#"[[0,0,0],[2,2,0],[2,0,2],[0,2,2]]"#).unwrap();
    let float = dir.path().join("float.json");
    std::fs::write(&float, r#"[[0.5,0,0],[2.5,2,0],[2.5,0,2],[0.5,2,2]]"#).unwrap();

    let out = run(&["dissect", "tet", "--vertices", exact.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(json(&out)["mode"], "exact");
    let out = run(&["dissect", "tet", "--vertices", float.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["mode"], "approx");
}
