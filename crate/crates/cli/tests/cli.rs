use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name]
        .iter()
        .collect()
}

fn biquot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_biquot"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn tor(file: &str, extra: &[&str]) -> Output {
    let path = data(file);
    let mut args = vec!["tor", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    biquot(&args)
}

#[test]
fn three_sphere_from_shipped_file() {
    let o = tor("su2_point_point.json", &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("Poincaré series: 1 + t^3\n"), "{out}");
    assert!(out.contains("ring: Λ(y3)\n"), "{out}");
    assert!(out.contains("bar/Koszul: agree"), "{out}");
}

#[test]
fn torus_quotient_warns_about_truncation() {
    let o = tor("su2_torus_torus.json", &[]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("ring: k[t1,t2]/(t1^2 - t2^2)\n"), "{out}");
    assert!(out.contains("+ O(t^17)"), "{out}");
    assert!(out.contains("warning:"), "{out}");
}

#[test]
fn trivial_group_gives_the_tensor_product() {
    let o = tor("trivial_group.json", &["--out", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["presentation"], "k[t1,t2]");
    assert_eq!(v["series"], serde_json::json!([1, 0, 2, 0, 3, 0, 4, 0, 5]));
}

#[test]
fn json_output_is_deterministic() {
    let a = tor("su3_point_torus.json", &["--out", "json"]);
    let b = tor("su3_point_torus.json", &["--out", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["verdict"]["agree"], true);
    assert_eq!(
        v["relations"],
        serde_json::json!(["t1^2 + t1*t2 + t2^2", "t2^3"])
    );
}

#[test]
fn prime_field_and_bound_flags() {
    let o = tor(
        "su2_point_circle.json",
        &["--field", "fp:3", "--degree-bound", "6"],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("field: F_3\ndegree bound: 6\n"), "{out}");
    assert!(out.contains("ring: k[t]/(t^2)"), "{out}");
}

#[test]
fn input_errors_exit_with_one() {
    let o = tor("missing.json", &[]);
    assert_eq!(o.status.code(), Some(1));
    let o = tor("su2_point_point.json", &["--field", "fp:4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not prime"));
    let o = tor("su2_point_point.json", &["--degree-bound", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let o = biquot(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
    let o = biquot(&["verify", "bar-d2", "--example", "nowhere"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("poly-x2"), "{}", stderr(&o));
}

#[test]
fn malformed_job_files_name_the_place() {
    let dir = std::env::temp_dir().join(format!("biquot-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad_json = dir.join("bad.json");
    std::fs::write(&bad_json, "{\n  \"field\": \"q\",\n  \"algebras\": [ }\n").unwrap();
    let o = biquot(&["tor", bad_json.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let bad_image = dir.join("image.json");
    let text = std::fs::read_to_string(data("su2_point_circle.json"))
        .unwrap()
        .replace("t^2", "t^^2");
    std::fs::write(&bad_image, text).unwrap();
    let o = biquot(&["tor", bad_image.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("maps[1].images.x"), "{}", stderr(&o));
}

#[test]
fn verify_examples() {
    let o = biquot(&["verify", "bar-d2", "--example", "poly-x2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = biquot(&[
        "verify",
        "--suite",
        "steenrod",
        "--i",
        "2",
        "--example",
        "dDelta4",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).matches("pass").count(), 1);
    let o = biquot(&[
        "verify",
        "hga-mc",
        "--example",
        "dDelta3",
        "--degree",
        "6",
        "--out",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["degree_bound"], 6);
}

#[test]
fn verify_over_a_prime_field() {
    let o = biquot(&[
        "verify",
        "steenrod",
        "--example",
        "dDelta3",
        "--field",
        "fp:3",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("over F_3"));
}

#[test]
fn cochains_of_shipped_sets() {
    let path = data("boundary_tetrahedron.json");
    let o = biquot(&["cochains", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("cohomology ranks: (1,0,1)\n"), "{out}");
    assert!(out.contains("pass  E is a twisting cochain"), "{out}");

    let path = data("point.json");
    let o = biquot(&["cochains", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("cohomology ranks: (1)\n"));

    let path = data("broken_faces.json");
    let o = biquot(&["cochains", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("simplex `t`"), "{}", stderr(&o));
}

#[test]
fn failing_identity_exits_with_two_and_shows_both_sides() {
    let o = biquot(&[
        "verify",
        "steenrod",
        "--example",
        "dDelta4-untwisted",
        "--i",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(
        out.contains("FAIL") && out.contains("lhs:") && out.contains("rhs:"),
        "{out}"
    );
    let err = stderr(&o);
    assert!(
        err.contains("fails at") && err.contains("lhs:") && err.contains("rhs:"),
        "{err}"
    );
}
