use std::process::{Command, Output};

fn weylrank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weylrank")).args(args).output().expect("spawn weylrank")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn roots_lists_positive_roots() {
    let out = weylrank(&["roots", "A2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.lines().count() > 3);
    assert!(text.contains("weyl_order\t6"), "{text}");
}

#[test]
fn structured_output_is_json() {
    let out = weylrank(&["--format", "structured", "bredon", "--complex", "bundled:circle"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v.is_object());
}

#[test]
fn unknown_datum_is_validation_failure() {
    let out = weylrank(&["roots", "Z9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn bad_family_is_validation_failure() {
    for family in ["{0};{7}", "{0", "nonsense", "{0};{0}"] {
        let out = weylrank(&["steinberg", "A2", "--family", family]);
        assert_eq!(out.status.code(), Some(2), "family {family}");
    }
}

#[test]
fn cip_failure_for_steinberg_is_rejected_but_cosets_reports_it() {
    assert_eq!(weylrank(&["steinberg", "A2", "--family", "{0};{1}"]).status.code(), Some(2));
    let out = weylrank(&["cosets", "A2", "--family", "{0};{1}"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("cip\tfalse"));
}

#[test]
fn missing_complex_file_is_validation_failure() {
    let out = weylrank(&["bredon", "--complex", "/nonexistent/complex.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(weylrank(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(weylrank(&["--help"]).status.code(), Some(0));
}

#[test]
fn torus_probe_reports_two_torsion() {
    let out = weylrank(&["bredon", "--complex", "bundled:torus", "--probe", "1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("probe\t1\t2\tZ+Z/2"), "{}", stdout(&out));
}

#[test]
fn same_seed_same_bytes() {
    let args = ["--seed", "7", "bredon", "--complex", "bundled:torus", "--system", "zw"];
    assert_eq!(weylrank(&args).stdout, weylrank(&args).stdout);
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.tsv");
    let out = weylrank(&["--output", path.to_str().unwrap(), "ktheory", "--betti", "1,2,1"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written.as_bytes(), &weylrank(&["ktheory", "--betti", "1,2,1"]).stdout[..]);
}

#[test]
fn manifest_hashes_input_files() {
    let dir = tempfile::tempdir().unwrap();
    let arr = dir.path().join("arr.txt");
    std::fs::write(&arr, "1,0\n0,1\n").unwrap();
    let manifest = dir.path().join("m.json");
    let out = weylrank(&["--emit-manifest", manifest.to_str().unwrap(), "ktheory", "--arrangement", arr.to_str().unwrap()]);
    assert!(out.status.success());
    let m: weylrank::cli::RunManifest = serde_json::from_str(&std::fs::read_to_string(&manifest).unwrap()).unwrap();
    assert_eq!(m.inputs.len(), 1);
    assert_eq!(m.inputs[0].sha256.len(), 64);
}
