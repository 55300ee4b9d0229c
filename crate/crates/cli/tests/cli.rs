use algebroid_lab::fixture::{bundled_names, bundled_source};
use algebroid_lab::report::{Report, Status};
use std::path::PathBuf;
use std::process::{Command, Output};

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_algebroid-lab")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Report, i32) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let out = lab(&a);
    let r: Report = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout))
    });
    (r, out.status.code().unwrap())
}

fn temp_fixture(name: &str, body: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("algebroid-lab-{}-{name}.json", std::process::id()));
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn duality_on_standard_r3() {
    let (r, code) = json(&["duality", "r3_standard", "--max-stratum", "4"]);
    assert_eq!(code, 0);
    let dims = r.entry("duality_dimensions").unwrap();
    assert_eq!(dims.status, Status::Pass);
    #[derive(serde::Deserialize)]
    struct Row {
        degree: usize,
        nambu_cohomology: usize,
        canonical_homology: usize,
    }
    let rows: Vec<Row> = serde_json::from_value(dims.data.clone().unwrap()).unwrap();
    let mut h = [0; 4];
    let mut c = [0; 4];
    for row in rows {
        h[row.degree] += row.nambu_cohomology;
        c[3 - row.degree] += row.canonical_homology;
    }
    assert_eq!(h, [1, 0, 0, 0]);
    assert_eq!(c, [0, 0, 0, 1]);
}

#[test]
fn nambu_on_r5_fails_with_a_witness() {
    let (r, code) = json(&["nambu", "r5_nondecomposable"]);
    assert_eq!(code, 1);
    let e = r.entry("nambu_condition").unwrap();
    assert_eq!(e.status, Status::Fail);
    assert!(!e.witnesses.is_empty());
    for e in &r.entries {
        if e.status == Status::Fail {
            assert!(!e.witnesses.is_empty(), "{}", e.name);
        }
    }
}

#[test]
fn nullity_on_exp_twist_finds_x1() {
    let (r, code) = json(&["nullity", "r3_exp_twist", "--degree-bound", "2"]);
    assert_eq!(code, 0);
    let e = r.entry("nullity").unwrap();
    assert_eq!(e.status, Status::Pass);
    assert_eq!(e.data.as_ref().unwrap()["potential"], "x1");
    assert_eq!(e.data.as_ref().unwrap()["pi1_identity"], true);
}

#[test]
fn nullity_reports_the_bound_when_nothing_is_found() {
    let (r, code) = json(&["nullity", "r3_x1_scaled", "--degree-bound", "2"]);
    assert_eq!(code, 0);
    let e = r.entry("nullity").unwrap();
    assert_eq!(e.status, Status::Info);
    assert_eq!(e.data.as_ref().unwrap()["status"], "not_found_within_bound");
}

#[test]
fn exit_codes() {
    assert_eq!(lab(&["axioms", "r3_standard"]).status.code(), Some(0));
    assert_eq!(lab(&["leibniz", "r5_nondecomposable", "--samples", "basis"]).status.code(), Some(0));
    assert_eq!(lab(&["nambu", "r5_nondecomposable"]).status.code(), Some(1));
    assert_eq!(lab(&["nambu", "no_such_fixture"]).status.code(), Some(2));
    assert_eq!(lab(&["frobnicate", "r3_standard"]).status.code(), Some(2));
    assert_eq!(lab(&["nambu", "r3_standard", "--samples", "cubic"]).status.code(), Some(2));
}

#[test]
fn validation_errors_exit_2_with_a_location() {
    let bad = bundled_source("r4_pi123").unwrap().replace("[1, 2, 3]", "[1, 2, 5]");
    let p = temp_fixture("badpi", &bad);
    let out = lab(&["nambu", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nambu.pi"));

    let p = temp_fixture("syntax", "{\n  \"name\": \"x\",\n  \"ring\": [\n}");
    let out = lab(&["nambu", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains(":4:"), "{}", String::from_utf8_lossy(&out.stderr));

    let antisym = bundled_source("so3_point")
        .unwrap()
        .replace("[1, 2, 3, \"1\"],", "[1, 2, 3, \"1\"], [2, 1, 3, \"2\"],");
    let p = temp_fixture("antisym", &antisym);
    assert_eq!(lab(&["axioms", p.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn reports_round_trip_and_are_deterministic() {
    for name in bundled_names() {
        for cmd in ["nambu", "modular", "cohomology"] {
            let a = lab(&[cmd, name, "--format", "json", "--samples", "basis"]);
            let b = lab(&[cmd, name, "--format", "json", "--samples", "basis"]);
            assert_eq!(a.stdout, b.stdout, "{cmd} {name}");
            let text = String::from_utf8(a.stdout).unwrap();
            let r: Report = serde_json::from_str(&text).unwrap();
            assert_eq!(r.to_json() + "\n", text, "{cmd} {name}");
        }
    }
}

#[test]
fn all_aggregates_the_individual_commands() {
    let (all, _) = json(&["all", "r3_exp_twist"]);
    let mut parts = Vec::new();
    for cmd in ["axioms", "nambu", "leibniz", "modular", "nullity", "cohomology", "homology", "duality"] {
        parts.extend(json(&[cmd, "r3_exp_twist"]).0.entries);
    }
    assert_eq!(all.entries, parts);
}

#[test]
fn text_output_lists_every_entry() {
    let out = lab(&["modular", "r3_exp_twist"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[INFO] modular_multisection"));
    assert!(text.contains("[PASS] cocycle"));
    assert!(text.lines().last().unwrap().contains("0 failed"));
}
