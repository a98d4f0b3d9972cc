use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abelian-cs"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn assert_golden(args: &[&str], name: &str) {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden(name), "{name}");
}

#[test]
fn surface_info_matches_golden() {
    assert_golden(&["surface", "info", "T2"], "surface_info_t2.json");
    assert_golden(&["surface", "info", "cylinder"], "surface_info_cylinder.json");
}

#[test]
fn orbit_matches_golden() {
    assert_golden(&["action", "orbit", "--vector", "1,1"], "action_orbit_1_1.json");
    assert_golden(&["action", "orbit", "--vector", "4,6"], "action_orbit_4_6.json");
}

#[test]
fn certify_matches_golden() {
    assert_golden(&["nogo", "certify", "--hbar", "1.0"], "nogo_certify_hbar_1.json");
}

#[test]
fn sweep_matches_golden() {
    assert_golden(
        &["nogo", "sweep", "--from", "0.5", "--to", "1.5", "--steps", "3"],
        "nogo_sweep.jsonl",
    );
}

#[test]
fn gram_and_product_match_golden() {
    assert_golden(
        &["state", "gram", "--hbar", "1", "--surface", "T2", "--state", "allones", "--witness", "0,0;1,1;0,1"],
        "state_gram_allones.json",
    );
    assert_golden(
        &["weyl", "mul", "--hbar", "1", "--surface", "T2", "(1,0)*W[1,1] + (0,-1)*W[0,1]", "W[1,0]"],
        "weyl_mul.txt",
    );
}

#[test]
fn certify_exit_codes() {
    assert_eq!(run(&["nogo", "certify", "--hbar", "1.0"]).status.code(), Some(0));
    let two_pi = std::f64::consts::TAU.to_string();
    assert_eq!(
        run(&["nogo", "certify", "--hbar", &two_pi, "--boundary-override"]).status.code(),
        Some(2)
    );
    let refused = run(&["nogo", "certify", "--hbar", &two_pi]);
    assert_eq!(refused.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&refused.stderr).contains("2πZ"));
}

#[test]
fn certify_writes_to_out() {
    let dir = std::env::temp_dir().join(format!("abelian-cs-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cert.json");
    let out = run(&["nogo", "certify", "--hbar", "1.0", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), golden("nogo_certify_hbar_1.json"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn search_witness_reports_candidates() {
    let out = run(&["nogo", "certify", "--hbar", "1.0", "--search-witness"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["search"]["candidates"], 2300);
    assert_eq!(doc["search"]["radius"], 2);
    assert_eq!(doc["conclusion"], "NO_NATURAL_STATE");
}

#[test]
fn errors_exit_with_one() {
    let bad = [
        vec!["surface", "info", "klein"],
        vec!["weyl", "mul", "--hbar", "1", "--surface", "T2", "W[1,x]", "W[0,0]"],
        vec!["weyl", "mul", "--hbar", "1", "--surface", "T2", "W[1]", "W[0,0]"],
        vec!["state", "gram", "--hbar", "1", "--surface", "T2", "--state", "gaussian:-1,0;0,1", "--witness", "0,0"],
        vec!["state", "gram", "--hbar", "1", "--surface", "T2", "--state", "thermal", "--witness", "0,0"],
        vec!["action", "orbit", "--vector", "1,2,3"],
    ];
    for args in bad {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"), "{args:?}");
    }
}

#[test]
fn parse_errors_carry_a_position() {
    let out = run(&["weyl", "mul", "--hbar", "1", "--surface", "T2", "(1,0)*W[1,x]", "W[0,0]"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 10"));
}

#[test]
fn tolerance_flags_are_honoured() {
    // The smallest eigenvalue at hbar = 1 is about -0.51.
    let loose = run(&["nogo", "certify", "--hbar", "1.0", "--psd-tol", "0.6"]);
    assert_eq!(loose.status.code(), Some(2));
    let tight = run(&["nogo", "certify", "--hbar", "1.0", "--psd-tol", "0.5"]);
    assert_eq!(tight.status.code(), Some(0));
}
