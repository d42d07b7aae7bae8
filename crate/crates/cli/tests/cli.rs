use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn artin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_artin")).args(args).current_dir(root()).output().unwrap()
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn find_quartic_reports_the_first_field() {
    let v = stdout_json(&artin(&["find-quartic", "--height", "4"]));
    assert_eq!(v[0]["coefficients"], serde_json::json!([-4, 0, -1, 1]));
    assert_eq!(v[0]["polynomial"], "x^4 - 4x^3 - x + 1");
}

#[test]
fn local_factor_lists_exact_coefficients() {
    let v = stdout_json(&artin(&["local-factor", "--curve", "21.A1", "--prime", "5"]));
    assert_eq!(v["coefficients"], serde_json::json!(["1", "2", "5"]));
}

#[test]
fn rankin_selberg_shows_the_elliptic_factor() {
    let v = stdout_json(&artin(&["rankin-selberg", "--curve", "63.A2", "--char", "chi4", "--class", "4a", "--prime", "5"]));
    assert_eq!(v["genus"], 3);
    assert!(v["factored"].as_str().unwrap().starts_with("(1 "), "{v}");
}

#[test]
fn theta_finds_three_chi5() {
    let v = stdout_json(&artin(&[
        "theta", "--group", "S4", "--dim", "9", "--left", "21.A1", "--right-rs", "63.A2:chi4", "--primes", "300",
        "--hom-constraint", "trivial:0",
    ]));
    let survivors = v["survivors"].as_array().unwrap();
    assert_eq!(survivors.len(), 1);
    assert_eq!(survivors[0]["decomposition"], "3*chi5");
}

#[test]
fn moments_prints_one_csv_row() {
    let out = artin(&["moments", "--coefficient", "1", "--order", "2", "--primes", "5000"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "coefficient,order,theoretical_num,theoretical_den,empirical,stderr,n_primes,pass");
    assert!(lines[1].starts_with("a1,2,1,1,"), "{}", lines[1]);
    assert_eq!(lines.len(), 2);
}

#[test]
fn ramified_prime_is_an_error() {
    let out = artin(&["frob-class", "--quartic", "-4,0,-1,1", "--prime", "17"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("17"));
}

#[test]
fn verify_paper_exit_codes() {
    let ok = artin(&["verify-paper", "--only", "2,8,13"]);
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stdout));
    let c1 = artin(&["verify-paper", "--only", "1"]);
    assert_eq!(c1.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&c1.stdout).contains("rerun: artin verify-paper"));
    let missing = artin(&["verify-paper", "--tables", "no/such/dir"]);
    assert_eq!(missing.status.code(), Some(2));
}
