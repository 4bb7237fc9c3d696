use std::path::PathBuf;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_renyi-bounds"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn hull_output_is_byte_stable() {
    let args = ["hull", "--alpha", "0.6", "--m", "3", "--points", "101"];
    let a = bin(&args);
    let b = bin(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn sweep_output_is_byte_stable() {
    let args = ["sweep", "--family", "example2", "--alpha", "2", "--param-grid", "0:1:5"];
    let a = bin(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, bin(&args).stdout);
}

#[test]
fn state_then_bounds_round_trip() {
    let path = scratch("werner.json");
    let p = path.to_str().unwrap();
    let out = bin(&["state", "--family", "werner", "--d", "3", "--f", "-0.5", "--out", p]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = bin(&["bounds", "--state", p, "--alpha", "3", "--method", "paper"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let value = |key: &str| -> f64 {
        let line = text
            .lines()
            .find(|l| l.starts_with(&format!("{key},")))
            .unwrap_or_else(|| panic!("no {key} in\n{text}"));
        line.split(',').nth(1).unwrap().parse().unwrap()
    };
    let (lo, up) = (value("e_low"), value("e_up"));
    assert!(0.0 <= lo && lo <= up && up <= 3f64.log2() + 1e-12, "{lo} {up}");
}

#[test]
fn invalid_state_exits_3() {
    let path = scratch("bad_trace.json");
    std::fs::write(
        &path,
        r#"{"dims":[2,2],"matrix_re":[[2,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]}"#,
    )
    .unwrap();
    let out = bin(&["bounds", "--state", path.to_str().unwrap(), "--alpha", "2"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn input_errors_exit_2() {
    let path = scratch("garbage.json");
    std::fs::write(&path, "not json").unwrap();
    assert_eq!(bin(&["bounds", "--state", path.to_str().unwrap(), "--alpha", "2"]).status.code(), Some(2));
    assert_eq!(bin(&["hull", "--alpha", "2", "--m", "3", "--grid", "10"]).status.code(), Some(2));
    assert_eq!(bin(&["hull", "--alpha", "2"]).status.code(), Some(2));
}

#[test]
fn coarse_grid_exits_4() {
    let out = bin(&["hull", "--alpha", "3", "--m", "40", "--grid", "1000", "--points", "3"]);
    assert_eq!(out.status.code(), Some(4), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn quick_verify_passes() {
    let out = bin(&["verify", "--suite", "quick"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(!text.lines().any(|l| l.starts_with("FAIL")), "{text}");
}

#[test]
fn tightened_tolerance_fails_verify() {
    let out = bin(&["verify", "--suite", "quick", "--tol-psd", "1e-20"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(1), "{text}");
    assert!(text.lines().any(|l| l.starts_with("FAIL factory-states-validate")), "{text}");
}
