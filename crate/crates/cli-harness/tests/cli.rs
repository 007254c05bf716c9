use std::process::Command;

fn verify(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_verify"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn passing_suite_exits_zero_with_json() {
    let (code, stdout, stderr) = verify(&["--suite", "spectral-triple"]);
    assert_eq!(code, 0, "{stderr}");
    let report = cli_harness::VerificationReport::from_json(&stdout).unwrap();
    assert!(report.all_passed());
    assert!(stderr.contains("0 failed"));
}

#[test]
fn failures_exit_one_and_name_their_digest() {
    let (code, _, stderr) = verify(&[
        "--suite",
        "wzw",
        "--format",
        "text",
        "--set",
        "tol.wzw.car=-0",
    ]);
    assert_eq!(code, 1, "{stderr}");
    let line = stderr
        .lines()
        .find(|l| l.starts_with("FAIL wzw.car"))
        .unwrap();
    assert!(line.contains("digest "));
}

#[test]
fn refusals_exit_two() {
    let (code, stdout, stderr) = verify(&[
        "--suite",
        "cocycles",
        "--k",
        "13",
        "--p",
        "1",
        "--bandwidth",
        "2",
    ]);
    assert_eq!(code, 2);
    assert!(stdout.is_empty());
    assert!(stderr.contains("budget refused"), "{stderr}");

    assert_eq!(verify(&["--suite", "nothing"]).0, 2);
    assert_eq!(verify(&["--set", "novalue"]).0, 2);
    assert_eq!(verify(&["--scan", "Z", "--values", "1"]).0, 2);
}

#[test]
fn scan_writes_csv() {
    let dir = std::env::temp_dir().join(format!("verify-scan-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("scan.csv");
    let (code, _, stderr) = verify(&[
        "--scan",
        "N",
        "--values",
        "100,1000",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{stderr}");
    let csv = std::fs::read_to_string(&path).unwrap();
    assert_eq!(csv.lines().count(), 1 + 2 * 3);
    std::fs::remove_dir_all(&dir).unwrap();
}
