use std::fs;
use std::process::{Command, Output};

fn farey(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_farey"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn word_golden() {
    let o = farey(&["word", "--slope", "3/8"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "yXYxYXyxYxyXyxYX\n");
    let o = farey(&["word", "--slope", "11/12", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["word"], "yxyxyxyxyxyxYXYXYXYXYXYX");
    assert_eq!(v["length"], 24);
}

#[test]
fn poly_golden() {
    let o = farey(&["poly", "--slope", "2/3", "--ring", "parabolic"]);
    assert_eq!(
        stdout(&o),
        "{\"slope\":\"2/3\",\"ring\":\"parabolic\",\"coeffs\":[2,-1,-2,-1]}\n"
    );
    let o = farey(&["homog", "--slope", "1/4"]);
    assert_eq!(
        stdout(&o),
        "{\"slope\":\"1/4\",\"ring\":\"homogeneous\",\"coeffs\":[-14,24,-4,-4,1]}\n"
    );
    let o = farey(&[
        "poly", "--slope", "1/2", "--ring", "numeric", "--a", "3", "--b", "inf",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("\"params\":{\"a\":\"3\",\"b\":\"inf\"}"));
}

#[test]
fn poly_json_round_trip() {
    for ring in ["parabolic", "generic"] {
        let text = stdout(&farey(&["poly", "--slope", "5/8", "--ring", ring]));
        let rec = farey_poly::format::from_json(text.trim_end()).unwrap();
        assert_eq!(farey_poly::format::to_json(&rec) + "\n", text);
    }
}

#[test]
fn closed_form_reports_method() {
    let v: serde_json::Value =
        serde_json::from_slice(&farey(&["closed-form", "--q", "7", "--z", "1,0"]).stdout).unwrap();
    assert_eq!(v["method"], "closed");
    let poly: serde_json::Value =
        serde_json::from_slice(&farey(&["poly", "--slope", "1/7"]).stdout).unwrap();
    let at_one: f64 = poly["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_f64().unwrap())
        .sum();
    assert!((v["value"][0].as_f64().unwrap() - at_one).abs() < 1e-9 * at_one.abs().max(1.0));
    let v: serde_json::Value =
        serde_json::from_slice(&farey(&["closed-form", "--q", "3", "--z", "0"]).stdout).unwrap();
    assert_eq!(v["method"], "recurrence-fallback");
}

#[test]
fn verify_and_dynsys() {
    let o = farey(&["verify", "--qmax", "8"]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("23 slopes, 0 mismatches\n"));
    let o = farey(&["dynsys"]);
    assert!(o.status.success());
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn slice_files() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("cloud.csv");
    let svg = dir.path().join("cloud.svg");
    let o = farey(&["slice", "--qmax", "12", "--out", csv.to_str().unwrap()]);
    assert!(o.status.success());
    let text = fs::read_to_string(&csv).unwrap();
    let rows = farey_poly::format::rows_from_csv(&text).unwrap();
    assert_eq!(text.lines().next(), Some("re,im,p,q,residual"));
    let expected: u64 = farey_poly::slope::enumerate_farey(12)
        .iter()
        .map(|s| s.q())
        .sum();
    assert_eq!(rows.len() as u64, expected);
    assert!(farey(&[
        "slice",
        "--qmax",
        "6",
        "--format",
        "svg",
        "--out",
        svg.to_str().unwrap()
    ])
    .status
    .success());
    let svg = fs::read_to_string(&svg).unwrap();
    assert!(svg.contains("viewBox=\"0 0 1 1\"") && svg.contains("<circle"));
}

#[test]
fn cusp_path_json() {
    let o = farey(&[
        "cusp-path",
        "--cf",
        "0,1,2",
        "--periodic",
        "1",
        "--depth",
        "4",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let slopes: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["slope"].as_str().unwrap())
        .collect();
    assert_eq!(slopes, ["1/1", "2/3", "5/7", "12/17"]);
    assert!(v[0]["extremal_heuristic"].is_array());
}

#[test]
fn conjecture_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let tree = dir.path().join("tree.svg");
    let o = farey(&[
        "conjecture",
        "--qmax",
        "12",
        "--strict",
        "--out",
        report.to_str().unwrap(),
        "--svg",
        tree.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
    assert_eq!(v["rules"]["z_corrected"]["neither"], 0);
    assert_eq!(v["points"]["5/8"]["z_corrected"], "minus");
    assert!(fs::read_to_string(tree).unwrap().contains("fill=\"red\""));
}

#[test]
fn bench_counts() {
    let o = farey(&["bench", "--kind", "left", "--size", "20"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("oracle: 312 polynomial multiplications"));
}

#[test]
fn exit_codes() {
    assert_eq!(farey(&["--help"]).status.code(), Some(0));
    assert_eq!(farey(&["word", "--slope", "2/4"]).status.code(), Some(1));
    assert_eq!(farey(&["word"]).status.code(), Some(1));
    assert_eq!(
        farey(&["slice", "--qmax", "3", "--ring", "generic"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(farey(&["cusp-path", "--cf", "0,x"]).status.code(), Some(1));
    assert_eq!(
        farey(&["bench", "--kind", "left", "--size", "0"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        farey(&["slice", "--qmax", "3", "--tol", "0"]).status.code(),
        Some(2)
    );
}
