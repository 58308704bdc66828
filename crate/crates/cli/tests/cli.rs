use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn qsp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(args: &[&str]) -> i32 {
    qsp(args).status.code().unwrap()
}

/// Summary value `key` from the `# key=value` trailer of a CSV report.
fn summary(out: &str, key: &str) -> String {
    let prefix = format!("# {key}=");
    out.lines()
        .find_map(|l| l.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("no {key} in output"))
        .to_string()
}

fn csv_rows(out: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = out.lines().filter(|l| !l.starts_with('#'));
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(String::from).collect())
        .collect();
    (header, rows)
}

fn column(header: &[String], name: &str) -> usize {
    header.iter().position(|h| h == name).unwrap()
}

#[test]
fn residuals_exit_codes() {
    let o = qsp(&["residuals"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("# note: discrepancy: residual_12_printed"));
    assert_eq!(code(&["residuals", "--exponent", "1"]), 1);
    let bad = qsp(&["residuals", "--profile-F", "("]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("syntax error"));
    assert_eq!(code(&["residuals", "--profile-F", "q"]), 2);
}

#[test]
fn residuals_golden_point() {
    let out = stdout(&qsp(&[
        "residuals",
        "--r-range",
        "1:1:1",
        "--tau-range",
        "1:1:1",
    ]));
    let (header, rows) = csv_rows(&out);
    assert_eq!(
        header.join(","),
        "r,tau,residual_11,residual_12_printed,G01_generic,residual_13,residual_14,G22_generic,rho"
    );
    assert_eq!(rows.len(), 1);
    let get = |name: &str| rows[0][column(&header, name)].parse::<f64>().unwrap();
    assert!((get("residual_12_printed") - 1.0 / 9.0).abs() < 1e-10);
    assert!((get("residual_14") + 5.0 / 3.0).abs() < 1e-10);
    assert!(get("G01_generic").abs() < 1e-8);
    assert!((get("rho") - 1.0 / (6.0 * std::f64::consts::PI)).abs() < 1e-15);
}

#[test]
fn usage_errors() {
    assert_eq!(code(&["quantum", "--tau-range", "0:5:5"]), 2);
    assert_eq!(code(&["quantum", "--r-range", "1:5:0"]), 2);
    assert_eq!(code(&["residuals", "--tol", "0"]), 2);
    assert_eq!(code(&["residuals", "--output", "xml"]), 2);
    assert_eq!(code(&["residuals", "--c", "2"]), 2);
    assert_eq!(code(&["residuals", "--units", "imperial"]), 2);
    assert_eq!(code(&["bohr", "--n-max", "0"]), 2);
    assert_eq!(code(&["frw", "--profile-G", "1"]), 2);
    assert_eq!(code(&["nonsense"]), 2);
    assert_eq!(code(&["residuals", "--config", "/nonexistent/qsp.json"]), 2);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn quantum_defaults_pass_and_json_shape() {
    assert_eq!(code(&["quantum"]), 0);
    assert_eq!(code(&["quantum", "--V", "0.5"]), 1);
    let o = qsp(&["quantum", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 25);
    assert!(doc["summary"].is_object());
    for row in rows {
        let re = row["psi_P_re"].as_f64().unwrap();
        assert_eq!(row["psi_A_re"].as_f64().unwrap(), re);
        assert_eq!(
            row["psi_A_im"].as_f64().unwrap(),
            -row["psi_P_im"].as_f64().unwrap()
        );
    }
}

#[test]
fn explicit_units_keep_the_solution() {
    let args = [
        "quantum", "--units", "explicit", "--c", "3", "--G", "0.5", "--hbar", "0.25", "--m", "2",
    ];
    assert_eq!(code(&args), 0);
    let res = [
        "residuals",
        "--units",
        "explicit",
        "--c",
        "3",
        "--G",
        "0.5",
        "--m",
        "2",
        "--profile-F",
        "2*r^3",
    ];
    assert_eq!(code(&res), 0);
}

#[test]
fn frw_golden_rows() {
    let out = stdout(&qsp(&["frw"]));
    let (header, rows) = csv_rows(&out);
    let tau = column(&header, "tau");
    let row = rows.iter().find(|r| r[tau] == "3.0").unwrap();
    let get = |name: &str| row[column(&header, name)].parse::<f64>().unwrap();
    assert!((get("hubble_scale_factor") - 0.22222).abs() < 1e-5);
    assert!((get("hubble_paper_R") - 0.44444).abs() < 1e-5);
    assert!((get("hubble_paper_claim") - 0.33333).abs() < 1e-5);
    for r in &rows {
        assert!(
            r[column(&header, "transform_residual")]
                .parse::<f64>()
                .unwrap()
                < 1e-10
        );
        assert!(
            r[column(&header, "spatial_curvature")]
                .parse::<f64>()
                .unwrap()
                .abs()
                < 1e-10
        );
    }
}

#[test]
fn bohr_golden_levels() {
    let out = stdout(&qsp(&["bohr", "--n-max", "4"]));
    let (_, rows) = csv_rows(&out);
    assert_eq!(rows[0][..2], ["1", "-0.5"]);
    assert_eq!(rows[3][..2], ["4", "-0.03125"]);
}

#[test]
fn gedanken_outcomes() {
    let out = stdout(&qsp(&["gedanken", "atwood-corrected"]));
    assert_eq!(summary(&out, "outcome"), "perpetual");
    let o = qsp(&["gedanken", "atwood-original"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(summary(&stdout(&o), "outcome"), "halted(1)");
    let out = stdout(&qsp(&[
        "gedanken",
        "pair",
        "--pair-mass",
        "1",
        "--accel",
        "0.001",
        "--height",
        "1",
    ]));
    let (header, rows) = csv_rows(&out);
    assert_eq!(rows.last().unwrap()[column(&header, "kinetic")], "0.002");
    assert_eq!(code(&["gedanken", "atwood-corrected", "--accel", "0"]), 2);
}

#[test]
fn config_file_with_flag_override() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join("qsp-config-test.json");
    std::fs::write(
        &path,
        r#"{"profile-F": "2*r^3", "r-range": "1:2:2", "tau-range": "1:3:3", "exponent": 1.0}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let from_file = qsp(&["residuals", "--config", p]);
    assert_eq!(from_file.status.code(), Some(1));
    assert_eq!(summary(&stdout(&from_file), "profile_F"), "2*r^3");
    let overridden = qsp(&[
        "residuals",
        "--config",
        p,
        "--exponent",
        "1.3333333333333333",
    ]);
    assert_eq!(overridden.status.code(), Some(0));
    assert_eq!(csv_rows(&stdout(&overridden)).1.len(), 6);

    std::fs::write(&path, r#"{"profile-F": "r", "bogus": 3}"#).unwrap();
    assert_eq!(code(&["residuals", "--config", p]), 2);
}

#[test]
fn csv_and_json_carry_the_same_numbers() {
    for cmd in ["residuals", "quantum", "frw"] {
        let csv = stdout(&qsp(&[cmd]));
        let json: Value = serde_json::from_slice(&qsp(&[cmd, "--output", "json"]).stdout).unwrap();
        let (header, rows) = csv_rows(&csv);
        let jrows = json["rows"].as_array().unwrap();
        assert_eq!(rows.len(), jrows.len());
        for (row, jrow) in rows.iter().zip(jrows) {
            for (name, cell) in header.iter().zip(row) {
                let a: f64 = cell.parse().unwrap();
                let b = jrow[name].as_f64().unwrap();
                assert_eq!(a.to_bits(), b.to_bits(), "{cmd} {name}");
            }
        }
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let runs: [&[&str]; 6] = [
        &[
            "residuals",
            "--r-range",
            "0.5:5:12",
            "--tau-range",
            "0.5:5:12",
        ],
        &["quantum", "--output", "json"],
        &["frw", "--profile-F", "0.5*r^1.5"],
        &["bohr", "--n-max", "50"],
        &["gedanken", "atwood-corrected", "--cycles", "50"],
        &["gedanken", "pair"],
    ];
    for args in runs {
        let a = qsp(args);
        let b = qsp(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status, b.status);
    }
}
