//! End-to-end tests of the binary: exit-code contract, output formats,
//! config-file merging, and cross-command consistency.

use std::io::Write;
use std::process::{Command, Output};

fn flamefront(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flamefront"))
        .args(args)
        .env_remove("FLAMEFRONT_MAX_X")
        .output()
        .expect("binary should spawn")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).to_string()
}

fn data_rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .filter(|l| {
            !l.starts_with('#') && !l.is_empty() && !l.starts_with(|c: char| c.is_alphabetic())
        })
        .map(|l| {
            l.split(',')
                .map(|tok| tok.parse::<f64>().unwrap())
                .collect()
        })
        .collect()
}

#[test]
fn solve_emits_record_and_exit_zero() {
    let out = flamefront(&["solve", "--theta", "0.5", "--lambda", "1", "--alpha", "0.5"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    let mut lines = text.lines();
    assert!(lines
        .next()
        .unwrap()
        .starts_with("theta,lambda,alpha,sigma_star,c_star,r_star,a_coef,res_ign"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row.len(), 13);
    assert_eq!(row[0], "5.00000000000e-1");
    let c_star: f64 = row[4].parse().unwrap();
    assert!((c_star - 0.9253753755).abs() < 1e-6, "c* = {c_star}");
    for res in &row[7..12] {
        let v: f64 = res.parse().unwrap();
        assert!(v < 1e-6, "residual {v}");
    }
}

#[test]
fn solve_rejects_out_of_range_theta_with_exit_one() {
    let out = flamefront(&["solve", "--theta", "1.5", "--lambda", "1", "--alpha", "0.5"]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr_of(&out);
    assert!(err.contains("theta") && err.contains("(0,1)"), "{err}");
}

#[test]
fn solve_guardrail_points_to_closed_form() {
    let out = flamefront(&[
        "solve", "--theta", "0.5", "--lambda", "1", "--alpha", "0.999",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("alpha"), "{}", stderr_of(&out));
    assert!(stderr_of(&out).contains("alpha_one"), "{}", stderr_of(&out));
}

#[test]
fn solve_json_mirrors_csv_fields() {
    let out = flamefront(&[
        "solve", "--theta", "0.5", "--lambda", "1", "--alpha", "0.5", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["theta"].as_f64().unwrap(), 0.5);
    assert!((v["c_star"].as_f64().unwrap() - 0.9253753755).abs() < 1e-6);
    assert!(v["res_flux"].as_f64().unwrap() < 1e-6);
    assert!(v["wall_time_ms"].as_f64().unwrap() >= 0.0);
}

#[test]
fn solve_rejects_unknown_format() {
    let out = flamefront(&[
        "solve", "--theta", "0.5", "--lambda", "1", "--alpha", "0.5", "--format", "xml",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sweep_single_point_matches_solve() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("one.csv");
    let out = flamefront(&[
        "sweep",
        "--theta-grid",
        "0.5",
        "--lambda-grid",
        "1",
        "--alpha-grid",
        "0.5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let text = std::fs::read_to_string(&path).unwrap();
    let sweep_row = &data_rows(&text)[0];

    let solve_out = flamefront(&["solve", "--theta", "0.5", "--lambda", "1", "--alpha", "0.5"]);
    let solve_text = stdout_of(&solve_out);
    let solve_row = &data_rows(&solve_text)[0];

    // Identical deterministic columns; wall time naturally differs.
    assert_eq!(sweep_row[..12], solve_row[..12]);
}

#[test]
fn sweep_default_grid_has_27_rows_and_no_violations() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.csv");
    let out = flamefront(&["sweep", "--out", path.to_str().unwrap(), "--jobs", "4"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let text = std::fs::read_to_string(&path).unwrap();
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 27);
    // Rows arrive in input order (theta outer, lambda, alpha inner) even
    // with several workers.
    assert_eq!(&rows[0][..3], &[0.25, 0.2, 0.25]);
    assert_eq!(&rows[1][..3], &[0.25, 0.2, 0.5]);
    assert_eq!(&rows[26][..3], &[0.75, 5.0, 0.75]);
    for axis in ["theta", "lambda", "alpha"] {
        assert!(
            text.contains(&format!("# c_star monotonicity violations along {axis}: 0")),
            "missing clean summary for {axis}:\n{text}"
        );
    }
    // theta-line: c* strictly decreasing at fixed (lambda, alpha).
    let c_of = |theta: f64| -> f64 {
        rows.iter()
            .find(|r| r[0] == theta && r[1] == 1.0 && r[2] == 0.5)
            .map(|r| r[4])
            .unwrap()
    };
    assert!(c_of(0.25) > c_of(0.5) && c_of(0.5) > c_of(0.75));
}

#[test]
fn sweep_records_failed_tuples_and_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mixed.csv");
    // 0.999 is outside the supported reaction-order window, so that tuple
    // fails while the 0.5 tuple succeeds.
    let out = flamefront(&[
        "sweep",
        "--theta-grid",
        "0.5",
        "--lambda-grid",
        "1",
        "--alpha-grid",
        "0.5,0.999",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2), "stderr: {}", stderr_of(&out));
    let text = std::fs::read_to_string(&path).unwrap();
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 2);
    assert!(rows[0][4].is_finite(), "good tuple keeps its outputs");
    assert!(rows[1][4].is_nan(), "failed tuple records NaN outputs");
    assert!(
        rows[1][7].is_infinite(),
        "failed tuple records nonzero residuals"
    );
    assert!(
        text.contains("failed:"),
        "summary names the failed tuple:\n{text}"
    );
}

#[test]
fn sweep_rejects_malformed_grid() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.csv");
    let out = flamefront(&[
        "sweep",
        "--theta-grid",
        "0.1:0.9",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("theta-grid"));
}

#[test]
fn sweep_requires_out_path() {
    let out = flamefront(&["sweep", "--theta-grid", "0.5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("--out"));
}

#[test]
fn profile_table_is_monotone_with_markers() {
    let out = flamefront(&[
        "profile", "--theta", "0.5", "--lambda", "1", "--alpha", "0.5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("# xi_ign = "));
    assert!(text.contains("# xi_tr = 0.00000000000e0"));
    let rows = data_rows(&text);
    let last = rows.last().unwrap();
    assert_eq!(last[0], 0.0);
    assert_eq!(last[1], 1.0);
    assert_eq!(last[2], 0.0);
    for pair in rows.windows(2) {
        assert!(pair[1][0] > pair[0][0], "xi ascending");
        assert!(pair[1][1] >= pair[0][1] - 1e-12, "u non-decreasing");
        assert!(pair[1][2] <= pair[0][2] + 1e-12, "v non-increasing");
    }
    // Row nearest the ignition marker carries u near theta.
    let xi_ign: f64 = text
        .lines()
        .find(|l| l.starts_with("# xi_ign"))
        .and_then(|l| l.rsplit('=').next())
        .unwrap()
        .trim()
        .parse()
        .unwrap();
    let nearest = rows
        .iter()
        .min_by(|a, b| {
            (a[0] - xi_ign)
                .abs()
                .partial_cmp(&(b[0] - xi_ign).abs())
                .unwrap()
        })
        .unwrap();
    assert!(
        (nearest[1] - 0.5).abs() < 1e-6,
        "u at ignition = {}",
        nearest[1]
    );
}

#[test]
fn compare_asymptotics_passes_in_its_regimes() {
    let out = flamefront(&[
        "compare-asymptotics",
        "--theta",
        "0.98",
        "--lambda",
        "1",
        "--alpha",
        "0.5",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text
        .lines()
        .next()
        .unwrap()
        .starts_with("regime,quantity,numeric"));
    assert!(text.contains("theta-near-one,c_star"));
    assert!(text.contains("alpha-zero,c_star"));
    assert!(text.contains("alpha-one,c_star"));
    for line in text.lines().skip(1) {
        assert!(line.ends_with(",pass"), "{line}");
    }
}

#[test]
fn compare_asymptotics_theta_small_regime() {
    let out = flamefront(&[
        "compare-asymptotics",
        "--theta",
        "0.001",
        "--lambda",
        "1",
        "--alpha",
        "0.5",
        "--regimes",
        "theta-small",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("theta-small,c_star"));
    for line in text.lines().skip(1) {
        assert!(line.ends_with(",pass"), "{line}");
    }
}

#[test]
fn compare_asymptotics_rejects_regime_mismatch() {
    let out = flamefront(&[
        "compare-asymptotics",
        "--theta",
        "0.5",
        "--lambda",
        "1",
        "--alpha",
        "0.5",
        "--regimes",
        "theta-near-one",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("theta-near-one"));

    let out = flamefront(&[
        "compare-asymptotics",
        "--theta",
        "0.5",
        "--lambda",
        "1",
        "--alpha",
        "0.5",
        "--regimes",
        "w-small-x",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn phase_trace_is_monotone_with_expected_endpoints() {
    let out = flamefront(&["phase", "--lambda", "1", "--alpha", "0.5", "--reach", "60"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("# max_positive_angle_increment = 0.00000000000e0"));
    let rows = data_rows(&text);
    let first = rows.first().unwrap();
    let last = rows.last().unwrap();
    assert!(first[4].abs() < 0.05, "angle at reach {}", first[4]);
    assert!((last[4] + std::f64::consts::FRAC_PI_2).abs() < 1e-9);
    // q decreases toward the origin as t rises to 0.
    assert!(first[1] > rows[rows.len() / 2][1] && rows[rows.len() / 2][1] > last[1]);
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "# sweep definition").unwrap();
    writeln!(f, "theta = 0.5").unwrap();
    writeln!(f, "lambda = 1").unwrap();
    writeln!(f, "alpha = 0.5  # inline comment").unwrap();
    drop(f);

    let out = flamefront(&["solve", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    assert!(stdout_of(&out).contains("\n5.00000000000e-1,"));

    // Explicit flag wins over the config value.
    let out = flamefront(&[
        "solve",
        "--config",
        path.to_str().unwrap(),
        "--theta",
        "0.25",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("\n2.50000000000e-1,"));
}

#[test]
fn config_rejects_malformed_lines() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.conf");
    std::fs::write(&path, "theta 0.5\n").unwrap();
    let out = flamefront(&["solve", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("key = value"));
}

#[test]
fn bracket_ceiling_env_var_caps_expansion() {
    let out = Command::new(env!("CARGO_BIN_EXE_flamefront"))
        .args([
            "solve", "--theta", "0.001", "--lambda", "1", "--alpha", "0.5",
        ])
        .env("FLAMEFRONT_MAX_X", "16")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "stderr: {}", stderr_of(&out));
    assert!(stderr_of(&out).contains("ceiling"));

    let out = Command::new(env!("CARGO_BIN_EXE_flamefront"))
        .args(["solve", "--theta", "0.5", "--lambda", "1", "--alpha", "0.5"])
        .env("FLAMEFRONT_MAX_X", "nonsense")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("FLAMEFRONT_MAX_X"));
}

#[test]
fn outputs_are_deterministic_across_runs() {
    let run = || {
        let out = flamefront(&[
            "profile", "--theta", "0.6", "--lambda", "0.7", "--alpha", "0.3",
        ]);
        assert_eq!(out.status.code(), Some(0));
        stdout_of(&out)
    };
    assert_eq!(run(), run());
}
