use std::collections::HashMap;
use std::process::{Command, Output};

fn covosc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_covosc"))
        .args(args)
        .output()
        .expect("spawn covosc")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Parses CSV output into (meta json, header, rows).
fn parse_csv(text: &str) -> (serde_json::Value, Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let meta = lines
        .next()
        .unwrap()
        .strip_prefix("# meta: ")
        .expect("meta line");
    let meta = serde_json::from_str(meta).unwrap();
    let rest: String = lines.collect::<Vec<_>>().join("\n");
    let mut rdr = csv::Reader::from_reader(rest.as_bytes());
    let header = rdr.headers().unwrap().iter().map(String::from).collect();
    let rows = rdr
        .records()
        .map(|r| r.unwrap().iter().map(String::from).collect())
        .collect();
    (meta, header, rows)
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn wavefunction_ground_state_peak() {
    let o = covosc(&[
        "wavefunction",
        "--n",
        "0",
        "--eta",
        "0",
        "--grid",
        "-3:3:61,-3:3:61",
    ]);
    assert!(o.status.success());
    let (meta, header, rows) = parse_csv(&stdout(&o));
    assert_eq!(header, ["z", "t", "psi"]);
    assert_eq!(meta["command"], "wavefunction");
    assert_eq!(rows.len(), 61 * 61);
    let (peak_row, peak) = rows
        .iter()
        .map(|r| (r, num(&r[2])))
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap();
    assert!((peak - 1.0 / std::f64::consts::PI.sqrt()).abs() < 1e-15);
    assert_eq!(num(&peak_row[0]), 0.0);
    assert_eq!(num(&peak_row[1]), 0.0);
    assert!(rows.iter().all(|r| num(&r[2]).is_finite()));
}

#[test]
fn wavefunction_level_sets_are_squeezed_ellipses() {
    let eta: f64 = 1.5;
    let o = covosc(&[
        "wavefunction",
        "--n",
        "0",
        "--eta",
        "1.5",
        "--grid",
        "-3:3:61,-3:3:61",
    ]);
    assert!(o.status.success());
    let (_, _, rows) = parse_csv(&stdout(&o));
    let at = |z: f64, t: f64| {
        rows.iter()
            .find(|r| (num(&r[0]) - z).abs() < 1e-9 && (num(&r[1]) - t).abs() < 1e-9)
            .map(|r| num(&r[2]))
            .unwrap()
    };
    let centre = at(0.0, 0.0);
    // ln ψ = ln ψ(0) − ½ (a u² + b v²); the semi-axis ratio along u over v is √(b/a)
    let s = 0.5;
    let u2 = 2.0 * s * s;
    let a = -2.0 * (at(s, s) / centre).ln() / u2;
    let b = -2.0 * (at(s, -s) / centre).ln() / u2;
    let ratio = (b / a).sqrt();
    assert!(
        (ratio / (2.0 * eta).exp() - 1.0).abs() < 1e-10,
        "ratio {ratio}"
    );
}

#[test]
fn wavefunction_json_schema() {
    let o = covosc(&[
        "wavefunction",
        "--n",
        "1",
        "--beta",
        "0.5",
        "--grid",
        "-1:1:3,-1:1:4",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let meta = v["meta"].as_object().unwrap();
    for key in ["command", "parameters", "tool_version", "tolerances"] {
        assert!(meta.contains_key(key), "missing {key}");
    }
    assert_eq!(v["meta"]["parameters"]["n"], 1);
    assert!((v["meta"]["parameters"]["beta"].as_f64().unwrap() - 0.5).abs() < 1e-15);
    assert_eq!(v["data"]["columns"], serde_json::json!(["z", "t", "psi"]));
    let rows = v["data"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 12);
    assert!(rows.iter().all(|r| r.as_array().unwrap().len() == 3));
}

#[test]
fn expand_rest_state_single_row() {
    let o = covosc(&["expand", "--n", "0", "--eta", "0", "--tol", "1e-10"]);
    assert!(o.status.success());
    let (meta, header, rows) = parse_csv(&stdout(&o));
    assert_eq!(header, ["k", "c_k", "cumulative"]);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][0], "0");
    assert_eq!(num(&rows[0][1]), 1.0);
    assert_eq!(meta["results"]["tail_bound"], 0.0);
}

#[test]
fn expand_rows_match_library_and_reach_tolerance() {
    let o = covosc(&["expand", "--n", "1", "--eta", "1"]);
    assert!(o.status.success());
    let (meta, _, rows) = parse_csv(&stdout(&o));
    let eta = covosc::Rapidity::new(1.0).unwrap();
    for r in &rows {
        let k: usize = r[0].parse().unwrap();
        assert_eq!(num(&r[1]), covosc::squeeze::coefficient(1, k, eta));
    }
    let last = num(&rows.last().unwrap()[2]);
    assert!(last >= 1.0 - 1e-10);
    assert_eq!(meta["tolerances"]["tol"], 1e-10);
    assert!(meta["results"]["tail_bound"].as_f64().unwrap() < 1e-10);
}

#[test]
fn expand_beta_0_6_truncates_at_22() {
    let beta: f64 = 0.6;
    let o = covosc(&["expand", "--n", "0", "--beta", &beta.to_string()]);
    let (meta, _, rows) = parse_csv(&stdout(&o));
    assert_eq!(rows.len(), 23);
    assert_eq!(meta["results"]["truncation"], 22);
}

#[test]
fn density_columns() {
    let o = covosc(&["density", "--eta", "1", "--grid", "-2:2:5,-2:2:5"]);
    assert!(o.status.success());
    let (_, header, rows) = parse_csv(&stdout(&o));
    assert_eq!(header, ["z", "zp", "rho_closed", "rho_series"]);
    assert_eq!(rows.len(), 25);
    for r in rows {
        assert!((num(&r[2]) - num(&r[3])).abs() < 1e-12);
    }
}

#[test]
fn entropy_curve_columns() {
    let o = covosc(&["entropy-curve", "--eta", "3", "--steps", "31"]);
    assert!(o.status.success());
    let (_, header, rows) = parse_csv(&stdout(&o));
    assert_eq!(header, ["eta", "beta", "entropy", "purity"]);
    assert_eq!(rows.len(), 31);
    assert_eq!(num(&rows[0][2]), 0.0);
    assert_eq!(num(&rows[0][3]), 1.0);
    let s: Vec<f64> = rows.iter().map(|r| num(&r[2])).collect();
    assert!(s.windows(2).all(|w| w[1] > w[0]));
    for r in &rows {
        let b2 = num(&r[1]).powi(2);
        assert!((num(&r[3]) - (1.0 - b2) / (1.0 + b2)).abs() < 1e-15);
    }
}

#[test]
fn algebra_rows_all_pass() {
    let o = covosc(&["algebra", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v["data"]["rows"].as_array().unwrap();
    let by_name: HashMap<&str, &serde_json::Value> =
        rows.iter().map(|r| (r[0].as_str().unwrap(), r)).collect();
    assert!(rows.iter().all(|r| r[3] == true));
    assert!(by_name["[N1,N2] = 0"][1].as_f64().unwrap() < 1e-14);
    assert!(by_name["[J_a,J_b] = i e_abc J_c, a=1"][1].as_f64().unwrap() < 1e-14);
    let r2 = by_name["contraction residual eta=2"][1].as_f64().unwrap();
    let r4 = by_name["contraction residual eta=4"][1].as_f64().unwrap();
    assert!((r4 / r2 / (-4.0f64).exp() - 1.0).abs() < 0.05);
}

#[test]
fn output_is_deterministic_and_out_flag_writes_file() {
    let args = ["density", "--beta", "0.3", "--grid", "-1:1:7,-1:1:7"];
    let a = covosc(&args);
    let b = covosc(&args);
    assert_eq!(a.stdout, b.stdout);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rho.csv");
    let path_s = path.to_str().unwrap();
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path_s]);
    let c = covosc(&with_out);
    assert!(c.status.success());
    assert!(c.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
}

#[test]
fn usage_errors_exit_2() {
    let cases: &[&[&str]] = &[
        &["wavefunction", "--eta", "1", "--grid", "-3:3"],
        &["wavefunction", "--eta", "1", "--grid", "3:-3:10,0:1:2"],
        &["wavefunction", "--eta", "1", "--format", "xml"],
        &["wavefunction", "--grid", "-1:1:3,-1:1:3"],
        &["expand", "--eta", "1", "--beta", "0.5"],
        &["expand", "--eta", "1", "--tol", "0"],
        &["expand", "--beta", "1.0"],
        &["density", "--eta", "11"],
        &["entropy-curve", "--eta", "1", "--steps", "1"],
        &["verify", "--tol", "2"],
        &["verify", "--mutate", "nonsense"],
        &["frobnicate"],
    ];
    for args in cases {
        let o = covosc(args);
        assert_eq!(
            o.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
}

#[test]
fn verify_passes_and_lists_notes() {
    let o = covosc(&["verify"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(!text.contains("[FAIL]"));
    assert_eq!(text.lines().filter(|l| l.starts_with("note: ")).count(), 5);
    assert!(text.contains("(1-beta^2)/(1+beta^2)"));
}

#[test]
fn verify_flags_flipped_boost_in_algebra_block() {
    let o = covosc(&["verify", "--mutate", "flip-k3"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("[FAIL] 1 lorentz commutators"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("failed: 1 lorentz commutators"));
}
