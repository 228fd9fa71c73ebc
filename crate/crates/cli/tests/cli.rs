use std::path::Path;
use std::process::Command as Proc;

use algpoints_cli::config::ExperimentConfig;
use algpoints_cli::constants_cmd::cmd_constants;
use algpoints_cli::count::{cmd_count_points, Classification};
use algpoints_cli::{auxpoly_cmd::cmd_auxpoly, execute, Command};
use num_bigint::BigInt;

fn bin() -> Proc {
    Proc::new(env!("CARGO_BIN_EXE_algpoints"))
}

fn write(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run_with_config(config: &str, args: &[&str]) -> (i32, String, tempfile::TempDir) {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "exp.toml", config);
    let out = dir.path().join("out");
    let o = bin()
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .args(args)
        .output()
        .unwrap();
    let text = format!("{}{}", String::from_utf8_lossy(&o.stdout), String::from_utf8_lossy(&o.stderr));
    (o.status.code().unwrap(), text, dir)
}

#[test]
fn invalid_sector_angle_exits_with_validation_code() {
    let (code, text, _d) = run_with_config("[theorem]\nphi = \"2.0\"\n", &["constants"]);
    assert_eq!(code, 2, "{text}");
    assert!(text.contains("validation"));
}

#[test]
fn small_height_is_refused_outside_regime() {
    let (code, text, _d) = run_with_config("[theorem]\nh = \"2\"\n", &["count-points"]);
    assert_eq!(code, 2, "{text}");
    assert!(text.contains("outside theorem regime"));
}

#[test]
fn enumerate_accepts_small_height() {
    let (code, text, dir) = run_with_config("[theorem]\nh = \"2\"\n", &["enumerate"]);
    assert_eq!(code, 0, "{text}");
    let csv = std::fs::read_to_string(dir.path().join("out/algebraic.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 7);
}

#[test]
fn tiny_enumeration_budget_exits_with_exhaustion_code() {
    let (code, text, _d) = run_with_config("[budget]\nenumeration = 3\n", &["count-points"]);
    assert_eq!(code, 3, "{text}");
}

#[test]
fn unknown_config_key_is_a_validation_error() {
    let (code, _, _d) = run_with_config("bogus = 1\n", &["constants"]);
    assert_eq!(code, 2);
}

#[test]
fn help_exits_cleanly() {
    let o = bin().arg("--help").output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("count-points"));
}

#[test]
fn malformed_points_file_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let pts = write(dir.path(), "pts.txt", "1 1\n# comment\n2 x/4\n");
    let cfg = ExperimentConfig::default().resolve().unwrap();
    let err = cmd_auxpoly(&cfg, &pts, None).err().unwrap();
    assert_eq!(err.exit_code(), 2);
    assert!(err.to_string().contains("line 3"), "{err}");
}

#[test]
fn empty_point_set_gives_valid_monomial() {
    let dir = tempfile::tempdir().unwrap();
    let pts = write(dir.path(), "pts.txt", "");
    let cfg = ExperimentConfig::default().resolve().unwrap();
    let out = cmd_auxpoly(&cfg, &pts, Some(1)).unwrap();
    assert!(out.summary.certificate_verified);
    assert_eq!(out.certificate.poly.terms().count(), 1);
    assert_eq!(out.certificate.poly.height_norm(), BigInt::from(1));
}

#[test]
fn parabola_file_yields_y_minus_x_squared() {
    let dir = tempfile::tempdir().unwrap();
    let pts = write(dir.path(), "pts.txt", "1 1\n2 4\n3 9\n");
    let cfg = ExperimentConfig::default().resolve().unwrap();
    let out = cmd_auxpoly(&cfg, &pts, None).unwrap();
    assert_eq!(out.summary.t, 2);
    assert_eq!(out.summary.polynomial, "X^2 - Y");
    assert!(out.summary.certificate_verified);
    let o = bin().arg("--out").arg(dir.path().join("o")).arg("auxpoly").arg(&pts).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.path().join("o/auxpoly.cert").exists());
    assert!(dir.path().join("o/auxpoly_hypotheses.json").exists());
}

fn eta_of(config: &str) -> String {
    let cfg = ExperimentConfig::parse(config).unwrap().resolve().unwrap();
    let c = cmd_constants(&cfg).unwrap();
    c.rows.iter().find(|r| r.name == "eta").unwrap().exact.clone()
}

#[test]
fn eta_rows_for_two_orders() {
    assert_eq!(eta_of(""), "174");
    assert_eq!(eta_of("[zeros]\ns = \"3\"\n"), "440");
}

#[test]
fn constants_command_writes_table() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = ExperimentConfig::default().resolve().unwrap();
    execute(&Command::Constants, &cfg, dir.path()).unwrap();
    let csv = std::fs::read_to_string(dir.path().join("constants.csv")).unwrap();
    assert!(csv.starts_with("name,value,lo,hi,exact,formula,site"));
    assert!(csv.contains("\neta,"));
}

/// Every exclusion must survive a rerun at twice the precision.
#[test]
fn exclusions_are_stable_under_doubled_precision() {
    let base = ExperimentConfig::default();
    let mut doubled = base.clone();
    doubled.precision_bits *= 2;
    let a = cmd_count_points(&base.resolve().unwrap()).unwrap();
    let b = cmd_count_points(&doubled.resolve().unwrap()).unwrap();
    assert_eq!(a.records.len(), b.records.len());
    for (x, y) in a.records.iter().zip(&b.records) {
        assert_eq!(x.z.minpoly, y.z.minpoly);
        if x.classification != Classification::TentativeMatch {
            assert_ne!(y.classification, Classification::TentativeMatch, "{}", x.z);
        }
    }
}

#[test]
fn survivors_within_enumeration_within_northcott_cap() {
    for h in ["4", "6"] {
        let mut raw = ExperimentConfig::default();
        raw.theorem.h = h.into();
        let out = cmd_count_points(&raw.resolve().unwrap()).unwrap();
        let s = &out.summary;
        let survivors = out.count(Classification::CandidateCheckedNoMatch) + out.count(Classification::TentativeMatch);
        assert!(survivors <= s.enumerated);
        assert_eq!(out.records.len(), s.enumerated);
        let cap = s.northcott_cap.parse::<BigInt>().unwrap();
        assert!(BigInt::from(s.enumerated) <= cap);
    }
}

#[test]
fn count_points_csv_is_identical_across_workers() {
    let mut outputs = Vec::new();
    for w in [1usize, 3] {
        let dir = tempfile::tempdir().unwrap();
        let raw = ExperimentConfig { workers: w, ..Default::default() };
        execute(&Command::CountPoints, &raw.resolve().unwrap(), dir.path()).unwrap();
        outputs.push(std::fs::read(dir.path().join("points.csv")).unwrap());
        let summary: serde_json::Value =
            serde_json::from_slice(&std::fs::read(dir.path().join("summary.json")).unwrap()).unwrap();
        assert_eq!(summary["tentative"], 0);
    }
    assert_eq!(outputs[0], outputs[1]);
    let header = std::str::from_utf8(&outputs[0]).unwrap().lines().next().unwrap();
    assert_eq!(header, "minpoly,root_re,root_im,classification,fz_re,fz_im,gap");
}
