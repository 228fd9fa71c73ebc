//! Acceptance suite: one pass/fail line per criterion. Exits non-zero when
//! any criterion fails outside the single documented gap in criterion 1.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::time::{Duration, Instant};

use algpoints::auxpoly::{check_hypotheses, construct, verify_certificate, IntPolynomial2, PointSet};
use algpoints::constants::Decision;
use algpoints::enumerate::{enumerate_algebraic, EnumerationOptions};
use algpoints::heights::HeightBound;
use algpoints_cli::auxpoly_cmd::cmd_auxpoly;
use algpoints_cli::config::{ExperimentConfig, Resolved};
use algpoints_cli::constants_cmd::{cmd_constants, ConstantsOutput};
use algpoints_cli::count::{cmd_count_points, Classification};
use algpoints_cli::verify::{cmd_verify, VerifyReport, Which};
use algpoints_cli::{execute, Command};
use num_rational::BigRational;

#[derive(PartialEq)]
enum Status {
    Pass,
    Fail,
    /// Fails only on a target that a correct evaluation cannot meet.
    KnownGap,
}

struct Outcome {
    status: Status,
    detail: String,
}

impl Outcome {
    fn from_checks(checks: Vec<(bool, String)>) -> Self {
        let failed: Vec<String> = checks.iter().filter(|c| !c.0).map(|c| c.1.clone()).collect();
        let all: Vec<String> = checks.into_iter().map(|c| c.1).collect();
        Outcome {
            status: if failed.is_empty() { Status::Pass } else { Status::Fail },
            detail: if failed.is_empty() { all.join("; ") } else { failed.join("; ") },
        }
    }
}

fn resolved(edit: impl FnOnce(&mut ExperimentConfig)) -> Resolved {
    let mut raw = ExperimentConfig::default();
    edit(&mut raw);
    raw.resolve().expect("acceptance configuration resolves")
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn row(c: &ConstantsOutput, name: &str) -> (f64, String) {
    let r = c.rows.iter().find(|r| r.name == name).unwrap();
    (r.value, r.exact.clone())
}

fn criterion_1() -> Outcome {
    let cfg = resolved(|_| {});
    let (c, dt) = timed(|| cmd_constants(&cfg).unwrap());
    let a_go = 6.0 + 3.0 * PI;
    let eps = PI * 0.25 / (4.0 * a_go);
    let c_low = 3.0 * PI / 8.0;
    let k = (4.0 / c_low).powi(2);
    let near = |name: &str, want: f64, tol: f64| {
        let got = row(&c, name).0;
        ((got - want).abs() <= tol, format!("{name} = {got:.10} vs {want} (tol {tol:e})"))
    };
    let exact = |name: &str, want: &str| {
        let got = row(&c, name).1;
        (got == want, format!("{name} = {got}"))
    };
    let mut checks = vec![
        near("A_go", a_go, 1e-9),
        near("epsilon", 0.0127287, 1e-6),
        near("epsilon", eps, 1e-12),
        near("C_lower", 1.1780972, 1e-6),
        near("C_lower", c_low, 1e-12),
        near("K", k, 1e-9),
        exact("alpha", "3/2"),
        exact("beta", "1/4"),
        exact("gamma", "28"),
        exact("eta", "174"),
        (dt < Duration::from_secs(1), format!("runtime {dt:.2?}")),
    ];
    let k_literal = near("K", 11.52812, 1e-6);
    let mut out = Outcome::from_checks(std::mem::take(&mut checks));
    if !k_literal.0 && out.status == Status::Pass {
        out.status = Status::KnownGap;
        out.detail = format!(
            "{}; (4/C)^2 = 1024/(9 pi^2) = {k:.7} differs from the target in the 5th decimal",
            k_literal.1
        );
    } else if !k_literal.0 {
        out.detail.push_str(&format!("; {}", k_literal.1));
    }
    out
}

fn suite(report: &VerifyReport, dt: Duration, limit: Option<Duration>) -> Vec<(bool, String)> {
    let mut v = vec![(
        report.passed,
        format!("{}: verdict {}, {} cases, {} failures", report.which, report.verdict, report.cases, report.failures),
    )];
    if let Some(l) = limit {
        v.push((dt < l, format!("runtime {dt:.2?} (limit {l:?})")));
    }
    v
}

fn criterion_2(cfg: &Resolved) -> (Outcome, Vec<u8>) {
    let (rep, dt) = timed(|| cmd_verify(cfg, Which::Oracle).unwrap());
    let mut checks = suite(&rep, dt, Some(Duration::from_secs(30)));
    checks.push((rep.cases == 100, format!("{} points", rep.cases)));
    (Outcome::from_checks(checks), rep.csv_bytes().unwrap())
}

fn criterion_3() -> Outcome {
    let cfg = resolved(|_| {});
    let (rep, dt) = timed(|| cmd_verify(&cfg, Which::Asymptotic).unwrap());
    let mut checks = suite(&rep, dt, None);
    checks.push((rep.cases == 15, format!("{} grid points", rep.cases)));
    checks.push((true, rep.notes.join(", ")));
    Outcome::from_checks(checks)
}

fn criterion_4() -> Outcome {
    let cfg = resolved(|raw| raw.theorem.h = "e^3".into());
    let (rep, dt) = timed(|| cmd_verify(&cfg, Which::Cutoff).unwrap());
    let mut checks = suite(&rep, dt, Some(Duration::from_secs(10)));
    checks.push((rep.cases == 6, format!("{} (r, theta) pairs", rep.cases)));
    Outcome::from_checks(checks)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn is_square(n: i64) -> bool {
    n >= 0 && {
        let r = (n as f64).sqrt().round() as i64;
        r * r == n
    }
}

/// Independent count over the coefficient box: primitive linear polynomials
/// with coefficients in `[-H, H]`, plus irreducible quadratics with
/// `|a_k| <= binom(2, k) H^2` and Mahler measure at most `H^2` computed in f64.
fn brute_force_count(d: usize, h: i64) -> usize {
    let mut seen: BTreeSet<(i64, i64)> = BTreeSet::new();
    let key = |re: f64, im: f64| ((re * 1e9).round() as i64, (im * 1e9).round() as i64);
    for a1 in 1..=h {
        for a0 in -h..=h {
            if gcd(a0, a1) == 1 || (a0 == 0 && a1 == 1) {
                seen.insert(key(-(a0 as f64) / a1 as f64, 0.0));
            }
        }
    }
    if d >= 2 {
        let h2 = h * h;
        for a2 in 1..=h2 {
            for a1 in -2 * h2..=2 * h2 {
                for a0 in -h2..=h2 {
                    let disc = a1 * a1 - 4 * a2 * a0;
                    if a0 == 0 || is_square(disc) || gcd(gcd(a2, a1), a0) != 1 {
                        continue;
                    }
                    let (x, y) = (a1 as f64, a2 as f64);
                    let roots = if disc < 0 {
                        let im = (-disc as f64).sqrt() / (2.0 * y);
                        [(-x / (2.0 * y), im), (-x / (2.0 * y), -im)]
                    } else {
                        let s = (disc as f64).sqrt();
                        [((-x + s) / (2.0 * y), 0.0), ((-x - s) / (2.0 * y), 0.0)]
                    };
                    let m = y * roots.iter().map(|&(re, im)| re.hypot(im).max(1.0)).product::<f64>();
                    if m <= h2 as f64 + 1e-9 {
                        for (re, im) in roots {
                            seen.insert(key(re, im));
                        }
                    }
                }
            }
        }
    }
    seen.len()
}

fn criterion_5() -> Outcome {
    let mut checks = Vec::new();
    let (_, dt) = timed(|| {
        for (d, h, want) in [(1usize, 1i64, 3usize), (1, 2, 7), (1, 3, 15), (2, 1, 9)] {
            let got = enumerate_algebraic(d, &HeightBound::from_integer(h), &EnumerationOptions::default())
                .unwrap()
                .len();
            let brute = brute_force_count(d, h);
            checks.push((got == want && brute == want, format!("(d={d}, H={h}): {got} (brute force {brute})")));
        }
    });
    checks.push((dt < Duration::from_secs(5), format!("runtime {dt:.2?}")));
    Outcome::from_checks(checks)
}

/// `T log(AZ)` against `(96 d^2/T) log(4T) + 16 d log(M+1) + 48 d^2 log H`.
fn hand_margin(az: f64, t: f64, m: f64, h: f64, d: f64) -> f64 {
    t * az.ln() - (96.0 * d * d / t * (4.0 * t).ln() + 16.0 * d * (m + 1.0).ln() + 48.0 * d * d * h.ln())
}

fn criterion_6() -> Outcome {
    let mut checks = Vec::new();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("parabola.txt");
    std::fs::write(&path, "1 1\n2 4\n3 9\n").unwrap();
    let out = cmd_auxpoly(&resolved(|_| {}), &path, Some(2)).unwrap();
    let want = IntPolynomial2::from_terms(&[(0, 1, 1), (2, 0, -1)]);
    let neg = IntPolynomial2::from_terms(&[(0, 1, -1), (2, 0, 1)]);
    let ps = PointSet::from_i64_pairs(&[(1, 1), (2, 4), (3, 9)]);
    let poly = &out.certificate.poly;
    checks.push((
        (*poly == want || *poly == neg) && verify_certificate(&out.certificate, &ps),
        format!("parabola certificate {poly}"),
    ));
    checks.push((construct(&ps, 2).is_ok(), "library construction agrees".into()));
    // (A Z, T) with M = 1, H = 3, d = 1
    for (az, t) in [(1000i64, 100u32), (2, 50), (4, 60)] {
        let mut fixture = PointSet::from_i64_pairs(&[(0, 0)]);
        fixture.z_bound = BigRational::from_integer(az.into());
        fixture.a_sep = BigRational::from_integer(1.into());
        let rep = check_hypotheses(&fixture, t).unwrap().main;
        let hand = hand_margin(az as f64, t as f64, 1.0, 3.0, 1.0);
        let want = if hand > 0.0 { Decision::Holds } else { Decision::Fails };
        let inside = rep.margin.lo_f64() <= hand && hand <= rep.margin.hi_f64();
        checks.push((
            rep.decision == want && inside,
            format!("AZ={az}, T={t}: hand margin {hand:.3}, checker {:?}", rep.decision),
        ));
    }
    Outcome::from_checks(checks)
}

fn criterion_7(cfg: &Resolved) -> (Outcome, Vec<u8>, Vec<u8>) {
    let (jensen, dj) = timed(|| cmd_verify(cfg, Which::Jensen).unwrap());
    let (cartan, dc) = timed(|| cmd_verify(cfg, Which::Cartan).unwrap());
    let mut checks = suite(&jensen, dj, None);
    checks.extend(suite(&cartan, dc, None));
    checks.push((jensen.cases >= 50, format!("{} Jensen rows", jensen.cases)));
    checks.push((cartan.cases == 50, format!("{} Cartan polynomials", cartan.cases)));
    (Outcome::from_checks(checks), jensen.csv_bytes().unwrap(), cartan.csv_bytes().unwrap())
}

fn points_csv(cfg: &Resolved) -> Vec<u8> {
    let dir = tempfile::tempdir().unwrap();
    execute(&Command::CountPoints, cfg, dir.path()).unwrap();
    std::fs::read(dir.path().join("points.csv")).unwrap()
}

fn criterion_8(cfg: &Resolved) -> (Outcome, Vec<u8>) {
    let (out, dt) = timed(|| cmd_count_points(cfg).unwrap());
    let s = &out.summary;
    let classified: usize = Classification::ALL.iter().map(|&c| out.count(c)).sum();
    let checks = vec![
        (dt < Duration::from_secs(60), format!("runtime {dt:.2?}")),
        (
            classified == s.enumerated && out.records.len() == s.enumerated,
            format!("{classified} of {} classified", s.enumerated),
        ),
        (s.tentative == 0, format!("{} tentative", s.tentative)),
        (s.ratio <= 1.0, format!("ratio {:e} against (log H)^{}", s.ratio, s.eta)),
    ];
    (Outcome::from_checks(checks), points_csv(cfg))
}

fn criterion_9(base: &[Vec<u8>; 4]) -> Outcome {
    let mut checks = Vec::new();
    for w in [2usize, 8] {
        let cfg = resolved(|raw| raw.workers = w);
        let runs = [
            cmd_verify(&cfg, Which::Oracle).unwrap().csv_bytes().unwrap(),
            cmd_verify(&cfg, Which::Jensen).unwrap().csv_bytes().unwrap(),
            cmd_verify(&cfg, Which::Cartan).unwrap().csv_bytes().unwrap(),
            points_csv(&cfg),
        ];
        for (name, (a, b)) in ["oracle", "jensen", "cartan", "points"].iter().zip(base.iter().zip(&runs)) {
            checks.push((a == b, format!("{name} with {w} workers {}", if a == b { "identical" } else { "differs" })));
        }
    }
    Outcome::from_checks(checks)
}

fn report(n: usize, title: &str, o: &Outcome) {
    let tag = match o.status {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::KnownGap => "FAIL (known gap)",
    };
    println!("criterion {n} [{title}]: {tag} - {}", o.detail);
}

fn main() {
    let base = resolved(|raw| raw.workers = 1);
    let (c2, oracle_csv) = criterion_2(&base);
    let (c7, jensen_csv, cartan_csv) = criterion_7(&base);
    let (c8, points) = criterion_8(&base);
    let outcomes = [
        ("constant reproduction", criterion_1()),
        ("oracle equivalence", c2),
        ("asymptotic inequality", criterion_3()),
        ("growth cutoff", criterion_4()),
        ("enumeration counts", criterion_5()),
        ("auxiliary polynomial", criterion_6()),
        ("zero-count domination", c7),
        ("end-to-end count", c8),
        ("determinism", criterion_9(&[oracle_csv, jensen_csv, cartan_csv, points])),
    ];
    let mut hard = 0;
    for (i, (title, o)) in outcomes.iter().enumerate() {
        report(i + 1, title, o);
        if o.status == Status::Fail {
            hard += 1;
        }
    }
    if hard > 0 {
        eprintln!("{hard} criteria failed");
        std::process::exit(1);
    }
}
