//! Batch harness: constant tables, enumeration, property suites, auxiliary
//! polynomials and the end-to-end point count.

pub mod auxpoly_cmd;
pub mod config;
pub mod constants_cmd;
pub mod count;
pub mod error;
pub mod output;
pub mod verify;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::config::{ExperimentConfig, Resolved};
use crate::error::{CliError, CliResult};
use crate::output::{fmt_f64, write_csv, write_json, write_text};
use crate::verify::Which;

#[derive(Debug, Parser)]
#[command(name = "algpoints", version, about = "Certified experiments on algebraic points of entire-function graphs")]
pub struct Cli {
    /// TOML experiment configuration; defaults apply to missing keys.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory (overrides `out_dir`).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Working precision in bits.
    #[arg(long, global = true)]
    pub precision: Option<u32>,
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of every constant with its defining formula.
    Constants,
    /// Enumerate, classify and count points; compare with the bound.
    CountPoints,
    /// Run one property suite: asymptotic, cutoff, cartan, jensen or oracle.
    Verify { which: String },
    /// Construct an auxiliary polynomial through the points in a file.
    Auxpoly {
        points: PathBuf,
        /// Total degree; default is the smallest that guarantees a solution.
        #[arg(long)]
        degree: Option<u32>,
    },
    /// List algebraic numbers of degree <= d and height <= H.
    Enumerate,
}

impl Cli {
    /// Config file (or defaults) with command-line overrides applied.
    pub fn experiment(&self) -> CliResult<(ExperimentConfig, PathBuf)> {
        let mut cfg = match &self.config {
            Some(p) => ExperimentConfig::load(p)?,
            None => ExperimentConfig::default(),
        };
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(p) = self.precision {
            cfg.precision_bits = p;
        }
        if let Some(w) = self.workers {
            cfg.workers = w;
        }
        let out = self.out.clone().unwrap_or_else(|| cfg.out_dir.clone());
        Ok((cfg, out))
    }
}

#[derive(Serialize)]
struct AlgebraicRow {
    minpoly: String,
    degree: usize,
    root_re: String,
    root_im: String,
}

/// Parse arguments, run the command, and return a short report for stdout.
pub fn run<I, T>(args: I) -> CliResult<String>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => CliError::Info(e.to_string()),
        _ => CliError::Validation(e.to_string()),
    })?;
    let (raw, out) = cli.experiment()?;
    let cfg = raw.resolve_with(!matches!(cli.command, Command::Enumerate))?;
    execute(&cli.command, &cfg, &out)
}

pub fn execute(command: &Command, cfg: &Resolved, out: &std::path::Path) -> CliResult<String> {
    match command {
        Command::Constants => {
            let c = constants_cmd::cmd_constants(cfg)?;
            write_csv(out, "constants.csv", &c.rows)?;
            write_text(out, "constants.txt", &c.text)?;
            Ok(c.text)
        }
        Command::CountPoints => {
            let res = count::cmd_count_points(cfg)?;
            write_csv(out, "points.csv", &res.csv_rows())?;
            write_json(out, "summary.json", &res.summary)?;
            let s = &res.summary;
            let mut msg = format!("enumerated {} inputs\n", s.enumerated);
            for (name, n) in &s.counts {
                msg.push_str(&format!("  {name:<28} {n}\n"));
            }
            msg.push_str(&format!(
                "bound 10^{:.3}, ratio {}\n",
                s.bound_log10,
                fmt_f64(s.ratio)
            ));
            Ok(msg)
        }
        Command::Verify { which } => {
            let w = Which::parse(which).ok_or_else(|| CliError::Validation(format!("unknown suite '{which}'")))?;
            let rep = verify::cmd_verify(cfg, w)?;
            std::fs::create_dir_all(out)?;
            std::fs::write(out.join(format!("verify_{}.csv", w.name())), rep.csv_bytes()?)?;
            write_json(out, &format!("verify_{}.json", w.name()), &rep)?;
            let mut msg = format!("{}: {} ({} cases, {} failures)\n", rep.which, rep.verdict, rep.cases, rep.failures);
            for n in &rep.notes {
                msg.push_str(&format!("  {n}\n"));
            }
            Ok(msg)
        }
        Command::Auxpoly { points, degree } => {
            let res = auxpoly_cmd::cmd_auxpoly(cfg, points, *degree)?;
            write_text(out, "auxpoly.cert", &res.certificate.to_text())?;
            write_json(out, "auxpoly_hypotheses.json", &res.summary)?;
            Ok(format!(
                "P = {}\nT = {}, verified {}, hypotheses hold {}\n",
                res.summary.polynomial, res.summary.t, res.summary.certificate_verified, res.summary.all_hold
            ))
        }
        Command::Enumerate => {
            let list = count::enumerate_parallel(cfg, cfg.params.d as usize, &cfg.params.h)?;
            let rows: Vec<AlgebraicRow> = list
                .iter()
                .map(|a| {
                    let (re, im) = a.root_box.mid_f64();
                    AlgebraicRow {
                        minpoly: a.minpoly.to_string(),
                        degree: a.degree,
                        root_re: fmt_f64(re),
                        root_im: fmt_f64(im),
                    }
                })
                .collect();
            write_csv(out, "algebraic.csv", &rows)?;
            Ok(format!("{} algebraic numbers\n", rows.len()))
        }
    }
}
