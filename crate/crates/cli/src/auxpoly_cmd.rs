//! Auxiliary polynomial through a file of rational points.

use std::path::Path;

use algpoints::auxpoly::{check_hypotheses, construct, monomials, parse_points, verify_certificate, AuxPolyCertificate, PointSet};
use algpoints::constants::Decision;
use serde::Serialize;

use crate::config::Resolved;
use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, Serialize)]
pub struct HypothesisSummary {
    pub t: u32,
    pub points: usize,
    pub t_margin: f64,
    pub t_ok: bool,
    pub modulus: Vec<String>,
    pub separation: String,
    pub degree: Vec<String>,
    pub height: Vec<String>,
    pub main: String,
    pub main_margin: f64,
    pub all_hold: bool,
    pub certificate_verified: bool,
    pub polynomial: String,
}

pub struct AuxpolyOutput {
    pub certificate: AuxPolyCertificate,
    pub summary: HypothesisSummary,
}

fn word(d: Decision) -> String {
    format!("{d:?}").to_lowercase()
}

/// Smallest positive `T` whose monomial count exceeds the number of points, so the
/// linear system always has a nonzero solution.
pub fn default_degree(points: usize) -> u32 {
    (1u32..).find(|&t| monomials(t).len() > points).unwrap()
}

pub fn cmd_auxpoly(cfg: &Resolved, points_file: &Path, degree: Option<u32>) -> CliResult<AuxpolyOutput> {
    let text = std::fs::read_to_string(points_file)?;
    let points = parse_points(&text).map_err(|e| CliError::Validation(format!("{}: {e}", points_file.display())))?;
    let t = degree.unwrap_or_else(|| default_degree(points.len()));
    if t == 0 {
        return Err(CliError::Validation("degree must be positive".into()));
    }
    let n = points.len();
    let mut ps = PointSet::from_rationals(points);
    ps.d = cfg.params.d;
    ps.h = cfg.params.h.clone();
    let certificate = construct(&ps, t)?;
    let report = check_hypotheses(&ps, t)?;
    let summary = HypothesisSummary {
        t,
        points: n,
        t_margin: report.t_margin,
        t_ok: report.t_ok,
        modulus: report.modulus.iter().copied().map(word).collect(),
        separation: word(report.separation),
        degree: report.degree.iter().copied().map(word).collect(),
        height: report.height.iter().copied().map(word).collect(),
        main: word(report.main.decision),
        main_margin: report.main.margin.mid_f64(),
        all_hold: report.all_hold(),
        certificate_verified: verify_certificate(&certificate, &ps),
        polynomial: certificate.poly.to_string(),
    };
    Ok(AuxpolyOutput { certificate, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_degree_exceeds_point_count() {
        assert_eq!(default_degree(0), 1);
        assert_eq!(default_degree(2), 1);
        assert_eq!(default_degree(3), 2);
        assert_eq!(default_degree(5), 2);
        assert_eq!(default_degree(6), 3);
    }
}
