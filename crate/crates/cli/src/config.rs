//! Experiment configuration, read from TOML.

use std::path::{Path, PathBuf};

use algpoints::arith::elementary;
use algpoints::auxpoly::parse_rational;
use algpoints::constants::{Multipliers, TheoremParams};
use algpoints::heights::HeightBound;
use algpoints::products::ZeroSequenceSpec;
use algpoints::Interval;
use num_rational::BigRational;
use num_traits::One;
use serde::Deserialize;

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub zeros: ZerosConfig,
    pub theorem: TheoremConfig,
    pub multipliers: MultiplierConfig,
    pub precision_bits: u32,
    pub seed: u64,
    pub workers: usize,
    pub out_dir: PathBuf,
    pub budget: BudgetConfig,
    pub grids: GridConfig,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            zeros: ZerosConfig::default(),
            theorem: TheoremConfig::default(),
            multipliers: MultiplierConfig::default(),
            precision_bits: 128,
            seed: 1,
            workers: 1,
            out_dir: PathBuf::from("out"),
            budget: BudgetConfig::default(),
            grids: GridConfig::default(),
        }
    }
}

/// `z_n = c n^s`, optionally preceded by explicit zeros.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ZerosConfig {
    pub c: String,
    pub s: String,
    pub explicit: Vec<String>,
}

impl Default for ZerosConfig {
    fn default() -> Self {
        ZerosConfig {
            c: "1".into(),
            s: "2".into(),
            explicit: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TheoremConfig {
    /// Expression such as `"pi/3"`, `"2*pi/5"` or `"0.9"`.
    pub phi: String,
    pub d: u32,
    /// Rational such as `"4"`, or `"e^L"` for `exp(L)` with rational `L`.
    pub h: String,
}

impl Default for TheoremConfig {
    fn default() -> Self {
        TheoremConfig {
            phi: "pi/3".into(),
            d: 1,
            h: "4".into(),
        }
    }
}

/// Rational multipliers; `s = "auto"` picks the smallest Jensen radius that
/// contains the cutoff disk.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MultiplierConfig {
    pub z: String,
    pub t: String,
    pub s: String,
    pub anchor: String,
    pub bound: String,
}

impl Default for MultiplierConfig {
    fn default() -> Self {
        MultiplierConfig {
            z: "1".into(),
            t: "1".into(),
            s: "auto".into(),
            anchor: "1".into(),
            bound: "1".into(),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BudgetConfig {
    pub enumeration: u64,
    pub samples: usize,
    pub random_cases: usize,
    pub anchor_extra: usize,
}

impl Default for BudgetConfig {
    fn default() -> Self {
        BudgetConfig {
            enumeration: 50_000_000,
            samples: 10_000,
            random_cases: 50,
            anchor_extra: 14,
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridConfig {
    pub radii: Vec<f64>,
    /// Angle expressions; empty means `phi + 0.1, pi/2, pi, 3pi/2, 2pi - phi - 0.1`.
    pub thetas: Vec<String>,
    pub oracle_points: usize,
    pub oracle_radius: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            radii: vec![1e3, 1e4, 1e5],
            thetas: Vec::new(),
            oracle_points: 100,
            oracle_radius: 50.0,
        }
    }
}

/// Configuration with every field parsed into library types.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub raw: ExperimentConfig,
    pub spec: ZeroSequenceSpec,
    pub params: TheoremParams,
    pub multipliers: Multipliers,
    pub prec: u32,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        toml::from_str(text).map_err(|e| CliError::Validation(format!("config: {e}")))
    }

    pub fn resolve(&self) -> CliResult<Resolved> {
        self.resolve_with(true)
    }

    /// `regime = false` skips the `H > e` requirement, for commands that only
    /// enumerate.
    pub fn resolve_with(&self, regime: bool) -> CliResult<Resolved> {
        if self.precision_bits < 32 {
            return Err(CliError::Validation("precision_bits must be at least 32".into()));
        }
        if self.workers == 0 {
            return Err(CliError::Validation("workers must be positive".into()));
        }
        if self.budget.enumeration == 0 || self.budget.samples == 0 || self.budget.random_cases == 0 {
            return Err(CliError::Validation("budgets must be positive".into()));
        }
        let prec = self.precision_bits;
        let rat = |s: &str, what: &str| {
            parse_rational(s.trim()).map_err(|_| CliError::Validation(format!("{what}: cannot parse '{s}'")))
        };
        let c = rat(&self.zeros.c, "zeros.c")?;
        let s = rat(&self.zeros.s, "zeros.s")?;
        let spec = if self.zeros.explicit.is_empty() {
            ZeroSequenceSpec::PowerLaw { c, s }
        } else {
            let zeros = self
                .zeros
                .explicit
                .iter()
                .map(|z| rat(z, "zeros.explicit"))
                .collect::<CliResult<Vec<_>>>()?;
            ZeroSequenceSpec::Explicit { zeros, c, s }
        };
        spec.validate()?;
        let phi = parse_angle(&self.theorem.phi, prec)?;
        let h = parse_height(&self.theorem.h)?;
        let params = TheoremParams::from_spec(&spec, phi, self.theorem.d, h, prec);
        params.validate_shape()?;
        if regime {
            params.validate().map_err(|e| CliError::Validation(format!("{e}; outside theorem regime")))?;
        }
        let m = &self.multipliers;
        let multipliers = Multipliers {
            z: positive(rat(&m.z, "multipliers.z")?, "multipliers.z")?,
            t: positive(rat(&m.t, "multipliers.t")?, "multipliers.t")?,
            s: match m.s.trim() {
                "auto" => None,
                v => Some(positive(rat(v, "multipliers.s")?, "multipliers.s")?),
            },
            anchor: positive(rat(&m.anchor, "multipliers.anchor")?, "multipliers.anchor")?,
            bound: positive(rat(&m.bound, "multipliers.bound")?, "multipliers.bound")?,
        };
        for r in &self.grids.radii {
            if !(r.is_finite() && *r > 0.0) {
                return Err(CliError::Validation("grid radii must be positive".into()));
            }
        }
        Ok(Resolved {
            raw: self.clone(),
            spec,
            params,
            multipliers,
            prec,
        })
    }
}

fn positive(q: BigRational, what: &str) -> CliResult<BigRational> {
    if q <= BigRational::from_integer(0.into()) {
        return Err(CliError::Validation(format!("{what} must be positive")));
    }
    Ok(q)
}

impl Resolved {
    /// Angle grid outside the sector.
    pub fn thetas(&self) -> CliResult<Vec<Interval>> {
        if !self.raw.grids.thetas.is_empty() {
            return self.raw.grids.thetas.iter().map(|t| parse_angle(t, self.prec)).collect();
        }
        let pi = elementary::pi(self.prec);
        let phi = &self.params.phi;
        let tenth = Interval::from_rational(&BigRational::new(1.into(), 10.into()), self.prec);
        Ok(vec![
            phi + &tenth,
            pi.mul_pow2(-1),
            pi.clone(),
            &Interval::from_i64(3) * &pi.mul_pow2(-1),
            &(&pi.mul_pow2(1) - phi) - &tenth,
        ])
    }

    pub fn log_h_f64(&self) -> f64 {
        self.params.h.log_f64()
    }
}

/// Product of factors separated by `*` or `/`; each factor is `pi` or a
/// rational or decimal literal.
pub fn parse_angle(text: &str, prec: u32) -> CliResult<Interval> {
    let bad = || CliError::Validation(format!("cannot parse angle '{text}'"));
    let mut acc = Interval::one().with_prec(prec);
    let mut op = '*';
    let mut token = String::new();
    let apply = |acc: &Interval, op: char, token: &str| -> CliResult<Interval> {
        let t = token.trim();
        let v = if t == "pi" {
            elementary::pi(prec)
        } else {
            Interval::from_rational(&parse_rational(t).map_err(|_| bad())?, prec)
        };
        match op {
            '*' => Ok(acc * &v),
            _ => acc.checked_div(&v).ok_or_else(bad),
        }
    };
    for ch in text.chars() {
        if ch == '*' || ch == '/' {
            if token.trim().is_empty() {
                return Err(bad());
            }
            acc = apply(&acc, op, &token)?;
            token.clear();
            op = ch;
        } else {
            token.push(ch);
        }
    }
    if token.trim().is_empty() {
        return Err(bad());
    }
    apply(&acc, op, &token)
}

/// `"p/q"` for an exact height bound or `"e^L"` for `exp(L)`.
pub fn parse_height(text: &str) -> CliResult<HeightBound> {
    let t = text.trim();
    let bad = || CliError::Validation(format!("cannot parse height bound '{text}'"));
    let h = if let Some(l) = t.strip_prefix("e^").or_else(|| t.strip_prefix("exp(").and_then(|r| r.strip_suffix(')'))) {
        HeightBound::ExpOf(parse_rational(l.trim()).map_err(|_| bad())?)
    } else if t == "e" {
        HeightBound::ExpOf(BigRational::one())
    } else {
        HeightBound::Exact(parse_rational(t).map_err(|_| bad())?)
    };
    h.validate()?;
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angle_expressions() {
        let a = parse_angle("pi/3", 64).unwrap();
        assert!((a.mid_f64() - std::f64::consts::FRAC_PI_3).abs() < 1e-15);
        let b = parse_angle("2*pi/5", 64).unwrap();
        assert!((b.mid_f64() - 0.4 * std::f64::consts::PI).abs() < 1e-15);
        assert!(parse_angle("pi//3", 64).is_err());
    }

    #[test]
    fn validation() {
        let mut c = ExperimentConfig::default();
        c.theorem.phi = "2.0".into();
        assert!(matches!(c.resolve(), Err(CliError::Validation(_))));
        let mut c = ExperimentConfig::default();
        c.theorem.h = "2".into();
        assert!(matches!(c.resolve(), Err(CliError::Validation(m)) if m.contains("outside theorem regime")));
        assert!(ExperimentConfig::default().resolve().is_ok());
        assert!(ExperimentConfig::parse("unknown = 1").is_err());
    }
}
