//! End-to-end point count: enumerate inputs, discard what is provably not an
//! algebraic point of bounded degree and height, and compare the survivors
//! with the bound.

use std::time::Instant;

use algpoints::arith::{elementary, Dyadic};
use algpoints::constants::{cutoff_radius, in_sector, SectorPosition};
use algpoints::enumerate::{candidate_count, enumerate_algebraic, merge_shards, EnumerationOptions, Shard};
use algpoints::heights::{AlgebraicNumber, HeightBound};
use algpoints::products::eval_product;
use algpoints::roots::PRECISION_CEILING;
use algpoints::{ComplexEnclosure, Error, Interval};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::Resolved;
use crate::error::{CliError, CliResult};
use crate::output::{fmt_f64, CSV_SCHEMA_VERSION};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    ExcludedSector,
    ExcludedLiouville,
    ExcludedGrowthCutoff,
    CandidateCheckedNoMatch,
    TentativeMatch,
}

impl Classification {
    pub const ALL: [Classification; 5] = [
        Classification::ExcludedSector,
        Classification::ExcludedLiouville,
        Classification::ExcludedGrowthCutoff,
        Classification::CandidateCheckedNoMatch,
        Classification::TentativeMatch,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Classification::ExcludedSector => "excluded_sector",
            Classification::ExcludedLiouville => "excluded_liouville",
            Classification::ExcludedGrowthCutoff => "excluded_growth_cutoff",
            Classification::CandidateCheckedNoMatch => "candidate_checked_no_match",
            Classification::TentativeMatch => "tentative_match",
        }
    }
}

/// One enumerated input and the certified reason for its classification.
#[derive(Clone, Debug)]
pub struct PointRecord {
    pub z: AlgebraicNumber,
    pub classification: Classification,
    pub fz: Option<ComplexEnclosure>,
    /// Certified distance from `f(z)` to the nearest candidate value, or the
    /// log-margin of the Liouville or cutoff inequality.
    pub gap: Option<f64>,
    /// Precision at which the classification was reached.
    pub bits: u32,
}

#[derive(Serialize)]
struct CsvRow {
    minpoly: String,
    root_re: String,
    root_im: String,
    classification: &'static str,
    fz_re: String,
    fz_im: String,
    gap: String,
}

impl PointRecord {
    fn csv_row(&self) -> CsvRow {
        let (re, im) = self.z.root_box.mid_f64();
        let (fz_re, fz_im) = match &self.fz {
            Some(f) => {
                let (a, b) = f.mid_f64();
                (fmt_f64(a), fmt_f64(b))
            }
            None => (String::new(), String::new()),
        };
        CsvRow {
            minpoly: self.z.minpoly.to_string(),
            root_re: fmt_f64(re),
            root_im: fmt_f64(im),
            classification: self.classification.as_str(),
            fz_re,
            fz_im,
            gap: self.gap.map(fmt_f64).unwrap_or_default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CountSummary {
    pub csv_schema: u32,
    pub d: u32,
    pub h: String,
    pub enumerated: usize,
    /// Northcott cap: scanned coefficient vectors times `d`.
    pub northcott_cap: String,
    pub counts: Vec<(String, usize)>,
    pub confirmed: usize,
    pub tentative: usize,
    pub eta: String,
    pub bound_multiplier: String,
    /// `log10` of `multiplier (log H)^eta`.
    pub bound_log10: f64,
    pub bound_value: f64,
    pub ratio: f64,
    pub r_h: f64,
    pub runtime_ms: u128,
}

pub struct CountOutput {
    pub records: Vec<PointRecord>,
    pub summary: CountSummary,
}

impl CountOutput {
    pub fn csv_rows(&self) -> Vec<impl Serialize> {
        self.records.iter().map(PointRecord::csv_row).collect()
    }

    pub fn count(&self, c: Classification) -> usize {
        self.records.iter().filter(|r| r.classification == c).count()
    }
}

/// Largest fraction `<= x` and smallest fraction `>= x` with denominator at
/// most `q_max`, by Stern–Brocot descent with batched steps.
pub fn farey_neighbors(x: &BigRational, q_max: &BigInt) -> (BigRational, BigRational) {
    let fl = x.floor().to_integer();
    let (mut lp, mut lq) = (fl.clone(), BigInt::one());
    let (mut hp, mut hq) = (fl + BigInt::one(), BigInt::one());
    if BigRational::from_integer(lp.clone()) == *x {
        return (x.clone(), x.clone());
    }
    loop {
        let xr = x;
        // advance lo = lo + k hi while it stays <= x
        let num = xr * BigRational::from_integer(lq.clone()) - BigRational::from_integer(lp.clone());
        let den = BigRational::from_integer(hp.clone()) - xr * BigRational::from_integer(hq.clone());
        let k_val = if den.is_positive() { (num / den).floor().to_integer() } else { BigInt::zero() };
        let k_cap = (q_max - &lq) / &hq;
        let k1 = k_val.min(k_cap).max(BigInt::zero());
        if !k1.is_zero() {
            lp += &k1 * &hp;
            lq += &k1 * &hq;
            if BigRational::new(lp.clone(), lq.clone()) == *x {
                return (x.clone(), x.clone());
            }
        }
        // advance hi = hi + k lo while it stays >= x
        let num = BigRational::from_integer(hp.clone()) - xr * BigRational::from_integer(hq.clone());
        let den = xr * BigRational::from_integer(lq.clone()) - BigRational::from_integer(lp.clone());
        let k_val = if den.is_positive() { (num / den).floor().to_integer() } else { BigInt::zero() };
        let k_cap = (q_max - &hq) / &lq;
        let k2 = k_val.min(k_cap).max(BigInt::zero());
        if !k2.is_zero() {
            hp += &k2 * &lp;
            hq += &k2 * &lq;
            if BigRational::new(hp.clone(), hq.clone()) == *x {
                return (x.clone(), x.clone());
            }
        }
        if k1.is_zero() && k2.is_zero() {
            return (BigRational::new(lp, lq), BigRational::new(hp, hq));
        }
    }
}

/// Rationals of height at most `h` in `[lo, hi]`: whether any exists, and
/// otherwise the distance from the interval to the nearest one.
pub fn rational_gap(lo: &BigRational, hi: &BigRational, h: &BigInt) -> (bool, BigRational) {
    let one = BigRational::one();
    let hq = BigRational::from_integer(h.clone());
    let mut neighbors: Vec<BigRational> = Vec::new();
    // |x| <= 1: every p/q with q <= h has |p| <= q <= h
    let clo = lo.clone().max(-one.clone());
    let chi = hi.clone().min(one.clone());
    if clo <= chi {
        let (below, above) = farey_neighbors(&clo, h);
        if above <= chi {
            return (true, BigRational::zero());
        }
        neighbors.push(below);
        neighbors.push(above);
    }
    // |x| > 1: x = q'/p' with 1/x a fraction of denominator at most h
    for sign in [1i32, -1] {
        let (a, b) = if sign == 1 {
            (lo.clone().max(one.clone()), hi.clone())
        } else {
            (-hi.clone(), (-lo.clone()).max(one.clone()))
        };
        let (a, b) = if sign == 1 { (a, b) } else { (b, a) };
        // positive range [a, b] in |x| coordinates
        let (a, b) = if a <= b { (a, b) } else { continue };
        if b < one {
            continue;
        }
        let a = a.max(one.clone());
        let (u_lo, u_hi) = (b.recip(), a.recip());
        let (below, above) = farey_neighbors(&u_lo, h);
        if above <= u_hi {
            return (true, BigRational::zero());
        }
        for u in [below, above] {
            if u.is_positive() {
                let x = u.recip();
                neighbors.push(if sign == 1 { x } else { -x });
            }
        }
        // values beyond h are not candidates; h itself is
        neighbors.push(if sign == 1 { hq.clone() } else { -hq.clone() });
    }
    let gap = neighbors
        .iter()
        .filter(|c| c.abs() <= hq)
        .map(|c| {
            if c < lo {
                lo - c
            } else if c > hi {
                c - hi
            } else {
                BigRational::zero()
            }
        })
        .min()
        .unwrap_or_else(|| (lo.abs().min(hi.abs()) - &hq).max(BigRational::zero()));
    (gap.is_zero(), gap)
}

enum Candidates {
    /// Rationals of height at most `h`.
    Rational(BigInt),
    Algebraic(Vec<AlgebraicNumber>),
}

enum Check {
    NoMatch(f64),
    Overlap,
}

fn dyadic_rational(d: &Dyadic) -> BigRational {
    d.to_rational()
}

fn box_gap(a: &ComplexEnclosure, b: &ComplexEnclosure) -> f64 {
    let gap = |x: &Interval, y: &Interval| {
        let g1 = (y.lo_f64() - x.hi_f64()).max(0.0);
        let g2 = (x.lo_f64() - y.hi_f64()).max(0.0);
        g1.max(g2)
    };
    gap(&a.re, &b.re).hypot(gap(&a.im, &b.im))
}

fn check_candidates(fz: &ComplexEnclosure, cands: &Candidates, bits: u32) -> CliResult<Check> {
    match cands {
        Candidates::Rational(h) => {
            if !fz.im.contains_zero() {
                return Ok(Check::NoMatch(fz.im.mig().to_f64()));
            }
            let (inside, gap) = rational_gap(&dyadic_rational(fz.re.lo()), &dyadic_rational(fz.re.hi()), h);
            if inside {
                Ok(Check::Overlap)
            } else {
                Ok(Check::NoMatch(num_traits::ToPrimitive::to_f64(&gap).unwrap_or(f64::INFINITY)))
            }
        }
        Candidates::Algebraic(list) => {
            let mut best = f64::INFINITY;
            for c in list {
                let mut c = c.clone();
                if c.root_box.overlaps(fz) {
                    c = c.refine(bits)?;
                    if c.root_box.overlaps(fz) {
                        return Ok(Check::Overlap);
                    }
                }
                best = best.min(box_gap(&c.root_box, fz));
            }
            Ok(Check::NoMatch(best))
        }
    }
}

struct Context<'a> {
    cfg: &'a Resolved,
    r_h: Interval,
    /// `d log(2H)`: Liouville range for `log |y|`.
    liouville: Interval,
    /// `(d + 1) log(2H)`.
    cutoff_floor: Interval,
    candidates: Candidates,
    max_bits: u32,
}

fn classify(z: &AlgebraicNumber, ctx: &Context<'_>) -> PointRecord {
    let mut bits = ctx.cfg.prec;
    loop {
        match classify_at(z, ctx, bits) {
            Ok(Some(rec)) => return rec,
            Ok(None) | Err(_) if bits * 2 <= ctx.max_bits => {
                bits *= 2;
            }
            Ok(None) | Err(_) => {
                // unresolved at the ceiling: kept as a possible point
                let last_fz = z
                    .refine(bits)
                    .ok()
                    .and_then(|zb| eval_product(&ctx.cfg.spec, &zb.root_box, bits).ok())
                    .map(|v| v.value);
                return PointRecord {
                    z: z.clone(),
                    classification: Classification::TentativeMatch,
                    fz: last_fz,
                    gap: Some(0.0),
                    bits,
                };
            }
        }
    }
}

/// `Ok(None)` means undecided at this precision.
fn classify_at(z: &AlgebraicNumber, ctx: &Context<'_>, bits: u32) -> CliResult<Option<PointRecord>> {
    let zb = if bits == ctx.cfg.prec && z.root_box.width_f64() < 1e-30 {
        z.clone()
    } else {
        z.refine(bits)?
    };
    let record = |classification, fz: Option<ComplexEnclosure>, gap: Option<f64>| {
        Some(PointRecord {
            z: z.clone(),
            classification,
            fz,
            gap,
            bits,
        })
    };
    match in_sector(&zb.root_box, &ctx.cfg.params.phi) {
        SectorPosition::Inside => return Ok(record(Classification::ExcludedSector, None, None)),
        SectorPosition::Undecided if bits * 2 <= ctx.max_bits => return Ok(None),
        // on a boundary ray to working precision: treated as outside
        _ => {}
    }
    let fz = eval_product(&ctx.cfg.spec, &zb.root_box, bits)?.value;
    let abs = fz.abs();
    if abs.is_positive() {
        let log_abs = elementary::ln(&abs).unwrap();
        if ctx.r_h.certainly_lt(&zb.root_box.abs()) && ctx.cutoff_floor.certainly_le(&log_abs) {
            let margin = (&log_abs - &ctx.cutoff_floor).lo_f64();
            return Ok(record(Classification::ExcludedGrowthCutoff, Some(fz), Some(margin)));
        }
        // a nonzero algebraic y of degree <= d and height <= H has
        // (2H)^-d <= |y| <= (2H)^d
        if ctx.liouville.certainly_lt(&log_abs) {
            let margin = (&log_abs - &ctx.liouville).lo_f64();
            return Ok(record(Classification::ExcludedLiouville, Some(fz), Some(margin)));
        }
        if log_abs.certainly_lt(&-&ctx.liouville) {
            let margin = (&-&ctx.liouville - &log_abs).lo_f64();
            return Ok(record(Classification::ExcludedLiouville, Some(fz), Some(margin)));
        }
    }
    match check_candidates(&fz, &ctx.candidates, bits)? {
        Check::NoMatch(gap) => Ok(record(Classification::CandidateCheckedNoMatch, Some(fz), Some(gap))),
        Check::Overlap => Ok(None),
    }
}

fn height_integer_cap(h: &HeightBound) -> BigInt {
    h.enclosure(128).hi().floor()
}

pub fn run_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> CliResult<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CliError::Other(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Enumerate in `workers` shards and merge into emission order.
pub fn enumerate_parallel(cfg: &Resolved, d: usize, h: &HeightBound) -> CliResult<Vec<AlgebraicNumber>> {
    let workers = cfg.raw.workers;
    let parts: Vec<Result<Vec<AlgebraicNumber>, Error>> = run_pool(workers, || {
        (0..workers)
            .into_par_iter()
            .map(|index| {
                let opts = EnumerationOptions {
                    budget: cfg.raw.budget.enumeration as u128,
                    precision_bits: cfg.prec,
                    shard: Shard { index, count: workers },
                };
                enumerate_algebraic(d, h, &opts)
            })
            .collect()
    })?;
    let parts = parts.into_iter().collect::<Result<Vec<_>, Error>>()?;
    Ok(merge_shards(parts))
}

pub fn cmd_count_points(cfg: &Resolved) -> CliResult<CountOutput> {
    let start = Instant::now();
    let p = &cfg.params;
    let prec = cfg.prec;
    let d = p.d as usize;
    let inputs = enumerate_parallel(cfg, d, &p.h)?;
    let (_, r_h) = cutoff_radius(p, prec);
    let log_2h = &p.h.log_enclosure(prec) + &elementary::ln2(prec);
    let candidates = if d == 1 {
        Candidates::Rational(height_integer_cap(&p.h))
    } else {
        let mut list = inputs.clone();
        list.sort_by(|a, b| a.root_box.re.mid_f64().total_cmp(&b.root_box.re.mid_f64()));
        Candidates::Algebraic(list)
    };
    let ctx = Context {
        cfg,
        r_h: r_h.clone(),
        liouville: &Interval::from_i64(d as i64) * &log_2h,
        cutoff_floor: &Interval::from_i64(d as i64 + 1) * &log_2h,
        candidates,
        max_bits: (prec * 8).min(PRECISION_CEILING),
    };
    let records: Vec<PointRecord> = run_pool(cfg.raw.workers, || inputs.par_iter().map(|z| classify(z, &ctx)).collect())?;
    let eta = &cs_eta(cfg);
    let counts: Vec<(String, usize)> = Classification::ALL
        .iter()
        .map(|c| (c.as_str().to_string(), records.iter().filter(|r| r.classification == *c).count()))
        .collect();
    let tentative = records.iter().filter(|r| r.classification == Classification::TentativeMatch).count();
    // matches are never certified: transcendence is out of reach numerically
    let confirmed = 0;
    let log_h = p.h.log_f64();
    let mult = num_traits::ToPrimitive::to_f64(&cfg.multipliers.bound).unwrap();
    let eta_f = num_traits::ToPrimitive::to_f64(eta).unwrap();
    let bound_log10 = mult.log10() + eta_f * log_h.log10();
    let bound_value = 10f64.powf(bound_log10);
    let ratio = (confirmed + tentative) as f64 / bound_value;
    let northcott = BigInt::from(candidate_count(d, &p.h)) * BigInt::from(d);
    let summary = CountSummary {
        csv_schema: CSV_SCHEMA_VERSION,
        d: p.d,
        h: cfg.raw.theorem.h.clone(),
        enumerated: records.len(),
        northcott_cap: northcott.to_string(),
        counts,
        confirmed,
        tentative,
        eta: eta.to_string(),
        bound_multiplier: cfg.multipliers.bound.to_string(),
        bound_log10,
        bound_value,
        ratio,
        r_h: r_h.mid_f64(),
        runtime_ms: start.elapsed().as_millis(),
    };
    Ok(CountOutput { records, summary })
}

fn cs_eta(cfg: &Resolved) -> BigRational {
    algpoints::constants::exponents(&cfg.params.rho, &cfg.params.lambda).eta
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn farey_examples() {
        let (a, b) = farey_neighbors(&q(1, 3), &BigInt::from(2));
        assert_eq!((a, b), (q(0, 1), q(1, 2)));
        let (a, b) = farey_neighbors(&q(355, 113), &BigInt::from(100));
        assert_eq!((a.clone(), b.clone()), (q(311, 99), q(22, 7)));
        assert!(a < q(355, 113) && q(355, 113) < b);
        let (a, b) = farey_neighbors(&q(2, 5), &BigInt::from(7));
        assert_eq!((a, b), (q(2, 5), q(2, 5)));
    }

    #[test]
    fn rational_gap_examples() {
        let h = BigInt::from(4);
        // sinh(pi/2)/(pi/2) = 1.4706...: nearest height-4 rationals 4/3, 3/2
        let (inside, gap) = rational_gap(&q(14706, 10000), &q(14707, 10000), &h);
        assert!(!inside);
        assert_eq!(gap, q(3, 2) - q(14707, 10000));
        assert!(rational_gap(&q(-1, 3), &q(-1, 4), &h).0);
        assert!(rational_gap(&q(399, 100), &q(401, 100), &h).0);
        assert!(!rational_gap(&q(41, 10), &q(42, 10), &h).0);
        assert!(!rational_gap(&q(-42, 10), &q(-41, 10), &h).0);
    }
}
