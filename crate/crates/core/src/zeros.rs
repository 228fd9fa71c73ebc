//! Zero counting for `G(z) = P(z, f(z))`: the Jensen zero-count bound, the
//! Boutroux–Cartan disk cover, the reciprocal decomposition of `P` and the
//! anchor search that supplies a center with `|G| >= 1`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{elementary, ComplexEnclosure, Dyadic, Interval};
use crate::auxpoly::IntPolynomial2;
use crate::constants::ConstantSet;
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::products::{log_max_modulus, ZeroSequenceSpec};
use crate::roots::isolate_roots;

/// Certified evaluator of an analytic function on complex boxes.
pub type Evaluator<'a> = dyn Fn(&ComplexEnclosure) -> Result<ComplexEnclosure> + 'a;

/// Upper bound for `n(r)`, the number of zeros in `|z - c| <= r`.
#[derive(Clone, Debug)]
pub struct JensenBound {
    /// `log(M / |G(c)|) / log(R / r)` with `M` a certified upper bound for
    /// `max |G|` on `|z - c| = R`.
    pub bound: Interval,
    pub max_modulus_upper: Interval,
    pub center_abs: Interval,
    pub evaluations: usize,
}

const CIRCLE_START_ARCS: usize = 32;
const CIRCLE_MAX_EVALS: usize = 20_000;

/// Certified upper bound for `max |g|` on the circle `|z - c| = radius`,
/// with the best sampled lower value and the number of evaluations.
pub fn circle_max(
    g: &Evaluator<'_>,
    center: &ComplexEnclosure,
    radius: &Interval,
    prec: u32,
) -> Result<(Interval, usize)> {
    let two_pi = elementary::pi(prec).mul_pow2(1);
    let arc_box = |a: &Dyadic, b: &Dyadic| -> Result<(Interval, Interval)> {
        let theta = Interval::new(a.clone(), b.clone(), prec);
        let mid = Interval::point(theta.mid()).with_prec(prec);
        let (s, c) = elementary::sin_cos(&mid);
        let on_circle = center + &ComplexEnclosure::new(radius * &c, radius * &s);
        // the arc lies within r * rad(theta) of its midpoint in each axis
        let spread = (radius * &Interval::point(theta.rad())).hi().clone();
        let arc = on_circle.inflate(&spread);
        let upper = g(&arc)?.abs();
        let lower = g(&on_circle)?.abs();
        Ok((upper, lower))
    };
    // arcs as dyadic angle intervals; the last one ends at an upper bound of
    // 2 pi so the union covers the circle
    let end = two_pi.hi().clone();
    let step = end.mul_round(&Dyadic::pow2(-5), prec, crate::arith::dyadic::Round::Up);
    let mut arcs: Vec<(Dyadic, Dyadic)> = (0..CIRCLE_START_ARCS)
        .map(|i| {
            let a = step.mul_exact(&Dyadic::from_i64(i as i64));
            let b = if i + 1 == CIRCLE_START_ARCS {
                end.clone()
            } else {
                step.mul_exact(&Dyadic::from_i64(i as i64 + 1))
            };
            (a, b)
        })
        .collect();
    let mut evals = 0;
    loop {
        let mut results = Vec::with_capacity(arcs.len());
        for (a, b) in &arcs {
            results.push(arc_box(a, b)?);
            evals += 2;
        }
        let best_lower = results.iter().map(|(_, l)| l.lo().clone()).max().unwrap();
        let upper = results.iter().map(|(u, _)| u.hi().clone()).max().unwrap();
        // stop once every arc is within 1/16 of the sampled maximum; this costs
        // at most log(17/16) in the numerator of a Jensen bound
        let target = best_lower.add_round(&best_lower.mul_pow2(-4), prec, crate::arith::dyadic::Round::Up);
        let split: Vec<usize> = (0..arcs.len()).filter(|&i| results[i].0.hi() > &target).collect();
        if split.is_empty() || evals + 4 * split.len() > CIRCLE_MAX_EVALS {
            return Ok((Interval::new(best_lower.min(upper.clone()), upper, prec), evals));
        }
        let mut next = Vec::with_capacity(arcs.len() + split.len());
        for (i, (a, b)) in arcs.into_iter().enumerate() {
            if split.binary_search(&i).is_ok() {
                let m = a.add_exact(&b).mul_pow2(-1);
                next.push((a, m.clone()));
                next.push((m, b));
            } else {
                next.push((a, b));
            }
        }
        arcs = next;
    }
}

/// Jensen zero-count bound `n(r, 1/G) <= log(M(R, G)/|G(c)|) / log(R/r)`
/// for zeros in `|z - c| <= r`.
pub fn jensen_zero_bound(
    g: &Evaluator<'_>,
    center: &ComplexEnclosure,
    r: &Interval,
    big_r: &Interval,
    prec: u32,
) -> Result<JensenBound> {
    if !r.is_positive() || !r.certainly_lt(big_r) {
        return Err(Error::InvalidInput("Jensen bound needs 0 < r < R".into()));
    }
    let g0 = g(center)?;
    let center_abs = g0.abs();
    if !center_abs.is_positive() {
        return Err(Error::ZeroAtOrigin);
    }
    let (m, evaluations) = circle_max(g, center, big_r, prec)?;
    let upper = Interval::point(m.hi().clone()).with_prec(prec);
    let num = elementary::ln(&upper).expect("M >= |G(c)| > 0") - elementary::ln(&center_abs).unwrap();
    let den = elementary::ln(&big_r.checked_div(r).unwrap()).unwrap();
    let bound = num.checked_div(&den).unwrap();
    Ok(JensenBound {
        bound,
        max_modulus_upper: m,
        center_abs,
        evaluations,
    })
}

/// Jensen bound from logarithmic bounds: `(log M_up - log |G(c)|_lo) / log(R/r)`.
pub fn jensen_from_logs(log_m_upper: &Interval, log_center_lower: &Interval, ratio: &Interval) -> Interval {
    let num = Interval::point(log_m_upper.hi().clone()) - Interval::point(log_center_lower.lo().clone());
    num.with_prec(log_m_upper.prec().max(64))
        .checked_div(&elementary::ln(ratio).expect("R/r > 1"))
        .unwrap()
}

/// Disks `(center, radius)` covering every root.
#[derive(Clone, Debug)]
pub struct DiskCover {
    pub disks: Vec<(ComplexEnclosure, BigRational)>,
    pub total_radius: BigRational,
}

impl DiskCover {
    pub fn contains(&self, z: &ComplexEnclosure) -> bool {
        self.disks.iter().any(|(c, r)| {
            let d = (z - c).abs();
            d.certainly_le(&Interval::from_rational(r, 128))
        })
    }

    fn maybe_contains(&self, z: (f64, f64)) -> bool {
        self.disks.iter().any(|(c, r)| {
            let (cx, cy) = c.mid_f64();
            let rr = r.to_f64().unwrap();
            (z.0 - cx).hypot(z.1 - cy) <= rr * (1.0 + 1e-9) + 1e-12
        })
    }
}

/// Rational upper bound for `e` with relative slack `1e-12`.
fn e_upper() -> BigRational {
    BigRational::new(BigInt::from(2_718_281_828_462_i64), BigInt::from(1_000_000_000_000_i64))
}

fn dist(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).hypot(a.1 - b.1)
}

/// Candidate centers of minimal enclosing circles: points, pair midpoints
/// and circumcenters of acute triangles.
fn candidate_centers(pts: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = pts.to_vec();
    let n = pts.len();
    for i in 0..n {
        for j in i + 1..n {
            out.push(((pts[i].0 + pts[j].0) / 2.0, (pts[i].1 + pts[j].1) / 2.0));
            for k in j + 1..n {
                let (a, b, c) = (pts[i], pts[j], pts[k]);
                let sq = |p: (f64, f64), q: (f64, f64)| (p.0 - q.0).powi(2) + (p.1 - q.1).powi(2);
                let (ab, bc, ca) = (sq(a, b), sq(b, c), sq(c, a));
                // obtuse or right triangles are enclosed by their longest side
                if ab + bc <= ca || bc + ca <= ab || ca + ab <= bc {
                    continue;
                }
                // relative to a, for conditioning
                let (bx, by) = (b.0 - a.0, b.1 - a.1);
                let (cx, cy) = (c.0 - a.0, c.1 - a.1);
                let d = 2.0 * (bx * cy - by * cx);
                if d == 0.0 {
                    continue;
                }
                let (nb, nc) = (bx * bx + by * by, cx * cx + cy * cy);
                let ux = a.0 + (cy * nb - by * nc) / d;
                let uy = a.1 + (bx * nc - cx * nb) / d;
                out.push((ux, uy));
            }
        }
    }
    out
}

/// Boutroux–Cartan cover with budget `e`: at most `deg p` disks of total
/// radius at most `2e` (plus root-enclosure slack) outside which
/// `|p(z) / lc(p)| > 1`.
///
/// Greedy construction on root midpoints with unit `u = e/n + 2 delta`,
/// `delta` the largest root-box radius: repeatedly take the largest `k` for
/// which a disk of radius `k u` holds `k` remaining roots, remove them and
/// keep that disk with doubled radius. Outside the union every disk
/// `B(z, k e/n)` holds fewer than `k` roots, so `|p/lc| > n! (e/n)^n > 1`.
pub fn cartan_cover(p: &IntPolynomial) -> Result<DiskCover> {
    let n = match p.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(Error::InvalidInput("Cartan cover needs degree >= 1".into())),
    };
    let iso = isolate_roots(p, 64)?;
    let mut pts: Vec<(f64, f64)> = Vec::with_capacity(n);
    let mut delta = Dyadic::zero();
    for root in &iso.roots {
        let half = root.enclosure.width().mul_pow2(-1);
        // box half-width bounds the distance per axis; sqrt(2) < 3/2
        let r = half.add_exact(&half.mul_pow2(-1));
        delta = delta.max(r);
        for _ in 0..root.multiplicity {
            pts.push(root.enclosure.mid_f64());
        }
    }
    let delta_q = delta.to_rational() + BigRational::new(BigInt::one(), BigInt::from(1u64 << 62));
    let unit = e_upper() / BigRational::from_integer(n.into()) + &delta_q * BigRational::from_integer(2.into());
    let u = unit.to_f64().unwrap();
    let mut remaining: Vec<(f64, f64)> = pts;
    let mut disks = Vec::new();
    let mut total = BigRational::zero();
    while !remaining.is_empty() {
        let mut best: Option<(usize, (f64, f64))> = None;
        for c in candidate_centers(&remaining) {
            let mut ds: Vec<f64> = remaining.iter().map(|&q| dist(q, c)).collect();
            ds.sort_by(|a, b| a.partial_cmp(b).unwrap());
            // largest k with the k-th nearest point within k u
            let k = (1..=ds.len()).rev().find(|&k| ds[k - 1] <= k as f64 * u * (1.0 + 1e-12));
            if let Some(k) = k {
                if best.is_none_or(|(bk, _)| k > bk) {
                    best = Some((k, c));
                }
            }
        }
        let (k, c) = best.expect("a single point always qualifies");
        let mut order: Vec<usize> = (0..remaining.len()).collect();
        order.sort_by(|&a, &b| dist(remaining[a], c).partial_cmp(&dist(remaining[b], c)).unwrap());
        let mut taken: Vec<usize> = order[..k].to_vec();
        taken.sort_unstable();
        for &i in taken.iter().rev() {
            remaining.remove(i);
        }
        let radius = BigRational::from_integer((2 * k).into()) * &unit;
        total += &radius;
        let center = ComplexEnclosure::point(
            Dyadic::from_f64(c.0).unwrap_or_else(Dyadic::zero),
            Dyadic::from_f64(c.1).unwrap_or_else(Dyadic::zero),
        );
        disks.push((center, radius));
    }
    Ok(DiskCover {
        disks,
        total_radius: total,
    })
}

/// Outcome of sampling `|p / lc| > 1` outside a cover.
#[derive(Clone, Debug)]
pub struct CoverReport {
    pub samples: usize,
    pub failures: usize,
    /// Smallest sampled `|p / lc|`.
    pub min_abs: f64,
    pub first_failure: Option<(f64, f64)>,
}

impl CoverReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Seeded sampling outside the cover: half the samples lie just outside a
/// random disk, the rest uniformly in a box around the cover.
pub fn verify_cover(p: &IntPolynomial, cover: &DiskCover, sample_count: usize, seed: u64) -> CoverReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lc = Interval::from_bigint(&p.leading()).abs();
    let mut extent: f64 = 1.0;
    for (c, r) in &cover.disks {
        let (x, y) = c.mid_f64();
        extent = extent.max(x.abs().max(y.abs()) + r.to_f64().unwrap());
    }
    extent += 3.0;
    let mut report = CoverReport {
        samples: 0,
        failures: 0,
        min_abs: f64::INFINITY,
        first_failure: None,
    };
    let mut attempts = 0;
    while report.samples < sample_count && attempts < sample_count * 50 {
        attempts += 1;
        let z = if report.samples.is_multiple_of(2) && !cover.disks.is_empty() {
            let (c, r) = &cover.disks[rng.gen_range(0..cover.disks.len())];
            let (cx, cy) = c.mid_f64();
            let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let rr = r.to_f64().unwrap() * (1.0 + rng.gen_range(1e-6..1e-2));
            (cx + rr * t.cos(), cy + rr * t.sin())
        } else {
            (rng.gen_range(-extent..extent), rng.gen_range(-extent..extent))
        };
        if cover.maybe_contains(z) {
            continue;
        }
        report.samples += 1;
        // samples are exact dyadics; 64 bits only widens the certified |p|
        let ze = ComplexEnclosure::from_f64(z.0, z.1).with_prec(64);
        let v = p.eval(&ze).abs().checked_div(&lc).unwrap();
        report.min_abs = report.min_abs.min(v.lo_f64());
        if v.lo() > &Dyadic::one() {
            continue;
        }
        report.failures += 1;
        report.first_failure.get_or_insert(z);
    }
    report
}

/// `P~ = Y^k P(X, 1/Y) = R(X) + Y Q~(X, Y)` with `k` the `Y`-degree of `P`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProofDecomposition {
    pub k: u32,
    pub p_tilde: IntPolynomial2,
    pub r_part: IntPolynomial,
    pub q_part: IntPolynomial2,
    pub q_tilde: IntPolynomial2,
}

pub fn decompose(p: &IntPolynomial2) -> Result<ProofDecomposition> {
    let k = p.y_degree().unwrap_or(0);
    if k == 0 {
        return Err(Error::YIndependent);
    }
    let p_tilde = IntPolynomial2::new(p.terms().map(|(&(i, j), c)| ((i, k - j), c.clone())).collect());
    let r_part = IntPolynomial::new(p_tilde.y_coefficient(0));
    if r_part.is_zero() {
        return Err(Error::DegenerateDecomposition);
    }
    let q_part = IntPolynomial2::new(p_tilde.terms().filter(|((_, j), _)| *j > 0).map(|(k, c)| (*k, c.clone())).collect());
    let q_tilde = IntPolynomial2::new(q_part.terms().map(|(&(i, j), c)| ((i, j - 1), c.clone())).collect());
    Ok(ProofDecomposition {
        k,
        p_tilde,
        r_part,
        q_part,
        q_tilde,
    })
}

/// Default number of anchor radii beyond `floor(T)`.
pub const ANCHOR_EXTRA: usize = 14;

/// An accepted anchor `z_i = -r_i`.
#[derive(Clone, Debug)]
pub struct AnchorResult {
    pub index: usize,
    pub radius: BigInt,
    pub point: ComplexEnclosure,
    /// Certified enclosure whose lower end bounds `log |G(z_i)|` from below.
    pub log_lower_bound: Interval,
    /// `|R(z_i)|`.
    pub r_abs: Interval,
    /// Upper bound for `|Q(z_i, 1/f(z_i))|`.
    pub q_upper: Interval,
    /// `log M(r_i, f)`.
    pub log_max_f: Interval,
    /// Reasons for each rejected radius before this one.
    pub rejected: Vec<String>,
}

impl AnchorResult {
    pub fn lower_bound_at_least_one(&self) -> bool {
        self.log_lower_bound.lo() >= &Dyadic::zero()
    }
}

fn log_upper_of(v: &BigInt, prec: u32) -> Interval {
    if v.is_zero() {
        return Interval::zero();
    }
    elementary::ln(&Interval::from_bigint(v).with_prec(prec)).unwrap()
}

pub fn find_anchor(p: &IntPolynomial2, spec: &ZeroSequenceSpec, cs: &ConstantSet, prec: u32) -> Result<AnchorResult> {
    find_anchor_with(p, spec, cs, ANCHOR_EXTRA, prec)
}

/// Scan `r_i = floor(anchor_base) + i` for `i = 1..=floor(T) + extra` with
/// `z_i = -r_i`, where `|f(z_i)| = M(r_i, f)` because the zeros are
/// positive. Accept the first `i` with `|R(z_i)| >= 1`,
/// `|P~(z_i, 1/f(z_i))| >= 1/2` and `|G(z_i)| >= 1`, all certified.
pub fn find_anchor_with(
    p: &IntPolynomial2,
    spec: &ZeroSequenceSpec,
    cs: &ConstantSet,
    extra: usize,
    prec: u32,
) -> Result<AnchorResult> {
    let dec = decompose(p)?;
    let base = cs.anchor_base.lo().floor().max(BigInt::zero());
    let count = cs.t.lo().floor().to_usize().unwrap_or(0) + extra;
    let len_q = log_upper_of(&dec.q_tilde.length(), prec);
    let deg_q = dec.q_tilde.x_degree().unwrap_or(0);
    let half = Interval::from_rational(&BigRational::new(1.into(), 2.into()), prec);
    let mut rejected = Vec::new();
    for i in 1..=count {
        let r = &base + BigInt::from(i);
        let ri = Interval::from_bigint(&r).with_prec(prec);
        let z = ComplexEnclosure::real(-ri.clone());
        let r_abs = dec.r_part.eval(&z).abs();
        if !Interval::one().certainly_le(&r_abs) {
            rejected.push(format!("r = {r}: |R(-r)| = {:.3e} not certified >= 1", r_abs.mid_f64()));
            continue;
        }
        let log_m = log_max_modulus(spec, &ri, prec)?;
        if !log_m.is_positive() {
            rejected.push(format!("r = {r}: M(r, f) not certified > 1"));
            continue;
        }
        // |Q(z, w)| = |w| |Q~(z, w)| <= |w| * length(Q~) * r^deg with |w| <= 1
        let q_upper = if dec.q_tilde.is_zero() {
            Interval::zero()
        } else {
            let log_q = &(&len_q + &(&Interval::from_i64(deg_q as i64) * &elementary::ln(&ri).unwrap())) - &log_m;
            elementary::exp(&Interval::point(log_q.hi().clone()).with_prec(prec))
        };
        let p_tilde_lower = &r_abs - &q_upper;
        if !half.certainly_le(&p_tilde_lower) {
            rejected.push(format!("r = {r}: |P~| lower bound {:.3e} below 1/2", p_tilde_lower.lo_f64()));
            continue;
        }
        let log_lower = &(&Interval::from_i64(dec.k as i64) * &log_m) + &elementary::ln(&p_tilde_lower).unwrap();
        let log_lower = Interval::point(log_lower.lo().clone()).with_prec(prec);
        if log_lower.lo() < &Dyadic::zero() {
            rejected.push(format!("r = {r}: |G(z)| not certified >= 1"));
            continue;
        }
        return Ok(AnchorResult {
            index: i,
            radius: r,
            point: z,
            log_lower_bound: log_lower,
            r_abs,
            q_upper,
            log_max_f: log_m,
            rejected,
        });
    }
    Err(Error::NoAnchorFound {
        tried: count,
        rejected,
    })
}

/// Zero-count bound for `G(z) = P(z, f(z))` in `B(0, R_H)`.
#[derive(Clone, Debug)]
pub struct GraphZeroBound {
    pub anchor: Option<AnchorResult>,
    /// Jensen radius `s` with `B(0, R_H) ⊂ B(z_i, s)`.
    pub s: Interval,
    /// Upper bound for `log max |G|` on `|z - z_i| = 3s`.
    pub log_max_g: Interval,
    /// `log(M(3s, G)/|G(z_i)|) / log 3`.
    pub bound: Interval,
    /// The same numerator over `log 2`.
    pub bound_log2: Interval,
    /// `m_b (log H)^eta`.
    pub ceiling: Interval,
}

impl GraphZeroBound {
    /// Largest integer count compatible with the bound.
    pub fn count_upper(&self) -> BigInt {
        self.bound.hi().floor().max(BigInt::zero())
    }
}

pub fn count_graph_zeros(
    p: &IntPolynomial2,
    spec: &ZeroSequenceSpec,
    cs: &ConstantSet,
    prec: u32,
) -> Result<GraphZeroBound> {
    if p.y_degree().unwrap_or(0) == 0 && p.x_degree().unwrap_or(0) == 0 {
        if p.is_zero() {
            return Err(Error::InvalidInput("P is the zero polynomial".into()));
        }
        // nonzero constant: no zeros
        return Ok(GraphZeroBound {
            anchor: None,
            s: Interval::zero(),
            log_max_g: Interval::zero(),
            bound: Interval::zero(),
            bound_log2: Interval::zero(),
            ceiling: cs.bound.clone(),
        });
    }
    let anchor = find_anchor(p, spec, cs, prec)?;
    let ri = Interval::from_bigint(&anchor.radius).with_prec(prec);
    let needed = &ri + &cs.r_h;
    let s = match &cs.s {
        Some(s) => {
            if !needed.certainly_le(s) {
                return Err(Error::ContainmentFailed {
                    needed: needed.hi_f64(),
                    s: s.lo_f64(),
                });
            }
            s.clone()
        }
        None => Interval::point(needed.hi().clone()).with_prec(prec),
    };
    // |z - z_i| = 3s lies in |z| <= r_i + 3s =: rho, where
    // |G| <= length(P) rho^degX max(1, M(rho, f))^k
    let rho = &ri + &(&Interval::from_i64(3) * &s);
    let log_f = log_max_modulus(spec, &rho, prec)?;
    let log_f_pos = log_f.max(&Interval::zero());
    let k = p.y_degree().unwrap_or(0) as i64;
    let log_max_g = &(&log_upper_of(&p.length(), prec)
        + &(&Interval::from_i64(p.x_degree().unwrap_or(0) as i64) * &elementary::ln(&rho).unwrap()))
        + &(&Interval::from_i64(k) * &log_f_pos);
    let bound = jensen_from_logs(&log_max_g, &anchor.log_lower_bound, &Interval::from_i64(3).with_prec(prec));
    let bound_log2 = jensen_from_logs(&log_max_g, &anchor.log_lower_bound, &Interval::from_i64(2).with_prec(prec));
    Ok(GraphZeroBound {
        anchor: Some(anchor),
        s,
        log_max_g,
        bound,
        bound_log2,
        ceiling: cs.bound.clone(),
    })
}

/// Polynomial `P(z, f(z))` as a certified evaluator, with `f` evaluated
/// through the product.
pub fn graph_evaluator<'a>(p: &'a IntPolynomial2, spec: &'a ZeroSequenceSpec, prec: u32) -> impl Fn(&ComplexEnclosure) -> Result<ComplexEnclosure> + 'a {
    move |z: &ComplexEnclosure| {
        let f = crate::products::eval_product(spec, z, prec)?.value;
        Ok(p.eval(z, &f))
    }
}

/// Monomials of a polynomial in `X` only, as a bivariate polynomial.
pub fn lift(p: &IntPolynomial) -> IntPolynomial2 {
    let mut map = BTreeMap::new();
    for (i, c) in p.coeffs().iter().enumerate() {
        map.insert((i as u32, 0), c.clone());
    }
    IntPolynomial2::new(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{masser_parameters, Multipliers, TheoremParams};
    use crate::heights::HeightBound;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn jensen_examples() {
        let g = poly(&[2, -3, 1]);
        let eval = |z: &ComplexEnclosure| Ok(g.eval(z));
        let b = jensen_zero_bound(&eval, &ComplexEnclosure::zero(), &Interval::from_i64(3), &Interval::from_i64(6), 128)
            .unwrap();
        let want = (56.0f64 / 2.0).ln() / 2f64.ln();
        assert!(b.bound.hi_f64() >= want - 1e-12);
        // stopping tolerance 1/16 on M costs at most log2(17/16)
        assert!(b.bound.hi_f64() < want + (17.0f64 / 16.0).log2());
        let five = |_: &ComplexEnclosure| Ok(ComplexEnclosure::from_i64(5));
        let b = jensen_zero_bound(&five, &ComplexEnclosure::zero(), &Interval::one(), &Interval::from_i64(2), 64).unwrap();
        assert!(b.bound.mid_f64().abs() < 1e-12);
        let z = |z: &ComplexEnclosure| Ok(z.clone());
        assert_eq!(
            jensen_zero_bound(&z, &ComplexEnclosure::zero(), &Interval::one(), &Interval::from_i64(2), 64).unwrap_err(),
            Error::ZeroAtOrigin
        );
    }

    #[test]
    fn cartan_examples() {
        let two_e = 2.0 * std::f64::consts::E + 1e-9;
        let z = poly(&[0, 1]);
        let c = cartan_cover(&z).unwrap();
        assert_eq!(c.disks.len(), 1);
        let r = c.disks[0].1.to_f64().unwrap();
        assert!((1.0..=two_e).contains(&r));
        assert!(verify_cover(&z, &c, 10_000, 1).passed());

        let z5 = poly(&[0, -5, 1]);
        let c = cartan_cover(&z5).unwrap();
        assert!(c.total_radius.to_f64().unwrap() <= two_e);
        assert!(verify_cover(&z5, &c, 10_000, 2).passed());

        let tenth = (0..10).fold(poly(&[1]), |acc, _| &acc * &poly(&[-1, 1]));
        let c = cartan_cover(&tenth).unwrap();
        assert_eq!(c.disks.len(), 1);
        assert!(c.disks[0].1.to_f64().unwrap() >= 1.0);
        assert!(verify_cover(&tenth, &c, 2_000, 3).passed());
    }

    #[test]
    fn tiny_cover_fails_verification() {
        let z = poly(&[0, 1]);
        let cover = DiskCover {
            disks: vec![(ComplexEnclosure::zero(), BigRational::new(1.into(), 100.into()))],
            total_radius: BigRational::new(1.into(), 100.into()),
        };
        let rep = verify_cover(&z, &cover, 1_000, 4);
        assert!(rep.failures > 0);
    }

    #[test]
    fn decompose_examples() {
        let p = IntPolynomial2::from_terms(&[(1, 1, 1), (0, 0, 1)]);
        let d = decompose(&p).unwrap();
        assert_eq!(d.k, 1);
        assert_eq!(d.p_tilde, IntPolynomial2::from_terms(&[(1, 0, 1), (0, 1, 1)]));
        assert_eq!(d.r_part, poly(&[0, 1]));
        assert_eq!(d.q_part, IntPolynomial2::from_terms(&[(0, 1, 1)]));
        assert_eq!(d.q_tilde, IntPolynomial2::from_terms(&[(0, 0, 1)]));
        let d = decompose(&IntPolynomial2::from_terms(&[(0, 2, 1)])).unwrap();
        assert_eq!((d.k, d.r_part.clone()), (2, poly(&[1])));
        assert!(d.q_part.is_zero() && d.q_tilde.is_zero());
        assert_eq!(decompose(&IntPolynomial2::from_terms(&[(2, 0, 1)])).unwrap_err(), Error::YIndependent);
    }

    fn small_constants() -> ConstantSet {
        let params = TheoremParams {
            phi: elementary::pi(128).checked_div(&Interval::from_i64(3)).unwrap(),
            rho: BigRational::new(1.into(), 2.into()),
            lambda: BigRational::new(1.into(), 2.into()),
            mu: Interval::one(),
            d: 1,
            h: HeightBound::ExpOf(BigRational::new(11.into(), 10.into())),
        };
        let mut m = Multipliers::uniform(BigRational::new(1.into(), 2.into()));
        m.s = None;
        masser_parameters(&params, &m, 128)
    }

    #[test]
    fn anchor_for_xy_plus_one() {
        let spec = ZeroSequenceSpec::power_law(1, 2);
        let cs = small_constants();
        let p = IntPolynomial2::from_terms(&[(1, 1, 1), (0, 0, 1)]);
        let a = find_anchor(&p, &spec, &cs, 128).unwrap();
        assert!(a.lower_bound_at_least_one());
        let adversarial = (1..=40).fold(poly(&[1]), |acc, r| &acc * &poly(&[r, 1]));
        let mut q = lift(&adversarial);
        q = IntPolynomial2::new(q.terms().map(|(&(i, _), c)| ((i, 1), c.clone())).collect());
        assert!(matches!(find_anchor(&q, &spec, &cs, 128), Err(Error::NoAnchorFound { .. })));
        assert_eq!(find_anchor(&lift(&poly(&[0, 0, 1])), &spec, &cs, 128).unwrap_err(), Error::YIndependent);
    }

    #[test]
    fn graph_zeros_of_f_dominate_exact_count() {
        let spec = ZeroSequenceSpec::power_law(1, 2);
        let cs = small_constants();
        let b = count_graph_zeros(&IntPolynomial2::from_terms(&[(0, 1, 1)]), &spec, &cs, 128).unwrap();
        let exact = cs.r_h.hi_f64().sqrt().floor();
        assert!(b.bound.hi_f64() >= exact);
        let one = count_graph_zeros(&IntPolynomial2::from_terms(&[(0, 0, 1)]), &spec, &cs, 64).unwrap();
        assert_eq!(one.count_upper(), BigInt::zero());
    }
}
