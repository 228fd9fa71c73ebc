//! Certified isolation of the complex roots of integer polynomials.
//!
//! Approximations come from Aberth iteration (double precision first, then
//! multiprecision polishing). They are certified with Weierstrass inclusion
//! disks: for distinct approximations `c_i` of the roots of a square-free
//! polynomial of degree `n`, every root lies in the union of the disks
//! `|z - c_i| <= n |W_i|` where `W_i = p(c_i) / (a_n prod_{j != i} (c_i - c_j))`,
//! and a connected component of `m` disks holds exactly `m` roots. Pairwise
//! disjoint disks therefore isolate one root each.

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::arith::{ComplexEnclosure, Dyadic, Interval};
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// Highest working precision tried before giving up.
pub const PRECISION_CEILING: u32 = 4096;

#[derive(Clone, Debug)]
pub struct IsolatedRoot {
    pub enclosure: ComplexEnclosure,
    pub multiplicity: usize,
}

#[derive(Clone, Debug)]
pub struct RootIsolation {
    pub poly: IntPolynomial,
    pub roots: Vec<IsolatedRoot>,
}

impl RootIsolation {
    pub fn boxes(&self) -> impl Iterator<Item = &ComplexEnclosure> {
        self.roots.iter().map(|r| &r.enclosure)
    }

    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }
}

/// Isolate every distinct root of `p` with box widths at most
/// `2^-precision_bits * max(1, B)` where `B` is the Cauchy root bound.
///
/// Irrational roots get boxes of exactly that width, so raising the
/// precision never widens a box. If the boxes would overlap the precision is
/// doubled internally.
pub fn isolate_roots(p: &IntPolynomial, precision_bits: u32) -> Result<RootIsolation> {
    let deg = p.degree().unwrap_or(0);
    if deg == 0 {
        return Err(Error::InvalidInput(
            "root isolation needs a polynomial of degree >= 1".into(),
        ));
    }
    let scale = Dyadic::from_f64(p.cauchy_bound().max(1.0)).unwrap();
    let factors = p.square_free_factors();
    let mut bits = precision_bits.max(1);
    loop {
        if let Some(mut roots) = attempt(&factors, bits, &scale)? {
            roots.sort_by(|a, b| box_order(&a.enclosure, &b.enclosure));
            return Ok(RootIsolation {
                poly: p.clone(),
                roots,
            });
        }
        bits = bits.saturating_mul(2);
        if bits > PRECISION_CEILING {
            return Err(Error::PrecisionExhausted {
                bits,
                context: format!("separating root boxes of {p}"),
            });
        }
    }
}

fn attempt(
    factors: &[(IntPolynomial, usize)],
    bits: u32,
    scale: &Dyadic,
) -> Result<Option<Vec<IsolatedRoot>>> {
    let target = scale.mul_pow2(-(bits as i64));
    let mut roots = Vec::new();
    for (q, mult) in factors {
        for enclosure in square_free_boxes(q, bits, &target)? {
            roots.push(IsolatedRoot {
                enclosure,
                multiplicity: *mult,
            });
        }
    }
    Ok(pairwise_disjoint(roots.iter().map(|r| &r.enclosure)).then_some(roots))
}

/// Deterministic ordering of root boxes: by real midpoint, then imaginary.
pub fn box_order(a: &ComplexEnclosure, b: &ComplexEnclosure) -> std::cmp::Ordering {
    a.re.mid()
        .cmp(&b.re.mid())
        .then_with(|| a.im.mid().cmp(&b.im.mid()))
}

fn pairwise_disjoint<'a>(boxes: impl Iterator<Item = &'a ComplexEnclosure>) -> bool {
    let v: Vec<_> = boxes.collect();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i].overlaps(v[j]) {
                return false;
            }
        }
    }
    true
}

fn rational_box(q: &BigRational, prec: u32) -> ComplexEnclosure {
    ComplexEnclosure::from_rational(q, prec + 2)
}

/// Boxes of width `target` (exact rational roots get point-like boxes).
fn square_free_boxes(q: &IntPolynomial, bits: u32, target: &Dyadic) -> Result<Vec<ComplexEnclosure>> {
    let n = q.degree().unwrap_or(0);
    if n == 0 {
        return Ok(vec![]);
    }
    if n == 1 {
        let r = BigRational::new(-q.coeff(0), q.coeff(1));
        return Ok(vec![rational_box(&r, bits)]);
    }
    let bound = q.cauchy_bound().max(1.0);
    let mut approx = aberth_f64(q).map(|zs| {
        zs.into_iter()
            .map(|(re, im)| ComplexEnclosure::from_f64(re, im))
            .collect::<Vec<_>>()
    });
    // cancellation in q(c) costs about log2(sum |a_i| R^i) bits
    let radius = q.fujiwara_bound().min(bound).max(1.0);
    let cancel = q.height_norm().bits() as f64 + n as f64 * radius.log2() + (n as f64).log2();
    let mut work = (bits as f64 + 48.0 + cancel).min(PRECISION_CEILING as f64) as u32;
    let half = target.mul_pow2(-1);
    loop {
        let start = match approx.take() {
            Some(v) => v,
            None => circle_start(q, radius, work),
        };
        let polished = aberth_mp(q, start, work);
        if let Some(radii) = certify(q, &polished, work) {
            if radii.iter().all(|r| r.mul_pow2(2) <= *target) {
                return Ok(polished.iter().map(|c| c.inflate(&half)).collect());
            }
        }
        approx = Some(polished);
        work = work.saturating_mul(2);
        if work > PRECISION_CEILING {
            return Err(Error::PrecisionExhausted {
                bits: work,
                context: format!("isolating roots of {q}"),
            });
        }
    }
}

fn circle_start(q: &IntPolynomial, bound: f64, prec: u32) -> Vec<ComplexEnclosure> {
    let n = q.degree().unwrap();
    let r = bound.min(1e300) * 0.5 + 0.5;
    (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            ComplexEnclosure::from_f64(r * t.cos(), r * t.sin()).with_prec(prec)
        })
        .collect()
}

type C64 = (f64, f64);

fn cmul(a: C64, b: C64) -> C64 {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn cdiv(a: C64, b: C64) -> C64 {
    let d = b.0 * b.0 + b.1 * b.1;
    ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
}

fn horner_f64(c: &[f64], z: C64) -> (C64, C64) {
    let mut p = (0.0, 0.0);
    let mut dp = (0.0, 0.0);
    for &a in c.iter().rev() {
        dp = cmul(dp, z);
        dp = (dp.0 + p.0, dp.1 + p.1);
        p = cmul(p, z);
        p = (p.0 + a, p.1);
    }
    (p, dp)
}

/// Double-precision Aberth iteration; `None` if coefficients do not fit
/// or the iteration does not settle.
fn aberth_f64(q: &IntPolynomial) -> Option<Vec<C64>> {
    let n = q.degree()?;
    let lead = q.leading().to_f64()?;
    let mut c = Vec::with_capacity(n + 1);
    for a in q.coeffs() {
        let v = a.to_f64()? / lead;
        if !v.is_finite() {
            return None;
        }
        c.push(v);
    }
    let bound = q.fujiwara_bound();
    if !bound.is_finite() || bound > 1e150 {
        return None;
    }
    let r = bound * 0.5 + 0.1;
    let mut z: Vec<C64> = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            (r * t.cos(), r * t.sin())
        })
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = horner_f64(&c, z[i]);
            if p == (0.0, 0.0) {
                continue;
            }
            let ratio = cdiv(p, dp);
            let mut s = (0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let d = (z[i].0 - z[j].0, z[i].1 - z[j].1);
                    let inv = cdiv((1.0, 0.0), d);
                    s = (s.0 + inv.0, s.1 + inv.1);
                }
            }
            let rs = cmul(ratio, s);
            let w = cdiv(ratio, (1.0 - rs.0, -rs.1));
            if !w.0.is_finite() || !w.1.is_finite() {
                continue;
            }
            z[i] = (z[i].0 - w.0, z[i].1 - w.1);
            let scale = (z[i].0.hypot(z[i].1)).max(1.0);
            moved = moved.max(w.0.hypot(w.1) / scale);
        }
        if moved < 1e-14 {
            break;
        }
    }
    if z.iter().all(|v| v.0.is_finite() && v.1.is_finite()) {
        Some(z)
    } else {
        None
    }
}

/// Multiprecision Aberth polishing at `prec` bits; values are recentred to
/// their midpoints after every step.
fn aberth_mp(q: &IntPolynomial, start: Vec<ComplexEnclosure>, prec: u32) -> Vec<ComplexEnclosure> {
    let n = start.len();
    let dq = q.derivative();
    let mut z: Vec<ComplexEnclosure> = start.into_iter().map(|v| v.mid().with_prec(prec)).collect();
    let tol = Dyadic::pow2(-(prec as i64) + 8);
    for _ in 0..(8 + prec / 16) {
        let mut converged = true;
        for i in 0..n {
            let p = q.eval(&z[i]);
            let dp = dq.eval(&z[i]);
            let ratio = match p.checked_div(&dp) {
                Some(r) => r,
                None => {
                    converged = false;
                    continue;
                }
            };
            let mut s = ComplexEnclosure::zero().with_prec(prec);
            let mut ok = true;
            for j in 0..n {
                if j != i {
                    match (&z[i] - &z[j]).recip() {
                        Some(inv) => s = &s + &inv,
                        None => ok = false,
                    }
                }
            }
            if !ok {
                // coincident approximations: nudge apart
                let nudge = Dyadic::pow2(-(prec as i64) / 2);
                z[i] = &z[i] + &ComplexEnclosure::point(nudge.clone(), nudge);
                converged = false;
                continue;
            }
            let den = &ComplexEnclosure::one() - &(&ratio * &s);
            let w = match ratio.checked_div(&den) {
                Some(w) => w.mid(),
                None => ratio.mid(),
            };
            z[i] = (&z[i] - &w).mid().with_prec(prec);
            let scale = z[i].abs().mag().max(Dyadic::one());
            if w.abs().mag() > tol.mul_exact(&scale) {
                converged = false;
            }
        }
        if converged {
            break;
        }
    }
    z
}

/// Weierstrass inclusion radii, provided the inclusion disks are pairwise
/// disjoint (each then holds exactly one root).
fn certify(q: &IntPolynomial, centers: &[ComplexEnclosure], prec: u32) -> Option<Vec<Dyadic>> {
    let n = centers.len();
    let lead = Interval::from_bigint(&q.leading()).with_prec(prec);
    let deg = Interval::from_i64(n as i64);
    let mut radii = Vec::with_capacity(n);
    for i in 0..n {
        let c = centers[i].clone().with_prec(prec);
        let mut den = ComplexEnclosure::real(lead.clone());
        for (j, cj) in centers.iter().enumerate() {
            if j != i {
                den = &den * &(&c - cj);
            }
        }
        let w = q.eval(&c).checked_div(&den)?;
        radii.push((&w.abs() * &deg).hi().clone());
    }
    for i in 0..n {
        for j in i + 1..n {
            let d = (&centers[i] - &centers[j]).abs();
            if d.lo() <= &radii[i].add_exact(&radii[j]) {
                return None;
            }
        }
    }
    Some(radii)
}

/// Count roots (with multiplicity) in the closed disk `|z| <= r`, refining
/// until every box is decided.
pub fn count_roots_in_disk(p: &IntPolynomial, r: &Interval, precision_bits: u32) -> Result<usize> {
    let mut bits = precision_bits.max(32);
    loop {
        let iso = isolate_roots(p, bits)?;
        let mut count = 0;
        let mut undecided = false;
        for root in &iso.roots {
            let m = root.enclosure.abs();
            if m.hi() <= r.lo() {
                count += root.multiplicity;
            } else if m.lo() > r.hi() {
            } else {
                undecided = true;
            }
        }
        if !undecided {
            return Ok(count);
        }
        bits *= 2;
        if bits > PRECISION_CEILING {
            return Err(Error::PrecisionExhausted {
                bits,
                context: "root on the counting circle".into(),
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn i_and_minus_i() {
        let iso = isolate_roots(&p(&[1, 0, 1]), 64).unwrap();
        assert_eq!(iso.roots.len(), 2);
        let lim = 2f64.powi(-64) * 2.0;
        for r in &iso.roots {
            assert!(r.enclosure.width_f64() <= lim);
            assert!(r.enclosure.re.contains(&Dyadic::zero()));
        }
        assert!(iso.roots[0].enclosure.im.contains(&Dyadic::from_i64(-1)));
        assert!(iso.roots[1].enclosure.im.contains(&Dyadic::from_i64(1)));
    }

    #[test]
    fn linear_root_is_exact() {
        let iso = isolate_roots(&p(&[-2, 1]), 10).unwrap();
        assert!(iso.roots[0].enclosure.re.contains(&Dyadic::from_i64(2)));
    }

    #[test]
    fn golden_ratio_against_quadratic_formula() {
        let iso = isolate_roots(&p(&[-1, -1, 1]), 64).unwrap();
        let s5 = Interval::from_i64(5).with_prec(200).sqrt().unwrap();
        let phi = (&Interval::one() + &s5).mul_pow2(-1);
        let psi = (&Interval::one() - &s5).mul_pow2(-1);
        assert!(iso.roots[0].enclosure.re.overlaps(&psi));
        assert!(iso.roots[1].enclosure.re.overlaps(&phi));
    }

    #[test]
    fn multiplicities_are_reported() {
        let f = &(&p(&[-1, 1]) * &p(&[-1, 1])) * &p(&[1, 0, 1]);
        let iso = isolate_roots(&f, 64).unwrap();
        assert_eq!(iso.roots.len(), 3);
        assert_eq!(iso.total_multiplicity(), 4);
        let one = iso
            .roots
            .iter()
            .find(|r| r.enclosure.re.contains(&Dyadic::one()))
            .unwrap();
        assert_eq!(one.multiplicity, 2);
    }

    #[test]
    fn clustered_roots_separate() {
        // (1000 z - 1001)(1001 z - 1002): roots ~1e-6 apart
        let f = &p(&[-1001, 1000]) * &p(&[-1002, 1001]);
        let iso = isolate_roots(&f, 64).unwrap();
        assert_eq!(iso.roots.len(), 2);
    }

    #[test]
    fn wilkinson_like_degree_twenty() {
        let roots: Vec<i64> = (1..=20).collect();
        let f = IntPolynomial::from_roots(&roots);
        let iso = isolate_roots(&f, 64).unwrap();
        assert_eq!(iso.roots.len(), 20);
        for (k, r) in iso.roots.iter().enumerate() {
            assert!(r.enclosure.re.contains(&Dyadic::from_i64(k as i64 + 1)));
        }
    }

    #[test]
    fn doubling_precision_never_widens() {
        for c in [&[-1i64, -1, 1][..], &[1, 0, 1], &[2, -3, 0, 1], &[-2, 0, 0, 1]] {
            let f = p(c);
            let mut prev: Option<Vec<Dyadic>> = None;
            for bits in [16, 32, 64, 128, 256] {
                let w: Vec<Dyadic> = isolate_roots(&f, bits).unwrap().boxes().map(|b| b.width()).collect();
                if let Some(prev) = &prev {
                    for (a, b) in prev.iter().zip(&w) {
                        assert!(b <= a);
                    }
                }
                prev = Some(w);
            }
        }
    }

    #[test]
    fn disk_count() {
        let f = IntPolynomial::from_roots(&[1, 2, 5]);
        assert_eq!(count_roots_in_disk(&f, &Interval::from_i64(3), 64).unwrap(), 2);
    }
}
