//! Mahler measure, heights and Liouville bounds.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{elementary, ComplexEnclosure, Dyadic, Interval};
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::roots::{isolate_roots, PRECISION_CEILING};

/// An algebraic number: its minimal polynomial over the integers and a box
/// isolating the root.
#[derive(Clone, Debug)]
pub struct AlgebraicNumber {
    pub minpoly: IntPolynomial,
    pub root_box: ComplexEnclosure,
    pub degree: usize,
}

impl AlgebraicNumber {
    /// Caller guarantees `minpoly` is irreducible and `root_box` isolates one
    /// of its roots.
    pub fn from_parts(minpoly: IntPolynomial, root_box: ComplexEnclosure) -> Self {
        let minpoly = minpoly.canonical();
        let degree = minpoly.degree().unwrap_or(0);
        AlgebraicNumber {
            minpoly,
            root_box,
            degree,
        }
    }

    pub fn rational(q: &BigRational) -> Self {
        let p = IntPolynomial::new(vec![-q.numer().clone(), q.denom().clone()]);
        AlgebraicNumber::from_parts(p, ComplexEnclosure::from_rational(q, 128))
    }

    /// All roots of an irreducible polynomial, in root-box order.
    pub fn roots_of(minpoly: &IntPolynomial, precision_bits: u32) -> Result<Vec<AlgebraicNumber>> {
        let iso = isolate_roots(minpoly, precision_bits)?;
        Ok(iso
            .roots
            .into_iter()
            .map(|r| AlgebraicNumber::from_parts(minpoly.clone(), r.enclosure))
            .collect())
    }

    /// Re-isolate at a higher precision, keeping the same root.
    pub fn refine(&self, precision_bits: u32) -> Result<AlgebraicNumber> {
        let iso = isolate_roots(&self.minpoly, precision_bits)?;
        let hits: Vec<_> = iso
            .roots
            .into_iter()
            .filter(|r| r.enclosure.overlaps(&self.root_box))
            .collect();
        match hits.as_slice() {
            [one] => Ok(AlgebraicNumber::from_parts(
                self.minpoly.clone(),
                one.enclosure.intersect_or(&self.root_box),
            )),
            _ => Err(Error::InvalidInput(format!(
                "root box does not isolate a root of {}",
                self.minpoly
            ))),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.degree == 1 && self.minpoly.coeff(0).is_zero()
    }

    /// Exact value when the number is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        (self.degree == 1).then(|| BigRational::new(-self.minpoly.coeff(0), self.minpoly.coeff(1)))
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.root_box.mid_f64();
        write!(f, "root of {} near {re:.12}{im:+.12}i", self.minpoly)
    }
}

/// Heights of an algebraic number of degree `d`: Mahler measure `M`,
/// `log M / d` and `M^(1/d)`.
#[derive(Clone, Debug)]
pub struct HeightReport {
    pub mahler: Interval,
    pub log_height: Interval,
    pub abs_height: Interval,
}

/// A height bound `H >= 1`, given exactly or as `exp(L)` for rational `L`.
#[derive(Clone, Debug, PartialEq)]
pub enum HeightBound {
    Exact(BigRational),
    ExpOf(BigRational),
}

impl HeightBound {
    pub fn from_integer(h: i64) -> Self {
        HeightBound::Exact(BigRational::from_integer(BigInt::from(h)))
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match self {
            HeightBound::Exact(h) => *h >= BigRational::one(),
            HeightBound::ExpOf(l) => !l.is_negative(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput("height bound must be at least 1".into()))
        }
    }

    pub fn enclosure(&self, prec: u32) -> Interval {
        match self {
            HeightBound::Exact(h) => Interval::from_rational(h, prec),
            HeightBound::ExpOf(l) => elementary::exp(&Interval::from_rational(l, prec + 8)).rounded(prec),
        }
    }

    pub fn log_enclosure(&self, prec: u32) -> Interval {
        match self {
            HeightBound::Exact(h) => {
                elementary::ln(&Interval::from_rational(h, prec + 8)).expect("H >= 1")
            }
            HeightBound::ExpOf(l) => Interval::from_rational(l, prec),
        }
    }

    /// Enclosure of `H^k`; exact when `H` is a dyadic rational.
    pub fn pow_enclosure(&self, k: u32, prec: u32) -> Interval {
        match self {
            HeightBound::Exact(h) => {
                let hk = pow_rational(h, k);
                Interval::from_rational(&hk, prec)
            }
            HeightBound::ExpOf(l) => {
                let lk = l * BigRational::from_integer(BigInt::from(k));
                elementary::exp(&Interval::from_rational(&lk, prec + 8)).rounded(prec)
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            HeightBound::Exact(h) => h.to_f64().unwrap_or(f64::INFINITY),
            HeightBound::ExpOf(l) => l.to_f64().unwrap_or(f64::INFINITY).exp(),
        }
    }

    pub fn log_f64(&self) -> f64 {
        match self {
            HeightBound::Exact(h) => h.to_f64().unwrap_or(f64::INFINITY).ln(),
            HeightBound::ExpOf(l) => l.to_f64().unwrap_or(f64::INFINITY),
        }
    }

    /// Certified `m <= H^k` for a value `m` that refines with precision.
    /// Exact rational equality is settled exactly when `m` collapses to a
    /// point and `H` is rational.
    pub fn compare_power(&self, k: u32, m: &Interval) -> Option<bool> {
        let prec = m.prec().max(64) + 16;
        let hk = self.pow_enclosure(k, prec);
        if m.hi() <= hk.lo() {
            return Some(true);
        }
        if m.lo() > hk.hi() {
            return Some(false);
        }
        if let (HeightBound::Exact(h), true) = (self, m.is_point()) {
            return Some(m.lo().to_rational() <= pow_rational(h, k));
        }
        None
    }
}

impl fmt::Display for HeightBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeightBound::Exact(h) => write!(f, "{h}"),
            HeightBound::ExpOf(l) => write!(f, "exp({l})"),
        }
    }
}

pub(crate) fn pow_rational(q: &BigRational, k: u32) -> BigRational {
    let mut out = BigRational::one();
    for _ in 0..k {
        out *= q;
    }
    out
}

enum Modulus {
    Inside,
    OnCircle,
    Outside(Interval),
}

/// Enclosure of `|a| prod max(1, |alpha_j|)` over the roots of `p`.
///
/// Roots on the unit circle are recognised exactly. The result is an exact
/// point when either no root or every root lies outside the closed unit disk.
pub fn mahler_measure(p: &IntPolynomial, precision_bits: u32) -> Result<Interval> {
    let n = p.degree().unwrap_or(0);
    if p.is_zero() || n == 0 {
        return Err(Error::InvalidInput(
            "Mahler measure needs degree >= 1".into(),
        ));
    }
    let lead = p.leading().abs();
    let mut outside = Vec::new();
    let mut all_outside = true;
    for (q, mult) in p.square_free_factors() {
        for m in root_moduli(&q, precision_bits)? {
            match m {
                Modulus::Outside(r) => outside.push((r, mult)),
                _ => all_outside = false,
            }
        }
    }
    if outside.is_empty() {
        return Ok(Interval::from_bigint(&lead));
    }
    if all_outside {
        return Ok(Interval::from_bigint(&p.coeff(0).abs()));
    }
    let prec = precision_bits.max(16) + 16;
    let mut acc = Interval::from_bigint(&lead).with_prec(prec);
    for (r, mult) in outside {
        acc = &acc * &r.pow_u(mult as u32);
    }
    Ok(acc)
}

/// Classify every root of a square-free `q` relative to the unit circle.
fn root_moduli(q: &IntPolynomial, precision_bits: u32) -> Result<Vec<Modulus>> {
    // unit-circle roots of q are exactly the unit-circle roots of
    // gcd(q, reversed q); the remaining roots never lie on the circle
    let g = q.gcd(&q.reversed());
    let mut out = Vec::new();
    let rest = if g.degree().unwrap_or(0) > 0 {
        out.extend(self_reciprocal_moduli(&g, precision_bits)?);
        q.div_exact(&g).expect("gcd divides")
    } else {
        q.clone()
    };
    if rest.degree().unwrap_or(0) == 0 {
        return Ok(out);
    }
    let mut bits = precision_bits.max(16);
    'refine: loop {
        let iso = isolate_roots(&rest, bits)?;
        let mut batch = Vec::new();
        for b in iso.boxes() {
            let m = b.abs();
            if m.hi() < &Dyadic::one() {
                batch.push(Modulus::Inside);
            } else if m.lo() > &Dyadic::one() {
                batch.push(Modulus::Outside(m));
            } else {
                bits = next_bits(bits, q)?;
                continue 'refine;
            }
        }
        out.extend(batch);
        return Ok(out);
    }
}

/// Roots of `g` come in pairs `alpha, 1/conj(alpha)`; a root whose mirrored
/// box meets no other box is its own mirror, hence on the unit circle.
fn self_reciprocal_moduli(g: &IntPolynomial, precision_bits: u32) -> Result<Vec<Modulus>> {
    let mut bits = precision_bits.max(16);
    'refine: loop {
        let iso = isolate_roots(g, bits)?;
        let boxes: Vec<&ComplexEnclosure> = iso.boxes().collect();
        let mut batch = Vec::new();
        for (i, b) in boxes.iter().enumerate() {
            let m = b.abs();
            if m.hi() < &Dyadic::one() {
                batch.push(Modulus::Inside);
                continue;
            }
            if m.lo() > &Dyadic::one() {
                batch.push(Modulus::Outside(m));
                continue;
            }
            let mirrored = b.conj().recip();
            let isolated = mirrored.is_some_and(|e| {
                boxes
                    .iter()
                    .enumerate()
                    .all(|(j, other)| j == i || !other.overlaps(&e))
            });
            if isolated {
                batch.push(Modulus::OnCircle);
            } else {
                bits = next_bits(bits, g)?;
                continue 'refine;
            }
        }
        return Ok(batch);
    }
}

fn next_bits(bits: u32, p: &IntPolynomial) -> Result<u32> {
    let next = bits.saturating_mul(2);
    if next > PRECISION_CEILING {
        return Err(Error::PrecisionExhausted {
            bits: next,
            context: format!("root moduli of {p}"),
        });
    }
    Ok(next)
}

/// Certified `M(p) <= H^k`, refining until the comparison is decided.
pub fn mahler_at_most(p: &IntPolynomial, bound: &HeightBound, k: u32, precision_bits: u32) -> Result<bool> {
    let mut bits = precision_bits.max(32);
    loop {
        let m = mahler_measure(p, bits)?;
        if let Some(v) = bound.compare_power(k, &m) {
            return Ok(v);
        }
        bits = next_bits(bits, p)?;
    }
}

pub fn height(alpha: &AlgebraicNumber, precision_bits: u32) -> Result<HeightReport> {
    let mahler = mahler_measure(&alpha.minpoly, precision_bits)?;
    Ok(report_from_mahler(mahler, alpha.degree, precision_bits))
}

pub fn report_from_mahler(mahler: Interval, degree: usize, precision_bits: u32) -> HeightReport {
    if mahler == Interval::one() {
        return HeightReport {
            mahler,
            log_height: Interval::zero(),
            abs_height: Interval::one(),
        };
    }
    let prec = precision_bits.max(16) + 8;
    let d = Interval::from_i64(degree as i64);
    let log_m = elementary::ln(&mahler.clone().with_prec(prec)).expect("M >= 1");
    let log_height = log_m.checked_div(&d).expect("degree >= 1");
    let abs_height = if degree == 1 {
        mahler.clone()
    } else {
        // M >= 1 so the true root is >= 1
        let lower = Interval::one();
        let e = elementary::exp(&log_height);
        e.max(&lower)
    };
    HeightReport {
        mahler,
        log_height,
        abs_height,
    }
}

/// `max(H(alpha), H(beta))`.
pub fn pair_height(a: &HeightReport, b: &HeightReport) -> Interval {
    a.abs_height.max(&b.abs_height)
}

/// `((2H)^(-d), (2H)^d)`: every nonzero algebraic number of degree at most
/// `d` and height at most `H` has modulus in this range.
pub fn liouville_bounds(d: u32, h: &BigRational) -> (BigRational, BigRational) {
    let two_h = h * BigRational::from_integer(BigInt::from(2));
    let upper = pow_rational(&two_h, d);
    (upper.recip(), upper)
}

/// Interval version of [`liouville_bounds`] for any height bound.
pub fn liouville_bounds_enclosure(d: u32, h: &HeightBound, prec: u32) -> (Interval, Interval) {
    match h {
        HeightBound::Exact(q) => {
            let (lo, hi) = liouville_bounds(d, q);
            (Interval::from_rational(&lo, prec), Interval::from_rational(&hi, prec))
        }
        HeightBound::ExpOf(_) => {
            let two_h = h.enclosure(prec + 8).mul_pow2(1);
            let upper = two_h.pow_u(d).rounded(prec);
            let lower = upper.recip().expect("positive").rounded(prec);
            (lower, upper)
        }
    }
}

trait IntersectOr {
    fn intersect_or(&self, other: &Self) -> Self;
}

impl IntersectOr for ComplexEnclosure {
    fn intersect_or(&self, other: &ComplexEnclosure) -> ComplexEnclosure {
        match (self.re.intersect(&other.re), self.im.intersect(&other.im)) {
            (Some(re), Some(im)) => ComplexEnclosure::new(re, im),
            _ => self.clone(),
        }
    }
}
