//! Auxiliary bivariate polynomials vanishing on finite point sets.
//!
//! [`construct`] solves the vanishing conditions exactly over the rationals
//! and shortens the integer kernel with LLL. [`check_hypotheses`] reports
//! every condition of the existence statement with a certified margin.
//! The point coordinates are `(x, y) = (z, f(z))`: the modulus and
//! separation conditions apply to `x`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{elementary, ComplexEnclosure, Interval};
use crate::constants::{masser_inequality, Decision, MasserReport};
use crate::error::{Error, Result};
use crate::heights::{height, AlgebraicNumber, HeightBound};
use crate::linalg::{lll_reduce, primitive_integer, rational_kernel};

/// Sparse integer polynomial in `X` and `Y`, keyed by `(deg_X, deg_Y)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial2 {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl IntPolynomial2 {
    pub fn new(terms: BTreeMap<(u32, u32), BigInt>) -> Self {
        IntPolynomial2 {
            terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// From `(i, j, c)` triples meaning `c X^i Y^j`; repeats are summed.
    pub fn from_terms(terms: &[(u32, u32, i64)]) -> Self {
        let mut map: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        for &(i, j, c) in terms {
            *map.entry((i, j)).or_default() += c;
        }
        Self::new(map)
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// Nonzero terms in `(i, j)` lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn x_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, _)| *i).max()
    }

    pub fn y_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(_, j)| *j).max()
    }

    /// Largest coefficient modulus.
    pub fn height_norm(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Sum of coefficient moduli.
    pub fn length(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).sum()
    }

    pub fn eval_rational(&self, x: &BigRational, y: &BigRational) -> BigRational {
        self.terms
            .iter()
            .map(|(&(i, j), c)| BigRational::from_integer(c.clone()) * pow(x, i) * pow(y, j))
            .sum()
    }

    pub fn eval(&self, x: &ComplexEnclosure, y: &ComplexEnclosure) -> ComplexEnclosure {
        let mut acc = ComplexEnclosure::zero().with_prec(x.prec().max(y.prec()));
        for (&(i, j), c) in &self.terms {
            let term = (&x.powu(i) * &y.powu(j)).scale(&Interval::from_bigint(c));
            acc = &acc + &term;
        }
        acc
    }

    /// `sum_i c_{i,j} X^i` for fixed `j`, lowest degree first.
    pub fn y_coefficient(&self, j: u32) -> Vec<BigInt> {
        let deg = self.terms.keys().filter(|(_, jj)| *jj == j).map(|(i, _)| *i).max();
        let Some(deg) = deg else {
            return Vec::new();
        };
        (0..=deg).map(|i| self.coeff(i, j)).collect()
    }

    /// Deterministic text form: one `i j c` line per nonzero term.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (&(i, j), c) in &self.terms {
            s.push_str(&format!("{i} {j} {c}\n"));
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut map: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::InvalidInput(format!("bad term line '{line}'"));
            if parts.len() != 3 {
                return Err(bad());
            }
            let i: u32 = parts[0].parse().map_err(|_| bad())?;
            let j: u32 = parts[1].parse().map_err(|_| bad())?;
            let c: BigInt = parts[2].parse().map_err(|_| bad())?;
            *map.entry((i, j)).or_default() += c;
        }
        Ok(Self::new(map))
    }
}

fn pow(x: &BigRational, e: u32) -> BigRational {
    num_traits::pow(x.clone(), e as usize)
}

fn monomial(i: u32, j: u32) -> String {
    let part = |v: &str, e: u32| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    };
    match (i, j) {
        (0, 0) => String::new(),
        (_, 0) => part("X", i),
        (0, _) => part("Y", j),
        _ => format!("{}*{}", part("X", i), part("Y", j)),
    }
}

impl fmt::Display for IntPolynomial2 {
    /// Terms by descending total degree, then descending `Y` degree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by(|a, b| (b.0 + b.1, b.1).cmp(&(a.0 + a.1, a.1)));
        for (n, &&(i, j)) in keys.iter().enumerate() {
            let c = &self.terms[&(i, j)];
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let m = monomial(i, j);
            if m.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

/// A point coordinate.
#[derive(Clone, Debug)]
pub enum Coordinate {
    Rational(BigRational),
    Algebraic(AlgebraicNumber),
}

impl Coordinate {
    pub fn from_i64(v: i64) -> Self {
        Coordinate::Rational(BigRational::from_integer(v.into()))
    }

    /// Exact value; algebraic numbers of degree above 1 are unsupported.
    pub fn to_rational(&self) -> Result<BigRational> {
        match self {
            Coordinate::Rational(q) => Ok(q.clone()),
            Coordinate::Algebraic(a) => a
                .as_rational()
                .ok_or_else(|| Error::UnsupportedCoordinate(format!("algebraic coordinate of degree {}", a.degree))),
        }
    }

    fn degree(&self) -> usize {
        match self {
            Coordinate::Rational(_) => 1,
            Coordinate::Algebraic(a) => a.degree,
        }
    }

    fn enclosure(&self, prec: u32) -> ComplexEnclosure {
        match self {
            Coordinate::Rational(q) => ComplexEnclosure::from_rational(q, prec),
            Coordinate::Algebraic(a) => a.root_box.clone(),
        }
    }

    /// Enclosure of the absolute logarithmic height.
    fn log_height(&self, prec: u32) -> Result<Interval> {
        match self {
            Coordinate::Rational(q) => {
                let h = q.numer().abs().max(q.denom().abs());
                Ok(elementary::ln(&Interval::from_bigint(&h).with_prec(prec)).unwrap())
            }
            Coordinate::Algebraic(a) => Ok(height(a, prec)?.log_height),
        }
    }
}

/// Points `(x, y)` with the bounds the existence statement is applied with.
#[derive(Clone, Debug)]
pub struct PointSet {
    pub points: Vec<(Coordinate, Coordinate)>,
    /// Modulus bound `Z` for `x`.
    pub z_bound: BigRational,
    /// Separation constant `A`: pairwise `|x - x'| <= 1/A`.
    pub a_sep: BigRational,
    pub d: u32,
    pub h: HeightBound,
    /// `log M`, where `M` bounds both functions on `B(0, 2Z)`.
    pub log_m: Interval,
}

impl PointSet {
    /// Rational points with `Z` the largest `|x|` (at least 1), `A = 1/(2Z)`,
    /// `d = 1`, `H` the largest coordinate height (at least 3) and `M = 1`.
    pub fn from_rationals(points: Vec<(BigRational, BigRational)>) -> Self {
        let mut z = BigRational::one();
        let mut h = BigInt::from(3);
        for (x, y) in &points {
            z = z.max(x.abs());
            for q in [x, y] {
                h = h.max(q.numer().abs()).max(q.denom().clone());
            }
        }
        let a_sep = (BigRational::from_integer(2.into()) * &z).recip();
        PointSet {
            points: points
                .into_iter()
                .map(|(x, y)| (Coordinate::Rational(x), Coordinate::Rational(y)))
                .collect(),
            z_bound: z,
            a_sep,
            d: 1,
            h: HeightBound::Exact(BigRational::from_integer(h)),
            log_m: Interval::zero(),
        }
    }

    pub fn from_i64_pairs(points: &[(i64, i64)]) -> Self {
        Self::from_rationals(
            points
                .iter()
                .map(|&(x, y)| (BigRational::from_integer(x.into()), BigRational::from_integer(y.into())))
                .collect(),
        )
    }

    fn rational_points(&self) -> Result<Vec<(BigRational, BigRational)>> {
        self.points
            .iter()
            .map(|(x, y)| Ok((x.to_rational()?, y.to_rational()?)))
            .collect()
    }
}

/// Per-condition outcome of [`check_hypotheses`].
#[derive(Clone, Debug)]
pub struct HypothesisReport {
    /// `T - sqrt(8d)`.
    pub t_margin: f64,
    pub t_ok: bool,
    /// `|x| <= Z`, per point.
    pub modulus: Vec<Decision>,
    /// `|x - x'| <= 1/A` over all pairs.
    pub separation: Decision,
    /// `[Q(x, y) : Q] <= d`, per point.
    pub degree: Vec<Decision>,
    /// `H(x, y) <= H`, per point, with `H(x, y) = max(H(x), H(y))`.
    pub height: Vec<Decision>,
    /// `(AZ)^T > (4T)^(96 d^2/T) (M + 1)^(16 d) H^(48 d^2)`.
    pub main: MasserReport,
}

impl HypothesisReport {
    pub fn all_hold(&self) -> bool {
        let ok = |v: &[Decision]| v.iter().all(|d| *d == Decision::Holds);
        self.t_ok
            && ok(&self.modulus)
            && self.separation == Decision::Holds
            && ok(&self.degree)
            && ok(&self.height)
            && self.main.decision == Decision::Holds
    }

    /// Every condition on the points themselves, ignoring `T` and the main
    /// inequality.
    pub fn point_conditions_hold(&self) -> bool {
        let ok = |v: &[Decision]| v.iter().all(|d| *d == Decision::Holds);
        ok(&self.modulus) && self.separation == Decision::Holds && ok(&self.degree) && ok(&self.height)
    }
}

fn decide_le(a: &Interval, b: &Interval) -> Decision {
    if a.certainly_le(b) {
        Decision::Holds
    } else if b.certainly_lt(a) {
        Decision::Fails
    } else {
        Decision::Undecided
    }
}

const CHECK_PREC: u32 = 128;

pub fn check_hypotheses(ps: &PointSet, t: u32) -> Result<HypothesisReport> {
    let prec = CHECK_PREC;
    let t_margin = t as f64 - (8.0 * ps.d as f64).sqrt();
    let t_ok = (t as u64) * (t as u64) >= 8 * ps.d as u64;
    let z = Interval::from_rational(&ps.z_bound, prec);
    let xs: Vec<ComplexEnclosure> = ps.points.iter().map(|(x, _)| x.enclosure(prec)).collect();
    let modulus = ps
        .points
        .iter()
        .zip(&xs)
        .map(|((x, _), xe)| match x {
            Coordinate::Rational(q) => {
                if q.abs() <= ps.z_bound {
                    Decision::Holds
                } else {
                    Decision::Fails
                }
            }
            Coordinate::Algebraic(_) => decide_le(&xe.abs(), &z),
        })
        .collect();
    let diam = Interval::from_rational(&ps.a_sep.recip(), prec);
    let mut separation = Decision::Holds;
    for i in 0..ps.points.len() {
        for j in i + 1..ps.points.len() {
            let dec = match (&ps.points[i].0, &ps.points[j].0) {
                (Coordinate::Rational(a), Coordinate::Rational(b)) => {
                    if (a - b).abs() * &ps.a_sep <= BigRational::one() {
                        Decision::Holds
                    } else {
                        Decision::Fails
                    }
                }
                _ => decide_le(&(&xs[i] - &xs[j]).abs(), &diam),
            };
            separation = match (separation, dec) {
                (Decision::Fails, _) | (_, Decision::Fails) => Decision::Fails,
                (Decision::Undecided, _) | (_, Decision::Undecided) => Decision::Undecided,
                _ => Decision::Holds,
            };
        }
    }
    let degree = ps
        .points
        .iter()
        .map(|(x, y)| {
            let (dx, dy) = (x.degree(), y.degree());
            let d = ps.d as usize;
            if dx.max(dy) > d {
                Decision::Fails
            } else if dx * dy <= d || dx == 1 || dy == 1 {
                // the compositum degree is at most dx * dy, and equals the
                // larger one when the other coordinate is rational
                Decision::Holds
            } else {
                Decision::Undecided
            }
        })
        .collect();
    let log_h = ps.h.log_enclosure(prec);
    let mut height_dec = Vec::with_capacity(ps.points.len());
    for (x, y) in &ps.points {
        let lh = x.log_height(prec)?.max(&y.log_height(prec)?);
        height_dec.push(match (x, y, &ps.h) {
            (Coordinate::Rational(a), Coordinate::Rational(b), HeightBound::Exact(hq)) => {
                let ha = a.numer().abs().max(a.denom().clone());
                let hb = b.numer().abs().max(b.denom().clone());
                if BigRational::from_integer(ha.max(hb)) <= *hq {
                    Decision::Holds
                } else {
                    Decision::Fails
                }
            }
            _ => decide_le(&lh, &log_h),
        });
    }
    let az = &Interval::from_rational(&ps.a_sep, prec) * &z;
    let main = masser_inequality(&Interval::from_i64(t as i64).with_prec(prec), &az, &ps.log_m, &log_h, ps.d);
    Ok(HypothesisReport {
        t_margin,
        t_ok,
        modulus,
        separation,
        degree,
        height: height_dec,
        main,
    })
}

/// Exponent pairs of total degree at most `t`, by total degree then `Y`
/// degree.
pub fn monomials(t: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for deg in 0..=t {
        for j in 0..=deg {
            out.push((deg - j, j));
        }
    }
    out
}

/// A constructed auxiliary polynomial with its checks.
#[derive(Clone, Debug, PartialEq)]
pub struct AuxPolyCertificate {
    pub poly: IntPolynomial2,
    pub t: u32,
    /// Exact vanishing at each point.
    pub vanishing: Vec<bool>,
    /// `|P| <= 2^(1/d) (T + 1)^2 H^T`, certified.
    pub coeff_bound_ok: bool,
    /// `|points| >= T^2 / (8d)`, the size under which the coefficient bound
    /// is guaranteed when the hypotheses hold.
    pub coeff_bound_applicable: bool,
    /// Midpoint of `lhs - rhs` of the main inequality in log form.
    pub hypothesis_margin: f64,
}

fn coeff_bound_holds(p: &IntPolynomial2, t: u32, d: u32, h: &HeightBound) -> bool {
    let prec = CHECK_PREC;
    let norm = p.height_norm();
    if norm.is_zero() {
        return true;
    }
    let lhs = elementary::ln(&Interval::from_bigint(&norm).with_prec(prec)).unwrap();
    let two_bits = elementary::ln2(prec).checked_div(&Interval::from_i64(d as i64)).unwrap();
    let t1 = elementary::ln(&Interval::from_i64(t as i64 + 1).with_prec(prec)).unwrap().mul_pow2(1);
    let th = &Interval::from_i64(t as i64) * &h.log_enclosure(prec);
    lhs.certainly_le(&(&(&two_bits + &t1) + &th))
}

/// Nonzero integer polynomial of total degree at most `t` vanishing at every
/// point of `ps`, with small coefficients.
pub fn construct(ps: &PointSet, t: u32) -> Result<AuxPolyCertificate> {
    let pts = ps.rational_points()?;
    let mons = monomials(t);
    let rows: Vec<Vec<BigRational>> = pts
        .iter()
        .map(|(x, y)| mons.iter().map(|&(i, j)| pow(x, i) * pow(y, j)).collect())
        .collect();
    let kernel = rational_kernel(&rows, mons.len());
    if kernel.is_empty() {
        return Err(Error::InfeasibleSystem);
    }
    let basis: Vec<Vec<BigInt>> = kernel.iter().map(|v| primitive_integer(v)).collect();
    let reduced = lll_reduce(basis);
    let key = |v: &Vec<BigInt>| {
        let inf = v.iter().map(|c| c.abs()).max().unwrap_or_default();
        let l2: BigInt = v.iter().map(|c| c * c).sum();
        (inf, l2)
    };
    let mut best = reduced[0].clone();
    for v in &reduced[1..] {
        if key(v) < key(&best) {
            best = v.clone();
        }
    }
    // sign: the last nonzero coefficient in monomial order is positive
    if best.iter().rev().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
        best.iter_mut().for_each(|c| *c = -c.clone());
    }
    let poly = IntPolynomial2::new(mons.iter().cloned().zip(best).collect());
    let vanishing = pts.iter().map(|(x, y)| poly.eval_rational(x, y).is_zero()).collect();
    let coeff_bound_ok = coeff_bound_holds(&poly, t, ps.d, &ps.h);
    let report = check_hypotheses(ps, t)?;
    Ok(AuxPolyCertificate {
        poly,
        t,
        vanishing,
        coeff_bound_ok,
        coeff_bound_applicable: (pts.len() as u64) * 8 * ps.d as u64 >= (t as u64) * (t as u64),
        hypothesis_margin: report.main.margin.mid_f64(),
    })
}

/// Independent re-check: nonzero, degree at most `T`, exact vanishing at
/// every point and a truthful coefficient-bound claim.
pub fn verify_certificate(cert: &AuxPolyCertificate, ps: &PointSet) -> bool {
    if cert.poly.is_zero() {
        return false;
    }
    if cert.poly.total_degree().is_some_and(|deg| deg > cert.t) {
        return false;
    }
    let Ok(pts) = ps.rational_points() else {
        return false;
    };
    if cert.vanishing.len() != pts.len() {
        return false;
    }
    for ((x, y), flag) in pts.iter().zip(&cert.vanishing) {
        if !*flag || !cert.poly.eval_rational(x, y).is_zero() {
            return false;
        }
    }
    !cert.coeff_bound_ok || coeff_bound_holds(&cert.poly, cert.t, ps.d, &ps.h)
}

impl AuxPolyCertificate {
    /// Deterministic text form for fixture files.
    pub fn to_text(&self) -> String {
        let flags: Vec<&str> = self.vanishing.iter().map(|&v| if v { "1" } else { "0" }).collect();
        format!(
            "T {}\nvanishing {}\ncoeff_bound_ok {}\ncoeff_bound_applicable {}\nhypothesis_margin {:e}\nterms\n{}",
            self.t,
            flags.join(" "),
            self.coeff_bound_ok,
            self.coeff_bound_applicable,
            self.hypothesis_margin,
            self.poly.to_text()
        )
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let bad = |what: &str| Error::InvalidInput(format!("certificate: bad {what}"));
        let mut lines = text.lines();
        let mut field = |name: &str| -> Result<String> {
            let line = lines.next().ok_or_else(|| bad(name))?;
            let rest = line.strip_prefix(name).ok_or_else(|| bad(name))?;
            Ok(rest.trim().to_string())
        };
        let t = field("T")?.parse().map_err(|_| bad("T"))?;
        let vanishing = field("vanishing")?
            .split_whitespace()
            .map(|f| match f {
                "1" => Ok(true),
                "0" => Ok(false),
                _ => Err(bad("vanishing")),
            })
            .collect::<Result<Vec<bool>>>()?;
        let coeff_bound_ok = field("coeff_bound_ok")?.parse().map_err(|_| bad("coeff_bound_ok"))?;
        let coeff_bound_applicable = field("coeff_bound_applicable")?
            .parse()
            .map_err(|_| bad("coeff_bound_applicable"))?;
        let hypothesis_margin = field("hypothesis_margin")?
            .parse()
            .map_err(|_| bad("hypothesis_margin"))?;
        field("terms")?;
        let rest: Vec<&str> = lines.collect();
        let poly = IntPolynomial2::parse_text(&rest.join("\n"))?;
        Ok(AuxPolyCertificate {
            poly,
            t,
            vanishing,
            coeff_bound_ok,
            coeff_bound_applicable,
            hypothesis_margin,
        })
    }
}

/// Parse a points file: one `x y` pair of rationals (`p` or `p/q`) per line;
/// `#` starts a comment.
pub fn parse_points(text: &str) -> Result<Vec<(BigRational, BigRational)>> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = |msg: String| Error::InvalidInput(format!("line {}: {msg}", n + 1));
        let parts: Vec<&str> = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .collect();
        if parts.len() != 2 {
            return Err(at(format!("expected 'x y', found '{line}'")));
        }
        let x = parse_rational(parts[0]).map_err(|e| at(e.to_string()))?;
        let y = parse_rational(parts[1]).map_err(|e| at(e.to_string()))?;
        out.push((x, y));
    }
    Ok(out)
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidInput(format!("bad rational '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n.trim().parse().map_err(|_| bad())?, d))
        }
        None => {
            if let Ok(n) = s.parse::<BigInt>() {
                return Ok(BigRational::from_integer(n));
            }
            // decimal literal, exact
            let (int, frac) = s.split_once('.').ok_or_else(bad)?;
            let neg = int.starts_with('-');
            let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
            let n: BigInt = digits.parse().map_err(|_| bad())?;
            let scale = num_traits::pow(BigInt::from(10), frac.len());
            let q = BigRational::new(n, scale);
            Ok(if neg { -q } else { q })
        }
    }
}

/// Rough size of a certificate polynomial, `log2 |P|`.
pub fn log2_height(p: &IntPolynomial2) -> f64 {
    let h = p.height_norm();
    if h.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = h.bits();
    if bits < 1000 {
        h.to_f64().unwrap().log2()
    } else {
        bits as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_gives_a_monomial() {
        let ps = PointSet::from_i64_pairs(&[(0, 0)]);
        let cert = construct(&ps, 1).unwrap();
        assert!(cert.poly == IntPolynomial2::from_terms(&[(1, 0, 1)]) || cert.poly == IntPolynomial2::from_terms(&[(0, 1, 1)]));
        assert_eq!(cert.poly.height_norm(), BigInt::one());
        assert!(verify_certificate(&cert, &ps));
    }

    #[test]
    fn parabola_fixture() {
        let ps = PointSet::from_i64_pairs(&[(1, 1), (2, 4), (3, 9)]);
        let cert = construct(&ps, 2).unwrap();
        let y_minus_x2 = IntPolynomial2::from_terms(&[(0, 1, 1), (2, 0, -1)]);
        let neg = IntPolynomial2::from_terms(&[(0, 1, -1), (2, 0, 1)]);
        assert!(cert.poly == y_minus_x2 || cert.poly == neg, "got {}", cert.poly);
        assert!(verify_certificate(&cert, &ps));
        let mut broken = cert.clone();
        let mut terms: BTreeMap<(u32, u32), BigInt> = broken.poly.terms().map(|(k, v)| (*k, v.clone())).collect();
        *terms.get_mut(&(0, 1)).unwrap() += 1;
        broken.poly = IntPolynomial2::new(terms);
        assert!(!verify_certificate(&broken, &ps));
        let mut empty = cert.clone();
        empty.poly = IntPolynomial2::zero();
        assert!(!verify_certificate(&empty, &ps));
    }

    #[test]
    fn generic_points_line_is_infeasible() {
        let ps = PointSet::from_i64_pairs(&[(0, 1), (2, 7), (5, 3)]);
        assert_eq!(construct(&ps, 1).unwrap_err(), Error::InfeasibleSystem);
        let collinear = PointSet::from_i64_pairs(&[(0, 1), (1, 3), (2, 5)]);
        let cert = construct(&collinear, 1).unwrap();
        assert_eq!(cert.poly, IntPolynomial2::from_terms(&[(0, 1, 1), (1, 0, -2), (0, 0, -1)]));
    }

    #[test]
    fn hypothesis_examples() {
        let ps = PointSet::from_i64_pairs(&[(0, 0)]);
        let rep = check_hypotheses(&ps, 3).unwrap();
        assert!(rep.point_conditions_hold());
        let rep = check_hypotheses(&ps, 2).unwrap();
        assert!(!rep.t_ok);
        assert!((rep.t_margin + 0.828427).abs() < 1e-6);
        let mut half = ps.clone();
        half.z_bound = BigRational::one();
        half.a_sep = BigRational::new(1.into(), 2.into());
        for t in 1..20 {
            assert_eq!(check_hypotheses(&half, t).unwrap().main.decision, Decision::Fails);
        }
    }

    #[test]
    fn text_round_trip() {
        let ps = PointSet::from_i64_pairs(&[(1, 1), (2, 4), (3, 9)]);
        let cert = construct(&ps, 2).unwrap();
        let back = AuxPolyCertificate::from_text(&cert.to_text()).unwrap();
        assert_eq!(back.poly, cert.poly);
        assert_eq!(back.vanishing, cert.vanishing);
        assert_eq!(cert.poly.to_string(), "X^2 - Y");
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("-3/6").unwrap(), BigRational::new((-1).into(), 2.into()));
        assert_eq!(parse_rational("-1.25").unwrap(), BigRational::new((-5).into(), 4.into()));
        let pts = parse_points("# header\n1 2\n1/2, -3\n").unwrap();
        assert_eq!(pts.len(), 2);
        let err = parse_points("1 2\n3 x\n").unwrap_err().to_string();
        assert!(err.contains("line 2"), "{err}");
    }
}
