//! Explicit constants of the growth estimate, the height cutoff and the
//! counting argument, plus the sector predicate and the growth-defect
//! evaluator.
//!
//! All real constants are interval enclosures. The exponents are exact
//! rationals because the order of every supported product is rational.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::arith::{elementary, ComplexEnclosure, Dyadic, Interval};
use crate::error::{Error, Result};
use crate::heights::HeightBound;
use crate::products::{eval_product, log_product, ZeroSequenceSpec};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Inputs of the counting theorem.
#[derive(Clone, Debug)]
pub struct TheoremParams {
    /// Half-opening of the excluded sector, in `(0, pi/2)`.
    pub phi: Interval,
    pub rho: BigRational,
    pub lambda: BigRational,
    pub mu: Interval,
    pub d: u32,
    pub h: HeightBound,
}

impl TheoremParams {
    pub fn from_spec(spec: &ZeroSequenceSpec, phi: Interval, d: u32, h: HeightBound, prec: u32) -> Self {
        TheoremParams {
            phi,
            rho: spec.rho(),
            lambda: spec.lambda(),
            mu: spec.mu(prec),
            d,
            h,
        }
    }

    /// Range checks that do not involve `H`.
    pub fn validate_shape(&self) -> Result<()> {
        let half_pi = elementary::pi(self.phi.prec().max(64)).mul_pow2(-1);
        if !self.phi.is_positive() || !self.phi.certainly_lt(&half_pi) {
            return Err(Error::InvalidInput("phi must satisfy 0 < phi < pi/2".into()));
        }
        if !self.rho.is_positive() || self.rho > rat(1, 2) {
            return Err(Error::InvalidInput("rho must satisfy 0 < rho <= 1/2".into()));
        }
        if !self.lambda.is_positive() || self.lambda > self.rho {
            return Err(Error::InvalidInput("lambda must satisfy 0 < lambda <= rho".into()));
        }
        if !self.mu.is_positive() {
            return Err(Error::InvalidInput("mu must be positive".into()));
        }
        if self.d == 0 {
            return Err(Error::InvalidInput("d must be positive".into()));
        }
        Ok(())
    }

    /// Full check, including `H > e`.
    pub fn validate(&self) -> Result<()> {
        self.validate_shape()?;
        self.h.validate()?;
        let log_h = self.h.log_enclosure(64);
        if !(log_h.lo() > &Dyadic::one()) {
            return Err(Error::InvalidInput(
                "H must exceed e (the counting theorem only covers H > e)".into(),
            ));
        }
        Ok(())
    }

    /// `H > e^e`, the range in which every step of the counting argument
    /// applies as written.
    pub fn in_proof_regime(&self) -> bool {
        let log_h = self.h.log_enclosure(64);
        let e = elementary::e(64);
        log_h.lo() > e.hi()
    }

    fn rho_i(&self, prec: u32) -> Interval {
        Interval::from_rational(&self.rho, prec)
    }
}

/// `A = 6 + 3 mu pi csc(pi rho)`.
pub fn go_constant(mu: &Interval, rho: &BigRational, prec: u32) -> Interval {
    let pi = elementary::pi(prec);
    let s = elementary::sin(&(&pi * &Interval::from_rational(rho, prec)));
    let three_mu_pi = &(&Interval::from_i64(3) * mu) * &pi;
    &Interval::from_i64(6) + &three_mu_pi.checked_div(&s).expect("sin(pi rho) > 0")
}

/// `mu pi / sin(pi rho)`, the leading coefficient of `log f(-r)`.
pub fn growth_coefficient(mu: &Interval, rho: &BigRational, prec: u32) -> Interval {
    let pi = elementary::pi(prec);
    let s = elementary::sin(&(&pi * &Interval::from_rational(rho, prec)));
    (mu * &pi).checked_div(&s).expect("sin(pi rho) > 0")
}

/// `eps = min(mu pi sin^2(phi/2) / (4 A sin(pi rho)), 1/2)` and whether the
/// cap applied.
pub fn epsilon_choice(phi: &Interval, rho: &BigRational, mu: &Interval, prec: u32) -> (Interval, bool) {
    let a = go_constant(mu, rho, prec);
    let sh = elementary::sin(&phi.mul_pow2(-1));
    let raw = (&growth_coefficient(mu, rho, prec) * &sh.sqr())
        .checked_div(&a.mul_pow2(2))
        .unwrap();
    let half = Interval::from_rational(&rat(1, 2), prec);
    if raw.certainly_lt(&half) {
        (raw, false)
    } else if half.certainly_le(&raw) {
        (half, true)
    } else {
        (raw.min(&half), true)
    }
}

/// `C = mu pi sin(phi/2) / sin(pi rho) - eps A csc(phi/2)`.
pub fn lower_bound_constant(phi: &Interval, rho: &BigRational, mu: &Interval, prec: u32) -> Interval {
    let (eps, _) = epsilon_choice(phi, rho, mu, prec);
    let a = go_constant(mu, rho, prec);
    let sh = elementary::sin(&phi.mul_pow2(-1));
    let first = &growth_coefficient(mu, rho, prec) * &sh;
    let second = (&eps * &a).checked_div(&sh).unwrap();
    &first - &second
}

/// `K = (2(d+1)/C)^(1/rho)` and `R_H = K (log H)^(1/rho)`.
pub fn cutoff_radius(params: &TheoremParams, prec: u32) -> (Interval, Interval) {
    let c = lower_bound_constant(&params.phi, &params.rho, &params.mu, prec);
    let inv_rho = Interval::from_rational(&params.rho.recip(), prec);
    let base = Interval::from_i64(2 * (params.d as i64 + 1)).checked_div(&c).unwrap();
    let k = elementary::pow(&base, &inv_rho).expect("C > 0");
    let log_h = params.h.log_enclosure(prec);
    let r_h = &k * &elementary::pow(&log_h, &inv_rho).expect("log H > 0");
    (k, r_h)
}

/// Exponents `alpha = 1 + rho`, `beta = lambda/2`,
/// `gamma = (2 alpha + rho)/(beta rho)`, `eta = 2 alpha (gamma + 1)/rho`.
#[derive(Clone, Debug, PartialEq)]
pub struct Exponents {
    pub alpha: BigRational,
    pub beta: BigRational,
    pub gamma: BigRational,
    pub eta: BigRational,
}

pub fn exponents(rho: &BigRational, lambda: &BigRational) -> Exponents {
    let one = BigRational::one();
    let two = BigRational::from_integer(2.into());
    let alpha = &one + rho;
    let beta = lambda / &two;
    let gamma = (&two * &alpha + rho) / (&beta * rho);
    let eta = &two * &alpha * (&gamma + &one) / rho;
    Exponents {
        alpha,
        beta,
        gamma,
        eta,
    }
}

/// Scale factors standing in for the unspecified constants of the
/// counting argument.
#[derive(Clone, Debug, PartialEq)]
pub struct Multipliers {
    /// `Z = z (log H)^(1/rho)`.
    pub z: BigRational,
    /// `T = t (log H)^(2 alpha/rho)`.
    pub t: BigRational,
    /// Jensen radius `s = s (log H)^gamma`; `None` picks the smallest radius
    /// that still contains the cutoff disk.
    pub s: Option<BigRational>,
    /// Anchor radii start at `floor(anchor (log H)^gamma)`.
    pub anchor: BigRational,
    /// Final bound `bound (log H)^eta`.
    pub bound: BigRational,
}

impl Default for Multipliers {
    fn default() -> Self {
        Multipliers {
            z: BigRational::one(),
            t: BigRational::one(),
            s: None,
            anchor: BigRational::one(),
            bound: BigRational::one(),
        }
    }
}

impl Multipliers {
    pub fn uniform(m: BigRational) -> Self {
        Multipliers {
            z: m.clone(),
            t: m.clone(),
            s: Some(m.clone()),
            anchor: m.clone(),
            bound: m,
        }
    }
}

/// Every constant of the argument for one parameter set.
#[derive(Clone, Debug)]
pub struct ConstantSet {
    pub a_go: Interval,
    pub epsilon: Interval,
    pub epsilon_capped: bool,
    pub c_lower: Interval,
    pub k: Interval,
    pub r_h: Interval,
    pub exponents: Exponents,
    pub log_h: Interval,
    /// Degree bound of the auxiliary polynomial.
    pub t: Interval,
    /// Separation constant `A = 1/(2 R_H)`.
    pub a_sep: Interval,
    pub z: Interval,
    /// `log M = (2Z)^alpha`; `M` itself is far outside floating range.
    pub log_m: Interval,
    /// `m_s (log H)^gamma` when a Jensen multiplier is set.
    pub s: Option<Interval>,
    /// `m_anchor (log H)^gamma`; anchor radii are the integers after it.
    pub anchor_base: Interval,
    pub bound: Interval,
    pub multipliers: Multipliers,
}

pub fn masser_parameters(params: &TheoremParams, mult: &Multipliers, prec: u32) -> ConstantSet {
    let a_go = go_constant(&params.mu, &params.rho, prec);
    let (epsilon, epsilon_capped) = epsilon_choice(&params.phi, &params.rho, &params.mu, prec);
    let c_lower = lower_bound_constant(&params.phi, &params.rho, &params.mu, prec);
    let (k, r_h) = cutoff_radius(params, prec);
    let ex = exponents(&params.rho, &params.lambda);
    let log_h = params.h.log_enclosure(prec);
    let lh_pow = |e: &BigRational| elementary::pow(&log_h, &Interval::from_rational(e, prec)).unwrap();
    let q = |m: &BigRational| Interval::from_rational(m, prec);
    let two = BigRational::from_integer(2.into());
    let z = &q(&mult.z) * &lh_pow(&params.rho.recip());
    let t = &q(&mult.t) * &lh_pow(&(&two * &ex.alpha / &params.rho));
    let a_sep = Interval::one().checked_div(&r_h.mul_pow2(1)).unwrap();
    let log_m = elementary::pow(&z.mul_pow2(1), &Interval::from_rational(&ex.alpha, prec)).unwrap();
    let s = mult.s.as_ref().map(|m| &q(m) * &lh_pow(&ex.gamma));
    let anchor_base = &q(&mult.anchor) * &lh_pow(&ex.gamma);
    let bound = &q(&mult.bound) * &lh_pow(&ex.eta);
    ConstantSet {
        a_go,
        epsilon,
        epsilon_capped,
        c_lower,
        k,
        r_h,
        exponents: ex,
        log_h,
        t,
        a_sep,
        z,
        log_m,
        s,
        anchor_base,
        bound,
        multipliers: mult.clone(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    Holds,
    Fails,
    Undecided,
}

/// `(AZ)^T > (4T)^(96 d^2 / T) (M + 1)^(16 d) H^(48 d^2)` in logarithmic
/// form, with `margin = lhs - rhs`.
#[derive(Clone, Debug)]
pub struct MasserReport {
    pub decision: Decision,
    pub lhs: Interval,
    pub rhs: Interval,
    pub margin: Interval,
}

pub fn masser_condition_holds(cs: &ConstantSet, d: u32) -> MasserReport {
    masser_inequality(&cs.t, &(&cs.a_sep * &cs.z), &cs.log_m, &cs.log_h, d)
}

/// The same inequality for explicit `T`, `AZ`, `log M` and `log H`.
pub fn masser_inequality(t: &Interval, az: &Interval, log_m: &Interval, log_h: &Interval, d: u32) -> MasserReport {
    let prec = t.prec().max(64);
    let d = d as i64;
    let rhs_t = (&Interval::from_i64(96 * d * d) * &elementary::ln(&t.mul_pow2(2)).expect("T > 0"))
        .checked_div(t)
        .unwrap();
    // log(M + 1) = log M + log(1 + 1/M) with 0 < log(1 + 1/M) < 1/M; for
    // M < 1 fall back to [0, log 2]
    let log_m1 = if log_m.lo() >= &Dyadic::zero() {
        let inv_m = elementary::exp(&-log_m);
        Interval::new(log_m.lo().clone(), (log_m + &inv_m).hi().clone(), prec)
    } else {
        Interval::new(Dyadic::zero(), elementary::ln2(prec).hi().clone(), prec)
    };
    let rhs = &(&rhs_t + &(&Interval::from_i64(16 * d) * &log_m1)) + &(&Interval::from_i64(48 * d * d) * log_h);
    let lhs = match elementary::ln(az) {
        Some(l) => t * &l,
        // AZ may touch 0: log(AZ) is only bounded above
        None => Interval::new(Dyadic::from_i64(-1).mul_pow2(1000), Dyadic::zero(), prec),
    };
    let margin = &lhs - &rhs;
    let decision = if az.hi() <= &Dyadic::one() || margin.hi() <= &Dyadic::zero() {
        // log(AZ) <= 0 while rhs > 0
        Decision::Fails
    } else if margin.is_positive() {
        Decision::Holds
    } else {
        Decision::Undecided
    };
    MasserReport {
        decision,
        lhs,
        rhs,
        margin,
    }
}

/// Position of a point relative to the closed sector `|arg z| <= phi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SectorPosition {
    Inside,
    Outside,
    Undecided,
}

/// Certified sector test through `g(w) = Re(w) sin(phi) - |Im(w)| cos(phi)`,
/// which is positive inside, negative outside and zero on the rays. The
/// origin belongs to the closed sector.
pub fn in_sector(z: &ComplexEnclosure, phi: &Interval) -> SectorPosition {
    if z.re.is_point() && z.im.is_point() && z.contains_zero() {
        return SectorPosition::Inside;
    }
    let prec = phi.prec().max(z.prec()).max(64);
    let phi = phi.clone().with_prec(prec);
    let (s, c) = elementary::sin_cos(&phi);
    let g = &(&z.re * &s) - &(&z.im.abs() * &c);
    if g.is_positive() {
        SectorPosition::Inside
    } else if g.is_negative() {
        SectorPosition::Outside
    } else {
        SectorPosition::Undecided
    }
}

/// `z^rho e^(-i pi rho) = |z|^rho e^(i rho (theta - pi))` with
/// `theta = arg z` in `[0, 2 pi)`.
pub fn rotated_power(z: &ComplexEnclosure, rho: &BigRational, prec: u32) -> Result<ComplexEnclosure> {
    let theta = z.clone().with_prec(prec).arg_from_zero()?;
    let pi = elementary::pi(prec);
    let rho_i = Interval::from_rational(rho, prec);
    let r = z.abs();
    let r_rho = elementary::pow(&r, &rho_i).ok_or(Error::ZeroAtOrigin)?;
    let angle = &rho_i * &(&theta - &pi);
    let (s, c) = elementary::sin_cos(&angle);
    Ok(ComplexEnclosure::new(&r_rho * &c, &r_rho * &s))
}

/// Growth defect at one point.
#[derive(Clone, Debug)]
pub struct DefectReport {
    /// `|log f(z) - mu pi / sin(pi rho) * e^(-i pi rho) z^rho|`.
    pub defect: Interval,
    /// `eps A |z|^rho csc(phi/2)`.
    pub budget: Interval,
    pub decision: Decision,
}

pub fn go_defect(spec: &ZeroSequenceSpec, phi: &Interval, z: &ComplexEnclosure, prec: u32) -> Result<DefectReport> {
    match in_sector(z, phi) {
        SectorPosition::Outside => {}
        _ => return Err(Error::SectorViolation),
    }
    let rho = spec.rho();
    let mu = spec.mu(prec);
    let lf = log_product(spec, z, prec)?;
    let main = rotated_power(z, &rho, prec)?.scale(&growth_coefficient(&mu, &rho, prec));
    let defect = (&lf - &main).abs();
    let (eps, _) = epsilon_choice(phi, &rho, &mu, prec);
    let a = go_constant(&mu, &rho, prec);
    let r_rho = elementary::pow(&z.abs(), &Interval::from_rational(&rho, prec)).unwrap();
    let budget = (&(&eps * &a) * &r_rho)
        .checked_div(&elementary::sin(&phi.mul_pow2(-1)))
        .unwrap();
    let decision = if defect.certainly_le(&budget) {
        Decision::Holds
    } else if budget.certainly_lt(&defect) {
        Decision::Fails
    } else {
        Decision::Undecided
    };
    Ok(DefectReport {
        defect,
        budget,
        decision,
    })
}

/// Point `r e^(i theta)`.
pub fn polar(r: &Interval, theta: &Interval) -> ComplexEnclosure {
    let (s, c) = elementary::sin_cos(theta);
    ComplexEnclosure::new(r * &c, r * &s)
}

/// Defect rows on a radius/angle grid and the empirical onset radius `r1`:
/// the smallest grid radius from which the defect stays within budget at
/// every larger grid radius and every angle.
#[derive(Clone, Debug)]
pub struct AsymptoticReport {
    pub rows: Vec<(f64, f64, DefectReport)>,
    pub r1: Option<f64>,
    /// `2 r1`, the radius downstream checks treat as asymptotic.
    pub r1_safe: Option<f64>,
}

pub fn locate_r1(
    spec: &ZeroSequenceSpec,
    phi: &Interval,
    radii: &[f64],
    thetas: &[Interval],
    prec: u32,
) -> Result<AsymptoticReport> {
    let mut radii = radii.to_vec();
    radii.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut rows = Vec::new();
    let mut ok_from: Vec<bool> = Vec::with_capacity(radii.len());
    for &r in &radii {
        let ri = Interval::from_f64(r).with_prec(prec);
        let mut all = true;
        for theta in thetas {
            let z = polar(&ri, theta);
            let rep = go_defect(spec, phi, &z, prec)?;
            all &= rep.decision == Decision::Holds;
            rows.push((r, theta.mid_f64(), rep));
        }
        ok_from.push(all);
    }
    let mut r1 = None;
    for i in (0..radii.len()).rev() {
        if ok_from[i] {
            r1 = Some(radii[i]);
        } else {
            break;
        }
    }
    Ok(AsymptoticReport {
        rows,
        r1,
        r1_safe: r1.map(|r| 2.0 * r),
    })
}

/// One angle of the cutoff check.
#[derive(Clone, Debug)]
pub struct CutoffRow {
    pub theta: f64,
    /// Certified lower bound for `log |f(r e^(i theta))|`.
    pub log_abs_f: Interval,
    /// `C r^rho`.
    pub growth_floor: Interval,
    /// `(d + 1) log(2H)`.
    pub height_floor: Interval,
    /// `|f| >= e^(C r^rho)` certified.
    pub growth_ok: bool,
    /// `e^(C r^rho) >= (2H)^(d+1)` certified; `None` below the cutoff.
    pub cutoff_ok: Option<bool>,
    /// `|f| >= (2H)^(d+1)` certified directly.
    pub direct_ok: bool,
}

#[derive(Clone, Debug)]
pub struct CutoffReport {
    pub r: Interval,
    pub below_cutoff: bool,
    pub rows: Vec<CutoffRow>,
}

/// Check the height cutoff at radius `r` over a grid of angles outside the
/// sector.
pub fn growth_cutoff_check(
    spec: &ZeroSequenceSpec,
    params: &TheoremParams,
    r: &Interval,
    thetas: &[Interval],
    prec: u32,
) -> Result<CutoffReport> {
    let (_, r_h) = cutoff_radius(params, prec);
    let below_cutoff = !r_h.certainly_le(r);
    let c = lower_bound_constant(&params.phi, &params.rho, &params.mu, prec);
    let growth_floor = &c * &elementary::pow(r, &params.rho_i(prec)).unwrap();
    let two_h_log = &params.h.log_enclosure(prec) + &elementary::ln2(prec);
    let height_floor = &Interval::from_i64(params.d as i64 + 1) * &two_h_log;
    let mut rows = Vec::new();
    for theta in thetas {
        let z = polar(r, theta);
        if in_sector(&z, &params.phi) != SectorPosition::Outside {
            continue;
        }
        let v = eval_product(spec, &z, prec)?;
        let abs = v.value.abs();
        let log_abs_f = if abs.is_positive() {
            elementary::ln(&abs).unwrap()
        } else {
            Interval::new(Dyadic::from_i64(-1).mul_pow2(64), abs.hi().clone().max(Dyadic::one()), prec)
        };
        let growth_ok = growth_floor.certainly_le(&log_abs_f);
        let cutoff_ok = (!below_cutoff).then(|| height_floor.certainly_le(&growth_floor));
        let direct_ok = height_floor.certainly_le(&log_abs_f);
        rows.push(CutoffRow {
            theta: theta.mid_f64(),
            log_abs_f,
            growth_floor: growth_floor.clone(),
            height_floor: height_floor.clone(),
            growth_ok,
            cutoff_ok,
            direct_ok,
        });
    }
    Ok(CutoffReport {
        r: r.clone(),
        below_cutoff,
        rows,
    })
}

/// Constant name, symbolic definition and the result it belongs to.
pub const FORMULA_LEDGER: &[(&str, &str, &str)] = &[
    ("A_go", "6 + 3 mu pi csc(pi rho)", "growth estimate outside the sector"),
    ("epsilon", "min(mu pi sin^2(phi/2) / (4 A_go sin(pi rho)), 1/2)", "growth estimate outside the sector"),
    ("C_lower", "mu pi sin(phi/2)/sin(pi rho) - epsilon A_go csc(phi/2)", "lower bound for |f| outside the sector"),
    ("K", "(2(d+1)/C_lower)^(1/rho)", "height cutoff radius"),
    ("R_H", "K (log H)^(1/rho)", "height cutoff radius"),
    ("alpha", "1 + rho", "counting theorem"),
    ("beta", "lambda / 2", "counting theorem"),
    ("gamma", "(2 alpha + rho) / (beta rho)", "counting theorem"),
    ("eta", "2 alpha (gamma + 1) / rho", "counting theorem (bound exponent)"),
    ("A_sep", "1 / (2 R_H)", "auxiliary polynomial separation"),
    ("Z", "m_z (log H)^(1/rho)", "auxiliary polynomial radius"),
    ("T", "m_t (log H)^(2 alpha / rho)", "auxiliary polynomial degree"),
    ("log M", "(2 Z)^alpha", "auxiliary polynomial growth"),
    ("s", "m_s (log H)^gamma", "Jensen radius"),
    ("bound", "m_b (log H)^eta", "final count bound"),
    ("sector", "arg z in [0, 2 pi); z^rho e^(-i pi rho) = |z|^rho e^(i rho (arg z - pi))", "branch convention"),
];

/// Formula ledger as aligned text.
pub fn formula_ledger_text() -> String {
    let mut out = String::new();
    for (name, formula, site) in FORMULA_LEDGER {
        out.push_str(&format!("{name:<8} = {formula:<60} [{site}]\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn approx(i: &Interval, v: f64, tol: f64) -> bool {
        (i.mid_f64() - v).abs() <= tol && i.width_f64() <= tol
    }

    fn pi_over(k: i64, prec: u32) -> Interval {
        elementary::pi(prec).checked_div(&Interval::from_i64(k)).unwrap()
    }

    fn params(h: HeightBound) -> TheoremParams {
        TheoremParams {
            phi: pi_over(3, 128),
            rho: rat(1, 2),
            lambda: rat(1, 2),
            mu: Interval::one(),
            d: 1,
            h,
        }
    }

    #[test]
    fn go_constant_examples() {
        assert!(approx(&go_constant(&Interval::one(), &rat(1, 2), 128), 6.0 + 3.0 * PI, 1e-12));
        let a = go_constant(&Interval::from_i64(2), &rat(1, 3), 128);
        assert!(approx(&a, 6.0 + 6.0 * PI * 2.0 / 3f64.sqrt(), 1e-12));
        assert!((a.mid_f64() - 27.7656).abs() < 1e-3);
        let tiny = Interval::from_f64(1e-12);
        assert!((go_constant(&tiny, &rat(1, 4), 64).mid_f64() - 6.0).abs() < 1e-10);
    }

    #[test]
    fn epsilon_and_lower_constant() {
        let phi = pi_over(3, 128);
        let (eps, capped) = epsilon_choice(&phi, &rat(1, 2), &Interval::one(), 128);
        assert!(!capped);
        let a = 6.0 + 3.0 * PI;
        assert!(approx(&eps, PI * 0.25 / (4.0 * a), 1e-12));
        assert!((eps.mid_f64() - 0.0127287).abs() < 1e-6);
        let c = lower_bound_constant(&phi, &rat(1, 2), &Interval::one(), 128);
        assert!((c.mid_f64() - 0.75 * PI * 0.5).abs() < 1e-12);
        assert!(c.lo_f64() > PI * 0.5 / 2.0);
        // A_go > 3 mu pi csc(pi rho) forces eps < sin^2(phi/2)/12, so the
        // cap at 1/2 never applies
        let wide = Interval::from_f64(1.5);
        let (eps, capped) = epsilon_choice(&wide, &rat(1, 2), &Interval::from_i64(100), 128);
        assert!(!capped);
        assert!(eps.hi_f64() < 0.75f64.sin().powi(2) / 12.0);
    }

    #[test]
    fn cutoff_examples() {
        let p = params(HeightBound::ExpOf(BigRational::from_float(std::f64::consts::E).unwrap()));
        let (k, r_h) = cutoff_radius(&p, 128);
        let c = 0.75 * PI * 0.5;
        assert!(approx(&k, (4.0 / c).powi(2), 1e-9));
        assert!((k.mid_f64() - 11.52812).abs() < 1e-4);
        assert!(approx(&r_h, (4.0 / c).powi(2) * std::f64::consts::E.powi(2), 1e-9));
        let mut p2 = p.clone();
        p2.d = 2;
        assert!(cutoff_radius(&p2, 128).0.lo() > k.hi());
    }

    #[test]
    fn exponent_examples() {
        let e = exponents(&rat(1, 2), &rat(1, 2));
        assert_eq!((e.alpha.clone(), e.beta.clone()), (rat(3, 2), rat(1, 4)));
        assert_eq!((e.gamma.clone(), e.eta.clone()), (rat(28, 1), rat(174, 1)));
        let e = exponents(&rat(1, 3), &rat(1, 3));
        assert_eq!((e.alpha, e.beta, e.gamma, e.eta), (rat(4, 3), rat(1, 6), rat(54, 1), rat(440, 1)));
    }

    #[test]
    fn masser_example() {
        let p = params(HeightBound::ExpOf(BigRational::from_float(std::f64::consts::E).unwrap()));
        let m = Multipliers::uniform(BigRational::from_integer(100.into()));
        let cs = masser_parameters(&p, &m, 128);
        let e2 = std::f64::consts::E.powi(2);
        assert!((cs.z.mid_f64() - 100.0 * e2).abs() < 1e-6);
        assert!((cs.a_sep.mid_f64() * cs.z.mid_f64() - 4.337).abs() < 1e-3);
        assert!((cs.t.mid_f64() - 100.0 * std::f64::consts::E.powi(6)).abs() < 1e-5);
        let rep = masser_condition_holds(&cs, 1);
        assert_ne!(rep.decision, Decision::Undecided);
    }

    #[test]
    fn sector_examples() {
        let phi = pi_over(3, 128);
        assert_eq!(in_sector(&ComplexEnclosure::from_i64(-1), &phi), SectorPosition::Outside);
        assert_eq!(in_sector(&ComplexEnclosure::from_i64(1), &phi), SectorPosition::Inside);
        let edge = polar(&Interval::one(), &phi);
        assert_eq!(in_sector(&edge, &phi), SectorPosition::Undecided);
        assert_eq!(in_sector(&ComplexEnclosure::zero(), &phi), SectorPosition::Inside);
    }

    #[test]
    fn defect_on_negative_axis_and_sector_error() {
        let spec = ZeroSequenceSpec::power_law(1, 2);
        let phi = pi_over(3, 128);
        let rep = go_defect(&spec, &phi, &ComplexEnclosure::from_i64(-10_000), 128).unwrap();
        // log f(-r) - pi sqrt(r) = log((1 - e^(-2 pi sqrt r)) / (2 pi sqrt r))
        let want = (2.0 * PI * 100.0).ln();
        assert!((rep.defect.mid_f64() - want).abs() < 1e-9);
        assert_eq!(rep.decision, Decision::Holds);
        assert!(matches!(
            go_defect(&spec, &phi, &ComplexEnclosure::from_i64(5), 64),
            Err(Error::SectorViolation)
        ));
    }

    #[test]
    fn cutoff_check_rows() {
        let spec = ZeroSequenceSpec::power_law(1, 2);
        let p = params(HeightBound::ExpOf(BigRational::from_integer(3.into())));
        let (_, r_h) = cutoff_radius(&p, 128);
        let rep = growth_cutoff_check(&spec, &p, &r_h.mul_pow2(1), &[elementary::pi(128)], 128).unwrap();
        assert!(!rep.below_cutoff);
        assert!(rep.rows[0].growth_ok && rep.rows[0].cutoff_ok == Some(true) && rep.rows[0].direct_ok);
        let small = growth_cutoff_check(&spec, &p, &Interval::from_i64(10), &[elementary::pi(128)], 128).unwrap();
        assert!(small.below_cutoff && small.rows[0].cutoff_ok.is_none());
        assert!(growth_cutoff_check(&spec, &p, &r_h, &[], 128).unwrap().rows.is_empty());
    }
}
