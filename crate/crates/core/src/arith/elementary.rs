//! Certified elementary functions on intervals.
//!
//! Every routine evaluates a truncated series in interval arithmetic and
//! widens the result by an explicit bound on the discarded tail, so results
//! are enclosures rather than approximations.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::dyadic::Dyadic;
use super::interval::{Interval, FALLBACK_PREC};

const GUARD: u32 = 32;

fn eff(prec: u32) -> u32 {
    if prec == 0 {
        FALLBACK_PREC
    } else {
        prec
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Const {
    Pi,
    Ln2,
    E,
}

fn cache() -> &'static Mutex<HashMap<(Const, u32), Interval>> {
    static CACHE: OnceLock<Mutex<HashMap<(Const, u32), Interval>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached(c: Const, prec: u32, compute: impl FnOnce(u32) -> Interval) -> Interval {
    // Round the key up so nearby precisions share an entry.
    let key_prec = eff(prec).div_ceil(64) * 64;
    if let Some(v) = cache().lock().unwrap().get(&(c, key_prec)) {
        return v.clone().with_prec(prec);
    }
    let v = compute(key_prec);
    cache().lock().unwrap().insert((c, key_prec), v.clone());
    v.with_prec(prec)
}

fn tiny(w: u32) -> Dyadic {
    Dyadic::pow2(-(w as i64))
}

/// `atan(x)` by its Taylor series; requires `|x| <= 1/2`.
fn atan_series(x: &Interval, w: u32) -> Interval {
    let x = x.clone().with_prec(w);
    let x2 = x.sqr();
    let mut term = x.clone();
    let mut sum = x.clone();
    let mut n: i64 = 1;
    let eps = tiny(w + 2);
    loop {
        term = -(&term * &x2);
        n += 2;
        let contrib = term.checked_div(&Interval::from_i64(n)).unwrap();
        sum = &sum + &contrib;
        if contrib.mag() < eps {
            // alternating-magnitude tail is bounded by the next term
            let bound = (&term * &x2).mag();
            return sum.inflate(&bound);
        }
    }
}

/// `atanh(u)` by its odd power series; requires `|u| <= 1/2`.
fn atanh_series(u: &Interval, w: u32) -> Interval {
    let u = u.clone().with_prec(w);
    let u2 = u.sqr();
    let mut term = u.clone();
    let mut sum = u.clone();
    let mut n: i64 = 1;
    let eps = tiny(w + 2);
    loop {
        term = &term * &u2;
        n += 2;
        let contrib = term.checked_div(&Interval::from_i64(n)).unwrap();
        sum = &sum + &contrib;
        if contrib.mag() < eps {
            // tail <= |term| * u2 / (1 - u2) <= 2 |term| u2 with u2 <= 1/4
            let bound = (&term * &u2).mag().mul_pow2(1);
            return sum.inflate(&bound);
        }
    }
}

pub fn pi(prec: u32) -> Interval {
    cached(Const::Pi, prec, |p| {
        let w = p + GUARD;
        let fifth = Interval::one()
            .with_prec(w)
            .checked_div(&Interval::from_i64(5))
            .unwrap();
        let inv239 = Interval::one()
            .with_prec(w)
            .checked_div(&Interval::from_i64(239))
            .unwrap();
        let a = atan_series(&fifth, w).mul_pow2(4);
        let b = atan_series(&inv239, w).mul_pow2(2);
        (&a - &b).rounded(p)
    })
}

pub fn ln2(prec: u32) -> Interval {
    cached(Const::Ln2, prec, |p| {
        let w = p + GUARD;
        let third = Interval::one()
            .with_prec(w)
            .checked_div(&Interval::from_i64(3))
            .unwrap();
        atanh_series(&third, w).mul_pow2(1).rounded(p)
    })
}

pub fn e(prec: u32) -> Interval {
    cached(Const::E, prec, |p| exp_point(&Dyadic::one(), p))
}

fn bits_of(k: i64) -> u32 {
    64 - k.unsigned_abs().leading_zeros()
}

fn exp_point(x: &Dyadic, prec: u32) -> Interval {
    let prec = eff(prec);
    if x.is_zero() {
        return Interval::one().with_prec(prec);
    }
    let xf = x.to_f64();
    let k = (xf / std::f64::consts::LN_2).round() as i64;
    let w = prec + GUARD + bits_of(k) + 8;
    let ln2w = ln2(w + bits_of(k));
    let r = &Interval::point(x.clone()).with_prec(w) - &(&ln2w * &Interval::from_i64(k));
    const HALVINGS: i64 = 8;
    let t = r.mul_pow2(-HALVINGS);
    let mut term = Interval::one().with_prec(w);
    let mut sum = term.clone();
    let eps = tiny(w + 2);
    let mut n = 0i64;
    loop {
        n += 1;
        term = (&term * &t).checked_div(&Interval::from_i64(n)).unwrap();
        sum = &sum + &term;
        if term.mag() < eps {
            // |t| <= 1/2 so the remaining tail is below |term|
            sum = sum.inflate(&term.mag());
            break;
        }
    }
    for _ in 0..HALVINGS {
        sum = sum.sqr();
    }
    sum.mul_pow2(k).rounded(prec)
}

fn ln_point(x: &Dyadic, prec: u32) -> Option<Interval> {
    let prec = eff(prec);
    if !x.is_positive() {
        return None;
    }
    if x == &Dyadic::one() {
        return Some(Interval::zero().with_prec(prec));
    }
    let mut t = x.top_bit().unwrap();
    let mut y = x.mul_pow2(-t);
    if y > Dyadic::from_f64(std::f64::consts::SQRT_2).unwrap() {
        t += 1;
        y = y.mul_pow2(-1);
    }
    let w = prec + GUARD + bits_of(t);
    let yi = Interval::point(y).with_prec(w);
    let one = Interval::one();
    let u = (&yi - &one).checked_div(&(&yi + &one)).unwrap();
    let s = atanh_series(&u, w).mul_pow2(1);
    let res = &s + &(&ln2(w + bits_of(t)) * &Interval::from_i64(t));
    Some(res.rounded(prec))
}

fn atan_point(x: &Dyadic, prec: u32) -> Interval {
    let prec = eff(prec);
    if x.is_zero() {
        return Interval::zero().with_prec(prec);
    }
    let w = prec + GUARD;
    let xi = Interval::point(x.clone()).with_prec(w);
    if x.abs() > Dyadic::one() {
        let inv = xi.recip().unwrap();
        let inner = atan_point_small(&inv, w);
        let half_pi = pi(w).mul_pow2(-1);
        let res = if x.is_positive() {
            &half_pi - &inner
        } else {
            -(&half_pi) - inner
        };
        return res.rounded(prec);
    }
    atan_point_small(&xi, w).rounded(prec)
}

/// atan for `|x| <= 1` via two argument halvings.
fn atan_point_small(x: &Interval, w: u32) -> Interval {
    let mut y = x.clone();
    for _ in 0..2 {
        let den = &Interval::one() + &(&Interval::one() + &y.sqr()).sqrt().unwrap();
        y = y.checked_div(&den).unwrap();
    }
    atan_series(&y, w).mul_pow2(2)
}

/// `(sin x, cos x)` for a dyadic point.
fn sin_cos_point(x: &Dyadic, prec: u32) -> (Interval, Interval) {
    let prec = eff(prec);
    let unit = Interval::new(Dyadic::from_i64(-1), Dyadic::one(), prec);
    if x.is_zero() {
        return (
            Interval::zero().with_prec(prec),
            Interval::one().with_prec(prec),
        );
    }
    let xf = x.to_f64();
    if !(xf.abs() < 2f64.powi(50)) {
        return (unit.clone(), unit);
    }
    let k = (xf / std::f64::consts::FRAC_PI_2).round() as i64;
    let w = prec + GUARD + bits_of(k);
    let half_pi = pi(w + bits_of(k) + 8).mul_pow2(-1);
    let r = &Interval::point(x.clone()).with_prec(w) - &(&half_pi * &Interval::from_i64(k));
    let r2 = r.sqr();
    let eps = tiny(w + 2);

    let mut term = r.clone();
    let mut s = r.clone();
    let mut n = 1i64;
    loop {
        term = -(&term * &r2)
            .checked_div(&Interval::from_i64((n + 1) * (n + 2)))
            .unwrap();
        n += 2;
        s = &s + &term;
        if term.mag() < eps {
            s = s.inflate(&term.mag());
            break;
        }
    }

    let mut term = Interval::one().with_prec(w);
    let mut c = term.clone();
    let mut n = 0i64;
    loop {
        term = -(&term * &r2)
            .checked_div(&Interval::from_i64((n + 1) * (n + 2)))
            .unwrap();
        n += 2;
        c = &c + &term;
        if term.mag() < eps {
            c = c.inflate(&term.mag());
            break;
        }
    }

    let (s, c) = match k.rem_euclid(4) {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    };
    let clamp = |v: Interval| v.intersect(&unit).unwrap_or(unit.clone()).rounded(prec);
    (clamp(s), clamp(c))
}

pub fn exp(x: &Interval) -> Interval {
    let p = x.prec();
    if x.is_point() {
        return exp_point(x.lo(), p);
    }
    let lo = exp_point(x.lo(), p);
    let hi = exp_point(x.hi(), p);
    Interval::new(lo.lo().clone(), hi.hi().clone(), p)
}

/// Natural logarithm; `None` unless the interval is strictly positive.
pub fn ln(x: &Interval) -> Option<Interval> {
    let p = x.prec();
    if !x.is_positive() {
        return None;
    }
    if x.is_point() {
        return ln_point(x.lo(), p);
    }
    let lo = ln_point(x.lo(), p)?;
    let hi = ln_point(x.hi(), p)?;
    Some(Interval::new(lo.lo().clone(), hi.hi().clone(), p))
}

pub fn atan(x: &Interval) -> Interval {
    let p = x.prec();
    if x.is_point() {
        return atan_point(x.lo(), p);
    }
    let lo = atan_point(x.lo(), p);
    let hi = atan_point(x.hi(), p);
    Interval::new(lo.lo().clone(), hi.hi().clone(), p)
}

pub fn sin(x: &Interval) -> Interval {
    lipschitz_trig(x, true)
}

pub fn cos(x: &Interval) -> Interval {
    lipschitz_trig(x, false)
}

/// `(sin x, cos x)` from a single series evaluation at the midpoint.
pub fn sin_cos(x: &Interval) -> (Interval, Interval) {
    let p = eff(x.prec());
    let (s, c) = sin_cos_point(&x.mid(), p);
    (widen_trig(s, x), widen_trig(c, x))
}

/// Both trig functions are 1-Lipschitz.
fn widen_trig(v: Interval, x: &Interval) -> Interval {
    if x.is_point() {
        return v.with_prec(x.prec());
    }
    let unit = Interval::new(Dyadic::from_i64(-1), Dyadic::one(), v.prec());
    v.inflate(&x.rad())
        .intersect(&unit)
        .unwrap_or(unit)
        .with_prec(x.prec())
}

fn lipschitz_trig(x: &Interval, want_sin: bool) -> Interval {
    let (s, c) = sin_cos_point(&x.mid(), eff(x.prec()));
    widen_trig(if want_sin { s } else { c }, x)
}

/// `x^y` for positive `x`.
pub fn pow(x: &Interval, y: &Interval) -> Option<Interval> {
    Some(exp(&(&ln(x)? * y)))
}

pub fn sinh(x: &Interval) -> Interval {
    let a = exp(x);
    let b = exp(&-x);
    (&a - &b).mul_pow2(-1)
}

pub fn cosh(x: &Interval) -> Interval {
    let a = exp(x);
    let b = exp(&-x);
    (&a + &b).mul_pow2(-1)
}
