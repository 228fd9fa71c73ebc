//! Axis-aligned complex boxes.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use super::dyadic::Dyadic;
use super::elementary;
use super::interval::Interval;
use crate::error::{Error, Result};

/// A rectangle `[re_lo, re_hi] x [im_lo, im_hi]` with dyadic (hence
/// rational) corners. Every analytic routine in the crate returns one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ComplexEnclosure {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexEnclosure {
    pub fn new(re: Interval, im: Interval) -> Self {
        ComplexEnclosure { re, im }
    }

    pub fn real(re: Interval) -> Self {
        ComplexEnclosure {
            re,
            im: Interval::zero(),
        }
    }

    pub fn zero() -> Self {
        ComplexEnclosure::real(Interval::zero())
    }

    pub fn one() -> Self {
        ComplexEnclosure::real(Interval::one())
    }

    pub fn from_i64(v: i64) -> Self {
        ComplexEnclosure::real(Interval::from_i64(v))
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        ComplexEnclosure::new(Interval::from_f64(re), Interval::from_f64(im))
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        ComplexEnclosure::real(Interval::from_rational(q, prec))
    }

    pub fn point(re: Dyadic, im: Dyadic) -> Self {
        ComplexEnclosure::new(Interval::point(re), Interval::point(im))
    }

    pub fn with_prec(self, prec: u32) -> Self {
        ComplexEnclosure {
            re: self.re.with_prec(prec),
            im: self.im.with_prec(prec),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    /// `precision_bits` of the request that produced this enclosure.
    pub fn precision_bits(&self) -> u32 {
        self.prec()
    }

    pub fn re_lo(&self) -> BigRational {
        self.re.lo().to_rational()
    }

    pub fn re_hi(&self) -> BigRational {
        self.re.hi().to_rational()
    }

    pub fn im_lo(&self) -> BigRational {
        self.im.lo().to_rational()
    }

    pub fn im_hi(&self) -> BigRational {
        self.im.hi().to_rational()
    }

    pub fn conj(&self) -> Self {
        ComplexEnclosure {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn mid(&self) -> ComplexEnclosure {
        ComplexEnclosure::point(self.re.mid(), self.im.mid()).with_prec(self.prec())
    }

    pub fn mid_f64(&self) -> (f64, f64) {
        (self.re.mid_f64(), self.im.mid_f64())
    }

    /// Larger of the two side lengths.
    pub fn width(&self) -> Dyadic {
        self.re.width().max(self.im.width())
    }

    pub fn width_f64(&self) -> f64 {
        self.width().to_f64()
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn contains(&self, other: &ComplexEnclosure) -> bool {
        self.re.contains_interval(&other.re) && self.im.contains_interval(&other.im)
    }

    pub fn contains_point(&self, re: &Dyadic, im: &Dyadic) -> bool {
        self.re.contains(re) && self.im.contains(im)
    }

    pub fn overlaps(&self, other: &ComplexEnclosure) -> bool {
        self.re.overlaps(&other.re) && self.im.overlaps(&other.im)
    }

    pub fn hull(&self, other: &ComplexEnclosure) -> ComplexEnclosure {
        ComplexEnclosure {
            re: self.re.hull(&other.re),
            im: self.im.hull(&other.im),
        }
    }

    pub fn inflate(&self, r: &Dyadic) -> ComplexEnclosure {
        ComplexEnclosure {
            re: self.re.inflate(r),
            im: self.im.inflate(r),
        }
    }

    pub fn scale(&self, k: &Interval) -> ComplexEnclosure {
        ComplexEnclosure {
            re: &self.re * k,
            im: &self.im * k,
        }
    }

    pub fn mul_pow2(&self, k: i64) -> ComplexEnclosure {
        ComplexEnclosure {
            re: self.re.mul_pow2(k),
            im: self.im.mul_pow2(k),
        }
    }

    pub fn norm_sqr(&self) -> Interval {
        &self.re.sqr() + &self.im.sqr()
    }

    /// Enclosure of `|z|` over the box.
    pub fn abs(&self) -> Interval {
        if self.im.is_point() && self.im.lo().is_zero() {
            return self.re.abs();
        }
        if self.re.is_point() && self.re.lo().is_zero() {
            return self.im.abs();
        }
        self.norm_sqr().sqrt().expect("norm is nonnegative")
    }

    pub fn sqr(&self) -> ComplexEnclosure {
        ComplexEnclosure {
            re: &self.re.sqr() - &self.im.sqr(),
            im: (&self.re * &self.im).mul_pow2(1),
        }
    }

    pub fn recip(&self) -> Option<ComplexEnclosure> {
        let n = self.norm_sqr();
        if !n.is_positive() {
            return None;
        }
        Some(ComplexEnclosure {
            re: self.re.checked_div(&n)?,
            im: (-&self.im).checked_div(&n)?,
        })
    }

    pub fn checked_div(&self, other: &ComplexEnclosure) -> Option<ComplexEnclosure> {
        if other.im.is_point() && other.im.lo().is_zero() {
            return Some(ComplexEnclosure {
                re: self.re.checked_div(&other.re)?,
                im: self.im.checked_div(&other.re)?,
            });
        }
        Some(self * &other.recip()?)
    }

    pub fn powu(&self, n: u32) -> ComplexEnclosure {
        if n == 0 {
            return ComplexEnclosure::one().with_prec(self.prec());
        }
        if n.is_multiple_of(2) {
            return self.powu(n / 2).sqr();
        }
        &self.powu(n - 1) * self
    }

    pub fn exp(&self) -> ComplexEnclosure {
        let m = elementary::exp(&self.re);
        if self.im.is_point() && self.im.lo().is_zero() {
            return ComplexEnclosure::real(m);
        }
        let (s, c) = elementary::sin_cos(&self.im);
        ComplexEnclosure {
            re: &m * &c,
            im: &m * &s,
        }
    }

    /// Principal argument in `(-pi, pi]`. Fails if the box meets the
    /// closed negative real axis (including the origin) other than from
    /// the closed upper side.
    pub fn arg(&self) -> Result<Interval> {
        let prec = self.prec();
        if self.re.is_positive() {
            return Ok(self.corner_args(prec, atan2_right));
        }
        if self.im.is_positive() || (self.im.lo().is_zero() && self.re.is_negative()) {
            return Ok(self.corner_args(prec, atan2_upper));
        }
        if self.im.is_negative() {
            return Ok(self.corner_args(prec, |y, x| -atan2_upper(&-y, x)));
        }
        Err(Error::BranchCut)
    }

    fn corner_args(
        &self,
        prec: u32,
        f: impl Fn(&Interval, &Interval) -> Interval,
    ) -> Interval {
        let xs = [self.re.lo(), self.re.hi()];
        let ys = [self.im.lo(), self.im.hi()];
        let mut acc: Option<Interval> = None;
        for x in xs {
            for y in ys {
                let xi = Interval::point(x.clone()).with_prec(prec);
                let yi = Interval::point(y.clone()).with_prec(prec);
                let a = f(&yi, &xi);
                acc = Some(match acc {
                    Some(v) => v.hull(&a),
                    None => a,
                });
            }
        }
        acc.unwrap()
    }

    /// Argument taken in `[0, 2*pi)`; defined away from the positive real
    /// axis as `pi + Arg(-z)`.
    pub fn arg_from_zero(&self) -> Result<Interval> {
        let a = (-self).arg()?;
        Ok(&elementary::pi(self.prec()) + &a)
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Result<ComplexEnclosure> {
        let arg = self.arg()?;
        let r2 = self.norm_sqr();
        let lr = elementary::ln(&r2).ok_or(Error::BranchCut)?.mul_pow2(-1);
        Ok(ComplexEnclosure { re: lr, im: arg })
    }

    /// Principal power `exp(p * Log z)`.
    pub fn powf(&self, p: &Interval) -> Result<ComplexEnclosure> {
        Ok(self.ln()?.scale(p).exp())
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Result<ComplexEnclosure> {
        if self.im.is_point() && self.im.lo().is_zero() && !self.re.lo().is_negative() {
            return Ok(ComplexEnclosure::real(self.re.sqrt().unwrap()));
        }
        self.powf(&Interval::from_f64(0.5))
    }

    pub fn sin(&self) -> ComplexEnclosure {
        let (s, c) = elementary::sin_cos(&self.re);
        if self.im.is_point() && self.im.lo().is_zero() {
            return ComplexEnclosure::real(s);
        }
        ComplexEnclosure {
            re: &s * &elementary::cosh(&self.im),
            im: &c * &elementary::sinh(&self.im),
        }
    }
}

fn atan2_right(y: &Interval, x: &Interval) -> Interval {
    elementary::atan(&y.checked_div(x).expect("x > 0"))
}

/// atan2 for `y >= 0`, any `x` not both zero.
fn atan2_upper(y: &Interval, x: &Interval) -> Interval {
    let prec = x.prec().max(y.prec());
    if x.is_positive() {
        return atan2_right(y, x);
    }
    if x.lo().is_zero() && x.hi().is_zero() {
        return elementary::pi(prec).mul_pow2(-1);
    }
    // x < 0: pi - atan(y/|x|)
    let t = elementary::atan(&y.checked_div(&-x).expect("x < 0"));
    &elementary::pi(prec) - &t
}

impl Add for &ComplexEnclosure {
    type Output = ComplexEnclosure;
    fn add(self, rhs: &ComplexEnclosure) -> ComplexEnclosure {
        ComplexEnclosure {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &ComplexEnclosure {
    type Output = ComplexEnclosure;
    fn sub(self, rhs: &ComplexEnclosure) -> ComplexEnclosure {
        ComplexEnclosure {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &ComplexEnclosure {
    type Output = ComplexEnclosure;
    fn mul(self, rhs: &ComplexEnclosure) -> ComplexEnclosure {
        let real_l = self.im.is_point() && self.im.lo().is_zero();
        let real_r = rhs.im.is_point() && rhs.im.lo().is_zero();
        if real_l && real_r {
            return ComplexEnclosure::real(&self.re * &rhs.re);
        }
        if real_r {
            return self.scale(&rhs.re);
        }
        if real_l {
            return rhs.scale(&self.re);
        }
        ComplexEnclosure {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl Neg for &ComplexEnclosure {
    type Output = ComplexEnclosure;
    fn neg(self) -> ComplexEnclosure {
        ComplexEnclosure {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl Neg for ComplexEnclosure {
    type Output = ComplexEnclosure;
    fn neg(self) -> ComplexEnclosure {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ComplexEnclosure {
            type Output = ComplexEnclosure;
            fn $m(self, rhs: ComplexEnclosure) -> ComplexEnclosure {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&ComplexEnclosure> for ComplexEnclosure {
            type Output = ComplexEnclosure;
            fn $m(self, rhs: &ComplexEnclosure) -> ComplexEnclosure {
                (&self).$m(rhs)
            }
        }
        impl $tr<ComplexEnclosure> for &ComplexEnclosure {
            type Output = ComplexEnclosure;
            fn $m(self, rhs: ComplexEnclosure) -> ComplexEnclosure {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Debug for ComplexEnclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + i{:?}", self.re, self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_of_negative_real_is_i_pi() {
        let z = ComplexEnclosure::from_i64(-1).with_prec(128);
        let l = z.ln().unwrap();
        assert!(l.re.contains(&Dyadic::zero()));
        assert!(l.im.overlaps(&elementary::pi(128)));
    }

    #[test]
    fn box_straddling_cut_is_rejected() {
        let z = ComplexEnclosure::new(
            Interval::from_i64(-2),
            Interval::new(Dyadic::from_f64(-0.1).unwrap(), Dyadic::from_f64(0.1).unwrap(), 64),
        );
        assert!(z.ln().is_err());
    }

    #[test]
    fn arg_from_zero_lower_half_plane() {
        let z = ComplexEnclosure::from_f64(0.0, -1.0).with_prec(128);
        let a = z.arg_from_zero().unwrap();
        let want = 1.5 * std::f64::consts::PI;
        assert!((a.mid_f64() - want).abs() < 1e-14);
    }

    #[test]
    fn exp_of_i_pi_is_minus_one() {
        let z = ComplexEnclosure::new(Interval::zero(), elementary::pi(128));
        let e = z.exp();
        assert!(e.re.contains(&Dyadic::from_i64(-1)));
        assert!(e.im.contains(&Dyadic::zero()));
    }

    #[test]
    fn sqrt_of_minus_four() {
        let z = ComplexEnclosure::from_i64(-4).with_prec(128);
        let s = z.sqrt().unwrap();
        assert!(s.im.contains(&Dyadic::from_i64(2)));
        assert!(s.re.contains(&Dyadic::zero()));
    }
}
