//! Outward-rounded real intervals with dyadic endpoints.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::dyadic::{rational_round, Dyadic, Round};

/// Working precision used when both operands are exact and the operation
/// needs rounding.
pub const FALLBACK_PREC: u32 = 64;

/// A closed interval `[lo, hi]`. `prec` is the mantissa size endpoints are
/// rounded to; exact values created without a precision carry `prec == 0`
/// and adopt the precision of whatever they are combined with.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

fn join_prec(a: u32, b: u32) -> u32 {
    a.max(b)
}

fn eff(prec: u32) -> u32 {
    if prec == 0 {
        FALLBACK_PREC
    } else {
        prec
    }
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi, prec }
    }

    pub fn point(v: Dyadic) -> Self {
        Interval {
            lo: v.clone(),
            hi: v,
            prec: 0,
        }
    }

    pub fn zero() -> Self {
        Interval::point(Dyadic::zero())
    }

    pub fn one() -> Self {
        Interval::point(Dyadic::one())
    }

    pub fn from_i64(v: i64) -> Self {
        Interval::point(Dyadic::from_i64(v))
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        Interval::point(Dyadic::from_bigint(v))
    }

    /// Exact image of a finite `f64`.
    pub fn from_f64(v: f64) -> Self {
        Interval::point(Dyadic::from_f64(v).expect("finite f64"))
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        let p = eff(prec);
        Interval {
            lo: rational_round(q, p, Round::Down),
            hi: rational_round(q, p, Round::Up),
            prec,
        }
    }

    pub fn with_prec(mut self, prec: u32) -> Self {
        self.prec = prec;
        self
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
            prec: join_prec(self.prec, other.prec),
        }
    }

    /// Hull of an interval with a dyadic point.
    pub fn hull_point(&self, v: &Dyadic) -> Interval {
        self.hull(&Interval::point(v.clone()))
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        if lo > hi {
            None
        } else {
            Some(Interval {
                lo,
                hi,
                prec: join_prec(self.prec, other.prec),
            })
        }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: &Dyadic) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        &self.lo.to_rational() <= q && q <= &self.hi.to_rational()
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// True when every element is strictly positive.
    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn certainly_lt(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn certainly_le(&self, other: &Interval) -> bool {
        self.hi <= other.lo
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub_exact(&self.lo)
    }

    pub fn width_f64(&self) -> f64 {
        self.width().to_f64()
    }

    /// Midpoint (exact dyadic).
    pub fn mid(&self) -> Dyadic {
        self.lo.add_exact(&self.hi).mul_pow2(-1)
    }

    pub fn mid_f64(&self) -> f64 {
        self.mid().to_f64()
    }

    /// Upper bound on the radius about `mid()`.
    pub fn rad(&self) -> Dyadic {
        self.width().mul_pow2(-1)
    }

    /// Largest absolute value.
    pub fn mag(&self) -> Dyadic {
        self.lo.abs().max(self.hi.abs())
    }

    /// Smallest absolute value.
    pub fn mig(&self) -> Dyadic {
        if self.contains_zero() {
            Dyadic::zero()
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    pub fn abs(&self) -> Interval {
        Interval {
            lo: self.mig(),
            hi: self.mag(),
            prec: self.prec,
        }
    }

    /// Grow by `r` on both sides.
    pub fn inflate(&self, r: &Dyadic) -> Interval {
        let p = eff(self.prec);
        Interval {
            lo: self.lo.add_round(&-r, p, Round::Down),
            hi: self.hi.add_round(r, p, Round::Up),
            prec: self.prec,
        }
    }

    /// Round endpoints outward to `prec` bits.
    pub fn rounded(&self, prec: u32) -> Interval {
        Interval {
            lo: self.lo.round(prec, Round::Down),
            hi: self.hi.round(prec, Round::Up),
            prec,
        }
    }

    pub fn mul_pow2(&self, k: i64) -> Interval {
        Interval {
            lo: self.lo.mul_pow2(k),
            hi: self.hi.mul_pow2(k),
            prec: self.prec,
        }
    }

    pub fn max(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().max(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
            prec: join_prec(self.prec, other.prec),
        }
    }

    pub fn min(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().min(other.hi.clone()),
            prec: join_prec(self.prec, other.prec),
        }
    }

    pub fn sqr(&self) -> Interval {
        let p = eff(self.prec);
        let a = self.mig();
        let b = self.mag();
        Interval {
            lo: a.mul_round(&a, p, Round::Down),
            hi: b.mul_round(&b, p, Round::Up),
            prec: self.prec,
        }
    }

    pub fn pow_u(&self, n: u32) -> Interval {
        if n == 0 {
            return Interval::one().with_prec(self.prec);
        }
        if n.is_multiple_of(2) {
            let h = self.pow_u(n / 2);
            return h.sqr();
        }
        let h = self.pow_u(n - 1);
        &h * self
    }

    pub fn recip(&self) -> Option<Interval> {
        Interval::one().checked_div(self)
    }

    pub fn checked_div(&self, other: &Interval) -> Option<Interval> {
        if other.contains_zero() {
            return None;
        }
        let p = eff(join_prec(self.prec, other.prec));
        let cands = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let mut lo: Option<Dyadic> = None;
        let mut hi: Option<Dyadic> = None;
        for (a, b) in cands {
            let l = a.div_round(b, p, Round::Down)?;
            let h = a.div_round(b, p, Round::Up)?;
            lo = Some(match lo {
                Some(x) => x.min(l),
                None => l,
            });
            hi = Some(match hi {
                Some(x) => x.max(h),
                None => h,
            });
        }
        Some(Interval {
            lo: lo.unwrap(),
            hi: hi.unwrap(),
            prec: join_prec(self.prec, other.prec),
        })
    }

    /// Square root; negative parts of the input are rejected.
    pub fn sqrt(&self) -> Option<Interval> {
        if self.lo.is_negative() {
            return None;
        }
        let p = eff(self.prec);
        Some(Interval {
            lo: self.lo.sqrt_round(p, Round::Down)?,
            hi: self.hi.sqrt_round(p, Round::Up)?,
            prec: self.prec,
        })
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64()
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64()
    }

    pub fn floor_lo(&self) -> BigInt {
        self.lo.floor()
    }

    pub fn ceil_hi(&self) -> BigInt {
        self.hi.ceil()
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        let prec = join_prec(self.prec, rhs.prec);
        let p = eff(prec);
        Interval {
            lo: self.lo.add_round(&rhs.lo, p, Round::Down),
            hi: self.hi.add_round(&rhs.hi, p, Round::Up),
            prec,
        }
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        let prec = join_prec(self.prec, rhs.prec);
        let p = eff(prec);
        Interval {
            lo: self.lo.add_round(&-&rhs.hi, p, Round::Down),
            hi: self.hi.add_round(&-&rhs.lo, p, Round::Up),
            prec,
        }
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        let prec = join_prec(self.prec, rhs.prec);
        let p = eff(prec);
        if self.is_point() && rhs.is_point() {
            let v = self.lo.mul_exact(&rhs.lo);
            return Interval {
                lo: v.round(p, Round::Down),
                hi: v.round(p, Round::Up),
                prec,
            };
        }
        let prods = [
            self.lo.mul_exact(&rhs.lo),
            self.lo.mul_exact(&rhs.hi),
            self.hi.mul_exact(&rhs.lo),
            self.hi.mul_exact(&rhs.hi),
        ];
        let lo = prods.iter().min().unwrap().round(p, Round::Down);
        let hi = prods.iter().max().unwrap().round(p, Round::Up);
        Interval { lo, hi, prec }
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
            prec: self.prec,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Interval {
            type Output = Interval;
            fn $m(self, rhs: Interval) -> Interval {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Interval> for Interval {
            type Output = Interval;
            fn $m(self, rhs: &Interval) -> Interval {
                (&self).$m(rhs)
            }
        }
        impl $tr<Interval> for &Interval {
            type Output = Interval;
            fn $m(self, rhs: Interval) -> Interval {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        -&self
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]@{}", self.lo.to_f64(), self.hi.to_f64(), self.prec)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.17e}, {:.17e}]", self.lo.to_f64(), self.hi.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_contains_true_values() {
        let a = Interval::from_rational(&BigRational::new(1.into(), 3.into()), 80);
        let b = Interval::from_i64(3);
        let c = &a * &b;
        assert!(c.contains(&Dyadic::one()));
        assert!(c.width_f64() < 1e-20);
        let d = (&a - &a).abs();
        assert!(d.contains(&Dyadic::zero()));
    }

    #[test]
    fn division_by_straddling_interval_fails() {
        let a = Interval::one();
        let b = Interval::new(Dyadic::from_i64(-1), Dyadic::from_i64(1), 64);
        assert!(a.checked_div(&b).is_none());
    }

    #[test]
    fn square_of_straddling_interval_starts_at_zero() {
        let b = Interval::new(Dyadic::from_i64(-1), Dyadic::from_i64(2), 64);
        let s = b.sqr();
        assert_eq!(s.lo(), &Dyadic::zero());
        assert_eq!(s.hi(), &Dyadic::from_i64(4));
    }
}
