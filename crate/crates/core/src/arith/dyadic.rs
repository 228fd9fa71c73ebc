//! Exact binary rationals `m * 2^e` with directed rounding.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Rounding direction for operations that cannot be exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

impl Round {
    pub fn flip(self) -> Round {
        match self {
            Round::Down => Round::Up,
            Round::Up => Round::Down,
        }
    }
}

/// A dyadic rational `man * 2^exp`. The mantissa is kept odd (or the value
/// is zero with `exp == 0`), so equal values have equal representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    man: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic {
            man: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic {
            man: BigInt::one(),
            exp: 0,
        }
    }

    pub fn new(man: BigInt, exp: i64) -> Self {
        let mut d = Dyadic { man, exp };
        d.normalize();
        d
    }

    pub fn from_i64(v: i64) -> Self {
        Dyadic::new(BigInt::from(v), 0)
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        Dyadic::new(v.clone(), 0)
    }

    /// Exact conversion; `None` for NaN or infinities.
    pub fn from_f64(v: f64) -> Option<Self> {
        if !v.is_finite() {
            return None;
        }
        if v == 0.0 {
            return Some(Dyadic::zero());
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (man, exp) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Some(Dyadic::new(BigInt::from(man) * sign, exp))
    }

    /// `2^k`.
    pub fn pow2(k: i64) -> Self {
        Dyadic {
            man: BigInt::one(),
            exp: k,
        }
    }

    fn normalize(&mut self) {
        if self.man.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.man.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.man >>= tz;
            self.exp += tz as i64;
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.man.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.man.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.man.is_positive()
    }

    /// Number of significant bits of the mantissa.
    pub fn bits(&self) -> u64 {
        self.man.bits()
    }

    /// `floor(log2 |self|)`; `None` for zero.
    pub fn top_bit(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.man.bits() as i64 - 1 + self.exp)
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            man: self.man.abs(),
            exp: self.exp,
        }
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic {
            man: self.man.clone(),
            exp: self.exp + k,
        }
    }

    pub fn add_exact(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.man << ((self.exp - e) as usize);
        let b = &other.man << ((other.exp - e) as usize);
        Dyadic::new(a + b, e)
    }

    pub fn sub_exact(&self, other: &Dyadic) -> Dyadic {
        self.add_exact(&-other)
    }

    pub fn mul_exact(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() || other.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            man: &self.man * &other.man,
            exp: self.exp + other.exp,
        }
    }

    /// Round to at most `prec` significant bits in direction `dir`.
    pub fn round(&self, prec: u32, dir: Round) -> Dyadic {
        let bits = self.man.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        let mag = self.man.magnitude();
        let mut q = mag >> shift;
        // Since the mantissa is odd, any positive shift discards nonzero bits.
        let away = match (dir, self.is_negative()) {
            (Round::Up, false) | (Round::Down, true) => true,
            _ => false,
        };
        if away {
            q += 1u32;
        }
        let man = BigInt::from_biguint(self.man.sign(), q);
        Dyadic::new(man, self.exp + shift as i64)
    }

    /// Directed-rounded sum. Operands far below the rounding granularity of
    /// the larger one are replaced by a one-sided dyadic bound.
    pub fn add_round(&self, other: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        let (big, small) = match (self.top_bit(), other.top_bit()) {
            (None, _) => return other.round(prec, dir),
            (_, None) => return self.round(prec, dir),
            (Some(ta), Some(tb)) => {
                if ta >= tb {
                    (self, other)
                } else {
                    (other, self)
                }
            }
        };
        let tb = big.top_bit().unwrap();
        let ts = small.top_bit().unwrap();
        let floor_exp = tb - prec as i64 - 3;
        if ts + 1 < floor_exp && small.exp < big.exp.min(floor_exp) {
            // |small| < 2^floor_exp; replace it by 0 or -/+2^floor_exp.
            let bound = match (dir, small.is_negative()) {
                (Round::Down, false) | (Round::Up, true) => Dyadic::zero(),
                (Round::Down, true) => -Dyadic::pow2(floor_exp),
                (Round::Up, false) => Dyadic::pow2(floor_exp),
            };
            return big.add_exact(&bound).round(prec, dir);
        }
        self.add_exact(other).round(prec, dir)
    }

    pub fn mul_round(&self, other: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        self.mul_exact(other).round(prec, dir)
    }

    /// Directed-rounded quotient; `None` when dividing by zero.
    pub fn div_round(&self, other: &Dyadic, prec: u32, dir: Round) -> Option<Dyadic> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Dyadic::zero());
        }
        let want = prec as i64 + 2;
        let have = self.man.bits() as i64 - other.man.bits() as i64;
        let k = (want - have).max(0);
        let num = &self.man << (k as usize);
        let (q, r) = num.div_mod_floor(&other.man);
        let q = if r.is_zero() {
            q
        } else {
            match dir {
                Round::Down => q,
                Round::Up => q + 1,
            }
        };
        Some(Dyadic::new(q, self.exp - other.exp - k).round(prec, dir))
    }

    /// Directed-rounded square root of a nonnegative value.
    pub fn sqrt_round(&self, prec: u32, dir: Round) -> Option<Dyadic> {
        if self.is_negative() {
            return None;
        }
        if self.is_zero() {
            return Some(Dyadic::zero());
        }
        let want = 2 * (prec as i64 + 2);
        let mut k = (want - self.man.bits() as i64).max(0);
        if (self.exp - k).rem_euclid(2) != 0 {
            k += 1;
        }
        let m = &self.man << (k as usize);
        let s = m.sqrt();
        let exact = &s * &s == m;
        let s = if !exact && dir == Round::Up { s + 1 } else { s };
        Some(Dyadic::new(s, (self.exp - k) / 2).round(prec, dir))
    }

    /// Floor to an integer.
    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.man << (self.exp as usize)
        } else {
            let d = BigInt::one() << ((-self.exp) as usize);
            self.man.div_floor(&d)
        }
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.man << (self.exp as usize))
        } else {
            BigRational::new(self.man.clone(), BigInt::one() << ((-self.exp) as usize))
        }
    }

    /// Best-effort conversion; saturates to infinities.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.man.bits();
        let (m, e) = if bits > 60 {
            let shift = bits - 60;
            (&self.man >> shift, self.exp + shift as i64)
        } else {
            (self.man.clone(), self.exp)
        };
        let mf = m.to_f64().unwrap_or(0.0);
        if e > 2000 {
            return mf.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return 0.0 * mf.signum();
        }
        // Split the scaling so intermediate powers stay finite.
        let half = (e / 2) as i32;
        mf * 2f64.powi(half) * 2f64.powi(e as i32 - half)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let sa = self.signum();
        let sb = other.signum();
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let ta = self.top_bit().unwrap();
        let tb = other.top_bit().unwrap();
        if ta != tb {
            let mag = ta.cmp(&tb);
            return if sa > 0 { mag } else { mag.reverse() };
        }
        self.sub_exact(other).signum().cmp(&0)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::ops::Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            man: -self.man,
            exp: self.exp,
        }
    }
}

impl std::ops::Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            man: -&self.man,
            exp: self.exp,
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{} (~{:e})", self.man, self.exp, self.to_f64())
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

/// Directed rounding of a rational to `prec` bits.
pub fn rational_round(q: &BigRational, prec: u32, dir: Round) -> Dyadic {
    let n = Dyadic::from_bigint(q.numer());
    let d = Dyadic::from_bigint(q.denom());
    n.div_round(&d, prec, dir).expect("rational denominator is nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_trailing_zeros() {
        let d = Dyadic::new(BigInt::from(12), 0);
        assert_eq!(d.mantissa(), &BigInt::from(3));
        assert_eq!(d.exponent(), 2);
    }

    #[test]
    fn f64_roundtrip() {
        for v in [1.5, -3.25, 1e-300, 7.0e200, 0.1] {
            let d = Dyadic::from_f64(v).unwrap();
            assert_eq!(d.to_f64(), v);
        }
    }

    #[test]
    fn directed_division_brackets_third() {
        let one = Dyadic::one();
        let three = Dyadic::from_i64(3);
        let lo = one.div_round(&three, 64, Round::Down).unwrap();
        let hi = one.div_round(&three, 64, Round::Up).unwrap();
        assert!(lo < hi);
        let third = BigRational::new(1.into(), 3.into());
        assert!(lo.to_rational() < third && third < hi.to_rational());
    }

    #[test]
    fn tiny_addend_is_absorbed_soundly() {
        let a = Dyadic::one();
        let b = Dyadic::pow2(-100_000);
        let lo = a.add_round(&b, 53, Round::Down);
        let hi = a.add_round(&b, 53, Round::Up);
        assert_eq!(lo, Dyadic::one());
        assert!(hi > Dyadic::one());
        let nb = -b;
        let lo = a.add_round(&nb, 53, Round::Down);
        assert!(lo < Dyadic::one());
        assert_eq!(a.add_round(&nb, 53, Round::Up), Dyadic::one());
    }

    #[test]
    fn sqrt_brackets() {
        let two = Dyadic::from_i64(2);
        let lo = two.sqrt_round(80, Round::Down).unwrap();
        let hi = two.sqrt_round(80, Round::Up).unwrap();
        assert!(lo.mul_exact(&lo) < two && hi.mul_exact(&hi) > two);
        let four = Dyadic::from_i64(4);
        assert_eq!(four.sqrt_round(10, Round::Up).unwrap(), two);
    }

    #[test]
    fn floor_and_ceil_negative() {
        let d = Dyadic::from_f64(-2.5).unwrap();
        assert_eq!(d.floor(), BigInt::from(-3));
        assert_eq!(d.ceil(), BigInt::from(-2));
    }
}
