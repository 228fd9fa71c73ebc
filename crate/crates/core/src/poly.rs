//! Dense univariate polynomials over the integers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{ComplexEnclosure, Interval};

/// Integer polynomial, coefficients lowest degree first. Trailing zeros are
/// trimmed, so the last entry (if any) is the leading coefficient.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: vec![] }
    }

    pub fn constant(c: BigInt) -> Self {
        IntPolynomial::new(vec![c])
    }

    /// `x`.
    pub fn x() -> Self {
        IntPolynomial::from_i64s(&[0, 1])
    }

    /// `prod (x - r)` for integer roots.
    pub fn from_roots(roots: &[i64]) -> Self {
        roots.iter().fold(IntPolynomial::from_i64s(&[1]), |acc, &r| {
            &acc * &IntPolynomial::from_i64s(&[-r, 1])
        })
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divide by the content and make the leading coefficient positive.
    pub fn canonical(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    pub fn is_primitive_canonical(&self) -> bool {
        !self.is_zero() && self.leading().is_positive() && self.content().is_one()
    }

    pub fn derivative(&self) -> Self {
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// `x^n p(1/x)`.
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        IntPolynomial::new(c)
    }

    /// `p(-x)`.
    pub fn negated_argument(&self) -> Self {
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        IntPolynomial::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Largest coefficient magnitude.
    pub fn height_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_interval(&self, x: &Interval) -> Interval {
        let mut acc = Interval::zero().with_prec(x.prec());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &Interval::from_bigint(c);
        }
        acc
    }

    /// Horner evaluation over a complex box; the result contains `p(w)` for
    /// every `w` in `z`.
    pub fn eval(&self, z: &ComplexEnclosure) -> ComplexEnclosure {
        let mut acc = ComplexEnclosure::zero().with_prec(z.prec());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + &ComplexEnclosure::real(Interval::from_bigint(c));
        }
        acc
    }

    /// Fujiwara bound `2 max |a_{n-i}/a_n|^{1/i}` (last term halved), computed
    /// in floating point; tighter than the Cauchy bound for spread coefficients.
    pub fn fujiwara_bound(&self) -> f64 {
        let n = match self.degree() {
            Some(n) if n > 0 => n,
            _ => return 1.0,
        };
        let log2_abs = |c: &BigInt| -> f64 {
            let b = c.bits();
            if b <= 1000 {
                c.abs().to_f64().unwrap().log2()
            } else {
                let shifted: BigInt = c.abs() >> (b - 64);
                shifted.to_f64().unwrap().log2() + (b - 64) as f64
            }
        };
        let ll = log2_abs(&self.leading());
        let mut best = f64::NEG_INFINITY;
        for i in 1..=n {
            let c = &self.coeffs[n - i];
            if c.is_zero() {
                continue;
            }
            let mut l = log2_abs(c) - ll;
            if i == n {
                l -= 1.0;
            }
            best = best.max(l / i as f64);
        }
        if best == f64::NEG_INFINITY {
            return 0.0;
        }
        2.0 * best.exp2()
    }

    /// Cauchy bound: every root satisfies `|z| <= 1 + max |a_i / a_n|`.
    pub fn cauchy_bound(&self) -> f64 {
        let n = match self.degree() {
            Some(n) if n > 0 => n,
            _ => return 1.0,
        };
        let lead = BigRational::from_integer(self.leading().abs());
        let mut best = BigRational::zero();
        for c in &self.coeffs[..n] {
            let q = BigRational::from_integer(c.abs()) / &lead;
            if q > best {
                best = q;
            }
        }
        1.0 + rational_to_f64(&best)
    }

    fn to_rational(&self) -> Vec<BigRational> {
        self.coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect()
    }

    /// Quotient and remainder over the rationals.
    pub fn div_rem_rational(&self, d: &IntPolynomial) -> (Vec<BigRational>, Vec<BigRational>) {
        let dn = d.degree().expect("division by zero polynomial");
        let mut r = self.to_rational();
        let dl = BigRational::from_integer(d.leading());
        let dr = d.to_rational();
        if r.len() <= dn {
            return (vec![], r);
        }
        let mut q = vec![BigRational::zero(); r.len() - dn];
        for k in (0..q.len()).rev() {
            let t = &r[k + dn] / &dl;
            if !t.is_zero() {
                for (j, c) in dr.iter().enumerate() {
                    r[k + j] -= &t * c;
                }
            }
            q[k] = t;
        }
        r.truncate(dn);
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
        (q, r)
    }

    /// Exact quotient when `d` divides `self` in `Z[x]`.
    pub fn div_exact(&self, d: &IntPolynomial) -> Option<IntPolynomial> {
        let (q, r) = self.div_rem_rational(d);
        if !r.is_empty() {
            return None;
        }
        let mut out = Vec::with_capacity(q.len());
        for c in q {
            if !c.is_integer() {
                return None;
            }
            out.push(c.to_integer());
        }
        Some(IntPolynomial::new(out))
    }

    /// Primitive greatest common divisor (positive leading coefficient).
    pub fn gcd(&self, other: &IntPolynomial) -> IntPolynomial {
        let mut a = self.canonical();
        let mut b = other.canonical();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let (_, r) = a.div_rem_rational(&b);
            let r = rational_to_primitive(&r);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let a = a.canonical();
        if a.degree() == Some(0) {
            IntPolynomial::from_i64s(&[1])
        } else {
            a
        }
    }

    /// Square-free factors `(q_k, k)`: `canonical(p) = c * prod q_k^k`.
    pub fn square_free_factors(&self) -> Vec<(IntPolynomial, usize)> {
        let mut out = Vec::new();
        let p = self.canonical();
        if p.degree().unwrap_or(0) == 0 {
            return out;
        }
        // g_k = gcd(g_{k-1}, g_{k-1}'); roots of multiplicity >= k divide
        // g_{k-1} / g_k.
        let mut gs = vec![p.clone()];
        loop {
            let last = gs.last().unwrap();
            if last.degree().unwrap_or(0) == 0 {
                break;
            }
            let next = last.gcd(&last.derivative());
            gs.push(next);
        }
        let mut ge: Vec<IntPolynomial> = Vec::new();
        for w in gs.windows(2) {
            ge.push(w[0].div_exact(&w[1]).expect("gcd divides").canonical());
        }
        for k in 0..ge.len() {
            let exact = if k + 1 < ge.len() {
                ge[k].div_exact(&ge[k + 1]).expect("nested square-free parts").canonical()
            } else {
                ge[k].clone()
            };
            if exact.degree().unwrap_or(0) > 0 {
                out.push((exact, k + 1));
            }
        }
        out
    }

    pub fn is_square_free(&self) -> bool {
        self.gcd(&self.derivative()).degree().unwrap_or(0) == 0
    }

    /// Compact human-readable form in the variable `var`.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push(if neg { '-' } else { '+' });
            }
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                s.push_str(&mag.to_string());
            }
            match i {
                0 => {}
                1 => {
                    if show_coeff {
                        s.push('*');
                    }
                    s.push_str(var);
                }
                _ => {
                    if show_coeff {
                        s.push('*');
                    }
                    s.push_str(&format!("{var}^{i}"));
                }
            }
        }
        s
    }
}

pub(crate) fn rational_to_primitive(r: &[BigRational]) -> IntPolynomial {
    if r.is_empty() {
        return IntPolynomial::zero();
    }
    let l = r.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = r.iter().map(|c| (c * &l).to_integer()).collect();
    IntPolynomial::new(ints).canonical()
}

pub(crate) fn rational_to_f64(q: &BigRational) -> f64 {
    crate::arith::Dyadic::from_bigint(q.numer())
        .div_round(
            &crate::arith::Dyadic::from_bigint(q.denom()),
            64,
            crate::arith::Round::Up,
        )
        .map(|d| d.to_f64())
        .unwrap_or(f64::NAN)
}

impl std::ops::Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl std::ops::Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl std::ops::Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("z"))
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("z"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Dyadic;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn eval_square_at_three() {
        let z = ComplexEnclosure::from_i64(3);
        let v = p(&[0, 0, 1]).eval(&z);
        assert!(v.re.is_point() && v.re.lo() == &Dyadic::from_i64(9));
    }

    #[test]
    fn eval_interval_extension() {
        let z = ComplexEnclosure::new(
            Interval::new(Dyadic::zero(), Dyadic::from_i64(2), 64),
            Interval::zero(),
        );
        let v = p(&[-1, 1]).eval(&z);
        assert_eq!(v.re.lo(), &Dyadic::from_i64(-1));
        assert_eq!(v.re.hi(), &Dyadic::from_i64(1));
        assert!(v.im.is_point());
    }

    #[test]
    fn gcd_and_square_free() {
        let a = p(&[-1, 1]);
        let b = p(&[2, 1]);
        let f = &(&(&a * &a) * &a) * &b;
        let sq = f.square_free_factors();
        assert_eq!(sq, vec![(b.clone(), 1), (a.clone(), 3)]);
        assert!(!f.is_square_free());
        assert_eq!(f.gcd(&f.derivative()), &a * &a);
    }

    #[test]
    fn canonical_form() {
        let q = p(&[4, -6, -2]).canonical();
        assert_eq!(q, p(&[-2, 3, 1]));
        assert!(q.is_primitive_canonical());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-1, -1, 1]).to_string(), "z^2-z-1");
        assert_eq!(p(&[1, 0, 2]).to_string(), "2*z^2+1");
    }

    #[test]
    fn exact_division() {
        let f = p(&[4, 0, 0, 0, 1]);
        let g = p(&[2, -2, 1]);
        assert_eq!(f.div_exact(&g), Some(p(&[2, 2, 1])));
        assert_eq!(f.div_exact(&p(&[1, 1])), None);
    }
}
