//! Entire functions `f(z) = prod_{n >= 1} (1 - z / z_n)` with positive real
//! zeros `1 <= z_1 <= z_2 <= ...` eventually following `z_n = c n^s`.
//!
//! Evaluation multiplies the factors up to an index `N` with `z_N >= 2|z|`
//! and encloses the remaining factors through the series
//! `log prod_{n > N} (1 - z/z_n) = -sum_k (z/c)^k / k * S(sk, N)`, where
//! `S(sigma, N) = sum_{n > N} n^-sigma` is evaluated by Euler-Maclaurin
//! summation with a rigorous remainder.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{elementary, ComplexEnclosure, Dyadic, Interval};
use crate::error::{Error, Result};

/// Largest truncation index evaluated factor by factor.
pub const MAX_DIRECT_FACTORS: u64 = 2_000_000;

/// Above this index `max_modulus` switches to integral brackets.
pub const BRACKET_THRESHOLD: u64 = 200_000;

#[derive(Clone, Debug, PartialEq)]
pub enum ZeroSequenceSpec {
    /// `z_n = c n^s`.
    PowerLaw { c: BigRational, s: BigRational },
    /// The listed zeros, then `z_n = c n^s` for `n > zeros.len()`.
    Explicit {
        zeros: Vec<BigRational>,
        c: BigRational,
        s: BigRational,
    },
}

impl ZeroSequenceSpec {
    pub fn power_law(c: i64, s: i64) -> Self {
        ZeroSequenceSpec::PowerLaw {
            c: BigRational::from_integer(c.into()),
            s: BigRational::from_integer(s.into()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (c, s) = self.tail();
        if *c < BigRational::one() {
            return Err(Error::InvalidInput("zero scale c must be >= 1".into()));
        }
        if *s <= BigRational::one() {
            return Err(Error::InvalidInput("zero exponent s must be > 1".into()));
        }
        if let ZeroSequenceSpec::Explicit { zeros, .. } = self {
            let mut prev = BigRational::one();
            for z in zeros {
                if *z < prev {
                    return Err(Error::InvalidInput(
                        "explicit zeros must be >= 1 and nondecreasing".into(),
                    ));
                }
                prev = z.clone();
            }
            let m = zeros.len() as u64;
            if m > 0 {
                let next = self.zero_at(m + 1, 128);
                if Interval::from_rational(&prev, 128).certainly_lt(&next) || prev_equal(&prev, &next) {
                    return Ok(());
                }
                return Err(Error::InvalidInput(
                    "explicit zeros must not exceed the first tail zero".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn tail(&self) -> (&BigRational, &BigRational) {
        match self {
            ZeroSequenceSpec::PowerLaw { c, s } => (c, s),
            ZeroSequenceSpec::Explicit { c, s, .. } => (c, s),
        }
    }

    pub fn explicit_len(&self) -> u64 {
        match self {
            ZeroSequenceSpec::PowerLaw { .. } => 0,
            ZeroSequenceSpec::Explicit { zeros, .. } => zeros.len() as u64,
        }
    }

    /// Order `rho = 1/s`.
    pub fn rho(&self) -> BigRational {
        self.tail().1.recip()
    }

    /// Lower order; equal to the order for these sequences.
    pub fn lambda(&self) -> BigRational {
        self.rho()
    }

    /// `mu = lim n(r) / r^rho = c^(-1/s)`.
    pub fn mu(&self, prec: u32) -> Interval {
        let (c, s) = self.tail();
        let ci = Interval::from_rational(c, prec + 16);
        let e = Interval::from_rational(&-s.recip(), prec + 16);
        elementary::pow(&ci, &e).expect("c >= 1").rounded(prec)
    }

    pub fn rho_f64(&self) -> f64 {
        self.rho().to_f64().unwrap()
    }

    pub fn mu_f64(&self) -> f64 {
        self.mu(64).mid_f64()
    }

    /// `z_n` for `n >= 1`.
    pub fn zero_at(&self, n: u64, prec: u32) -> Interval {
        assert!(n >= 1, "zeros are indexed from 1");
        if let ZeroSequenceSpec::Explicit { zeros, .. } = self {
            if (n as usize) <= zeros.len() {
                return Interval::from_rational(&zeros[n as usize - 1], prec);
            }
        }
        let (c, s) = self.tail();
        power_term(c, s, &BigInt::from(n), prec)
    }

    /// Number of zeros with `z_n < r`.
    pub fn count_below(&self, r: &BigRational) -> BigInt {
        count_zeros_below(self, r)
    }
}

fn prev_equal(prev: &BigRational, next: &Interval) -> bool {
    next.is_point() && next.lo().to_rational() == *prev
}

/// `c n^s`, exact when `s` is an integer.
fn power_term(c: &BigRational, s: &BigRational, n: &BigInt, prec: u32) -> Interval {
    if s.is_integer() {
        let k = s.to_integer().to_u32().expect("exponent fits");
        let v = c * BigRational::from_integer(num_traits::pow(n.clone(), k as usize));
        return Interval::from_rational(&v, prec);
    }
    let w = prec + 16;
    let ln_n = elementary::ln(&Interval::from_bigint(n).with_prec(w)).expect("n >= 1");
    let e = elementary::exp(&(&ln_n * &Interval::from_rational(s, w)));
    (&e * &Interval::from_rational(c, w)).rounded(prec)
}

pub fn zero_at(spec: &ZeroSequenceSpec, n: u64, prec: u32) -> Interval {
    spec.zero_at(n, prec)
}

/// Exact `n(r) = #{n : z_n < r}`.
pub fn count_zeros_below(spec: &ZeroSequenceSpec, r: &BigRational) -> BigInt {
    let m = spec.explicit_len();
    if let ZeroSequenceSpec::Explicit { zeros, .. } = spec {
        let below = zeros.iter().take_while(|z| *z < r).count() as u64;
        if below < m {
            return BigInt::from(below);
        }
    }
    let (c, s) = spec.tail();
    // tail_below(n) <=> c n^s < r <=> n^p c^q < r^q for s = p/q
    let p = s.numer().to_u32().expect("exponent numerator fits");
    let q = s.denom().to_u32().expect("exponent denominator fits");
    let rq = num_traits::pow(r.clone(), q as usize);
    let cq = num_traits::pow(c.clone(), q as usize);
    let below = |n: &BigInt| -> bool {
        let np = BigRational::from_integer(num_traits::pow(n.clone(), p as usize));
        np * &cq < rq
    };
    let first = BigInt::from(m + 1);
    if !below(&first) {
        return BigInt::from(m);
    }
    // largest n with tail_below(n), by doubling then bisection
    let mut lo = first;
    let mut hi: BigInt = &lo * 2;
    while below(&hi) {
        lo = hi.clone();
        hi *= 2;
    }
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) >> 1;
        if below(&mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Result of evaluating the product.
#[derive(Clone, Debug)]
pub struct ProductValue {
    pub value: ComplexEnclosure,
    /// Factors `1..=N` were multiplied directly.
    pub truncation_index: u64,
    /// Upper bound `2|z| sum_{n > N} 1/z_n` on the modulus of the log of the
    /// omitted factors.
    pub tail_bound: f64,
    /// Number of series terms used for the omitted factors.
    pub series_terms: usize,
    /// Rigorous bound on what the series discards.
    pub tail_residual: Dyadic,
}

/// Smallest index `N` with `c N^s >= ratio * |z|`, at least 32 and past the
/// explicit list.
fn truncation_index(spec: &ZeroSequenceSpec, abs_hi: &Dyadic, ratio: i64) -> Result<u64> {
    let (c, s) = spec.tail();
    let target = Interval::point(abs_hi.clone()) * Interval::from_i64(ratio);
    let cf = c.to_f64().unwrap();
    let sf = s.to_f64().unwrap();
    let guess = ((target.hi_f64() / cf).powf(1.0 / sf)).ceil();
    let floor = (spec.explicit_len() + 1).max(32);
    if !guess.is_finite() || guess > MAX_DIRECT_FACTORS as f64 {
        return Err(Error::PrecisionExhausted {
            bits: 0,
            context: format!("truncation index {guess:.3e} exceeds the direct-product limit"),
        });
    }
    let mut n = (guess as u64).max(floor);
    while power_term(c, s, &BigInt::from(n), 64).lo() < target.hi() {
        n += 1;
    }
    while n > floor && power_term(c, s, &BigInt::from(n - 1), 64).lo() >= target.hi() {
        n -= 1;
    }
    Ok(n)
}

fn bits_of(n: u64) -> u32 {
    64 - n.leading_zeros()
}

/// Bernoulli numbers `B_0 .. B_{2 * MAX_EM}` (with `B_1 = -1/2`).
fn bernoulli() -> &'static Vec<BigRational> {
    static B: OnceLock<Vec<BigRational>> = OnceLock::new();
    B.get_or_init(|| {
        let n_max = 2 * MAX_EM + 1;
        let mut b: Vec<BigRational> = Vec::with_capacity(n_max + 1);
        b.push(BigRational::one());
        for m in 1..=n_max {
            // sum_{k=0}^{m} binom(m+1, k) B_k = 0
            let mut acc = BigRational::zero();
            let mut binom = BigInt::one();
            for (k, bk) in b.iter().enumerate() {
                acc += BigRational::from_integer(binom.clone()) * bk;
                binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
            }
            b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
        }
        b
    })
}

const MAX_EM: usize = 40;

/// Enclosure of `sum_{n >= a} n^-sigma` for `sigma > 1`, `a >= 2`.
fn hurwitz_tail(sigma: &Interval, a: u64, ln_a: &Interval, w: u32) -> Interval {
    let a_i = Interval::from_i64(a as i64).with_prec(w);
    let a_pow = elementary::exp(&-(sigma * ln_a));
    let inv_a2 = Interval::one().checked_div(&a_i.sqr()).unwrap();
    // S / a^-sigma = a/(sigma-1) + 1/2 + sum_j B_2j/(2j)! (sigma)_{2j-1} a^{1-2j} + R
    let one = Interval::one();
    let mut sum = &a_i.checked_div(&(sigma - &one)).expect("sigma > 1") + &one.mul_pow2(-1);
    let b = bernoulli();
    let mut rising = sigma.clone(); // (sigma)_{2j-1}
    let mut a_pow_j = Interval::one().checked_div(&a_i).unwrap(); // a^{1-2j}
    let mut fact = BigInt::from(2); // (2j)!
    let eps = Dyadic::pow2(-(w as i64));
    // 2 pi > 6.28, and zeta(2m) <= 2
    let two_pi_lo = Interval::from_rational(&BigRational::new(628.into(), 100.into()), w);
    let two_pi_sq = two_pi_lo.sqr();
    let mut two_pi_pow = two_pi_sq.clone();
    let mut remainder = None;
    for j in 1..=MAX_EM {
        let coef = Interval::from_rational(&(&b[2 * j] / BigRational::from_integer(fact.clone())), w);
        let term = &(&coef * &rising) * &a_pow_j;
        sum = &sum + &term;
        // remainder after j terms: 4 (sigma)_{2j+1} a^{-1-2j} / (2 pi)^{2j+2}
        let next_rising = &(&rising * &(sigma + &Interval::from_i64(2 * j as i64 - 1)))
            * &(sigma + &Interval::from_i64(2 * j as i64));
        let next_a = &a_pow_j * &inv_a2;
        two_pi_pow = &two_pi_pow * &two_pi_sq;
        let r = (&next_rising * &next_a).mul_pow2(2).checked_div(&two_pi_pow).unwrap();
        let r_mag = r.mag();
        let done = r_mag <= eps.mul_exact(&sum.mig().max(Dyadic::one()));
        let growing = term.mag() < r_mag;
        remainder = Some(r_mag);
        if done || growing || j == MAX_EM {
            break;
        }
        rising = next_rising;
        a_pow_j = next_a;
        fact *= BigInt::from((2 * j + 1) * (2 * j + 2));
    }
    let sum = sum.inflate(&remainder.unwrap());
    // never worse than the integral sandwich
    let crude = Interval::new(
        a_i.checked_div(&(sigma - &one)).unwrap().lo().clone(),
        (&one + &a_i.checked_div(&(sigma - &one)).unwrap()).hi().clone(),
        w,
    );
    let sum = sum.intersect(&crude).unwrap_or(crude);
    &sum * &a_pow
}

/// Enclosure of `log prod_{n > N} (1 - z / z_n)` for tail zeros `c n^s`,
/// given `|z| <= z_N / 16`.
fn tail_log(spec: &ZeroSequenceSpec, z: &ComplexEnclosure, n: u64, w: u32) -> Result<(ComplexEnclosure, usize, Dyadic)> {
    let (c, s) = spec.tail();
    let sf = s.to_f64().unwrap();
    let z_abs = z.abs().hi().clone();
    if z_abs.is_zero() {
        return Ok((ComplexEnclosure::zero(), 0, Dyadic::zero()));
    }
    let z_n = power_term(c, s, &BigInt::from(n), w);
    let q = Interval::point(z_abs.clone())
        .with_prec(w)
        .checked_div(&Interval::point(z_n.lo().clone()))
        .unwrap();
    let q_hi = q.hi().clone();
    debug_assert!(q_hi <= Dyadic::pow2(-1));
    // choose K with 2 N q^{K+1} / ((s(K+1) - 1)(K+1)) <= 2^-(w+4)
    let qf = q_hi.to_f64().max(f64::MIN_POSITIVE);
    let mut k_terms = 1usize;
    loop {
        let kk = (k_terms + 1) as f64;
        let log2_bound = 1.0 + (n as f64).log2() + kk * qf.log2() - ((sf * kk - 1.0) * kk).log2();
        if log2_bound <= -((w + 4) as f64) || k_terms >= 4 * w as usize {
            break;
        }
        k_terms += 1;
    }
    let kk = (k_terms + 1) as i64;
    let q_pow = Interval::point(q_hi).with_prec(w).pow_u(kk as u32);
    let denom = &(&Interval::from_rational(s, w) * &Interval::from_i64(kk) - &Interval::one()) * &Interval::from_i64(kk);
    let residual = (&q_pow * &Interval::from_i64(2 * n as i64)).checked_div(&denom).unwrap().hi().clone();

    let a = n + 1;
    let ln_a = elementary::ln(&Interval::from_i64(a as i64).with_prec(w)).unwrap();
    let c_i = Interval::from_rational(c, w);
    let wz = z.clone().with_prec(w).scale(&Interval::one().checked_div(&c_i).unwrap());
    let s_i = Interval::from_rational(s, w);
    let mut power = ComplexEnclosure::one().with_prec(w);
    let mut acc = ComplexEnclosure::zero().with_prec(w);
    for k in 1..=k_terms {
        power = &power * &wz;
        let sigma = &s_i * &Interval::from_i64(k as i64);
        let tail_sum = hurwitz_tail(&sigma, a, &ln_a, w);
        let coef = tail_sum.checked_div(&Interval::from_i64(k as i64)).unwrap();
        acc = &acc - &power.scale(&coef);
    }
    Ok((acc.inflate(&residual), k_terms, residual))
}

fn crude_tail_bound(spec: &ZeroSequenceSpec, z_abs: f64, n: u64) -> f64 {
    // sum_{n > N} 1/(c n^s) <= N^{1-s} / (c (s - 1))
    let (c, s) = spec.tail();
    let cf = c.to_f64().unwrap();
    let sf = s.to_f64().unwrap();
    let sum = (n as f64).powf(1.0 - sf) / (cf * (sf - 1.0));
    let v = 2.0 * z_abs * sum;
    v * (1.0 + 1e-12) + f64::MIN_POSITIVE
}

fn head_product(spec: &ZeroSequenceSpec, z: &ComplexEnclosure, n: u64, w: u32) -> ComplexEnclosure {
    let one = ComplexEnclosure::one();
    let mut acc = ComplexEnclosure::one().with_prec(w);
    let zw = z.clone().with_prec(w);
    for k in 1..=n {
        let zk = spec.zero_at(k, w);
        let inv = Interval::one().with_prec(w).checked_div(&zk).unwrap();
        acc = &acc * &(&one - &zw.scale(&inv));
    }
    acc
}

fn working_precision(prec: u32, n: u64) -> u32 {
    prec.max(16) + 24 + 2 * bits_of(n)
}

/// Certified enclosure of `f(z)`.
pub fn eval_product(spec: &ZeroSequenceSpec, z: &ComplexEnclosure, precision_bits: u32) -> Result<ProductValue> {
    let z_abs = z.abs();
    if z.re.is_point() && z.im.is_point() && z.contains_zero() {
        return Ok(ProductValue {
            value: ComplexEnclosure::one(),
            truncation_index: 0,
            tail_bound: 0.0,
            series_terms: 0,
            tail_residual: Dyadic::zero(),
        });
    }
    let n = truncation_index(spec, z_abs.hi(), 16)?;
    let w = working_precision(precision_bits, n);
    let head = head_product(spec, z, n, w);
    let (log_tail, terms, residual) = tail_log(spec, z, n, w)?;
    let value = (&head * &log_tail.exp()).with_prec(precision_bits.max(16) + 8);
    Ok(ProductValue {
        value,
        truncation_index: n,
        tail_bound: crude_tail_bound(spec, z_abs.hi_f64(), n),
        series_terms: terms,
        tail_residual: residual,
    })
}

/// Principal `log f(z)`, accumulated as the sum of the principal logarithms
/// of the factors.
pub fn log_product(spec: &ZeroSequenceSpec, z: &ComplexEnclosure, precision_bits: u32) -> Result<ComplexEnclosure> {
    let z_abs = z.abs();
    let n = truncation_index(spec, z_abs.hi(), 16)?;
    let w = working_precision(precision_bits, n);
    let one = ComplexEnclosure::one();
    let zw = z.clone().with_prec(w);
    let mut acc = ComplexEnclosure::zero().with_prec(w);
    for k in 1..=n {
        let zk = spec.zero_at(k, w);
        let inv = Interval::one().with_prec(w).checked_div(&zk).unwrap();
        acc = &acc + &(&one - &zw.scale(&inv)).ln()?;
    }
    let (log_tail, _, _) = tail_log(spec, z, n, w)?;
    Ok(&acc + &log_tail)
}

/// `log M(r, f)`, where `M(r, f) = max_{|z| = r} |f(z)| = f(-r)`.
pub fn log_max_modulus(spec: &ZeroSequenceSpec, r: &Interval, precision_bits: u32) -> Result<Interval> {
    if !r.is_positive() {
        return if r.is_point() && r.lo().is_zero() {
            Ok(Interval::zero())
        } else {
            Err(Error::InvalidInput("radius must be positive".into()))
        };
    }
    let n_est = {
        let (c, s) = spec.tail();
        (16.0 * r.hi_f64() / c.to_f64().unwrap()).powf(1.0 / s.to_f64().unwrap())
    };
    if n_est > BRACKET_THRESHOLD as f64 {
        return Ok(log_max_modulus_bracket(spec, r, precision_bits));
    }
    let z = ComplexEnclosure::real(-r);
    let v = eval_product(spec, &z, precision_bits)?;
    Ok(elementary::ln(&v.value.re).expect("f(-r) > 0"))
}

/// `M(r, f) = f(-r)`.
pub fn max_modulus(spec: &ZeroSequenceSpec, r: &Interval, precision_bits: u32) -> Result<Interval> {
    Ok(elementary::exp(&log_max_modulus(spec, r, precision_bits)?))
}

/// Integral brackets for `sum_n log(1 + r/z_n)`.
///
/// With `g(x) = log(1 + r / (c x^s))` decreasing,
/// `int_{m+1}^inf g <= sum_{n > m} g(n) <= int_m^inf g`, and
/// `int_0^inf g = (r/c)^(1/s) pi / sin(pi/s)`. The piece `int_0^a g` is
/// sandwiched between `a log(r/c) - s(a log a - a)` and
/// `a log((c a^s + r)/c) - s(a log a - a)`.
pub fn log_max_modulus_bracket(spec: &ZeroSequenceSpec, r: &Interval, precision_bits: u32) -> Interval {
    let w = precision_bits.max(32) + 32;
    let (c, s) = spec.tail();
    let c_i = Interval::from_rational(c, w);
    let s_i = Interval::from_rational(s, w);
    let rho = Interval::from_rational(&s.recip(), w);
    let r = r.clone().with_prec(w);
    let pi = elementary::pi(w);
    let ratio = r.checked_div(&c_i).unwrap();
    let main = (&elementary::pow(&ratio, &rho).unwrap() * &pi)
        .checked_div(&elementary::sin(&(&pi * &rho)))
        .unwrap();
    let m = spec.explicit_len();
    let mut head = Interval::zero().with_prec(w);
    for k in 1..=m {
        let zk = spec.zero_at(k, w);
        head = &head + &elementary::ln(&(&Interval::one() + &r.checked_div(&zk).unwrap())).unwrap();
    }
    let piece = |a: u64| -> (Interval, Interval) {
        if a == 0 {
            return (Interval::zero(), Interval::zero());
        }
        let a_i = Interval::from_i64(a as i64).with_prec(w);
        let ln_a = elementary::ln(&a_i).unwrap();
        let common = &s_i * &(&(&a_i * &ln_a) - &a_i);
        let lo = &(&a_i * &elementary::ln(&ratio).unwrap()) - &common;
        let top = (&(&c_i * &elementary::pow(&a_i, &s_i).unwrap()) + &r).checked_div(&c_i).unwrap();
        let hi = &(&a_i * &elementary::ln(&top).unwrap()) - &common;
        (lo, hi)
    };
    // sum_{n > m} g(n) in [main - hi(int_0^{m+1}), main - lo(int_0^m)]
    let (_, hi_next) = piece(m + 1);
    let (lo_m, _) = piece(m);
    let lower = &(&main - &hi_next) + &head;
    let upper = &(&main - &lo_m) + &head;
    // log M >= 0 always
    let lo = lower.lo().clone().max(Dyadic::zero());
    let hi = upper.hi().clone().max(lo.clone());
    Interval::new(lo, hi, w)
}

/// One row of the empirical order table.
#[derive(Clone, Debug)]
pub struct GrowthSample {
    pub r: f64,
    pub ratio: Interval,
}

/// `log log M(r, f) / log r` on a grid of radii `r > e`.
pub fn growth_exponent_probe(spec: &ZeroSequenceSpec, radii: &[f64], precision_bits: u32) -> Result<Vec<GrowthSample>> {
    let mut out = Vec::with_capacity(radii.len());
    for &r in radii {
        let ri = Interval::from_f64(r).with_prec(precision_bits.max(64));
        let lm = log_max_modulus(spec, &ri, precision_bits)?;
        let llm = elementary::ln(&lm).ok_or_else(|| Error::InvalidInput("radius too small".into()))?;
        let ratio = llm
            .checked_div(&elementary::ln(&ri).unwrap())
            .ok_or_else(|| Error::InvalidInput("radius must exceed 1".into()))?;
        out.push(GrowthSample { r, ratio });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn squares() -> ZeroSequenceSpec {
        ZeroSequenceSpec::power_law(1, 2)
    }

    #[test]
    fn zeros_and_counts() {
        let exact = |i: Interval, v: i64| i.is_point() && i.contains(&Dyadic::from_i64(v));
        assert!(exact(squares().zero_at(3, 64), 9));
        assert!(exact(squares().zero_at(1, 64), 1));
        assert!(exact(ZeroSequenceSpec::power_law(4, 3).zero_at(2, 64), 32));
        let r = |v: i64| BigRational::from_integer(v.into());
        assert_eq!(count_zeros_below(&squares(), &r(10)), BigInt::from(3));
        assert_eq!(count_zeros_below(&squares(), &r(1)), BigInt::from(0));
        assert_eq!(count_zeros_below(&squares(), &r(1_000_000)), BigInt::from(999));
    }

    #[test]
    fn explicit_counts() {
        let spec = ZeroSequenceSpec::Explicit {
            zeros: vec![BigRational::from_integer(2.into()), BigRational::from_integer(3.into())],
            c: BigRational::one(),
            s: BigRational::from_integer(2.into()),
        };
        spec.validate().unwrap();
        let r = |v: i64| BigRational::from_integer(v.into());
        assert_eq!(count_zeros_below(&spec, &r(2)), BigInt::from(0));
        assert_eq!(count_zeros_below(&spec, &r(3)), BigInt::from(1));
        assert_eq!(count_zeros_below(&spec, &r(9)), BigInt::from(2));
        assert_eq!(count_zeros_below(&spec, &r(10)), BigInt::from(3));
    }

    #[test]
    fn value_at_zero_is_one() {
        let v = eval_product(&squares(), &ComplexEnclosure::zero(), 64).unwrap();
        assert_eq!(v.value, ComplexEnclosure::one());
    }

    #[test]
    fn closed_forms() {
        let quarter = ComplexEnclosure::from_rational(&BigRational::new(1.into(), 4.into()), 128);
        let v = eval_product(&squares(), &quarter, 128).unwrap();
        let two_over_pi = 2.0 / std::f64::consts::PI;
        assert!((v.value.re.mid_f64() - two_over_pi).abs() < 1e-15);
        assert!(v.value.width_f64() < 1e-30);
        let m1 = eval_product(&squares(), &ComplexEnclosure::from_i64(-1), 128).unwrap();
        let want = std::f64::consts::PI.sinh() / std::f64::consts::PI;
        assert!((m1.value.re.mid_f64() - want).abs() < 1e-13);
        let m4 = max_modulus(&squares(), &Interval::from_i64(4), 128).unwrap();
        let tau = 2.0 * std::f64::consts::PI;
        assert!((m4.mid_f64() - tau.sinh() / tau).abs() < 1e-10);
    }

    #[test]
    fn bracket_contains_direct_value() {
        let r = Interval::from_i64(5000);
        let direct = log_max_modulus(&squares(), &r, 64).unwrap();
        let bracket = log_max_modulus_bracket(&squares(), &r, 64);
        assert!(bracket.contains_interval(&direct), "{bracket:?} vs {direct:?}");
    }

    #[test]
    fn growth_probe() {
        // log M(r) = log(sinh(pi sqrt r) / (pi sqrt r)); the ratio approaches
        // 1/2 only like log(pi) / log r
        let closed = |r: f64| {
            let x = std::f64::consts::PI * r.sqrt();
            let log_m = x - std::f64::consts::LN_2 - x.ln();
            log_m.ln() / r.ln()
        };
        let t = growth_exponent_probe(&squares(), &[1e4, 1e8], 64).unwrap();
        for row in &t {
            assert!((row.ratio.mid_f64() - closed(row.r)).abs() < 1e-9, "{row:?} {}", closed(row.r));
        }
        assert!(t[1].ratio.mid_f64() - 0.5 < t[0].ratio.mid_f64() - 0.5);
        assert!(growth_exponent_probe(&squares(), &[], 64).unwrap().is_empty());
    }
}
