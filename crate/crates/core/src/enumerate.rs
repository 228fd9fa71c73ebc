//! Exhaustive enumeration of algebraic numbers of bounded degree and height.
//!
//! A minimal polynomial of degree `k` with Mahler measure at most `H^k` has
//! `|a_i| <= binom(k, i) H^k`, so the scan over that coefficient box is
//! complete. Candidates are filtered by a certified Mahler comparison and an
//! irreducibility test.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::factor::{is_irreducible_over_rationals, D_MAX};
use crate::heights::{mahler_at_most, AlgebraicNumber, HeightBound};
use crate::poly::IntPolynomial;
use crate::roots::box_order;

/// Disjoint slice of the candidate sequence: candidates whose running index
/// is congruent to `index` modulo `count`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shard {
    pub index: usize,
    pub count: usize,
}

impl Shard {
    pub const ALL: Shard = Shard { index: 0, count: 1 };
}

#[derive(Clone, Debug)]
pub struct EnumerationOptions {
    /// Maximum number of coefficient vectors scanned.
    pub budget: u128,
    pub precision_bits: u32,
    pub shard: Shard,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            budget: 50_000_000,
            precision_bits: 64,
            shard: Shard::ALL,
        }
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut out = BigInt::one();
    for i in 0..k {
        out = out * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    out
}

/// Per-coefficient bounds `floor(binom(k, i) H^k)`, lowest degree first.
pub fn coefficient_box(k: usize, h: &HeightBound) -> Vec<BigInt> {
    let hk = h.pow_enclosure(k as u32, 128);
    (0..=k)
        .map(|i| {
            let b = crate::arith::Interval::from_bigint(&binomial(k, i)).with_prec(128);
            match h {
                HeightBound::Exact(q) => {
                    let exact = BigRational::from_integer(binomial(k, i))
                        * crate::heights::pow_rational(q, k as u32);
                    exact.floor().to_integer()
                }
                HeightBound::ExpOf(_) => (&b * &hk).hi().floor(),
            }
        })
        .collect()
}

/// Number of coefficient vectors scanned for degrees `1..=d`.
pub fn candidate_count(d: usize, h: &HeightBound) -> u128 {
    let mut total: u128 = 0;
    for k in 1..=d {
        let bx = coefficient_box(k, h);
        let mut n: u128 = bx[k].to_u128().unwrap_or(u128::MAX);
        for b in &bx[..k] {
            let width = b.to_u128().and_then(|v| v.checked_mul(2)).and_then(|v| v.checked_add(1));
            n = match width {
                Some(w) => n.saturating_mul(w),
                None => u128::MAX,
            };
        }
        total = total.saturating_add(n);
    }
    total
}

/// Minimal polynomials (primitive, positive leading coefficient) of all
/// algebraic numbers of degree at most `d` and height at most `H`, in
/// emission order.
pub fn enumerate_minimal_polynomials(
    d: usize,
    h: &HeightBound,
    opts: &EnumerationOptions,
) -> Result<Vec<IntPolynomial>> {
    if d == 0 {
        return Err(Error::InvalidInput("degree bound must be positive".into()));
    }
    if d > D_MAX {
        return Err(Error::UnsupportedDegree {
            degree: d,
            max: D_MAX,
        });
    }
    h.validate()?;
    if opts.shard.count == 0 || opts.shard.index >= opts.shard.count {
        return Err(Error::InvalidInput("invalid shard".into()));
    }
    let candidates = candidate_count(d, h);
    if candidates > opts.budget {
        return Err(Error::BudgetExceeded {
            candidates,
            budget: opts.budget,
        });
    }
    let mut out = Vec::new();
    let mut running: u128 = 0;
    let count = opts.shard.count as u128;
    let index = opts.shard.index as u128;
    for k in 1..=d {
        let bx = coefficient_box(k, h);
        let hk2 = h.pow_enclosure(2 * k as u32, 128);
        // odometer over (a_k, a_{k-1}, ..., a_0), a_k from 1 upward, the
        // others from -B_i upward
        let mut cur: Vec<BigInt> = (0..=k)
            .map(|i| if i == k { BigInt::one() } else { -bx[i].clone() })
            .collect();
        if bx[k] < BigInt::one() {
            continue;
        }
        loop {
            if running % count == index {
                if let Some(p) = accept(&cur, k, h, &hk2, opts.precision_bits)? {
                    out.push(p);
                }
            }
            running += 1;
            // increment the lowest-priority digit (a_0) first
            let mut i = 0;
            loop {
                if i > k {
                    break;
                }
                if cur[i] < bx[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = if i == k { BigInt::one() } else { -bx[i].clone() };
                i += 1;
            }
            if i > k {
                break;
            }
        }
    }
    out.sort_by(poly_order);
    Ok(out)
}

fn accept(
    coeffs: &[BigInt],
    k: usize,
    h: &HeightBound,
    hk2: &crate::arith::Interval,
    prec: u32,
) -> Result<Option<IntPolynomial>> {
    // a root at 0 forces the polynomial z
    if coeffs[0].is_zero() && k > 1 {
        return Ok(None);
    }
    let content = coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !content.is_one() {
        return Ok(None);
    }
    let p = IntPolynomial::new(coeffs.to_vec());
    // Landau: M(p) <= ||p||_2
    let norm2: BigInt = coeffs.iter().map(|c| c * c).sum();
    let landau_ok = match h {
        HeightBound::Exact(q) => {
            BigRational::from_integer(norm2) <= crate::heights::pow_rational(q, 2 * k as u32)
        }
        HeightBound::ExpOf(_) => crate::arith::Dyadic::from_bigint(&norm2) <= *hk2.lo(),
    };
    // irreducibility first: a reducible p may have M(p) exactly on the
    // boundary through a rational root, which refinement cannot settle
    if !is_irreducible_over_rationals(&p)? {
        return Ok(None);
    }
    if !landau_ok && !mahler_at_most(&p, h, k as u32, prec)? {
        return Ok(None);
    }
    Ok(Some(p))
}

/// Degree, then coefficients from the leading one down.
pub fn poly_order(a: &IntPolynomial, b: &IntPolynomial) -> Ordering {
    let da = a.degree().unwrap_or(0);
    let db = b.degree().unwrap_or(0);
    da.cmp(&db).then_with(|| {
        a.coeffs()
            .iter()
            .rev()
            .zip(b.coeffs().iter().rev())
            .map(|(x, y)| x.cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}

pub fn emission_order(a: &AlgebraicNumber, b: &AlgebraicNumber) -> Ordering {
    poly_order(&a.minpoly, &b.minpoly).then_with(|| box_order(&a.root_box, &b.root_box))
}

/// Every algebraic number `alpha` with `deg(alpha) <= d` and `H(alpha) <= H`,
/// each once, in emission order.
pub fn enumerate_algebraic(d: usize, h: &HeightBound, opts: &EnumerationOptions) -> Result<Vec<AlgebraicNumber>> {
    let mut out = Vec::new();
    for p in enumerate_minimal_polynomials(d, h, opts)? {
        out.extend(AlgebraicNumber::roots_of(&p, opts.precision_bits)?);
    }
    Ok(out)
}

/// Merge shard outputs into emission order.
pub fn merge_shards(parts: Vec<Vec<AlgebraicNumber>>) -> Vec<AlgebraicNumber> {
    let mut all: Vec<AlgebraicNumber> = parts.into_iter().flatten().collect();
    all.sort_by(emission_order);
    all
}
