//! Irreducibility over the rationals for small degrees.
//!
//! Degree 2 uses the discriminant. Higher degrees test every candidate factor
//! `lc * prod_{i in S} (z - alpha_i)` over subsets `S` of the certified roots:
//! by Gauss's lemma a factorization exists iff some such product has integer
//! coefficients that divide `p`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::{ComplexEnclosure, Interval};
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::roots::{isolate_roots, PRECISION_CEILING};

/// Largest degree accepted by [`is_irreducible_over_rationals`].
pub const D_MAX: usize = 8;

pub fn is_irreducible_over_rationals(p: &IntPolynomial) -> Result<bool> {
    let n = match p.degree() {
        None | Some(0) => {
            return Err(Error::InvalidInput(
                "irreducibility needs degree >= 1".into(),
            ))
        }
        Some(n) => n,
    };
    if n > D_MAX {
        return Err(Error::UnsupportedDegree {
            degree: n,
            max: D_MAX,
        });
    }
    let p = p.canonical();
    match n {
        1 => Ok(true),
        2 => {
            let (c, b, a) = (p.coeff(0), p.coeff(1), p.coeff(2));
            let disc: BigInt = &b * &b - BigInt::from(4) * a * c;
            Ok(!is_square(&disc))
        }
        _ => {
            if !p.is_square_free() || p.coeff(0).is_zero() {
                return Ok(false);
            }
            subset_search(&p)
        }
    }
}

fn is_square(v: &BigInt) -> bool {
    if v.is_negative() {
        return false;
    }
    let r = v.sqrt();
    &r * &r == *v
}

enum Verdict {
    Excluded,
    Factor,
    Undecided,
}

fn subset_search(p: &IntPolynomial) -> Result<bool> {
    let n = p.degree().unwrap();
    let lc = Interval::from_bigint(&p.leading());
    let mut bits = 64;
    loop {
        let iso = isolate_roots(p, bits)?;
        let boxes: Vec<ComplexEnclosure> = iso.boxes().cloned().collect();
        let mut undecided = false;
        // the complement of a factor is a factor, so |S| <= n/2 suffices
        for mask in 1u32..(1 << n) {
            let k = mask.count_ones() as usize;
            if k > n / 2 {
                continue;
            }
            let chosen: Vec<&ComplexEnclosure> = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| &boxes[i])
                .collect();
            match test_subset(p, &lc, &chosen) {
                Verdict::Factor => return Ok(false),
                Verdict::Undecided => undecided = true,
                Verdict::Excluded => {}
            }
        }
        if !undecided {
            return Ok(true);
        }
        bits *= 2;
        if bits > PRECISION_CEILING {
            return Err(Error::PrecisionExhausted {
                bits,
                context: format!("irreducibility of {p}"),
            });
        }
    }
}

fn test_subset(p: &IntPolynomial, lc: &Interval, roots: &[&ComplexEnclosure]) -> Verdict {
    // coefficients of lc * prod (z - alpha), lowest first
    let mut coeffs = vec![ComplexEnclosure::real(lc.clone())];
    for &alpha in roots {
        let mut next = vec![ComplexEnclosure::zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = &next[i + 1] + c;
            next[i] = &next[i] - &(c * alpha);
        }
        coeffs = next;
    }
    let half = crate::arith::Dyadic::pow2(-1);
    let mut ints = Vec::with_capacity(coeffs.len());
    let mut sharp = true;
    for c in &coeffs {
        if !c.im.contains_zero() {
            return Verdict::Excluded;
        }
        let lo = c.re.lo().ceil();
        let hi = c.re.hi().floor();
        if lo > hi {
            return Verdict::Excluded;
        }
        if c.re.width() >= half || c.im.width() >= half || lo != hi {
            sharp = false;
        }
        ints.push(lo);
    }
    if !sharp {
        return Verdict::Undecided;
    }
    let g = IntPolynomial::new(ints).canonical();
    if p.div_exact(&g).is_some() {
        Verdict::Factor
    } else {
        Verdict::Undecided
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn small_cases() {
        assert!(is_irreducible_over_rationals(&p(&[-1, -1, 1])).unwrap());
        assert!(!is_irreducible_over_rationals(&p(&[-1, 0, 1])).unwrap());
        assert!(!is_irreducible_over_rationals(&p(&[4, 0, 0, 0, 1])).unwrap());
        assert!(is_irreducible_over_rationals(&p(&[-2, 0, 0, 1])).unwrap());
        assert!(!is_irreducible_over_rationals(&p(&[-2, 1, 0, 1, 0, 0])).unwrap());
    }

    #[test]
    fn cyclotomic_and_products() {
        // z^4 + z^3 + z^2 + z + 1
        assert!(is_irreducible_over_rationals(&p(&[1, 1, 1, 1, 1])).unwrap());
        // (z^2 + 1)(z^2 + z + 1)
        let f = &p(&[1, 0, 1]) * &p(&[1, 1, 1]);
        assert!(!is_irreducible_over_rationals(&f).unwrap());
        // (2z - 1)(z^3 - 2) has a rational root 1/2
        let g = &p(&[-1, 2]) * &p(&[-2, 0, 0, 1]);
        assert!(!is_irreducible_over_rationals(&g).unwrap());
        // z^8 - 2 irreducible by Eisenstein
        assert!(is_irreducible_over_rationals(&p(&[-2, 0, 0, 0, 0, 0, 0, 0, 1])).unwrap());
    }

    #[test]
    fn rejects_large_degree() {
        let f = p(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert!(matches!(
            is_irreducible_over_rationals(&f),
            Err(Error::UnsupportedDegree { degree: 9, max: 8 })
        ));
    }
}
