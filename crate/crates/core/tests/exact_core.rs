use algpoints::arith::{elementary, Dyadic};
use algpoints::roots::isolate_roots;
use algpoints::{ComplexEnclosure, IntPolynomial, Interval};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

/// Exact `p(a + bi)` over the rationals.
fn exact_eval(p: &IntPolynomial, a: &BigRational, b: &BigRational) -> (BigRational, BigRational) {
    let (mut re, mut im) = (BigRational::zero(), BigRational::zero());
    for c in p.coeffs().iter().rev() {
        let nre = &re * a - &im * b + BigRational::from_integer(c.clone());
        let nim = &re * b + &im * a;
        re = nre;
        im = nim;
    }
    (re, im)
}

fn inside(lo: BigRational, hi: BigRational, v: &BigRational) -> bool {
    &lo <= v && v <= &hi
}

fn dyadic(n: i64, k: i64) -> Dyadic {
    Dyadic::new(BigInt::from(n), -k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn polynomial_enclosure_contains_exact_value(
        coeffs in prop::collection::vec(-20i64..=20, 1..8),
        a in -4000i64..4000,
        b in -4000i64..4000,
        wexp in 8i64..40,
    ) {
        let p = IntPolynomial::from_i64s(&coeffs);
        let k = 10;
        let center = ComplexEnclosure::point(dyadic(a, k), dyadic(b, k)).with_prec(96);
        let boxed = center.inflate(&Dyadic::pow2(-wexp));
        let v = p.eval(&boxed);
        let qa = BigRational::new(a.into(), BigInt::from(1u64 << k));
        let qb = BigRational::new(b.into(), BigInt::from(1u64 << k));
        let (re, im) = exact_eval(&p, &qa, &qb);
        prop_assert!(inside(v.re_lo(), v.re_hi(), &re));
        prop_assert!(inside(v.im_lo(), v.im_hi(), &im));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    /// Root boxes of a monic cubic reproduce the coefficients through the
    /// elementary symmetric functions.
    #[test]
    fn vieta_on_monic_cubics(c0 in -30i64..=30, c1 in -30i64..=30, c2 in -30i64..=30) {
        prop_assume!(c0 != 0);
        let p = IntPolynomial::from_i64s(&[c0, c1, c2, 1]);
        let iso = isolate_roots(&p, 96).unwrap();
        let mut roots = Vec::new();
        for r in &iso.roots {
            for _ in 0..r.multiplicity {
                roots.push(r.enclosure.clone());
            }
        }
        prop_assert_eq!(roots.len(), 3);
        let sum = &(&roots[0] + &roots[1]) + &roots[2];
        let prod = &(&roots[0] * &roots[1]) * &roots[2];
        let pairs = &(&(&roots[0] * &roots[1]) + &(&roots[1] * &roots[2])) + &(&roots[0] * &roots[2]);
        prop_assert!(sum.overlaps(&ComplexEnclosure::from_i64(-c2)));
        prop_assert!(pairs.overlaps(&ComplexEnclosure::from_i64(c1)));
        prop_assert!(prod.overlaps(&ComplexEnclosure::from_i64(-c0)));
    }

    #[test]
    fn doubling_precision_never_widens(coeffs in prop::collection::vec(-9i64..=9, 2..7), x in -3000i64..3000) {
        prop_assume!(*coeffs.last().unwrap() != 0);
        let p = IntPolynomial::from_i64s(&coeffs);
        let lo = isolate_roots(&p, 48).unwrap();
        let hi = isolate_roots(&p, 96).unwrap();
        for r in &hi.roots {
            let parent = lo.roots.iter().find(|s| s.enclosure.overlaps(&r.enclosure)).unwrap();
            prop_assert!(r.enclosure.width() <= parent.enclosure.width());
        }
        let xi = Interval::point(dyadic(x, 10));
        for f in [elementary::exp, elementary::sin, elementary::cos, elementary::atan] {
            let a = f(&xi.clone().with_prec(64));
            let b = f(&xi.clone().with_prec(128));
            prop_assert!(b.width() <= a.width());
            prop_assert!(a.overlaps(&b));
        }
    }
}
