use algpoints::arith::elementary;
use algpoints::constants::polar;
use algpoints::products::{count_zeros_below, eval_product, ZeroSequenceSpec};
use algpoints::{ComplexEnclosure, Interval};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `sin(pi sqrt(z))/(pi sqrt(z))`, even in the root.
fn sine_oracle(z: &ComplexEnclosure, prec: u32) -> ComplexEnclosure {
    let w = z.sqrt().unwrap().scale(&elementary::pi(prec));
    w.sin().checked_div(&w).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn squares_match_sine_closed_form(r in 0.01f64..50.0, t in 0.0f64..std::f64::consts::TAU) {
        let spec = ZeroSequenceSpec::power_law(1, 2);
        let z = ComplexEnclosure::from_f64(r * t.cos(), r * t.sin()).with_prec(128);
        let v = eval_product(&spec, &z, 128).unwrap().value;
        let o = sine_oracle(&z, 128);
        prop_assert!(v.overlaps(&o), "z = {:?}: {:?} vs {:?}", z.mid_f64(), v.mid_f64(), o.mid_f64());
        prop_assert!(v.width_f64() <= 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn refinement_never_widens(r in 0.5f64..200.0, t in 0.0f64..std::f64::consts::TAU, c in 1i64..4, s in 2i64..4) {
        let spec = ZeroSequenceSpec::power_law(c, s);
        let z = ComplexEnclosure::from_f64(r * t.cos(), r * t.sin());
        let lo = eval_product(&spec, &z.clone().with_prec(64), 64).unwrap().value;
        let hi = eval_product(&spec, &z.with_prec(128), 128).unwrap().value;
        prop_assert!(hi.width() <= lo.width());
        prop_assert!(hi.overlaps(&lo));
    }
}

/// With positive zeros and `f(0) = 1`, the maximum modulus on `|z| = r` is
/// `f(-r)`.
#[test]
fn maximum_modulus_on_negative_axis() {
    let prec = 96;
    for spec in [ZeroSequenceSpec::power_law(1, 2), ZeroSequenceSpec::power_law(2, 3)] {
        for r in [1i64, 7, 40, 300] {
            let ri = Interval::from_i64(r);
            let at_pi = eval_product(&spec, &ComplexEnclosure::from_i64(-r).with_prec(prec), prec).unwrap().value;
            let top = at_pi.abs();
            let pi = elementary::pi(prec);
            for k in 0..48 {
                let theta = &pi * &Interval::from_rational(&q(k, 24), prec);
                let v = eval_product(&spec, &polar(&ri, &theta), prec).unwrap().value.abs();
                assert!(v.lo() <= top.hi(), "r = {r}, k = {k}");
            }
            assert!(at_pi.im.contains_zero() && at_pi.re.is_positive());
        }
    }
}

#[test]
fn zero_density_converges() {
    let r = BigRational::from_integer(100_000_000.into());
    for (c, s) in [(1i64, 2i64), (3, 2), (1, 3), (2, 4)] {
        let spec = ZeroSequenceSpec::power_law(c, s);
        let n = count_zeros_below(&spec, &r).to_f64().unwrap();
        let rho = 1.0 / s as f64;
        let ratio = n / 1e8f64.powf(rho);
        assert!((ratio / spec.mu_f64() - 1.0).abs() < 0.01, "c={c}, s={s}: {ratio}");
    }
}
