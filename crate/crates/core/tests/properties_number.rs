//! Property suite for the exact arithmetic layer: field axioms, soundness
//! of the zero test against an independent high-precision oracle, order
//! consistency with decimal output, and the digit round trip.

mod common;

use betafull::{BetaContext, BetaNumber};
use common::{ctx, example_specs, Rng};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use std::cmp::Ordering;

fn random_number(context: &BetaContext, rng: &mut Rng) -> BetaNumber {
    // A random small integer combination of powers of beta.
    let mut acc = context.zero();
    for i in 0..3i64 {
        let c = rng.range_i64(-9, 9);
        if c != 0 {
            acc = &acc + &(&context.from_int(c) * &context.beta_pow(i));
        }
    }
    acc
}

#[test]
fn subtraction_round_trips_on_1000_pairs() {
    for spec in example_specs() {
        let c = ctx(spec);
        let mut rng = Rng::new(0xBE7A);
        for _ in 0..250 {
            let a = random_number(&c, &mut rng);
            let b = random_number(&c, &mut rng);
            assert_eq!(&(&a - &b) + &b, a);
        }
    }
}

#[test]
fn ring_axioms_hold_exactly() {
    for spec in example_specs() {
        let c = ctx(spec);
        let mut rng = Rng::new(0xA10E);
        for _ in 0..100 {
            let a = random_number(&c, &mut rng);
            let b = random_number(&c, &mut rng);
            let d = random_number(&c, &mut rng);
            assert_eq!(&(&a + &b) + &d, &a + &(&b + &d));
            assert_eq!(&(&a * &b) * &d, &a * &(&b * &d));
            assert_eq!(&a * &(&b + &d), &(&a * &b) + &(&a * &d));
            assert_eq!(&a * &b, &b * &a);
        }
    }
}

#[test]
fn division_inverts_multiplication() {
    for spec in example_specs() {
        let c = ctx(spec);
        let mut rng = Rng::new(0xD1F);
        for _ in 0..60 {
            let a = random_number(&c, &mut rng);
            let b = random_number(&c, &mut rng);
            if b.is_zero() {
                assert!(a.div(&b).is_err());
                continue;
            }
            assert_eq!(&a.div(&b).unwrap() * &b, a);
        }
    }
}

/// Parse a plain decimal string into an exact rational.
fn decimal_to_rational(s: &str) -> BigRational {
    let neg = s.starts_with('-');
    let body = s.trim_start_matches('-');
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
    let digits: BigInt = format!("{int_part}{frac_part}").parse().unwrap();
    let value = BigRational::new(digits, scale);
    if neg {
        -value
    } else {
        value
    }
}

/// The zero test must agree with a 40-digit interval approximation: a
/// claimed zero evaluates below 1e-30 there, a claimed nonzero above.
/// The margin is far wider than any honest separation bound at these
/// coefficient sizes.
#[test]
fn zero_test_matches_numeric_oracle_on_500_polynomials() {
    for spec in ["digits=1,1", "digits=3,(2)", "digits=2,1", "digits=3,3,0,(2)"] {
        let c = ctx(spec);
        let beta_approx = decimal_to_rational(&c.beta().to_decimal(40));
        let mut rng = Rng::new(0x5EED);
        let threshold = BigRational::new(
            BigInt::from(1),
            BigInt::from(10u32).pow(30),
        );
        for _ in 0..125 {
            let coeffs: Vec<i64> = (0..4).map(|_| rng.range_i64(-9, 9)).collect();
            let mut value = c.zero();
            let mut numeric = BigRational::from_integer(0.into());
            let mut power = BigRational::from_integer(1.into());
            for (i, &co) in coeffs.iter().enumerate() {
                value = &value + &(&c.from_int(co) * &c.beta_pow(i as i64));
                numeric += BigRational::from_integer(co.into()) * &power;
                power *= &beta_approx;
            }
            if value.is_zero() {
                assert!(
                    numeric.abs() < threshold,
                    "{spec}: claimed zero but numeric value {numeric} is large"
                );
            } else {
                assert!(
                    numeric.abs() > threshold,
                    "{spec}: claimed nonzero but numeric value is tiny"
                );
            }
        }
    }
}

/// Values that are zero at beta despite nonzero representatives: the
/// characteristic polynomial of digits=3,3,0,(2) is divisible by
/// x^3 - 5x^2 + 5x - 2, so multiples of that factor all vanish. The
/// certificate must catch every one, and scaled perturbations must not.
#[test]
fn certificate_zeros_in_a_reducible_quotient() {
    let c = ctx("digits=3,3,0,(2)");
    let cubic = &(&(&c.beta_pow(3) - &(&c.from_int(5) * &c.beta_pow(2)))
        + &(&c.from_int(5) * &c.beta()))
        - &c.from_int(2);
    assert!(cubic.is_zero());
    let mut rng = Rng::new(0x0DD);
    for _ in 0..60 {
        let a = rng.range_i64(-9, 9);
        let b = rng.range_i64(-9, 9);
        let linear = &(&c.from_int(a) * &c.beta()) + &c.from_int(b);
        let product = &cubic * &linear;
        assert!(product.is_zero(), "({a} beta + {b}) * cubic must vanish");
        assert_eq!(product.sign(), 0);
        if !(a == 0 && b == 0) {
            let shifted = &product + &linear;
            assert!(shifted == linear);
            assert!(!(&linear + &c.one()).is_zero() || linear == c.from_int(-1));
        }
    }
}

#[test]
fn known_zero_combinations_are_zero() {
    // beta^2 - beta - 1 vanishes for the golden base; scaled and shifted
    // combinations must still test zero.
    let c = ctx("digits=1,1");
    let rel = &(&c.beta_pow(2) - &c.beta()) - &c.one();
    assert!(rel.is_zero());
    let mut rng = Rng::new(7);
    for _ in 0..50 {
        let r = random_number(&c, &mut rng);
        assert!((&rel * &r).is_zero());
        assert_eq!(&r + &rel, r);
    }
}

#[test]
fn compare_agrees_with_decimals_on_500_pairs() {
    for spec in example_specs() {
        let c = ctx(spec);
        let mut rng = Rng::new(0xC0119A5E);
        for _ in 0..125 {
            let a = random_number(&c, &mut rng);
            let b = random_number(&c, &mut rng);
            let da = decimal_to_rational(&a.to_decimal(20));
            let db = decimal_to_rational(&b.to_decimal(20));
            if da != db {
                let expected = if da < db {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
                assert_eq!(a.compare(&b).unwrap(), expected);
            }
        }
    }
}

#[test]
fn digit_round_trip_for_every_digit_spec_context() {
    let specs = [
        "digits=1,1",
        "digits=2,1",
        "digits=2",
        "digits=3",
        "digits=3,(2)",
        "digits=2,(1)",
        "digits=1,0,1",
        "digits=2,1,(2,0)",
        "digits=3,3,0,(2)",
    ];
    for spec in specs {
        let c = BetaContext::new(spec).expect(spec);
        // Recover the normalized digit lists from the canonical spec.
        let body = c.spec().strip_prefix("digits=").expect("digit spec");
        let (pre, per): (Vec<u32>, Vec<u32>) = match body.find(",(") {
            Some(idx) => {
                let pre = body[..idx].split(',').map(|d| d.parse().unwrap()).collect();
                let per = body[idx + 2..body.len() - 1]
                    .split(',')
                    .map(|d| d.parse().unwrap())
                    .collect();
                (pre, per)
            }
            None => (body.split(',').map(|d| d.parse().unwrap()).collect(), vec![]),
        };
        let total = pre.len() + 2 * per.len().max(1);
        let digits = c.beta_expand(&c.one(), total).unwrap();
        for (i, &d) in digits.iter().enumerate() {
            let expected = if i < pre.len() {
                pre[i]
            } else if per.is_empty() {
                0
            } else {
                per[(i - pre.len()) % per.len()]
            };
            assert_eq!(d, expected, "{spec} digit {i}");
        }
    }
}

/// Arbitrary spec strings must come back as errors, never panics.
#[test]
fn make_context_never_panics_on_garbage() {
    let alphabet: &[u8] = b"0123456789,()=/digtsrational ";
    let mut rng = Rng::new(0x6A4BA6E);
    for _ in 0..2000 {
        let len = rng.below(24) as usize;
        let s: String = (0..len)
            .map(|_| alphabet[rng.below(alphabet.len() as u64) as usize] as char)
            .collect();
        let _ = BetaContext::new(&s);
        let _ = BetaContext::new(&format!("digits={s}"));
        let _ = BetaContext::new(&format!("rational={s}"));
    }
    // A few adversarial shapes by hand.
    for s in [
        "digits=",
        "digits=,",
        "digits=()",
        "digits=1,(",
        "digits=1,()",
        "digits=1,(2),3",
        "digits=4294967295",
        "rational=",
        "rational=1/",
        "rational=/2",
        "rational=-3/2",
        "rational=999999999999999999999999/7",
        "",
        "beta=2",
    ] {
        // Reaching the next iteration (no panic) is the property.
        let _ = BetaContext::new(s);
    }
}

#[test]
fn context_mismatch_is_reported() {
    let a = ctx("digits=1,1");
    let b = ctx("digits=2");
    assert!(a.one().compare(&b.one()).is_err());
    // Equal canonical specs are the same context even across instances.
    let a2 = ctx("digits=1,1");
    assert!(a.one().compare(&a2.one()).is_ok());
}
