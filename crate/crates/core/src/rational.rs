//! Exact rational scalars.
//!
//! Every quantity in this crate is an arbitrary-precision rational in lowest
//! terms with a positive denominator; nothing is ever rounded.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// `num / den`, reduced. Panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Compact text form: `3`, `-1/2`.
pub fn show(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `(-1)^k` as a rational.
pub fn sign_pow(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        one()
    } else {
        -one()
    }
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_positive_denominator() {
        let r = frac(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(show(&r), "-3/2");
        assert_eq!(show(&int(7)), "7");
    }

    #[test]
    fn field_axioms_exact() {
        let a = frac(1, 3);
        let b = frac(-2, 7);
        assert_eq!(&a * &b + &a * &b, &a * (&b + &b));
        assert_eq!((&a / &b) * &b, a);
        assert_eq!(frac(1, 3) + frac(2, 3), one());
    }
}
