//! Exact rational scalars.
//!
//! Scalars are arbitrary-precision rationals, always in lowest terms with a
//! positive denominator (zero is 0/1). `Display` and `FromStr` use the
//! `p/q` form, omitting `/q` when the value is an integer.

use num::BigInt;

pub use num::BigRational as Rational;

/// Rational from a machine integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n/d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::traits::Zero;

    #[test]
    fn stored_in_lowest_terms_with_positive_denominator() {
        let r = ratio(6, -4);
        assert_eq!(r, ratio(-3, 2));
        assert_eq!(r.to_string(), "-3/2");
        assert!(r.denom() > &BigInt::from(0));
    }

    #[test]
    fn zero_is_zero_over_one() {
        let z = Rational::zero();
        assert_eq!(z.numer(), &BigInt::from(0));
        assert_eq!(z.denom(), &BigInt::from(1));
        assert_eq!(z.to_string(), "0");
    }

    #[test]
    fn parses_integer_and_fraction_forms() {
        assert_eq!("3/2".parse::<Rational>().unwrap(), ratio(3, 2));
        assert_eq!("-7".parse::<Rational>().unwrap(), rat(-7));
        assert!("3/0".parse::<Rational>().is_err());
    }
}
