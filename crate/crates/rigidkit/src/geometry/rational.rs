use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational scalar.
///
/// `BigRational` keeps values in lowest terms with a positive denominator,
/// which is exactly the representation the exact layer relies on. Arithmetic
/// never rounds; dividing by zero panics, so library code only divides by
/// quantities it has proven nonzero (pivots, squared norms).
pub type Rational = BigRational;

/// Rational constant `num/den`. Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer constant as a rational.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Signed, Zero};

    #[test]
    fn constants_are_reduced_with_positive_denominator() {
        let x = rat(10, -16);
        assert_eq!(x, rat(-5, 8));
        assert!(x.denom().is_positive());
        assert!(rat(0, 7).is_zero());
        assert!(rat(-3, -3).is_one());
    }

    #[test]
    fn arithmetic_is_exact() {
        assert_eq!(rat(1, 3) + rat(1, 6), rat(1, 2));
        assert_eq!(rat(21, 20) * rat(21, 20), rat(441, 400));
        assert_eq!(int(1) / rat(1, 4), int(4));
    }
}
