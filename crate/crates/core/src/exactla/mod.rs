//! Exact rational arithmetic, linear algebra, cone membership and
//! polynomial interpolation.

mod cone;
mod fit;
mod matrix;
mod poly;

pub use cone::solve_nonneg_combination;
pub use fit::{fit_poly, fit_with_monomials, graded_lex_monomials, interpolate_univariate};
pub use matrix::{MatrixQ, Rref};
pub use poly::{MultiPolyQ, UniPolyQ};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `"p"` for integers, `"p/q"` otherwise.
pub fn rational_to_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// The integer value of `r`, if it is an integer that fits in an `i64`.
pub fn to_i64(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

pub fn is_nonnegative(r: &Rational) -> bool {
    !r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_round_trip() {
        assert_eq!(rational_to_string(&frac(4, -6)), "-2/3");
        assert_eq!(rational_to_string(&q(7)), "7");
        assert_eq!(parse_rational("-2/3").unwrap(), frac(-2, 3));
        assert_eq!(parse_rational(" 5 ").unwrap(), q(5));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn normalized_representation() {
        let r = frac(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(frac(0, 5), q(0));
        assert_eq!(to_i64(&frac(10, 5)), Some(2));
        assert_eq!(to_i64(&frac(1, 2)), None);
    }
}
