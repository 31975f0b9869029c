//! Exact rational numbers over arbitrary-precision integers.
//!
//! Values are always kept in lowest terms with a positive denominator and
//! render as `p/q`, or as a bare integer when `q = 1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `numerator / denominator` in lowest terms.
    ///
    /// Panics if `denominator` is zero.
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Self {
        let den = denominator.into();
        assert!(!den.is_zero(), "rational with zero denominator");
        Rational(BigRational::new(numerator.into(), den))
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// The integer value, if the denominator is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.numer().clone())
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl std::str::FromStr for Rational {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |part: &str| {
            part.trim()
                .parse::<BigInt>()
                .map_err(|e| format!("invalid rational {s:?}: {e}"))
        };
        match s.split_once('/') {
            Some((p, q)) => {
                let den = parse(q)?;
                if den.is_zero() {
                    return Err(format!("invalid rational {s:?}: zero denominator"));
                }
                Ok(Rational::new(parse(p)?, den))
            }
            None => Ok(Rational::from_integer(parse(s)?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl From<BigInt> for Rational {
    fn from(value: BigInt) -> Self {
        Rational::from_integer(value)
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::from_integer(value)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }

        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use proptest::prelude::*;

    #[test]
    fn display_reduces() {
        assert_eq!(Rational::new(4, 6).to_string(), "2/3");
        assert_eq!(Rational::new(-4, 6).to_string(), "-2/3");
        assert_eq!(Rational::new(4, -6).to_string(), "-2/3");
        assert_eq!(Rational::new(12, 6).to_string(), "2");
        assert_eq!(Rational::zero().to_string(), "0");
    }

    #[test]
    fn parse_roundtrip() {
        assert_eq!("3/6".parse::<Rational>().unwrap(), Rational::new(1, 2));
        assert_eq!(
            "-7".parse::<Rational>().unwrap(),
            Rational::from_integer(-7)
        );
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn serializes_as_string() {
        let v = serde_json::to_string(&Rational::new(5, 10)).unwrap();
        assert_eq!(v, "\"1/2\"");
    }

    proptest! {
        #[test]
        fn always_reduced(p in -10_000i64..10_000, q in 1i64..10_000, r in -500i64..500, s in 1i64..500) {
            let x = Rational::new(p, q) * Rational::new(r, s) + Rational::new(r, q);
            prop_assert!(x.denominator() > &BigInt::zero());
            prop_assert!(x.numerator().gcd(x.denominator()).is_one());
            let back: Rational = x.to_string().parse().unwrap();
            prop_assert_eq!(back, x);
        }
    }
}
