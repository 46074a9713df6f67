//! Exact rational scalars.
//!
//! Every number in this crate is a `Scalar`: an arbitrary-precision
//! rational kept in lowest terms with a positive denominator. There is no
//! floating point anywhere; equality is always exact.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

/// Error produced when parsing a scalar from its string form.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarParseError {
    #[error("malformed rational {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// An exact rational number.
///
/// Stored in lowest terms with positive denominator (the backing
/// `BigRational` maintains this canonical form on every operation).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// Builds `numer/denom`; fails on a zero denominator.
    pub fn ratio(numer: i64, denom: i64) -> Result<Self, ScalarParseError> {
        if denom == 0 {
            return Err(ScalarParseError::ZeroDenominator(format!(
                "{numer}/{denom}"
            )));
        }
        Ok(Scalar(BigRational::new(
            BigInt::from(numer),
            BigInt::from(denom),
        )))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero scalar");
        Scalar(self.0.recip())
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Scalar {
    type Err = ScalarParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let malformed = || ScalarParseError::Malformed(s.to_string());
        match s.split_once('/') {
            None => {
                let n = BigInt::from_str(s).map_err(|_| malformed())?;
                Ok(Scalar(BigRational::from_integer(n)))
            }
            Some((p, q)) => {
                let p = BigInt::from_str(p.trim()).map_err(|_| malformed())?;
                let q = BigInt::from_str(q.trim()).map_err(|_| malformed())?;
                if q.is_zero() {
                    return Err(ScalarParseError::ZeroDenominator(s.to_string()));
                }
                Ok(Scalar(BigRational::new(p, q)))
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero scalar");
        Scalar(self.0 / rhs.0)
    }
}

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero scalar");
        Scalar(&self.0 / &rhs.0)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        self.0 *= &rhs.0;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, s| acc + s)
    }
}

/// `(-1)^exponent` as a scalar-friendly sign.
pub fn parity_sign(exponent: usize) -> i8 {
    if exponent.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Adds `sign * coeff * value` into `acc`, skipping zero work.
pub fn accumulate(acc: &mut Scalar, sign: i8, coeff: &Scalar, value: &Scalar) {
    if coeff.is_zero() || value.is_zero() {
        return;
    }
    let term = coeff * value;
    match sign {
        1 => *acc += term,
        -1 => *acc -= &term,
        _ => unreachable!("sign must be ±1"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_positive_denominator() {
        let s = Scalar::ratio(4, -6).unwrap();
        assert_eq!(s.to_string(), "-2/3");
        let t: Scalar = "-10/-4".parse().unwrap();
        assert_eq!(t.to_string(), "5/2");
    }

    #[test]
    fn integer_display_omits_denominator() {
        assert_eq!(Scalar::ratio(8, 4).unwrap().to_string(), "2");
        assert_eq!(Scalar::from_int(-7).to_string(), "-7");
    }

    #[test]
    fn parse_rejects_zero_denominator() {
        assert!(matches!(
            "3/0".parse::<Scalar>(),
            Err(ScalarParseError::ZeroDenominator(_))
        ));
        assert!(Scalar::ratio(1, 0).is_err());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("1.5".parse::<Scalar>().is_err());
        assert!("a/b".parse::<Scalar>().is_err());
        assert!("".parse::<Scalar>().is_err());
    }

    #[test]
    fn field_arithmetic_round_trip() {
        let a = Scalar::ratio(3, 7).unwrap();
        let b = Scalar::ratio(-2, 5).unwrap();
        let sum = &a + &b;
        assert_eq!(sum.to_string(), "1/35");
        assert_eq!((&sum - &b), a);
        let prod = &a * &b;
        assert_eq!((&prod / &b), a);
        assert_eq!(&a * &a.recip(), Scalar::one());
    }

    #[test]
    fn serde_round_trip_is_stringly() {
        let s = Scalar::ratio(-9, 12).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, "\"-3/4\"");
        let back: Scalar = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }
}
