use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use dashu::base::{Abs, Signed};
use dashu::integer::{IBig, UBig};
use dashu::rational::RBig;

use crate::error::{Error, Result};

/// Arbitrary precision rational number kept in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactScalar(RBig);

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar(RBig::ZERO)
    }

    pub fn one() -> Self {
        ExactScalar(RBig::ONE)
    }

    pub fn from_int(n: impl Into<IBig>) -> Self {
        ExactScalar(RBig::from(n.into()))
    }

    pub fn new(num: impl Into<IBig>, den: impl Into<IBig>) -> Result<Self> {
        let den = den.into();
        if den == IBig::ZERO {
            return Err(Error::DivisionByZero);
        }
        Ok(ExactScalar(RBig::from_parts_signed(num.into(), den)))
    }

    pub fn from_rbig(r: RBig) -> Self {
        ExactScalar(r)
    }

    pub fn as_rbig(&self) -> &RBig {
        &self.0
    }

    pub fn numerator(&self) -> &IBig {
        self.0.numerator()
    }

    pub fn denominator(&self) -> &UBig {
        self.0.denominator()
    }

    pub fn is_zero(&self) -> bool {
        self.0 == RBig::ZERO
    }

    pub fn is_one(&self) -> bool {
        self.0 == RBig::ONE
    }

    pub fn is_integer(&self) -> bool {
        *self.0.denominator() == UBig::ONE
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        ExactScalar(self.0.clone().abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ExactScalar(RBig::ONE / &self.0))
    }

    pub fn pow(&self, k: usize) -> Self {
        ExactScalar(self.0.pow(k as isize))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        ExactScalar::from_int(n)
    }
}

impl From<IBig> for ExactScalar {
    fn from(n: IBig) -> Self {
        ExactScalar(RBig::from(n))
    }
}

impl From<RBig> for ExactScalar {
    fn from(r: RBig) -> Self {
        ExactScalar(r)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0.numerator())
        } else {
            write!(f, "{}/{}", self.0.numerator(), self.0.denominator())
        }
    }
}

impl FromStr for ExactScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_int = |t: &str| IBig::from_str(t.trim()).map_err(|_| Error::Parse(format!("bad number `{s}`")));
        match s.split_once('/') {
            Some((n, d)) => ExactScalar::new(parse_int(n)?, parse_int(d)?),
            None => Ok(ExactScalar::from_int(parse_int(s)?)),
        }
    }
}

impl serde::Serialize for ExactScalar {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for ExactScalar {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: &ExactScalar) -> ExactScalar {
                ExactScalar((&self.0).$m(&rhs.0))
            }
        }
        impl $tr for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: ExactScalar) -> ExactScalar {
                ExactScalar(self.0.$m(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    /// Panics on a zero divisor; use [`ExactScalar::recip`] for a checked inverse.
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        assert!(!rhs.is_zero(), "division of an ExactScalar by zero");
        ExactScalar(&self.0 / &rhs.0)
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-self.0)
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-self.0.clone())
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, rhs: &ExactScalar) {
        self.0 -= &rhs.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms() {
        let q = ExactScalar::new(6, -4).unwrap();
        assert_eq!(q.to_string(), "-3/2");
        assert_eq!(q.denominator(), &UBig::from(2u8));
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["0", "17", "-5/3", "123456789012345678901234567890"] {
            let q: ExactScalar = s.parse().unwrap();
            assert_eq!(q.to_string(), s);
        }
        assert!("1/0".parse::<ExactScalar>().is_err());
        assert!("x".parse::<ExactScalar>().is_err());
    }

    #[test]
    fn arithmetic() {
        let a = ExactScalar::new(1, 2).unwrap();
        let b = ExactScalar::new(1, 3).unwrap();
        assert_eq!((&a + &b).to_string(), "5/6");
        assert_eq!((&a - &b).to_string(), "1/6");
        assert_eq!((&a * &b).to_string(), "1/6");
        assert_eq!((&a / &b).to_string(), "3/2");
        assert!(ExactScalar::zero().recip().is_err());
    }
}
