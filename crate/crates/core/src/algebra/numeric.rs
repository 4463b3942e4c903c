use dashu::complex::CBig;
use dashu::float::round::mode::HalfEven;
use dashu::float::FBig;
use dashu::integer::IBig;
use num_complex::Complex64;

use super::scalar::ExactScalar;
use crate::error::{Error, Result};

pub type RealValue = FBig<HalfEven>;
pub type ComplexValue = CBig<HalfEven>;

pub const DEFAULT_PRECISION: usize = 128;

/// Working precision for multiprecision evaluation.
///
/// Every value produced through a `Numeric` carries its precision, so mixed
/// arithmetic with exact integers never falls back to unlimited precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Numeric {
    bits: usize,
}

impl Default for Numeric {
    fn default() -> Self {
        Numeric {
            bits: DEFAULT_PRECISION,
        }
    }
}

impl Numeric {
    pub fn new(bits: usize) -> Result<Self> {
        if bits < 53 {
            return Err(Error::Parse(format!("precision must be at least 53 bits, got {bits}")));
        }
        Ok(Numeric { bits })
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    /// Decimal digits carried at this precision.
    pub fn digits(&self) -> f64 {
        self.bits as f64 * std::f64::consts::LOG10_2
    }

    /// Absolute zero tolerance: half of the carried decimal digits.
    pub fn tolerance(&self) -> f64 {
        10f64.powf(-self.digits() / 2.0)
    }

    pub fn real(&self, x: f64) -> RealValue {
        RealValue::try_from(x)
            .expect("finite float")
            .with_precision(self.bits)
            .value()
    }

    pub fn real_int(&self, n: i64) -> RealValue {
        RealValue::from(n).with_precision(self.bits).value()
    }

    pub fn complex(&self, re: RealValue, im: RealValue) -> ComplexValue {
        ComplexValue::from_parts(
            re.with_precision(self.bits).value(),
            im.with_precision(self.bits).value(),
        )
    }

    pub fn c(&self, re: f64, im: f64) -> ComplexValue {
        self.complex(self.real(re), self.real(im))
    }

    pub fn int(&self, n: i64) -> ComplexValue {
        self.complex(self.real_int(n), self.real_int(0))
    }

    pub fn zero(&self) -> ComplexValue {
        self.int(0)
    }

    pub fn one(&self) -> ComplexValue {
        self.int(1)
    }

    pub fn from_scalar(&self, q: &ExactScalar) -> ComplexValue {
        let re: RealValue = q.as_rbig().to_float(self.bits).value();
        self.complex(re, self.real_int(0))
    }

    pub fn from_c64(&self, z: Complex64) -> ComplexValue {
        self.c(z.re, z.im)
    }

    pub fn powi(&self, z: &ComplexValue, e: i32) -> Result<ComplexValue> {
        if e < 0 && z.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match e {
            0 => self.one(),
            1 => z.clone(),
            _ => z.powi(IBig::from(e)),
        })
    }

    pub fn sqrt(&self, z: &ComplexValue) -> ComplexValue {
        z.sqrt()
    }

    pub fn recip(&self, z: &ComplexValue) -> Result<ComplexValue> {
        if z.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.one() / z)
    }

    pub fn div(&self, a: &ComplexValue, b: &ComplexValue) -> Result<ComplexValue> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(a.clone() / b.clone())
    }
}

pub fn re(z: &ComplexValue) -> RealValue {
    z.clone().into_parts().0
}

pub fn im(z: &ComplexValue) -> RealValue {
    z.clone().into_parts().1
}

pub fn abs_f64(z: &ComplexValue) -> f64 {
    if z.is_zero() {
        return 0.0;
    }
    z.abs().to_f64().value()
}

pub fn to_c64(z: &ComplexValue) -> Complex64 {
    let (r, i) = z.clone().into_parts();
    Complex64::new(r.to_f64().value(), i.to_f64().value())
}

pub fn conj(z: &ComplexValue) -> ComplexValue {
    z.conj()
}

/// `|a - b| / max(1, |b|)`
pub fn rel_err(a: &ComplexValue, b: &ComplexValue) -> f64 {
    let d = abs_f64(&(a.clone() - b.clone()));
    d / abs_f64(b).max(1.0)
}

/// Fixed point decimal text with `digits` digits after the point.
pub fn real_to_decimal(x: &RealValue, digits: usize) -> String {
    if *x == RealValue::ZERO {
        return format!("{:.*}", digits, 0.0);
    }
    let dec = x.to_decimal().value();
    format!("{:.*}", digits, dec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_floor() {
        assert!(Numeric::new(52).is_err());
        assert_eq!(Numeric::new(64).unwrap().bits(), 64);
    }

    #[test]
    fn arithmetic_and_sqrt() {
        let n = Numeric::default();
        let u = n.complex(n.real(-0.5), n.real_int(3).sqrt() / n.real_int(2));
        let v = &u * &u + &u + n.one();
        assert!(abs_f64(&v) < 1e-30);
        let r = n.sqrt(&n.int(-4));
        assert!((to_c64(&r) - Complex64::new(0.0, 2.0)).norm() < 1e-15);
        assert!(n.recip(&n.zero()).is_err());
        assert!(n.powi(&n.zero(), -1).is_err());
    }

    #[test]
    fn decimal_text() {
        let n = Numeric::default();
        assert_eq!(real_to_decimal(&n.real(0.25), 3), "0.250");
        assert_eq!(real_to_decimal(&n.real_int(0), 2), "0.00");
        assert_eq!(real_to_decimal(&n.real(-1.5), 1), "-1.5");
    }
}
