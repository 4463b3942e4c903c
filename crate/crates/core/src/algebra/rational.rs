use std::fmt;

use serde::{Deserialize, Serialize};

use super::mpoly::{MPoly, Var};
use super::scalar::ExactScalar;
use crate::error::{Error, Result};

/// `numerator / base^power`.
///
/// Keeping the denominator as a power of a single base lets substitution
/// results print in the familiar `(...)/(c-2)^k` shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalExpression {
    pub numerator: MPoly,
    pub base: MPoly,
    pub power: u32,
}

impl RationalExpression {
    pub fn new(numerator: MPoly, denominator: MPoly) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalExpression {
            numerator,
            base: denominator,
            power: 1,
        }
        .normalized())
    }

    pub fn polynomial(p: MPoly) -> Self {
        RationalExpression {
            numerator: p,
            base: MPoly::one(),
            power: 0,
        }
    }

    pub fn denominator(&self) -> MPoly {
        self.base.pow(self.power)
    }

    fn normalized(mut self) -> Self {
        if self.base.is_constant() {
            let c = self.base.constant_value().unwrap().pow(self.power as usize);
            self.numerator = self.numerator.scale(&c.recip().expect("nonzero base"));
            self.base = MPoly::one();
            self.power = 0;
            return self;
        }
        // cancel whole factors of the base
        while self.power > 0 {
            match self.numerator.exact_div(&self.base) {
                Ok(q) => {
                    self.numerator = q;
                    self.power -= 1;
                }
                Err(_) => break,
            }
        }
        if self.power == 0 {
            self.base = MPoly::one();
            return self;
        }
        // make the base primitive with a positive leading coefficient
        let bc = self.base.signed_content();
        self.base = self.base.scale(&bc.recip().expect("nonzero content"));
        self.numerator = self.numerator.scale(&bc.pow(self.power as usize).recip().unwrap());
        self
    }

    /// Substitute `value` for `var` in `p` (which must be polynomial in `var`).
    pub fn substitute(p: &MPoly, var: Var, value: &RationalExpression) -> RationalExpression {
        let coeffs = p.coefficients_in(var);
        let d = (coeffs.len() - 1) as u32;
        let n = &value.numerator;
        let den = value.denominator();
        let mut num = MPoly::zero();
        let mut npow = MPoly::one();
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let dpow = den.pow(d - k as u32);
                num = &num + &(&(c * &npow) * &dpow);
            }
            if k < coeffs.len() - 1 {
                npow = &npow * n;
            }
        }
        RationalExpression {
            numerator: num,
            base: value.base.clone(),
            power: value.power * d,
        }
        .normalized()
    }

    /// Split the numerator into (signed content, primitive part with positive leading coefficient).
    pub fn split_content(&self) -> (ExactScalar, MPoly) {
        if self.numerator.is_zero() {
            return (ExactScalar::zero(), MPoly::zero());
        }
        let c = self.numerator.signed_content();
        let prim = self.numerator.scale(&c.recip().unwrap());
        (c, prim)
    }
}

impl fmt::Display for RationalExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.power == 0 {
            return write!(f, "{}", self.numerator);
        }
        let base = if self.base.len() > 1 {
            format!("({})", self.base)
        } else {
            self.base.to_string()
        };
        if self.power == 1 {
            write!(f, "({})/{}", self.numerator, base)
        } else {
            write!(f, "({})/{}^{}", self.numerator, base, self.power)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MPoly {
        s.parse().unwrap()
    }

    fn cusp_u() -> RationalExpression {
        RationalExpression::new(p("4"), p("c - 2")).unwrap()
    }

    #[test]
    fn substitution_examples() {
        let r = RationalExpression::substitute(&p("13*u^2 - 7*u + 19"), Var::U, &cusp_u());
        assert_eq!(r.numerator, p("19*c^2 - 104*c + 340"));
        assert_eq!(r.denominator(), p("(c-2)^2"));
        let r = RationalExpression::substitute(&p("3"), Var::U, &cusp_u());
        assert_eq!((r.numerator, r.power), (p("3"), 0));
        let r = RationalExpression::substitute(&p("u"), Var::U, &cusp_u());
        assert_eq!(r.to_string(), "(4)/(c - 2)");
    }

    #[test]
    fn cancels_common_factor() {
        let r = RationalExpression::new(p("c^2 - 4"), p("c - 2")).unwrap();
        assert_eq!(r.power, 0);
        assert_eq!(r.numerator, p("c + 2"));
        let r = RationalExpression::new(p("1"), p("-2*c + 4")).unwrap();
        assert_eq!(r.base, p("c - 2"));
        assert_eq!(r.numerator, p("-1/2"));
        assert!(RationalExpression::new(p("1"), MPoly::zero()).is_err());
    }
}
