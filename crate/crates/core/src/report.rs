//! Serializable forms of the numeric results. Every number is written as a
//! decimal string so that JSON output keeps full precision.

use serde::{Deserialize, Serialize};

use crate::algebra::numeric::{im, re, real_to_decimal};
use crate::algebra::{ComplexValue, Numeric};
use crate::holonomy::{CuspShapeResult, ParabolicRoot};
use crate::words::TwistKnot;

/// Shortest round-trip text, in exponent form outside `[1e-4, 1e15)`.
pub fn f64_string(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && a.is_finite() && !(1e-4..1e15).contains(&a) {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}

/// `f64` fields as shortest round-trip decimal strings.
pub mod f64_text {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&super::f64_string(*x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<f64, D::Error> {
        String::deserialize(de)?.parse().map_err(serde::de::Error::custom)
    }
}

pub mod f64_pair_text {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &(f64, f64), ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_seq([super::f64_string(x.0), super::f64_string(x.1)])
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<(f64, f64), D::Error> {
        let [a, b] = <[String; 2]>::deserialize(de)?;
        let p = |s: String| s.parse::<f64>().map_err(serde::de::Error::custom);
        Ok((p(a)?, p(b)?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexText {
    pub re: String,
    pub im: String,
}

impl ComplexText {
    pub fn new(z: &ComplexValue, digits: usize) -> Self {
        ComplexText {
            re: real_to_decimal(&re(z), digits),
            im: real_to_decimal(&im(z), digits),
        }
    }

    /// Digits after the point that are meaningful at `num`'s precision.
    pub fn at(z: &ComplexValue, num: &Numeric) -> Self {
        Self::new(z, num.digits().floor() as usize)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.parse().unwrap_or(f64::NAN), self.im.parse().unwrap_or(f64::NAN))
    }
}

impl std::fmt::Display for ComplexText {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.im.strip_prefix('-') {
            Some(rest) => write!(f, "{} - {}i", self.re, rest),
            None => write!(f, "{} + {}i", self.re, self.im),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootReport {
    pub u: ComplexText,
    #[serde(with = "f64_text")]
    pub residual: f64,
    #[serde(with = "f64_text")]
    pub relative_residual: f64,
    pub is_real: bool,
    pub conjugate_partner_index: Option<usize>,
}

impl RootReport {
    pub fn new(r: &ParabolicRoot, num: &Numeric) -> Self {
        RootReport {
            u: ComplexText::at(&r.u, num),
            residual: r.residual,
            relative_residual: r.relative_residual,
            is_real: r.is_real,
            conjugate_partner_index: r.conjugate_partner_index,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CuspShapeReport {
    pub knot: TwistKnot,
    pub u: ComplexText,
    pub cusp_shape: ComplexText,
    pub geometric_candidate: bool,
}

impl CuspShapeReport {
    pub fn new(knot: &TwistKnot, r: &CuspShapeResult, num: &Numeric) -> Self {
        CuspShapeReport {
            knot: knot.clone(),
            u: ComplexText::at(&r.u, num),
            cusp_shape: ComplexText::at(&r.cusp_shape, num),
            geometric_candidate: r.geometric_candidate,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_text() {
        let num = Numeric::default();
        let t = ComplexText::new(&num.c(1.5, -0.25), 4);
        assert_eq!(t.to_string(), "1.5000 - 0.2500i");
        assert_eq!(t.to_f64(), (1.5, -0.25));
    }
}
