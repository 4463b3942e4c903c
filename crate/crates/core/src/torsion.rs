//! The adjoint torsion of J(2, 2m): Fox matrix, torsion polynomial in `t`,
//! and the non-abelian torsion as a Riley-reduced polynomial in `s`, `u`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{ExactScalar, MPoly, PolyMatrix, Var};
use crate::error::{Error, Result};
use crate::riley::{riley_polynomial_closed, RileyPolynomial};
use crate::words::{fox_derivative, presentation_word, Gen, LetterImages, TwistKnot};

fn var(v: Var) -> MPoly {
    MPoly::var(v)
}

/// Adjoint action of x, y and w = [y, x^-1] on sl(2) in the basis {E, H, F}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjointTriple {
    pub x: PolyMatrix,
    pub y: PolyMatrix,
    pub w: PolyMatrix,
}

impl AdjointTriple {
    pub fn x_inv(&self) -> PolyMatrix {
        self.x.adjugate()
    }

    pub fn y_inv(&self) -> PolyMatrix {
        self.y.adjugate()
    }

    pub fn w_inv(&self) -> PolyMatrix {
        self.w.adjugate()
    }

    /// Specialize `s = 1`.
    pub fn at_holonomy(&self) -> AdjointTriple {
        let one = ExactScalar::one();
        let f = |m: &PolyMatrix| m.map(|e| e.eval_var(Var::S, &one).unwrap());
        AdjointTriple {
            x: f(&self.x),
            y: f(&self.y),
            w: f(&self.w),
        }
    }
}

pub fn adjoint_matrices() -> AdjointTriple {
    let x = PolyMatrix::parse_rows(&[&["s", "-2", "-s^-1"], &["0", "1", "s^-1"], &["0", "0", "s^-1"]]).unwrap();
    let y = PolyMatrix::parse_rows(&[&["s", "0", "0"], &["s*u", "1", "0"], &["-s*u^2", "-2*u", "s^-1"]]).unwrap();
    let w = PolyMatrix::product(&[&y, &x.adjugate(), &y.adjugate(), &x]).unwrap();
    AdjointTriple { x, y, w }
}

/// `Z = t^t_power * z_scaled`, with `S` the geometric sum `S_|m|` it was built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoxMatrixZ {
    pub knot: TwistKnot,
    pub z_scaled: PolyMatrix,
    pub t_power: i32,
    pub s_sum: PolyMatrix,
}

impl FoxMatrixZ {
    /// `det(t I + z_scaled) = t^3 det(1 + Z)`.
    pub fn det_one_plus_z_scaled(&self) -> MPoly {
        let m = self.z_scaled.add(&PolyMatrix::scalar(3, var(Var::T))).unwrap();
        m.det()
    }
}

type Reducer<'a> = &'a dyn Fn(&MPoly) -> MPoly;

fn mul_red(a: &PolyMatrix, b: &PolyMatrix, red: Reducer) -> PolyMatrix {
    a.mul(b).expect("3x3").map(red)
}

fn det_red(m: &PolyMatrix, red: Reducer) -> MPoly {
    let e = |i, j| m.get(i, j);
    let minor = |r0, r1, c0, c1| red(&(&(e(r0, c0) * e(r1, c1)) - &(e(r0, c1) * e(r1, c0))));
    let c0 = minor(1, 2, 1, 2);
    let c1 = minor(1, 2, 0, 2);
    let c2 = minor(1, 2, 0, 1);
    red(&(&(&(e(0, 0) * &c0) - &(e(0, 1) * &c1)) + &(e(0, 2) * &c2)))
}

fn trace_prod(a: &PolyMatrix, b: &PolyMatrix, red: Reducer) -> MPoly {
    let mut acc = MPoly::zero();
    for i in 0..3 {
        for j in 0..3 {
            acc = &acc + &(a.get(i, j) * b.get(j, i));
        }
    }
    red(&acc)
}

/// `S_k(A) = 1 + A + ... + A^(k-1)` via `S <- 1 + S A`.
fn geometric_sum(a: &PolyMatrix, k: i64, red: Reducer) -> PolyMatrix {
    let id = PolyMatrix::identity(a.dim());
    let mut s = id.clone();
    for _ in 1..k {
        s = id.add(&mul_red(&s, a, red)).unwrap();
    }
    s
}

fn build_z(k: &TwistKnot, adj: &AdjointTriple, red: Reducer) -> FoxMatrixZ {
    let t = var(Var::T);
    let id = PolyMatrix::identity(3);
    let ix = adj.x_inv();
    let iy = adj.y_inv();
    let left = id.sub(&adj.x.scale(&t)).unwrap();
    let (s_sum, right) = if k.m > 0 {
        // t (t^-1 X^-1 - X^-1 Y)
        let s_sum = geometric_sum(&adj.w_inv(), k.m, red);
        let right = ix.sub(&ix.mul(&adj.y).unwrap().scale(&t)).unwrap();
        (s_sum, right)
    } else {
        // t (Y X^-1 - t^-1 Y X^-1 Y^-1)
        let s_sum = geometric_sum(&adj.w, -k.m, red);
        let yix = adj.y.mul(&ix).unwrap();
        let right = yix.scale(&t).sub(&yix.mul(&iy).unwrap()).unwrap();
        (s_sum, right)
    };
    let z = mul_red(&mul_red(&left, &s_sum, red), &right, red);
    FoxMatrixZ {
        knot: k.clone(),
        z_scaled: z,
        t_power: -1,
        s_sum,
    }
}

/// Exact (unreduced) Fox matrix `Z_m`.
pub fn fox_matrix(k: &TwistKnot) -> FoxMatrixZ {
    build_z(k, &adjoint_matrices(), &|p: &MPoly| p.clone())
}

/// Which symbolic factor the stored torsion value has been divided by.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignFactor {
    #[serde(rename = "tau0")]
    Tau0,
    #[serde(rename = "-tau0")]
    MinusTau0,
}

impl fmt::Display for SignFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignFactor::Tau0 => write!(f, "tau0"),
            SignFactor::MinusTau0 => write!(f, "-tau0"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionPolynomial {
    pub knot: TwistKnot,
    /// `det(t I + t Z) = t^3 det(1 + Z)`, coefficients reduced modulo φ.
    pub numerator: MPoly,
    /// `det(t Y - 1) = (t - 1)(t - s)(t - 1/s)`.
    pub denominator: MPoly,
    pub normalization_note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionValue {
    pub knot: TwistKnot,
    /// The torsion divided by `sign_factor`.
    pub value: MPoly,
    pub sign_factor: SignFactor,
    pub at_holonomy: bool,
}

/// `det Φ(y - 1) = det(t Y - 1)`.
pub fn alexander_denominator(adj: &AdjointTriple) -> MPoly {
    adj.y.scale(&var(Var::T)).sub(&PolyMatrix::identity(3)).unwrap().det()
}

fn numerator_reduced(k: &TwistKnot, adj: &AdjointTriple, phi: &RileyPolynomial) -> MPoly {
    let red = |p: &MPoly| phi.reduce(p);
    let z = build_z(k, adj, &red);
    let m = z.z_scaled.add(&PolyMatrix::scalar(3, var(Var::T))).unwrap();
    det_red(&m, &red)
}

pub fn torsion_polynomial(k: &TwistKnot) -> TorsionPolynomial {
    let adj = adjoint_matrices();
    let phi = riley_polynomial_closed(k);
    TorsionPolynomial {
        knot: k.clone(),
        numerator: numerator_reduced(k, &adj, &phi),
        denominator: alexander_denominator(&adj),
        normalization_note: "numerator is t^3 det(1 + Z) with coefficients reduced modulo the Riley \
                             polynomial; the torsion polynomial is defined up to a factor ±t^k"
            .into(),
    }
}

fn s_plus_inv_minus_two() -> MPoly {
    "s + s^-1 - 2".parse().unwrap()
}

fn t_minus_one_pow(k: u32) -> MPoly {
    "t - 1".parse::<MPoly>().unwrap().pow(k)
}

fn limit_at_one(numerator: &MPoly, order: u32) -> Result<MPoly> {
    let q = numerator.exact_div(&t_minus_one_pow(order))?;
    q.eval_var(Var::T, &ExactScalar::one())
}

/// `T / tau0 = lim det(1 + Z)/(t - 1)^2 / (s + 1/s - 2)`, reduced modulo φ.
pub fn torsion_value(k: &TwistKnot) -> Result<TorsionValue> {
    let phi = riley_polynomial_closed(k);
    let num = numerator_reduced(k, &adjoint_matrices(), &phi);
    let lim = phi.reduce(&limit_at_one(&num, 2)?);
    let value = lim.exact_div(&s_plus_inv_minus_two())?;
    Ok(TorsionValue {
        knot: k.clone(),
        value,
        sign_factor: SignFactor::Tau0,
        at_holonomy: false,
    })
}

/// The trace expansion of `det(1 + Z)` through σ₁, σ₂, σ₃.
pub fn torsion_value_trace_formula(k: &TwistKnot) -> Result<TorsionValue> {
    let phi = riley_polynomial_closed(k);
    let red = |p: &MPoly| phi.reduce(p);
    let adj = adjoint_matrices();
    let id = PolyMatrix::identity(3);
    let (x, y, w) = (&adj.x, &adj.y, &adj.w);
    let (ix, iy, iw) = (adj.x_inv(), adj.y_inv(), adj.w_inv());
    let one_ixy = id.add(&ix.mul(y)?)?;
    let c2 = {
        let c = &MPoly::from(2) - &(&var(Var::S) + &MPoly::var_pow(Var::S, -1));
        &c * &c
    };
    let p = if k.m > 0 {
        let s = geometric_sum(&iw, k.m, &red);
        let as_ = s.adjugate().map(red);
        let a = mul_red(&ix, &s, &red);
        let b = mul_red(&one_ixy, &s, &red);
        let tr_a = a.trace();
        let terms = [
            tr_a.clone(),
            trace_prod(x, &as_, &red).scale(&ExactScalar::from(3)),
            trace_prod(&mul_red(&iy, w, &red), &as_, &red),
            -red(&(&tr_a * &b.trace())),
            trace_prod(&a, &b, &red),
            red(&(&c2 * &det_red(&s, &red))),
        ];
        terms.iter().fold(MPoly::zero(), |acc, t| &acc + t)
    } else {
        let s = geometric_sum(w, -k.m, &red);
        let as_ = s.adjugate().map(red);
        let sw = mul_red(&s, w, &red);
        let a = mul_red(&ix, &sw, &red);
        let b = mul_red(&one_ixy, &sw, &red);
        let tr_a = a.trace();
        let terms = [
            -tr_a.clone(),
            trace_prod(&mul_red(x, &iw, &red), &as_, &red).scale(&ExactScalar::from(3)),
            trace_prod(&iy, &as_, &red),
            -red(&(&tr_a * &b.trace())),
            trace_prod(&a, &b, &red),
            -red(&(&c2 * &det_red(&s, &red))),
        ];
        terms.iter().fold(MPoly::zero(), |acc, t| &acc + t)
    };
    let value = red(&p).exact_div(&s_plus_inv_minus_two())?;
    Ok(TorsionValue {
        knot: k.clone(),
        value,
        sign_factor: SignFactor::Tau0,
        at_holonomy: false,
    })
}

/// Torsion at the parabolic representations (s = 1), in the sign convention of
/// the published tables: divided by `-tau0` for m > 0 and by `tau0` for m < 0.
///
/// The trefoil (m = 1) is accepted: it is not hyperbolic, but the value is still
/// the polynomial identity behind the first table row.
pub fn torsion_at_holonomy_symbolic(k: &TwistKnot) -> Result<TorsionValue> {
    let phi = riley_polynomial_closed(k).at_holonomy();
    let adj = adjoint_matrices().at_holonomy();
    let num = numerator_reduced(k, &adj, &phi);
    let lim = phi.reduce(&limit_at_one(&num, 4)?);
    // T = -tau0 * lim
    let (value, sign_factor) = if k.m > 0 {
        (lim, SignFactor::MinusTau0)
    } else {
        (-lim, SignFactor::Tau0)
    };
    Ok(TorsionValue {
        knot: k.clone(),
        value,
        sign_factor,
        at_holonomy: true,
    })
}

/// `det Φ(∂r/∂x)` at rational `(s, u, t)`, built from the Fox derivative of the relator
/// word by word; equals `det(1 + Z)` there.
pub fn fox_determinant_at(k: &TwistKnot, s: &ExactScalar, u: &ExactScalar, t: &ExactScalar) -> Result<ExactScalar> {
    let adj = adjoint_matrices();
    let at = |m: &PolyMatrix| -> Result<PolyMatrix> {
        m.try_map(|e| e.eval_var(Var::S, s)?.eval_var(Var::U, u)?.eval_var(Var::T, t))
    };
    let tp = MPoly::constant(t.clone());
    let tinv = MPoly::constant(t.recip()?);
    let images = LetterImages {
        x: at(&adj.x.scale(&tp))?,
        x_inv: at(&adj.x_inv().scale(&tinv))?,
        y: at(&adj.y.scale(&tp))?,
        y_inv: at(&adj.y_inv().scale(&tinv))?,
    };
    let d = fox_derivative(&presentation_word(k), Gen::X).evaluate(&images)?;
    d.det()
        .constant_value()
        .ok_or_else(|| Error::Parse("non-constant evaluation".into()))
}

/// `det(1 + Z)` at rational `(s, u, t)` from the assembled matrix `Z`.
pub fn z_determinant_at(k: &TwistKnot, s: &ExactScalar, u: &ExactScalar, t: &ExactScalar) -> Result<ExactScalar> {
    let z = fox_matrix(k);
    let n = z.det_one_plus_z_scaled();
    let v = n.eval_var(Var::S, s)?.eval_var(Var::U, u)?.eval_var(Var::T, t)?;
    let c = v.constant_value().expect("all variables assigned");
    Ok(&c / &t.pow(3))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MPoly {
        s.parse().unwrap()
    }

    fn knot(m: i64) -> TwistKnot {
        TwistKnot::new(m).unwrap()
    }

    #[test]
    fn adjoint_basics() {
        let adj = adjoint_matrices();
        assert_eq!(adj.x.det(), MPoly::one());
        assert_eq!(adj.y.det(), MPoly::one());
        assert_eq!(adj.w.det(), MPoly::one());
        assert_eq!(adj.x_inv().trace(), p("s + s^-1 + 1"));
        let tr1 = adj.at_holonomy().w.trace();
        assert_eq!(tr1, p("(u^2 + 2)^2 - 2 + 1"));
    }

    #[test]
    fn geometric_sums() {
        assert_eq!(fox_matrix(&knot(1)).s_sum, PolyMatrix::identity(3));
        let adj = adjoint_matrices();
        assert_eq!(
            fox_matrix(&knot(2)).s_sum,
            PolyMatrix::identity(3).add(&adj.w_inv()).unwrap()
        );
    }

    #[test]
    fn denominator_factorization() {
        let d = alexander_denominator(&adjoint_matrices());
        assert_eq!(d, p("(t - 1)*(t - s)*(t - s^-1)"));
    }

    #[test]
    fn fox_oracle_trefoil() {
        let (s, u, t) = (ExactScalar::from(2), ExactScalar::from(3), ExactScalar::from(5));
        let k = knot(1);
        assert_eq!(
            fox_determinant_at(&k, &s, &u, &t).unwrap(),
            z_determinant_at(&k, &s, &u, &t).unwrap()
        );
    }

    #[test]
    fn numerator_vanishes_at_one() {
        for m in [1, -1] {
            let tp = torsion_polynomial(&knot(m));
            let at1 = tp.numerator.eval_var(Var::T, &ExactScalar::one()).unwrap();
            assert!(at1.is_zero(), "m = {m}");
        }
    }

    #[test]
    fn worked_values() {
        assert_eq!(torsion_value(&knot(1)).unwrap().value, p("-3"));
        assert_eq!(torsion_value(&knot(-1)).unwrap().value, p("-2*(s + s^-1) + 1"));
        let z = "(s + s^-1)";
        let m2 = format!("-10*{z} + 1 + (5*{z}^2 - 7*{z} + 1)*u + (-5*{z} - 3)*u^2");
        assert_eq!(torsion_value(&knot(2)).unwrap().value, p(&m2));
    }

    #[test]
    fn trace_formula_small() {
        for m in [1, 2, -1, -2] {
            let k = knot(m);
            assert_eq!(
                torsion_value_trace_formula(&k).unwrap(),
                torsion_value(&k).unwrap(),
                "m = {m}"
            );
        }
    }

    #[test]
    fn holonomy_rows() {
        assert_eq!(torsion_at_holonomy_symbolic(&knot(1)).unwrap().value, p("3"));
        assert_eq!(
            torsion_at_holonomy_symbolic(&knot(2)).unwrap().value,
            p("13*u^2 - 7*u + 19")
        );
        assert_eq!(
            torsion_at_holonomy_symbolic(&knot(-2)).unwrap().value,
            p("7*u^3 + u^2 + 14*u - 5")
        );
    }
}
