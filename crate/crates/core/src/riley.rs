//! Riley's parametrization of the non-abelian representations of a twist knot group
//! and the Riley polynomial, computed along two independent routes.

use serde::{Deserialize, Serialize};

use crate::algebra::{ExactScalar, MPoly, PolyMatrix, Var};
use crate::error::Result;
use crate::words::TwistKnot;

fn s() -> MPoly {
    MPoly::var(Var::S)
}

fn u() -> MPoly {
    MPoly::var(Var::U)
}

fn s_inv() -> MPoly {
    MPoly::var_pow(Var::S, -1)
}

/// Representatives of ρ(x), ρ(y) up to the scalar `√s`.
///
/// The genuine SL(2,C) matrices are these divided by `√s`; anything invariant
/// under rescaling the generators (commutators, the adjoint action) can be
/// computed from them without square roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RileyRep {
    pub rho_x: PolyMatrix,
    pub rho_y: PolyMatrix,
}

impl RileyRep {
    pub fn new() -> Self {
        let rho_x = PolyMatrix::from_rows(vec![vec![s(), MPoly::one()], vec![MPoly::zero(), MPoly::one()]]).unwrap();
        let rho_y = PolyMatrix::from_rows(vec![vec![s(), MPoly::zero()], vec![-(&s() * &u()), MPoly::one()]]).unwrap();
        RileyRep { rho_x, rho_y }
    }

    /// `ρ(y) ρ(x)^-1 ρ(y)^-1 ρ(x)`; both generators have determinant `s`, so the
    /// adjugates carry a factor `s^-2` that is divided out.
    pub fn commutator(&self) -> PolyMatrix {
        let prod = PolyMatrix::product(&[&self.rho_y, &self.rho_x.adjugate(), &self.rho_y.adjugate(), &self.rho_x])
            .expect("2x2");
        prod.map(|e| e.shift(Var::S, -2))
    }
}

impl Default for RileyRep {
    fn default() -> Self {
        Self::new()
    }
}

/// The commutator matrix `W = ρ([y, x^-1])` with rows
/// `(1 - su, 1/s - u - 1)` and `(-u + su(u+1), -u/s + (u+1)^2)`.
pub fn riley_matrix_w() -> PolyMatrix {
    let one = MPoly::one();
    let up1 = &u() + &one;
    PolyMatrix::from_rows(vec![
        vec![&one - &(&s() * &u()), &(&s_inv() - &u()) - &one],
        vec![&(&(&s() * &u()) * &up1) - &u(), &(&up1 * &up1) - &(&u() * &s_inv())],
    ])
    .unwrap()
}

/// `τ = tr W = u^2 + (2 - s - 1/s) u + 2`.
pub fn trace_w() -> MPoly {
    let two = MPoly::from(2);
    let c = &(&two - &s()) - &s_inv();
    &(&(&u() * &u()) + &(&c * &u())) + &two
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RileyPolynomial {
    pub knot: TwistKnot,
    pub phi: MPoly,
}

impl RileyPolynomial {
    pub fn degree_u(&self) -> u32 {
        self.phi.degree(Var::U).unwrap_or(0) as u32
    }

    /// Coefficient of the top power of `u`: `-1` for m > 0 and `+1` for m < 0.
    pub fn leading_sign(&self) -> i64 {
        if self.knot.m > 0 {
            -1
        } else {
            1
        }
    }

    /// Remainder of `p` modulo φ as a polynomial in `u`.
    ///
    /// φ has a unit leading coefficient in `u`, so the remainder is unique and
    /// has u-degree below `deg_u φ`; other variables ride along as coefficients.
    pub fn reduce(&self, p: &MPoly) -> MPoly {
        reduce_by_unit_leading(p, &self.phi)
    }

    /// φ(1, u).
    pub fn at_holonomy(&self) -> RileyPolynomial {
        RileyPolynomial {
            knot: self.knot.clone(),
            phi: self.phi.eval_var(Var::S, &ExactScalar::one()).expect("s = 1 is a unit"),
        }
    }
}

/// Remainder of `p` by `phi` in `u`, where `phi` has leading coefficient ±1 in `u`.
pub fn reduce_by_unit_leading(p: &MPoly, phi: &MPoly) -> MPoly {
    let d = phi.degree(Var::U).unwrap_or(0) as usize;
    let deg = match p.degree(Var::U) {
        Some(k) if k as usize >= d => k as usize,
        _ => return p.clone(),
    };
    let pc = phi.coefficients_in(Var::U);
    let lead = pc[d].constant_value().expect("unit leading coefficient");
    assert!(lead.abs().is_one(), "leading coefficient must be a unit");
    let negate = lead.is_negative();
    let mut coeffs = p.coefficients_in(Var::U);
    for k in (d..=deg).rev() {
        let c = std::mem::take(&mut coeffs[k]);
        if c.is_zero() {
            continue;
        }
        let q = if negate { -c } else { c };
        for (j, pj) in pc.iter().enumerate().take(d) {
            if !pj.is_zero() {
                let idx = k - d + j;
                coeffs[idx] = &coeffs[idx] - &(&q * pj);
            }
        }
    }
    coeffs.truncate(d.max(1));
    MPoly::from_coefficients(Var::U, &coeffs)
}

/// φ = (W^m)_{11} + (1 - s)(W^m)_{12}.
pub fn riley_polynomial_matrix(k: &TwistKnot) -> Result<RileyPolynomial> {
    let wm = riley_matrix_w().pow(k.m)?;
    let one_minus_s = &MPoly::one() - &s();
    let phi = wm.get(0, 0) + &(&one_minus_s * wm.get(0, 1));
    Ok(RileyPolynomial { knot: k.clone(), phi })
}

/// `t_m` from `t_{m+1} = τ t_m - t_{m-1}`, `t_0 = 0`, `t_1 = 1`, `t_{-m} = -t_m`.
pub fn chebyshev_t(m: i64) -> MPoly {
    let tau = trace_w();
    let (mut prev, mut cur) = (MPoly::zero(), MPoly::one());
    if m == 0 {
        return prev;
    }
    for _ in 1..m.abs() {
        let next = &(&tau * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    if m < 0 {
        -cur
    } else {
        cur
    }
}

/// φ = (s + 1/s - 1 - u) t_m - t_{m-1}.
pub fn riley_polynomial_closed(k: &TwistKnot) -> RileyPolynomial {
    let lin = &(&(&s() + &s_inv()) - &MPoly::one()) - &u();
    let phi = &(&lin * &chebyshev_t(k.m)) - &chebyshev_t(k.m - 1);
    RileyPolynomial { knot: k.clone(), phi }
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
    fn commutator_matrix() {
        let w = riley_matrix_w();
        assert_eq!(w.det(), MPoly::one());
        assert_eq!(w.trace(), p("u^2 + (2 - s - s^-1)*u + 2"));
        assert_eq!(w, RileyRep::new().commutator());
        let at1 = w.map(|e| e.eval_var(Var::S, &ExactScalar::one()).unwrap());
        assert_eq!(
            at1,
            PolyMatrix::parse_rows(&[&["1 - u", "-u"], &["u^2", "u^2 + u + 1"]]).unwrap()
        );
    }

    #[test]
    fn worked_riley_polynomials() {
        assert_eq!(riley_polynomial_matrix(&knot(1)).unwrap().phi, p("-1 + s + s^-1 - u"));
        assert_eq!(
            riley_polynomial_matrix(&knot(-1)).unwrap().phi,
            p("(3 - s - s^-1)*(u + 1) + u^2")
        );
        let z = "(s + s^-1)";
        let m2 = format!("-3 + 2*{z} + (-4 + 3*{z} - {z}^2)*u + (-3 + 2*{z})*u^2 - u^3");
        assert_eq!(riley_polynomial_matrix(&knot(2)).unwrap().phi, p(&m2));
    }

    #[test]
    fn chebyshev_values() {
        assert!(chebyshev_t(0).is_zero());
        assert_eq!(chebyshev_t(1), MPoly::one());
        assert_eq!(chebyshev_t(2), p("u^2 + (2 - s - s^-1)*u + 2"));
        assert_eq!(chebyshev_t(-3), -chebyshev_t(3));
    }

    #[test]
    fn closed_matches_matrix() {
        for m in [-4, -3, -2, -1, 1, 2, 3, 4] {
            let k = knot(m);
            assert_eq!(
                riley_polynomial_closed(&k).phi,
                riley_polynomial_matrix(&k).unwrap().phi,
                "m = {m}"
            );
        }
    }

    #[test]
    fn reduction() {
        let r = riley_polynomial_closed(&knot(-1));
        // u^2 = -(3 - s - 1/s)(u + 1) on the curve
        assert_eq!(r.reduce(&p("u^2")), p("-(3 - s - s^-1)*(u + 1)"));
        assert_eq!(r.reduce(&r.phi), MPoly::zero());
        let q = p("t*u^5 + s*u^3 - 2");
        let red = r.reduce(&q);
        assert!(red.degree(Var::U).unwrap() < 2);
        assert_eq!(r.reduce(&(&q - &red)), MPoly::zero());
    }
}
