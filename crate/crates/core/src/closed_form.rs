//! Multiprecision evaluation of the closed-form torsion in terms of the eigenvalues
//! ξ± of ρ(w), and random sampling of points on the Riley curve.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::numeric::{abs_f64, rel_err};
use crate::algebra::roots::polynomial_roots;
use crate::algebra::{ComplexValue, MPoly, Numeric, Var};
use crate::error::{Error, Result};
use crate::riley::riley_polynomial_closed;
use crate::torsion::torsion_value;
use crate::words::TwistKnot;

/// Below this separation the eigenvalues are treated as repeated.
pub const DEGENERATE_GAP: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct EigenData {
    pub xi_plus: ComplexValue,
    pub xi_minus: ComplexValue,
    pub t_m: ComplexValue,
    pub s: ComplexValue,
    pub u: ComplexValue,
}

impl EigenData {
    /// The same data with the labels ξ₊, ξ₋ exchanged.
    pub fn swapped(&self) -> EigenData {
        EigenData {
            xi_plus: self.xi_minus.clone(),
            xi_minus: self.xi_plus.clone(),
            ..self.clone()
        }
    }

    fn gap(&self) -> f64 {
        abs_f64(&(self.xi_plus.clone() - self.xi_minus.clone()))
    }
}

#[derive(Clone, Debug)]
pub struct ClosedFormAux {
    pub alpha1: ComplexValue,
    pub alpha2: ComplexValue,
    pub beta1: ComplexValue,
    pub beta2: ComplexValue,
    pub c: ComplexValue,
}

fn sq(z: &ComplexValue) -> ComplexValue {
    z * z
}

fn div(a: ComplexValue, b: &ComplexValue) -> ComplexValue {
    a / b.clone()
}

/// `t_m = (ξ₊^m - ξ₋^m)/(ξ₊ - ξ₋)`, or `m ξ^(m-1)` when the eigenvalues coincide.
fn chebyshev_value(xp: &ComplexValue, xm: &ComplexValue, m: i64, num: &Numeric) -> Result<ComplexValue> {
    let d = xp.clone() - xm.clone();
    let m32 = m as i32;
    if abs_f64(&d) < DEGENERATE_GAP {
        let mid = div(xp.clone() + xm.clone(), &num.int(2));
        return Ok(num.int(m) * num.powi(&mid, m32 - 1)?);
    }
    Ok(div(num.powi(xp, m32)? - num.powi(xm, m32)?, &d))
}

pub fn eigen_data(s: &ComplexValue, u: &ComplexValue, m: i64, num: &Numeric) -> Result<EigenData> {
    let s_inv = num.recip(s)?;
    let lin = num.int(2) - s.clone() - s_inv;
    let q = sq(u) + &lin * u;
    let tau = q.clone() + num.int(2);
    let root = num.sqrt(&((q.clone() + num.int(4)) * q));
    let two = num.int(2);
    let xi_plus = div(tau.clone() + root.clone(), &two);
    let xi_minus = div(tau - root, &two);
    let t_m = chebyshev_value(&xi_plus, &xi_minus, m, num)?;
    Ok(EigenData {
        xi_plus,
        xi_minus,
        t_m,
        s: s.clone(),
        u: u.clone(),
    })
}

pub fn closed_form_aux(e: &EigenData, num: &Numeric) -> Result<ClosedFormAux> {
    let (s, u, xp, xm) = (&e.s, &e.u, &e.xi_plus, &e.xi_minus);
    let one = num.one();
    let c = u.clone() + one.clone() - num.recip(s)?;
    if c.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let sm1 = sq(&(s.clone() - one.clone()));
    let tail = &sm1 * u - s * &sq(u);
    let alpha1 = (xm.clone() - one.clone()) * (xp.clone() + s.clone()) + tail.clone();
    let beta1 = (xp.clone() - one.clone()) * (xm.clone() + s.clone()) + tail;
    let su = s * u;
    let alpha2 = (one.clone() - su.clone() - xp.clone()) * (one.clone() + div(xp.clone() - s.clone(), &c));
    let beta2 = (one.clone() - su - xm.clone()) * (one + div(xm.clone() - s.clone(), &c));
    Ok(ClosedFormAux {
        alpha1,
        alpha2,
        beta1,
        beta2,
        c,
    })
}

struct Coefficients {
    c1: ComplexValue,
    c2: ComplexValue,
    c3: ComplexValue,
}

/// `C₁(m)`, `C₂(m)`, `C₃(m)` with `t` standing for `t_|m|`.
fn coefficients(e: &EigenData, a: &ClosedFormAux, m: i64, t: &ComplexValue, num: &Numeric) -> Result<Coefficients> {
    let (s, u, xp, xm) = (&e.s, &e.u, &e.xi_plus, &e.xi_minus);
    let (a1, a2, b1, b2, c) = (&a.alpha1, &a.alpha2, &a.beta1, &a.beta2, &a.c);
    let one = num.one();
    let mm = num.int(m);
    let s_inv = num.recip(s)?;
    let d2 = sq(&(xp.clone() - xm.clone()));
    let d4 = sq(&d2);
    let k = s.clone() + s_inv.clone() + one.clone();
    let over_s = |z: ComplexValue| &z * &s_inv;
    let cp = c * &(one.clone() - xp.clone());
    let cm = c * &(one.clone() - xm.clone());
    let p_a1 = cp.clone() + over_s(a1.clone());
    let p_a2 = cp.clone() + over_s(a2.clone());
    let m_b1 = cm.clone() + over_s(b1.clone());
    let m_b2 = cm.clone() + over_s(b2.clone());
    let a1s = sq(a1);
    let b1s = sq(b1);
    let sum_sq = over_s(a1s.clone() + b1s.clone());
    let d2k = &d2 * &k;
    let u_quad = sq(u) + num.int(4) * u.clone() + num.int(3);
    let inner = &d2 * &u_quad - sq(&p_a1) - sq(&m_b1);
    let two = num.int(2);
    let three_m1 = num.int(3 * m + 1);

    let c1 = div(
        over_s(&a1s * &three_m1) + &mm * &over_s(&b1s * &(sq(xp) + one.clone())) - &mm * &d2k,
        &d2,
    ) - div(
        &mm * &(sq(&p_a1) * (d2k.clone() - sum_sq.clone()) + &two * &(over_s(a1 * b2) * p_a1.clone() * p_a2.clone())),
        &d4,
    ) - div(
        &mm * &(over_s(a1s.clone()) * inner.clone() + &two * &(over_s(a1 * a2) * p_a1.clone() * m_b2.clone())),
        &d4,
    );

    let c2 = div(
        over_s(&b1s * &three_m1) + &mm * &over_s(&a1s * &(sq(xm) + one.clone())) - &mm * &d2k,
        &d2,
    ) - div(
        &mm * &(sq(&m_b1) * (d2k.clone() - sum_sq.clone()) + &two * &(over_s(a2 * b1) * m_b1.clone() * m_b2.clone())),
        &d4,
    ) - div(
        &mm * &(over_s(b1s.clone()) * inner + &two * &(over_s(b1 * b2) * m_b1.clone() * p_a2.clone())),
        &d4,
    );

    let t2 = sq(t);
    let a1b1 = over_s(a1 * b1);
    let a2b2 = over_s(a2 * b2);
    let bracket = over_s(sq(&(&cp * b1 + a1b1.clone()))) - over_s(sq(&(&cp * b2 + a2b2.clone())))
        + over_s(sq(&(&cm * a1 + a1b1)))
        - over_s(sq(&(&cm * a2 + a2b2)));
    let lin = s.clone() + s_inv - two;
    let c3 = div(&mm * &(d2k.clone() - sum_sq.clone()), &d2)
        + div(&t2 * &(num.int(4) * d2k - num.int(5) * sum_sq), &d2)
        - div(&t2 * &bracket, &d4)
        + &mm * &(sq(&lin) * t2);
    Ok(Coefficients { c1, c2, c3 })
}

fn check_on_curve(phi: &MPoly, s: &ComplexValue, u: &ComplexValue, num: &Numeric) -> Result<()> {
    let r = abs_f64(&phi.eval_complex(&[(Var::S, s.clone()), (Var::U, u.clone())], num)?);
    let deg = phi.degree(Var::U).unwrap_or(0);
    let tol = 1e-10 * (1.0 + abs_f64(u)).powi(deg);
    if r >= tol {
        return Err(Error::OffCurve(format!("|phi(s, u)| = {r:e} exceeds {tol:e}")));
    }
    Ok(())
}

/// `𝕋/τ₀` from the eigenvalue data, without checking that the point is on the curve.
pub fn closed_form_from_eigen(e: &EigenData, m: i64, num: &Numeric) -> Result<ComplexValue> {
    if m == 0 {
        return Err(Error::Unknot { sign: 2, n: 0 });
    }
    if e.gap() < DEGENERATE_GAP {
        return Err(Error::DegenerateEigenvalues);
    }
    let lin = e.s.clone() + num.recip(&e.s)? - num.int(2);
    if abs_f64(&lin) < DEGENERATE_GAP {
        return Err(Error::DivisionByZero);
    }
    let k = m.abs();
    let t = chebyshev_value(&e.xi_plus, &e.xi_minus, k, num)?;
    let aux = closed_form_aux(e, num)?;
    let cf = coefficients(e, &aux, m, &t, num)?;
    let e32 = (k - 1) as i32 * if m > 0 { 1 } else { -1 } - if m > 0 { 0 } else { 2 };
    let head = &cf.c1 * &num.powi(&e.xi_plus, e32)? + &cf.c2 * &num.powi(&e.xi_minus, e32)?;
    let bracket = if m > 0 { &head * &t + cf.c3 } else { cf.c3 - &head * &t };
    Ok(div(bracket, &lin))
}

/// `𝕋/τ₀` at an on-curve point `(s, u)`.
pub fn closed_form_torsion(s: &ComplexValue, u: &ComplexValue, m: i64, num: &Numeric) -> Result<ComplexValue> {
    let k = TwistKnot::new(m)?;
    check_on_curve(&riley_polynomial_closed(&k).phi, s, u, num)?;
    closed_form_from_eigen(&eigen_data(s, u, m, num)?, m, num)
}

fn holonomy_from_eigen(e: &EigenData, m: i64, num: &Numeric) -> Result<ComplexValue> {
    let u = &e.u;
    let (xp, xm) = (&e.xi_plus, &e.xi_minus);
    let k = m.abs();
    let k32 = k as i32;
    let t = chebyshev_value(xp, xm, k, num)?;
    let kk = num.int(k);
    let u2 = sq(u);
    let quad = u2.clone() - num.int(4) * u.clone() + num.int(8);
    let sum_k = num.powi(xp, k32)? + num.powi(xm, k32)?;
    let (lead, shifted, tail) = if m > 0 {
        (num.int(4), num.powi(xp, k32 - 1)? + num.powi(xm, k32 - 1)?, num.int(-1))
    } else {
        (num.int(-4), num.powi(xp, k32 + 1)? + num.powi(xm, k32 + 1)?, num.one())
    };
    let bracket = (lead + &kk * &quad) * (&t * &sum_k)
        + (&t * &shifted + tail) * (u2.clone() - num.int(4)) * kk
        + (num.int(-5) * u2.clone() - num.int(8) * u.clone() + num.int(4)) * sq(&t);
    let den = u2 + num.int(4);
    if abs_f64(&den) < DEGENERATE_GAP {
        return Err(Error::DegenerateEigenvalues);
    }
    Ok(div(bracket, &den))
}

/// `𝕋/(-τ₀)` at a root `u` of `φ(1, u)`.
pub fn closed_form_torsion_holonomy(u: &ComplexValue, m: i64, num: &Numeric) -> Result<ComplexValue> {
    let k = TwistKnot::new(m)?;
    let one = num.one();
    check_on_curve(&riley_polynomial_closed(&k).phi, &one, u, num)?;
    holonomy_from_eigen(&eigen_data(&one, u, m, num)?, m, num)
}

/// Same as [`closed_form_torsion_holonomy`] with the eigenvalue labels exchanged.
pub fn closed_form_torsion_holonomy_swapped(u: &ComplexValue, m: i64, num: &Numeric) -> Result<ComplexValue> {
    let e = eigen_data(&num.one(), u, m, num)?.swapped();
    holonomy_from_eigen(&e, m, num)
}

/// Random points `(s, u)` with `φ(s, u) = 0`, `|s| ∈ [0.5, 2]` and `s + 1/s` away from 2.
pub fn random_on_curve_points(
    k: &TwistKnot,
    count: usize,
    seed: u64,
    num: &Numeric,
) -> Result<Vec<(ComplexValue, ComplexValue)>> {
    let phi = riley_polynomial_closed(k).phi;
    let coeffs = phi.coefficients_in(Var::U);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        if attempts > 20 * count + 100 {
            return Err(Error::RootFindingDiverged(attempts));
        }
        let r: f64 = rng.gen_range(0.5..2.0);
        let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let s = num.c(r * theta.cos(), r * theta.sin());
        let lin = s.clone() + num.recip(&s)? - num.int(2);
        if abs_f64(&lin) < 0.05 {
            continue;
        }
        let a = coeffs
            .iter()
            .map(|c| c.eval_complex(&[(Var::S, s.clone())], num))
            .collect::<Result<Vec<_>>>()?;
        let roots = polynomial_roots(&a, num, rng.gen())?;
        if roots.is_empty() {
            continue;
        }
        let u = roots[rng.gen_range(0..roots.len())].clone();
        let e = eigen_data(&s, &u, k.m, num)?;
        let c = u.clone() + num.one() - num.recip(&s)?;
        if e.gap() < 1e-4 || abs_f64(&c) < 1e-4 {
            continue;
        }
        out.push((s, u));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrosscheckReport {
    pub knot: String,
    pub m: i64,
    pub points: usize,
    pub seed: u64,
    pub precision_bits: usize,
    #[serde(with = "crate::report::f64_text")]
    pub max_relative_error: f64,
    #[serde(with = "crate::report::f64_text")]
    pub max_swap_error: f64,
}

/// Compare the closed form with the symbolic torsion at random on-curve points.
pub fn crosscheck(k: &TwistKnot, points: usize, seed: u64, num: &Numeric) -> Result<CrosscheckReport> {
    let symbolic = torsion_value(k)?.value;
    let mut max_rel: f64 = 0.0;
    let mut max_swap: f64 = 0.0;
    for (s, u) in random_on_curve_points(k, points, seed, num)? {
        let e = eigen_data(&s, &u, k.m, num)?;
        let closed = closed_form_from_eigen(&e, k.m, num)?;
        let swapped = closed_form_from_eigen(&e.swapped(), k.m, num)?;
        let exact = symbolic.eval_complex(&[(Var::S, s), (Var::U, u)], num)?;
        max_rel = max_rel.max(rel_err(&closed, &exact));
        max_swap = max_swap.max(rel_err(&swapped, &closed));
    }
    Ok(CrosscheckReport {
        knot: k.name(),
        m: k.m,
        points,
        seed,
        precision_bits: num.bits(),
        max_relative_error: max_rel,
        max_swap_error: max_swap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::numeric::to_c64;

    #[test]
    fn eigen_identities() {
        let num = Numeric::default();
        let (s, u) = (num.c(1.3, 0.4), num.c(-0.2, 0.9));
        let e = eigen_data(&s, &u, 3, &num).unwrap();
        let prod = &e.xi_plus * &e.xi_minus;
        assert!(abs_f64(&(prod - num.one())) < 1e-30);
        let tau = MPoly::from(2) + "u^2 + (2 - s - s^-1)*u".parse::<MPoly>().unwrap();
        let tau = tau.eval_complex(&[(Var::S, s), (Var::U, u)], &num).unwrap();
        assert!(rel_err(&(e.xi_plus.clone() + e.xi_minus.clone()), &tau) < 1e-30);
    }

    #[test]
    fn degenerate_branch() {
        let num = Numeric::default();
        let e = eigen_data(&num.one(), &num.c(0.0, 2.0), 5, &num).unwrap();
        // ξ± = -1 when u^2 + 4 = 0
        assert!(rel_err(&e.t_m, &num.int(5)) < 1e-15);
    }

    #[test]
    fn trefoil_and_figure_eight() {
        let num = Numeric::default();
        for (m, seed) in [(1, 3), (-1, 4)] {
            let k = TwistKnot::new(m).unwrap();
            for (s, u) in random_on_curve_points(&k, 5, seed, &num).unwrap() {
                let v = closed_form_torsion(&s, &u, m, &num).unwrap();
                let expect = if m == 1 {
                    num.int(-3)
                } else {
                    num.int(-2) * (s.clone() + num.recip(&s).unwrap()) + num.one()
                };
                assert!(rel_err(&v, &expect) < 1e-25, "m = {m}: {:?}", to_c64(&v));
            }
        }
    }

    #[test]
    fn off_curve_rejected() {
        let num = Numeric::default();
        let r = closed_form_torsion(&num.c(1.5, 0.0), &num.c(0.3, 0.0), 2, &num);
        assert!(matches!(r, Err(Error::OffCurve(_))));
    }
}
