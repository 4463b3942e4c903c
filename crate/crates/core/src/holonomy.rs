//! Parabolic representations (s = 1): roots of φ(1, u), cusp shapes, the
//! peripheral identities, and the growth of the torsion along the family.

use serde::{Deserialize, Serialize};

use crate::algebra::numeric::{abs_f64, conj, im, rel_err, to_c64};
use crate::algebra::roots::{numeric_coefficients, polynomial_roots, relative_residual};
use crate::algebra::{ComplexValue, Numeric, Var};
use crate::closed_form::closed_form_torsion_holonomy;
use crate::error::{Error, Result};
use crate::riley::riley_polynomial_closed;
use crate::words::{commutator_w, longitude_word, Gen, GroupWord, TwistKnot};

#[derive(Clone, Debug)]
pub struct ParabolicRoot {
    pub u: ComplexValue,
    /// `|φ(1, u)|`.
    pub residual: f64,
    /// `|φ(1, u)| / Σ |a_k| |u|^k`.
    pub relative_residual: f64,
    pub is_real: bool,
    pub conjugate_partner_index: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct CuspShapeResult {
    pub u: ComplexValue,
    pub cusp_shape: ComplexValue,
    pub geometric_candidate: bool,
}

fn pair_tolerance(z: &ComplexValue) -> f64 {
    1e-8 * (1.0 + abs_f64(z))
}

/// All roots of φ(1, u), sorted by real then imaginary part, with conjugate pairs matched.
pub fn parabolic_roots(k: &TwistKnot, num: &Numeric, seed: u64) -> Result<Vec<ParabolicRoot>> {
    let phi = riley_polynomial_closed(k).at_holonomy().phi;
    let a = numeric_coefficients(&phi, Var::U, num)?;
    let mut roots = polynomial_roots(&a, num, seed)?;
    for z in roots.iter_mut() {
        if abs_f64(&num.complex(im(z), num.real_int(0))) < pair_tolerance(z) {
            *z = num.complex(crate::algebra::numeric::re(z), num.real_int(0));
        }
    }
    roots.sort_by(|p, q| {
        let (p, q) = (to_c64(p), to_c64(q));
        p.re.partial_cmp(&q.re).unwrap().then(p.im.partial_cmp(&q.im).unwrap())
    });
    let n = roots.len();
    let mut partner = vec![None; n];
    for i in 0..n {
        if partner[i].is_some() || im(&roots[i]) == num.real_int(0) {
            continue;
        }
        let target = conj(&roots[i]);
        let best = (0..n).filter(|&j| j != i && partner[j].is_none()).min_by(|&x, &y| {
            let dx = abs_f64(&(roots[x].clone() - target.clone()));
            let dy = abs_f64(&(roots[y].clone() - target.clone()));
            dx.partial_cmp(&dy).unwrap()
        });
        if let Some(j) = best {
            if abs_f64(&(roots[j].clone() - target.clone())) < pair_tolerance(&target) {
                partner[i] = Some(j);
                partner[j] = Some(i);
            }
        }
    }
    Ok(roots
        .into_iter()
        .enumerate()
        .map(|(i, u)| {
            let residual = abs_f64(&phi.eval_complex(&[(Var::U, u.clone())], num).expect("univariate"));
            ParabolicRoot {
                relative_residual: relative_residual(&a, &u, num),
                residual,
                is_real: partner[i].is_none(),
                conjugate_partner_index: partner[i],
                u,
            }
        })
        .collect())
}

/// `𝔠 = (2u + 4)/u`.
pub fn cusp_shape_of(u: &ComplexValue, num: &Numeric) -> Result<ComplexValue> {
    num.div(&(num.int(2) * u.clone() + num.int(4)), u)
}

/// `u = 4/(𝔠 - 2)`.
pub fn u_from_cusp_shape(c: &ComplexValue, num: &Numeric) -> Result<ComplexValue> {
    num.div(&num.int(4), &(c.clone() - num.int(2)))
}

fn whitehead_distance(c: &ComplexValue, num: &Numeric) -> f64 {
    abs_f64(&(c.clone() - num.c(2.0, 2.0)))
}

/// Cusp shapes at every non-real root, pairs ordered by distance to `2 + 2i`, the
/// member with `Im 𝔠 > 0` first. The closest pair is flagged as the geometric candidate.
pub fn cusp_shape(k: &TwistKnot, num: &Numeric, seed: u64) -> Result<Vec<CuspShapeResult>> {
    if k.m == 1 {
        return Err(Error::NotHyperbolic);
    }
    let roots = parabolic_roots(k, num, seed)?;
    let mut pairs: Vec<(f64, CuspShapeResult, CuspShapeResult)> = Vec::new();
    for (i, r) in roots.iter().enumerate() {
        let j = match r.conjugate_partner_index {
            Some(j) if j > i => j,
            _ => continue,
        };
        let mut a = CuspShapeResult {
            u: r.u.clone(),
            cusp_shape: cusp_shape_of(&r.u, num)?,
            geometric_candidate: false,
        };
        let mut b = CuspShapeResult {
            u: roots[j].u.clone(),
            cusp_shape: cusp_shape_of(&roots[j].u, num)?,
            geometric_candidate: false,
        };
        if to_c64(&a.cusp_shape).im < 0.0 {
            std::mem::swap(&mut a, &mut b);
        }
        pairs.push((whitehead_distance(&a.cusp_shape, num), a, b));
    }
    pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    let mut out = Vec::with_capacity(2 * pairs.len());
    for (idx, (_, mut a, mut b)) in pairs.into_iter().enumerate() {
        a.geometric_candidate = idx == 0;
        b.geometric_candidate = idx == 0;
        out.push(a);
        out.push(b);
    }
    Ok(out)
}

/// A 2×2 complex matrix, row-major.
pub type Mat2 = [ComplexValue; 4];

fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    [
        &a[0] * &b[0] + &a[1] * &b[2],
        &a[0] * &b[1] + &a[1] * &b[3],
        &a[2] * &b[0] + &a[3] * &b[2],
        &a[2] * &b[1] + &a[3] * &b[3],
    ]
}

/// ρ(word) with `x ↦ [[1, 1], [0, 1]]`, `y ↦ [[1, 0], [-u, 1]]`.
pub fn parabolic_image(word: &GroupWord, u: &ComplexValue, num: &Numeric) -> Mat2 {
    let (one, zero) = (num.one(), num.zero());
    let neg_u = zero.clone() - u.clone();
    let x = [one.clone(), one.clone(), zero.clone(), one.clone()];
    let xi = [one.clone(), num.int(-1), zero.clone(), one.clone()];
    let y = [one.clone(), zero.clone(), neg_u, one.clone()];
    let yi = [one.clone(), zero.clone(), u.clone(), one.clone()];
    let mut acc = [one.clone(), zero.clone(), zero, one];
    for l in word.letters() {
        let g = match (l.gen, l.inverse) {
            (Gen::X, false) => &x,
            (Gen::X, true) => &xi,
            (Gen::Y, false) => &y,
            (Gen::Y, true) => &yi,
        };
        acc = mat_mul(&acc, g);
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    #[serde(with = "crate::report::f64_text")]
    pub tolerance: f64,
    /// `|w₁,₁|`
    #[serde(with = "crate::report::f64_text")]
    pub w11: f64,
    /// `|u w₁,₂ + w₂,₁|`
    #[serde(with = "crate::report::f64_text")]
    pub w21_relation: f64,
    /// `|u w₁,₂² - 1|`
    #[serde(with = "crate::report::f64_text")]
    pub u_w12_squared: f64,
    /// `|w₂,₂ + (u + 2) w₁,₂|`
    #[serde(with = "crate::report::f64_text")]
    pub w22_relation: f64,
    /// `|tr ρ(λ) + 2|`
    #[serde(with = "crate::report::f64_text")]
    pub trace_longitude: f64,
    /// `|ρ(λ)₂,₁|`
    #[serde(with = "crate::report::f64_text")]
    pub longitude_lower_left: f64,
    /// `|u - 4/(𝔠 - 2)|` for `𝔠 = (2u + 4)/u`
    #[serde(with = "crate::report::f64_text")]
    pub cusp_round_trip: f64,
    pub passed: bool,
}

/// The peripheral identities at a parabolic root, with ρ(Ω) = ρ(w)^m.
pub fn parabolic_identity_checks(k: &TwistKnot, root: &ParabolicRoot, num: &Numeric) -> Result<IdentityReport> {
    let u = &root.u;
    let w = parabolic_image(&commutator_w().pow(k.m), u, num);
    let (lambda, _) = longitude_word(k);
    let l = parabolic_image(&lambda, u, num);
    let tol = num.tolerance();
    let w11 = abs_f64(&w[0]);
    let w21_relation = abs_f64(&(u * &w[1] + w[2].clone()));
    let u_w12_squared = abs_f64(&(u * &(&w[1] * &w[1]) - num.one()));
    let w22_relation = abs_f64(&(w[3].clone() + &(u.clone() + num.int(2)) * &w[1]));
    let trace_longitude = abs_f64(&(l[0].clone() + l[3].clone() + num.int(2)));
    let longitude_lower_left = abs_f64(&l[2]);
    let c = cusp_shape_of(u, num)?;
    let cusp_round_trip = abs_f64(&(u_from_cusp_shape(&c, num)? - u.clone()));
    let all = [
        w11,
        w21_relation,
        u_w12_squared,
        w22_relation,
        trace_longitude,
        longitude_lower_left,
        cusp_round_trip,
    ];
    Ok(IdentityReport {
        tolerance: tol,
        w11,
        w21_relation,
        u_w12_squared,
        w22_relation,
        trace_longitude,
        longitude_lower_left,
        cusp_round_trip,
        passed: all.iter().all(|&v| v < tol),
    })
}

/// `𝔠 = n - 2 w₁,₂ w₂,₂` from ρ(Ω) at `s = 1`.
pub fn cusp_shape_two_bridge(omega: &GroupWord, n: i64, u: &ComplexValue, num: &Numeric) -> Result<ComplexValue> {
    let w = parabolic_image(omega, u, num);
    let w11 = abs_f64(&w[0]);
    if w11 > num.tolerance() * (1.0 + abs_f64(&w[1]).max(abs_f64(&w[3]))) {
        return Err(Error::NotParabolic(format!("|w11| = {w11:e}")));
    }
    Ok(num.int(n) - num.int(2) * (&w[1] * &w[3]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilySign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl FamilySign {
    pub fn apply(self, m: i64) -> i64 {
        match self {
            FamilySign::Plus => m,
            FamilySign::Minus => -m,
        }
    }

    /// Crossing number of J(2, ±2m), m ≥ 1.
    pub fn crossing_number(self, m: i64) -> i64 {
        match self {
            FamilySign::Plus => 2 * m + 1,
            FamilySign::Minus => 2 * m + 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthSample {
    pub m: i64,
    pub crossing_number: i64,
    #[serde(with = "crate::report::f64_text")]
    pub abs_torsion: f64,
    #[serde(with = "crate::report::f64_pair_text")]
    pub cusp_shape: (f64, f64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthFit {
    #[serde(with = "crate::report::f64_text")]
    pub slope: f64,
    #[serde(with = "crate::report::f64_text")]
    pub intercept: f64,
    /// Root mean square of the fit residuals in log space.
    #[serde(with = "crate::report::f64_text")]
    pub residual: f64,
    pub samples: Vec<GrowthSample>,
}

/// Least squares line through `(log x, log y)`.
pub fn log_log_fit(points: &[(f64, f64)]) -> Result<(f64, f64, f64)> {
    if points.len() < 2 {
        return Err(Error::InsufficientData(points.len()));
    }
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InsufficientData(points.len()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    Ok((slope, intercept, (rss / n).sqrt()))
}

/// Torsion at the geometric root of J(2, ±2m) for `m` in `from..=to`, fitted against crossing number.
pub fn torsion_growth_fit(from: i64, to: i64, sign: FamilySign, num: &Numeric, seed: u64) -> Result<GrowthFit> {
    if from < 2 || to > 200 {
        return Err(Error::Parse(format!(
            "range must lie within [2, 200], got [{from}, {to}]"
        )));
    }
    let mut samples = Vec::new();
    for m in from..=to {
        let k = TwistKnot::new(sign.apply(m))?;
        // precision grows with the degree so the larger polynomials stay well resolved
        let local = Numeric::new(num.bits().max(128 + 4 * m as usize))?;
        let shapes = cusp_shape(&k, &local, seed)?;
        let geo = shapes.first().ok_or(Error::NotHyperbolic)?;
        let t = closed_form_torsion_holonomy(&geo.u, k.m, &local)?;
        let c = to_c64(&geo.cusp_shape);
        samples.push(GrowthSample {
            m,
            crossing_number: sign.crossing_number(m),
            abs_torsion: abs_f64(&t),
            cusp_shape: (c.re, c.im),
        });
    }
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .map(|s| (s.crossing_number as f64, s.abs_torsion))
        .collect();
    let (slope, intercept, residual) = log_log_fit(&pts)?;
    Ok(GrowthFit {
        slope,
        intercept,
        residual,
        samples,
    })
}

/// `|a - b|` relative to `max(1, |b|)`, re-exported for callers comparing root data.
pub fn relative_difference(a: &ComplexValue, b: &ComplexValue) -> f64 {
    rel_err(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn knot(m: i64) -> TwistKnot {
        TwistKnot::new(m).unwrap()
    }

    #[test]
    fn figure_eight_roots_and_shape() {
        let num = Numeric::default();
        let roots = parabolic_roots(&knot(-1), &num, 1).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].conjugate_partner_index, Some(1));
        let shapes = cusp_shape(&knot(-1), &num, 1).unwrap();
        let c = to_c64(&shapes[0].cusp_shape);
        assert!(c.re.abs() < 1e-30 && (c.im - 2.0 * 3f64.sqrt()).abs() < 1e-15);
        assert!(shapes[0].geometric_candidate && shapes[1].geometric_candidate);
    }

    #[test]
    fn trefoil_root() {
        let num = Numeric::default();
        let roots = parabolic_roots(&knot(1), &num, 1).unwrap();
        assert_eq!(roots.len(), 1);
        assert!(roots[0].is_real);
        assert!(rel_err(&roots[0].u, &num.one()) < 1e-35);
        assert!(matches!(cusp_shape(&knot(1), &num, 1), Err(Error::NotHyperbolic)));
    }

    #[test]
    fn five_two_has_one_real_root() {
        let num = Numeric::default();
        let roots = parabolic_roots(&knot(2), &num, 5).unwrap();
        assert_eq!(roots.len(), 3);
        assert_eq!(roots.iter().filter(|r| r.is_real).count(), 1);
    }

    #[test]
    fn identities_and_two_bridge_shape() {
        let num = Numeric::default();
        for m in [-3, -1, 2, 3] {
            let k = knot(m);
            for r in parabolic_roots(&k, &num, 2).unwrap().iter().filter(|r| !r.is_real) {
                let rep = parabolic_identity_checks(&k, r, &num).unwrap();
                assert!(rep.passed, "m = {m}: {rep:?}");
                let c = cusp_shape_two_bridge(&commutator_w().pow(m), 0, &r.u, &num).unwrap();
                assert!(rel_err(&c, &cusp_shape_of(&r.u, &num).unwrap()) < 1e-30);
            }
        }
    }

    #[test]
    fn not_parabolic_off_root() {
        let num = Numeric::default();
        let r = cusp_shape_two_bridge(&commutator_w().pow(2), 0, &num.c(0.3, 0.1), &num);
        assert!(matches!(r, Err(Error::NotParabolic(_))));
    }

    #[test]
    fn fit_shifts_with_scaling() {
        let pts = [(4.0, 10.0), (6.0, 30.0), (8.0, 85.0), (10.0, 160.0)];
        let (s1, i1, _) = log_log_fit(&pts).unwrap();
        let doubled: Vec<_> = pts.iter().map(|&(x, y)| (x, 2.0 * y)).collect();
        let (s2, i2, _) = log_log_fit(&doubled).unwrap();
        assert!((s1 - s2).abs() < 1e-12);
        assert!((i2 - i1 - 2f64.ln()).abs() < 1e-12);
        assert!(matches!(log_log_fit(&pts[..1]), Err(Error::InsufficientData(1))));
    }
}
