//! Simultaneous (Aberth–Ehrlich) root finding for univariate complex polynomials.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::mpoly::{MPoly, Var};
use super::numeric::{abs_f64, to_c64, ComplexValue, Numeric};
use crate::error::{Error, Result};

pub const MAX_ITERATIONS: usize = 500;

/// Coefficients `[a_0, a_1, ..., a_n]` of a polynomial in `v` with rational coefficients.
pub fn numeric_coefficients(p: &MPoly, v: Var, num: &Numeric) -> Result<Vec<ComplexValue>> {
    p.coefficients_in(v)
        .iter()
        .map(|c| {
            c.constant_value()
                .map(|q| num.from_scalar(&q))
                .ok_or(Error::MissingVariable(v.name()))
        })
        .collect()
}

fn horner_c64(a: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in a.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn horner(a: &[ComplexValue], z: &ComplexValue, num: &Numeric) -> (ComplexValue, ComplexValue) {
    let mut p = num.zero();
    let mut dp = num.zero();
    for c in a.iter().rev() {
        dp = &(&dp * z) + &p;
        p = &(&p * z) + c;
    }
    (p, dp)
}

/// `|p(z)| / Σ |a_k| |z|^k`, the backward-error residual of `z` as a root.
pub fn relative_residual(a: &[ComplexValue], z: &ComplexValue, num: &Numeric) -> f64 {
    let (p, _) = horner(a, z, num);
    let r = abs_f64(z);
    let scale: f64 = a.iter().rev().fold(0.0, |acc, c| acc * r + abs_f64(c));
    if scale == 0.0 {
        return 0.0;
    }
    abs_f64(&p) / scale
}

fn initial_circle(a: &[Complex64], seed: u64) -> Vec<Complex64> {
    let n = a.len() - 1;
    let lead = a[n].norm();
    let radius = (0..n)
        .filter(|&k| a[k].norm() > 0.0)
        .map(|k| (a[k].norm() / lead).powf(1.0 / (n - k) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    (0..n)
        .map(|k| {
            let r = radius * rng.gen_range(0.7..1.0);
            Complex64::from_polar(r, theta + std::f64::consts::TAU * k as f64 / n as f64)
        })
        .collect()
}

fn aberth_c64(a: &[Complex64], z: &mut [Complex64]) {
    let n = z.len();
    for _ in 0..MAX_ITERATIONS {
        let mut worst = 0.0f64;
        for i in 0..n {
            let (p, dp) = horner_c64(a, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let delta = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if delta.is_finite() {
                z[i] -= delta;
                worst = worst.max(delta.norm() / (1.0 + z[i].norm()));
            }
        }
        if worst < 1e-14 {
            return;
        }
    }
}

/// All complex roots of `Σ a_k z^k`, seeded in double precision and refined at `num`'s precision.
///
/// Each phase gets its own budget of `MAX_ITERATIONS` sweeps; the double precision
/// phase may stall on ill-conditioned inputs without harm.
pub fn polynomial_roots(a: &[ComplexValue], num: &Numeric, seed: u64) -> Result<Vec<ComplexValue>> {
    let mut a: Vec<ComplexValue> = a.to_vec();
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    if a.len() < 2 {
        return Ok(Vec::new());
    }
    let a64: Vec<Complex64> = a.iter().map(to_c64).collect();
    let mut z64 = initial_circle(&a64, seed);
    aberth_c64(&a64, &mut z64);
    let mut z: Vec<ComplexValue> = z64.iter().map(|&w| num.from_c64(w)).collect();
    let n = z.len();
    let target = 10f64.powf(-num.digits() * 0.85);
    let (mut prev, mut stalled) = (f64::INFINITY, 0);
    for it in 0..MAX_ITERATIONS {
        let mut worst = 0.0f64;
        for i in 0..n {
            let (p, dp) = horner(&a, &z[i], num);
            if p.is_zero() {
                continue;
            }
            if dp.is_zero() {
                return Err(Error::RootFindingDiverged(it));
            }
            let ratio = p / dp;
            let mut sum = num.zero();
            for j in (0..n).filter(|&j| j != i) {
                let d = z[i].clone() - z[j].clone();
                if d.is_zero() {
                    return Err(Error::RootFindingDiverged(it));
                }
                sum += num.one() / d;
            }
            let den = num.one() - &ratio * &sum;
            if den.is_zero() {
                return Err(Error::RootFindingDiverged(it));
            }
            let delta = ratio / den;
            worst = worst.max(abs_f64(&delta) / (1.0 + abs_f64(&z[i])));
            z[i] = z[i].clone() - delta;
        }
        stalled = if worst > 0.1 * prev { stalled + 1 } else { 0 };
        prev = worst;
        // corrections at the rounding floor no longer shrink
        if worst < target || (worst < num.tolerance() && stalled >= 3) {
            return Ok(z);
        }
    }
    Err(Error::RootFindingDiverged(MAX_ITERATIONS))
}
