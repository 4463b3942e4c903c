//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twist_torsion::algebra::{ExactScalar, MPoly, Numeric, PolyMatrix};
use twist_torsion::charvar::{
    char_var_direct_le, char_var_polynomial, commutator_square_trace, r_sequence, riley_consistency_residual,
};
use twist_torsion::closed_form::crosscheck;
use twist_torsion::holonomy::{parabolic_identity_checks, parabolic_roots, torsion_growth_fit, FamilySign};
use twist_torsion::riley::{riley_polynomial_closed, riley_polynomial_matrix};
use twist_torsion::tables::tables;
use twist_torsion::torsion::{torsion_value, torsion_value_trace_formula};
use twist_torsion::words::{
    fox_derivative, fox_x_closed_form, fundamental_identity_residual, presentation_word, Gen, TwistKnot,
};
use twist_torsion::Result;

const CROSSCHECK_TOL: f64 = 1e-9;
const IDENTITY_TOL: f64 = 1e-10;
const CHARVAR_TOL: f64 = 1e-8;
const SLOPE_RANGE: (f64, f64) = (2.85, 3.15);

const EXAMPLES: &str = include_str!("../golden/examples.txt");

struct Outcome {
    passed: bool,
    detail: String,
}

fn knot(m: i64) -> TwistKnot {
    TwistKnot::new(m).unwrap()
}

fn nonzero(r: std::ops::RangeInclusive<i64>) -> impl Iterator<Item = i64> {
    r.filter(|&m| m != 0)
}

fn worked_examples() -> Result<Outcome> {
    let names = [("3_1", 1), ("5_2", 2), ("4_1", -1), ("6_1", -2)];
    let mut bad = Vec::new();
    for (name, m) in names {
        let line = EXAMPLES.lines().find(|l| l.starts_with(name)).expect("example row");
        let expected: MPoly = line.split('|').nth(2).unwrap().trim().parse()?;
        let got = torsion_value(&knot(m))?.value;
        if got.to_string() != expected.to_string() {
            bad.push(name);
        }
    }
    Ok(Outcome {
        passed: bad.is_empty(),
        detail: format!("4 expressions, mismatches {bad:?}"),
    })
}

fn holonomy_tables() -> Result<Outcome> {
    let t = tables(10)?;
    match t.verify() {
        Ok(n) => Ok(Outcome {
            passed: n == 40,
            detail: format!("{n} of 40 rows identical"),
        }),
        Err(e) => Ok(Outcome {
            passed: false,
            detail: e.to_string(),
        }),
    }
}

fn riley_paths() -> Result<Outcome> {
    let mut bad = Vec::new();
    for m in nonzero(-20..=20) {
        if riley_polynomial_matrix(&knot(m))?.phi != riley_polynomial_closed(&knot(m)).phi {
            bad.push(m);
        }
    }
    Ok(Outcome {
        passed: bad.is_empty(),
        detail: format!("|m| <= 20, mismatches {bad:?}"),
    })
}

fn torsion_paths() -> Result<Outcome> {
    let mut bad = Vec::new();
    for m in nonzero(-10..=10) {
        if torsion_value(&knot(m))? != torsion_value_trace_formula(&knot(m))? {
            bad.push(m);
        }
    }
    Ok(Outcome {
        passed: bad.is_empty(),
        detail: format!("|m| <= 10, mismatches {bad:?}"),
    })
}

fn closed_form_crosscheck() -> Result<Outcome> {
    let num = Numeric::new(128)?;
    let (mut worst, mut worst_swap) = (0.0f64, 0.0f64);
    for m in nonzero(-8..=8) {
        let r = crosscheck(&knot(m), 50, (1000 + m) as u64, &num)?;
        worst = worst.max(r.max_relative_error);
        worst_swap = worst_swap.max(r.max_swap_error);
    }
    Ok(Outcome {
        passed: worst < CROSSCHECK_TOL && worst_swap < CROSSCHECK_TOL,
        detail: format!(
            "50 points per m, |m| <= 8, max rel err {worst:.2e}, swap {worst_swap:.2e} (tol {CROSSCHECK_TOL:e})"
        ),
    })
}

fn holonomy_identities() -> Result<Outcome> {
    let num = Numeric::default();
    let (mut worst, mut roots) = (0.0f64, 0);
    for m in nonzero(-10..=10).filter(|m| m.abs() >= 2) {
        let k = knot(m);
        for r in parabolic_roots(&k, &num, 7)?.iter().filter(|r| !r.is_real) {
            let rep = parabolic_identity_checks(&k, r, &num)?;
            worst = worst
                .max(rep.trace_longitude)
                .max(rep.u_w12_squared)
                .max(rep.cusp_round_trip);
            roots += 1;
        }
    }
    Ok(Outcome {
        passed: worst < IDENTITY_TOL,
        detail: format!("{roots} non-real roots, worst {worst:.2e} (tol {IDENTITY_TOL:e})"),
    })
}

fn character_variety() -> Result<Outcome> {
    let mut exact = true;
    for m in nonzero(-6..=6).filter(|m| m.abs() >= 2) {
        exact &= char_var_polynomial(m) == char_var_direct_le(m);
    }
    let num = Numeric::default();
    let mut worst = 0.0f64;
    for m in [-4, -3, -2, 2, 3, 4] {
        for s in [num.c(0.6, 0.3), num.c(-1.7, 0.9), num.c(1.2, -2.1)] {
            worst = worst.max(riley_consistency_residual(m, &s, &num, 9)?);
        }
    }
    Ok(Outcome {
        passed: exact && worst < CHARVAR_TOL,
        detail: format!("recursion = Le for 2 <= |m| <= 6: {exact}; max |Phi| at Riley characters {worst:.2e} (tol {CHARVAR_TOL:e})"),
    })
}

fn growth() -> Result<Outcome> {
    let fit = torsion_growth_fit(5, 50, FamilySign::Minus, &Numeric::default(), 7)?;
    Ok(Outcome {
        passed: (SLOPE_RANGE.0..=SLOPE_RANGE.1).contains(&fit.slope),
        detail: format!(
            "slope {:.4} over m in [5, 50], sign - (range [{}, {}])",
            fit.slope, SLOPE_RANGE.0, SLOPE_RANGE.1
        ),
    })
}

fn random_matrix(rng: &mut ChaCha8Rng) -> PolyMatrix {
    let rows = (0..3)
        .map(|_| {
            (0..3)
                .map(|_| MPoly::constant(ExactScalar::new(rng.gen_range(-9..=9), rng.gen_range(1..=4)).unwrap()))
                .collect()
        })
        .collect();
    PolyMatrix::from_rows(rows).unwrap()
}

fn algebra_suite() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut failures = Vec::new();
    for _ in 0..100 {
        let (a, b) = (random_matrix(&mut rng), random_matrix(&mut rng));
        let (s1, s2, s3) = a.sigma_invariants()?;
        if PolyMatrix::identity(3).add(&a)?.det() != &(&(&MPoly::one() + &s1) + &s2) + &s3 {
            failures.push("det(1+A)");
        }
        let d = s3.constant_value().unwrap();
        if !d.is_zero() {
            let inv = a.adjugate().scale_scalar(&d.recip()?);
            if s2 != inv.trace().scale(&d) {
                failures.push("sigma2");
            }
        }
        if PolyMatrix::minor_expansion_identity(&a, &b)? != &(&a.trace() * &b.trace()) - &a.mul(&b)?.trace() {
            failures.push("minors");
        }
    }
    for m in nonzero(-6..=6) {
        if !fundamental_identity_residual(&presentation_word(&knot(m))).is_zero() {
            failures.push("fundamental identity");
        }
    }
    for m in 1..=6 {
        if fox_derivative(&presentation_word(&knot(m)), Gen::X) != fox_x_closed_form(m) {
            failures.push("fox closed form");
        }
    }
    let c = commutator_square_trace();
    for (positive, dir) in [(true, 1), (false, -1)] {
        for i in 0..3 {
            let m = dir * i;
            let r = |j: i64| r_sequence(m + j * dir, positive);
            if !(&(&r(4) - &(&c * &r(2))) + &r(0)).is_zero() {
                failures.push("block recurrence");
            }
        }
    }
    Ok(Outcome {
        passed: failures.is_empty(),
        detail: format!("sigma, minors, Fox, recurrence; failures {failures:?}"),
    })
}

type Criterion = (&'static str, fn() -> Result<Outcome>, u64);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("worked examples", worked_examples, 5),
        ("holonomy tables", holonomy_tables, 60),
        ("Riley dual path", riley_paths, 10),
        ("torsion dual path", torsion_paths, 120),
        ("closed form crosscheck", closed_form_crosscheck, 60),
        ("holonomy identities", holonomy_identities, 30),
        ("character variety", character_variety, 60),
        ("asymptotic growth", growth, 120),
        ("algebra properties", algebra_suite, 30),
    ];
    let mut all = true;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run().unwrap_or_else(|e| Outcome {
            passed: false,
            detail: format!("error: {e}"),
        });
        let elapsed = start.elapsed();
        let timing = if elapsed > Duration::from_secs(*budget) {
            " over budget"
        } else {
            ""
        };
        println!(
            "criterion {}: {} {name}: {} [{:.1}s of {budget}s{timing}]",
            i + 1,
            if outcome.passed { "PASS" } else { "FAIL" },
            outcome.detail,
            elapsed.as_secs_f64()
        );
        all &= outcome.passed;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
