use std::time::Instant;

use serde::Serialize;
use twist_torsion::charvar::{char_var_direct_le, char_var_polynomial, riley_consistency_residual};
use twist_torsion::closed_form::crosscheck;
use twist_torsion::holonomy::{parabolic_identity_checks, parabolic_roots};
use twist_torsion::riley::{riley_polynomial_closed, riley_polynomial_matrix};
use twist_torsion::tables::{tables, verify_examples, worked_examples};
use twist_torsion::torsion::{torsion_value, torsion_value_trace_formula};
use twist_torsion::words::TwistKnot;
use twist_torsion::Result;

use crate::commands::CROSSCHECK_TOL;
use crate::output::{csv, json, unsupported, Failure, Format};
use crate::Ctx;

#[derive(Serialize)]
struct Check {
    name: &'static str,
    passed: bool,
    detail: String,
    seconds: String,
}

fn knots(max: i64) -> impl Iterator<Item = TwistKnot> {
    (-max..=max)
        .filter(|&m| m != 0)
        .map(|m| TwistKnot::new(m).expect("m is nonzero"))
}

fn riley_paths() -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for k in knots(20) {
        if riley_polynomial_matrix(&k)?.phi != riley_polynomial_closed(&k).phi {
            bad.push(k.m);
        }
    }
    Ok((bad.is_empty(), format!("|m| <= 20, mismatches {bad:?}")))
}

fn torsion_paths() -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for k in knots(6) {
        if torsion_value(&k)? != torsion_value_trace_formula(&k)? {
            bad.push(k.m);
        }
    }
    Ok((bad.is_empty(), format!("|m| <= 6, mismatches {bad:?}")))
}

fn closed_form(ctx: &Ctx) -> Result<(bool, String)> {
    let tol = CROSSCHECK_TOL.max(100.0 * ctx.num.tolerance());
    let mut worst = 0.0f64;
    for k in knots(6) {
        let r = crosscheck(&k, 20, ctx.seed.wrapping_add(k.m as u64), &ctx.num)?;
        worst = worst.max(r.max_relative_error).max(r.max_swap_error);
    }
    Ok((
        worst < tol,
        format!("|m| <= 6, 20 points, worst {worst:.2e} (tol {tol:.0e})"),
    ))
}

fn charvar_oracle(ctx: &Ctx) -> Result<(bool, String)> {
    let mut exact = true;
    for m in (-6..=6).filter(|m: &i64| m.abs() >= 2) {
        exact &= char_var_polynomial(m) == char_var_direct_le(m);
    }
    let s = ctx.num.c(0.6, 0.3);
    let mut worst = 0.0f64;
    for m in [-3, -2, 2, 3] {
        worst = worst.max(riley_consistency_residual(m, &s, &ctx.num, ctx.seed)?);
    }
    Ok((
        exact && worst < 1e-8,
        format!("recursion = direct sum: {exact}, max |Phi| {worst:.2e}"),
    ))
}

fn identities(ctx: &Ctx) -> Result<(bool, String)> {
    let (mut failed, mut roots) = (0, 0);
    for k in knots(8).filter(|k| k.m.abs() >= 2) {
        for r in parabolic_roots(&k, &ctx.num, ctx.seed)?.iter().filter(|r| !r.is_real) {
            roots += 1;
            if !parabolic_identity_checks(&k, r, &ctx.num)?.passed {
                failed += 1;
            }
        }
    }
    Ok((
        failed == 0,
        format!(
            "{roots} non-real roots, {failed} failed (tol {:.0e})",
            ctx.num.tolerance()
        ),
    ))
}

fn table_rows() -> Result<(bool, String)> {
    match tables(10)?.verify() {
        Ok(n) => Ok((true, format!("{n} rows match"))),
        Err(e) => Ok((false, e.to_string())),
    }
}

fn examples() -> Result<(bool, String)> {
    let ex = worked_examples()?;
    match verify_examples(&ex) {
        Ok(n) => Ok((true, format!("{n} expressions match"))),
        Err(e) => Ok((false, e.to_string())),
    }
}

type Suite<'a> = Box<dyn Fn() -> Result<(bool, String)> + 'a>;

pub fn run(ctx: &Ctx) -> std::result::Result<(), Failure> {
    if ctx.format == Format::Latex {
        return Err(unsupported(ctx.format, "selfcheck"));
    }
    let suites: [(&'static str, Suite); 7] = [
        ("riley paths", Box::new(riley_paths)),
        ("torsion paths", Box::new(torsion_paths)),
        ("closed form", Box::new(|| closed_form(ctx))),
        ("character variety", Box::new(|| charvar_oracle(ctx))),
        ("parabolic identities", Box::new(|| identities(ctx))),
        ("tables", Box::new(table_rows)),
        ("examples", Box::new(examples)),
    ];
    let mut checks = Vec::new();
    for (name, suite) in &suites {
        let start = Instant::now();
        let (passed, detail) = suite().unwrap_or_else(|e| (false, format!("error: {e}")));
        let seconds = format!("{:.2}", start.elapsed().as_secs_f64());
        if ctx.format == Format::Text {
            println!("{} {name}: {detail} [{seconds}s]", if passed { "PASS" } else { "FAIL" });
        }
        checks.push(Check {
            name,
            passed,
            detail,
            seconds,
        });
    }
    match ctx.format {
        Format::Json => json(&checks)?,
        Format::Csv => csv(&checks)?,
        _ => {}
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Compute(format!("{failed} selfcheck suite(s) failed")))
    }
}
