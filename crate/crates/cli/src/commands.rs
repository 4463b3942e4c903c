use serde::Serialize;
use twist_torsion::algebra::{ExactScalar, MPoly, Var};
use twist_torsion::charvar::{char_var_direct_le, char_var_polynomial, riley_consistency_residual, CharVarPolynomial};
use twist_torsion::closed_form::crosscheck as run_crosscheck;
use twist_torsion::holonomy::{
    cusp_shape as run_cusp_shape, cusp_shape_of, parabolic_identity_checks, parabolic_roots, torsion_growth_fit,
    FamilySign, IdentityReport,
};
use twist_torsion::report::{f64_text, ComplexText, CuspShapeReport, RootReport};
use twist_torsion::riley::{riley_polynomial_closed, riley_polynomial_matrix};
use twist_torsion::tables::{latex_mpoly, table_row, tables as run_tables, verify_examples, worked_examples};
use twist_torsion::torsion::{
    torsion_at_holonomy_symbolic, torsion_polynomial, torsion_value, torsion_value_trace_formula, SignFactor,
    TorsionValue,
};
use twist_torsion::words::TwistKnot;

use crate::output::{coefficient_rows, csv, json, note, unsupported, verified, Failure, Format};
use crate::{Ctx, RileyPath, TorsionPath};

pub const CROSSCHECK_TOL: f64 = 1e-9;
pub const SLOPE_RANGE: (f64, f64) = (2.85, 3.15);

fn announce(knot: &TwistKnot) {
    for line in &knot.trail {
        note(line);
    }
}

#[derive(Serialize)]
struct RileyOut<'a> {
    knot: &'a TwistKnot,
    phi: &'a MPoly,
    degree_u: u32,
    paths_agree: Option<bool>,
}

pub fn riley(ctx: &Ctx, knot: &TwistKnot, path: RileyPath) -> Result<(), Failure> {
    announce(knot);
    let closed = riley_polynomial_closed(knot);
    let matrix = if path != RileyPath::Closed || ctx.verify {
        Some(riley_polynomial_matrix(knot)?)
    } else {
        None
    };
    let phi = match (path, &matrix) {
        (RileyPath::Matrix, Some(m)) => m,
        _ => &closed,
    };
    let agree = matrix
        .as_ref()
        .filter(|_| path == RileyPath::Both || ctx.verify)
        .map(|m| m.phi == closed.phi);
    match ctx.format {
        Format::Text => println!("{}: phi(s, u) = {}", knot.name(), phi.phi),
        Format::Json => json(&RileyOut {
            knot,
            phi: &phi.phi,
            degree_u: phi.degree_u(),
            paths_agree: agree,
        })?,
        Format::Csv => csv(&coefficient_rows(&phi.phi, Var::U))?,
        Format::Latex => return Err(unsupported(ctx.format, "riley")),
    }
    match agree {
        Some(ok) => verified(ok, "matrix-power and closed-form Riley polynomials agree"),
        None => Ok(()),
    }
}

#[derive(Serialize)]
struct TorsionOut<'a> {
    knot: &'a TwistKnot,
    sign_factor: SignFactor,
    #[serde(skip_serializing_if = "Option::is_none")]
    poly_u_s: Option<&'a MPoly>,
    #[serde(skip_serializing_if = "Option::is_none")]
    poly_u: Option<&'a MPoly>,
    table_row_latex: String,
    paths_agree: Option<bool>,
}

fn print_torsion(ctx: &Ctx, v: &TorsionValue, row_latex: String, agree: Option<bool>) -> Result<(), Failure> {
    match ctx.format {
        Format::Text => {
            let at = if v.at_holonomy { " at s = 1" } else { "" };
            println!("{}{at}: T / {} = {}", v.knot.name(), v.sign_factor, v.value);
        }
        Format::Json => json(&TorsionOut {
            knot: &v.knot,
            sign_factor: v.sign_factor,
            poly_u_s: (!v.at_holonomy).then_some(&v.value),
            poly_u: v.at_holonomy.then_some(&v.value),
            table_row_latex: row_latex,
            paths_agree: agree,
        })?,
        Format::Csv => csv(&coefficient_rows(&v.value, Var::U))?,
        Format::Latex => println!("{row_latex}"),
    }
    Ok(())
}

pub fn torsion(ctx: &Ctx, knot: &TwistKnot, at_holonomy: bool, path: TorsionPath) -> Result<(), Failure> {
    announce(knot);
    if at_holonomy {
        let sign = if knot.m > 0 {
            FamilySign::Plus
        } else {
            FamilySign::Minus
        };
        let row = table_row(sign, knot.m.abs())?;
        let agree = if ctx.verify || path != TorsionPath::Det {
            // the generic value at s = 1, reduced again modulo φ(1, u)
            let phi1 = riley_polynomial_closed(knot).at_holonomy();
            let generic = torsion_value(knot)?.value.eval_var(Var::S, &ExactScalar::one())?;
            let generic = phi1.reduce(&generic);
            Some(row.value.value == if knot.m > 0 { -generic } else { generic })
        } else {
            None
        };
        print_torsion(ctx, &row.value, row.latex_line(), agree)?;
        return match agree {
            Some(ok) => verified(ok, "holonomy torsion equals the specialized generic torsion"),
            None => Ok(()),
        };
    }
    let both = path == TorsionPath::Both || ctx.verify;
    let det = if path != TorsionPath::Trace || both {
        Some(torsion_value(knot)?)
    } else {
        None
    };
    let trace = if path == TorsionPath::Trace || both {
        Some(torsion_value_trace_formula(knot)?)
    } else {
        None
    };
    let agree = match (&det, &trace) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    let v = det.as_ref().or(trace.as_ref()).expect("one path ran");
    let row_latex = format!("{} & ${}$ \\\\", knot.m, latex_mpoly(&v.value));
    print_torsion(ctx, v, row_latex, agree)?;
    match agree {
        Some(ok) => verified(ok, "determinant and trace-formula torsion agree"),
        None => Ok(()),
    }
}

pub fn torsion_poly(ctx: &Ctx, knot: &TwistKnot) -> Result<(), Failure> {
    announce(knot);
    let tp = torsion_polynomial(knot);
    match ctx.format {
        Format::Text => {
            println!("{}: numerator = {}", knot.name(), tp.numerator);
            println!("denominator = {}", tp.denominator);
            println!("note: {}", tp.normalization_note);
        }
        Format::Json => json(&tp)?,
        Format::Csv => csv(&coefficient_rows(&tp.numerator, Var::T))?,
        Format::Latex => return Err(unsupported(ctx.format, "torsion-poly")),
    }
    Ok(())
}

#[derive(Serialize)]
struct HolonomyRoot {
    index: usize,
    #[serde(flatten)]
    root: RootReport,
    cusp_shape: ComplexText,
    torsion: ComplexText,
    identities: Option<IdentityReport>,
}

#[derive(Serialize)]
struct HolonomyOut<'a> {
    knot: &'a TwistKnot,
    sign_factor: SignFactor,
    precision_bits: usize,
    roots: Vec<HolonomyRoot>,
}

#[derive(Serialize)]
struct HolonomyCsv {
    index: usize,
    u_re: String,
    u_im: String,
    #[serde(with = "f64_text")]
    relative_residual: f64,
    is_real: bool,
    conjugate_partner_index: Option<usize>,
    cusp_shape_re: String,
    cusp_shape_im: String,
    torsion_re: String,
    torsion_im: String,
    identities_passed: Option<bool>,
}

pub fn holonomy(ctx: &Ctx, knot: &TwistKnot) -> Result<(), Failure> {
    announce(knot);
    let num = &ctx.num;
    let roots = parabolic_roots(knot, num, ctx.seed)?;
    let value = torsion_at_holonomy_symbolic(knot)?;
    let mut rows = Vec::new();
    for (index, r) in roots.iter().enumerate() {
        let identities = if r.is_real {
            None
        } else {
            Some(parabolic_identity_checks(knot, r, num)?)
        };
        let c = cusp_shape_of(&r.u, num)?;
        let t = value.value.eval_complex(&[(Var::U, r.u.clone())], num)?;
        rows.push(HolonomyRoot {
            index,
            root: RootReport::new(r, num),
            cusp_shape: ComplexText::at(&c, num),
            torsion: ComplexText::at(&t, num),
            identities,
        });
    }
    let all_pass = rows.iter().all(|r| r.identities.as_ref().is_none_or(|i| i.passed));
    match ctx.format {
        Format::Text => {
            println!(
                "{}: {} roots of phi(1, u) at {} bits",
                knot.name(),
                rows.len(),
                num.bits()
            );
            for r in &rows {
                let checks = match &r.identities {
                    Some(i) => format!("identities {}", if i.passed { "pass" } else { "FAIL" }),
                    None => "real".to_string(),
                };
                println!(
                    "  u[{}] = {}  (rel. residual {:.1e}, {checks})",
                    r.index, r.root.u, r.root.relative_residual
                );
                println!("    c = {}  T / {} = {}", r.cusp_shape, value.sign_factor, r.torsion);
            }
        }
        Format::Json => json(&HolonomyOut {
            knot,
            sign_factor: value.sign_factor,
            precision_bits: num.bits(),
            roots: rows,
        })?,
        Format::Csv => csv(&rows
            .iter()
            .map(|r| HolonomyCsv {
                index: r.index,
                u_re: r.root.u.re.clone(),
                u_im: r.root.u.im.clone(),
                relative_residual: r.root.relative_residual,
                is_real: r.root.is_real,
                conjugate_partner_index: r.root.conjugate_partner_index,
                cusp_shape_re: r.cusp_shape.re.clone(),
                cusp_shape_im: r.cusp_shape.im.clone(),
                torsion_re: r.torsion.re.clone(),
                torsion_im: r.torsion.im.clone(),
                identities_passed: r.identities.as_ref().map(|i| i.passed),
            })
            .collect::<Vec<_>>())?,
        Format::Latex => return Err(unsupported(ctx.format, "holonomy")),
    }
    if ctx.verify {
        verified(all_pass, "peripheral identities at every non-real root")?;
    }
    Ok(())
}

#[derive(Serialize)]
struct CuspCsv {
    u_re: String,
    u_im: String,
    cusp_shape_re: String,
    cusp_shape_im: String,
    geometric_candidate: bool,
}

pub fn cusp_shape(ctx: &Ctx, knot: &TwistKnot) -> Result<(), Failure> {
    announce(knot);
    let reports: Vec<CuspShapeReport> = run_cusp_shape(knot, &ctx.num, ctx.seed)?
        .iter()
        .map(|r| CuspShapeReport::new(knot, r, &ctx.num))
        .collect();
    match ctx.format {
        Format::Text => {
            println!("{}: cusp shapes c = (2u + 4)/u, nearest to 2 + 2i first", knot.name());
            for r in &reports {
                let mark = if r.geometric_candidate {
                    "  <- geometric candidate"
                } else {
                    ""
                };
                println!("  c = {}  (u = {}){mark}", r.cusp_shape, r.u);
            }
        }
        Format::Json => json(&reports)?,
        Format::Csv => csv(&reports
            .iter()
            .map(|r| CuspCsv {
                u_re: r.u.re.clone(),
                u_im: r.u.im.clone(),
                cusp_shape_re: r.cusp_shape.re.clone(),
                cusp_shape_im: r.cusp_shape.im.clone(),
                geometric_candidate: r.geometric_candidate,
            })
            .collect::<Vec<_>>())?,
        Format::Latex => return Err(unsupported(ctx.format, "cusp-shape")),
    }
    Ok(())
}

#[derive(Serialize)]
struct CharvarOracle {
    le_agrees: bool,
    #[serde(with = "f64_text")]
    riley_residual: f64,
}

#[derive(Serialize)]
struct CharvarOut {
    #[serde(flatten)]
    poly: CharVarPolynomial,
    oracle: Option<CharvarOracle>,
}

pub fn charvar(ctx: &Ctx, m: i64, oracle: bool) -> Result<(), Failure> {
    let poly = char_var_polynomial(m);
    let check = if oracle || ctx.verify {
        let le_agrees = poly == char_var_direct_le(m);
        let riley_residual = if m == 0 {
            0.0
        } else {
            let s = ctx.num.c(0.6, 0.3);
            riley_consistency_residual(m, &s, &ctx.num, ctx.seed)?
        };
        Some(CharvarOracle {
            le_agrees,
            riley_residual,
        })
    } else {
        None
    };
    match ctx.format {
        Format::Text => {
            println!("Phi_{m}(a, b) = {}", poly.phi_m);
            if let Some(c) = &check {
                println!("recursion equals direct alternating sum: {}", c.le_agrees);
                println!(
                    "max |Phi| at Riley characters (s = 0.6 + 0.3i): {:.2e}",
                    c.riley_residual
                );
            }
        }
        Format::Json => json(&CharvarOut {
            poly,
            oracle: check.as_ref().map(|c| CharvarOracle { ..*c }),
        })?,
        Format::Csv => csv(&coefficient_rows(&poly.phi_m, Var::B))?,
        Format::Latex => return Err(unsupported(ctx.format, "charvar")),
    }
    match check {
        Some(c) => verified(c.le_agrees && c.riley_residual < 1e-8, "character variety oracles"),
        None => Ok(()),
    }
}

#[derive(Serialize)]
struct TableCsv {
    sign: FamilySign,
    m: i64,
    knot: String,
    u_row: String,
    c_row: String,
}

pub fn tables(ctx: &Ctx, max_m: i64) -> Result<(), Failure> {
    if max_m < 1 {
        return Err(Failure::Usage("--max-m must be at least 1".into()));
    }
    let t = run_tables(max_m)?;
    let rows = || {
        [(FamilySign::Plus, &t.plus), (FamilySign::Minus, &t.minus)]
            .into_iter()
            .flat_map(|(sign, rows)| rows.iter().map(move |r| (sign, r)))
    };
    match ctx.format {
        Format::Text => {
            for (sign, r) in rows() {
                let div = if sign == FamilySign::Plus { "-tau0" } else { "tau0" };
                println!("{} (T / {div}): {}  |  {}", r.knot.name(), r.u_latex, r.c_latex);
            }
        }
        Format::Latex => print!("{}", t.to_latex()),
        Format::Json => json(&t)?,
        Format::Csv => csv(&rows()
            .map(|(sign, r)| TableCsv {
                sign,
                m: r.index,
                knot: r.knot.name(),
                u_row: r.u_latex.clone(),
                c_row: r.c_latex.clone(),
            })
            .collect::<Vec<_>>())?,
    }
    if ctx.verify {
        if max_m > 10 {
            note("rows beyond m = 10 have no reference data and are not compared");
        }
        let n = t.verify()?;
        note(&format!("verified: {n} table rows match the reference data"));
    }
    Ok(())
}

#[derive(Serialize)]
struct ExampleCsv {
    name: String,
    knot: String,
    riley: String,
    torsion: String,
    sign_factor: String,
}

pub fn examples(ctx: &Ctx) -> Result<(), Failure> {
    let ex = worked_examples()?;
    match ctx.format {
        Format::Text => {
            for e in &ex {
                println!("{} = {}", e.name, e.knot.name());
                println!("  phi(s, u) = {}", e.riley);
                println!("  T / {} = {}", e.torsion.sign_factor, e.torsion.value);
            }
        }
        Format::Json => json(&ex)?,
        Format::Csv => csv(&ex
            .iter()
            .map(|e| ExampleCsv {
                name: e.name.clone(),
                knot: e.knot.name(),
                riley: e.riley.to_string(),
                torsion: e.torsion.value.to_string(),
                sign_factor: e.torsion.sign_factor.to_string(),
            })
            .collect::<Vec<_>>())?,
        Format::Latex => return Err(unsupported(ctx.format, "examples")),
    }
    if ctx.verify {
        let n = verify_examples(&ex)?;
        note(&format!("verified: {n} expressions match the reference data"));
    }
    Ok(())
}

#[derive(Serialize)]
struct SampleCsv {
    m: i64,
    crossing_number: i64,
    #[serde(with = "f64_text")]
    abs_torsion: f64,
    #[serde(with = "f64_text")]
    cusp_shape_re: f64,
    #[serde(with = "f64_text")]
    cusp_shape_im: f64,
}

pub fn asymptotics(ctx: &Ctx, sign: FamilySign, from: i64, to: i64) -> Result<(), Failure> {
    if from < 2 || to <= from {
        return Err(Failure::Usage("need 2 <= --from < --to".into()));
    }
    note(&format!("computing the geometric root for m = {from}..{to}"));
    let fit = torsion_growth_fit(from, to, sign, &ctx.num, ctx.seed)?;
    match ctx.format {
        Format::Text => {
            let s = if sign == FamilySign::Plus { "+" } else { "-" };
            let op = if fit.intercept < 0.0 { '-' } else { '+' };
            println!(
                "log |T| = {:.4} log(crossings) {op} {:.4}  over m = {from}..{to}, sign {s}",
                fit.slope,
                fit.intercept.abs()
            );
            println!("rms residual {:.2e}", fit.residual);
            for p in &fit.samples {
                println!(
                    "  m = {:3}  crossings {:3}  |T| = {:.6e}",
                    p.m, p.crossing_number, p.abs_torsion
                );
            }
        }
        Format::Json => json(&fit)?,
        Format::Csv => csv(&fit
            .samples
            .iter()
            .map(|p| SampleCsv {
                m: p.m,
                crossing_number: p.crossing_number,
                abs_torsion: p.abs_torsion,
                cusp_shape_re: p.cusp_shape.0,
                cusp_shape_im: p.cusp_shape.1,
            })
            .collect::<Vec<_>>())?,
        Format::Latex => return Err(unsupported(ctx.format, "asymptotics")),
    }
    if ctx.verify {
        let ok = (SLOPE_RANGE.0..=SLOPE_RANGE.1).contains(&fit.slope);
        verified(
            ok,
            &format!("slope {:.4} within [{}, {}]", fit.slope, SLOPE_RANGE.0, SLOPE_RANGE.1),
        )?;
    }
    Ok(())
}

pub fn crosscheck(ctx: &Ctx, knot: &TwistKnot, points: usize) -> Result<(), Failure> {
    announce(knot);
    let r = run_crosscheck(knot, points, ctx.seed, &ctx.num)?;
    match ctx.format {
        Format::Text => {
            println!("{}: {} points at {} bits", r.knot, r.points, r.precision_bits);
            println!("  max relative error {:.3e}", r.max_relative_error);
            println!("  max swap error     {:.3e}", r.max_swap_error);
        }
        Format::Json => json(&r)?,
        Format::Csv => csv(&[&r])?,
        Format::Latex => return Err(unsupported(ctx.format, "crosscheck")),
    }
    if ctx.verify {
        let ok = r.max_relative_error < CROSSCHECK_TOL && r.max_swap_error < CROSSCHECK_TOL;
        verified(ok, &format!("closed form within {CROSSCHECK_TOL:e}"))?;
    }
    Ok(())
}
