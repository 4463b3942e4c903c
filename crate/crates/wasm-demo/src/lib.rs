//! Browser bindings. Each export returns JSON or plain text for `www/index.html`.

use serde::Serialize;
use twist_torsion::algebra::Numeric;
use twist_torsion::holonomy::{cusp_shape, torsion_growth_fit, FamilySign};
use twist_torsion::report::CuspShapeReport;
use twist_torsion::riley::riley_polynomial_closed;
use twist_torsion::tables::table_row;
use twist_torsion::torsion::torsion_value;
use twist_torsion::words::{parse_knot_spec, TwistKnot};
use wasm_bindgen::prelude::*;

const SEED: u64 = 1;
const MAX_GROWTH_M: i64 = 40;

fn numeric() -> Numeric {
    Numeric::default()
}

fn knot(spec: &str) -> Result<TwistKnot, String> {
    parse_knot_spec(spec).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct CuspShapes {
    knot: String,
    shapes: Vec<CuspShapeReport>,
}

/// All cusp shapes of the parabolic representations, as JSON.
pub fn cusp_shapes_json(spec: &str) -> Result<String, String> {
    let k = knot(spec)?;
    let num = numeric();
    let shapes = cusp_shape(&k, &num, SEED).map_err(|e| e.to_string())?;
    let shapes = shapes.iter().map(|c| CuspShapeReport::new(&k, c, &num)).collect();
    serde_json::to_string(&CuspShapes { knot: k.name(), shapes }).map_err(|e| e.to_string())
}

/// |T| at the geometric root for m = from..to, with the log-log fit, as JSON.
pub fn growth_curve_json(sign: &str, from: i64, to: i64) -> Result<String, String> {
    let sign = match sign {
        "+" | "plus" => FamilySign::Plus,
        "-" | "minus" => FamilySign::Minus,
        _ => return Err(format!("sign must be + or -, got `{sign}`")),
    };
    if from < 2 || to <= from || to > MAX_GROWTH_M {
        return Err(format!("need 2 <= from < to <= {MAX_GROWTH_M}"));
    }
    let fit = torsion_growth_fit(from, to, sign, &numeric(), SEED).map_err(|e| e.to_string())?;
    serde_json::to_string(&fit).map_err(|e| e.to_string())
}

/// Riley polynomial, torsion, and torsion at the holonomy as plain text.
pub fn riley_torsion_text(spec: &str) -> Result<String, String> {
    let k = knot(spec)?;
    let mut out = String::new();
    for line in &k.trail {
        out.push_str(&format!("({line})\n"));
    }
    let phi = riley_polynomial_closed(&k);
    out.push_str(&format!(
        "{}\n\nRiley polynomial\n  phi(s, u) = {}\n",
        k.name(),
        phi.phi
    ));
    let t = torsion_value(&k).map_err(|e| e.to_string())?;
    out.push_str(&format!("\nTorsion, divided by {}\n  {}\n", t.sign_factor, t.value));
    let sign = if k.m > 0 { FamilySign::Plus } else { FamilySign::Minus };
    let row = table_row(sign, k.m.abs()).map_err(|e| e.to_string())?;
    out.push_str(&format!(
        "\nAt the holonomy (s = 1), divided by {}\n  in u: {}\n  in c: {}\n",
        row.value.sign_factor, row.value.value, row.in_cusp_shape
    ));
    Ok(out)
}

#[wasm_bindgen]
pub fn cusp_shapes(spec: &str) -> Result<String, JsValue> {
    cusp_shapes_json(spec).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn growth_curve(sign: &str, from: i32, to: i32) -> Result<String, JsValue> {
    growth_curve_json(sign, from.into(), to.into()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn riley_torsion(spec: &str) -> Result<String, JsValue> {
    riley_torsion_text(spec).map_err(|e| JsValue::from_str(&e))
}
