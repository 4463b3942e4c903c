use twist_torsion_wasm::{cusp_shapes_json, growth_curve_json, riley_torsion_text};

#[test]
fn figure_eight_shapes() {
    let v: serde_json::Value = serde_json::from_str(&cusp_shapes_json("4_1").unwrap()).unwrap();
    let shapes = v["shapes"].as_array().unwrap();
    assert_eq!(shapes.len(), 2);
    let im: f64 = shapes[0]["cusp_shape"]["im"].as_str().unwrap().parse().unwrap();
    assert!((im.abs() - 2.0 * 3f64.sqrt()).abs() < 1e-12);
    assert!(cusp_shapes_json("3_1").is_err());
}

#[test]
fn growth_curve_samples() {
    let v: serde_json::Value = serde_json::from_str(&growth_curve_json("-", 3, 6).unwrap()).unwrap();
    assert_eq!(v["samples"].as_array().unwrap().len(), 4);
    assert!(growth_curve_json("x", 3, 6).is_err());
    assert!(growth_curve_json("+", 6, 3).is_err());
}

#[test]
fn text_report() {
    let t = riley_torsion_text("5_2").unwrap();
    assert!(t.starts_with("J(2,4)"));
    assert!(t.contains("13*u^2 - 7*u + 19"));
    assert!(riley_torsion_text("J(2,1)").is_err());
}
