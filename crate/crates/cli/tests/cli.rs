use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twist-torsion"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let o = run(&all);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).expect("valid json")
}

#[test]
fn riley_json_fields() {
    let v = json(&["riley", "--knot", "3_1", "--path", "both"]);
    assert_eq!(v["phi"], "-u + s - 1 + s^-1");
    assert_eq!(v["degree_u"], 1);
    assert_eq!(v["paths_agree"], true);
    assert_eq!(v["knot"]["m"], 1);
}

#[test]
fn torsion_json_and_latex() {
    let v = json(&["torsion", "--knot", "J(2,-2)", "--path", "both"]);
    assert_eq!(v["sign_factor"], "tau0");
    assert_eq!(v["poly_u_s"], "-2*s + 1 - 2*s^-1");
    assert!(v.get("poly_u").is_none());
    let v = json(&["torsion", "--knot", "5_2", "--at-holonomy"]);
    assert_eq!(v["poly_u"], "13*u^2 - 7*u + 19");
    let o = run(&["torsion", "--knot", "5_2", "--at-holonomy", "--format", "latex"]);
    assert!(stdout(&o).starts_with("2 & $13u^2-7u+19$ & $(19{\\mathfrak{c}}^2"));
}

#[test]
fn alternate_knot_names_normalize() {
    let a = json(&["riley", "--knot", "J(-2,5)"]);
    let b = json(&["riley", "--knot", "J(2,6)"]);
    assert_eq!(a["phi"], b["phi"]);
    let o = run(&["riley", "--knot", "J(-2,5)"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("isotopic"));
}

#[test]
fn holonomy_reports_every_root() {
    let v = json(&["holonomy", "--knot", "J(2,6)", "--verify"]);
    let roots = v["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 5);
    for r in roots {
        assert!(r["cusp_shape"]["re"].is_string() && r["torsion"]["im"].is_string());
        assert_eq!(r["identities"].is_null(), r["is_real"] == true);
    }
}

#[test]
fn tables_verify_and_latex() {
    let o = run(&["tables", "--verify", "--format", "latex"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.matches("\\begin{tabular}").count(), 2);
    assert!(text.contains("2 & $13u^2-7u+19$"));
    let o = run(&["tables", "--max-m", "3", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().count(), 7);
}

#[test]
fn examples_verify() {
    let o = run(&["examples", "--verify"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("12 expressions"));
}

#[test]
fn crosscheck_json_has_string_errors() {
    let v = json(&[
        "--seed",
        "5",
        "crosscheck",
        "--knot",
        "J(2,-6)",
        "--points",
        "4",
        "--verify",
    ]);
    let e: f64 = v["max_relative_error"].as_str().unwrap().parse().unwrap();
    assert!(e < 1e-9);
    assert_eq!(v["seed"], 5);
}

#[test]
fn charvar_oracle() {
    let v = json(&["charvar", "--m", "-3", "--oracle"]);
    assert_eq!(v["oracle"]["le_agrees"], true);
    let r: f64 = v["oracle"]["riley_residual"].as_str().unwrap().parse().unwrap();
    assert!(r < 1e-8);
}

#[test]
fn asymptotics_csv() {
    let o = run(&[
        "asymptotics",
        "--sign",
        "-",
        "--from",
        "3",
        "--to",
        "6",
        "--format",
        "csv",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("m,crossing_number,abs_torsion,cusp_shape_re,cusp_shape_im"));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["riley", "--knot", "J(2,0)"]).status.code(), Some(2));
    assert_eq!(
        run(&["riley", "--knot", "3_1", "--format", "latex"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["--precision", "10", "riley", "--knot", "3_1"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["tables", "--max-m", "0"]).status.code(), Some(2));
    assert_eq!(run(&["cusp-shape", "--knot", "3_1"]).status.code(), Some(1));
    assert_eq!(
        run(&["asymptotics", "--from", "5", "--to", "12", "--verify"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["cusp-shape", "--knot", "4_1"]).status.code(), Some(0));
}

#[test]
fn selfcheck_passes() {
    let o = run(&["selfcheck", "--format", "json"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 7);
}
