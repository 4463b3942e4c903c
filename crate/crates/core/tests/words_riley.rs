use proptest::prelude::*;
use twist_torsion::algebra::{ExactScalar, MPoly, PolyMatrix, Var};
use twist_torsion::riley::{riley_matrix_w, riley_polynomial_closed, riley_polynomial_matrix};
use twist_torsion::words::{
    fox_derivative, fox_x_closed_form, free_reduce, fundamental_identity_residual, presentation_word, Gen, GroupWord,
    Letter, TwistKnot,
};

fn letter() -> impl Strategy<Value = Letter> {
    prop_oneof![Just(Letter::X), Just(Letter::Y), Just(Letter::XI), Just(Letter::YI)]
}

fn raw_letters() -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(letter(), 0..24)
}

fn knot(m: i64) -> TwistKnot {
    TwistKnot::new(m).unwrap()
}

proptest! {
    #[test]
    fn free_reduction_idempotent(ls in raw_letters()) {
        let once = free_reduce(&ls);
        prop_assert!(once.len() <= ls.len());
        prop_assert_eq!(free_reduce(&once), once);
    }

    #[test]
    fn word_operator_laws(ls in raw_letters()) {
        let w = GroupWord::from_letters(&ls);
        prop_assert_eq!(w.reverse().reverse(), w.clone());
        prop_assert_eq!(w.bar().bar(), w.clone());
        prop_assert_eq!(w.inverse(), w.reverse().bar());
        prop_assert!(w.mul(&w.inverse()).is_empty());
    }

    #[test]
    fn fundamental_identity_random_words(ls in raw_letters()) {
        prop_assert!(fundamental_identity_residual(&GroupWord::from_letters(&ls)).is_zero());
    }
}

#[test]
fn fundamental_identity_on_relators() {
    for m in (-6..=6).filter(|&m| m != 0) {
        assert!(
            fundamental_identity_residual(&presentation_word(&knot(m))).is_zero(),
            "m = {m}"
        );
    }
}

#[test]
fn fox_closed_form() {
    for m in 1..=6 {
        assert_eq!(
            fox_derivative(&presentation_word(&knot(m)), Gen::X),
            fox_x_closed_form(m),
            "m = {m}"
        );
    }
}

#[test]
fn riley_paths_agree() {
    for m in (-20..=20).filter(|&m| m != 0) {
        let k = knot(m);
        assert_eq!(
            riley_polynomial_matrix(&k).unwrap().phi,
            riley_polynomial_closed(&k).phi,
            "m = {m}"
        );
    }
}

#[test]
fn riley_degree_and_leading_coefficient() {
    for m in (-12..=12).filter(|&m| m != 0) {
        let phi = riley_polynomial_closed(&knot(m)).phi;
        let deg = if m > 0 { 2 * m - 1 } else { -2 * m };
        assert_eq!(phi.degree(Var::U), Some(deg as i32), "m = {m}");
        let top = phi.coefficients_in(Var::U).pop().unwrap();
        let expected = if m > 0 { -1 } else { 1 };
        assert_eq!(top, MPoly::from(expected), "m = {m}");
    }
}

#[test]
fn riley_symmetric_in_s() {
    for m in (-10..=10).filter(|&m| m != 0) {
        let phi = riley_polynomial_closed(&knot(m)).phi;
        assert_eq!(phi.reflect_s(), phi, "m = {m}");
        let at = |s: ExactScalar| {
            phi.eval_var(Var::S, &s)
                .unwrap()
                .eval_var(Var::U, &ExactScalar::new(-3, 7).unwrap())
                .unwrap()
        };
        assert_eq!(
            at(ExactScalar::new(5, 2).unwrap()),
            at(ExactScalar::new(2, 5).unwrap()),
            "m = {m}"
        );
    }
}

#[test]
fn cayley_hamilton_at_holonomy() {
    let w = riley_matrix_w().map(|e| e.eval_var(Var::S, &ExactScalar::one()).unwrap());
    let tau: MPoly = "u^2 + 2".parse().unwrap();
    let mut pows = vec![PolyMatrix::identity(2), w.clone()];
    for k in 2..=10 {
        pows.push(pows[k - 1].mul(&w).unwrap());
        let lhs = pows[k]
            .sub(&pows[k - 1].scale(&tau))
            .unwrap()
            .add(&pows[k - 2])
            .unwrap();
        assert_eq!(lhs, PolyMatrix::zero(2), "k = {k}");
    }
}
