use proptest::prelude::*;
use twist_torsion::algebra::{ExactScalar, MPoly, PolyMatrix, Var};

fn term(c: i64, es: i32, eu: u32, et: u32) -> MPoly {
    let mut p = MPoly::from(c);
    p = &p * &MPoly::var_pow(Var::S, es);
    p = &p * &MPoly::var(Var::U).pow(eu);
    &p * &MPoly::var(Var::T).pow(et)
}

fn sparse_poly() -> impl Strategy<Value = MPoly> {
    prop::collection::vec((-6i64..=6, -2i32..=2, 0u32..=3, 0u32..=2), 0..6).prop_map(|ts| {
        ts.into_iter()
            .fold(MPoly::zero(), |acc, (c, es, eu, et)| &acc + &term(c, es, eu, et))
    })
}

fn rational() -> impl Strategy<Value = ExactScalar> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| ExactScalar::new(n, d).unwrap())
}

fn rational_matrix() -> impl Strategy<Value = PolyMatrix> {
    prop::collection::vec(rational(), 9).prop_map(|v| {
        let rows = v
            .chunks(3)
            .map(|r| r.iter().map(|c| MPoly::constant(c.clone())).collect())
            .collect();
        PolyMatrix::from_rows(rows).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ring_laws(p in sparse_poly(), q in sparse_poly(), r in sparse_poly()) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p - &p, MPoly::zero());
    }

    #[test]
    fn exact_division_inverts_multiplication(a in sparse_poly(), b in sparse_poly()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn text_round_trip(p in sparse_poly()) {
        prop_assert_eq!(p.to_string().parse::<MPoly>().unwrap(), p);
    }

    #[test]
    fn det_one_plus_sigma(a in rational_matrix()) {
        let (s1, s2, s3) = a.sigma_invariants().unwrap();
        let lhs = PolyMatrix::identity(3).add(&a).unwrap().det();
        prop_assert_eq!(lhs, &(&(&MPoly::one() + &s1) + &s2) + &s3);
    }

    #[test]
    fn sigma2_is_inverse_trace_times_det(a in rational_matrix()) {
        let d = a.det().constant_value().unwrap();
        prop_assume!(!d.is_zero());
        let inv = a.adjugate().scale_scalar(&d.recip().unwrap());
        prop_assert_eq!(inv.mul(&a).unwrap(), PolyMatrix::identity(3));
        let (_, s2, _) = a.sigma_invariants().unwrap();
        prop_assert_eq!(s2, inv.trace().scale(&d));
    }

    #[test]
    fn minor_expansion(a in rational_matrix(), b in rational_matrix()) {
        let direct = &(&a.trace() * &b.trace()) - &a.mul(&b).unwrap().trace();
        prop_assert_eq!(PolyMatrix::minor_expansion_identity(&a, &b).unwrap(), direct);
    }
}

#[test]
fn sigma_of_identity_and_zero() {
    let (s1, s2, s3) = PolyMatrix::identity(3).sigma_invariants().unwrap();
    assert_eq!((s1, s2, s3), (MPoly::from(3), MPoly::from(3), MPoly::from(1)));
    let (s1, s2, s3) = PolyMatrix::zero(3).sigma_invariants().unwrap();
    assert!(s1.is_zero() && s2.is_zero() && s3.is_zero());
    assert_eq!(
        PolyMatrix::minor_expansion_identity(&PolyMatrix::identity(3), &PolyMatrix::identity(3)).unwrap(),
        MPoly::from(6)
    );
}

#[test]
fn symbolic_sigma_identity() {
    let a = PolyMatrix::parse_rows(&[&["s", "u", "1"], &["t", "s^-1", "u^2"], &["2", "s*t", "u - 1"]]).unwrap();
    let (s1, s2, s3) = a.sigma_invariants().unwrap();
    let lhs = PolyMatrix::identity(3).add(&a).unwrap().det();
    assert_eq!(lhs, &(&(&MPoly::one() + &s1) + &s2) + &s3);
}
