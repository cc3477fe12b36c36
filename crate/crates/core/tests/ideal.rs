use proptest::prelude::*;
use syz_core::ideal::{grade_two_check, ideal_equal, is_unit_ideal, is_unit_ideal_mod_p, represent_in_ideal, GradeTwoStatus};
use syz_core::poly::{parse_polynomial, rat};
use syz_core::{Monomial, Polynomial};

fn p(text: &str) -> Polynomial {
    parse_polynomial(text, &["x".to_string(), "y".to_string()]).unwrap()
}

fn combine(coeffs: &[Polynomial], gens: &[Polynomial]) -> Polynomial {
    coeffs
        .iter()
        .zip(gens)
        .fold(Polynomial::zero(2), |acc, (c, g)| &acc + &(c * g))
}

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(((0..=2u32, 0..=2u32), -3i64..=3), 1..=3).prop_map(|terms| {
        Polynomial::from_terms(2, terms.into_iter().map(|((i, j), c)| (Monomial::from_exponents(&[i, j]), rat(c))))
    })
}

#[test]
fn unit_ideal_certificate_sums_to_one() {
    let gens = [p("x*y - 1"), p("x^2 + y"), p("y^2")];
    let cof = is_unit_ideal(&gens).expect("unit ideal");
    assert!(combine(&cof, &gens).is_one());
    assert_eq!(is_unit_ideal_mod_p(&gens), Some(true));
}

#[test]
fn proper_ideal_has_no_certificate() {
    let gens = [p("x^2 - y"), p("x*y - 1")];
    assert!(is_unit_ideal(&gens).is_none());
    assert_eq!(is_unit_ideal_mod_p(&gens), Some(false));
}

#[test]
fn grade_two_classification() {
    assert_eq!(grade_two_check(&p("x"), &p("y")), Ok(GradeTwoStatus::GradeTwo));
    assert_eq!(grade_two_check(&p("x"), &p("1 - x")), Ok(GradeTwoStatus::UnitIdeal));
    assert!(matches!(grade_two_check(&p("x*y"), &p("x^2")), Ok(GradeTwoStatus::CommonFactor(_))));
}

#[test]
fn ideal_equality_ignores_generating_sets() {
    assert_eq!(ideal_equal(&[p("x"), p("y")], &[p("x + y"), p("x - y"), p("x*y")]), Ok(true));
    assert_eq!(ideal_equal(&[p("x"), p("y")], &[p("x"), p("y^2")]), Ok(false));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn combinations_are_represented(c1 in poly(), c2 in poly(), c3 in poly()) {
        let gens = [p("x^2 - y"), p("x*y + 1"), p("y^2 - x")];
        let f = combine(&[c1, c2, c3], &gens);
        let cof = represent_in_ideal(&f, &gens).expect("member");
        prop_assert_eq!(combine(&cof, &gens), f);
    }

    #[test]
    fn modular_test_agrees_on_products(g in poly(), h in poly()) {
        // <g h, g> = <g> is proper unless g is a nonzero constant.
        let gens = [&g * &h, g.clone()];
        if let Some(unit) = is_unit_ideal_mod_p(&gens) {
            prop_assert_eq!(unit, g.is_unit());
        }
    }
}
