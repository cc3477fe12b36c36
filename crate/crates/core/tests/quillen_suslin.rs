use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use syz_core::poly::{parse_polynomial, rat};
use syz_core::quillen_suslin::{bezout_lift_xn, check_completion, complete_constant, qs_transform, qs_transform_with, QsConfig};
use syz_core::random::{random_unimodular_matrix, PolySampler};
use syz_core::{PolyMatrix, Polynomial};

fn p(text: &str) -> Polynomial {
    parse_polynomial(text, &["x".to_string(), "y".to_string()]).unwrap()
}

#[test]
fn constant_completion_by_hand() {
    // F0 = [[1, 2, 3]]: the pivot is column 0, so U0 = [[1, -2, -3], [0, 1, 0], [0, 0, 1]].
    let f0 = PolyMatrix::from_rationals(&[vec![rat(1), rat(2), rat(3)]], 2);
    let expected = PolyMatrix::from_rationals(
        &[
            vec![rat(1), rat(-2), rat(-3)],
            vec![rat(0), rat(1), rat(0)],
            vec![rat(0), rat(0), rat(1)],
        ],
        2,
    );
    assert_eq!(complete_constant(&f0).unwrap(), expected);
}

#[test]
fn constant_completion_of_a_two_row_matrix() {
    let f0 = PolyMatrix::from_rationals(&[vec![rat(0), rat(2), rat(1)], vec![rat(1), rat(1), rat(0)]], 1);
    let u = complete_constant(&f0).unwrap();
    check_completion(&f0, &u).unwrap();
}

#[test]
fn bezout_lift_by_hand() {
    // x = x * (1 + x y) - x^2 * y, so the lift of x against (1 + x y, y) is (x, -x^2).
    let c = [p("1 + x*y"), p("y")];
    let a = bezout_lift_xn(&c, 0).unwrap();
    let x = p("x");
    assert_eq!(&(&a[0] * &c[0]) + &(&a[1] * &c[1]), x);
    // A unit entry gives the lift directly.
    let b = bezout_lift_xn(&[p("y"), p("3")], 1).unwrap();
    assert_eq!(&(&b[0] * &p("y")) + &(&b[1] * &p("3")), p("y"));
}

#[test]
fn completes_a_row_with_no_constant_entry() {
    // (1 - x y, x^2, y^2 + x): a unimodular row whose entries are all non-constant.
    let f = PolyMatrix::from_row(vec![p("1 - x*y"), p("x^2"), p("y^2 + x")], 2);
    assert_eq!(f.is_unimodular(), Ok(true));
    let cert = qs_transform(&f, 0).unwrap();
    cert.verify(&f).unwrap();
    assert!(cert.u.determinant().unwrap().is_unit());
}

#[test]
fn rejects_rows_that_are_not_unimodular() {
    let f = PolyMatrix::from_row(vec![p("x"), p("y")], 2);
    assert!(qs_transform(&f, 0).is_err());
}

#[test]
fn trace_factors_are_recorded_and_deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let f = random_unimodular_matrix(&mut rng, 1, 3, 5, &PolySampler::new(2, 1));
    let cfg = QsConfig {
        record_trace: true,
        ..QsConfig::with_seed(3)
    };
    let a = qs_transform_with(&f, &cfg).unwrap();
    let b = qs_transform_with(&f, &cfg).unwrap();
    a.verify(&f).unwrap();
    assert_eq!(a.u, b.u);
    assert_eq!(a.elimination_trace, b.elimination_trace);
    assert_eq!(a.trace_degrees, b.trace_degrees);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn completions_satisfy_the_contract(seed in 0u64..10_000, r in 1usize..=2, extra in 1usize..=2, factors in 1usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_unimodular_matrix(&mut rng, r, r + extra, factors, &PolySampler::new(2, 1));
        let cert = qs_transform(&f, seed).unwrap();
        check_completion(&f, &cert.u).unwrap();
        prop_assert!(num_bigint::BigInt::from(cert.degree) <= cert.degree_bound);
        prop_assert_eq!(qs_transform(&f, seed).unwrap().u, cert.u);
    }
}
