use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use syz_core::poly::rat;
use syz_core::random::{random_elementary_product, PolySampler};
use syz_core::{Monomial, PolyMatrix, Polynomial};

const NVARS: usize = 2;

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(((0..=2u32, 0..=2u32), -3i64..=3), 0..=3).prop_map(|terms| {
        Polynomial::from_terms(
            NVARS,
            terms
                .into_iter()
                .map(|((i, j), c)| (Monomial::from_exponents(&[i, j]), rat(c))),
        )
    })
}

fn square(n: usize) -> impl Strategy<Value = PolyMatrix> {
    prop::collection::vec(poly(), n * n).prop_map(move |e| {
        let rows = e.chunks(n).map(|r| r.to_vec()).collect();
        PolyMatrix::from_rows(rows, NVARS).unwrap()
    })
}

proptest! {
    #[test]
    fn determinant_is_multiplicative(a in square(3), b in square(3)) {
        let ab = a.try_mul(&b).unwrap();
        prop_assert_eq!(ab.determinant().unwrap(), &a.determinant().unwrap() * &b.determinant().unwrap());
    }

    #[test]
    fn adjugate_identity(a in square(3)) {
        let d = a.determinant().unwrap();
        let expected = PolyMatrix::identity(3, NVARS).scale(&d);
        prop_assert_eq!(a.try_mul(&a.adjugate().unwrap()).unwrap(), expected);
    }

    #[test]
    fn transpose_reverses_products(a in square(2), b in square(2)) {
        let lhs = a.try_mul(&b).unwrap().transpose();
        prop_assert_eq!(lhs, b.transpose().try_mul(&a.transpose()).unwrap());
    }

    #[test]
    fn elementary_products_are_invertible(seed in 0u64..500, s in 2usize..5, factors in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_elementary_product(&mut rng, s, factors, &PolySampler::new(NVARS, 2));
        prop_assert!(e.determinant().unwrap().is_one());
        prop_assert!(e.try_mul(&e.inverse_unimodular().unwrap()).unwrap().is_identity());
        prop_assert_eq!(e.select_rows(&[0]).is_unimodular(), Ok(true));
    }
}

#[test]
fn row_with_common_zero_is_not_unimodular() {
    let x = Polynomial::var(NVARS, 0);
    let y = Polynomial::var(NVARS, 1);
    let f = PolyMatrix::from_row(vec![x.clone(), y.clone(), &x * &y], NVARS);
    assert_eq!(f.is_unimodular(), Ok(false));
    let g = PolyMatrix::from_row(vec![x.clone(), &Polynomial::one(NVARS) - &x], NVARS);
    assert_eq!(g.is_unimodular(), Ok(true));
}

#[test]
fn maximal_minors_of_a_two_by_three() {
    let x = Polynomial::var(NVARS, 0);
    let one = Polynomial::one(NVARS);
    let zero = Polynomial::zero(NVARS);
    let f = PolyMatrix::from_rows(vec![vec![one.clone(), x.clone(), zero.clone()], vec![zero, one.clone(), x.clone()]], NVARS)
        .unwrap();
    let mut minors = f.maximal_minors();
    minors.sort_by_key(|m| m.to_string());
    // columns {0,1}: 1, {0,2}: x, {1,2}: x^2
    let mut expected = vec![one, x.clone(), &x * &x];
    expected.sort_by_key(|m| m.to_string());
    assert_eq!(minors, expected);
}
