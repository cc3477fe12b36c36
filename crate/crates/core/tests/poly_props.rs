use proptest::prelude::*;
use syz_core::poly::{default_var_names, format_polynomial, gcd, parse_polynomial, rat};
use syz_core::{Monomial, Polynomial, Rational};

const NVARS: usize = 2;

fn poly(max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(((0..=max_deg, 0..=max_deg), -5i64..=5), 0..=max_terms).prop_map(|terms| {
        Polynomial::from_terms(
            NVARS,
            terms
                .into_iter()
                .map(|((i, j), c)| (Monomial::from_exponents(&[i, j]), rat(c))),
        )
    })
}

fn point() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(-4i64..=4, NVARS).prop_map(|v| v.into_iter().map(rat).collect())
}

proptest! {
    #[test]
    fn ring_axioms(f in poly(3, 5), g in poly(3, 5), h in poly(2, 4)) {
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(f in poly(3, 5), g in poly(3, 5), x in point()) {
        let fx = f.eval(&x).unwrap();
        let gx = g.eval(&x).unwrap();
        prop_assert_eq!((&f * &g).eval(&x).unwrap(), &fx * &gx);
        prop_assert_eq!((&f + &g).eval(&x).unwrap(), fx + gx);
    }

    #[test]
    fn division_reconstructs(f in poly(4, 6), g in poly(2, 3)) {
        prop_assume!(!g.is_zero());
        let (quot, rem) = f.div_rem(&g).unwrap();
        prop_assert_eq!(&(&quot * &g) + &rem, f);
    }

    #[test]
    fn exact_division_of_products(f in poly(3, 4), g in poly(3, 4)) {
        prop_assume!(!g.is_zero());
        prop_assert_eq!((&f * &g).divide_exact(&g).unwrap(), Some(f));
    }

    #[test]
    fn gcd_divides_and_recovers_common_factor(f in poly(2, 3), g in poly(2, 3), h in poly(2, 3)) {
        prop_assume!(!h.is_zero() && !(&f * &h).is_zero() && !(&g * &h).is_zero());
        let d = gcd(&(&f * &h), &(&g * &h));
        prop_assert!((&f * &h).divide_exact(&d).unwrap().is_some());
        prop_assert!((&g * &h).divide_exact(&d).unwrap().is_some());
        prop_assert!(d.divide_exact(&h).unwrap().is_some());
    }

    #[test]
    fn text_round_trip(f in poly(4, 6)) {
        let vars = default_var_names(NVARS);
        let text = format_polynomial(&f, &vars);
        prop_assert_eq!(parse_polynomial(&text, &vars).unwrap(), f);
    }
}

#[test]
fn parses_rational_coefficients_and_powers() {
    let vars = vec!["s".to_string(), "t".to_string()];
    let f = parse_polynomial("-2/5*s^2 + s*t/5 - 3", &vars).unwrap();
    let at = f.eval(&[rat(1), rat(5)]).unwrap();
    // -2/5 + 1 - 3
    assert_eq!(at, Rational::new(rat(-12).to_integer(), 5.into()));
    assert!(parse_polynomial("s + u", &vars).is_err());
}
