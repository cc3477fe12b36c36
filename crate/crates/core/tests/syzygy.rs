use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use syz_core::instance::{parse_instance, parse_matrix_file};
use syz_core::random::random_orthogonal_instance;
use syz_core::syzygy::{
    basis_from_completion, basis_from_tilde_completion, change_of_basis, compute_syzygy_basis, conversion_for,
    correct_n_star, verify_basis,
};
use syz_core::{Error, Grade2Instance, PolyMatrix, Polynomial, Strategy, StrategyChoice};

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn instance(name: &str) -> Grade2Instance {
    parse_instance(&fixture(name)).unwrap()
}

fn matrix(inst: &Grade2Instance, name: &str) -> PolyMatrix {
    parse_matrix_file(&fixture(name), &inst.vars).unwrap()
}

#[test]
fn printed_n_star_corrects_to_printed_n_star_star() {
    let inst = instance("ex51");
    let m = inst.m.clone().unwrap();
    let (nss, basis) = correct_n_star(&m, &inst.p, &inst.q, &matrix(&inst, "ex51_n_star")).unwrap();
    assert_eq!(nss, matrix(&inst, "ex51_n_star_star"));
    // The printed basis takes the first column with the opposite sign.
    let mut printed = matrix(&inst, "ex51_n_hat");
    printed.scale_column(0, &Polynomial::from_int(inst.nvars(), -1));
    assert_eq!(basis, printed);
}

#[test]
fn printed_u_star_completes_m_and_fixes_the_misprinted_entry() {
    let inst = instance("ex51");
    let m = inst.m.clone().unwrap();
    let u_star = matrix(&inst, "ex51_u_star");
    let product = m.try_mul(&u_star).unwrap();
    assert!(product.select_columns(&[0, 1]).is_identity());
    assert!(product.select_columns(&(2..product.cols()).collect::<Vec<_>>()).is_zero());
    let det = u_star.determinant().unwrap().constant_value().unwrap();
    assert_eq!(det, syz_core::poly::ratio(-1, 5));

    let rebuilt = basis_from_completion(&u_star, &inst.p, &inst.q).unwrap();
    assert!(verify_basis(&inst.a, &rebuilt).passed());
    let printed = matrix(&inst, "ex51_uhat_star");
    let report = verify_basis(&inst.a, &printed);
    assert_eq!(report.syzygy_ok, vec![false, true, true]);
    // Only the (1, 1) entry was misprinted.
    let mut fixed = printed.clone();
    fixed.set(0, 0, rebuilt.get(0, 0).clone());
    assert_eq!(fixed, rebuilt);
}

#[test]
fn second_example_reads_u_hat_off_u() {
    let inst = instance("ex52");
    let u = matrix(&inst, "ex52_u");
    assert_eq!(basis_from_tilde_completion(&u), matrix(&inst, "ex52_uhat"));
}

#[test]
fn strategies_agree_up_to_a_change_of_basis() {
    for name in ["ex51", "ex52"] {
        let inst = instance(name);
        let bases: Vec<PolyMatrix> = [Strategy::ViaTildeM, Strategy::ViaM, Strategy::ViaN]
            .into_iter()
            .map(|s| compute_syzygy_basis(&inst, StrategyChoice::Fixed(s), 1, false).unwrap().b)
            .collect();
        for w in bases.windows(2) {
            let t = change_of_basis(&w[0], &w[1]).unwrap();
            assert_eq!(w[1].try_mul(&t).unwrap(), w[0]);
            assert!(t.determinant().unwrap().is_unit());
        }
    }
}

#[test]
fn verification_rejects_non_bases() {
    let inst = instance("ex52");
    let good = matrix(&inst, "ex52_uhat");
    assert!(verify_basis(&inst.a, &good).passed());
    // Multiplying a column by s keeps the syzygy relation but breaks the minors condition.
    let mut scaled = good.clone();
    scaled.scale_column(0, &Polynomial::var(inst.nvars(), 0));
    let mut report = verify_basis(&inst.a, &scaled);
    assert!(report.syzygy_ok.iter().all(|&ok| ok));
    assert!(!report.passed());
    let mut perturbed = good;
    perturbed.set(0, 0, &perturbed.get(0, 0).clone() + &Polynomial::one(inst.nvars()));
    report = verify_basis(&inst.a, &perturbed);
    assert!(!report.syzygy_ok[0]);
}

#[test]
fn conversion_pairs_of_orthogonal_instances_multiply_to_identity() {
    for seed in 0..5 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_orthogonal_instance(&mut rng, 2, 3, 2, 3);
        let pair = conversion_for(&inst).unwrap();
        assert!(pair.m.try_mul(&pair.n).unwrap().is_identity());
        assert!(pair.e.is_zero() && pair.f.is_zero());
    }
}

#[test]
fn common_factor_needs_stripping() {
    let text = "vars: x y\na1: x^2\na2: x*y\np: x^2\nq: x*y\n";
    let inst = parse_instance(text).unwrap();
    assert!(matches!(
        compute_syzygy_basis(&inst, StrategyChoice::Auto, 0, false),
        Err(Error::CommonFactor(_))
    ));
}
