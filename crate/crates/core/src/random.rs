//! Seeded generators for test and benchmark inputs.
//!
//! Polynomials have integer coefficients drawn uniformly from
//! `[-coeff, coeff]`, each monomial of degree at most `max_degree` being
//! present with probability `density`. Unimodular matrices are rows of
//! products of elementary matrices, so they are unimodular by construction.

use crate::ideal::{grade_two_check, ideal_equal, GradeTwoStatus};
use crate::poly::{default_var_names, Polynomial, Rational};
use crate::polymat::PolyMatrix;
use crate::quillen_suslin::reduce_modulo;
use crate::syzygy::Grade2Instance;
use rand::Rng;

/// Distribution of random polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct PolySampler {
    pub nvars: usize,
    pub max_degree: u32,
    pub density: f64,
    pub coeff: i64,
}

impl PolySampler {
    pub fn new(nvars: usize, max_degree: u32) -> Self {
        PolySampler {
            nvars,
            max_degree,
            density: 0.5,
            coeff: 3,
        }
    }

    pub fn density(mut self, density: f64) -> Self {
        self.density = density;
        self
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> Polynomial {
        let mut terms = Vec::new();
        for d in 0..=self.max_degree {
            for mono in crate::quillen_suslin::monomials_of_degree(self.nvars, d) {
                if rng.random_bool(self.density) {
                    let c = rng.random_range(-self.coeff..=self.coeff);
                    if c != 0 {
                        terms.push((mono, Rational::from_integer(c.into())));
                    }
                }
            }
        }
        Polynomial::from_terms(self.nvars, terms)
    }

    /// A sample of total degree exactly `max_degree`.
    pub fn sample_full_degree<R: Rng>(&self, rng: &mut R) -> Polynomial {
        loop {
            let p = self.sample(rng);
            if p.total_degree().finite() == Some(self.max_degree) {
                return p;
            }
        }
    }
}

/// Product of `factors` random elementary matrices `I + c E_ij` of size `s`.
pub fn random_elementary_product<R: Rng>(rng: &mut R, s: usize, factors: usize, sampler: &PolySampler) -> PolyMatrix {
    let mut e = PolyMatrix::identity(s, sampler.nvars);
    for _ in 0..factors {
        let i = rng.random_range(0..s);
        let mut j = i;
        while j == i {
            j = rng.random_range(0..s);
        }
        e.add_row_multiple(i, j, &sampler.sample(rng));
    }
    e
}

/// The first `r` rows of [`random_elementary_product`].
pub fn random_unimodular_matrix<R: Rng>(
    rng: &mut R,
    r: usize,
    s: usize,
    factors: usize,
    sampler: &PolySampler,
) -> PolyMatrix {
    random_elementary_product(rng, s, factors, sampler).select_rows(&(0..r).collect::<Vec<_>>())
}

fn random_pq<R: Rng>(rng: &mut R, nvars: usize, deg_pq: u32) -> (Polynomial, Polynomial) {
    loop {
        let dp = rng.random_range(1..=deg_pq);
        let dq = rng.random_range(1..=deg_pq);
        let p = PolySampler::new(nvars, dp).sample_full_degree(rng);
        let q = PolySampler::new(nvars, dq).sample_full_degree(rng);
        if grade_two_check(&p, &q) == Ok(GradeTwoStatus::GradeTwo) {
            return (p, q);
        }
    }
}

/// A grade-two instance in `nvars` variables with `m` generators: random
/// coprime `p, q` of degree at most `deg_pq` generating a proper ideal, a
/// random `2 x m` matrix `M` of degree at most `deg_m` and `a = (p q) M`.
/// Draws are repeated until `<a> = <p, q>`. `M` is stored in the instance.
pub fn random_grade_two_instance<R: Rng>(rng: &mut R, nvars: usize, m: usize, deg_pq: u32, deg_m: u32) -> Grade2Instance {
    let sampler = PolySampler::new(nvars, deg_m);
    loop {
        let (p, q) = random_pq(rng, nvars, deg_pq);
        let mat = PolyMatrix::from_fn(2, m, nvars, |_, _| sampler.sample(rng));
        // Keep M reduced modulo the syzygy (-q, p), as a conversion matrix would be.
        let mat = reduce_modulo(&mat, &PolyMatrix::from_column(vec![-&q, p.clone()], nvars));
        let a = PolyMatrix::from_row(vec![p.clone(), q.clone()], nvars)
            .try_mul(&mat)
            .expect("shapes agree")
            .row(0);
        if a.iter().any(|x| x.is_zero()) {
            continue;
        }
        if ideal_equal(&a, &[p.clone(), q.clone()]) != Ok(true) {
            continue;
        }
        let mut inst = Grade2Instance::new(default_var_names(nvars), a, p, q);
        inst.m = Some(mat);
        inst.zero_dimensional = nvars == 2;
        return inst;
    }
}

/// A grade-two instance with `M N = I_2`: `M` is the first two rows of the
/// inverse of a random elementary product `W` and `N` its first two columns.
pub fn random_orthogonal_instance<R: Rng>(rng: &mut R, nvars: usize, m: usize, deg_pq: u32, factors: usize) -> Grade2Instance {
    let sampler = PolySampler::new(nvars, 1);
    loop {
        let (p, q) = random_pq(rng, nvars, deg_pq);
        let w = random_elementary_product(rng, m, factors, &sampler);
        let winv = w.inverse_unimodular().expect("elementary products are invertible");
        let mat = winv.select_rows(&[0, 1]);
        let n = w.select_columns(&[0, 1]);
        let a = PolyMatrix::from_row(vec![p.clone(), q.clone()], nvars)
            .try_mul(&mat)
            .expect("shapes agree")
            .row(0);
        if a.iter().any(|x| x.is_zero()) {
            continue;
        }
        let mut inst = Grade2Instance::new(default_var_names(nvars), a, p, q);
        inst.m = Some(mat);
        inst.n = Some(n);
        inst.zero_dimensional = nvars == 2;
        return inst;
    }
}
