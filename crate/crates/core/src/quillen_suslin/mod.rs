//! Completion of unimodular matrices.
//!
//! For an `r x s` matrix `F` whose maximal minors generate the unit ideal,
//! [`qs_transform`] returns an invertible `U` with `F U = [I_r | 0]`. Cheap
//! cases are handled directly: constant matrices by Gaussian elimination, a
//! constant maximal minor by block inversion, and `s = r + 1` by the right
//! inverse built from a Bezout identity on the minors together with the
//! vector of signed minors. Everything else goes row by row through the degree
//! descent in [`descent`]. The result is then degree-reduced column by column.

mod constant;
mod descent;
mod elimination;
mod lattice;
mod reduce;

pub use constant::complete_constant;
pub use elimination::{
    bezout_lift_xn, is_prepared, noether_prepare, resultant_for, sample_y_matrices, shift_matrix,
    NoetherPreparation, YSampling,
};
pub use reduce::{reduce_columns, reduce_modulo};
pub(crate) use reduce::monomials_of_degree;

use crate::bounds::{patch_budget, qs_explicit};
use crate::error::{Error, Result};
use crate::ideal::{groebner_basis, is_unit_ideal};
use crate::poly::{MonomialOrder, Polynomial};
use crate::polymat::{subsets, PolyMatrix};
use constant::identity_block;
use num_bigint::BigInt;
use rand::SeedableRng;

pub(crate) type RngState = rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QsConfig {
    pub seed: u64,
    /// Cap on random coordinate changes per row completion.
    pub max_retries: usize,
    /// Also compute the per-variable factors `U_n, ..., U_1, U_0`.
    pub record_trace: bool,
    /// Lower column degrees of the result by top-form cancellation.
    pub reduce_degrees: bool,
}

impl Default for QsConfig {
    fn default() -> Self {
        QsConfig {
            seed: 0,
            max_retries: 32,
            record_trace: false,
            reduce_degrees: true,
        }
    }
}

impl QsConfig {
    pub fn with_seed(seed: u64) -> Self {
        QsConfig {
            seed,
            ..Self::default()
        }
    }
}

/// Which construction produced the completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompletionMethod {
    Identity,
    Constant,
    Inverse,
    ConstantMinor,
    SignedMinors,
    Descent,
}

impl CompletionMethod {
    pub fn name(self) -> &'static str {
        match self {
            CompletionMethod::Identity => "identity",
            CompletionMethod::Constant => "constant",
            CompletionMethod::Inverse => "inverse",
            CompletionMethod::ConstantMinor => "constant-minor",
            CompletionMethod::SignedMinors => "signed-minors",
            CompletionMethod::Descent => "descent",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionCertificate {
    pub u: PolyMatrix,
    /// `U_n, ..., U_1, U_0` with `F|_{x_{i+1} = .. = x_n = 0} U_i = F|_{x_i = .. = x_n = 0}`
    /// and `U_0` constant; empty unless requested.
    pub elimination_trace: Vec<PolyMatrix>,
    pub degree: u32,
    pub rng_seed: u64,
    pub method: CompletionMethod,
    pub input_degree: u32,
    /// `3 n^2 (r(d+1))^(2n)`.
    pub degree_bound: BigInt,
    /// `3 (r(d+1))^(2n)`, the per-patch budget of the elimination procedure.
    pub patch_budget: BigInt,
    /// `(variable index, degree of its factor)` for each populated trace factor.
    pub trace_degrees: Vec<(usize, u32)>,
}

impl CompletionCertificate {
    /// Checks `F U = [I_r | 0]` and that `det U` is a nonzero constant.
    pub fn verify(&self, f: &PolyMatrix) -> Result<()> {
        check_completion(f, &self.u)?;
        if !self.elimination_trace.is_empty() {
            let mut prod = PolyMatrix::identity(self.u.rows(), self.u.nvars());
            for t in &self.elimination_trace {
                prod = prod.try_mul(t)?;
            }
            if prod != self.u {
                return Err(Error::Internal("elimination trace does not multiply to U".into()));
            }
        }
        Ok(())
    }
}

/// `F U = [I_r | 0]` and `det U` a nonzero constant.
pub fn check_completion(f: &PolyMatrix, u: &PolyMatrix) -> Result<()> {
    let (r, s) = f.shape();
    if u.shape() != (s, s) {
        return Err(Error::Shape(format!("expected {s}x{s} transform, got {:?}", u.shape())));
    }
    if f.try_mul(u)? != identity_block(r, s, f.nvars()) {
        return Err(Error::Internal("F U is not [I | 0]".into()));
    }
    if !u.determinant()?.is_unit() {
        return Err(Error::Internal("det U is not a nonzero constant".into()));
    }
    Ok(())
}

fn describe_minor_ideal(f: &PolyMatrix) -> String {
    let minors: Vec<Polynomial> = f.maximal_minors().into_iter().filter(|m| !m.is_zero()).collect();
    if minors.is_empty() {
        return "all maximal minors vanish".into();
    }
    let gb = groebner_basis(&minors, &MonomialOrder::grevlex(f.nvars()));
    let gens: Vec<String> = gb.basis.iter().map(|p| p.to_string()).collect();
    let text = gens.join(", ");
    if text.len() <= 200 {
        return format!("the maximal minors generate <{text}>");
    }
    let degrees: Vec<String> = gb.basis.iter().map(|p| p.total_degree().or_zero().to_string()).collect();
    format!(
        "the maximal minors generate a proper ideal with a reduced Groebner basis of degrees {}",
        degrees.join(", ")
    )
}

/// Completion with the default configuration and the given seed.
pub fn qs_transform(f: &PolyMatrix, seed: u64) -> Result<CompletionCertificate> {
    qs_transform_with(f, &QsConfig::with_seed(seed))
}

pub fn qs_transform_with(f: &PolyMatrix, cfg: &QsConfig) -> Result<CompletionCertificate> {
    let (r, s) = f.shape();
    let n = f.nvars();
    if r > s {
        return Err(Error::Shape(format!("completion needs r <= s, got {r}x{s}")));
    }
    let d = f.degree().or_zero();
    if r > 0 && !f.is_unimodular()? {
        return Err(Error::NotUnimodular(describe_minor_ideal(f)));
    }
    let u = complete(f, cfg)?;
    let (elimination_trace, trace_degrees) = if cfg.record_trace {
        trace(f, &u, cfg)?
    } else {
        (Vec::new(), Vec::new())
    };
    let degree = u.degree().or_zero();
    let bound = qs_explicit(n as u64, r as u64, d as u64);
    if BigInt::from(degree) > bound && !(r == 0 || f.is_constant()) {
        return Err(Error::Internal(format!(
            "completion degree {degree} exceeds the bound {bound}"
        )));
    }
    let cert = CompletionCertificate {
        degree,
        rng_seed: cfg.seed,
        method: method_for(f),
        input_degree: d,
        degree_bound: bound,
        patch_budget: patch_budget(n as u64, r as u64, d as u64),
        trace_degrees,
        elimination_trace,
        u,
    };
    cert.verify(f)?;
    Ok(cert)
}

/// The completion itself, verified. Unless `F` is constant (where the
/// Gaussian-elimination form is kept), the determinant is normalised to one
/// when `s > r`.
fn complete(f: &PolyMatrix, cfg: &QsConfig) -> Result<PolyMatrix> {
    let (r, s) = f.shape();
    let nvars = f.nvars();
    let mut rng = RngState::seed_from_u64(cfg.seed);
    let mut u = complete_matrix(f, &mut rng, cfg.max_retries)?;
    if cfg.reduce_degrees && s > r && !u.is_constant() {
        u = polish(&u, r);
    }
    if s > r && !f.is_constant() {
        let det = u.determinant()?;
        let c = det
            .constant_value()
            .filter(|c| !num_traits::Zero::is_zero(c))
            .ok_or_else(|| Error::Internal("completion is not invertible".into()))?;
        if !num_traits::One::is_one(&c) {
            u.scale_column(s - 1, &Polynomial::constant(nvars, c.recip()));
        }
    }
    check_completion(f, &u)?;
    Ok(u)
}

/// Reduces the kernel columns against each other, then the first `r` columns modulo them.
fn polish(u: &PolyMatrix, r: usize) -> PolyMatrix {
    let s = u.cols();
    let b = u.select_columns(&(0..r).collect::<Vec<_>>());
    let k = u.select_columns(&(r..s).collect::<Vec<_>>());
    let k = reduce_columns(&k);
    let b = reduce_modulo(&b, &k);
    b.hstack(&k).expect("same row count")
}

fn method_for(f: &PolyMatrix) -> CompletionMethod {
    let (r, s) = f.shape();
    if f.is_constant() {
        CompletionMethod::Constant
    } else if *f == identity_block(r, s, f.nvars()) {
        CompletionMethod::Identity
    } else if r == s {
        CompletionMethod::Inverse
    } else if constant_minor(f).is_some() {
        CompletionMethod::ConstantMinor
    } else if s == r + 1 {
        CompletionMethod::SignedMinors
    } else {
        CompletionMethod::Descent
    }
}

fn constant_minor(f: &PolyMatrix) -> Option<Vec<usize>> {
    f.column_minors()
        .into_iter()
        .find(|(_, d)| d.is_unit())
        .map(|(cols, _)| cols)
}

/// `U` with `F U = [I_r | 0]`, not yet normalised or reduced.
pub(crate) fn complete_matrix(f: &PolyMatrix, rng: &mut RngState, retries: usize) -> Result<PolyMatrix> {
    let (r, s) = f.shape();
    let nvars = f.nvars();
    if r == 0 {
        return Ok(PolyMatrix::identity(s, nvars));
    }
    if f.is_constant() {
        return complete_constant(f);
    }
    if *f == identity_block(r, s, nvars) {
        return Ok(PolyMatrix::identity(s, nvars));
    }
    if r == s {
        return f.inverse_unimodular();
    }
    if let Some(cols) = constant_minor(f) {
        return complete_from_minor(f, &cols);
    }
    if s == r + 1 {
        return complete_signed_minors(f);
    }
    if r == 1 {
        return descent::complete_row(&f.row(0), rng, retries);
    }
    // First row, then the remaining rows on the complementary columns.
    let u1 = polish(&descent::complete_row(&f.row(0), rng, retries)?, 1);
    let g = f.try_mul(&u1)?;
    let rest: Vec<usize> = (1..r).collect();
    let tail: Vec<usize> = (1..s).collect();
    let w = g.submatrix(&rest, &tail);
    let c = g.submatrix(&rest, &[0]);
    let uw = complete_matrix(&w, rng, retries)?;
    let b = uw.select_columns(&(0..r - 1).collect::<Vec<_>>());
    let bc = b.try_mul(&c)?;
    // U = U1 [[1, 0], [-B c, U_W]]
    let block = PolyMatrix::from_fn(s, s, nvars, |i, j| match (i, j) {
        (0, 0) => Polynomial::one(nvars),
        (0, _) => Polynomial::zero(nvars),
        (_, 0) => -bc.get(i - 1, 0),
        _ => uw.get(i - 1, j - 1).clone(),
    });
    u1.try_mul(&block)
}

/// `Π [[F_S^-1, -F_S^-1 F_T], [0, I]]` for a column set `S` with constant minor.
fn complete_from_minor(f: &PolyMatrix, cols: &[usize]) -> Result<PolyMatrix> {
    let (r, s) = f.shape();
    let nvars = f.nvars();
    let rest: Vec<usize> = (0..s).filter(|j| !cols.contains(j)).collect();
    let fs_inv = f.select_columns(cols).inverse_unimodular()?;
    let top_right = -&fs_inv.try_mul(&f.select_columns(&rest))?;
    let mut u = PolyMatrix::zero(s, s, nvars);
    for (a, &pj) in cols.iter().enumerate() {
        for i in 0..r {
            u.set(pj, i, fs_inv.get(a, i).clone());
        }
        for b in 0..rest.len() {
            u.set(pj, r + b, top_right.get(a, b).clone());
        }
    }
    for (b, &tj) in rest.iter().enumerate() {
        u.set(tj, r + b, Polynomial::one(nvars));
    }
    Ok(u)
}

/// Right inverse from a Bezout identity on the maximal minors.
///
/// `B = sum_S beta_S E_S adj(F_S)` where `sum beta_S det F_S = 1` and `E_S`
/// places the rows of `adj(F_S)` at the positions `S`.
pub fn right_inverse(f: &PolyMatrix) -> Result<PolyMatrix> {
    let (r, s) = f.shape();
    let nvars = f.nvars();
    let sets = subsets(s, r);
    let minors = f.maximal_minors();
    let beta = is_unit_ideal(&minors).ok_or_else(|| Error::NotUnimodular(describe_minor_ideal(f)))?;
    let mut b = PolyMatrix::zero(s, r, nvars);
    for (set, coef) in sets.iter().zip(&beta) {
        if coef.is_zero() {
            continue;
        }
        let adj = f.select_columns(set).adjugate()?;
        for (a, &row) in set.iter().enumerate() {
            for j in 0..r {
                let add = coef * adj.get(a, j);
                let v = b.get(row, j) + &add;
                b.set(row, j, v);
            }
        }
    }
    Ok(b)
}

/// `[B | k]` for `s = r + 1`, with `k` the signed maximal minors spanning the kernel.
fn complete_signed_minors(f: &PolyMatrix) -> Result<PolyMatrix> {
    let b = right_inverse(f)?;
    let k = PolyMatrix::from_column(f.signed_maximal_minors()?, f.nvars());
    b.hstack(&k)
}

/// Per-variable factors: with `Q_k` a completion of `F` with `x_{k+1}, ..., x_n`
/// set to zero, `U_k = Q_k Q_{k-1}^-1` and `U_0 = Q_0`.
fn trace(f: &PolyMatrix, u: &PolyMatrix, cfg: &QsConfig) -> Result<(Vec<PolyMatrix>, Vec<(usize, u32)>)> {
    let n = f.nvars();
    let zero = num_bigint::BigInt::from(0);
    let mut qs = vec![u.clone()];
    let mut fk = f.clone();
    let sub_cfg = QsConfig {
        record_trace: false,
        ..cfg.clone()
    };
    for k in (0..n).rev() {
        fk = fk.partial_eval(k, &crate::poly::Rational::from_integer(zero.clone()));
        qs.push(complete(&fk, &sub_cfg)?);
    }
    // qs = [Q_n, Q_{n-1}, ..., Q_0]
    let mut factors = Vec::with_capacity(n + 1);
    let mut degrees = Vec::with_capacity(n + 1);
    for i in 0..n {
        let inv = qs[i + 1].inverse_unimodular()?;
        let t = qs[i].try_mul(&inv)?;
        degrees.push((n - 1 - i, t.degree().or_zero()));
        factors.push(t);
    }
    factors.push(qs[n].clone());
    Ok((factors, degrees))
}

/// A unimodular `U` with `F U = F|_{x_var = 0}`, obtained as `Q Q_0^-1` for
/// completions `Q` of `F` and `Q_0` of `F|_{x_var = 0}`.
pub fn eliminate_variable(f: &PolyMatrix, var: usize, seed: u64) -> Result<PolyMatrix> {
    let nvars = f.nvars();
    if var >= nvars {
        return Err(Error::VariableOutOfRange { index: var, nvars });
    }
    let s = f.cols();
    if f.entries().all(|p| p.is_free_of(var)) {
        return Ok(PolyMatrix::identity(s, nvars));
    }
    let (r, _) = f.shape();
    if r > s {
        return Err(Error::Shape(format!("completion needs r <= s, got {r}x{s}")));
    }
    if r > 0 && !f.is_unimodular()? {
        return Err(Error::NotUnimodular(describe_minor_ideal(f)));
    }
    let cfg = QsConfig::with_seed(seed);
    let q = complete(f, &cfg)?;
    let f0 = f.partial_eval(var, &crate::poly::Rational::from_integer(0.into()));
    let q0 = complete(&f0, &cfg)?;
    let u = q.try_mul(&q0.inverse_unimodular()?)?;
    if f.try_mul(&u)? != f0 {
        return Err(Error::Internal("elimination transform check failed".into()));
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::default_var_names;
    use crate::polymat::parse_matrix;

    fn m(s: &str, n: usize) -> PolyMatrix {
        parse_matrix(s, &default_var_names(n)).unwrap()
    }

    #[test]
    fn pair_completion_matches_hand_expansion() {
        let f = m("x1; 1 - x1", 1);
        let cert = qs_transform(&f, 0).unwrap();
        assert_eq!(cert.u, m("1; x1 - 1\n1; x1", 1));
        assert_eq!(cert.u.determinant().unwrap(), Polynomial::one(1));
    }

    #[test]
    fn identity_block_is_left_alone() {
        let f = m("1; 0; 0\n0; 1; 0", 2);
        assert_eq!(qs_transform(&f, 0).unwrap().u, PolyMatrix::identity(3, 2));
    }

    #[test]
    fn elimination_of_the_only_variable() {
        let f = m("x1; 1 - x1", 1);
        let u = eliminate_variable(&f, 0, 0).unwrap();
        assert_eq!(u, m("x1 - 1; 1\nx1; 1", 1));
    }
}
