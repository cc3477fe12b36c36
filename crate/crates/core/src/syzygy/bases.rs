//! The basis constructions and the relations between them.

use super::conversion::{extend_tilde_m, ConversionPair};
use super::{verify_basis, Strategy, SyzygyBasis};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::polymat::PolyMatrix;
use crate::quillen_suslin::{qs_transform, CompletionCertificate};

fn range(a: usize, b: usize) -> Vec<usize> {
    (a..b).collect()
}

/// `(q U^1 - p U^2, U^3, ..., U^m)` for a completion `U` of `M` or a corrected `N**`.
pub fn basis_from_completion(u: &PolyMatrix, p: &Polynomial, q: &Polynomial) -> Result<PolyMatrix> {
    let (len, cols) = u.shape();
    if cols < 2 {
        return Err(Error::Shape(format!("need at least two columns, got {cols}")));
    }
    let first: Vec<Polynomial> = (0..len)
        .map(|i| &(q * u.get(i, 0)) - &(p * u.get(i, 1)))
        .collect();
    PolyMatrix::from_column(first, u.nvars()).hstack(&u.select_columns(&range(2, cols)))
}

/// `U` without its first two columns and its last row, for a completion `U` of `[M | (-q, p)^t]`.
pub fn basis_from_tilde_completion(u: &PolyMatrix) -> PolyMatrix {
    let n = u.rows();
    u.submatrix(&range(0, n - 1), &range(2, n))
}

/// Replaces column `i >= 3` of `N*` by `N*^i - lambda_i N*^1 - delta_i N*^2`
/// with `(lambda_i, delta_i)^t = M N*^i`, then forms the basis
/// `(q N**^1 - p N**^2, N**^3, ..., N**^m)`. Returns `(N**, basis)`.
pub fn correct_n_star(
    m: &PolyMatrix,
    p: &Polynomial,
    q: &Polynomial,
    n_star: &PolyMatrix,
) -> Result<(PolyMatrix, PolyMatrix)> {
    let len = n_star.rows();
    let mut nss = n_star.clone();
    for i in 2..len {
        let coeffs = m.try_mul(&n_star.select_columns(&[i]))?;
        nss.add_column_multiple(i, 0, &-coeffs.get(0, 0));
        nss.add_column_multiple(i, 1, &-coeffs.get(1, 0));
    }
    let basis = basis_from_completion(&nss, p, q)?;
    Ok((nss, basis))
}

fn finish(
    a: &[Polynomial],
    b: PolyMatrix,
    strategy: Strategy,
    certificate: CompletionCertificate,
) -> Result<SyzygyBasis> {
    let verification = verify_basis(a, &b);
    if !verification.passed() {
        return Err(Error::Verification(format!(
            "the {} construction produced a matrix that is not a syzygy basis",
            strategy.name()
        )));
    }
    Ok(SyzygyBasis {
        b,
        strategy,
        certificate,
        verification,
        conversion: None,
        m_used: None,
        warnings: Vec::new(),
    })
}

/// Completes `[M | (-q, p)^t]` and drops the first two columns and the last row.
pub fn basis_via_tilde_m(
    a: &[Polynomial],
    p: &Polynomial,
    q: &Polynomial,
    m: &PolyMatrix,
    seed: u64,
) -> Result<SyzygyBasis> {
    let tilde = extend_tilde_m(m, p, q)?;
    let cert = qs_transform(&tilde, seed)?;
    let b = basis_from_tilde_completion(&cert.u);
    finish(a, b, Strategy::ViaTildeM, cert)
}

/// Completes a unimodular `M` to `U*` and returns `(q U*^1 - p U*^2, U*^3, ..., U*^m)`.
pub fn basis_via_m(
    a: &[Polynomial],
    p: &Polynomial,
    q: &Polynomial,
    m: &PolyMatrix,
    seed: u64,
) -> Result<SyzygyBasis> {
    if !m.is_unimodular()? {
        return Err(Error::NotUnimodular(
            "M has a common zero of its maximal minors; replace it with make_unimodular_m first".into(),
        ));
    }
    let cert = qs_transform(m, seed)?;
    let b = basis_from_completion(&cert.u, p, q)?;
    finish(a, b, Strategy::ViaM, cert)
}

/// Extends `N` to a unimodular `N*` through a completion of `N^t`, corrects
/// its remaining columns with `M` and returns the resulting basis.
pub fn basis_via_n(a: &[Polynomial], p: &Polynomial, q: &Polynomial, pair: &ConversionPair, seed: u64) -> Result<SyzygyBasis> {
    let (n_star, cert) = extend_n(&pair.n, seed)?;
    let (_, b) = correct_n_star(&pair.m, p, q, &n_star)?;
    finish(a, b, Strategy::ViaN, cert)
}

/// `N* = (U^{-1})^t` for a completion `U` of `N^t`; its first two columns are `N`.
pub fn extend_n(n: &PolyMatrix, seed: u64) -> Result<(PolyMatrix, CompletionCertificate)> {
    let cert = qs_transform(&n.transpose(), seed)?;
    let n_star = cert.u.inverse_unimodular()?.transpose();
    if n_star.select_columns(&[0, 1]) != *n {
        return Err(Error::Internal("the extension of N does not start with N".into()));
    }
    Ok((n_star, cert))
}

/// `[[N^1, N^2, q N^1 - p N^2], [-e, f, 1 - e q - f p]]`, checked against `[M | (-q, p)] Ñ* = [I_2 | 0]`.
pub fn build_tilde_n_star(pair: &ConversionPair, p: &Polynomial, q: &Polynomial) -> Result<PolyMatrix> {
    let len = pair.n.rows();
    let nvars = p.nvars();
    let one = Polynomial::one(nvars);
    let mut t = PolyMatrix::zero(len + 1, 3, nvars);
    for i in 0..len {
        let (b, c) = (pair.n.get(i, 0), pair.n.get(i, 1));
        t.set(i, 0, b.clone());
        t.set(i, 1, c.clone());
        t.set(i, 2, &(q * b) - &(p * c));
    }
    t.set(len, 0, -&pair.e);
    t.set(len, 1, pair.f.clone());
    t.set(len, 2, &(&one - &(&pair.e * q)) - &(&pair.f * p));
    let tilde_m = pair.m.hstack(&PolyMatrix::from_column(vec![-q, p.clone()], nvars))?;
    let mut target = PolyMatrix::zero(2, 3, nvars);
    target.set(0, 0, one.clone());
    target.set(1, 1, one);
    if tilde_m.try_mul(&t)? != target {
        return Err(Error::Internal(
            "[M | (-q, p)] times the extended N is not [I_2 | 0]; M, N, e, f are inconsistent".into(),
        ));
    }
    Ok(t)
}

/// Result of [`aligned_bases_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlignmentStatus {
    /// The bases from `M` and from `N` coincide after alignment.
    Aligned,
    Mismatch,
    /// `M N != I_2`, so no aligned choice is predicted.
    Skipped,
}

/// For `M N = I_2`: completes `M` to `U0*`, moves its first two columns onto
/// `N` by subtracting kernel combinations, and compares the basis read off
/// this `U*` with the one the `N` route produces from `N* = U*`.
pub fn aligned_bases_check(
    a: &[Polynomial],
    p: &Polynomial,
    q: &Polynomial,
    pair: &ConversionPair,
    seed: u64,
) -> Result<AlignmentStatus> {
    let nvars = p.nvars();
    if pair.k != PolyMatrix::identity(2, nvars) {
        return Ok(AlignmentStatus::Skipped);
    }
    let len = pair.n.rows();
    let u0 = qs_transform(&pair.m, seed)?.u;
    let inv = u0.inverse_unimodular()?;
    let mut u_star = u0.clone();
    for i in 0..2 {
        // U0^i - N^i lies in ker M, spanned by U0^3..U0^m; its coordinates are rows 3.. of U0^{-1}.
        let diff = u0.select_columns(&[i]).try_sub(&pair.n.select_columns(&[i]))?;
        let y = inv.try_mul(&diff)?;
        if !y.get(0, 0).is_zero() || !y.get(1, 0).is_zero() {
            return Ok(AlignmentStatus::Mismatch);
        }
        for k in 2..len {
            u_star.add_column_multiple(i, k, &-y.get(k, 0));
        }
    }
    if u_star.select_columns(&[0, 1]) != pair.n {
        return Ok(AlignmentStatus::Mismatch);
    }
    let from_m = basis_from_completion(&u_star, p, q)?;
    let (nss, from_n) = correct_n_star(&pair.m, p, q, &u_star)?;
    let ok = nss == u_star && from_m == from_n && verify_basis(a, &from_m).passed();
    Ok(if ok { AlignmentStatus::Aligned } else { AlignmentStatus::Mismatch })
}

/// For a unimodular row `a`: the last `m - 1` columns of a completion of `a`.
pub fn unit_ideal_basis(a: &[Polynomial], seed: u64) -> Result<SyzygyBasis> {
    let nvars = a
        .first()
        .map(|x| x.nvars())
        .ok_or_else(|| Error::Shape("at least two generators required".into()))?;
    if a.len() < 2 {
        return Err(Error::Shape("at least two generators required".into()));
    }
    let row = PolyMatrix::from_row(a.to_vec(), nvars);
    let cert = qs_transform(&row, seed)?;
    let b = cert.u.select_columns(&range(1, a.len()));
    finish(a, b, Strategy::UnitIdealDirect, cert)
}
