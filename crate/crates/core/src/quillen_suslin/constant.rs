use crate::error::{Error, Result};
use crate::poly::{Polynomial, Rational};
use crate::polymat::PolyMatrix;
use num_traits::{One, Zero};

/// Columns of a rational `r x s` matrix forming an invertible `r x r` block,
/// chosen greedily from the left, or `None` when the rank is below `r`.
pub(crate) fn pivot_columns(rows: &[Vec<Rational>], cols: usize) -> Option<Vec<usize>> {
    let r = rows.len();
    let mut echelon: Vec<(usize, Vec<Rational>)> = Vec::new();
    let mut pivots = Vec::with_capacity(r);
    for j in 0..cols {
        let mut col: Vec<Rational> = rows.iter().map(|row| row[j].clone()).collect();
        for (p, basis) in &echelon {
            if !col[*p].is_zero() {
                let f = &col[*p] / &basis[*p];
                for (c, b) in col.iter_mut().zip(basis) {
                    *c -= &f * b;
                }
            }
        }
        if let Some(p) = col.iter().position(|c| !c.is_zero()) {
            echelon.push((p, col));
            pivots.push(j);
            if pivots.len() == r {
                return Some(pivots);
            }
        }
    }
    (r == 0).then(Vec::new)
}

/// Inverse of a square rational matrix by Gauss-Jordan elimination.
pub(crate) fn invert_rational(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot_row = a[c].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Completes a constant full-rank `r x s` matrix `F0` to an invertible constant
/// `U0` with `F0 * U0 = [I_r | 0]`.
///
/// With `S` the greedy pivot columns and `T` the rest, `U0` is the column
/// permutation bringing `S` to the front times `[[F_S^-1, -F_S^-1 F_T], [0, I]]`.
pub fn complete_constant(f0: &PolyMatrix) -> Result<PolyMatrix> {
    let (r, s) = f0.shape();
    let nvars = f0.nvars();
    let rows = f0
        .to_rationals()
        .ok_or_else(|| Error::Shape("complete_constant needs a constant matrix".into()))?;
    if r > s {
        return Err(Error::Shape(format!("expected r <= s, got {r}x{s}")));
    }
    let pivots = pivot_columns(&rows, s).ok_or_else(|| {
        Error::NotUnimodular(format!("constant {r}x{s} matrix has rank below {r}"))
    })?;
    let rest: Vec<usize> = (0..s).filter(|j| !pivots.contains(j)).collect();
    let fs: Vec<Vec<Rational>> = rows
        .iter()
        .map(|row| pivots.iter().map(|&j| row[j].clone()).collect())
        .collect();
    let fs_inv = invert_rational(&fs).expect("pivot block is invertible");
    let mut u = vec![vec![Rational::zero(); s]; s];
    for (a, &pj) in pivots.iter().enumerate() {
        for i in 0..r {
            u[pj][i] = fs_inv[a][i].clone();
        }
        for (b, &tj) in rest.iter().enumerate() {
            let mut acc = Rational::zero();
            for k in 0..r {
                acc -= &fs_inv[a][k] * &rows[k][tj];
            }
            u[pj][r + b] = acc;
        }
    }
    for (b, &tj) in rest.iter().enumerate() {
        u[tj][r + b] = Rational::one();
    }
    Ok(PolyMatrix::from_rationals(&u, nvars))
}

/// `[I_r | 0]` of size `r x s`.
pub(crate) fn identity_block(r: usize, s: usize, nvars: usize) -> PolyMatrix {
    PolyMatrix::from_fn(r, s, nvars, |i, j| {
        if i == j {
            Polynomial::one(nvars)
        } else {
            Polynomial::zero(nvars)
        }
    })
}
