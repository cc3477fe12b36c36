use super::polynomial::Polynomial;
use crate::error::{Error, Result};
use crate::polymat::bareiss_determinant;

/// Sylvester matrix of `f` and `g` with respect to `x_var`, entries free of `x_var`.
pub fn sylvester_matrix(f: &Polynomial, g: &Polynomial, var: usize) -> Vec<Vec<Polynomial>> {
    let n = f.nvars();
    let fc = f.coefficients_in(var);
    let gc = g.coefficients_in(var);
    let (df, dg) = (fc.len() - 1, gc.len() - 1);
    let size = df + dg;
    let mut rows = Vec::with_capacity(size);
    for i in 0..dg {
        let mut row = vec![Polynomial::zero(n); size];
        for (k, c) in fc.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..df {
        let mut row = vec![Polynomial::zero(n); size];
        for (k, c) in gc.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Resultant with respect to `x_var`, as the Sylvester determinant.
///
/// If both arguments are free of `x_var` the result is 1; if exactly one is,
/// say `c`, the result is `c^deg(other)`. Both zero is an error.
pub fn resultant(f: &Polynomial, g: &Polynomial, var: usize) -> Result<Polynomial> {
    if f.nvars() != g.nvars() {
        return Err(Error::VariableCountMismatch {
            left: f.nvars(),
            right: g.nvars(),
        });
    }
    if var >= f.nvars() {
        return Err(Error::VariableOutOfRange {
            index: var,
            nvars: f.nvars(),
        });
    }
    if f.is_zero() && g.is_zero() {
        return Err(Error::BothZero);
    }
    let df = f.degree_in(var).unwrap_or(0);
    let dg = g.degree_in(var).unwrap_or(0);
    match (df, dg) {
        (0, 0) => Ok(Polynomial::one(f.nvars())),
        (0, d) => Ok(f.pow(d)),
        (d, 0) => Ok(g.pow(d)),
        _ => Ok(bareiss_determinant(sylvester_matrix(f, g, var), f.nvars())),
    }
}
