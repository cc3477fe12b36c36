//! Degree reduction of matrix columns by cancelling top-degree forms.
//!
//! A column `c` of degree `D` is replaced by `c - sum h_i k_i` whenever the
//! degree-`D` part of `c` is a combination of the top forms of the columns
//! `k_i` (of degree at most `D`) with homogeneous multipliers `h_i`. Finding
//! the `h_i` is a linear system over the rationals. Each replacement is an
//! elementary column operation, so bases stay bases and determinants are
//! unchanged.

use crate::poly::{Monomial, Polynomial, Rational};
use crate::polymat::PolyMatrix;
use num_traits::Zero;
use rustc_hash::FxHashMap;

fn column_degree(col: &[Polynomial]) -> Option<u32> {
    col.iter().filter_map(|p| p.total_degree().finite()).max()
}

fn top_form(col: &[Polynomial], d: u32) -> Vec<Vec<(Monomial, Rational)>> {
    col.iter()
        .map(|p| {
            p.terms()
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .cloned()
                .collect()
        })
        .collect()
}

/// Monomials of total degree `d` in `n` variables.
pub(crate) fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == n {
            cur[i] = left;
            out.push(Monomial::from_exponents(cur));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(n, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if n == 0 {
        return if d == 0 { vec![Monomial::one(0)] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(n, 0, d, &mut vec![0; n], &mut out);
    out
}

/// Solves `A z = b` over the rationals, `A` given by sparse columns keyed by equation.
fn solve_sparse<K: std::hash::Hash + Eq + Clone>(
    cols: &[Vec<(K, Rational)>],
    rhs: &[(K, Rational)],
) -> Option<Vec<Rational>> {
    let mut index: FxHashMap<K, usize> = FxHashMap::default();
    for (k, _) in cols.iter().flatten().chain(rhs) {
        let next = index.len();
        index.entry(k.clone()).or_insert(next);
    }
    let neq = index.len();
    let nun = cols.len();
    let mut a = vec![vec![Rational::zero(); nun + 1]; neq];
    for (j, col) in cols.iter().enumerate() {
        for (k, c) in col {
            a[index[k]][j] += c;
        }
    }
    for (k, c) in rhs {
        a[index[k]][nun] += c;
    }
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..nun {
        let Some(p) = (row..neq).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][c].recip();
        for x in a[row][c..].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[row].clone();
        for (i, r) in a.iter_mut().enumerate() {
            if i != row && !r[c].is_zero() {
                let f = r[c].clone();
                for (x, y) in r[c..].iter_mut().zip(&pivot_row[c..]) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        row += 1;
        if row == neq {
            break;
        }
    }
    if a[row..].iter().any(|r| !r[nun].is_zero()) {
        return None;
    }
    let mut z = vec![Rational::zero(); nun];
    for (i, &c) in pivots.iter().enumerate() {
        z[c] = a[i][nun].clone();
    }
    Some(z)
}

/// Homogeneous multipliers cancelling the top form of `target` against `basis`.
fn top_form_combination(target: &[Polynomial], basis: &[&[Polynomial]]) -> Option<Vec<Polynomial>> {
    let nvars = target.first()?.nvars();
    let d = column_degree(target)?;
    let rhs: Vec<((usize, Monomial), Rational)> = top_form(target, d)
        .into_iter()
        .enumerate()
        .flat_map(|(r, terms)| terms.into_iter().map(move |(m, c)| ((r, m), c)))
        .collect();
    let mut cols = Vec::new();
    let mut unknowns = Vec::new();
    for (i, b) in basis.iter().enumerate() {
        let Some(di) = column_degree(b) else {
            continue;
        };
        if di > d {
            continue;
        }
        let top = top_form(b, di);
        for mu in monomials_of_degree(nvars, d - di) {
            let col: Vec<((usize, Monomial), Rational)> = top
                .iter()
                .enumerate()
                .flat_map(|(r, terms)| {
                    let mu = mu.clone();
                    terms.iter().map(move |(m, c)| ((r, m.mul(&mu)), c.clone()))
                })
                .collect();
            if !col.is_empty() {
                cols.push(col);
                unknowns.push((i, mu));
            }
        }
    }
    if cols.is_empty() {
        return None;
    }
    let z = solve_sparse(&cols, &rhs)?;
    let mut h = vec![Polynomial::zero(nvars); basis.len()];
    for ((i, mu), c) in unknowns.into_iter().zip(z) {
        if !c.is_zero() {
            h[i] = &h[i] + &Polynomial::term(mu, c);
        }
    }
    Some(h)
}

fn sub_combination(target: &mut [Polynomial], h: &[Polynomial], basis: &[&[Polynomial]]) {
    for (hi, b) in h.iter().zip(basis) {
        if hi.is_zero() {
            continue;
        }
        for (t, e) in target.iter_mut().zip(b.iter()) {
            if !e.is_zero() {
                *t = &*t - &(hi * e);
            }
        }
    }
}

/// Reduces the columns of `k` against each other until no top form is a
/// combination of the top forms of the other columns of no larger degree.
pub fn reduce_columns(k: &PolyMatrix) -> PolyMatrix {
    let mut cols: Vec<Vec<Polynomial>> = (0..k.cols()).map(|j| k.column(j)).collect();
    loop {
        let mut order: Vec<usize> = (0..cols.len()).collect();
        order.sort_by_key(|&j| std::cmp::Reverse(column_degree(&cols[j])));
        let mut changed = false;
        for &j in &order {
            let Some(dj) = column_degree(&cols[j]) else {
                continue;
            };
            if dj == 0 {
                continue;
            }
            let others: Vec<usize> = (0..cols.len()).filter(|&i| i != j).collect();
            let basis: Vec<&[Polynomial]> = others.iter().map(|&i| cols[i].as_slice()).collect();
            if let Some(h) = top_form_combination(&cols[j], &basis) {
                let mut target = cols[j].clone();
                sub_combination(&mut target, &h, &basis);
                cols[j] = target;
                changed = true;
                break;
            }
        }
        if !changed {
            break;
        }
    }
    columns_to_matrix(&cols, k.rows(), k.nvars())
}

/// Reduces each column of `b` modulo the column span of `k`, lowering degrees while possible.
pub fn reduce_modulo(b: &PolyMatrix, k: &PolyMatrix) -> PolyMatrix {
    let kcols: Vec<Vec<Polynomial>> = (0..k.cols()).map(|j| k.column(j)).collect();
    let basis: Vec<&[Polynomial]> = kcols.iter().map(|c| c.as_slice()).collect();
    let mut out = Vec::with_capacity(b.cols());
    for j in 0..b.cols() {
        let mut col = b.column(j);
        while let Some(h) = top_form_combination(&col, &basis) {
            sub_combination(&mut col, &h, &basis);
            if column_degree(&col).is_none() {
                break;
            }
        }
        out.push(col);
    }
    columns_to_matrix(&out, b.rows(), b.nvars())
}

fn columns_to_matrix(cols: &[Vec<Polynomial>], rows: usize, nvars: usize) -> PolyMatrix {
    PolyMatrix::from_fn(rows, cols.len(), nvars, |i, j| cols[j][i].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::default_var_names;
    use crate::polymat::parse_matrix;

    fn m(s: &str) -> PolyMatrix {
        parse_matrix(s, &default_var_names(2)).unwrap()
    }

    #[test]
    fn monomial_enumeration_counts() {
        assert_eq!(monomials_of_degree(2, 3).len(), 4);
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(1, 5).len(), 1);
    }

    #[test]
    fn reduces_a_disguised_basis() {
        // Columns (1, x1) and (x2, 1 + x1*x2): the second minus x2 times the first is (0, 1).
        let k = m("1; x2\nx1; 1 + x1*x2");
        let r = reduce_columns(&k);
        assert_eq!(r, m("1; 0\n0; 1"));
        assert_eq!(r.determinant().unwrap(), k.determinant().unwrap());
    }

    #[test]
    fn reduces_modulo_a_span() {
        let k = m("1\nx1");
        let b = m("x2^2 + 3\nx1*x2^2");
        assert_eq!(reduce_modulo(&b, &k), m("3\n0"));
    }
}
