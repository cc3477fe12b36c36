//! Degree-bounded solutions of polynomial linear systems.
//!
//! `F k = b` with `deg k <= d` is linear in the coefficients of `k`, so it is
//! solved by exact elimination over the rationals.

use crate::poly::{Monomial, Polynomial, Rational};
use crate::polymat::PolyMatrix;
use crate::quillen_suslin::monomials_of_degree;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

/// Largest number of unknowns attempted in one system.
pub(crate) const MAX_UNKNOWNS: usize = 600;

/// Reduced row echelon form in place; returns the pivot columns among the first `ncols`.
fn rref(a: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..ncols {
        let Some(p) = (row..a.len()).find(|&i| !a[i][c].is_zero()) else {
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
        if row == a.len() {
            break;
        }
    }
    pivots
}

/// Solutions of `F k = rhs` (or `F k = 0`) with `deg k <= d`.
#[derive(Clone, Debug)]
pub(crate) struct BoundedSolutions {
    /// One solution, `None` when the system has none in this degree.
    pub particular: Option<Vec<Polynomial>>,
    /// Basis of the homogeneous solutions.
    pub kernel: Vec<Vec<Polynomial>>,
}

/// `None` when the system would have more than [`MAX_UNKNOWNS`] unknowns.
pub(crate) fn bounded_solutions(f: &PolyMatrix, rhs: Option<&[Polynomial]>, d: u32) -> Option<BoundedSolutions> {
    let (r, s) = f.shape();
    let nvars = f.nvars();
    let monos: Vec<Monomial> = (0..=d).flat_map(|k| monomials_of_degree(nvars, k)).collect();
    let nun = s * monos.len();
    if nun > MAX_UNKNOWNS {
        return None;
    }
    let mut index: FxHashMap<(usize, Monomial), usize> = FxHashMap::default();
    let mut entries: Vec<(usize, usize, Rational)> = Vec::new();
    let mut eq_of = |i: usize, m: Monomial| {
        let next = index.len();
        *index.entry((i, m)).or_insert(next)
    };
    for j in 0..s {
        for (t, m) in monos.iter().enumerate() {
            for i in 0..r {
                for (fm, c) in f.get(i, j).terms().iter() {
                    entries.push((eq_of(i, fm.mul(m)), j * monos.len() + t, c.clone()));
                }
            }
        }
    }
    if let Some(b) = rhs {
        for (i, bi) in b.iter().enumerate() {
            for (m, c) in bi.terms().iter() {
                entries.push((eq_of(i, m.clone()), nun, c.clone()));
            }
        }
    }
    let mut a = vec![vec![Rational::zero(); nun + 1]; index.len()];
    for (eq, col, c) in entries {
        a[eq][col] += c;
    }
    let pivots = rref(&mut a, nun);
    let to_vector = |v: &[Rational]| -> Vec<Polynomial> {
        (0..s)
            .map(|j| {
                let terms = monos
                    .iter()
                    .enumerate()
                    .map(|(t, m)| (m.clone(), v[j * monos.len() + t].clone()));
                Polynomial::from_terms(nvars, terms)
            })
            .collect()
    };
    let consistent = a[pivots.len()..].iter().all(|row| row[nun].is_zero());
    let particular = consistent.then(|| {
        let mut v = vec![Rational::zero(); nun];
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = a[i][nun].clone();
        }
        to_vector(&v)
    });
    let kernel = (0..nun)
        .filter(|c| !pivots.contains(c))
        .map(|fc| {
            let mut v = vec![Rational::zero(); nun];
            v[fc] = Rational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[i][fc].clone();
            }
            to_vector(&v)
        })
        .collect();
    Some(BoundedSolutions { particular, kernel })
}

/// The least `d <= max_degree` for which `F k = rhs` has a solution of degree at most `d`.
pub(crate) fn least_degree_solution(
    f: &PolyMatrix,
    rhs: &[Polynomial],
    max_degree: u32,
) -> Option<(u32, BoundedSolutions)> {
    (0..=max_degree).find_map(|d| {
        let sol = bounded_solutions(f, Some(rhs), d)?;
        sol.particular.is_some().then_some((d, sol))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &["x".to_string(), "y".to_string()]).unwrap()
    }

    #[test]
    fn homogeneous_solutions_are_in_the_kernel() {
        let f = PolyMatrix::from_row(vec![p("x"), p("y"), p("1 + x*y")], 2);
        let sol = bounded_solutions(&f, None, 2).unwrap();
        assert!(!sol.kernel.is_empty());
        for k in &sol.kernel {
            let col = PolyMatrix::from_column(k.clone(), 2);
            assert!(f.try_mul(&col).unwrap().is_zero());
        }
    }

    #[test]
    fn least_degree_bezout_coefficients() {
        // x * 1 + (1 - x) * 1 = 1 in degree zero
        let f = PolyMatrix::from_row(vec![p("x"), p("1 - x")], 2);
        let (d, sol) = least_degree_solution(&f, &[p("1")], 3).unwrap();
        assert_eq!(d, 0);
        let k = sol.particular.unwrap();
        assert_eq!(&(&p("x") * &k[0]) + &(&p("1 - x") * &k[1]), p("1"));
    }

    #[test]
    fn inconsistent_in_low_degree() {
        // x^2 is not in <x + y^2> below degree 2 cofactors... it never is
        let f = PolyMatrix::from_row(vec![p("x + y^2")], 2);
        assert!(least_degree_solution(&f, &[p("x^2")], 3).is_none());
    }
}
