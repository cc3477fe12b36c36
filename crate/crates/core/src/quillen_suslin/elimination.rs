//! Preparation and sampling steps of the per-variable elimination.

use super::RngState;
use crate::error::{Error, Result};
use crate::ideal::{is_unit_ideal, represent_in_ideal};
use crate::poly::{resultant, Monomial, Polynomial, Rational};
use crate::polymat::{bareiss_determinant, PolyMatrix};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};

const RETRIES: usize = 32;

/// A matrix brought into the shape where its leading `r x r` minor is monic in
/// every variable and dominates the other maximal minors in degree.
///
/// `prepared(x) = (F P A)(C x)` where `P` permutes the columns of `F` by
/// `column_order`, `A` is [`shift_matrix`] and `C` is `coordinate_change`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoetherPreparation {
    pub coordinate_change: Vec<Vec<Rational>>,
    pub column_order: Vec<usize>,
    pub a: PolyMatrix,
    pub prepared: PolyMatrix,
}

/// Sample matrices `y^1..y^n` whose resultants `c(x, y^i)` generate the unit ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YSampling {
    pub y_matrices: Vec<Vec<Vec<Rational>>>,
    pub c_values: Vec<Polynomial>,
    /// `sum bezout_i * c_values_i = 1`.
    pub bezout: Vec<Polynomial>,
}

/// The `s x s` matrix with `x_n` on the first `r` diagonal entries, ones on the
/// superdiagonal and in the bottom-left corner, zeros elsewhere. Its
/// determinant is `±1`.
pub fn shift_matrix(r: usize, s: usize, nvars: usize) -> PolyMatrix {
    let xn = Polynomial::var(nvars, nvars - 1);
    PolyMatrix::from_fn(s, s, nvars, |i, j| {
        let mut e = Polynomial::zero(nvars);
        if i == j && i < r {
            e = &e + &xn;
        }
        if j == i + 1 || (i == s - 1 && j == 0) {
            e = &e + &Polynomial::one(nvars);
        }
        e
    })
}

/// Whether the leading `r x r` minor is monic in every variable (contains
/// `x_i^D` for `D` its total degree) and of larger degree than every other maximal minor.
pub fn is_prepared(m: &PolyMatrix) -> bool {
    let r = m.rows();
    let nvars = m.nvars();
    let minors = m.column_minors();
    let lead = &minors[0].1;
    let Some(deg) = lead.total_degree().finite() else {
        return false;
    };
    for v in 0..nvars {
        let mut e = vec![0; nvars];
        e[v] = deg;
        if lead.coefficient(&Monomial::from_exponents(&e)).is_zero() {
            return false;
        }
    }
    debug_assert!(minors[0].0 == (0..r).collect::<Vec<_>>());
    minors[1..]
        .iter()
        .all(|(_, d)| d.total_degree().finite().is_none_or(|e| e < deg))
}

fn apply_change(m: &PolyMatrix, c: &[Vec<Rational>]) -> Result<PolyMatrix> {
    let nvars = m.nvars();
    let zero = vec![Rational::zero(); nvars];
    m.try_map(|p| p.linear_change(c, &zero))
}

fn rational_det(c: &[Vec<Rational>]) -> Rational {
    let rows: Vec<Vec<Polynomial>> = c
        .iter()
        .map(|row| row.iter().map(|x| Polynomial::constant(0, x.clone())).collect())
        .collect();
    bareiss_determinant(rows, 0).constant_term()
}

/// Permutes columns, multiplies by [`shift_matrix`] and applies a random
/// linear change of coordinates until [`is_prepared`] holds. The identity
/// change is tried first.
pub fn noether_prepare(f: &PolyMatrix, seed: u64) -> Result<NoetherPreparation> {
    let (r, s) = f.shape();
    let nvars = f.nvars();
    if r == 0 || r >= s {
        return Err(Error::Shape(format!("preparation needs 0 < r < s, got {r}x{s}")));
    }
    if nvars == 0 {
        return Err(Error::Unsupported("preparation needs at least one variable".into()));
    }
    // Put a maximal minor of largest degree on the leading columns.
    let minors = f.column_minors();
    let (best, _) = minors
        .iter()
        .filter(|(_, d)| !d.is_zero())
        .max_by_key(|(cols, d)| (d.total_degree(), std::cmp::Reverse(cols.clone())))
        .ok_or_else(|| Error::NotUnimodular("all maximal minors vanish".into()))?;
    let mut column_order = best.clone();
    column_order.extend((0..s).filter(|j| !best.contains(j)));
    let a = shift_matrix(r, s, nvars);
    let fa = &f.select_columns(&column_order) * &a;
    let mut rng = RngState::seed_from_u64(seed);
    let identity: Vec<Vec<Rational>> = (0..nvars)
        .map(|i| (0..nvars).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    let mut change = identity;
    for _ in 0..RETRIES {
        let prepared = apply_change(&fa, &change)?;
        if is_prepared(&prepared) {
            return Ok(NoetherPreparation {
                coordinate_change: change,
                column_order,
                a,
                prepared,
            });
        }
        loop {
            change = (0..nvars)
                .map(|_| (0..nvars).map(|_| Rational::from_integer(rng.random_range(-3..=3).into())).collect())
                .collect();
            if !rational_det(&change).is_zero() {
                break;
            }
        }
    }
    Err(Error::RetryExhausted {
        attempts: RETRIES,
        what: "linear change making the leading minor monic and dominant".into(),
    })
}

/// `c(x, y) = Res_{x_n}(D_1, D_2)` for the minors of `prepared * y` on the
/// columns `1..r` and `1..r-1, r+1`.
pub fn resultant_for(prepared: &PolyMatrix, y: &[Vec<Rational>]) -> Result<Polynomial> {
    let (r, s) = prepared.shape();
    let nvars = prepared.nvars();
    let ym = PolyMatrix::from_rationals(y, nvars);
    let fy = prepared.try_mul(&ym)?;
    let rows: Vec<usize> = (0..r).collect();
    let c1: Vec<usize> = (0..r).collect();
    let mut c2: Vec<usize> = (0..r - 1).collect();
    c2.push(r);
    debug_assert!(r < s);
    let d1 = bareiss_determinant(fy.submatrix(&rows, &c1).to_rows(), nvars);
    let d2 = bareiss_determinant(fy.submatrix(&rows, &c2).to_rows(), nvars);
    resultant(&d1, &d2, nvars - 1)
}

/// Draws integer sample matrices until the resultants generate the unit ideal.
pub fn sample_y_matrices(prepared: &PolyMatrix, seed: u64) -> Result<YSampling> {
    let (r, s) = prepared.shape();
    let nvars = prepared.nvars();
    if r == 0 || r >= s {
        return Err(Error::Shape(format!("sampling needs 0 < r < s, got {r}x{s}")));
    }
    if nvars == 0 {
        return Err(Error::Unsupported("sampling needs at least one variable".into()));
    }
    let mut rng = RngState::seed_from_u64(seed);
    for _ in 0..RETRIES {
        let mut y_matrices = Vec::with_capacity(nvars);
        let mut c_values = Vec::with_capacity(nvars);
        for _ in 0..nvars {
            let y: Vec<Vec<Rational>> = (0..s)
                .map(|_| (0..s).map(|_| Rational::from_integer(rng.random_range(-4..=4).into())).collect())
                .collect();
            let c = match resultant_for(prepared, &y) {
                Ok(c) => c,
                Err(Error::BothZero) => Polynomial::zero(nvars),
                Err(e) => return Err(e),
            };
            y_matrices.push(y);
            c_values.push(c);
        }
        if c_values.iter().any(|c| c.is_zero()) {
            continue;
        }
        if let Some(bezout) = is_unit_ideal(&c_values) {
            return Ok(YSampling {
                y_matrices,
                c_values,
                bezout,
            });
        }
    }
    Err(Error::RetryExhausted {
        attempts: RETRIES,
        what: "sample matrices with resultants generating the unit ideal".into(),
    })
}

/// Coefficients `a` with `x_var = sum a_i c_i`.
///
/// For a unit ideal this is `x_var` times the Bezout certificate; in general
/// `x_var` is divided by a Gröbner basis of the `c_i` with tracked cofactors.
pub fn bezout_lift_xn(c_list: &[Polynomial], var: usize) -> Result<Vec<Polynomial>> {
    let Some(first) = c_list.first() else {
        return Err(Error::NotInIdeal);
    };
    let nvars = first.nvars();
    if var >= nvars {
        return Err(Error::VariableOutOfRange { index: var, nvars });
    }
    let x = Polynomial::var(nvars, var);
    if let Some(k) = c_list.iter().position(|c| c.is_unit()) {
        let mut a = vec![Polynomial::zero(nvars); c_list.len()];
        a[k] = x.scale(&c_list[k].constant_value().unwrap().recip());
        return Ok(a);
    }
    if c_list.iter().all(|c| c.is_zero()) {
        return Err(Error::NotInIdeal);
    }
    represent_in_ideal(&x, c_list).ok_or(Error::NotInIdeal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::default_var_names;

    #[test]
    fn shift_matrix_is_unimodular() {
        for (r, s) in [(1, 2), (1, 3), (2, 3), (2, 4), (2, 5)] {
            let a = shift_matrix(r, s, 2);
            assert!(a.determinant().unwrap().is_unit(), "{r}x{s}");
        }
    }

    #[test]
    fn prepared_rows_are_monic() {
        let names = default_var_names(2);
        let f = crate::polymat::parse_matrix("x1; x2", &names).unwrap();
        let prep = noether_prepare(&f, 3).unwrap();
        assert!(is_prepared(&prep.prepared));
        assert!(prep.prepared.degree().or_zero() <= f.degree().or_zero() + 1);
    }
}
