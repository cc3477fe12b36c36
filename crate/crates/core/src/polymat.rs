//! Dense matrices of polynomials.

use crate::error::{Error, ParseError, Result};
use crate::ideal;
use crate::poly::{format_polynomial, parse_polynomial, Degree, Polynomial, Rational};
use num_traits::Zero;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyMatrix {
    nvars: usize,
    rows: usize,
    cols: usize,
    data: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zero(rows: usize, cols: usize, nvars: usize) -> Self {
        PolyMatrix {
            nvars,
            rows,
            cols,
            data: vec![Polynomial::zero(nvars); rows * cols],
        }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        let mut m = Self::zero(n, n, nvars);
        for i in 0..n {
            m.set(i, i, Polynomial::one(nvars));
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        nvars: usize,
        mut f: impl FnMut(usize, usize) -> Polynomial,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let p = f(i, j);
                assert_eq!(p.nvars(), nvars, "entry has wrong variable count");
                data.push(p);
            }
        }
        PolyMatrix {
            nvars,
            rows,
            cols,
            data,
        }
    }

    /// Builds from rows; all rows must have the same length and all entries the same ring.
    pub fn from_rows(rows: Vec<Vec<Polynomial>>, nvars: usize) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != c {
                return Err(Error::Shape(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    c
                )));
            }
            for p in row {
                if p.nvars() != nvars {
                    return Err(Error::VariableCountMismatch {
                        left: nvars,
                        right: p.nvars(),
                    });
                }
                data.push(p);
            }
        }
        Ok(PolyMatrix {
            nvars,
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn from_column(entries: Vec<Polynomial>, nvars: usize) -> Self {
        let n = entries.len();
        PolyMatrix {
            nvars,
            rows: n,
            cols: 1,
            data: entries,
        }
    }

    pub fn from_row(entries: Vec<Polynomial>, nvars: usize) -> Self {
        let n = entries.len();
        PolyMatrix {
            nvars,
            rows: 1,
            cols: n,
            data: entries,
        }
    }

    /// Embeds a rational matrix given row by row.
    pub fn from_rationals(rows: &[Vec<Rational>], nvars: usize) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        Self::from_fn(r, c, nvars, |i, j| Polynomial::constant(nvars, rows[i][j].clone()))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Polynomial {
        &mut self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        assert_eq!(p.nvars(), self.nvars, "entry has wrong variable count");
        self.data[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> Vec<Polynomial> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Polynomial>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &Polynomial> {
        self.data.iter()
    }

    pub fn transpose(&self) -> PolyMatrix {
        Self::from_fn(self.cols, self.rows, self.nvars, |i, j| self.get(j, i).clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        Self::from_fn(rows.len(), cols.len(), self.nvars, |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    pub fn select_columns(&self, cols: &[usize]) -> PolyMatrix {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&rows, cols)
    }

    pub fn select_rows(&self, rows: &[usize]) -> PolyMatrix {
        let cols: Vec<usize> = (0..self.cols).collect();
        self.submatrix(rows, &cols)
    }

    pub fn hstack(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.rows != other.rows {
            return Err(Error::Shape(format!(
                "cannot place {}x{} beside {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        self.check_ring(other)?;
        Ok(Self::from_fn(self.rows, self.cols + other.cols, self.nvars, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    pub fn vstack(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.cols {
            return Err(Error::Shape(format!(
                "cannot place {}x{} above {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        self.check_ring(other)?;
        Ok(Self::from_fn(self.rows + other.rows, self.cols, self.nvars, |i, j| {
            if i < self.rows {
                self.get(i, j).clone()
            } else {
                other.get(i - self.rows, j).clone()
            }
        }))
    }

    fn check_ring(&self, other: &PolyMatrix) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCountMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.check_ring(other)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, self.nvars, |i, j| {
            let mut acc = Polynomial::zero(self.nvars);
            for k in 0..self.cols {
                let a = self.get(i, k);
                let b = other.get(k, j);
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        }))
    }

    fn zip_with(
        &self,
        other: &PolyMatrix,
        f: impl Fn(&Polynomial, &Polynomial) -> Polynomial,
    ) -> Result<PolyMatrix> {
        self.check_ring(other)?;
        if self.shape() != other.shape() {
            return Err(Error::Shape(format!(
                "shapes {}x{} and {}x{} differ",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(PolyMatrix {
            nvars: self.nvars,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn try_add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> PolyMatrix {
        let data: Vec<Polynomial> = self.data.iter().map(f).collect();
        let nvars = data.first().map(|p| p.nvars()).unwrap_or(self.nvars);
        PolyMatrix {
            nvars,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn try_map(&self, f: impl Fn(&Polynomial) -> Result<Polynomial>) -> Result<PolyMatrix> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>>>()?;
        let nvars = data.first().map(|p| p.nvars()).unwrap_or(self.nvars);
        Ok(PolyMatrix {
            nvars,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, c: &Polynomial) -> PolyMatrix {
        self.map(|p| p * c)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|p| p.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let p = self.get(i, j);
                    if i == j {
                        p.is_one()
                    } else {
                        p.is_zero()
                    }
                })
            })
    }

    pub fn is_constant(&self) -> bool {
        self.data.iter().all(|p| p.is_constant())
    }

    /// Maximum total degree over all entries; `NegInfinity` for the zero matrix.
    pub fn degree(&self) -> Degree {
        self.data
            .iter()
            .map(|p| p.total_degree())
            .max()
            .unwrap_or(Degree::NegInfinity)
    }

    pub fn column_degree(&self, j: usize) -> Degree {
        (0..self.rows)
            .map(|i| self.get(i, j).total_degree())
            .max()
            .unwrap_or(Degree::NegInfinity)
    }

    /// Column `target += factor * column source`.
    pub fn add_column_multiple(&mut self, target: usize, source: usize, factor: &Polynomial) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let add = self.get(i, source) * factor;
            let v = self.get(i, target) + &add;
            self.set(i, target, v);
        }
    }

    /// Row `target += factor * row source`.
    pub fn add_row_multiple(&mut self, target: usize, source: usize, factor: &Polynomial) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let add = self.get(source, j) * factor;
            let v = self.get(target, j) + &add;
            self.set(target, j, v);
        }
    }

    pub fn swap_columns(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn scale_column(&mut self, j: usize, c: &Polynomial) {
        for i in 0..self.rows {
            let v = self.get(i, j) * c;
            self.set(i, j, v);
        }
    }

    pub fn determinant(&self) -> Result<Polynomial> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(bareiss_determinant(self.to_rows(), self.nvars))
    }

    /// All `k x k` minors on the given rows, indexed by increasing column subsets in lexicographic order.
    pub fn column_minors(&self) -> Vec<(Vec<usize>, Polynomial)> {
        let k = self.rows;
        let rows: Vec<usize> = (0..self.rows).collect();
        subsets(self.cols, k)
            .into_iter()
            .map(|cols| {
                let d = bareiss_determinant(self.submatrix(&rows, &cols).to_rows(), self.nvars);
                (cols, d)
            })
            .collect()
    }

    /// Maximal minors, as the unit-ideal test needs them.
    pub fn maximal_minors(&self) -> Vec<Polynomial> {
        if self.rows <= self.cols {
            self.column_minors().into_iter().map(|(_, d)| d).collect()
        } else {
            self.transpose()
                .column_minors()
                .into_iter()
                .map(|(_, d)| d)
                .collect()
        }
    }

    /// For an `m x (m-1)` matrix: `(-1)^(i+1)` times the minor with row `i` deleted (1-based `i`).
    /// For an `r x (r+1)` matrix the same with columns. These are the generators of
    /// the ideal of maximal minors that satisfy `A * minors = 0` (or its transpose).
    pub fn signed_maximal_minors(&self) -> Result<Vec<Polynomial>> {
        let (long, short, transposed) = if self.rows == self.cols + 1 {
            (self.rows, self.cols, false)
        } else if self.cols == self.rows + 1 {
            (self.cols, self.rows, true)
        } else {
            return Err(Error::Shape(format!(
                "signed maximal minors need an (n+1)xn or nx(n+1) matrix, got {}x{}",
                self.rows, self.cols
            )));
        };
        let short_idx: Vec<usize> = (0..short).collect();
        let mut out = Vec::with_capacity(long);
        for i in 0..long {
            let keep: Vec<usize> = (0..long).filter(|&x| x != i).collect();
            let sub = if transposed {
                self.submatrix(&short_idx, &keep)
            } else {
                self.submatrix(&keep, &short_idx)
            };
            let d = bareiss_determinant(sub.to_rows(), self.nvars);
            out.push(if i % 2 == 0 { d } else { -d });
        }
        Ok(out)
    }

    /// Whether an `r x s` matrix with `r <= s` has maximal minors generating the unit ideal.
    pub fn is_unimodular(&self) -> Result<bool> {
        Ok(self.unimodularity_certificate()?.is_some())
    }

    /// Maximal minors (column subsets in lexicographic order) together with
    /// Bezout coefficients `b` such that `sum b_i * minor_i = 1`, or `None`
    /// when the matrix is not unimodular.
    pub fn unimodularity_certificate(&self) -> Result<Option<(Vec<Polynomial>, Vec<Polynomial>)>> {
        if self.rows > self.cols {
            return Err(Error::Shape(format!(
                "unimodularity needs rows <= cols, got {}x{}",
                self.rows, self.cols
            )));
        }
        let minors = self.maximal_minors();
        if let Some(i) = minors.iter().position(|m| m.is_unit()) {
            let mut coeffs = vec![Polynomial::zero(self.nvars); minors.len()];
            coeffs[i] = Polynomial::constant(self.nvars, minors[i].constant_value().unwrap().recip());
            return Ok(Some((minors, coeffs)));
        }
        Ok(ideal::is_unit_ideal(&minors).map(|b| (minors, b)))
    }

    pub fn adjugate(&self) -> Result<PolyMatrix> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 1 {
            return Ok(PolyMatrix::identity(1, self.nvars));
        }
        let mut adj = PolyMatrix::zero(n, n, self.nvars);
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&x| x != j).collect();
                let cols: Vec<usize> = (0..n).filter(|&x| x != i).collect();
                let d = bareiss_determinant(self.submatrix(&rows, &cols).to_rows(), self.nvars);
                adj.set(i, j, if (i + j) % 2 == 0 { d } else { -d });
            }
        }
        Ok(adj)
    }

    /// Inverse of a square matrix with nonzero constant determinant.
    pub fn inverse_unimodular(&self) -> Result<PolyMatrix> {
        let det = self.determinant()?;
        let c = match det.constant_value() {
            Some(c) if !c.is_zero() => c,
            _ => {
                return Err(Error::NotUnimodular(format!(
                    "determinant {det} is not a nonzero constant"
                )))
            }
        };
        let inv = Polynomial::constant(self.nvars, c.recip());
        Ok(self.adjugate()?.scale(&inv))
    }

    /// Substitutes a value for one variable in every entry.
    pub fn partial_eval(&self, var: usize, value: &Rational) -> PolyMatrix {
        self.map(|p| p.partial_eval(var, value))
    }

    /// Applies `x_i -> images[i]` to every entry.
    pub fn compose(&self, images: &[Polynomial]) -> Result<PolyMatrix> {
        if self.data.is_empty() {
            let nvars = images.first().map(|p| p.nvars()).unwrap_or(self.nvars);
            return Ok(PolyMatrix::zero(self.rows, self.cols, nvars));
        }
        self.try_map(|p| p.compose(images))
    }

    pub fn with_nvars(&self, nvars: usize) -> Result<PolyMatrix> {
        let mut m = self.try_map(|p| p.with_nvars(nvars))?;
        m.nvars = nvars;
        Ok(m)
    }

    /// The constant matrix when every entry is constant.
    pub fn to_rationals(&self) -> Option<Vec<Vec<Rational>>> {
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for j in 0..self.cols {
                row.push(self.get(i, j).constant_value()?);
            }
            out.push(row);
        }
        Some(out)
    }

    /// Rows on separate lines, entries separated by `; `.
    pub fn to_text(&self, vars: &[String]) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| format_polynomial(self.get(i, j), vars))
                .collect();
            out.push_str(&row.join("; "));
            out.push('\n');
        }
        out
    }
}

/// Parses a matrix written one row per line with `;`-separated entries.
/// Blank lines and lines starting with `#` are skipped.
pub fn parse_matrix(text: &str, vars: &[String]) -> std::result::Result<PolyMatrix, ParseError> {
    parse_matrix_lines(text.lines().enumerate().map(|(i, l)| (i + 1, l)), vars)
}

/// Matrix parser over already-numbered lines, so callers embedding a matrix in a larger file keep positions.
pub fn parse_matrix_lines<'a>(
    lines: impl Iterator<Item = (usize, &'a str)>,
    vars: &[String],
) -> std::result::Result<PolyMatrix, ParseError> {
    let nvars = vars.len();
    let mut rows: Vec<Vec<Polynomial>> = Vec::new();
    let mut first_line = 0;
    for (lineno, line) in lines {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if rows.is_empty() {
            first_line = lineno;
        }
        let mut row = Vec::new();
        let mut offset = 0;
        for part in line.split(';') {
            let p = parse_polynomial(part, vars).map_err(|e| {
                ParseError::new(lineno, offset + e.column, e.message)
            })?;
            row.push(p);
            offset += part.len() + 1;
        }
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(ParseError::new(
                    lineno,
                    1,
                    format!(
                        "row has {} entries but the row on line {} has {}",
                        row.len(),
                        first_line,
                        first.len()
                    ),
                ));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(ParseError::new(1, 1, "empty matrix"));
    }
    Ok(PolyMatrix::from_rows(rows, nvars).expect("rows checked"))
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Fraction-free Gaussian elimination; every division is exact.
pub fn bareiss_determinant(mut m: Vec<Vec<Polynomial>>, nvars: usize) -> Polynomial {
    let n = m.len();
    match n {
        0 => return Polynomial::one(nvars),
        1 => return m[0][0].clone(),
        2 => return &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        3 => {
            let t1 = &m[0][0] * &(&(&m[1][1] * &m[2][2]) - &(&m[1][2] * &m[2][1]));
            let t2 = &m[0][1] * &(&(&m[1][0] * &m[2][2]) - &(&m[1][2] * &m[2][0]));
            let t3 = &m[0][2] * &(&(&m[1][0] * &m[2][1]) - &(&m[1][1] * &m[2][0]));
            return &(&t1 - &t2) + &t3;
        }
        _ => {}
    }
    let mut sign = false;
    let mut prev = Polynomial::one(nvars);
    for k in 0..n - 1 {
        // Prefer the sparsest nonzero pivot.
        let pivot = (k..n)
            .filter(|&i| !m[i][k].is_zero())
            .min_by_key(|&i| m[i][k].len());
        let p = match pivot {
            None => return Polynomial::zero(nvars),
            Some(p) => p,
        };
        if p != k {
            m.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = if prev.is_one() {
                    num
                } else {
                    num.divide_exact(&prev)
                        .expect("nonzero pivot")
                        .expect("Bareiss division is exact")
                };
            }
            m[i][k] = Polynomial::zero(nvars);
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

impl Mul for &PolyMatrix {
    type Output = PolyMatrix;
    fn mul(self, rhs: &PolyMatrix) -> PolyMatrix {
        self.try_mul(rhs).expect("matrix multiplication")
    }
}

impl Add for &PolyMatrix {
    type Output = PolyMatrix;
    fn add(self, rhs: &PolyMatrix) -> PolyMatrix {
        self.try_add(rhs).expect("matrix addition")
    }
}

impl Sub for &PolyMatrix {
    type Output = PolyMatrix;
    fn sub(self, rhs: &PolyMatrix) -> PolyMatrix {
        self.try_sub(rhs).expect("matrix subtraction")
    }
}

impl Neg for &PolyMatrix {
    type Output = PolyMatrix;
    fn neg(self) -> PolyMatrix {
        self.map(|p| -p)
    }
}
