//! Free bases of syzygy modules of grade-two ideals.
//!
//! Input is a sequence `a = (a_1, ..., a_m)` generating the same ideal as two
//! coprime polynomials `p, q`. Conversion matrices `M` (2 x m) and `N`
//! (m x 2) with `(p q) M = a` and `a N = (p q)` turn a unimodular completion
//! into a basis of the syzygies of `a`. Three constructions are provided:
//! from the extended matrix `[M | (-q, p)^t]`, from a unimodular `M`, and from
//! `N`. Every basis is checked with the Hilbert-Burch criterion: its columns
//! are syzygies and its signed maximal minors are `u a` for a nonzero
//! constant `u`.

mod bases;
mod conversion;
mod pipeline;

pub use bases::{
    aligned_bases_check, basis_from_completion, basis_from_tilde_completion, basis_via_m,
    basis_via_n, basis_via_tilde_m, build_tilde_n_star, correct_n_star, extend_n,
    unit_ideal_basis, AlignmentStatus,
};
pub use conversion::{conversion_pair, derive_conversion, extend_tilde_m, make_unimodular_m, ConversionPair};
pub use pipeline::{compute_syzygy_basis, conversion_for, Strategy, StrategyChoice};

use crate::bounds::BoundFormula;
use crate::error::{Error, Result};
use crate::poly::{Polynomial, Rational};
use crate::polymat::PolyMatrix;
use crate::quillen_suslin::CompletionCertificate;
use num_bigint::BigInt;

/// Polynomials `a_1..a_m, p, q` with `<a> = <p, q>`, plus optional conversion matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grade2Instance {
    pub vars: Vec<String>,
    pub a: Vec<Polynomial>,
    pub p: Polynomial,
    pub q: Polynomial,
    /// `(p q) M = a`.
    pub m: Option<PolyMatrix>,
    /// `a N = (p q)`.
    pub n: Option<PolyMatrix>,
    /// Set by the caller when `<p, q>` is known to be zero-dimensional.
    pub zero_dimensional: bool,
}

impl Grade2Instance {
    pub fn new(vars: Vec<String>, a: Vec<Polynomial>, p: Polynomial, q: Polynomial) -> Self {
        Grade2Instance {
            vars,
            a,
            p,
            q,
            m: None,
            n: None,
            zero_dimensional: false,
        }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// Number of generators `m`.
    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// Largest total degree among `a`.
    pub fn delta_a(&self) -> u32 {
        self.a.iter().map(|x| x.total_degree().or_zero()).max().unwrap_or(0)
    }

    /// Largest total degree of `p` and `q`.
    pub fn delta_0(&self) -> u32 {
        self.p.total_degree().or_zero().max(self.q.total_degree().or_zero())
    }

    /// Checks sizes, variable counts and the supplied conversion matrices.
    pub fn check_structure(&self) -> Result<()> {
        let nvars = self.nvars();
        if self.a.len() < 2 {
            return Err(Error::Shape("at least two generators required".into()));
        }
        for p in self.a.iter().chain([&self.p, &self.q]) {
            if p.nvars() != nvars {
                return Err(Error::VariableCountMismatch {
                    left: p.nvars(),
                    right: nvars,
                });
            }
        }
        if let Some(m) = &self.m {
            check_m(m, &self.a, &self.p, &self.q)?;
        }
        if let Some(n) = &self.n {
            check_n(n, &self.a, &self.p, &self.q)?;
        }
        Ok(())
    }
}

pub(crate) fn pq_row(p: &Polynomial, q: &Polynomial) -> PolyMatrix {
    PolyMatrix::from_row(vec![p.clone(), q.clone()], p.nvars())
}

/// `(p q) M = a`.
pub(crate) fn check_m(m: &PolyMatrix, a: &[Polynomial], p: &Polynomial, q: &Polynomial) -> Result<()> {
    if m.shape() != (2, a.len()) {
        return Err(Error::Shape(format!("M must be 2x{}, got {}x{}", a.len(), m.rows(), m.cols())));
    }
    if pq_row(p, q).try_mul(m)?.row(0) != a {
        return Err(Error::IdealMismatch("(p q) M differs from a".into()));
    }
    Ok(())
}

/// `a N = (p q)`.
pub(crate) fn check_n(n: &PolyMatrix, a: &[Polynomial], p: &Polynomial, q: &Polynomial) -> Result<()> {
    if n.shape() != (a.len(), 2) {
        return Err(Error::Shape(format!("N must be {}x2, got {}x{}", a.len(), n.rows(), n.cols())));
    }
    let row = PolyMatrix::from_row(a.to_vec(), p.nvars()).try_mul(n)?;
    if row.get(0, 0) != p || row.get(0, 1) != q {
        return Err(Error::IdealMismatch("a N differs from (p q)".into()));
    }
    Ok(())
}

/// A degree compared against one of the closed-form bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundComparison {
    pub formula: BoundFormula,
    /// What was measured, e.g. `basis` or `M'`.
    pub quantity: String,
    pub degree: u32,
    pub bound: BigInt,
    pub satisfied: bool,
}

impl BoundComparison {
    pub fn new(formula: BoundFormula, quantity: &str, degree: u32, bound: BigInt) -> Self {
        let satisfied = BigInt::from(degree) <= bound;
        BoundComparison {
            formula,
            quantity: quantity.to_string(),
            degree,
            bound,
            satisfied,
        }
    }
}

/// Outcome of [`verify_basis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    /// Whether `a * column = 0`, per column.
    pub syzygy_ok: Vec<bool>,
    /// Whether the signed maximal minors are `u a` for one nonzero constant `u`.
    pub minors_ok: bool,
    pub unit: Option<Rational>,
    /// Total degree per column, `None` for a zero column.
    pub degrees: Vec<Option<u32>>,
    pub bound_comparisons: Vec<BoundComparison>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.minors_ok && self.syzygy_ok.iter().all(|&b| b) && self.bound_comparisons.iter().all(|c| c.satisfied)
    }

    /// Largest column degree.
    pub fn degree(&self) -> u32 {
        self.degrees.iter().flatten().copied().max().unwrap_or(0)
    }
}

/// A basis of the syzygies of `a` together with how it was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyBasis {
    /// `m x (m-1)`, one syzygy per column.
    pub b: PolyMatrix,
    pub strategy: Strategy,
    /// The completion the basis was read off.
    pub certificate: CompletionCertificate,
    pub verification: VerificationReport,
    /// Conversion data used, absent on the unit-ideal route.
    pub conversion: Option<ConversionPair>,
    /// The `M` fed to the completion when it differs from the conversion's `M`.
    pub m_used: Option<PolyMatrix>,
    pub warnings: Vec<String>,
}

impl SyzygyBasis {
    pub fn degree(&self) -> u32 {
        self.b.degree().or_zero()
    }
}

/// Checks that the columns of `b` are syzygies of `a` and that the signed
/// maximal minors of `b` equal `u a` for a single nonzero constant `u`.
///
/// `u` is read off the first index with `a_i != 0`; all other indices must
/// agree with it exactly.
pub fn verify_basis(a: &[Polynomial], b: &PolyMatrix) -> VerificationReport {
    let m = a.len();
    let degrees = (0..b.cols()).map(|j| b.column_degree(j).finite()).collect();
    let syzygy_ok = (0..b.cols())
        .map(|j| {
            b.rows() == m
                && a.iter()
                    .zip(b.column(j))
                    .fold(Polynomial::zero(b.nvars()), |acc, (x, y)| &acc + &(x * &y))
                    .is_zero()
        })
        .collect();
    let mut unit = None;
    let mut minors_ok = false;
    if m >= 2 && b.shape() == (m, m - 1) {
        if let Ok(minors) = b.signed_maximal_minors() {
            if let Some(k) = a.iter().position(|x| !x.is_zero()) {
                unit = minors[k]
                    .divide_exact(&a[k])
                    .ok()
                    .flatten()
                    .and_then(|u| u.constant_value())
                    .filter(|u| *u != Rational::from_integer(0.into()));
                if let Some(u) = &unit {
                    minors_ok = minors.iter().zip(a).all(|(d, x)| *d == x.scale(u));
                }
            }
        }
    }
    VerificationReport {
        syzygy_ok,
        minors_ok,
        unit,
        degrees,
        bound_comparisons: Vec::new(),
    }
}

/// The matrix `X` with `to X = from`, for two `m x (m-1)` matrices of full
/// column rank. It is square; when both are bases of the same module its
/// determinant is a nonzero constant.
pub fn change_of_basis(from: &PolyMatrix, to: &PolyMatrix) -> Result<PolyMatrix> {
    let (m, k) = to.shape();
    if from.rows() != m || k + 1 != m {
        return Err(Error::Shape(format!(
            "change of basis needs two (k+1) x k matrices, got {}x{} and {}x{}",
            from.rows(),
            from.cols(),
            m,
            k
        )));
    }
    let minors = to.signed_maximal_minors()?;
    let drop = minors
        .iter()
        .position(|d| !d.is_zero())
        .ok_or_else(|| Error::Shape("target matrix has rank below its column count".into()))?;
    let rows: Vec<usize> = (0..m).filter(|&i| i != drop).collect();
    let square = to.select_rows(&rows);
    let det = square.determinant()?;
    let adj = square.adjugate()?;
    let scaled = adj.try_mul(&from.select_rows(&rows))?;
    let x = scaled.try_map(|e| {
        e.divide_exact(&det)?
            .ok_or_else(|| Error::InexactDivision("a column is not a polynomial combination of the target basis".into()))
    })?;
    if to.try_mul(&x)? != *from {
        return Err(Error::InexactDivision("the columns do not lie in the span of the target basis".into()));
    }
    Ok(x)
}
