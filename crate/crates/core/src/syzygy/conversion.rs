//! Conversion matrices between `a` and `(p, q)`.

use super::{check_m, check_n};
use crate::error::{Error, Result};
use crate::ideal::{is_unit_ideal_mod_p, represent_in_ideal};
use crate::poly::{Polynomial, Rational};
use crate::polymat::PolyMatrix;
use crate::bounded::{bounded_solutions, least_degree_solution};
use crate::quillen_suslin::{qs_transform, reduce_modulo, RngState};
use rand::{Rng, SeedableRng};

/// `M`, `N` and the decomposition `M N = K = [[1 - e q, f q], [e p, 1 - f p]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConversionPair {
    pub m: PolyMatrix,
    pub n: PolyMatrix,
    pub k: PolyMatrix,
    pub e: Polynomial,
    pub f: Polynomial,
}

impl ConversionPair {
    /// `M N = I_2`, equivalently `e = f = 0`.
    pub fn is_orthogonal(&self) -> bool {
        self.e.is_zero() && self.f.is_zero()
    }
}

fn exact(num: &Polynomial, den: &Polynomial, what: &str) -> Result<Polynomial> {
    num.divide_exact(den)?.ok_or_else(|| {
        Error::InexactDivision(format!("{what} does not divide exactly; p and q are probably not coprime"))
    })
}

/// Computes `K = M N` and the polynomials `e, f` with `K = [[1 - e q, f q], [e p, 1 - f p]]`.
pub fn conversion_pair(m: PolyMatrix, n: PolyMatrix, p: &Polynomial, q: &Polynomial) -> Result<ConversionPair> {
    let k = m.try_mul(&n)?;
    if k.shape() != (2, 2) {
        return Err(Error::Shape(format!("M N must be 2x2, got {}x{}", k.rows(), k.cols())));
    }
    let e = exact(k.get(1, 0), p, "K21 / p")?;
    let f = exact(k.get(0, 1), q, "K12 / q")?;
    let nvars = p.nvars();
    let one = Polynomial::one(nvars);
    let expected = PolyMatrix::from_rows(
        vec![
            vec![&one - &(&e * q), &f * q],
            vec![&e * p, &one - &(&f * p)],
        ],
        nvars,
    )?;
    if expected != k {
        return Err(Error::InexactDivision(
            "M N does not have the form [[1 - e q, f q], [e p, 1 - f p]]".into(),
        ));
    }
    Ok(ConversionPair { m, n, k, e, f })
}

/// `M` from cofactor certificates of each `a_i` in `<p, q>`, reduced modulo the syzygy `(-q, p)`.
pub(crate) fn derive_m(a: &[Polynomial], p: &Polynomial, q: &Polynomial) -> Result<PolyMatrix> {
    let nvars = p.nvars();
    let gens = [p.clone(), q.clone()];
    let mut m = PolyMatrix::zero(2, a.len(), nvars);
    for (j, x) in a.iter().enumerate() {
        let c = represent_in_ideal(x, &gens)
            .ok_or_else(|| Error::IdealMismatch(format!("a{} is not in <p, q>", j + 1)))?;
        m.set(0, j, c[0].clone());
        m.set(1, j, c[1].clone());
    }
    let koszul = PolyMatrix::from_column(vec![-q, p.clone()], nvars);
    Ok(reduce_modulo(&m, &koszul))
}

/// `N` from cofactor certificates of `p` and `q` in `<a>`, reduced modulo the Koszul syzygies of `a`.
fn cofactor_n(a: &[Polynomial], p: &Polynomial, q: &Polynomial) -> Result<PolyMatrix> {
    let nvars = p.nvars();
    let len = a.len();
    let mut n = PolyMatrix::zero(len, 2, nvars);
    for (j, (x, name)) in [(p, "p"), (q, "q")].into_iter().enumerate() {
        let c = represent_in_ideal(x, a).ok_or_else(|| Error::IdealMismatch(format!("{name} is not in <a>")))?;
        for (i, ci) in c.into_iter().enumerate() {
            n.set(i, j, ci);
        }
    }
    let mut koszul = Vec::new();
    for i in 0..len {
        for j in i + 1..len {
            let mut col = vec![Polynomial::zero(nvars); len];
            col[i] = a[j].clone();
            col[j] = -&a[i];
            koszul.push(col);
        }
    }
    let k = PolyMatrix::from_fn(len, koszul.len(), nvars, |i, j| koszul[j][i].clone());
    Ok(reduce_modulo(&n, &k))
}

/// Degrees above the least one tried when looking for a unimodular `N`.
const EXTRA_DEGREES: u32 = 1;
const PERTURBATIONS: usize = 4;

fn probably_unimodular(f: &PolyMatrix) -> Result<bool> {
    match is_unit_ideal_mod_p(&f.maximal_minors()) {
        Some(answer) => Ok(answer),
        None => f.is_unimodular(),
    }
}

/// `N` of least total degree, preferring one with `N^t` unimodular.
///
/// Columns are solutions of `a n = p` and `a n = q`; when the least ones do
/// not give a unimodular `N^t`, syzygies of `a` of the same degree are added
/// at random, then the degree is raised. Returns `None` when the linear
/// systems get too large.
fn least_degree_n(a: &[Polynomial], p: &Polynomial, q: &Polynomial) -> Result<Option<PolyMatrix>> {
    let nvars = p.nvars();
    let row = PolyMatrix::from_row(a.to_vec(), nvars);
    let cap = a.iter().chain([p, q]).map(|x| x.total_degree().or_zero()).max().unwrap_or(0) * 3;
    let (Some((dp, _)), Some((dq, _))) = (
        least_degree_solution(&row, std::slice::from_ref(p), cap),
        least_degree_solution(&row, std::slice::from_ref(q), cap),
    ) else {
        return Ok(None);
    };
    let mut rng = RngState::seed_from_u64(0);
    let mut first = None;
    for d in dp.max(dq)..=dp.max(dq) + EXTRA_DEGREES {
        let (Some(sp), Some(sq)) = (
            bounded_solutions(&row, Some(std::slice::from_ref(p)), d),
            bounded_solutions(&row, Some(std::slice::from_ref(q)), d),
        ) else {
            break;
        };
        let (Some(np), Some(nq)) = (sp.particular, sq.particular) else {
            break;
        };
        let kernel = sp.kernel;
        for attempt in 0..=PERTURBATIONS {
            let mut cols = [np.clone(), nq.clone()];
            if attempt > 0 && !kernel.is_empty() {
                for col in cols.iter_mut() {
                    for _ in 0..attempt.min(3) {
                        let k = &kernel[rng.random_range(0..kernel.len())];
                        let c = Rational::from_integer(rng.random_range(-2i64..=2).into());
                        for (x, y) in col.iter_mut().zip(k) {
                            *x = &*x + &y.scale(&c);
                        }
                    }
                }
            }
            let n = PolyMatrix::from_fn(a.len(), 2, nvars, |i, j| cols[j][i].clone());
            if probably_unimodular(&n.transpose())? {
                return Ok(Some(n));
            }
            first.get_or_insert(n);
            if kernel.is_empty() {
                break;
            }
        }
    }
    Ok(first)
}

/// `N` with `a N = (p, q)`: of least degree when the linear systems are small
/// enough, from Gröbner cofactors otherwise.
pub(crate) fn derive_n(a: &[Polynomial], p: &Polynomial, q: &Polynomial) -> Result<PolyMatrix> {
    match least_degree_n(a, p, q)? {
        Some(n) => Ok(n),
        None => cofactor_n(a, p, q),
    }
}

/// Derives `M` and `N` from Gröbner cofactors. Fails when `<a> != <p, q>`.
pub fn derive_conversion(a: &[Polynomial], p: &Polynomial, q: &Polynomial) -> Result<ConversionPair> {
    let m = derive_m(a, p, q)?;
    let n = derive_n(a, p, q)?;
    check_m(&m, a, p, q)?;
    check_n(&n, a, p, q)?;
    conversion_pair(m, n, p, q)
}

/// `[M | (-q, p)^t]`, which is unimodular whenever `M` comes from a valid conversion.
pub fn extend_tilde_m(m: &PolyMatrix, p: &Polynomial, q: &Polynomial) -> Result<PolyMatrix> {
    let col = PolyMatrix::from_column(vec![-q, p.clone()], p.nvars());
    let tilde = m.hstack(&col)?;
    if !tilde.is_unimodular()? {
        return Err(Error::NotUnimodular(
            "[M | (-q, p)] has a common zero of its maximal minors; the conversion data is invalid".into(),
        ));
    }
    Ok(tilde)
}

/// A unimodular `M'` with `(p q) M' = a` and `M' N = I_2`.
///
/// Solves `x N = (e, -f)` and sets `M' = M + (q x; -p x)`. The least-degree
/// solution of the linear system is tried first; otherwise `x = e U_N^1 - f U_N^2`
/// from a completion `U_N` of `N^t`, reduced modulo the kernel of `N^t`.
pub fn make_unimodular_m(pair: &ConversionPair, p: &Polynomial, q: &Polynomial, seed: u64) -> Result<PolyMatrix> {
    if pair.is_orthogonal() {
        return Ok(pair.m.clone());
    }
    let nt = pair.n.transpose();
    let identity = PolyMatrix::identity(2, p.nvars());
    let with_x = |x: &PolyMatrix| -> Result<PolyMatrix> {
        let correction = PolyMatrix::from_fn(2, x.rows(), p.nvars(), |i, j| {
            if i == 0 {
                q * x.get(j, 0)
            } else {
                -&(p * x.get(j, 0))
            }
        });
        pair.m.try_add(&correction)
    };

    let rhs = [pair.e.clone(), -&pair.f];
    let cap = 3 * [nt.degree(), pair.e.total_degree(), pair.f.total_degree()]
        .iter()
        .map(|d| d.or_zero())
        .max()
        .unwrap_or(0)
        .max(1);
    if let Some((_, sol)) = least_degree_solution(&nt, &rhs, cap) {
        let x = PolyMatrix::from_column(sol.particular.expect("least-degree solutions exist"), p.nvars());
        let m_prime = with_x(&x)?;
        if m_prime.try_mul(&pair.n)? == identity {
            return Ok(m_prime);
        }
    }

    let len = pair.n.rows();
    let cert = qs_transform(&nt, seed)?;
    let u = &cert.u;
    let kernel = u.select_columns(&(2..len).collect::<Vec<_>>());
    for (se, sf) in [(1i64, -1i64), (-1, 1)] {
        let ce = pair.e.scale(&Rational::from_integer(se.into()));
        let cf = pair.f.scale(&Rational::from_integer(sf.into()));
        let x = PolyMatrix::from_fn(len, 1, p.nvars(), |i, _| &(&ce * u.get(i, 0)) + &(&cf * u.get(i, 1)));
        let x = if kernel.cols() > 0 { reduce_modulo(&x, &kernel) } else { x };
        let m_prime = with_x(&x)?;
        if m_prime.try_mul(&pair.n)? == identity {
            return Ok(m_prime);
        }
    }
    Err(Error::Internal("no sign choice gives M' N = I_2".into()))
}
