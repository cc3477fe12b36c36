use super::monomial::Monomial;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Total degree with `NegInfinity` standing for the degree of the zero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }

    /// The finite value, with the zero polynomial counted as degree 0.
    pub fn or_zero(self) -> u32 {
        self.finite().unwrap_or(0)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Sparse multivariate polynomial over the rationals.
///
/// Terms are kept sorted in strictly decreasing graded reverse lexicographic
/// order with no zero coefficients, so structural equality is mathematical
/// equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, rat(c))
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index out of range");
        Self::term(Monomial::var(nvars, index), Rational::one())
    }

    pub fn term(mono: Monomial, c: Rational) -> Self {
        let nvars = mono.nvars();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Polynomial {
            nvars,
            terms: vec![(mono, c)],
        }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut acc: FxHashMap<Monomial, Rational> = FxHashMap::default();
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial has wrong variable count");
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(nvars, acc)
    }

    fn from_map(nvars: usize, acc: FxHashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Polynomial { nvars, terms }
    }

    /// Trusts the caller that `terms` is sorted decreasingly and has no zeros.
    pub(crate) fn from_sorted_terms(nvars: usize, terms: Vec<(Monomial, Rational)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// A nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> Rational {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Rational::zero(),
        }
    }

    pub fn coefficient(&self, mono: &Monomial) -> Rational {
        match self.terms.binary_search_by(|(m, _)| mono.cmp(m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// Leading term under graded reverse lex.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.terms
            .first()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Degree {
        match self.terms.first() {
            None => Degree::NegInfinity,
            Some((m, _)) => Degree::Finite(m.degree()),
        }
    }

    /// Degree in one variable; `None` for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.exponent(var)).max()
    }

    pub fn is_free_of(&self, var: usize) -> bool {
        self.terms.iter().all(|(m, _)| m.exponent(var) == 0)
    }

    /// Variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&v| !self.is_free_of(v)).collect()
    }

    fn check_nvars(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCountMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_nvars(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_nvars(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_nvars(other)?;
        Ok(self.mul_impl(other))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for (m, c) in &b[j..] {
            out.push((m.clone(), if negate { -c } else { c.clone() }));
        }
        Polynomial {
            nvars: self.nvars,
            terms: out,
        }
    }

    fn mul_impl(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        let mut acc: FxHashMap<Monomial, Rational> = FxHashMap::default();
        acc.reserve(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca * cb;
                match acc.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += c;
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        Self::from_map(self.nvars, acc)
    }

    /// `c * m * self`; multiplying by a monomial preserves the term order.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc * c))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, cc)| (m.clone(), cc * c)).collect(),
        }
    }

    /// `self - c * m * g`, computed by a single merge.
    pub fn sub_mul_term(&self, c: &Rational, m: &Monomial, g: &Polynomial) -> Polynomial {
        self.merge(&g.mul_term(m, c), true)
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::VariableCountMismatch {
                left: self.nvars,
                right: point.len(),
            });
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[v].clone(), e as usize);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Substitutes a value for one variable; the variable count is unchanged.
    pub fn partial_eval(&self, var: usize, value: &Rational) -> Polynomial {
        let mut powers: Vec<Rational> = vec![Rational::one()];
        let terms = self.terms.iter().map(|(m, c)| {
            let e = m.exponent(var) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut mm = m.clone();
            mm.set_exponent(var, 0);
            (mm, c * &powers[e])
        });
        Polynomial::from_terms(self.nvars, terms.collect::<Vec<_>>())
    }

    /// Replaces `x_var` by `value`.
    pub fn substitute(&self, var: usize, value: &Polynomial) -> Result<Polynomial> {
        self.check_nvars(value)?;
        let coeffs = self.coefficients_in(var);
        // Horner in the substituted value.
        let mut acc = Polynomial::zero(self.nvars);
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        Ok(acc)
    }

    /// Evaluates at polynomial images `x_i -> images[i]`, all in a common ring.
    pub fn compose(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.nvars {
            return Err(Error::VariableCountMismatch {
                left: self.nvars,
                right: images.len(),
            });
        }
        let target = match images.first() {
            Some(p) => p.nvars,
            None => return Ok(self.clone()),
        };
        for p in images {
            if p.nvars != target {
                return Err(Error::VariableCountMismatch {
                    left: target,
                    right: p.nvars,
                });
            }
        }
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(target), p.clone()])
            .collect();
        let mut acc: FxHashMap<Monomial, Rational> = FxHashMap::default();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = &mut powers[v];
                while pw.len() <= e as usize {
                    let next = &pw[pw.len() - 1] * &images[v];
                    pw.push(next);
                }
                t = &t * &pw[e as usize];
            }
            for (mm, cc) in t.terms {
                *acc.entry(mm).or_insert_with(Rational::zero) += cc;
            }
        }
        Ok(Self::from_map(target, acc))
    }

    /// Applies `x -> C x + shift` with `C` an `n x n` rational matrix (row `i` gives the image of `x_i`).
    pub fn linear_change(&self, c: &[Vec<Rational>], shift: &[Rational]) -> Result<Polynomial> {
        let n = self.nvars;
        if c.len() != n || shift.len() != n || c.iter().any(|row| row.len() != n) {
            return Err(Error::Shape(format!(
                "linear change needs an {n}x{n} matrix and a shift of length {n}"
            )));
        }
        let images: Vec<Polynomial> = (0..n)
            .map(|i| {
                let mut terms: Vec<(Monomial, Rational)> = (0..n)
                    .filter(|&j| !c[i][j].is_zero())
                    .map(|j| (Monomial::var(n, j), c[i][j].clone()))
                    .collect();
                terms.push((Monomial::one(n), shift[i].clone()));
                Polynomial::from_terms(n, terms)
            })
            .collect();
        self.compose(&images)
    }

    /// Coefficients with respect to `x_var`: entry `k` multiplies `x_var^k` and is free of `x_var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        let deg = match self.degree_in(var) {
            None => return Vec::new(),
            Some(d) => d as usize,
        };
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(var) as usize;
            let mut mm = m.clone();
            mm.set_exponent(var, 0);
            buckets[e].push((mm, c.clone()));
        }
        // Removing the same power of x_var from two monomials does not change
        // their grevlex comparison, so each bucket is still sorted.
        buckets
            .into_iter()
            .map(|b| Polynomial {
                nvars: self.nvars,
                terms: b,
            })
            .collect()
    }

    /// Inverse of [`coefficients_in`](Self::coefficients_in).
    pub fn from_coefficients_in(nvars: usize, var: usize, coeffs: &[Polynomial]) -> Polynomial {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            for (m, cc) in &c.terms {
                let mut mm = m.clone();
                mm.set_exponent(var, mm.exponent(var) + k as u32);
                terms.push((mm, cc.clone()));
            }
        }
        Polynomial::from_terms(nvars, terms)
    }

    /// Leading coefficient with respect to `x_var`, as a polynomial free of `x_var`.
    pub fn leading_coefficient_in(&self, var: usize) -> Polynomial {
        self.coefficients_in(var)
            .pop()
            .unwrap_or_else(|| Polynomial::zero(self.nvars))
    }

    /// Multivariate division by a single polynomial under graded reverse lex.
    pub fn div_rem(&self, g: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.check_nvars(g)?;
        let (lm, lc) = match g.leading_term() {
            None => return Err(Error::DivisionByZero),
            Some((m, c)) => (m.clone(), c.clone()),
        };
        let mut q: Vec<(Monomial, Rational)> = Vec::new();
        let mut rem: Vec<(Monomial, Rational)> = Vec::new();
        let mut p = self.clone();
        while let Some((m, c)) = p.terms.first().cloned() {
            match m.div(&lm) {
                Some(t) => {
                    let coef = &c / &lc;
                    p = p.sub_mul_term(&coef, &t, g);
                    q.push((t, coef));
                }
                None => {
                    rem.push((m, c));
                    p.terms.remove(0);
                }
            }
        }
        Ok((
            Polynomial::from_terms(self.nvars, q),
            Polynomial::from_sorted_terms(self.nvars, rem),
        ))
    }

    /// `self / g` when the division is exact.
    pub fn divide_exact(&self, g: &Polynomial) -> Result<Option<Polynomial>> {
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.check_nvars(g)?;
        if self.is_zero() {
            return Ok(Some(Polynomial::zero(self.nvars)));
        }
        if let Some(c) = g.constant_value() {
            return Ok(Some(self.scale(&c.recip())));
        }
        let (lm, lc) = {
            let (m, c) = g.leading_term().unwrap();
            (m.clone(), c.clone())
        };
        let mut q: Vec<(Monomial, Rational)> = Vec::new();
        let mut p = self.clone();
        while let Some((m, c)) = p.terms.first() {
            match m.div(&lm) {
                Some(t) => {
                    let coef = c / &lc;
                    p = p.sub_mul_term(&coef, &t, g);
                    q.push((t, coef));
                }
                None => return Ok(None),
            }
        }
        Ok(Some(Polynomial::from_sorted_terms(self.nvars, q)))
    }

    /// Embeds into a ring with more variables (new ones appended) or drops trailing unused ones.
    pub fn with_nvars(&self, nvars: usize) -> Result<Polynomial> {
        if nvars < self.nvars {
            for v in nvars..self.nvars {
                if !self.is_free_of(v) {
                    return Err(Error::Unsupported(format!(
                        "cannot drop variable {v} which occurs in the polynomial"
                    )));
                }
            }
        }
        Ok(Polynomial::from_terms(
            nvars,
            self.terms
                .iter()
                .map(|(m, c)| (m.resized(nvars), c.clone()))
                .collect::<Vec<_>>(),
        ))
    }

    /// Renames variables: `x_i` becomes `x_{map[i]}` in a ring with `nvars` variables.
    pub fn rename_vars(&self, map: &[usize], nvars: usize) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0u32; nvars];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[map[i]] += x;
            }
            (Monomial::from_exponents(&e), c.clone())
        });
        Polynomial::from_terms(nvars, terms.collect::<Vec<_>>())
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.terms
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()))
    }

    /// The positive constant `c` for which `c * self` has coprime integer coefficients; one for zero.
    pub fn primitive_scale(&self) -> Rational {
        use num_integer::Integer;
        let den = self.denominator_lcm();
        let num = self
            .terms
            .iter()
            .fold(BigInt::zero(), |acc, (_, c)| acc.gcd(&(c.numer() * (&den / c.denom()))));
        if num.is_zero() {
            Rational::one()
        } else {
            Rational::new(den, num)
        }
    }

    /// Largest absolute value among numerators and denominators.
    pub fn height(&self) -> BigInt {
        self.terms
            .iter()
            .map(|(_, c)| c.numer().abs().max(c.denom().clone()))
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial {
                (&self).$f(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
