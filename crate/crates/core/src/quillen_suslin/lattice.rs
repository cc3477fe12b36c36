//! Submodules of `k[x]^d` given by generators, with reduced bases.
//!
//! Rows carry a multiplier vector recording them as combinations of the
//! original generators. Degrees are shifted per coordinate: coordinate `k`
//! counts `deg + shift[k]`, so with `shift[k] = k` the shifted degree of a
//! coefficient vector in `y` is the total degree of the polynomial it encodes.

use crate::poly::{Monomial, Polynomial, Rational};
use num_traits::{One, Zero};

/// Dense univariate polynomial, lowest coefficient first, no trailing zeros.
pub(crate) type UPoly = Vec<Rational>;

fn trim(p: &mut UPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn deg(p: &UPoly) -> Option<usize> {
    p.len().checked_sub(1)
}

/// `a += c x^shift b`.
fn add_scaled(a: &mut UPoly, b: &UPoly, c: &Rational, shift: usize) {
    if b.is_empty() || c.is_zero() {
        return;
    }
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, Rational::zero());
    }
    for (k, bk) in b.iter().enumerate() {
        if !bk.is_zero() {
            a[k + shift] += c * bk;
        }
    }
    trim(a);
}

#[cfg(test)]
fn mul(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder of `a` by nonzero `b`.
fn divrem(a: &UPoly, b: &UPoly) -> (UPoly, UPoly) {
    let db = deg(b).expect("nonzero divisor");
    let lc_inv = b[db].recip();
    let mut r = a.clone();
    let mut q = vec![Rational::zero(); a.len().saturating_sub(db)];
    while let Some(dr) = deg(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] * &lc_inv;
        add_scaled(&mut r, b, &-&c, dr - db);
        q[dr - db] = c;
    }
    trim(&mut q);
    (q, r)
}

/// Coefficients of a polynomial in at most the variable `x`.
pub(crate) fn to_upoly(p: &Polynomial, x: Option<usize>) -> UPoly {
    let mut out: UPoly = Vec::new();
    for (m, c) in p.terms() {
        let e = x.map_or(0, |x| m.exponent(x) as usize);
        if out.len() <= e {
            out.resize(e + 1, Rational::zero());
        }
        out[e] += c;
    }
    trim(&mut out);
    out
}

/// `sum_k p_k x^k y^shift` as a polynomial in `nvars` variables.
pub(crate) fn from_upoly(p: &UPoly, nvars: usize, x: Option<usize>, y: usize, shift: u32) -> Polynomial {
    let terms = p.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| {
        let mut e = vec![0u32; nvars];
        if let Some(x) = x {
            e[x] = k as u32;
        }
        e[y] += shift;
        (Monomial::from_exponents(&e), c.clone())
    });
    Polynomial::from_terms(nvars, terms)
}

#[derive(Clone, Debug)]
pub(crate) struct Row {
    pub v: Vec<UPoly>,
    pub mult: Vec<UPoly>,
}

impl Row {
    fn is_zero(&self) -> bool {
        self.v.iter().all(|c| c.is_empty())
    }

    /// `self += c x^shift other`, on both the vector and its multipliers.
    fn add_scaled(&mut self, other: &Row, c: &Rational, shift: usize) {
        for (a, b) in self.v.iter_mut().zip(&other.v) {
            add_scaled(a, b, c, shift);
        }
        for (a, b) in self.mult.iter_mut().zip(&other.mult) {
            add_scaled(a, b, c, shift);
        }
    }

    /// Scales the row to coprime integer coefficients.
    fn make_primitive(&mut self) {
        use num_integer::Integer;
        let all = || self.v.iter().chain(&self.mult).flatten().filter(|c| !c.is_zero());
        let den = all().fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = all().fold(num_bigint::BigInt::zero(), |acc, c| acc.gcd(&(c.numer() * (&den / c.denom()))));
        if num.is_zero() {
            return;
        }
        let scale = Rational::new(den, num);
        if scale.is_one() {
            return;
        }
        for c in self.v.iter_mut().chain(self.mult.iter_mut()).flatten() {
            *c *= &scale;
        }
    }

    fn add_mul(&mut self, other: &Row, q: &UPoly) {
        for (k, c) in q.iter().enumerate() {
            self.add_scaled(other, c, k);
        }
    }

    /// Shifted degree and leading position, the last coordinate attaining it.
    fn leading(&self, shifts: &[usize]) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for (k, c) in self.v.iter().enumerate() {
            if let Some(d) = deg(c) {
                let sd = d + shifts[k];
                if best.is_none_or(|(b, _)| sd >= b) {
                    best = Some((sd, k));
                }
            }
        }
        best
    }
}

/// Generator rows with identity multipliers.
pub(crate) fn rows_from(gens: Vec<Vec<UPoly>>) -> Vec<Row> {
    let n = gens.len();
    gens.into_iter()
        .enumerate()
        .map(|(i, v)| {
            let mut mult = vec![Vec::new(); n];
            mult[i] = vec![Rational::one()];
            Row { v, mult }
        })
        .collect()
}

/// Euclid on coordinate `col`: afterwards at most one row is nonzero there.
/// Returns that row, removed from `rows`.
pub(crate) fn eliminate_column(rows: &mut Vec<Row>, col: usize) -> Option<Row> {
    loop {
        let piv = rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| deg(&r.v[col]).map(|d| (d, i)))
            .min()?
            .1;
        let pivot = rows[piv].clone();
        let mut done = true;
        for (i, r) in rows.iter_mut().enumerate() {
            if i != piv && !r.v[col].is_empty() {
                let (q, _) = divrem(&r.v[col], &pivot.v[col]);
                r.add_mul(&pivot, &q.iter().map(|c| -c).collect());
                r.make_primitive();
                done &= r.v[col].is_empty();
            }
        }
        if done {
            return Some(rows.remove(piv));
        }
    }
}

/// Weak Popov form: zero rows dropped, leading positions pairwise distinct.
pub(crate) fn weak_popov(rows: &mut Vec<Row>, shifts: &[usize]) {
    rows.retain(|r| !r.is_zero());
    'outer: loop {
        let leads: Vec<(usize, usize)> = rows.iter().map(|r| r.leading(shifts).unwrap()).collect();
        for a in 0..rows.len() {
            for b in 0..rows.len() {
                if a != b && leads[a].1 == leads[b].1 && leads[a].0 >= leads[b].0 {
                    let lp = leads[a].1;
                    let ca = rows[a].v[lp].last().unwrap().clone();
                    let cb = rows[b].v[lp].last().unwrap().clone();
                    let other = rows[b].clone();
                    rows[a].add_scaled(&other, &-(ca / cb), leads[a].0 - leads[b].0);
                    rows[a].make_primitive();
                    if rows[a].is_zero() {
                        rows.remove(a);
                    }
                    continue 'outer;
                }
            }
        }
        return;
    }
}

/// Reduces `target` modulo a weak Popov basis until no leading term can be cancelled.
pub(crate) fn reduce(target: &mut Row, basis: &[Row], shifts: &[usize]) {
    let leads: Vec<(usize, usize)> = basis.iter().map(|r| r.leading(shifts).unwrap()).collect();
    while let Some((sd, lp)) = target.leading(shifts) {
        let Some(b) = (0..basis.len()).find(|&b| leads[b].1 == lp && leads[b].0 <= sd) else {
            return;
        };
        let ct = target.v[lp].last().unwrap().clone();
        let cb = basis[b].v[lp].last().unwrap().clone();
        target.add_scaled(&basis[b], &-(ct / cb), sd - leads[b].0);
    }
}

/// Solves `t + sum c_g gens_g` with coordinate `last` equal to one and the
/// other coordinates of least shifted degree. Returns the multipliers `c` and
/// the shifted degree reached, or `None` when coordinate `last` cannot be one.
pub(crate) fn normalize_coordinate(
    t: &[UPoly],
    gens: Vec<Vec<UPoly>>,
    last: usize,
    shifts: &[usize],
) -> Option<(Vec<UPoly>, usize)> {
    let ngens = gens.len();
    let mut rows = rows_from(gens);
    rows.iter_mut().for_each(Row::make_primitive);
    let pivot = eliminate_column(&mut rows, last)?;
    let mut want = vec![Rational::one()];
    add_scaled(&mut want, &t[last], &-Rational::one(), 0);
    let (q, r) = divrem(&want, &pivot.v[last]);
    if !r.is_empty() {
        return None;
    }
    let mut cand = Row {
        v: t.to_vec(),
        mult: vec![Vec::new(); ngens],
    };
    cand.add_mul(&pivot, &q);
    weak_popov(&mut rows, shifts);
    // The fixed coordinate is excluded from the reduction.
    let one = std::mem::take(&mut cand.v[last]);
    reduce(&mut cand, &rows, shifts);
    let sd = cand.leading(shifts).map_or(0, |(d, _)| d).max(shifts[last]);
    cand.v[last] = one;
    Some((cand.mult, sd))
}

/// Multipliers bringing `t + sum c_g gens_g` to a lower shifted degree, if any.
pub(crate) fn reduce_against(t: &[UPoly], gens: Vec<Vec<UPoly>>, shifts: &[usize]) -> Option<(Vec<UPoly>, usize)> {
    let ngens = gens.len();
    let mut rows = rows_from(gens);
    weak_popov(&mut rows, shifts);
    let mut cand = Row {
        v: t.to_vec(),
        mult: vec![Vec::new(); ngens],
    };
    let before = cand.leading(shifts)?.0;
    reduce(&mut cand, &rows, shifts);
    let after = cand.leading(shifts).map_or(0, |(d, _)| d);
    (after < before).then_some((cand.mult, after))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn up(c: &[i64]) -> UPoly {
        let mut p: UPoly = c.iter().map(|&x| rat(x)).collect();
        trim(&mut p);
        p
    }

    fn combine(t: &[UPoly], gens: &[Vec<UPoly>], mult: &[UPoly]) -> Vec<UPoly> {
        let mut out = t.to_vec();
        for (g, c) in gens.iter().zip(mult) {
            for (o, x) in out.iter_mut().zip(g) {
                let prod = mul(c, x);
                add_scaled(o, &prod, &Rational::one(), 0);
            }
        }
        out
    }

    #[test]
    fn division_with_remainder() {
        let a = up(&[1, 0, 0, 1]);
        let b = up(&[1, 1]);
        let (q, r) = divrem(&a, &b);
        let mut back = mul(&q, &b);
        add_scaled(&mut back, &r, &Rational::one(), 0);
        assert_eq!(back, a);
        assert!(r.is_empty());
    }

    #[test]
    fn normalized_coordinate_is_one() {
        // gens x and 1 + x in the second coordinate generate everything
        let t = vec![up(&[0, 0, 3]), up(&[2])];
        let gens = vec![vec![up(&[0, 1, 1]), up(&[0, 1])], vec![up(&[5]), up(&[1, 1])]];
        let (mult, _) = normalize_coordinate(&t, gens.clone(), 1, &[0, 1]).unwrap();
        let out = combine(&t, &gens, &mult);
        assert_eq!(out[1], up(&[1]));
    }

    #[test]
    fn unreachable_coordinate() {
        let t = vec![up(&[0]), up(&[0])];
        let gens = vec![vec![up(&[1]), up(&[0, 1])]];
        assert!(normalize_coordinate(&t, gens, 1, &[0, 1]).is_none());
    }

    #[test]
    fn weak_popov_has_distinct_leading_positions() {
        let mut rows = rows_from(vec![
            vec![up(&[1, 2, 1]), up(&[0, 1])],
            vec![up(&[0, 0, 1]), up(&[3])],
            vec![up(&[1]), up(&[1, 0, 1])],
        ]);
        weak_popov(&mut rows, &[0, 0]);
        let mut lps: Vec<usize> = rows.iter().map(|r| r.leading(&[0, 0]).unwrap().1).collect();
        lps.sort_unstable();
        lps.dedup();
        assert_eq!(lps.len(), rows.len());
    }
}
