//! Completion of unimodular rows by descent on the degree in one variable.
//!
//! Write `R = A[y]`. Once some entry `f` of the row has a constant leading
//! coefficient in `y`, every other entry is reduced modulo `f`. If no other
//! entry is monic of smaller degree, we look for a combination
//! `v_j + sum a_i v_i` whose coefficient of `y^(d-1)` modulo `f` equals one;
//! this is an ideal membership question in `A`. It yields a new monic entry of
//! lower degree. When all entries but `f` are free of `y`, they form a
//! unimodular row over `A` and the problem recurses on fewer variables.
//! Every step is an elementary column operation, so the accumulated transform
//! has determinant one.

use super::lattice::{from_upoly, normalize_coordinate, reduce_against, to_upoly, UPoly};
use super::RngState;
use crate::error::{Error, Result};
use crate::ideal::{is_unit_ideal, represent_in_ideal};
use crate::poly::{represent_univariate, Polynomial, Rational};
use crate::polymat::PolyMatrix;
use rand::Rng;

const MAX_STEPS: usize = 200;
const MAX_PERTURBATIONS: usize = 8;

/// A row together with the transform that produced it from the input row.
pub(crate) struct RowOps {
    pub v: Vec<Polynomial>,
    pub u: PolyMatrix,
}

impl RowOps {
    pub fn new(v: Vec<Polynomial>, nvars: usize) -> Self {
        let s = v.len();
        RowOps {
            v,
            u: PolyMatrix::identity(s, nvars),
        }
    }

    /// `v_target += factor * v_source`, mirrored on the columns of `u`.
    pub fn add(&mut self, target: usize, source: usize, factor: &Polynomial) {
        if factor.is_zero() {
            return;
        }
        self.v[target] = &self.v[target] + &(factor * &self.v[source]);
        self.u.add_column_multiple(target, source, factor);
    }

    /// Right-multiplies the entries at `idx` by the square matrix `w`.
    pub fn apply_block(&mut self, idx: &[usize], w: &PolyMatrix) {
        let nvars = self.u.nvars();
        let k = idx.len();
        let mut new_v = Vec::with_capacity(k);
        for a in 0..k {
            let mut acc = Polynomial::zero(nvars);
            for b in 0..k {
                if !w.get(b, a).is_zero() {
                    acc = &acc + &(&self.v[idx[b]] * w.get(b, a));
                }
            }
            new_v.push(acc);
        }
        let sub = self.u.select_columns(idx);
        let prod = &sub * w;
        for (a, &j) in idx.iter().enumerate() {
            self.v[j] = new_v[a].clone();
            for i in 0..self.u.rows() {
                self.u.set(i, j, prod.get(i, a).clone());
            }
        }
    }

    /// Scales entry `j` to coprime integer coefficients.
    pub fn normalize(&mut self, j: usize) {
        let c = self.v[j].primitive_scale();
        if !num_traits::One::is_one(&c) {
            self.v[j] = self.v[j].scale(&c);
            self.u.scale_column(j, &Polynomial::constant(self.u.nvars(), c));
        }
    }

    pub fn unit_index(&self) -> Option<usize> {
        self.v.iter().position(|p| p.is_unit())
    }

    /// Clears the row against the unit at `k`; afterwards `v = e_1`.
    pub fn finish(mut self, k: usize) -> PolyMatrix {
        let nvars = self.u.nvars();
        let c = self.v[k].constant_value().expect("unit entry");
        let cinv = c.recip();
        for j in 0..self.v.len() {
            if j != k && !self.v[j].is_zero() {
                let f = self.v[j].scale(&-&cinv);
                self.add(j, k, &f);
            }
        }
        self.u.scale_column(k, &Polynomial::constant(nvars, cinv));
        self.u.swap_columns(0, k);
        self.u
    }
}

/// `f` viewed as a polynomial in `y` with constant leading coefficient.
struct Monic {
    y: usize,
    nvars: usize,
    coeffs: Vec<Polynomial>,
    lc_inv: Rational,
}

impl Monic {
    fn new(f: &Polynomial, y: usize) -> Self {
        let coeffs = f.coefficients_in(y);
        let lc = coeffs.last().unwrap().constant_value().expect("constant leading coefficient");
        Monic {
            y,
            nvars: f.nvars(),
            coeffs,
            lc_inv: lc.recip(),
        }
    }

    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Reduces a coefficient list in place, returning the quotient's coefficients.
    fn reduce_coeffs(&self, c: &mut Vec<Polynomial>) -> Vec<Polynomial> {
        let d = self.degree();
        let mut q = vec![Polynomial::zero(self.nvars); c.len().saturating_sub(d)];
        while c.len() > d {
            let top = c.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let t = top.scale(&self.lc_inv);
            let shift = c.len() - d;
            for k in 0..d {
                if !self.coeffs[k].is_zero() {
                    c[shift + k] = &c[shift + k] - &(&t * &self.coeffs[k]);
                }
            }
            q[shift] = t;
        }
        q
    }

    fn divmod(&self, p: &Polynomial) -> (Polynomial, Polynomial) {
        let mut c = p.coefficients_in(self.y);
        let q = self.reduce_coeffs(&mut c);
        (
            Polynomial::from_coefficients_in(self.nvars, self.y, &q),
            Polynomial::from_coefficients_in(self.nvars, self.y, &c),
        )
    }

    /// Coefficient vectors, of length `d`, of `y^k p mod f` for `k = 0..d`.
    fn remainders(&self, p: &Polynomial) -> Vec<Vec<Polynomial>> {
        let d = self.degree();
        let mut c = p.coefficients_in(self.y);
        self.reduce_coeffs(&mut c);
        let mut out = Vec::with_capacity(d);
        for _ in 0..d {
            c.resize(d, Polynomial::zero(self.nvars));
            out.push(c.clone());
            c.insert(0, Polynomial::zero(self.nvars));
            self.reduce_coeffs(&mut c);
        }
        out
    }

    /// Coefficients of `y^k p mod f` in degree `d - 1`, for `k = 0..d`.
    fn top_coefficients(&self, p: &Polynomial) -> Vec<Polynomial> {
        let d = self.degree();
        self.remainders(p).into_iter().map(|c| c[d - 1].clone()).collect()
    }
}

fn coefficient_in(p: &Polynomial, y: usize, k: usize) -> Polynomial {
    p.coefficients_in(y)
        .into_iter()
        .nth(k)
        .unwrap_or_else(|| Polynomial::zero(p.nvars()))
}

fn monic_degree(p: &Polynomial, y: usize) -> Option<u32> {
    match p.degree_in(y) {
        Some(d) if d > 0 && p.leading_coefficient_in(y).is_constant() => Some(d),
        _ => None,
    }
}

fn support(v: &[Polynomial]) -> Vec<usize> {
    let mut vars: Vec<usize> = v.iter().flat_map(|p| p.support_vars()).collect();
    vars.sort_unstable();
    vars.dedup();
    vars
}

fn not_unimodular() -> Error {
    Error::NotUnimodular("the row entries have a common zero".into())
}

/// `U = [[b1, -v2], [b2, v1]]` for `b1 v1 + b2 v2 = 1`.
fn complete_pair(v: &[Polynomial]) -> Result<PolyMatrix> {
    let nvars = v[0].nvars();
    let b = is_unit_ideal(v).ok_or_else(not_unimodular)?;
    PolyMatrix::from_rows(
        vec![vec![b[0].clone(), -&v[1]], vec![b[1].clone(), v[0].clone()]],
        nvars,
    )
}

/// A transform `U` with determinant one and `v * U = e_1`.
pub(crate) fn complete_row(v: &[Polynomial], rng: &mut RngState, retries: usize) -> Result<PolyMatrix> {
    let nvars = v[0].nvars();
    let s = v.len();
    if let Some(k) = v.iter().position(|p| p.is_unit()) {
        return Ok(RowOps::new(v.to_vec(), nvars).finish(k));
    }
    if s == 1 {
        return Err(not_unimodular());
    }
    if s == 2 {
        return complete_pair(v);
    }
    let vars = support(v);
    if vars.is_empty() {
        return Err(not_unimodular());
    }
    for &y in vars.iter().rev() {
        if v.iter().any(|p| monic_degree(p, y).is_some()) {
            if let Some(u) = descend(v, y, rng, retries)? {
                return Ok(u);
            }
        }
    }
    let y = *vars.last().unwrap();
    for _ in 0..retries {
        let mut forward: Vec<Polynomial> = (0..nvars).map(|i| Polynomial::var(nvars, i)).collect();
        let mut inverse = forward.clone();
        for &x in vars.iter().filter(|&&x| x != y) {
            let mut lambda = 0i64;
            while lambda == 0 {
                lambda = rng.random_range(-3..=3);
            }
            let shift = Polynomial::var(nvars, y).scale(&Rational::from_integer(lambda.into()));
            forward[x] = &forward[x] + &shift;
            inverse[x] = &inverse[x] - &shift;
        }
        let w: Vec<Polynomial> = v
            .iter()
            .map(|p| p.compose(&forward))
            .collect::<Result<_>>()?;
        if let Some(u) = descend(&w, y, rng, retries)? {
            return u.compose(&inverse);
        }
    }
    Err(Error::RetryExhausted {
        attempts: retries,
        what: "row completion by degree descent".into(),
    })
}

fn descend(v: &[Polynomial], y: usize, rng: &mut RngState, retries: usize) -> Result<Option<PolyMatrix>> {
    let nvars = v[0].nvars();
    let s = v.len();
    let mut st = RowOps::new(v.to_vec(), nvars);
    let mut perturbations = 0;
    for _ in 0..MAX_STEPS {
        if let Some(k) = st.unit_index() {
            return Ok(Some(st.finish(k)));
        }
        for j in 0..s {
            st.normalize(j);
        }
        let piv = (0..s)
            .filter_map(|i| monic_degree(&st.v[i], y).map(|d| (d, st.v[i].total_degree().or_zero(), st.v[i].len(), i)))
            .min()
            .map(|(_, _, _, i)| i);
        let Some(piv) = piv else {
            return Ok(None);
        };
        let m = Monic::new(&st.v[piv], y);
        let d = m.degree();
        for j in 0..s {
            if j != piv && st.v[j].degree_in(y).is_some_and(|e| e as usize >= d) {
                let (q, _) = m.divmod(&st.v[j]);
                st.add(j, piv, &-q);
            }
        }
        if let Some(x) = univariate_base(&st.v, y) {
            inter_reduce(&mut st, piv, &m, x);
        }
        if (0..s).any(|j| j != piv && (st.v[j].is_unit() || monic_degree(&st.v[j], y).is_some())) {
            continue;
        }
        let others: Vec<usize> = (0..s).filter(|&j| j != piv).collect();
        if others.iter().all(|&j| st.v[j].is_free_of(y)) {
            let sub: Vec<Polynomial> = others.iter().map(|&j| st.v[j].clone()).collect();
            let w = complete_row(&sub, rng, retries)?;
            st.apply_block(&others, &w);
            continue;
        }
        if single_step(&mut st, piv, &m) {
            continue;
        }
        if perturbations == MAX_PERTURBATIONS {
            return Ok(None);
        }
        perturbations += 1;
        let a = others[rng.random_range(0..others.len())];
        let mut b = a;
        while b == a {
            b = others[rng.random_range(0..others.len())];
        }
        let mut lambda = 0i64;
        while lambda == 0 {
            lambda = rng.random_range(-3..=3);
        }
        let mut factor = Polynomial::from_int(nvars, lambda);
        if rng.random_bool(0.5) {
            factor = &factor * &Polynomial::var(nvars, y);
        }
        st.add(a, b, &factor);
    }
    Ok(None)
}

fn represent(target: &Polynomial, gens: &[Polynomial]) -> Option<Vec<Polynomial>> {
    let mut vars = support(gens);
    vars.extend(target.support_vars());
    vars.sort_unstable();
    vars.dedup();
    if vars.len() <= 1 {
        represent_univariate(target, gens)
    } else {
        represent_in_ideal(target, gens)
    }
}

/// `Some(x)` when the entries involve no variable besides `y` and `x`.
fn univariate_base(v: &[Polynomial], y: usize) -> Option<Option<usize>> {
    let mut base: Vec<usize> = support(v).into_iter().filter(|&w| w != y).collect();
    (base.len() <= 1).then(|| base.pop())
}

fn remainder_vectors(st: &RowOps, piv: usize, m: &Monic, x: Option<usize>) -> Vec<Vec<Vec<UPoly>>> {
    (0..st.v.len())
        .map(|i| {
            if i == piv {
                return Vec::new();
            }
            m.remainders(&st.v[i])
                .iter()
                .map(|c| c.iter().map(|p| to_upoly(p, x)).collect())
                .collect()
        })
        .collect()
}

/// Generators `y^k v_i mod f` for `i` outside `skip`, with their keys `(i, k)`.
fn shifted_generators(rems: &[Vec<Vec<UPoly>>], skip: &[usize]) -> (Vec<Vec<UPoly>>, Vec<(usize, usize)>) {
    let mut gens = Vec::new();
    let mut keys = Vec::new();
    for (i, r) in rems.iter().enumerate() {
        if skip.contains(&i) {
            continue;
        }
        for (k, w) in r.iter().enumerate() {
            if w.iter().any(|c| !c.is_empty()) {
                gens.push(w.clone());
                keys.push((i, k));
            }
        }
    }
    (gens, keys)
}

fn multipliers(keys: Vec<(usize, usize)>, mult: Vec<UPoly>, nvars: usize, x: Option<usize>, y: usize) -> Vec<(usize, Polynomial)> {
    let mut alphas: Vec<(usize, Polynomial)> = Vec::new();
    for ((i, k), c) in keys.into_iter().zip(mult) {
        if c.is_empty() {
            continue;
        }
        let term = from_upoly(&c, nvars, x, y, k as u32);
        match alphas.iter_mut().find(|(ii, _)| *ii == i) {
            Some((_, a)) => *a = &*a + &term,
            None => alphas.push((i, term)),
        }
    }
    alphas
}

/// Lowers the degree of each non-pivot entry modulo the others, largest first.
fn inter_reduce(st: &mut RowOps, piv: usize, m: &Monic, x: Option<usize>) {
    let s = st.v.len();
    let nvars = st.u.nvars();
    let shifts: Vec<usize> = (0..m.degree()).collect();
    let mut order: Vec<usize> = (0..s).filter(|&j| j != piv).collect();
    order.sort_by_key(|&j| std::cmp::Reverse(st.v[j].total_degree().or_zero()));
    for j in order {
        let rems = remainder_vectors(st, piv, m, x);
        let (gens, keys) = shifted_generators(&rems, &[piv, j]);
        if gens.is_empty() {
            continue;
        }
        if let Some((mult, _)) = reduce_against(&rems[j][0], gens, &shifts) {
            let alphas = multipliers(keys, mult, nvars, x, m.y);
            apply_step(st, piv, m, j, &alphas);
        }
    }
}

fn apply_step(st: &mut RowOps, piv: usize, m: &Monic, j: usize, alphas: &[(usize, Polynomial)]) {
    for (i, a) in alphas {
        st.add(j, *i, a);
    }
    let (q, _) = m.divmod(&st.v[j]);
    st.add(j, piv, &-q);
}

/// Over a base ring in one variable `x` the multipliers form a submodule of
/// `k[x]^d`; among the combinations with coefficient one at `y^(d-1)` we take
/// one of least total degree, which keeps the entries from growing.
fn lattice_step(st: &mut RowOps, piv: usize, m: &Monic, x: Option<usize>) -> bool {
    let nvars = st.u.nvars();
    let s = st.v.len();
    let d = m.degree();
    let shifts: Vec<usize> = (0..d).collect();
    let rems = remainder_vectors(st, piv, m, x);
    let mut best: Option<(usize, usize, Vec<(usize, Polynomial)>)> = None;
    for j in (0..s).filter(|&j| j != piv) {
        let (gens, keys) = shifted_generators(&rems, &[piv, j]);
        if gens.is_empty() {
            continue;
        }
        let Some((mult, sd)) = normalize_coordinate(&rems[j][0], gens, d - 1, &shifts) else {
            continue;
        };
        if best.as_ref().is_some_and(|(b, _, _)| *b <= sd) {
            continue;
        }
        best = Some((sd, j, multipliers(keys, mult, nvars, x, m.y)));
    }
    let Some((_, j, alphas)) = best else {
        return false;
    };
    apply_step(st, piv, m, j, &alphas);
    true
}

/// Tries to make some non-pivot entry monic of degree `d - 1` in one combination.
fn single_step(st: &mut RowOps, piv: usize, m: &Monic) -> bool {
    let nvars = st.u.nvars();
    let s = st.v.len();
    let d = m.degree();
    let y = m.y;
    if let Some(x) = univariate_base(&st.v, y) {
        return lattice_step(st, piv, m, x);
    }
    let tops: Vec<Vec<Polynomial>> = (0..s)
        .map(|i| {
            if i == piv {
                Vec::new()
            } else {
                m.top_coefficients(&st.v[i])
            }
        })
        .collect();
    let mut best: Option<((u32, usize), usize, Vec<(usize, Polynomial)>)> = None;
    for j in (0..s).filter(|&j| j != piv) {
        let target = &Polynomial::one(nvars) - &coefficient_in(&st.v[j], y, d - 1);
        let mut gens = Vec::new();
        let mut keys = Vec::new();
        for i in (0..s).filter(|&i| i != piv && i != j) {
            for (k, g) in tops[i].iter().enumerate() {
                if !g.is_zero() {
                    gens.push(g.clone());
                    keys.push((i, k));
                }
            }
        }
        if gens.is_empty() {
            continue;
        }
        let Some(coeffs) = represent(&target, &gens) else {
            continue;
        };
        let mut alphas: Vec<(usize, Polynomial)> = Vec::new();
        for ((i, k), c) in keys.into_iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            let term = &c * &Polynomial::var(nvars, y).pow(k as u32);
            match alphas.iter_mut().find(|(ii, _)| *ii == i) {
                Some((_, a)) => *a = &*a + &term,
                None => alphas.push((i, term)),
            }
        }
        let mut candidate = st.v[j].clone();
        for (i, a) in &alphas {
            candidate = &candidate + &(a * &st.v[*i]);
        }
        let (_, reduced) = m.divmod(&candidate);
        let cost = (reduced.total_degree().or_zero(), reduced.len());
        if best.as_ref().is_none_or(|(c, _, _)| cost < *c) {
            best = Some((cost, j, alphas));
        }
    }
    let Some((_, j, alphas)) = best else {
        return false;
    };
    apply_step(st, piv, m, j, &alphas);
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::default_var_names;
    use rand::SeedableRng;

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, &default_var_names(2)).unwrap()
    }

    fn check(v: &[Polynomial]) {
        let mut rng = RngState::seed_from_u64(7);
        let u = complete_row(v, &mut rng, 32).unwrap();
        let row = PolyMatrix::from_row(v.to_vec(), 2);
        let prod = &row * &u;
        for j in 0..v.len() {
            let want = if j == 0 { Polynomial::one(2) } else { Polynomial::zero(2) };
            assert_eq!(prod.get(0, j), &want);
        }
        assert!(u.determinant().unwrap().is_unit());
    }

    #[test]
    fn monic_division_and_top_coefficients() {
        let f = p("x2^2 + x1*x2 + 1");
        let m = Monic::new(&f, 1);
        let (q, r) = m.divmod(&p("x2^3"));
        assert_eq!(&(&q * &f) + &r, p("x2^3"));
        assert!(r.degree_in(1).unwrap_or(0) < 2);
        // y * (x2) = x2^2 = -x1*x2 - 1 mod f
        let tops = m.top_coefficients(&p("x2"));
        assert_eq!(tops, vec![p("1"), p("-x1")]);
    }

    #[test]
    fn rows_with_a_unit_or_pair() {
        check(&[p("x1"), p("3"), p("x2^2")]);
        check(&[p("x1"), p("1 - x1")]);
    }

    #[test]
    fn univariate_rows_follow_euclid() {
        check(&[p("x1^2 + 1"), p("x1^3"), p("x1^2 - 2*x1")]);
    }

    #[test]
    fn bivariate_rows_without_monic_entry() {
        check(&[p("x1*x2 + 1"), p("x1*x2^2"), p("x1 + x2")]);
        check(&[p("x1*x2 - 1"), p("x1^2"), p("x2^2")]);
    }
}
