//! Buchberger's algorithm with cofactor tracking.

use crate::poly::{Monomial, MonomialOrder, Polynomial, Rational};
use crate::polymat::PolyMatrix;
use num_traits::{One, Zero};
use std::cmp::Ordering;

/// Terms sorted decreasingly under a given order.
#[derive(Clone, Debug)]
pub(crate) struct OrderedPoly {
    pub terms: Vec<(Monomial, Rational)>,
}

impl OrderedPoly {
    pub fn from_poly(p: &Polynomial, order: &MonomialOrder) -> Self {
        let mut terms = p.terms().to_vec();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        OrderedPoly { terms }
    }

    pub fn to_poly(&self, nvars: usize) -> Polynomial {
        Polynomial::from_terms(nvars, self.terms.iter().cloned())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &Rational {
        &self.terms[0].1
    }

    /// `self - c * m * g`.
    fn sub_mul(&self, c: &Rational, m: &Monomial, g: &OrderedPoly, order: &MonomialOrder) -> OrderedPoly {
        let a = &self.terms;
        let b = &g.terms;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let mut bm: Option<Monomial> = b.first().map(|t| t.0.mul(m));
        while i < a.len() {
            let Some(mb) = bm.as_ref() else { break };
            match order.cmp(&a[i].0, mb) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), -(c * &b[j].1)));
                    j += 1;
                    bm = b.get(j).map(|t| t.0.mul(m));
                }
                Ordering::Equal => {
                    let v = &a[i].1 - &(c * &b[j].1);
                    if !v.is_zero() {
                        out.push((a[i].0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                    bm = b.get(j).map(|t| t.0.mul(m));
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        while let Some(mb) = bm {
            out.push((mb, -(c * &b[j].1)));
            j += 1;
            bm = b.get(j).map(|t| t.0.mul(m));
        }
        OrderedPoly { terms: out }
    }

    fn scale(&mut self, c: &Rational) {
        for t in self.terms.iter_mut() {
            t.1 = &t.1 * c;
        }
    }
}

#[derive(Clone, Debug)]
struct Element {
    poly: OrderedPoly,
    /// `poly = sum_i cof[i] * generators[i]`; empty when cofactors are not tracked.
    cof: Vec<Polynomial>,
}

fn sub_cof(a: &[Polynomial], c: &Rational, m: &Monomial, b: &[Polynomial]) -> Vec<Polynomial> {
    a.iter()
        .zip(b)
        .map(|(x, y)| if y.is_zero() { x.clone() } else { x.sub_mul_term(c, m, y) })
        .collect()
}

fn scale_cof(a: &mut [Polynomial], c: &Rational) {
    for x in a.iter_mut() {
        *x = x.scale(c);
    }
}

/// Reduced Gröbner basis, optionally with the matrix expressing it in the inputs.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub generators: Vec<Polynomial>,
    pub basis: Vec<Polynomial>,
    /// `generators.len() x basis.len()` matrix `T` with `basis_j = sum_i generators_i T_ij`.
    pub cofactors: Option<PolyMatrix>,
    pub order: MonomialOrder,
    ordered: Vec<OrderedPoly>,
    nvars: usize,
}

/// Remainder of a division together with the quotients.
#[derive(Clone, Debug)]
pub struct Division {
    /// One quotient per basis element.
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

impl GroebnerBasis {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_unit()
    }

    /// Full division of `f` by the basis.
    pub fn divide(&self, f: &Polynomial) -> Division {
        let n = self.nvars;
        let mut quotients: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); self.ordered.len()];
        let mut rem: Vec<(Monomial, Rational)> = Vec::new();
        let mut p = OrderedPoly::from_poly(f, &self.order);
        while !p.is_zero() {
            let lm = p.lm().clone();
            let found = self
                .ordered
                .iter()
                .enumerate()
                .find_map(|(k, g)| lm.div(g.lm()).map(|t| (k, t)));
            match found {
                Some((k, t)) => {
                    let g = &self.ordered[k];
                    let c = p.lc() / g.lc();
                    p = p.sub_mul(&c, &t, g, &self.order);
                    quotients[k].push((t, c));
                }
                None => {
                    let head = p.terms.remove(0);
                    rem.push(head);
                }
            }
        }
        Division {
            quotients: quotients
                .into_iter()
                .map(|q| Polynomial::from_terms(n, q))
                .collect(),
            remainder: Polynomial::from_terms(n, rem),
        }
    }

    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        self.divide(f).remainder
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.reduce(f).is_zero()
    }

    /// Coefficients `c` with `f = sum c_i generators_i`, when `f` is in the ideal.
    /// Requires cofactors.
    pub fn represent(&self, f: &Polynomial) -> Option<Vec<Polynomial>> {
        let t = self.cofactors.as_ref().expect("basis computed without cofactors");
        let d = self.divide(f);
        if !d.remainder.is_zero() {
            return None;
        }
        let mut out = vec![Polynomial::zero(self.nvars); self.generators.len()];
        for (j, q) in d.quotients.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let tij = t.get(i, j);
                if !tij.is_zero() {
                    *o = &*o + &(q * tij);
                }
            }
        }
        Some(out)
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Engine<'a> {
    order: &'a MonomialOrder,
    nvars: usize,
    track: bool,
    elems: Vec<Element>,
    /// Elements whose leading monomial became divisible by a later one.
    redundant: Vec<bool>,
    pairs: Vec<Pair>,
}

impl Engine<'_> {
    /// Fully reduces `p` (with cofactors) by the current non-redundant elements.
    fn reduce(&self, mut p: OrderedPoly, mut cof: Vec<Polynomial>) -> (OrderedPoly, Vec<Polynomial>) {
        let mut done: Vec<(Monomial, Rational)> = Vec::new();
        while !p.is_zero() {
            let lm = p.lm().clone();
            let found = self
                .elems
                .iter()
                .enumerate()
                .filter(|(k, _)| !self.redundant[*k])
                .find_map(|(k, g)| lm.div(g.poly.lm()).map(|t| (k, t)));
            match found {
                Some((k, t)) => {
                    let g = &self.elems[k];
                    let c = p.lc() / g.poly.lc();
                    p = p.sub_mul(&c, &t, &g.poly, self.order);
                    if self.track {
                        cof = sub_cof(&cof, &c, &t, &g.cof);
                    }
                }
                None => done.push(p.terms.remove(0)),
            }
        }
        (OrderedPoly { terms: done }, cof)
    }

    fn add(&mut self, mut poly: OrderedPoly, mut cof: Vec<Polynomial>) {
        let inv = poly.lc().recip();
        poly.scale(&inv);
        if self.track {
            scale_cof(&mut cof, &inv);
        }
        let h = self.elems.len();
        let lm_h = poly.lm().clone();
        self.elems.push(Element { poly, cof });
        self.redundant.push(false);

        // Gebauer-Moller update.
        let mut cand: Vec<Pair> = (0..h)
            .filter(|&i| !self.redundant[i])
            .map(|i| Pair {
                i,
                j: h,
                lcm: self.elems[i].poly.lm().lcm(&lm_h),
            })
            .collect();
        let coprime = |e: &Vec<Element>, p: &Pair| e[p.i].poly.lm().is_coprime(&lm_h);
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(p) = cand.pop() {
            let dominated = cand.iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime(&self.elems, &p) || !dominated {
                kept.push(p);
            }
        }
        let kept: Vec<Pair> = kept.into_iter().filter(|p| !coprime(&self.elems, p)).collect();
        let elems = &self.elems;
        self.pairs.retain(|p| {
            !(lm_h.divides(&p.lcm)
                && elems[p.i].poly.lm().lcm(&lm_h) != p.lcm
                && elems[p.j].poly.lm().lcm(&lm_h) != p.lcm)
        });
        self.pairs.extend(kept);
        for i in 0..h {
            if !self.redundant[i] && lm_h.divides(self.elems[i].poly.lm()) {
                self.redundant[i] = true;
            }
        }
    }

    fn s_poly(&self, p: &Pair) -> (OrderedPoly, Vec<Polynomial>) {
        let (a, b) = (&self.elems[p.i], &self.elems[p.j]);
        let ta = p.lcm.div(a.poly.lm()).unwrap();
        let tb = p.lcm.div(b.poly.lm()).unwrap();
        // Both are monic, so S = ta*a - tb*b.
        let zero = OrderedPoly { terms: Vec::new() };
        let one = Rational::one();
        let sa = zero.sub_mul(&-one.clone(), &ta, &a.poly, self.order);
        let s = sa.sub_mul(&one, &tb, &b.poly, self.order);
        let cof = if self.track {
            let nz: Vec<Polynomial> = vec![Polynomial::zero(self.nvars); a.cof.len()];
            let c1 = sub_cof(&nz, &-one.clone(), &ta, &a.cof);
            sub_cof(&c1, &one, &tb, &b.cof)
        } else {
            Vec::new()
        };
        (s, cof)
    }
}

fn run(gens: &[Polynomial], order: &MonomialOrder, track: bool) -> GroebnerBasis {
    assert!(!gens.is_empty(), "Groebner basis of an empty generating set");
    let nvars = gens[0].nvars();
    assert!(
        gens.iter().all(|g| g.nvars() == nvars),
        "generators must share the variable count"
    );
    assert_eq!(order.nvars(), nvars, "order has the wrong variable count");
    let k = gens.len();
    let mut eng = Engine {
        order,
        nvars,
        track,
        elems: Vec::new(),
        redundant: Vec::new(),
        pairs: Vec::new(),
    };
    let unit_cof = |i: usize| -> Vec<Polynomial> {
        if !track {
            return Vec::new();
        }
        let mut v = vec![Polynomial::zero(nvars); k];
        v[i] = Polynomial::one(nvars);
        v
    };
    // Insert the inputs smallest first so that later ones are reduced by earlier ones.
    let mut idx: Vec<usize> = (0..k).filter(|&i| !gens[i].is_zero()).collect();
    idx.sort_by(|&a, &b| {
        let la = OrderedPoly::from_poly(&gens[a], order);
        let lb = OrderedPoly::from_poly(&gens[b], order);
        order.cmp(la.lm(), lb.lm())
    });
    let mut unit: Option<(OrderedPoly, Vec<Polynomial>)> = None;
    for i in idx {
        let (r, c) = eng.reduce(OrderedPoly::from_poly(&gens[i], order), unit_cof(i));
        if r.is_zero() {
            continue;
        }
        if r.lm().is_one() {
            unit = Some((r, c));
            break;
        }
        eng.add(r, c);
    }
    while unit.is_none() && !eng.pairs.is_empty() {
        // Normal selection strategy: smallest lcm first.
        let best = (0..eng.pairs.len())
            .min_by(|&a, &b| order.cmp(&eng.pairs[a].lcm, &eng.pairs[b].lcm))
            .unwrap();
        let pair = eng.pairs.swap_remove(best);
        let (s, c) = eng.s_poly(&pair);
        let (r, c) = eng.reduce(s, c);
        if r.is_zero() {
            continue;
        }
        if r.lm().is_one() {
            unit = Some((r, c));
            break;
        }
        eng.add(r, c);
    }
    let (ordered, cofs): (Vec<OrderedPoly>, Vec<Vec<Polynomial>>) = match unit {
        Some((mut r, mut c)) => {
            let inv = r.lc().recip();
            r.scale(&inv);
            if track {
                scale_cof(&mut c, &inv);
            }
            (vec![r], vec![c])
        }
        None => interreduce(&mut eng),
    };
    let basis: Vec<Polynomial> = ordered.iter().map(|p| p.to_poly(nvars)).collect();
    let cofactors = if track {
        Some(PolyMatrix::from_fn(k, basis.len(), nvars, |i, j| cofs[j][i].clone()))
    } else {
        None
    };
    GroebnerBasis {
        generators: gens.to_vec(),
        basis,
        cofactors,
        order: order.clone(),
        ordered,
        nvars,
    }
}

fn interreduce(eng: &mut Engine<'_>) -> (Vec<OrderedPoly>, Vec<Vec<Polynomial>>) {
    // Keep one element per minimal leading monomial.
    let n = eng.elems.len();
    let mut keep: Vec<usize> = Vec::new();
    for i in 0..n {
        let lm = eng.elems[i].poly.lm();
        let dominated = (0..n).any(|j| {
            j != i && {
                let lj = eng.elems[j].poly.lm();
                lj.divides(lm) && (lj != lm || j < i)
            }
        });
        if !dominated {
            keep.push(i);
        }
    }
    for k in 0..n {
        eng.redundant[k] = !keep.contains(&k);
    }
    let mut out = Vec::new();
    let mut cofs = Vec::new();
    for &i in &keep {
        // Reduce the tail by the other kept elements.
        eng.redundant[i] = true;
        let e = eng.elems[i].clone();
        let head = OrderedPoly {
            terms: vec![e.poly.terms[0].clone()],
        };
        let tail = OrderedPoly {
            terms: e.poly.terms[1..].to_vec(),
        };
        let zero_cof = if eng.track {
            vec![Polynomial::zero(eng.nvars); e.cof.len()]
        } else {
            Vec::new()
        };
        let (rt, rc) = eng.reduce(tail, zero_cof);
        eng.redundant[i] = false;
        let mut terms = head.terms;
        terms.extend(rt.terms);
        out.push(OrderedPoly { terms });
        // Reducing the tail from zero cofactors gives rt = tail + sum rc_i gens_i,
        // so head + rt is expressed by cof(e) + rc.
        if eng.track {
            cofs.push(e.cof.iter().zip(&rc).map(|(a, b)| a + b).collect::<Vec<_>>());
        } else {
            cofs.push(Vec::new());
        }
    }
    // Sort by decreasing leading monomial for a canonical presentation.
    let mut idx: Vec<usize> = (0..out.len()).collect();
    idx.sort_by(|&a, &b| eng.order.cmp(out[b].lm(), out[a].lm()));
    (
        idx.iter().map(|&i| out[i].clone()).collect(),
        idx.iter().map(|&i| cofs[i].clone()).collect(),
    )
}

/// Reduced Gröbner basis without cofactors.
pub fn groebner_basis(gens: &[Polynomial], order: &MonomialOrder) -> GroebnerBasis {
    run(gens, order, false)
}

/// Reduced Gröbner basis with the exact cofactor matrix.
pub fn buchberger_cofactors(gens: &[Polynomial], order: &MonomialOrder) -> GroebnerBasis {
    run(gens, order, true)
}
