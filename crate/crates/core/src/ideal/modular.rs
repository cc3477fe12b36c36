//! Gröbner bases over a prime field, used as a fast probabilistic test.
//!
//! Reduction modulo a prime can change the answer for finitely many
//! primes, so callers use it only to choose among candidates whose exact
//! properties are checked afterwards.

use crate::poly::{Monomial, MonomialOrder, Polynomial};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use std::cmp::Ordering;

const P: u64 = 2_305_843_009_213_693_951; // 2^61 - 1

fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

fn inv(a: u64) -> u64 {
    pow(a, P - 2)
}

fn reduce_int(x: &BigInt) -> u64 {
    x.mod_floor(&BigInt::from(P)).to_u64().expect("residue fits")
}

type ModPoly = Vec<(Monomial, u64)>;

fn to_mod(p: &Polynomial, order: &MonomialOrder) -> Option<ModPoly> {
    let mut out = Vec::with_capacity(p.len());
    for (m, c) in p.terms() {
        let den = reduce_int(c.denom());
        if den.is_zero() {
            return None;
        }
        let v = mul(reduce_int(c.numer()), inv(den));
        if v != 0 {
            out.push((m.clone(), v));
        }
    }
    out.sort_by(|a, b| order.cmp(&b.0, &a.0));
    Some(out)
}

/// `a - c * t * b`.
fn sub_mul(a: &ModPoly, c: u64, t: &Monomial, b: &ModPoly, order: &MonomialOrder) -> ModPoly {
    let neg = P - c;
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let mb = b.get(j).map(|x| x.0.mul(t));
        let ord = match (a.get(i), &mb) {
            (Some(x), Some(y)) => order.cmp(&x.0, y),
            (Some(_), None) => Ordering::Greater,
            _ => Ordering::Less,
        };
        match ord {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((mb.unwrap(), mul(neg, b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let v = (a[i].1 + mul(neg, b[j].1)) % P;
                if v != 0 {
                    out.push((a[i].0.clone(), v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn make_monic(p: &mut ModPoly) {
    let c = inv(p[0].1);
    for t in p.iter_mut() {
        t.1 = mul(t.1, c);
    }
}

/// Leading-term reduction of `p` by `basis`, continued on the tail.
fn reduce(mut p: ModPoly, basis: &[ModPoly], order: &MonomialOrder) -> ModPoly {
    let mut done = Vec::new();
    while !p.is_empty() {
        let lm = p[0].0.clone();
        match basis.iter().find_map(|g| lm.div(&g[0].0).map(|t| (g, t))) {
            Some((g, t)) => {
                let c = p[0].1;
                p = sub_mul(&p, c, &t, g, order);
            }
            None => done.push(p.remove(0)),
        }
    }
    done
}

/// Whether `gens` generate the unit ideal modulo a large prime; `None` when
/// a coefficient has a denominator divisible by the prime.
pub fn is_unit_ideal_mod_p(gens: &[Polynomial]) -> Option<bool> {
    let nonzero: Vec<&Polynomial> = gens.iter().filter(|g| !g.is_zero()).collect();
    let Some(first) = nonzero.first() else {
        return Some(false);
    };
    let order = MonomialOrder::grevlex(first.nvars());
    let mut basis: Vec<ModPoly> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let insert = |mut r: ModPoly, basis: &mut Vec<ModPoly>, pairs: &mut Vec<(usize, usize)>| -> bool {
        make_monic(&mut r);
        if r[0].0.is_one() {
            return true;
        }
        let h = basis.len();
        pairs.extend((0..h).map(|i| (i, h)));
        basis.push(r);
        false
    };
    for g in nonzero {
        let r = reduce(to_mod(g, &order)?, &basis, &order);
        if !r.is_empty() && insert(r, &mut basis, &mut pairs) {
            return Some(true);
        }
    }
    while let Some(best) = (0..pairs.len()).min_by(|&a, &b| {
        let la = basis[pairs[a].0][0].0.lcm(&basis[pairs[a].1][0].0);
        let lb = basis[pairs[b].0][0].0.lcm(&basis[pairs[b].1][0].0);
        order.cmp(&la, &lb)
    }) {
        let (i, j) = pairs.swap_remove(best);
        let (a, b) = (&basis[i], &basis[j]);
        if a[0].0.is_coprime(&b[0].0) {
            continue;
        }
        let l = a[0].0.lcm(&b[0].0);
        let s = sub_mul(
            &sub_mul(&Vec::new(), P - 1, &l.div(&a[0].0).unwrap(), a, &order),
            1,
            &l.div(&b[0].0).unwrap(),
            b,
            &order,
        );
        let r = reduce(s, &basis, &order);
        if !r.is_empty() && insert(r, &mut basis, &mut pairs) {
            return Some(true);
        }
    }
    Some(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn ps(v: &[&str]) -> Vec<Polynomial> {
        let names = vec!["x".to_string(), "y".to_string()];
        v.iter().map(|s| parse_polynomial(s, &names).unwrap()).collect()
    }

    #[test]
    fn agrees_with_exact_answers() {
        assert_eq!(is_unit_ideal_mod_p(&ps(&["x", "1 - x"])), Some(true));
        assert_eq!(is_unit_ideal_mod_p(&ps(&["x*y - 1", "x^2 + y", "x - y"])), Some(false));
        assert_eq!(is_unit_ideal_mod_p(&ps(&["x^2 - y", "x*y - 1", "y^2 - x"])), Some(false));
        assert_eq!(is_unit_ideal_mod_p(&ps(&["x^2 - y", "x*y - 1", "y^2 - x + 1"])), Some(true));
        assert_eq!(is_unit_ideal_mod_p(&ps(&["x/3 + 1/2", "y"])), Some(false));
    }
}
