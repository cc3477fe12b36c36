//! Multivariate gcd by recursive primitive pseudo-remainder sequences.

use super::polynomial::{Polynomial, Rational};
use num_traits::{One, Zero};

/// Pseudo-remainder of `f` by `g` with respect to `x_var`:
/// `lc(g)^(deg f - deg g + 1) * f` reduced modulo `g`.
pub fn pseudo_remainder(f: &Polynomial, g: &Polynomial, var: usize) -> Polynomial {
    let dg = g.degree_in(var).expect("pseudo-division by zero");
    let lc = g.leading_coefficient_in(var);
    let gc = g.coefficients_in(var);
    let mut r = f.coefficients_in(var);
    while r.len() > dg as usize && !r.is_empty() {
        let top = r.pop().unwrap();
        let shift = r.len() - dg as usize;
        for c in r.iter_mut() {
            *c = &*c * &lc;
        }
        for (k, gk) in gc.iter().enumerate().take(dg as usize) {
            r[shift + k] = &r[shift + k] - &(&top * gk);
        }
        while matches!(r.last(), Some(c) if c.is_zero()) {
            r.pop();
        }
    }
    Polynomial::from_coefficients_in(f.nvars(), var, &r)
}

/// Gcd of the coefficients with respect to `x_var`.
pub fn content_in(f: &Polynomial, var: usize) -> Polynomial {
    let mut g = Polynomial::zero(f.nvars());
    for c in f.coefficients_in(var) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_unit() {
            break;
        }
    }
    g
}

fn primitive_part_in(f: &Polynomial, var: usize) -> Polynomial {
    let c = content_in(f, var);
    f.divide_exact(&c)
        .expect("content is nonzero")
        .expect("content divides")
}

/// Greatest common divisor, normalised to have leading coefficient 1 under grevlex.
/// `gcd(0, 0) = 0`.
pub fn gcd(f: &Polynomial, g: &Polynomial) -> Polynomial {
    assert_eq!(f.nvars(), g.nvars(), "gcd: variable count mismatch");
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    if f.is_constant() || g.is_constant() {
        return Polynomial::one(f.nvars());
    }
    if f.divide_exact(g).unwrap().is_some() {
        return g.monic();
    }
    if g.divide_exact(f).unwrap().is_some() {
        return f.monic();
    }
    // With no variable in common, a common factor can only be a constant.
    let fv = f.support_vars();
    let var = match g.support_vars().into_iter().find(|v| fv.contains(v)) {
        Some(v) => v,
        None => return Polynomial::one(f.nvars()),
    };
    let cf = content_in(f, var);
    let cg = content_in(g, var);
    let c = gcd(&cf, &cg);
    let mut a = primitive_part_in(f, var);
    let mut b = primitive_part_in(g, var);
    if a.degree_in(var) < b.degree_in(var) {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() && b.degree_in(var).unwrap_or(0) > 0 {
        let r = pseudo_remainder(&a, &b, var);
        a = b;
        b = if r.is_zero() {
            r
        } else {
            primitive_part_in(&r, var)
        };
    }
    let h = if b.is_zero() {
        a
    } else {
        // b is nonzero and free of var: the primitive parts are coprime in var.
        Polynomial::one(f.nvars())
    };
    (&c * &h).monic()
}

/// Gcd of a list; empty list gives zero.
pub fn gcd_many<'a, I: IntoIterator<Item = &'a Polynomial>>(nvars: usize, polys: I) -> Polynomial {
    let mut g = Polynomial::zero(nvars);
    for p in polys {
        g = gcd(&g, p);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Scales `f` so the coefficients are coprime integers with positive leading coefficient.
pub fn integer_primitive(f: &Polynomial) -> Polynomial {
    use num_integer::Integer;
    if f.is_zero() {
        return f.clone();
    }
    let den = f.denominator_lcm();
    let mut num_gcd = num_bigint::BigInt::zero();
    for (_, c) in f.terms() {
        let v = c.numer() * (&den / c.denom());
        num_gcd = num_gcd.gcd(&v);
    }
    let mut scale = Rational::new(den, num_gcd);
    if f.leading_coefficient() < Rational::zero() {
        scale = -scale;
    }
    if scale.is_one() {
        f.clone()
    } else {
        f.scale(&scale)
    }
}

/// Extended Euclid for polynomials in at most one variable:
/// `(g, s, t)` with `g = s f + t h` and `g` the monic gcd (zero when both are zero).
pub fn extended_gcd_univariate(f: &Polynomial, h: &Polynomial) -> (Polynomial, Polynomial, Polynomial) {
    let n = f.nvars();
    let (mut r0, mut r1) = (f.clone(), h.clone());
    let (mut s0, mut s1) = (Polynomial::one(n), Polynomial::zero(n));
    let (mut t0, mut t1) = (Polynomial::zero(n), Polynomial::one(n));
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
        r0 = std::mem::replace(&mut r1, r);
        let s = &s0 - &(&q * &s1);
        s0 = std::mem::replace(&mut s1, s);
        let t = &t0 - &(&q * &t1);
        t0 = std::mem::replace(&mut t1, t);
    }
    if r0.is_zero() {
        return (r0, s0, t0);
    }
    let inv = r0.leading_coefficient().recip();
    (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
}

/// Coefficients `c` with `target = sum c_i gens_i` for polynomials in at most
/// one variable, or `None` when the gcd of `gens` does not divide `target`.
pub fn represent_univariate(target: &Polynomial, gens: &[Polynomial]) -> Option<Vec<Polynomial>> {
    let n = target.nvars();
    let mut g = Polynomial::zero(n);
    let mut cof: Vec<Polynomial> = vec![Polynomial::zero(n); gens.len()];
    for (k, h) in gens.iter().enumerate() {
        if h.is_zero() {
            continue;
        }
        let (ng, s, t) = extended_gcd_univariate(&g, h);
        for c in cof.iter_mut() {
            if !c.is_zero() {
                *c = &*c * &s;
            }
        }
        cof[k] = &cof[k] + &t;
        g = ng;
    }
    if g.is_zero() {
        return target.is_zero().then_some(cof);
    }
    let q = target.divide_exact(&g).ok()??;
    let mut cof: Vec<Polynomial> = cof.into_iter().map(|c| &c * &q).collect();
    // Keep all but one coefficient below the degree of the smallest generator.
    let pivot = (0..gens.len())
        .filter(|&k| !gens[k].is_zero())
        .min_by_key(|&k| (gens[k].total_degree(), gens[k].len()))?;
    for k in 0..gens.len() {
        if k == pivot || cof[k].is_zero() {
            continue;
        }
        let (q, r) = cof[k].div_rem(&gens[pivot]).expect("nonzero divisor");
        if !q.is_zero() {
            cof[pivot] = &cof[pivot] + &(&q * &gens[k]);
            cof[k] = r;
        }
    }
    Some(cof)
}
