//! Ideal membership with certificates, built on a Gröbner engine with cofactor tracking.

mod groebner;
mod modular;

pub use groebner::{buchberger_cofactors, groebner_basis, Division, GroebnerBasis};
pub use modular::is_unit_ideal_mod_p;

use crate::error::{Error, Result};
use crate::poly::{gcd, MonomialOrder, Polynomial};

/// `f = sum coefficients_i * generators_i + remainder`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipCertificate {
    pub coefficients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

impl MembershipCertificate {
    pub fn is_member(&self) -> bool {
        self.remainder.is_zero()
    }
}

fn default_order(gens: &[Polynomial]) -> MonomialOrder {
    MonomialOrder::grevlex(gens[0].nvars())
}

/// Division of `f` by a Gröbner basis of `gens`, with the quotient lifted to the generators.
pub fn membership_certificate(f: &Polynomial, gens: &[Polynomial]) -> MembershipCertificate {
    let gb = buchberger_cofactors(gens, &default_order(gens));
    let d = gb.divide(f);
    let t = gb.cofactors.as_ref().expect("cofactors tracked");
    let mut coefficients = vec![Polynomial::zero(f.nvars()); gens.len()];
    for (j, q) in d.quotients.iter().enumerate() {
        for (i, c) in coefficients.iter_mut().enumerate() {
            if !q.is_zero() && !t.get(i, j).is_zero() {
                *c = &*c + &(q * t.get(i, j));
            }
        }
    }
    MembershipCertificate {
        coefficients,
        remainder: d.remainder,
    }
}

/// Coefficients `c` with `f = sum c_i gens_i`, or `None` when `f` is not in the ideal.
pub fn represent_in_ideal(f: &Polynomial, gens: &[Polynomial]) -> Option<Vec<Polynomial>> {
    let cert = membership_certificate(f, gens);
    cert.is_member().then_some(cert.coefficients)
}

/// Bezout coefficients `b` with `1 = sum b_i gens_i`, or `None` when the ideal is proper.
pub fn is_unit_ideal(gens: &[Polynomial]) -> Option<Vec<Polynomial>> {
    if gens.iter().all(|g| g.is_zero()) {
        return None;
    }
    let nvars = gens[0].nvars();
    if let Some(i) = gens.iter().position(|g| g.is_unit()) {
        let mut b = vec![Polynomial::zero(nvars); gens.len()];
        b[i] = Polynomial::constant(nvars, gens[i].constant_value().unwrap().recip());
        return Some(b);
    }
    match unit_subset(gens) {
        Some(idx) if idx.len() < gens.len() => {
            let sub: Vec<Polynomial> = idx.iter().map(|&i| gens[i].clone()).collect();
            let gb = buchberger_cofactors(&sub, &default_order(&sub));
            if let Some(c) = gb.represent(&Polynomial::one(nvars)) {
                let mut b = vec![Polynomial::zero(nvars); gens.len()];
                for (&i, ci) in idx.iter().zip(c) {
                    b[i] = ci;
                }
                return Some(b);
            }
        }
        Some(_) => {}
        None => {
            if !groebner_basis(gens, &default_order(gens)).is_unit() {
                return None;
            }
        }
    }
    let gb = buchberger_cofactors(gens, &default_order(gens));
    if !gb.is_unit() {
        return None;
    }
    gb.represent(&Polynomial::one(nvars))
}

/// Indices of a small subset of `gens` that generates the unit ideal modulo
/// a prime, smallest generators first; `None` when even all of them do not.
fn unit_subset(gens: &[Polynomial]) -> Option<Vec<usize>> {
    let mut order: Vec<usize> = (0..gens.len()).filter(|&i| !gens[i].is_zero()).collect();
    order.sort_by_key(|&i| (gens[i].total_degree().or_zero(), gens[i].len()));
    let mut chosen: Vec<usize> = Vec::new();
    for i in order {
        chosen.push(i);
        let sub: Vec<Polynomial> = chosen.iter().map(|&j| gens[j].clone()).collect();
        match is_unit_ideal_mod_p(&sub) {
            Some(true) => return Some(chosen),
            Some(false) => {}
            // An unlucky denominator: let the caller use every generator.
            None => return Some((0..gens.len()).collect()),
        }
    }
    None
}

/// Both inclusions between the ideals generated by `a` and `b`.
pub fn ideal_equal(a: &[Polynomial], b: &[Polynomial]) -> Result<bool> {
    let na = a.first().map(|p| p.nvars());
    let nb = b.first().map(|p| p.nvars());
    if let (Some(x), Some(y)) = (na, nb) {
        if x != y {
            return Err(Error::VariableCountMismatch { left: x, right: y });
        }
    }
    let contains_all = |gens: &[Polynomial], others: &[Polynomial]| -> bool {
        if others.iter().all(|p| p.is_zero()) {
            return true;
        }
        if gens.is_empty() || gens.iter().all(|p| p.is_zero()) {
            return false;
        }
        let gb = groebner_basis(gens, &default_order(gens));
        others.iter().all(|p| gb.contains(p))
    };
    Ok(contains_all(a, b) && contains_all(b, a))
}

/// Outcome of the grade-two precondition check on `(p, q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GradeTwoStatus {
    GradeTwo,
    UnitIdeal,
    CommonFactor(Polynomial),
}

/// Decides whether `<p, q>` is a proper ideal of grade two, i.e. `gcd(p, q) = 1` and `<p, q> != R`.
pub fn grade_two_check(p: &Polynomial, q: &Polynomial) -> Result<GradeTwoStatus> {
    if p.nvars() != q.nvars() {
        return Err(Error::VariableCountMismatch {
            left: p.nvars(),
            right: q.nvars(),
        });
    }
    if p.is_zero() && q.is_zero() {
        return Err(Error::BothZero);
    }
    if is_unit_ideal(&[p.clone(), q.clone()]).is_some() {
        return Ok(GradeTwoStatus::UnitIdeal);
    }
    let g = gcd(p, q);
    if g.is_constant() {
        Ok(GradeTwoStatus::GradeTwo)
    } else {
        Ok(GradeTwoStatus::CommonFactor(g))
    }
}
