//! Validation, conversion and dispatch to one of the constructions.

use super::bases::{basis_via_m, basis_via_n, basis_via_tilde_m, unit_ideal_basis};
use super::conversion::{conversion_pair, derive_m, derive_n, make_unimodular_m, ConversionPair};
use super::{check_m, check_n, BoundComparison, Grade2Instance, SyzygyBasis};
use crate::bounds::{evaluate_bound, BoundFormula, DegreeBudget};
use crate::error::{Error, Result};
use crate::ideal::{grade_two_check, is_unit_ideal, GradeTwoStatus};
use crate::poly::Polynomial;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Completion of `[M | (-q, p)^t]`.
    ViaTildeM,
    /// Completion of a unimodular `M` (the given one or `M'`).
    ViaM,
    /// Completion of `N^t`.
    ViaN,
    /// Completion of the row `a` itself when `<a>` is the whole ring.
    UnitIdealDirect,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::ViaTildeM => "tilde-m",
            Strategy::ViaM => "m",
            Strategy::ViaN => "n",
            Strategy::UnitIdealDirect => "unit-ideal",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A requested strategy; `Auto` uses `N` and falls back to `[M | (-q, p)^t]`
/// when `N^t` is not unimodular or its completion does not converge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum StrategyChoice {
    #[default]
    Auto,
    Fixed(Strategy),
}

impl StrategyChoice {
    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "auto" => StrategyChoice::Auto,
            "tilde-m" => StrategyChoice::Fixed(Strategy::ViaTildeM),
            "m" => StrategyChoice::Fixed(Strategy::ViaM),
            "n" => StrategyChoice::Fixed(Strategy::ViaN),
            "unit-ideal" => StrategyChoice::Fixed(Strategy::UnitIdealDirect),
            _ => return None,
        })
    }
}

fn budget(inst: &Grade2Instance) -> DegreeBudget {
    DegreeBudget::new()
        .n(inst.nvars() as u64)
        .m(inst.len() as u64)
        .delta_0(inst.delta_0() as u64)
        .delta_a(inst.delta_a() as u64)
}

fn compare(formula: BoundFormula, quantity: &str, degree: u32, b: &DegreeBudget) -> Result<BoundComparison> {
    Ok(BoundComparison::new(formula, quantity, degree, evaluate_bound(formula, b)?))
}

/// Bounds that apply to the output of `strategy` given the degrees of the inputs actually used.
fn bound_comparisons(
    inst: &Grade2Instance,
    strategy: Strategy,
    pair: &ConversionPair,
    m_used: &crate::polymat::PolyMatrix,
    degree: u32,
) -> Result<Vec<BoundComparison>> {
    let base = budget(inst);
    let delta_m = pair.m.degree().or_zero() as u64;
    let delta_n = pair.n.degree().or_zero() as u64;
    let d0 = inst.delta_0() as u64;
    let da = inst.delta_a() as u64;
    let reduced_m = delta_m <= d0 * d0 + da;
    let mut out = Vec::new();
    match strategy {
        Strategy::ViaTildeM => {
            out.push(compare(BoundFormula::TildeM, "basis", degree, &base.clone().delta_m(delta_m))?);
            if reduced_m {
                out.push(compare(BoundFormula::Mtt1, "basis", degree, &base)?);
            }
        }
        Strategy::ViaM => {
            let used = m_used.degree().or_zero();
            out.push(compare(BoundFormula::UnimodM, "basis", degree, &base.clone().delta_m(used as u64))?);
            if !pair.is_orthogonal() && *m_used != pair.m {
                let b = base.clone().delta_m(delta_m).delta_n(delta_n);
                out.push(compare(BoundFormula::MPrime, "M'", used, &b)?);
            }
        }
        Strategy::ViaN => {
            let b = base.clone().delta_m(delta_m).delta_n(delta_n);
            out.push(compare(BoundFormula::ViaN, "basis", degree, &b)?);
            if inst.zero_dimensional && reduced_m && delta_n <= 2 * da * da + da + d0 {
                out.push(compare(BoundFormula::Mtt2, "basis", degree, &base)?);
            }
        }
        Strategy::UnitIdealDirect => {}
    }
    Ok(out)
}

fn check_bounds(basis: &SyzygyBasis) -> Result<()> {
    for c in &basis.verification.bound_comparisons {
        if !c.satisfied {
            return Err(Error::BoundExceeded {
                formula: c.formula.id().to_string(),
                quantity: c.quantity.clone(),
                degree: c.degree,
                bound: c.bound.to_string(),
            });
        }
    }
    Ok(())
}

/// Removes a common factor of `p` and `q` from `a`, `p` and `q`.
fn strip_common_factor(inst: &Grade2Instance, g: &Polynomial) -> Result<Grade2Instance> {
    let div = |x: &Polynomial, what: &str| -> Result<Polynomial> {
        x.divide_exact(g)?
            .ok_or_else(|| Error::IdealMismatch(format!("{what} is not divisible by the common factor {g}")))
    };
    let mut out = inst.clone();
    out.a = inst
        .a
        .iter()
        .enumerate()
        .map(|(i, x)| div(x, &format!("a{}", i + 1)))
        .collect::<Result<_>>()?;
    out.p = div(&inst.p, "p")?;
    out.q = div(&inst.q, "q")?;
    Ok(out)
}

fn unit_route(inst: &Grade2Instance, seed: u64, warnings: Vec<String>) -> Result<SyzygyBasis> {
    if is_unit_ideal(&inst.a).is_none() {
        return Err(Error::IdealMismatch("<p, q> is the whole ring but <a> is not".into()));
    }
    let mut basis = unit_ideal_basis(&inst.a, seed)?;
    if inst.nvars() > 0 {
        let deg = basis.certificate.degree;
        let b = DegreeBudget::new()
            .n(inst.nvars() as u64)
            .r(1)
            .d(basis.certificate.input_degree as u64);
        basis.verification.bound_comparisons.push(compare(BoundFormula::QsExplicit, "U", deg, &b)?);
    }
    basis.warnings = warnings;
    check_bounds(&basis)?;
    Ok(basis)
}

/// Uses the supplied `M`, `N` after checking them and derives the missing ones.
pub fn conversion_for(inst: &Grade2Instance) -> Result<ConversionPair> {
    let (a, p, q) = (&inst.a, &inst.p, &inst.q);
    let m = match &inst.m {
        Some(m) => {
            check_m(m, a, p, q)?;
            m.clone()
        }
        None => derive_m(a, p, q)?,
    };
    let n = match &inst.n {
        Some(n) => {
            check_n(n, a, p, q)?;
            n.clone()
        }
        None => derive_n(a, p, q)?,
    };
    conversion_pair(m, n, p, q)
}

fn run_strategy(inst: &Grade2Instance, strategy: Strategy, pair: &ConversionPair, seed: u64) -> Result<SyzygyBasis> {
    let (a, p, q) = (&inst.a, &inst.p, &inst.q);
    let mut warnings = Vec::new();
    let (mut basis, m_used) = match strategy {
        Strategy::ViaTildeM => (basis_via_tilde_m(a, p, q, &pair.m, seed)?, pair.m.clone()),
        Strategy::ViaM => {
            let m = if pair.m.is_unimodular()? {
                pair.m.clone()
            } else {
                warnings.push("M is not unimodular; using the corrected M' with M' N = I".to_string());
                make_unimodular_m(pair, p, q, seed)?
            };
            (basis_via_m(a, p, q, &m, seed)?, m)
        }
        Strategy::ViaN => (basis_via_n(a, p, q, pair, seed)?, pair.m.clone()),
        Strategy::UnitIdealDirect => {
            return Err(Error::Unsupported(
                "the unit-ideal route needs <p, q> to be the whole ring".into(),
            ))
        }
    };
    basis.verification.bound_comparisons = bound_comparisons(inst, strategy, pair, &m_used, basis.degree())?;
    if m_used != pair.m {
        basis.m_used = Some(m_used);
    }
    basis.conversion = Some(pair.clone());
    basis.warnings = warnings;
    check_bounds(&basis)?;
    Ok(basis)
}

/// Runs the full pipeline: grade check, conversion matrices, the chosen
/// construction and verification including the degree bounds.
///
/// A nonconstant common factor of `p` and `q` is an error unless `strip_gcd`
/// is set, in which case it is divided out of `a`, `p` and `q` first. When
/// `<p, q>` is the whole ring the row `a` is completed directly.
pub fn compute_syzygy_basis(
    instance: &Grade2Instance,
    choice: StrategyChoice,
    seed: u64,
    strip_gcd: bool,
) -> Result<SyzygyBasis> {
    instance.check_structure()?;
    let mut warnings = Vec::new();
    let mut inst = instance.clone();
    loop {
        match grade_two_check(&inst.p, &inst.q)? {
            GradeTwoStatus::GradeTwo => break,
            GradeTwoStatus::UnitIdeal => return unit_route(&inst, seed, warnings),
            GradeTwoStatus::CommonFactor(g) => {
                if !strip_gcd {
                    return Err(Error::CommonFactor(g));
                }
                warnings.push(format!(
                    "divided the common factor {} out of a, p and q",
                    crate::poly::format_polynomial(&g, &inst.vars)
                ));
                inst = strip_common_factor(&inst, &g)?;
            }
        }
    }
    if choice == StrategyChoice::Fixed(Strategy::UnitIdealDirect) {
        return Err(Error::Unsupported("the unit-ideal route needs <p, q> to be the whole ring".into()));
    }
    let pair = conversion_for(&inst)?;
    let mut basis = match choice {
        StrategyChoice::Fixed(s) => run_strategy(&inst, s, &pair, seed)?,
        StrategyChoice::Auto => match run_strategy(&inst, Strategy::ViaN, &pair, seed) {
            Err(Error::RetryExhausted { .. }) => {
                warnings.push("the completion of N^t did not converge; used [M | (-q, p)] instead".to_string());
                run_strategy(&inst, Strategy::ViaTildeM, &pair, seed)?
            }
            Err(Error::NotUnimodular(_)) => {
                warnings.push("N^t is not unimodular; used [M | (-q, p)] instead".to_string());
                run_strategy(&inst, Strategy::ViaTildeM, &pair, seed)?
            }
            other => other?,
        },
    };
    warnings.append(&mut basis.warnings);
    basis.warnings = warnings;
    Ok(basis)
}
