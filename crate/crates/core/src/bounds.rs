//! Closed-form degree bounds for unimodular completion and syzygy bases.
//!
//! Notation: `n` variables, `m` generators `a_1..a_m` of degree at most
//! `delta_a`, `p, q` of degree at most `delta_0`, conversion matrices `M`
//! (with `(p q) M = a`) and `N` (with `a N = (p q)`) of degree at most
//! `delta_m` and `delta_n`; `r x s` is the shape and `d` the degree of a
//! matrix to be completed.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundFormula {
    /// `3 n^2 (r(d+1))^(2n)`: degree of a unimodular completion.
    QsExplicit,
    /// `3 n^2 4^n (delta+1)^(2n)` with `delta = max(delta_m, delta_0)`: basis from the extended `M`.
    TildeM,
    /// `3 n^2 4^n (delta_m+1)^(2n) + delta_0`: basis from a unimodular `M`.
    UnimodM,
    /// `delta_0 + delta_n + delta_m + 3 m n^2 4^n (delta_n+1)^(2n)`: basis from `N`.
    ViaN,
    /// `3 n^2 4^n (delta_n+1)^(2n) + delta_m + delta_n + delta_0`: degree of the unimodular replacement of `M`.
    MPrime,
    /// `delta_0^2 + delta_a`: degree of `M` obtained by reduction.
    DeltaM,
    /// `3 n^2 4^n (max(delta_0, delta_m)+1)^(2n)`: degree of `N` in general.
    DeltaNGeneric,
    /// `2 delta_a^2 + delta_a + delta_0`: degree of `N` for zero-dimensional `<p, q>`.
    DeltaNZerodim,
    /// `3 n^2 4^n (delta_0^2 + delta_a + 1)^(2n)`: first main bound.
    Mtt1,
    /// `2 delta_0 + 2 delta_a + 2 delta_a^2 + delta_0^2 + 3 m n^2 4^n (2 delta_a^2 + delta_a + delta_0 + 1)^(2n)`.
    Mtt2,
    /// `192 (delta_0 delta_a + 1)^4`: two-variable bound for basis degrees.
    Citam,
    /// `2 (r(d+1))^(2(n-1))`: degree of the Bezout lift of `x_n`.
    Bezout25,
}

/// Parameters of the bound formulas; each formula reads only the ones it needs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DegreeBudget {
    pub n: Option<u64>,
    pub m: Option<u64>,
    pub r: Option<u64>,
    pub s: Option<u64>,
    pub d: Option<u64>,
    pub delta_0: Option<u64>,
    pub delta_a: Option<u64>,
    pub delta_m: Option<u64>,
    pub delta_n: Option<u64>,
}

impl DegreeBudget {
    pub fn new() -> Self {
        Self::default()
    }
    pub fn n(mut self, v: u64) -> Self {
        self.n = Some(v);
        self
    }
    pub fn m(mut self, v: u64) -> Self {
        self.m = Some(v);
        self
    }
    pub fn r(mut self, v: u64) -> Self {
        self.r = Some(v);
        self
    }
    pub fn s(mut self, v: u64) -> Self {
        self.s = Some(v);
        self
    }
    pub fn d(mut self, v: u64) -> Self {
        self.d = Some(v);
        self
    }
    pub fn delta_0(mut self, v: u64) -> Self {
        self.delta_0 = Some(v);
        self
    }
    pub fn delta_a(mut self, v: u64) -> Self {
        self.delta_a = Some(v);
        self
    }
    pub fn delta_m(mut self, v: u64) -> Self {
        self.delta_m = Some(v);
        self
    }
    pub fn delta_n(mut self, v: u64) -> Self {
        self.delta_n = Some(v);
        self
    }
}

impl BoundFormula {
    pub const ALL: [BoundFormula; 12] = [
        BoundFormula::QsExplicit,
        BoundFormula::TildeM,
        BoundFormula::UnimodM,
        BoundFormula::ViaN,
        BoundFormula::MPrime,
        BoundFormula::DeltaM,
        BoundFormula::DeltaNGeneric,
        BoundFormula::DeltaNZerodim,
        BoundFormula::Mtt1,
        BoundFormula::Mtt2,
        BoundFormula::Citam,
        BoundFormula::Bezout25,
    ];

    /// Stable identifier used in reports.
    pub fn id(self) -> &'static str {
        match self {
            BoundFormula::QsExplicit => "QS_EXPLICIT",
            BoundFormula::TildeM => "TILDE_M",
            BoundFormula::UnimodM => "UNIMOD_M",
            BoundFormula::ViaN => "VIA_N",
            BoundFormula::MPrime => "MPRIME",
            BoundFormula::DeltaM => "DELTA_M",
            BoundFormula::DeltaNGeneric => "DELTA_N_GENERIC",
            BoundFormula::DeltaNZerodim => "DELTA_N_ZERODIM",
            BoundFormula::Mtt1 => "MTT_1",
            BoundFormula::Mtt2 => "MTT_2",
            BoundFormula::Citam => "CITAM",
            BoundFormula::Bezout25 => "BEZOUT_25",
        }
    }

    pub fn from_id(id: &str) -> Option<BoundFormula> {
        Self::ALL.into_iter().find(|f| f.id().eq_ignore_ascii_case(id))
    }

    /// Names of the parameters the formula reads, in the order they appear in `DegreeBudget`.
    pub fn parameters(self) -> &'static [&'static str] {
        match self {
            BoundFormula::QsExplicit | BoundFormula::Bezout25 => &["n", "r", "d"],
            BoundFormula::TildeM | BoundFormula::UnimodM | BoundFormula::DeltaNGeneric => {
                &["n", "delta_0", "delta_m"]
            }
            BoundFormula::ViaN => &["n", "m", "delta_0", "delta_m", "delta_n"],
            BoundFormula::MPrime => &["n", "delta_0", "delta_m", "delta_n"],
            BoundFormula::DeltaM | BoundFormula::DeltaNZerodim | BoundFormula::Citam => {
                &["delta_0", "delta_a"]
            }
            BoundFormula::Mtt1 => &["n", "delta_0", "delta_a"],
            BoundFormula::Mtt2 => &["n", "m", "delta_0", "delta_a"],
        }
    }
}

impl fmt::Display for BoundFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

fn big(v: u64) -> BigInt {
    BigInt::from(v)
}

fn pow(base: u64, e: u64) -> BigInt {
    num_traits::pow(big(base), e as usize)
}

/// `3 n^2 4^n (delta+1)^(2n)`, the tail shared by most syzygy bounds.
fn tail(n: u64, delta: u64) -> BigInt {
    big(3) * big(n * n) * pow(4, n) * pow(delta + 1, 2 * n)
}

/// `3 n^2 (r(d+1))^(2n)`.
pub fn qs_explicit(n: u64, r: u64, d: u64) -> BigInt {
    big(3) * big(n * n) * pow(r * (d + 1), 2 * n)
}

/// `3 (r(d+1))^(2n)`, the per-patch budget reported in completion diagnostics.
pub fn patch_budget(n: u64, r: u64, d: u64) -> BigInt {
    big(3) * pow(r * (d + 1), 2 * n)
}

/// Evaluates a formula exactly.
pub fn evaluate_bound(formula: BoundFormula, budget: &DegreeBudget) -> Result<BigInt> {
    let get = |name: &str| -> Result<u64> {
        let v = match name {
            "n" => budget.n,
            "m" => budget.m,
            "r" => budget.r,
            "s" => budget.s,
            "d" => budget.d,
            "delta_0" => budget.delta_0,
            "delta_a" => budget.delta_a,
            "delta_m" => budget.delta_m,
            "delta_n" => budget.delta_n,
            _ => unreachable!("unknown parameter {name}"),
        };
        let v = v.ok_or_else(|| Error::MissingParameter {
            formula: formula.id().to_string(),
            parameter: name.to_string(),
        })?;
        if v == 0 && matches!(name, "n" | "m" | "r" | "s") {
            return Err(Error::InvalidParameter {
                parameter: name.to_string(),
            });
        }
        Ok(v)
    };
    use BoundFormula::*;
    Ok(match formula {
        QsExplicit => qs_explicit(get("n")?, get("r")?, get("d")?),
        TildeM => {
            let delta = get("delta_m")?.max(get("delta_0")?);
            tail(get("n")?, delta)
        }
        UnimodM => tail(get("n")?, get("delta_m")?) + big(get("delta_0")?),
        ViaN => {
            let n = get("n")?;
            let m = get("m")?;
            let dn = get("delta_n")?;
            big(get("delta_0")?) + big(dn) + big(get("delta_m")?) + big(m) * tail(n, dn)
        }
        MPrime => {
            let dn = get("delta_n")?;
            tail(get("n")?, dn) + big(get("delta_m")?) + big(dn) + big(get("delta_0")?)
        }
        DeltaM => {
            let d0 = get("delta_0")?;
            big(d0 * d0 + get("delta_a")?)
        }
        DeltaNGeneric => {
            let delta = get("delta_0")?.max(get("delta_m")?);
            tail(get("n")?, delta)
        }
        DeltaNZerodim => {
            let da = get("delta_a")?;
            big(2 * da * da + da + get("delta_0")?)
        }
        Mtt1 => {
            let d0 = get("delta_0")?;
            tail(get("n")?, d0 * d0 + get("delta_a")?)
        }
        Mtt2 => {
            let n = get("n")?;
            let m = get("m")?;
            let d0 = get("delta_0")?;
            let da = get("delta_a")?;
            big(2 * d0 + 2 * da + 2 * da * da + d0 * d0) + big(m) * tail(n, 2 * da * da + da + d0)
        }
        Citam => {
            let d0 = get("delta_0")?;
            let da = get("delta_a")?;
            big(192) * pow(d0 * da + 1, 4)
        }
        Bezout25 => {
            let n = get("n")?;
            let r = get("r")?;
            let d = get("d")?;
            big(2) * pow(r * (d + 1), 2 * (n - 1))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for f in BoundFormula::ALL {
            assert_eq!(BoundFormula::from_id(f.id()), Some(f));
        }
        assert_eq!(BoundFormula::from_id("nope"), None);
    }

    #[test]
    fn missing_parameter_is_named() {
        let err = evaluate_bound(BoundFormula::Citam, &DegreeBudget::new().delta_0(2)).unwrap_err();
        assert_eq!(
            err,
            Error::MissingParameter {
                formula: "CITAM".into(),
                parameter: "delta_a".into()
            }
        );
    }

    #[test]
    fn zero_variables_rejected() {
        let b = DegreeBudget::new().n(0).r(1).d(1);
        assert!(matches!(
            evaluate_bound(BoundFormula::QsExplicit, &b),
            Err(Error::InvalidParameter { .. })
        ));
    }
}
