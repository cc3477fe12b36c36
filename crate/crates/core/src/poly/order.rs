use super::monomial::{grevlex_cmp, Monomial};
use std::cmp::Ordering;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    GrevLex,
    Lex,
    GrLex,
}

/// A monomial order together with a ranking of the variables.
///
/// `ranking[0]` is the most significant variable. The identity ranking gives
/// `x_1 > x_2 > ... > x_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub ranking: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, nvars: usize) -> Self {
        MonomialOrder {
            kind,
            ranking: (0..nvars).collect(),
        }
    }

    pub fn grevlex(nvars: usize) -> Self {
        Self::new(OrderKind::GrevLex, nvars)
    }

    pub fn lex(nvars: usize) -> Self {
        Self::new(OrderKind::Lex, nvars)
    }

    pub fn grlex(nvars: usize) -> Self {
        Self::new(OrderKind::GrLex, nvars)
    }

    /// Panics unless `ranking` is a permutation of `0..ranking.len()`.
    pub fn with_ranking(kind: OrderKind, ranking: Vec<usize>) -> Self {
        let mut seen = vec![false; ranking.len()];
        for &v in &ranking {
            assert!(v < ranking.len() && !seen[v], "ranking must be a permutation");
            seen[v] = true;
        }
        MonomialOrder { kind, ranking }
    }

    /// Lex order with `var` most significant, an elimination order for `var`.
    pub fn eliminating(var: usize, nvars: usize) -> Self {
        let mut ranking = vec![var];
        ranking.extend((0..nvars).filter(|&v| v != var));
        Self::with_ranking(OrderKind::Lex, ranking)
    }

    pub fn nvars(&self) -> usize {
        self.ranking.len()
    }

    fn is_identity(&self) -> bool {
        self.ranking.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        match self.kind {
            OrderKind::GrevLex if self.is_identity() => grevlex_cmp(ea, eb),
            OrderKind::GrevLex => a.degree().cmp(&b.degree()).then_with(|| {
                for &v in self.ranking.iter().rev() {
                    if ea[v] != eb[v] {
                        return eb[v].cmp(&ea[v]);
                    }
                }
                Ordering::Equal
            }),
            OrderKind::Lex => self.lex_part(ea, eb),
            OrderKind::GrLex => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| self.lex_part(ea, eb)),
        }
    }

    fn lex_part(&self, ea: &[u32], eb: &[u32]) -> Ordering {
        for &v in &self.ranking {
            if ea[v] != eb[v] {
                return ea[v].cmp(&eb[v]);
            }
        }
        Ordering::Equal
    }
}
