//! Exact computation of free bases of syzygy modules of grade-two ideals.
//!
//! The crate is organised bottom-up: [`poly`] provides exact polynomials,
//! [`ideal`] Gröbner bases with cofactors, [`polymat`] polynomial matrices,
//! [`quillen_suslin`] unimodular completion, [`syzygy`] the basis
//! constructions and their verification, and [`bounds`] the degree bounds.

mod bounded;
pub mod bounds;
pub mod error;
pub mod ideal;
pub mod instance;
pub mod poly;
pub mod polymat;
pub mod quillen_suslin;
pub mod random;
pub mod syzygy;

pub use error::{Error, ParseError, Result};
pub use poly::{Degree, Monomial, MonomialOrder, OrderKind, Polynomial, Rational};
pub use polymat::PolyMatrix;
pub use syzygy::{Grade2Instance, Strategy, StrategyChoice, SyzygyBasis, VerificationReport};
