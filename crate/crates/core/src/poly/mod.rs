//! Exact sparse multivariate polynomials over the rationals.

mod gcd;
mod monomial;
mod order;
mod parse;
mod polynomial;
mod resultant;

pub use gcd::{
    content_in, extended_gcd_univariate, gcd, gcd_many, integer_primitive, pseudo_remainder,
    represent_univariate,
};
pub use monomial::Monomial;
pub use order::{MonomialOrder, OrderKind};
pub use parse::{default_var_names, format_polynomial, parse_polynomial};
pub use polynomial::{rat, ratio, Degree, Polynomial, Rational};
pub use resultant::{resultant, sylvester_matrix};
