//! Sparse multivariate polynomials over the Gaussian rationals.

mod monomial;
mod parse;
mod polynomial;

pub use monomial::{Monomial, MonomialOrder, OrderKind};
pub use parse::parse;
pub use polynomial::{Polynomial, Variables};
