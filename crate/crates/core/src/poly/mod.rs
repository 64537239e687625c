//! Monomials, degree-compatible monomial orders and sparse polynomials with
//! exact rational coefficients.

mod monomial;
mod order;
mod polynomial;

pub use monomial::{mindeg, Monomial, VarIndex, VarSet, MAX_VARS};
pub use order::{MonomialOrder, OrderKind};
pub use polynomial::{default_names, integer, Coefficient, Polynomial, Term};

#[cfg(test)]
mod properties;
