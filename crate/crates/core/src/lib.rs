//! Exact computation of minimal Janet bases for degree-compatible monomial
//! orders.
//!
//! The crate is organised bottom-up:
//!
//! * [`poly`]: monomials, monomial orders and sparse polynomials with
//!   rational coefficients.
//! * [`division`]: Janet multiplicative variables and the Janet tree used to
//!   answer involutive divisor queries.
//! * [`reduction`]: Janet head/full normal forms, ordinary normal forms and
//!   Janet autoreduction.
//! * [`engine`]: the completion procedures (baseline, strategy I and
//!   strategy II with the high/low update) and reduced Gröbner basis
//!   extraction.
//! * [`oracle`]: an independent Buchberger implementation and certificate
//!   checks.
//! * [`system`], [`families`], [`run`]: the text format, benchmark family
//!   generators and run orchestration used by the command line tool.

pub mod division;
pub mod engine;
mod error;
pub mod families;
pub mod oracle;
pub mod poly;
pub mod reduction;
pub mod run;
pub mod system;

pub use division::{janet_partition, JanetPartition, JanetTree};
pub use engine::{extract_reduced_gb, janet_basis, update, JanetOutput, RunStats, Strategy, UpdateChoice};
pub use error::{Error, Result};
pub use poly::{Monomial, MonomialOrder, OrderKind, Polynomial, Term, VarIndex, VarSet};
pub use reduction::ReductionContext;
pub use system::{parse_system, SystemFile};
