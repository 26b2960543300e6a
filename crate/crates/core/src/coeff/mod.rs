//! Coefficient domains, sparse multivariate polynomials and finite fields.

mod base;
mod eval;
mod ff;
mod poly;
mod vars;

pub(crate) use base::int_radical;
pub(crate) use base::mod_inverse as base_inverse;
pub use base::{is_prime, BaseDomain, Coeff};
pub(crate) use eval::coeff_residue;
pub use eval::evaluate;
pub use ff::{ff_extension, FieldDesc, FieldElem, MAX_EXTENSION_DEGREE};
pub use poly::{
    poly_arith, pseudo_divide, pseudo_remainder, ArithOp, Monomial, Polynomial, PseudoDivision,
    Ring,
};
pub use vars::{Var, VarKind, VarTable};
