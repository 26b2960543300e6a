//! Quantifier elimination for algebraically closed fields with parameters.
//!
//! The crate is organised bottom-up:
//!
//! - [`coeff`]: exact sparse multivariate polynomials over `Z`, `Q` or `F_p`,
//!   pseudo-division, and explicit finite-field extension arithmetic.
//! - [`formula`]: first-order formulas in the language of rings with
//!   constants, their parser and printer, prenex form and the canonical
//!   disjunctive form `OR_i (b_i != 0 & AND_j a_ij = 0)`.
//! - [`qe`]: effective elimination of existential and universal quantifiers.
//! - [`chevalley`]: presentations of finitely presented algebras, their image
//!   formulas, and constructible images.
//! - [`oracle`]: brute-force model checking over finite fields, used to
//!   validate every elimination.

pub mod chevalley;
pub mod coeff;
pub mod error;
pub mod formula;
mod limits;
pub mod oracle;
pub mod qe;

pub use error::{Error, Result};
pub use limits::Limits;
