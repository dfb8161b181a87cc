//! Exact coefficient arithmetic: sparse Laurent polynomials over `Z`,
//! rational functions whose denominators are products of `(1 - t^v)`, and
//! monomial group actions on the exponent lattice.

mod action;
mod laurent;
mod ratfunc;

pub use action::MonomialAction;
pub use laurent::{Exponent, LaurentPoly};
pub use ratfunc::{DenomFactor, RatFunc};
