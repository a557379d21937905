//! Finite fields, polynomials over them, rational functions and polynomials in x.

pub mod factor;
pub mod field;
pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod sieve;
pub mod xpoly;

pub use field::{Fe, Field, FieldCtx, FiniteField};
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use xpoly::XPoly;
