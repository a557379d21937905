//! Log-algebraic polynomials for Drinfeld modules over F_q[θ] and ∞-adic L-values.

pub mod algebra;
pub mod error;
pub mod frobenius;
pub mod json;
pub mod drinfeld;
pub mod laurent;
pub mod logalg;
pub mod lvalues;
pub mod twisted;
pub mod verify;

pub use error::{Error, Result};
