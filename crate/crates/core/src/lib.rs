//! Exact desingularization of linear difference operators with polynomial
//! coefficients, and of linear differential operators.

pub mod algebra;
pub mod continuation;
pub mod desing;
pub mod diffdesing;
pub mod diffop;
pub mod error;
pub mod json;
pub mod shiftop;
pub mod singanalysis;
pub mod text;

pub use error::{Error, Result};
