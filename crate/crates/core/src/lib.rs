//! Tame symbols, graded determinants and reciprocity checks over finite fields.

pub mod bivariate;
pub mod branch;
pub mod config;
pub mod error;
pub mod factor;
pub mod field;
pub mod graded_det;
pub mod parse;
pub mod poly;
pub mod ratfun;
pub mod reciprocity;
pub mod report;
pub mod series;
pub mod symbols;

pub use error::{Error, Result};
pub use field::{field_arith, ArithOp, Elem, Field, FieldElem};
pub use poly::Poly;
