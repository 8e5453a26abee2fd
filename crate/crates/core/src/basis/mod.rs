//! Modules of transcendental functions with polynomial coefficients.
//!
//! Elements are written Σ pᵢ(y)·bᵢ over a fixed basis of products of Airy or
//! Bessel functions. The families are closed under their derivation, so every
//! differential operator with polynomial coefficients acts on them exactly.

mod element;
mod eval;
mod family;
mod operator;

pub use element::ModuleElement;
pub use eval::{eval_basis, eval_element, eval_poly, q_to_float, ParamValues};
pub use family::{BasisFamily, Derivation, FamilyId};
pub use operator::{DiffOperator, EulerOperator};

use crate::exact::ExactError;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum BasisError {
    #[error("basis index {index} out of range for {family}")]
    BasisIndex { index: usize, family: String },
    #[error("module coefficients must be polynomials in y")]
    NotInY,
    #[error("basis families {0} and {1} cannot be combined")]
    FamilyMismatch(String, String),
    #[error("order-{order} coefficient {coeff} is not divisible by y^{order}")]
    EulerIncompatible { order: u32, coeff: String },
    #[error("free parameter {0} has no numeric value")]
    UnboundParam(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("numeric evaluation failed: {0}")]
    Numeric(String),
}
