//! Bilateral Laplace transforms of the soft-edge corrections and two series
//! engines: a saddle-point expansion of the GUE transform and the large-N
//! operator expansion of confluent hypergeometric polynomials.
//!
//! Transforms live in a three-sector algebra. Sector A carries e^{γ³/12}/√π
//! and half-integer powers of γ; sectors B and C carry e^{γ³/3} and
//! e^{γ³/3}·Erf(γ^{3/2}/2) with integer powers. The algebra is closed under
//! d/dγ, so every coefficient stays rational.

mod element;
mod hypergeom;
mod laplace;
mod saddle;

pub use element::{GammaOperator, Sector, TransformElement};
pub use hypergeom::{hypergeom_ops, HypergeomOpTable, MAX_HYPERGEOM_ORDER};
pub use laplace::{
    derived_recursion_operators, laplace_operator, recursion_operators, recursion_residual, recursion_step, transform_basis,
    transform_element, transformed_table, RecursionCase, RecursionResult,
};
pub use saddle::{saddle_expand, saddle_exponent, EpsSeries, GaussQ, SaddleExpansion, TGPoly, MAX_SADDLE_ORDER};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum TransformError {
    #[error("basis index {0} has no transform")]
    UnknownBasis(usize),
    #[error("no Laplace transform for {0}")]
    UnsupportedFamily(String),
    #[error("unknown recursion case {0:?}")]
    UnknownCase(String),
    #[error("coefficient depends on formal parameters: {0}")]
    NonNumeric(String),
    #[error("order {j} needs {j} prior transforms, got {have}")]
    MissingPriors { j: usize, have: usize },
    #[error("ansatz for order {j} stayed inconsistent after {tries} widenings")]
    AnsatzInsufficient { j: usize, tries: u32 },
    #[error("imaginary part does not cancel at N^(-{k}/3)")]
    ImaginaryResidue { k: usize },
    #[error("order {order} exceeds the supported maximum {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("catalog: {0}")]
    Catalog(String),
    #[error("internal: {0}")]
    Internal(String),
    #[error(transparent)]
    Exact(#[from] crate::exact::ExactError),
}
