//! Exact arithmetic: rationals, parameter polynomials, rational functions in
//! the parameters and a fraction-free linear solver.

mod linsolve;
mod mpoly;
mod param_poly;
mod ratfunc;
pub mod rational;

pub use linsolve::{solve_exact, LinearSolution};
pub use mpoly::{Exps, MPoly, NSLOTS};
pub use param_poly::{poly_arith, Param, ParamPoly, ParamSet, PolyOp, Var};
pub use ratfunc::{RatFunc, MAX_PARAM_DEGREE};
pub use rational::{fmt_q, parse_q, q, q_to_f64, qi, qpow, qpow_signed, Q};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum ExactError {
    #[error("variable mismatch: {0} vs {1}")]
    VarMismatch(&'static str, &'static str),
    #[error("parameter mismatch: {0}")]
    ParamMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial division is not exact")]
    NotExact,
    #[error("parameter degree {degree} in slot {slot} exceeds the bound {MAX_PARAM_DEGREE}")]
    DegreeBound { slot: usize, degree: u32 },
    #[error("shape error: {0}")]
    Shape(String),
    #[error("parse error: {0}")]
    Parse(String),
}
