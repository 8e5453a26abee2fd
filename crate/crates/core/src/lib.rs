//! Exact and high-precision machinery for edge-density expansions of the
//! Gaussian and Laguerre random matrix ensembles.
//!
//! The crate is organised bottom-up:
//!
//! * [`exact`]: rationals, polynomials in the formal parameters A = a², T = τ,
//!   Ã = a² − 1, and an exact fraction-free linear solver.
//! * [`basis`]: modules Σ pᵢ(y)bᵢ(y) over Airy and Bessel product bases, closed
//!   under differentiation, plus linear differential operators acting on them.
//! * [`catalog`]: the graded differential operators and scaling maps for each
//!   ensemble, edge regime and Dyson index.
//! * [`cascade`]: residual checks, ansatz solving and differential relations
//!   for the correction terms r_j.
//! * [`transforms`]: the bilateral Laplace algebra, the u_j recursion, the
//!   saddle-point series engine and the hypergeometric expansion operators.
//! * [`numerics`]: MPFR-backed special functions, finite-N densities and
//!   convergence studies.
//! * [`cli`]: the command layer behind the `edgecascade` binary.
//!
//! Runnable walkthroughs live in `examples/`:
//!
//! ```text
//! cargo run --example verify_identities
//! cargo run --example solve_cascade
//! cargo run --example operator_catalog
//! cargo run --example laplace_recursion
//! cargo run --example saddle_point
//! cargo run --example hypergeometric_operators
//! cargo run --example finite_n_ode
//! cargo run --example hard_edge_decomposition
//! cargo run --release --example convergence_study
//! ```

pub mod basis;
pub mod cascade;
pub mod catalog;
pub mod cli;
pub mod exact;
pub mod numerics;
pub mod transforms;
