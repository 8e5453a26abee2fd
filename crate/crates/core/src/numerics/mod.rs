//! High-precision numerics: special functions, finite-N densities, exact
//! small-N densities and convergence studies.

mod convergence;
mod density;
mod exact;
pub mod special;

pub use convergence::{convergence_study, step_exponent, OrderFit, StudyConfig, StudyReport, StudyRow};
pub use density::{finite_n_density, lue_density_christoffel_darboux, scaled_density};
pub use exact::{apply_operator, exact_density, render_laurent, verify_finite_ode, ExactDensity, FiniteOdeCheck, Laurent, Weight, MAX_EXACT_N};

use rug::Float;

/// Default working precision in decimal digits.
pub const DEFAULT_DIGITS: u32 = 40;
pub const PRECISION_ENV: &str = "EDGECASCADE_PRECISION";

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum NumericError {
    #[error("{what} did not converge (achieved error estimate {achieved:e})")]
    Unconverged { what: String, achieved: f64 },
    #[error("precision shortfall: about {achieved:.1} correct digits, {target} requested; raise the working digits")]
    PrecisionShortfall { achieved: f64, target: u32 },
    #[error("argument outside the supported domain: {0}")]
    Domain(String),
    #[error("invalid precision: {0}")]
    BadPrecision(String),
    #[error("unsupported case: {0}")]
    Unsupported(String),
}

/// Working and target accuracy, both in decimal digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionContext {
    pub working_digits: u32,
    pub target_digits: u32,
}

impl PrecisionContext {
    pub const GUARD_DIGITS: u32 = 8;

    pub fn new(working_digits: u32) -> Result<Self, NumericError> {
        Self::with_target(working_digits, working_digits.saturating_sub(Self::GUARD_DIGITS))
    }

    pub fn with_target(working_digits: u32, target_digits: u32) -> Result<Self, NumericError> {
        if working_digits < 16 {
            return Err(NumericError::BadPrecision(format!("working digits {working_digits} < 16")));
        }
        if target_digits + Self::GUARD_DIGITS > working_digits {
            return Err(NumericError::BadPrecision(format!(
                "target {target_digits} leaves fewer than {} guard digits",
                Self::GUARD_DIGITS
            )));
        }
        Ok(PrecisionContext { working_digits, target_digits })
    }

    /// Reads `EDGECASCADE_PRECISION`, falling back to 40 digits.
    pub fn from_env() -> Result<Self, NumericError> {
        match std::env::var(PRECISION_ENV) {
            Ok(s) => {
                let d = s.trim().parse::<u32>().map_err(|_| NumericError::BadPrecision(format!("{PRECISION_ENV}={s}")))?;
                Self::new(d)
            }
            Err(_) => Self::new(DEFAULT_DIGITS),
        }
    }

    /// Suggested working digits for a matrix size: 40 up to N = 200, 60 beyond.
    pub fn for_size(n: u32) -> Self {
        Self::new(if n <= 200 { 40 } else { 60 }).expect("static digits")
    }

    pub fn bits(&self) -> u32 {
        (self.working_digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 8
    }

    pub fn widened(&self, extra_digits: u32) -> Self {
        PrecisionContext { working_digits: self.working_digits + extra_digits, target_digits: self.target_digits }
    }

    pub fn float(&self, x: f64) -> Float {
        Float::with_val(self.bits(), x)
    }

    /// 10^(−target digits).
    pub fn tolerance(&self) -> Float {
        Float::with_val(self.bits(), Float::u_pow_u(10, self.target_digits)).recip()
    }
}

/// Run `f` at `ctx` and at a widened context; fail when the two disagree
/// beyond the target accuracy (relative to max(1, |value|)).
pub fn cross_checked<F>(ctx: &PrecisionContext, f: F) -> Result<Float, NumericError>
where
    F: Fn(&PrecisionContext) -> Result<Float, NumericError>,
{
    let lo = f(ctx)?;
    let hi = f(&ctx.widened(20))?;
    let diff = Float::with_val(ctx.bits(), &lo - &hi).abs();
    let scale = Float::with_val(ctx.bits(), hi.abs_ref()).max(&Float::with_val(ctx.bits(), 1));
    let rel = diff / scale;
    if rel > ctx.tolerance() {
        let achieved = if rel.is_zero() { f64::INFINITY } else { -rel.to_f64().log10() };
        return Err(NumericError::PrecisionShortfall { achieved, target: ctx.target_digits });
    }
    Ok(Float::with_val(ctx.bits(), hi))
}
