//! Finite-N densities ρ_N(x) = Σ_{k<N} ψ_k(x)² from orthonormal functions
//! generated by their three-term recurrences in MPFR arithmetic.

use rug::Float;

use super::{NumericError, PrecisionContext};
use crate::basis::q_to_float;
use crate::catalog::{Edge, EdgeCase, Ensemble, NumericScaling};
use crate::exact::Q;

/// Extra digits used for the shadow evaluation that bounds rounding error.
const SHADOW_DIGITS: u32 = 16;

fn check_case(case: &EdgeCase) -> Result<(), NumericError> {
    if case.beta != 2 {
        return Err(NumericError::Unsupported(format!("{case}: finite-N densities are provided for beta = 2")));
    }
    Ok(())
}

/// Hermite functions for the weight e^{−x²}.
fn gue_raw(n: u32, x: &Float, prec: u32) -> Float {
    let pi = Float::with_val(prec, rug::float::Constant::Pi);
    let x2 = Float::with_val(prec, x.square_ref());
    let mut prev = Float::with_val(prec, 0);
    let mut cur = Float::with_val(prec, -x2 / 2u32).exp() / pi.sqrt().sqrt();
    let mut sum = Float::with_val(prec, cur.square_ref());
    for k in 0..n.saturating_sub(1) {
        let a = (Float::with_val(prec, 2u32) / (k + 1)).sqrt();
        let b = (Float::with_val(prec, k) / (k + 1)).sqrt();
        let next = Float::with_val(prec, &a * x) * &cur - b * &prev;
        prev = cur;
        cur = next;
        sum += Float::with_val(prec, cur.square_ref());
    }
    sum
}

/// Laguerre functions x^{a/2}e^{−x/2}·p_k(x) for the weight x^a e^{−x}.
fn lue_functions(n: u32, a: &Float, x: &Float, prec: u32) -> Vec<Float> {
    let lg = Float::with_val(prec, a + 1u32).ln_gamma();
    let lx = Float::with_val(prec, x.ln_ref());
    let mut out = Vec::with_capacity(n as usize + 1);
    let log0 = Float::with_val(prec, a * lx) / 2u32 - Float::with_val(prec, x / 2u32) - lg / 2u32;
    out.push(log0.exp());
    for k in 0..n as usize {
        let kf = Float::with_val(prec, k);
        let c1 = Float::with_val(prec, &kf * 2u32) + a + 1u32 - x;
        let denom = Float::with_val(prec, Float::with_val(prec, &kf + 1u32) * (Float::with_val(prec, &kf + a) + 1u32)).sqrt();
        let mut next = c1 * &out[k];
        if k > 0 {
            let c0 = Float::with_val(prec, Float::with_val(prec, &kf) * Float::with_val(prec, &kf + a)).sqrt();
            next -= c0 * &out[k - 1];
        }
        out.push(next / denom);
    }
    out
}

fn lue_raw(n: u32, a: &Float, x: &Float, prec: u32) -> Float {
    if *x <= 0 {
        return Float::with_val(prec, 0);
    }
    let fs = lue_functions(n, a, x, prec);
    fs[..n as usize].iter().fold(Float::with_val(prec, 0), |acc, f| acc + Float::with_val(prec, f.square_ref()))
}

fn raw(case: &EdgeCase, n: u32, a: &Q, x: &Float, prec: u32) -> Float {
    let x = Float::with_val(prec, x);
    match case.ensemble {
        Ensemble::Gaussian => gue_raw(n, &x, prec),
        Ensemble::Laguerre => lue_raw(n, &q_to_float(a, prec), &x, prec),
    }
}

/// Evaluates at the working precision and again with extra guard digits; a
/// disagreement beyond the target is reported as a precision shortfall.
fn guarded<F: Fn(u32) -> Float>(f: F, ctx: &PrecisionContext) -> Result<Float, NumericError> {
    let lo = f(ctx.bits());
    let hi = f(ctx.widened(SHADOW_DIGITS).bits());
    let diff = Float::with_val(hi.prec(), &hi - &lo).abs();
    let scale = Float::with_val(hi.prec(), hi.abs_ref());
    if diff.is_zero() {
        return Ok(lo);
    }
    let achieved = if scale.is_zero() { 0.0 } else { -(diff / scale).to_f64().log10() };
    if achieved < ctx.target_digits as f64 {
        return Err(NumericError::PrecisionShortfall { achieved, target: ctx.target_digits });
    }
    Ok(lo)
}

/// ρ_N(x) for GUE (weight e^{−x²}) or LUE (weight x^a e^{−x}).
pub fn finite_n_density(case: &EdgeCase, n: u32, a: &Q, x: &Float, ctx: &PrecisionContext) -> Result<Float, NumericError> {
    check_case(case)?;
    if n == 0 {
        return Err(NumericError::Domain("N must be at least 1".into()));
    }
    if case.ensemble == Ensemble::Laguerre && *a <= Q::from_integer((-1).into()) {
        return Err(NumericError::Domain(format!("Laguerre parameter a = {a} must exceed -1")));
    }
    guarded(|prec| raw(case, n, a, x, prec), ctx)
}

/// LUE density from the confluent Christoffel–Darboux form
/// −√(N(N+a))·(p_N′p_{N−1} − p_{N−1}′p_N)·w, independent of the sum of squares.
pub fn lue_density_christoffel_darboux(n: u32, a: &Q, x: &Float, ctx: &PrecisionContext) -> Result<Float, NumericError> {
    if n == 0 || *x <= 0 {
        return Err(NumericError::Domain("needs N ≥ 1 and x > 0".into()));
    }
    let prec = ctx.bits();
    let af = q_to_float(a, prec);
    let x = Float::with_val(prec, x);
    // ψ_k = w^{1/2}p_k, so ψ_k′ = w^{1/2}(p_k′ + (a/(2x) − 1/2)p_k); the weight
    // terms cancel in the Wronskian and ψ_N′ψ_{N−1} − ψ_{N−1}′ψ_N = w·(p_N′p_{N−1} − p_{N−1}′p_N).
    // Derivatives follow from differentiating the recurrence.
    let fs = lue_functions(n, &af, &x, prec);
    let mut ds: Vec<Float> = Vec::with_capacity(fs.len());
    let log_w_half = Float::with_val(prec, &af / Float::with_val(prec, &x * 2u32)) - Float::with_val(prec, 0.5);
    ds.push(Float::with_val(prec, &fs[0] * &log_w_half));
    for k in 0..n as usize {
        let kf = Float::with_val(prec, k);
        let c1 = Float::with_val(prec, &kf * 2u32) + &af + 1u32 - &x;
        let denom = Float::with_val(prec, Float::with_val(prec, &kf + 1u32) * (Float::with_val(prec, &kf + &af) + 1u32)).sqrt();
        // d/dx of the polynomial recurrence, kept in ψ form: the extra term is −ψ_k
        let mut next = c1 * &ds[k] - &fs[k];
        if k > 0 {
            let c0 = Float::with_val(prec, Float::with_val(prec, &kf) * Float::with_val(prec, &kf + &af)).sqrt();
            next -= c0 * &ds[k - 1];
        }
        ds.push(next / denom);
    }
    let nn = n as usize;
    let wr = Float::with_val(prec, &ds[nn] * &fs[nn - 1]) - Float::with_val(prec, &ds[nn - 1] * &fs[nn]);
    let c = Float::with_val(prec, Float::with_val(prec, n) * Float::with_val(prec, &af + n)).sqrt();
    Ok(-(c * wr))
}

/// |scale|·ρ_N(center + scale·y) for the numeric scaling of `case`.
pub fn scaled_density(case: &EdgeCase, n: u32, a: &Q, gamma: Option<&Q>, y: f64, ctx: &PrecisionContext) -> Result<(Float, NumericScaling), NumericError> {
    check_case(case)?;
    let map = |prec: u32| NumericScaling::new(case, n, a, gamma, prec).map_err(|e| NumericError::Unsupported(e.to_string()));
    let sc = map(ctx.bits())?;
    let eval = |prec: u32| -> Float {
        let s = map(prec).expect("checked above");
        let x = Float::with_val(prec, &s.center + Float::with_val(prec, &s.scale * y));
        let v = raw(case, n, &s.a, &x, prec);
        v * Float::with_val(prec, s.scale.abs_ref())
    };
    if case.edge == Edge::Hard && y <= 0.0 {
        return Err(NumericError::Domain(format!("hard-edge variable must be positive, got {y}")));
    }
    let v = guarded(eval, ctx)?;
    Ok((v, sc))
}
