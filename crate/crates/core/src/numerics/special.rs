//! Special functions by power series in MPFR arithmetic.
//!
//! Every series runs with extra guard bits sized to the largest term it will
//! meet, so cancellation between alternating terms does not eat into the
//! requested accuracy.

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use super::{NumericError, PrecisionContext};

const MAX_TERMS: usize = 20_000;

fn log2e() -> f64 {
    std::f64::consts::LOG2_E
}

/// Values of Ai, Ai′ and ∫₀ʸ Ai at one point.
#[derive(Clone, Debug)]
pub struct AiryValues {
    pub ai: Float,
    pub ai_prime: Float,
    pub ai_integral: Float,
}

/// Ai(0) and Ai′(0) at the given precision.
fn airy_origin(prec: u32) -> (Float, Float) {
    let three = Float::with_val(prec, 3);
    let g23 = Float::with_val(prec, Float::with_val(prec, 2) / 3u32).gamma();
    let g13 = Float::with_val(prec, Float::with_val(prec, 1) / 3u32).gamma();
    let ai0 = Float::with_val(prec, (&three).pow(Float::with_val(prec, -2) / 3u32)) / g23;
    let aip0 = -Float::with_val(prec, (&three).pow(Float::with_val(prec, -1) / 3u32)) / g13;
    (ai0, aip0)
}

/// Ai, Ai′ and ∫₀ʸ Ai by the Maclaurin series of y″ = x·y.
pub fn airy(y: f64, ctx: &PrecisionContext) -> Result<AiryValues, NumericError> {
    if !y.is_finite() || y.abs() > 60.0 {
        return Err(NumericError::Domain(format!("Airy argument {y} outside |y| <= 60")));
    }
    let growth = (2.0 / 3.0) * y.abs().powf(1.5) * log2e();
    let prec = ctx.bits() + 2 * growth.ceil() as u32 + 32;
    let x = Float::with_val(prec, y);
    let (c0, c1) = airy_origin(prec);
    if y == 0.0 {
        let b = ctx.bits();
        return Ok(AiryValues { ai: Float::with_val(b, c0), ai_prime: Float::with_val(b, c1), ai_integral: Float::new(b) });
    }
    // a_{n+3} = a_n / ((n+2)(n+3)), a_2 = 0.
    let mut coeffs = [c0, c1, Float::new(prec)];
    let mut xpow = Float::with_val(prec, 1); // x^n
    let mut ai = Float::new(prec);
    let mut aip = Float::new(prec);
    let mut aint = Float::new(prec);
    let eps = Float::with_val(prec, Float::i_exp(1, -(ctx.bits() as i32 + 24)));
    let settle = (y.abs().powf(1.5) as usize) + 6;
    let mut small_run = 0;
    for n in 0..MAX_TERMS {
        let a = coeffs[n % 3].clone();
        let term = Float::with_val(prec, &a * &xpow);
        ai += &term;
        aint += Float::with_val(prec, &term * &x) / (n as u32 + 1);
        if n > 0 {
            // n·a_n·x^{n-1}
            let prev = Float::with_val(prec, &xpow / &x);
            aip += Float::with_val(prec, &a * &prev) * n as u32;
        }
        let next = Float::with_val(prec, &a / ((n as u32 + 2) * (n as u32 + 3)));
        coeffs[n % 3] = next;
        xpow *= &x;
        let mag = Float::with_val(prec, term.abs_ref()) * (n as u32 + 2) * (1.0 + y.abs());
        if n > settle && mag < eps {
            small_run += 1;
            if small_run >= 3 {
                return Ok(AiryValues {
                    ai: Float::with_val(ctx.bits(), &ai),
                    ai_prime: Float::with_val(ctx.bits(), &aip),
                    ai_integral: Float::with_val(ctx.bits(), &aint),
                });
            }
        } else {
            small_run = 0;
        }
    }
    Err(NumericError::Unconverged { what: "Airy series".into(), achieved: f64::NAN })
}

/// AI_ν(y) = ν − ∫_y^∞ Ai = ν − 1/3 + ∫₀ʸ Ai.
pub fn airy_antiderivative(y: f64, nu: u8, ctx: &PrecisionContext) -> Result<Float, NumericError> {
    let v = airy(y, ctx)?;
    let third = Float::with_val(ctx.bits(), 1) / 3u32;
    Ok(v.ai_integral + (Float::with_val(ctx.bits(), nu) - third))
}

/// Values of J_a, J_a′ and ∫₀ᵘ J_a at one point u ≥ 0.
#[derive(Clone, Debug)]
pub struct BesselValues {
    pub j: Float,
    pub j_prime: Float,
    pub j_integral: Float,
}

/// J_a(u), J_a′(u), ∫₀ᵘ J_a for real a and u > 0. Negative integer orders use
/// J_{−n} = (−1)ⁿ J_n.
pub fn bessel(a: f64, u: f64, ctx: &PrecisionContext) -> Result<BesselValues, NumericError> {
    if !(u > 0.0) || !u.is_finite() || u > 200.0 {
        return Err(NumericError::Domain(format!("Bessel argument {u} outside (0, 200]")));
    }
    if a < 0.0 && a.fract() == 0.0 {
        let n = -a;
        let v = bessel(n, u, ctx)?;
        let sign = if (n as i64) % 2 == 0 { 1 } else { -1 };
        return Ok(BesselValues { j: v.j * sign, j_prime: v.j_prime * sign, j_integral: v.j_integral * sign });
    }
    if a <= -1.0 {
        return Err(NumericError::Domain(format!("Bessel order {a} must exceed -1 unless integral")));
    }
    let prec = ctx.bits() + (u * log2e()).ceil() as u32 + 48;
    let av = Float::with_val(prec, a);
    let uu = Float::with_val(prec, u);
    let half = Float::with_val(prec, &uu / 2u32);
    let h2 = Float::with_val(prec, half.square_ref());
    // (u/2)^a / Γ(a+1)
    let mut base = Float::with_val(prec, (&half).pow(&av));
    base /= Float::with_val(prec, &av + 1u32).gamma();
    let mut term = base; // (−1)^k (u/2)^{2k+a} / (k! Γ(k+a+1))
    let mut j = Float::new(prec);
    let mut jp = Float::new(prec);
    let mut ji = Float::new(prec);
    let eps = Float::with_val(prec, Float::i_exp(1, -(ctx.bits() as i32 + 24)));
    let settle = u as usize + 4;
    for k in 0..MAX_TERMS {
        let order = Float::with_val(prec, &av + 2 * k as u32); // 2k + a
        j += &term;
        // d/du (u/2)^{2k+a} = (2k+a)/u · (u/2)^{2k+a}
        jp += Float::with_val(prec, &term * &order) / &uu;
        // ∫₀ᵘ (t/2)^{2k+a} dt = u/(2k+a+1) · (u/2)^{2k+a}
        ji += Float::with_val(prec, &term * &uu) / Float::with_val(prec, &order + 1u32);
        let mag = Float::with_val(prec, term.abs_ref()) * (1.0 + u);
        if k > settle && mag < eps {
            return Ok(BesselValues {
                j: Float::with_val(ctx.bits(), &j),
                j_prime: Float::with_val(ctx.bits(), &jp),
                j_integral: Float::with_val(ctx.bits(), &ji),
            });
        }
        term *= &h2;
        term = -term;
        term /= (k + 1) as u32;
        term /= Float::with_val(prec, &av + (k + 1) as u32);
    }
    Err(NumericError::Unconverged { what: "Bessel series".into(), achieved: f64::NAN })
}

/// JI_a(u) = ν − ∫₀ᵘ J_a: ν = 1 gives ∫ᵤ^∞ J_a, ν = 0 gives −∫₀ᵘ J_a.
pub fn bessel_antiderivative(a: f64, u: f64, nu: u8, ctx: &PrecisionContext) -> Result<Float, NumericError> {
    let v = bessel(a, u, ctx)?;
    Ok(Float::with_val(ctx.bits(), nu) - v.j_integral)
}

pub fn erf(x: f64, ctx: &PrecisionContext) -> Float {
    Float::with_val(ctx.bits(), x).erf()
}

pub fn pi(ctx: &PrecisionContext) -> Float {
    Float::with_val(ctx.bits(), Constant::Pi)
}

/// ₀F₁(; b; x) by its series.
pub fn hyp0f1(b: f64, x: f64, ctx: &PrecisionContext) -> Result<Float, NumericError> {
    let prec = ctx.bits() + (2.0 * x.abs().sqrt() * log2e()).ceil() as u32 + 32;
    let bv = Float::with_val(prec, b);
    let xv = Float::with_val(prec, x);
    let mut term = Float::with_val(prec, 1);
    let mut sum = Float::new(prec);
    let eps = Float::with_val(prec, Float::i_exp(1, -(ctx.bits() as i32 + 24)));
    for k in 0..MAX_TERMS {
        sum += &term;
        if k > 4 + x.abs().sqrt() as usize && Float::with_val(prec, term.abs_ref()) < eps {
            return Ok(Float::with_val(ctx.bits(), &sum));
        }
        term *= &xv;
        term /= (k + 1) as u32;
        term /= Float::with_val(prec, &bv + k as u32);
    }
    Err(NumericError::Unconverged { what: "0F1 series".into(), achieved: f64::NAN })
}

/// ₁F₁(a; b; x) by its series; terminates when a is a non-positive integer.
pub fn hyp1f1(a: f64, b: f64, x: f64, ctx: &PrecisionContext) -> Result<Float, NumericError> {
    let growth = if a < 0.0 { a.abs() * (1.0 + x.abs()).ln().max(1.0) * 2.0 } else { x.abs() } * log2e();
    let prec = ctx.bits() + growth.ceil() as u32 + 48;
    let av = Float::with_val(prec, a);
    let bv = Float::with_val(prec, b);
    let xv = Float::with_val(prec, x);
    let mut term = Float::with_val(prec, 1);
    let mut sum = Float::new(prec);
    let eps = Float::with_val(prec, Float::i_exp(1, -(ctx.bits() as i32 + 24)));
    for k in 0..MAX_TERMS {
        sum += &term;
        if term.is_zero() || (k > 4 + a.abs() as usize + x.abs() as usize && Float::with_val(prec, term.abs_ref()) < eps) {
            return Ok(Float::with_val(ctx.bits(), &sum));
        }
        term *= Float::with_val(prec, &av + k as u32);
        term *= &xv;
        term /= (k + 1) as u32;
        term /= Float::with_val(prec, &bv + k as u32);
    }
    Err(NumericError::Unconverged { what: "1F1 series".into(), achieved: f64::NAN })
}
