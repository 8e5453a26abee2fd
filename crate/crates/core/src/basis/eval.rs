use rug::{Float, Integer};

use super::element::ModuleElement;
use super::family::BasisFamily;
use super::BasisError;
use crate::exact::{Param, ParamPoly, Q};
use crate::numerics::special::{airy, bessel};
use crate::numerics::{NumericError, PrecisionContext};

impl From<NumericError> for BasisError {
    fn from(e: NumericError) -> Self {
        BasisError::Numeric(e.to_string())
    }
}

/// Exact rational to an MPFR float.
pub fn q_to_float(x: &Q, prec: u32) -> Float {
    let n: Integer = x.numer().to_string().parse().expect("integer literal");
    let d: Integer = x.denom().to_string().parse().expect("integer literal");
    Float::with_val(prec, n) / Float::with_val(prec, d)
}

/// Numeric values for the formal parameters. `A` defaults to a², `At` to
/// a² − 1; `T` has no default.
#[derive(Clone, Debug)]
pub struct ParamValues {
    pub a: f64,
    pub tau: Option<f64>,
}

impl ParamValues {
    pub fn with_a(a: f64) -> Self {
        ParamValues { a, tau: None }
    }

    fn value(&self, p: Param, prec: u32) -> Result<Float, BasisError> {
        let a2 = Float::with_val(prec, self.a) * self.a;
        match p {
            Param::A => Ok(a2),
            Param::At => Ok(a2 - 1u32),
            Param::T => self.tau.map(|t| Float::with_val(prec, t)).ok_or_else(|| BasisError::UnboundParam("T".into())),
        }
    }
}

/// Evaluate a polynomial coefficient at `y` with parameter bindings.
pub fn eval_poly(p: &ParamPoly, y: &Float, params: &ParamValues) -> Result<Float, BasisError> {
    let prec = y.prec();
    let mut pv = Vec::new();
    for par in [Param::A, Param::T, Param::At] {
        pv.push(if p.params().contains(par) { Some(params.value(par, prec)?) } else { None });
    }
    let mut sum = Float::new(prec);
    for (k, pe, c) in p.iter_terms() {
        let mut t = q_to_float(c, prec) * Float::with_val(prec, y.pow_ref_u(k));
        for (slot, e) in pe.iter().enumerate() {
            if *e > 0 {
                let base = pv[slot].as_ref().ok_or_else(|| BasisError::UnboundParam(format!("slot {slot}")))?;
                t *= Float::with_val(prec, base.pow_ref_u(*e));
            }
        }
        sum += t;
    }
    Ok(sum)
}

trait PowU {
    fn pow_ref_u(&self, e: u32) -> Float;
}

impl PowU for Float {
    fn pow_ref_u(&self, e: u32) -> Float {
        let mut r = Float::with_val(self.prec(), 1);
        for _ in 0..e {
            r *= self;
        }
        r
    }
}

/// All basis values of a family at `y` (Bessel families need y > 0).
pub fn eval_basis(family: BasisFamily, y: f64, a: f64, ctx: &PrecisionContext) -> Result<Vec<Float>, BasisError> {
    let nu = family.nu.unwrap_or(0);
    let mut out = Vec::with_capacity(family.size());
    if family.is_bessel() {
        if y <= 0.0 {
            return Err(BasisError::Numeric(format!("Bessel basis needs y > 0, got {y}")));
        }
        let u = y.sqrt();
        let v = bessel(a, u, ctx)?;
        let uf = ctx.float(u);
        let yf = ctx.float(y);
        out.push(Float::with_val(ctx.bits(), v.j.square_ref()) / &yf);
        out.push(Float::with_val(ctx.bits(), v.j_prime.square_ref()));
        out.push(Float::with_val(ctx.bits(), &v.j * &v.j_prime) / &uf);
        if family.size() == 5 {
            let ji = Float::with_val(ctx.bits(), nu) - &v.j_integral;
            out.push(Float::with_val(ctx.bits(), &v.j * &ji) / &uf);
            out.push(Float::with_val(ctx.bits(), &v.j_prime * &ji));
        }
    } else {
        let v = airy(y, ctx)?;
        out.push(Float::with_val(ctx.bits(), v.ai.square_ref()));
        out.push(Float::with_val(ctx.bits(), v.ai_prime.square_ref()));
        out.push(Float::with_val(ctx.bits(), &v.ai * &v.ai_prime));
        if family.size() == 5 {
            let third = Float::with_val(ctx.bits(), 1) / 3u32;
            let big = v.ai_integral + (Float::with_val(ctx.bits(), nu) - third);
            out.push(Float::with_val(ctx.bits(), &v.ai * &big));
            out.push(Float::with_val(ctx.bits(), &v.ai_prime * &big));
        }
    }
    Ok(out)
}

/// Σ pᵢ(y)·bᵢ(y) at a point.
pub fn eval_element(elem: &ModuleElement, y: f64, params: &ParamValues, ctx: &PrecisionContext) -> Result<Float, BasisError> {
    if elem.is_zero() {
        return Ok(Float::new(ctx.bits()));
    }
    let basis = eval_basis(elem.family(), y, params.a, ctx)?;
    let yf = ctx.float(y);
    let mut sum = Float::new(ctx.bits());
    for (i, p) in elem.coeffs() {
        sum += eval_poly(p, &yf, params)? * &basis[i - 1];
    }
    Ok(sum)
}
