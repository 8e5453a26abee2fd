use rug::ops::Pow;
use rug::Float;
use serde::Serialize;

use super::{CatalogError, Edge, EdgeCase, Ensemble};
use crate::basis::q_to_float;
use crate::exact::{qi, Q};

/// Closed forms for one edge case, as strings in N, a, γ and β. The scaled
/// density is |scale|·ρ(center + scale·y).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingMap {
    pub center: String,
    pub scale: String,
    pub nprime: String,
    /// Quantity whose powers grade the correction terms.
    pub expansion: String,
    pub density_prefactor: String,
    /// Formula for τ (right edge) or τ_l (left edge), when relevant.
    pub tau: Option<String>,
}

impl ScalingMap {
    pub fn for_case(case: &EdgeCase) -> Self {
        let s = |x: &str| x.to_string();
        let (center, scale, nprime, expansion, tau) = match (case.ensemble, case.beta, case.edge) {
            (Ensemble::Gaussian, 2, _) => (s("sqrt(2N)"), s("1/(sqrt(2) N^(1/6))"), s("N"), s("4^(-1) N^(-2/3)"), None),
            (Ensemble::Gaussian, _, _) => (
                s("sqrt(2N's)"),
                s("1/(sqrt(2) N's^(1/6))"),
                s("N's = N + (beta - 2)/(2 beta)"),
                s("(8 sqrt(beta) N's)^(-2/3), argument beta^(1/3) y"),
                None,
            ),
            (Ensemble::Laguerre, 2, Edge::SoftFixedA) => {
                (s("4N'"), s("2 (2N')^(1/3)"), s("N' = N + a/2"), s("(2N')^(-2/3)"), None)
            }
            (Ensemble::Laguerre, _, Edge::SoftRight) => (
                s("(1 + sqrt(gamma))^2 N's"),
                s("gamma^(-1/6) (1 + sqrt(gamma))^(4/3) N's^(1/3)"),
                s("N^s = 2 sqrt(gamma) tau N's, N's = N for beta = 2, a = beta/2 (gamma - 1) N + beta/2 - 1"),
                if case.beta == 2 { s("N^s^(-2/3)") } else { s("(sqrt(beta) N^s)^(-2/3), argument beta^(1/3) y") },
                Some(s("tau = 4/(sqrt(gamma) + 1/sqrt(gamma) + 2)")),
            ),
            (Ensemble::Laguerre, _, Edge::SoftLeft) => (
                s("(1 - sqrt(gamma))^2 N's"),
                s("-gamma^(-1/6) (sqrt(gamma) - 1)^(4/3) N's^(1/3)"),
                s("N^sl = 2 sqrt(gamma) tau_l N's, N's = N, gamma > 1"),
                s("N^sl^(-2/3)"),
                Some(s("tau_l = 4/(sqrt(gamma) + 1/sqrt(gamma) - 2)")),
            ),
            (Ensemble::Laguerre, 2, _) => (s("0"), s("1/(4N'h)"), s("N'h = N + a/2"), s("N'h^(-2)"), None),
            (Ensemble::Laguerre, _, _) => (
                s("0"),
                s("1/(4N^h)"),
                s("N^h = N + (a - 1)/2 (beta = 1), N + (a + 1)/4 (beta = 4)"),
                s("(2 sqrt(beta) N^h)^(-2), argument y/2 in the basis"),
                None,
            ),
        };
        let density_prefactor = if case.edge == Edge::Hard { s("1/(4N'h)") } else { s("|scale|") };
        ScalingMap { center, scale, nprime, expansion, density_prefactor, tau }
    }
}

/// τ = 4/(√γ + 1/√γ + 2) = 4√γ/(1 + √γ)².
pub fn tau_right(gamma: f64) -> f64 {
    let g = gamma.sqrt();
    4.0 / (g + 1.0 / g + 2.0)
}

/// τ_l = 4/(√γ + 1/√γ − 2), defined for γ > 1.
pub fn tau_left(gamma: f64) -> Result<f64, CatalogError> {
    if gamma <= 1.0 {
        return Err(CatalogError::Domain(format!("tau_l needs gamma > 1, got {gamma}")));
    }
    let g = gamma.sqrt();
    Ok(4.0 / (g + 1.0 / g - 2.0))
}

/// A scaling map evaluated at concrete N, a, γ (β = 2 cases only).
#[derive(Clone, Debug)]
pub struct NumericScaling {
    pub center: Float,
    pub scale: Float,
    /// Weight of r_j is `step^j`.
    pub step: Float,
    /// The shifted size N′ (or N̂) used to fit convergence orders.
    pub size: Float,
    /// Laguerre parameter actually used (a = (γ − 1)N at the soft edges).
    pub a: Q,
    pub tau: Option<f64>,
}

impl NumericScaling {
    pub fn new(case: &EdgeCase, n: u32, a: &Q, gamma: Option<&Q>, prec: u32) -> Result<Self, CatalogError> {
        if case.beta != 2 {
            return Err(CatalogError::Unsupported(format!("{case}: numeric scaling is provided for beta = 2")));
        }
        let nf = Float::with_val(prec, n);
        let third = Float::with_val(prec, 1) / 3u32;
        let cbrt = |x: &Float| Float::with_val(prec, x.pow(&third));
        let out = match (case.ensemble, case.edge) {
            (Ensemble::Gaussian, _) => {
                let two_n = Float::with_val(prec, &nf * 2u32);
                let n16 = Float::with_val(prec, (&nf).pow(Float::with_val(prec, 1) / 6u32));
                let scale = Float::with_val(prec, 1) / (Float::with_val(prec, 2u32).sqrt() * n16);
                let n23 = Float::with_val(prec, (&nf).pow(Float::with_val(prec, 2) / 3u32));
                NumericScaling { center: two_n.sqrt(), scale, step: Float::with_val(prec, 1) / (n23 * 4u32), size: nf, a: qi(0), tau: None }
            }
            (Ensemble::Laguerre, Edge::SoftFixedA) => {
                let np = Float::with_val(prec, &nf + q_to_float(a, prec) / 2u32);
                let two_np = Float::with_val(prec, &np * 2u32);
                let c = cbrt(&two_np);
                let step = Float::with_val(prec, 1) / Float::with_val(prec, c.square_ref());
                NumericScaling { center: Float::with_val(prec, &np * 4u32), scale: c * 2u32, step, size: np, a: a.clone(), tau: None }
            }
            (Ensemble::Laguerre, Edge::SoftRight) | (Ensemble::Laguerre, Edge::SoftLeft) => {
                let g = gamma.ok_or_else(|| CatalogError::Domain("soft edges with a proportional to N need gamma".into()))?;
                let left = case.edge == Edge::SoftLeft;
                if left && *g <= qi(1) {
                    return Err(CatalogError::Domain(format!("left soft edge needs gamma > 1, got {g}")));
                }
                if !left && *g < qi(1) {
                    return Err(CatalogError::Domain(format!("right soft edge needs gamma >= 1, got {g}")));
                }
                let a = (g - qi(1)) * qi(n as i64);
                let gf = q_to_float(g, prec);
                let sg = Float::with_val(prec, gf.sqrt_ref());
                let tau = if left {
                    Float::with_val(prec, 4u32) / (Float::with_val(prec, &sg + Float::with_val(prec, 1) / &sg) - 2u32)
                } else {
                    Float::with_val(prec, 4u32) / (Float::with_val(prec, &sg + Float::with_val(prec, 1) / &sg) + 2u32)
                };
                let size = Float::with_val(prec, &sg * 2u32) * &tau * &nf;
                let g16 = Float::with_val(prec, (&gf).pow(Float::with_val(prec, -1) / 6u32));
                let base = if left { Float::with_val(prec, &sg - 1u32) } else { Float::with_val(prec, &sg + 1u32) };
                let center = Float::with_val(prec, base.square_ref()) * &nf;
                let b43 = Float::with_val(prec, (&base).pow(Float::with_val(prec, 4) / 3u32));
                let mut scale = g16 * b43 * cbrt(&nf);
                if left {
                    scale = -scale;
                }
                let c = cbrt(&size);
                let step = Float::with_val(prec, 1) / Float::with_val(prec, c.square_ref());
                NumericScaling { center, scale, step, size, a, tau: Some(tau.to_f64()) }
            }
            (Ensemble::Laguerre, Edge::Hard) => {
                let np = Float::with_val(prec, &nf + q_to_float(a, prec) / 2u32);
                let scale = Float::with_val(prec, 1) / Float::with_val(prec, &np * 4u32);
                let step = Float::with_val(prec, 1) / Float::with_val(prec, np.square_ref());
                NumericScaling { center: Float::new(prec), scale, step, size: np, a: a.clone(), tau: None }
            }
        };
        Ok(out)
    }

    /// Unscaled coordinate for a scaled y.
    pub fn x_of(&self, y: f64) -> Float {
        let prec = self.scale.prec();
        Float::with_val(prec, &self.center + Float::with_val(prec, &self.scale * y))
    }

    pub fn prefactor(&self) -> Float {
        Float::with_val(self.scale.prec(), self.scale.abs_ref())
    }
}
