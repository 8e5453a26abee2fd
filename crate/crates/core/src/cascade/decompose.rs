use serde::Serialize;

use super::{paper_table, CascadeError};
use crate::basis::ModuleElement;
use crate::catalog::EdgeCase;
use crate::exact::{ParamPoly, RatFunc, Var};

/// elem = C·r₀ + P.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Decomposition {
    #[serde(serialize_with = "ser_display")]
    pub c: RatFunc,
    pub remainder: ModuleElement,
    /// Coordinate (basis index, y-degree) at which P vanishes.
    pub pivot: (usize, u32),
}

fn ser_display<S: serde::Serializer>(x: &RatFunc, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Split off the multiple of r₀. The direction is fixed by the last nonzero
/// coordinate of r₀ in the canonical ordering (basis major, degree minor),
/// which is where P is made to vanish.
pub fn decompose_homogeneous(case: &EdgeCase, elem: &ModuleElement) -> Result<Decomposition, CascadeError> {
    let r0 = paper_table(case)?.entries.swap_remove(0);
    let coords = r0.coordinates();
    let (pivot, r0c) = coords.last().cloned().expect("r0 is nonzero");
    let ec = elem
        .coordinates()
        .into_iter()
        .find(|(k, _)| *k == pivot)
        .map(|(_, p)| p.mpoly().clone())
        .unwrap_or_default();
    let c = RatFunc::new(ec, r0c.mpoly().clone())?;
    let cp = c.as_poly().ok_or_else(|| CascadeError::NonPolynomial { j: 0, coeff: c.to_string() })?;
    let remainder = elem.try_sub(&r0.mul_poly(&ParamPoly::from_mpoly(Var::Y, cp)))?;
    Ok(Decomposition { c, remainder, pivot })
}
