//! Catalog of edge cases, their graded differential operators and scaling maps.
//!
//! Every operator here is exact data. `get_operators` returns the operators
//! in the grading in which they are usually quoted; `cascade_operators`
//! returns them normalized so that Σₖ Cₖ r_{j−k} = 0 holds for the correction
//! terms stored in the tables of [`crate::cascade`].

mod data;
mod grading;
mod scaling;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use grading::{check_grading, grading_expansion, Laurent};
pub use scaling::{tau_left, tau_right, NumericScaling, ScalingMap};

use crate::basis::{BasisError, BasisFamily, DiffOperator, FamilyId};
use crate::exact::{parse_q, qi, ExactError, Param, ParamPoly, ParamSet, Var, Q};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum CatalogError {
    #[error("unsupported edge case: {0}")]
    Unsupported(String),
    #[error("catalog integrity failure: {0}")]
    Integrity(String),
    #[error("bad case descriptor {0:?}: {1}")]
    Descriptor(String, String),
    #[error("parameter outside its domain: {0}")]
    Domain(String),
    #[error(transparent)]
    Basis(#[from] BasisError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ensemble {
    Gaussian,
    Laguerre,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Edge {
    /// Gaussian soft edge, or Laguerre soft edge with `a` fixed.
    SoftFixedA,
    SoftRight,
    SoftLeft,
    Hard,
}

/// An (ensemble, β, edge) triple with its basis family and formal parameters.
/// Serialized as its descriptor string.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EdgeCase {
    pub ensemble: Ensemble,
    pub beta: u8,
    pub edge: Edge,
    pub family: BasisFamily,
    pub params: ParamSet,
}

impl EdgeCase {
    pub fn new(ensemble: Ensemble, beta: u8, edge: Edge) -> Result<Self, CatalogError> {
        if ![1, 2, 4].contains(&beta) {
            return Err(CatalogError::Unsupported(format!(
                "beta = {beta}; only 1, 2 and 4 have printed operators (beta = 6 is stored as data only)"
            )));
        }
        let bessel = edge == Edge::Hard;
        use Edge::*;
        use Ensemble::*;
        let params = match (ensemble, edge, beta) {
            (Gaussian, SoftFixedA, _) => ParamSet::EMPTY,
            (Gaussian, e, _) => return Err(CatalogError::Unsupported(format!("Gaussian ensembles have no {e:?} regime"))),
            (Laguerre, SoftFixedA, 2) => ParamSet::of(&[Param::A]),
            (Laguerre, SoftRight, 2) | (Laguerre, SoftLeft, 2) => ParamSet::of(&[Param::T]),
            (Laguerre, Hard, 2) => ParamSet::of(&[Param::A]),
            (Laguerre, SoftRight, _) => ParamSet::of(&[Param::T]),
            (Laguerre, Hard, _) => ParamSet::of(&[Param::A]),
            (Laguerre, e, b) => return Err(CatalogError::Unsupported(format!("Laguerre beta = {b} {e:?} has no printed operators"))),
        };
        let id = match (bessel, beta) {
            (false, 2) => FamilyId::Airy3,
            (false, _) => FamilyId::Airy5,
            (true, 2) => FamilyId::Bessel3,
            (true, _) => FamilyId::Bessel5,
        };
        Ok(EdgeCase { ensemble, beta, edge, family: BasisFamily::for_beta(id, beta), params })
    }

    pub fn gue_soft() -> Self {
        Self::new(Ensemble::Gaussian, 2, Edge::SoftFixedA).expect("static case")
    }

    pub fn lue(edge: Edge) -> Self {
        Self::new(Ensemble::Laguerre, 2, edge).expect("static case")
    }

    /// Canonical descriptor, e.g. `lue-soft-right` or `lbe-hard:beta=1`.
    pub fn descriptor(&self) -> String {
        let edge = match self.edge {
            Edge::SoftFixedA if self.ensemble == Ensemble::Gaussian => "soft",
            Edge::SoftFixedA => "soft-a",
            Edge::SoftRight => "soft-right",
            Edge::SoftLeft => "soft-left",
            Edge::Hard => "hard",
        };
        let ens = match (self.ensemble, self.beta) {
            (Ensemble::Gaussian, 1) => "goe",
            (Ensemble::Gaussian, 2) => "gue",
            (Ensemble::Gaussian, _) => "gse",
            (Ensemble::Laguerre, 1) => "loe",
            (Ensemble::Laguerre, 2) => "lue",
            (Ensemble::Laguerre, _) => "lse",
        };
        format!("{ens}-{edge}")
    }

    pub fn is_hard(&self) -> bool {
        self.edge == Edge::Hard
    }
}

impl Serialize for EdgeCase {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.descriptor())
    }
}

impl<'de> Deserialize<'de> for EdgeCase {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let spec: CaseSpec = s.parse().map_err(serde::de::Error::custom)?;
        Ok(spec.case)
    }
}

impl fmt::Display for EdgeCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

/// A parsed descriptor: the case plus any numeric options it carried.
#[derive(Clone, Debug, PartialEq)]
pub struct CaseSpec {
    pub case: EdgeCase,
    pub gamma: Option<Q>,
    pub a: Option<Q>,
}

impl FromStr for CaseSpec {
    type Err = CatalogError;

    /// Grammar: `<ens>-<edge>[:key=value[,key=value]...]` with `<ens>` one of
    /// gue, goe, gse, gbe, lue, loe, lse, lbe and keys beta, gamma, a.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |why: &str| CatalogError::Descriptor(s.to_string(), why.to_string());
        let (head, opts) = match s.split_once(':') {
            Some((h, o)) => (h.trim(), o),
            None => (s.trim(), ""),
        };
        let (ens, edge) = head.split_once('-').ok_or_else(|| bad("expected <ensemble>-<edge>"))?;
        let mut beta = None;
        let mut gamma = None;
        let mut a = None;
        for kv in opts.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (k, v) = kv.split_once('=').ok_or_else(|| bad("options are key=value"))?;
            let val = parse_q(v.trim()).map_err(|_| bad("option value is not a rational"))?;
            match k.trim() {
                "beta" => beta = Some(val),
                "gamma" => gamma = Some(val),
                "a" => a = Some(val),
                other => return Err(bad(&format!("unknown option {other}"))),
            }
        }
        let (ensemble, implied) = match ens {
            "gue" => (Ensemble::Gaussian, Some(2)),
            "goe" => (Ensemble::Gaussian, Some(1)),
            "gse" => (Ensemble::Gaussian, Some(4)),
            "gbe" => (Ensemble::Gaussian, None),
            "lue" => (Ensemble::Laguerre, Some(2)),
            "loe" => (Ensemble::Laguerre, Some(1)),
            "lse" => (Ensemble::Laguerre, Some(4)),
            "lbe" => (Ensemble::Laguerre, None),
            _ => return Err(bad("unknown ensemble")),
        };
        let beta = match (implied, beta) {
            (Some(b), None) => b,
            (Some(b), Some(v)) if v == qi(b as i64) => b,
            (Some(_), Some(_)) => return Err(bad("beta conflicts with the ensemble name")),
            (None, Some(v)) if v.is_integer() && v > qi(0) && v < qi(256) => v.to_integer().to_string().parse::<u8>().map_err(|_| bad("beta"))?,
            (None, _) => return Err(bad("this ensemble needs beta=<1|2|4>")),
        };
        let edge = match edge {
            "soft" if ensemble == Ensemble::Gaussian => Edge::SoftFixedA,
            "soft-a" | "soft-fixed-a" => Edge::SoftFixedA,
            "soft-right" => Edge::SoftRight,
            "soft-left" => Edge::SoftLeft,
            "hard" => Edge::Hard,
            _ => return Err(bad("unknown edge")),
        };
        let case = EdgeCase::new(ensemble, beta, edge)?;
        if case.edge == Edge::SoftLeft {
            if let Some(g) = &gamma {
                if *g <= qi(1) {
                    return Err(CatalogError::Domain(format!("left soft edge needs gamma > 1, got {g}")));
                }
            }
        }
        Ok(CaseSpec { case, gamma, a })
    }
}

impl FromStr for EdgeCase {
    type Err = CatalogError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(s.parse::<CaseSpec>()?.case)
    }
}

fn op(items: &[(&str, u32)]) -> DiffOperator {
    DiffOperator::parse(Var::Y, items).expect("catalog literal parses")
}

/// Graded operators as quoted: for the soft edges Σₖ (N′)^{−2k/3} 𝒟ₖ, for the
/// hard edges the 𝒟ₖ of the expansion in (4N′_h)^{−2} (β = 2) or
/// (2√β N̂_h)^{−2} (β = 1, 4) annihilates the scaled density.
pub fn get_operators(case: &EdgeCase) -> Result<Vec<DiffOperator>, CatalogError> {
    use Edge::*;
    use Ensemble::*;
    let b = qi(case.beta as i64);
    let ops = match (case.ensemble, case.beta, case.edge) {
        (Gaussian, 2, _) => data::gue_soft(),
        (Gaussian, _, _) => data::gaussian_beta(&b),
        (Laguerre, 2, SoftFixedA) => data::lue_soft_fixed_a(),
        (Laguerre, 2, SoftRight) => data::lue_soft_right(),
        (Laguerre, 2, SoftLeft) => {
            let minus_t = -ParamPoly::param(Var::Y, Param::T);
            data::lue_soft_right().iter().map(|d| d.substitute_param(Param::T, &minus_t).with_note("soft-right operator with T -> -T")).collect()
        }
        (Laguerre, 2, Hard) => data::lue_hard(),
        (Laguerre, _, SoftRight) => data::laguerre_beta_soft_right(&b),
        (Laguerre, _, Hard) => data::laguerre_beta_hard(),
        _ => return Err(CatalogError::Unsupported(case.descriptor())),
    };
    if case.is_hard() {
        for d in &ops {
            d.euler_compatible().map_err(|e| CatalogError::Integrity(format!("{case}: {e}")))?;
        }
    }
    Ok(ops)
}

/// Operators Cₖ with Σₖ Cₖ r_{j−k} = 0 for the stored correction terms.
///
/// The rescalings relative to [`get_operators`] are: GUE C₁ = 4𝒟₁ (the 4^{−j}
/// grading); LUE hard C₁ = 𝒟₁/16; β = 1, 4 soft edges use the β-free tilde
/// operators; LβE hard acts on R(y) = r(y/2) with Ã replaced by A − 1.
pub fn cascade_operators(case: &EdgeCase) -> Result<Vec<DiffOperator>, CatalogError> {
    use Edge::*;
    let ops = get_operators(case)?;
    let out = match (case.beta, case.edge) {
        (2, Hard) => vec![ops[0].clone(), ops[1].scale(&Q::new(1.into(), 16.into()))],
        (2, _) if case.ensemble == Ensemble::Gaussian => vec![ops[0].clone(), ops[1].scale(&qi(4))],
        (2, _) => ops,
        (_, Hard) => {
            let a_minus_1 = &ParamPoly::param(Var::Y, Param::A) - &ParamPoly::one(Var::Y);
            ops.iter().map(|d| rescale_variable(&d.substitute_param(Param::At, &a_minus_1), &Q::new(1.into(), 2.into()))).collect()
        }
        _ => scale_beta(case)?,
    };
    Ok(out)
}

/// The operator Σ pₖ(c·u)·c^{−k}·dᵏ/duᵏ, i.e. the action on f(u) = g(c·u) of
/// Σ pₖ(y) dᵏ/dyᵏ acting on g.
pub fn rescale_variable(d: &DiffOperator, c: &Q) -> DiffOperator {
    let mut terms = Vec::new();
    for (k, p) in d.terms() {
        let scaled = ParamPoly::from_terms(
            p.var(),
            p.params(),
            p.iter_terms().map(|(e, pe, coeff)| (e, pe, coeff * crate::exact::qpow_signed(c, e as i64 - *k as i64))),
        )
        .expect("same parameter set");
        terms.push((scaled, *k));
    }
    DiffOperator::new(terms).with_note(d.note.clone())
}

/// β-free operators for β ∈ {1, 4}: ỹ = β^{1/3}y and
/// D̃ₖ = c·β^{(k−2)/3}·𝒟ₖ|_{y ↦ β^{−1/3}y} with c = 4^{k−1} (Gaussian) or
/// c = 1/4 (Laguerre right soft edge, so that D̃₀ agrees with the Gaussian
/// one). Every term must carry an integral power of β; the result is
/// computed for both β = 1 and β = 4 and must coincide exactly.
pub fn scale_beta(case: &EdgeCase) -> Result<Vec<DiffOperator>, CatalogError> {
    if case.beta == 2 || case.edge == Edge::Hard {
        return Err(CatalogError::Unsupported(format!("{case}: scale_beta needs a beta = 1 or 4 soft edge")));
    }
    let mut results = Vec::new();
    for beta in [1u8, 4] {
        let c = EdgeCase::new(case.ensemble, beta, case.edge)?;
        let ops = get_operators(&c)?;
        let mut scaled = Vec::new();
        for (k, d) in ops.iter().enumerate() {
            let extra = match case.ensemble {
                Ensemble::Gaussian => crate::exact::qpow_signed(&qi(4), k as i64 - 1),
                Ensemble::Laguerre => Q::new(1.into(), 4.into()),
            };
            scaled.push(scale_one(d, k as i64, beta, &extra)?);
        }
        results.push(scaled);
    }
    if results[0] != results[1] {
        return Err(CatalogError::Integrity(format!("{case}: rescaled operators differ between beta = 1 and beta = 4")));
    }
    Ok(results.swap_remove(0))
}

fn scale_one(d: &DiffOperator, k: i64, beta: u8, extra: &Q) -> Result<DiffOperator, CatalogError> {
    let b = qi(beta as i64);
    let mut terms = Vec::new();
    for (q, p) in d.terms() {
        let mut out = Vec::new();
        for (e, pe, c) in p.iter_terms() {
            // y = ỹ/s, d/dy = s·d/dỹ, s³ = β
            let s_exp = *q as i64 - e as i64 + k - 2;
            if s_exp.rem_euclid(3) != 0 {
                return Err(CatalogError::Integrity(format!("term y^{e} d^{q} of operator {k} carries beta^({s_exp}/3)")));
            }
            out.push((e, pe, c * crate::exact::qpow_signed(&b, s_exp / 3) * extra));
        }
        terms.push((ParamPoly::from_terms(Var::Y, p.params(), out)?, *q));
    }
    Ok(DiffOperator::new(terms))
}

/// Raw Laguerre operator (4.0 form) in x for numeric N and a.
pub fn lue_raw_operator(n: &Q, a: &Q) -> DiffOperator {
    data::lue_raw(n, a)
}

/// Global-scale GUE operator (1/(4N))² d³ − (x² − 1)d + x.
pub fn gue_global_operator(n: &Q) -> DiffOperator {
    data::gue_global(n)
}

/// The global GUE operator moved to the unscaled variable t = √(2N)·x and
/// multiplied by √(2N): ¼d³ − (t² − 2N)d + t. It acts on the unscaled density.
pub fn gue_unscaled_operator(n: &Q) -> DiffOperator {
    data::gue_unscaled(n)
}

/// Stored fifth-order correction 𝒟₁ for the β = 6 Gaussian soft edge. Data
/// only: no cascade is built on it because 𝒟₀ for β = 6 is not available.
pub fn gaussian_beta6_d1() -> DiffOperator {
    data::gaussian_beta6_d1()
}

pub fn scaling_map(case: &EdgeCase) -> ScalingMap {
    ScalingMap::for_case(case)
}

/// Every supported case, in display order.
pub fn all_cases() -> Vec<EdgeCase> {
    use Edge::*;
    use Ensemble::*;
    let mut out = Vec::new();
    for (e, b, g) in [
        (Gaussian, 2, SoftFixedA),
        (Gaussian, 1, SoftFixedA),
        (Gaussian, 4, SoftFixedA),
        (Laguerre, 2, SoftFixedA),
        (Laguerre, 2, SoftRight),
        (Laguerre, 2, SoftLeft),
        (Laguerre, 2, Hard),
        (Laguerre, 1, SoftRight),
        (Laguerre, 4, SoftRight),
        (Laguerre, 1, Hard),
        (Laguerre, 4, Hard),
    ] {
        out.push(EdgeCase::new(e, b, g).expect("static case"));
    }
    out
}

/// Integrity pass over the whole catalog: Euler compatibility of hard-edge
/// operators, β-independence of the rescaled operators, the grading of the
/// raw operators for GUE and the four LUE regimes, and the two τ → 0 limits.
pub fn verify_catalog() -> Vec<(String, Result<(), CatalogError>)> {
    let mut out = Vec::new();
    for case in all_cases() {
        out.push((format!("{case}: operators load"), get_operators(&case).map(|_| ())));
        if case.beta != 2 && !case.is_hard() {
            out.push((format!("{case}: rescaled operators are beta-free"), scale_beta(&case).map(|_| ())));
        }
        if case.beta == 2 {
            out.push((format!("{case}: raw operator grading"), check_grading(&case)));
        }
    }
    out.push(("lbe-soft-right: T -> 0 gives the Gaussian rescaled operators".into(), check_tau_zero_limit()));
    out
}

/// At T = 0 the rescaled Laguerre β operators D̃₁, D̃₂ reduce to the Gaussian
/// ones and D̃₃…D̃₅ vanish.
pub fn check_tau_zero_limit() -> Result<(), CatalogError> {
    let lag = scale_beta(&EdgeCase::new(Ensemble::Laguerre, 1, Edge::SoftRight)?)?;
    let gau = scale_beta(&EdgeCase::new(Ensemble::Gaussian, 1, Edge::SoftFixedA)?)?;
    for (k, d) in lag.iter().enumerate() {
        let at0 = d.bind(Param::T, &qi(0));
        let want = gau.get(k).cloned().unwrap_or_else(DiffOperator::zero);
        if at0.terms() != want.terms() {
            return Err(CatalogError::Integrity(format!("T = 0 limit of rescaled operator {k}: {at0} vs {want}")));
        }
    }
    Ok(())
}

/// JSON dump of one case: descriptor, family, operators and scaling map.
pub fn dump_json(case: &EdgeCase) -> Result<serde_json::Value, CatalogError> {
    let ops = get_operators(case)?;
    let casc = cascade_operators(case)?;
    Ok(serde_json::json!({
        "case": case.descriptor(),
        "family": case.family.to_string(),
        "nu": case.family.nu,
        "operators": ops,
        "cascade_operators": casc,
        "scaling": scaling_map(case),
    }))
}

/// Human-readable layout: one operator per line.
pub fn dump_text(case: &EdgeCase) -> Result<String, CatalogError> {
    let mut s = format!("{} [{}]\n", case.descriptor(), case.family);
    for (k, d) in get_operators(case)?.iter().enumerate() {
        s.push_str(&format!("  D{k} = {d}\n"));
    }
    for (k, d) in cascade_operators(case)?.iter().enumerate() {
        s.push_str(&format!("  C{k} = {d}\n"));
    }
    let m = scaling_map(case);
    s.push_str(&format!("  x = {} + ({})*y,  N' = {},  expansion in {}\n", m.center, m.scale, m.nprime, m.expansion));
    Ok(s)
}

#[doc(hidden)]
pub fn literal(items: &[(&str, u32)]) -> DiffOperator {
    op(items)
}
