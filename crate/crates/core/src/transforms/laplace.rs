//! Bilateral Laplace transforms of Airy-module elements and the recursions
//! the transforms u_j(γ) = ∫ e^{γy} r_j(y) dy obey.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::Serialize;

use super::element::{GammaOperator, Sector, TransformElement};
use super::TransformError;
use crate::basis::{DiffOperator, FamilyId, ModuleElement};
use crate::catalog::{cascade_operators, Edge, EdgeCase, Ensemble};
use crate::exact::rational::binomial;
use crate::exact::{q, qi, solve_exact, MPoly, RatFunc, Var, Q};

const MAX_ESCALATIONS: u32 = 4;

/// Transform of the Airy basis function aᵢ (a₁ = Ai², a₂ = Ai′², a₃ = Ai·Ai′,
/// a₄ = AI·Ai, a₅ = AI·Ai′). `nu` only enters the antiderivative products.
pub fn transform_basis(i: usize, nu: &Q) -> Result<TransformElement, TransformError> {
    let h1 = TransformElement::a_term(-1, q(1, 2));
    let h4 = || TransformElement::b_term(0, nu - q(1, 2)).add(&TransformElement::c_term(0, q(1, 2)));
    Ok(match i {
        1 => h1,
        2 => h1.mul_gamma(-1).add(&h1.derivative()),
        3 => h1.mul_gamma(1).scale(&q(-1, 2)),
        4 => h4(),
        5 => h1.add(&h4().mul_gamma(1)).scale(&qi(-1)),
        _ => return Err(TransformError::UnknownBasis(i)),
    })
}

/// y^k·bᵢ ↦ (d/dγ)^k hᵢ, extended linearly.
pub fn transform_element(elem: &ModuleElement) -> Result<TransformElement, TransformError> {
    let fam = elem.family();
    let nu = match fam.id {
        FamilyId::Airy3 => Q::zero(),
        FamilyId::Airy5 => qi(fam.nu.unwrap_or(0) as i64),
        _ => return Err(TransformError::UnsupportedFamily(fam.to_string())),
    };
    let mut out = TransformElement::zero();
    for (&i, p) in elem.coeffs() {
        let h = transform_basis(i, &nu)?;
        for (deg, exps, c) in p.iter_terms() {
            if exps != [0, 0, 0] {
                return Err(TransformError::NonNumeric(p.to_string()));
            }
            out.add_assign(&h.derivative_n(deg).scale(c));
        }
    }
    Ok(out)
}

/// The γ-side image of a y-operator: y^p·d^q ↦ (d/dγ)^p ∘ (−γ)^q.
pub fn laplace_operator(op: &DiffOperator) -> Result<GammaOperator, TransformError> {
    if op.var() != Var::Y {
        return Err(TransformError::UnsupportedFamily(format!("operator in {}", op.var().name())));
    }
    let mut out = GammaOperator::default();
    for (&qd, coeff) in op.terms() {
        let sign = if qd % 2 == 0 { qi(1) } else { qi(-1) };
        for (p, exps, c) in coeff.iter_terms() {
            if exps != [0, 0, 0] {
                return Err(TransformError::NonNumeric(coeff.to_string()));
            }
            // Leibniz: dᵖ∘γ^q = Σᵢ C(p,i)·q(q−1)…(q−i+1)·γ^{q−i}·d^{p−i}
            let mut falling = qi(1);
            for i in 0..=p.min(qd) {
                let w = Q::from(binomial(p, i)) * &falling * c * &sign;
                out.add_term(p - i, qd - i, w);
                falling *= qi((qd - i) as i64);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RecursionCase {
    /// β = 2: first-order recursion in γ.
    Gue,
    /// β = 1, 4: second-order recursion, ν entering only through the data.
    Beta,
}

impl RecursionCase {
    pub fn edge_case(self) -> EdgeCase {
        match self {
            RecursionCase::Gue => EdgeCase::gue_soft(),
            RecursionCase::Beta => EdgeCase::new(Ensemble::Gaussian, 1, Edge::SoftFixedA).expect("static case"),
        }
    }
}

impl std::str::FromStr for RecursionCase {
    type Err = TransformError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "gue" | "gue-soft" => Ok(RecursionCase::Gue),
            "goe" | "gse" | "gbe" | "beta" | "goe-soft" | "gse-soft" => Ok(RecursionCase::Beta),
            other => Err(TransformError::UnknownCase(other.to_string())),
        }
    }
}

/// L₀, L₁, … with Σₖ Lₖ u_{j−k} = 0, written out in their quoted form.
pub fn recursion_operators(case: RecursionCase) -> Vec<GammaOperator> {
    match case {
        RecursionCase::Gue => vec![
            GammaOperator::new([(1, 1, qi(4)), (0, 0, qi(6)), (0, 3, qi(-1))]),
            GammaOperator::new([(2, 1, qi(4)), (1, 0, qi(12))]),
        ],
        RecursionCase::Beta => vec![
            GammaOperator::new([(0, 2, qi(18)), (0, 5, qi(-1)), (1, 3, qi(5)), (1, 0, qi(-10)), (2, 1, qi(-4))]),
            GammaOperator::new([(0, 1, qi(48)), (1, 2, qi(36)), (2, 0, qi(-30)), (2, 3, qi(5)), (3, 1, qi(-8))]),
            GammaOperator::new([(3, 0, qi(-20)), (4, 1, qi(-4))]),
        ],
    }
}

/// The same recursion obtained by transforming the cascade operators.
pub fn derived_recursion_operators(case: RecursionCase) -> Result<Vec<GammaOperator>, TransformError> {
    let ops = cascade_operators(&case.edge_case()).map_err(|e| TransformError::Catalog(e.to_string()))?;
    ops.iter().map(laplace_operator).collect()
}

/// Σₖ Lₖ u_{j−k} for the supplied sequence; zero when the recursion holds.
pub fn recursion_residual(case: RecursionCase, us: &[TransformElement], j: usize) -> TransformElement {
    let ops = recursion_operators(case);
    let mut r = TransformElement::zero();
    for (k, op) in ops.iter().enumerate() {
        if k <= j && j - k < us.len() {
            r.add_assign(&op.apply(&us[j - k]));
        }
    }
    r
}

#[derive(Clone, Debug, Serialize)]
pub struct RecursionResult {
    pub j: usize,
    pub particular: TransformElement,
    /// Homogeneous solutions inside the ansatz, each with a unit coefficient
    /// at its free column.
    pub homogeneous: Vec<TransformElement>,
    pub free_params: usize,
    pub escalations: u32,
}

fn ansatz_columns(case: RecursionCase, j: usize, extra: usize) -> Vec<(Sector, i32)> {
    let ji = j as i32;
    let mut cols: Vec<(Sector, i32)> = (0..=(2 * j + extra) as i32).map(|l| (Sector::A, -(2 * ji + 3) + 6 * l)).collect();
    if case == RecursionCase::Beta {
        let r = (3 - ji % 3) % 3;
        let top = (5 * ji - r) / 3 + extra as i32;
        for s in [Sector::B, Sector::C] {
            cols.extend((0..=top).map(|l| (s, r + 3 * l)));
        }
    }
    cols
}

fn unit(s: Sector, k: i32) -> TransformElement {
    match s {
        Sector::A => TransformElement::a_term(k, qi(1)),
        Sector::B => TransformElement::b_term(k, qi(1)),
        Sector::C => TransformElement::c_term(k, qi(1)),
    }
}

fn keyed(t: &TransformElement) -> BTreeMap<(Sector, i32), Q> {
    let mut m = BTreeMap::new();
    for s in [Sector::A, Sector::B, Sector::C] {
        for (k, c) in t.sector(s) {
            m.insert((s, *k), c.clone());
        }
    }
    m
}

/// Solves L₀u_j = −Σ_{k≥1} Lₖu_{j−k} over the sector ansatz
/// γ^{3l−(2j+3)/2} (sector A) and γ^{3l−j mod 3} (sectors B, C), widening
/// the range when the system is inconsistent.
pub fn recursion_step(case: RecursionCase, priors: &[TransformElement], j: usize) -> Result<RecursionResult, TransformError> {
    if priors.len() < j {
        return Err(TransformError::MissingPriors { j, have: priors.len() });
    }
    let ops = recursion_operators(case);
    let mut rhs = TransformElement::zero();
    for (k, op) in ops.iter().enumerate().skip(1) {
        if k <= j {
            rhs.add_assign(&op.apply(&priors[j - k]));
        }
    }
    let rhs = keyed(&rhs.scale(&qi(-1)));
    for extra in 0..=MAX_ESCALATIONS as usize {
        let cols = ansatz_columns(case, j, extra);
        let images: Vec<BTreeMap<(Sector, i32), Q>> = cols.iter().map(|&(s, k)| keyed(&ops[0].apply(&unit(s, k)))).collect();
        let rows: BTreeSet<(Sector, i32)> = images.iter().flat_map(|m| m.keys().copied()).chain(rhs.keys().copied()).collect();
        let matrix: Vec<Vec<MPoly>> = rows
            .iter()
            .map(|r| images.iter().map(|m| m.get(r).map(|c| MPoly::constant(c.clone())).unwrap_or_default()).collect())
            .collect();
        let b: Vec<MPoly> = rows.iter().map(|r| rhs.get(r).map(|c| MPoly::constant(c.clone())).unwrap_or_default()).collect();
        let sol = solve_exact(&matrix, &b)?;
        if !sol.consistent {
            continue;
        }
        let assemble = |v: &[RatFunc]| -> TransformElement {
            let mut t = TransformElement::zero();
            for (&(s, k), c) in cols.iter().zip(v) {
                let c = c.as_poly().and_then(|p| p.constant_value()).expect("numeric system");
                t.add_assign(&unit(s, k).scale(&c));
            }
            t
        };
        let homogeneous: Vec<TransformElement> = sol.nullspace.iter().map(|v| assemble(v)).collect();
        return Ok(RecursionResult {
            j,
            particular: assemble(&sol.particular),
            free_params: homogeneous.len(),
            homogeneous,
            escalations: extra as u32,
        });
    }
    Err(TransformError::AnsatzInsufficient { j, tries: MAX_ESCALATIONS + 1 })
}

/// Transforms of the tabulated corrections r₀ … r_{n−1} of a Gaussian case.
pub fn transformed_table(case: RecursionCase, n: usize) -> Result<Vec<TransformElement>, TransformError> {
    let table = crate::cascade::paper_table(&case.edge_case()).map_err(|e| TransformError::Catalog(e.to_string()))?;
    if table.len() < n {
        return Err(TransformError::MissingPriors { j: n, have: table.len() });
    }
    table.entries[..n].iter().map(transform_element).collect()
}
