//! Ansatz solving for the next correction term.
//!
//! The unknown r_j is written Σᵢ Σ_d c_{i,d}·y^d·bᵢ with rational-function
//! coefficients c in the parameters. Applying C₀ and matching the coordinate
//! of every (basis index, y-power) against −Σ_{k≥1} Cₖ r_{j−k} gives a linear
//! system whose entries are polynomials in the parameters only.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{CascadeError, CorrectionTable};
use crate::basis::{BasisFamily, DiffOperator, ModuleElement};
use crate::catalog::{cascade_operators, Edge, EdgeCase, Ensemble};
use crate::exact::{qi, solve_exact, MPoly, ParamPoly, RatFunc, Var};

/// Mod-3 weight of the Airy basis functions with y of weight 2 and d/dy of
/// weight 1 (Ai ↦ 0, Ai′ ↦ 1, AI ↦ 2).
const AIRY_OFFSETS: [u8; 5] = [0, 2, 1, 2, 0];

const MAX_ESCALATIONS: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sparsity {
    Dense,
    /// Keep only monomials y^d·bᵢ whose Airy weight is this class.
    AiryWeight(u8),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnsatzSpec {
    pub family: BasisFamily,
    /// Largest y-degree per basis function, index 0 for b₁.
    pub bounds: Vec<u32>,
    /// Smallest y-degree allowed in every coefficient.
    pub min_degree: u32,
    pub sparsity: Sparsity,
}

impl AnsatzSpec {
    pub fn uniform(family: BasisFamily, bound: u32) -> Self {
        AnsatzSpec { family, bounds: vec![bound; family.size()], min_degree: 0, sparsity: Sparsity::Dense }
    }

    pub fn with_bounds(family: BasisFamily, bounds: &[u32]) -> Self {
        let mut b = bounds.to_vec();
        b.resize(family.size(), 0);
        AnsatzSpec { family, bounds: b, min_degree: 0, sparsity: Sparsity::Dense }
    }

    pub fn min_degree(mut self, d: u32) -> Self {
        self.min_degree = d;
        self
    }

    pub fn sparsity(mut self, s: Sparsity) -> Self {
        self.sparsity = s;
        self
    }

    /// All bounds raised by 2.
    pub fn escalate(&self) -> Self {
        let mut out = self.clone();
        out.bounds.iter_mut().for_each(|b| *b += 2);
        out
    }

    /// Unknown monomials (basis index, y-degree), basis major, degree minor.
    pub fn monomials(&self) -> Vec<(usize, u32)> {
        let mut out = Vec::new();
        for (i0, &hi) in self.bounds.iter().enumerate() {
            for d in self.min_degree..=hi {
                let keep = match self.sparsity {
                    Sparsity::Dense => true,
                    Sparsity::AiryWeight(w) => (2 * d + AIRY_OFFSETS[i0] as u32) % 3 == w as u32,
                };
                if keep {
                    out.push((i0 + 1, d));
                }
            }
        }
        out
    }

    /// Default ansatz for order j: every bound is the largest degree seen in
    /// orders 0..j plus j. Airy families are restricted to the weight class
    /// forced by the right-hand side; the β = 2 hard edge asks for
    /// coefficients divisible by y from j = 1 on.
    pub fn default_for(case: &EdgeCase, table: &CorrectionTable, j: usize) -> Result<Self, CascadeError> {
        let mut deg = 0;
        for e in table.entries.iter().take(j) {
            for p in e.coeffs().values() {
                deg = deg.max(p.degree());
            }
        }
        let mut spec = AnsatzSpec::uniform(case.family, deg + j as u32);
        if case.ensemble == Ensemble::Laguerre && case.beta == 2 && case.edge == Edge::Hard && j >= 1 {
            spec.min_degree = 1;
        }
        if !case.family.is_bessel() && j >= 1 {
            let ops = cascade_operators(case)?;
            let rhs = rhs_for(&ops, table, j, case.family)?;
            if let (Some(wr), Some(w0)) = (airy_weight(&rhs), operator_weight(&ops[0])) {
                spec.sparsity = Sparsity::AiryWeight((wr + 3 - w0) % 3);
            }
        }
        Ok(spec)
    }
}

/// The common Airy weight of all monomials of `e`, if there is one.
pub fn airy_weight(e: &ModuleElement) -> Option<u8> {
    if e.family().is_bessel() {
        return None;
    }
    let mut w = None;
    for ((i, d), _) in e.coordinates() {
        let here = ((2 * d + AIRY_OFFSETS[i - 1] as u32) % 3) as u8;
        if *w.get_or_insert(here) != here {
            return None;
        }
    }
    w
}

/// The common weight shift of the terms y^e·d^k of an operator, if any.
pub fn operator_weight(op: &DiffOperator) -> Option<u8> {
    let mut w = None;
    for (k, p) in op.terms() {
        for (e, _, _) in p.iter_terms() {
            let here = ((2 * e + k) % 3) as u8;
            if *w.get_or_insert(here) != here {
                return None;
            }
        }
    }
    w
}

/// −Σ_{k≥1} Cₖ r_{j−k}.
fn rhs_for(ops: &[DiffOperator], table: &CorrectionTable, j: usize, family: BasisFamily) -> Result<ModuleElement, CascadeError> {
    let mut acc = ModuleElement::zero(family);
    for (k, op) in ops.iter().enumerate().skip(1).take(j) {
        acc = acc.try_sub(&op.apply(&table.entries[j - k])?)?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Solved {
    /// The solution with every free coordinate set to zero.
    pub particular: ModuleElement,
    /// Solutions of C₀h = 0 within the ansatz, one per free coordinate.
    pub nullspace: Vec<ModuleElement>,
    /// The ansatz that produced a consistent system.
    pub ansatz: AnsatzSpec,
    pub escalations: usize,
}

/// Solve C₀ r_j = −Σ_{k≥1} Cₖ r_{j−k} inside `ansatz`, escalating the bounds
/// by 2 up to three times when the system is inconsistent.
pub fn solve_next(case: &EdgeCase, table: &CorrectionTable, j: usize, ansatz: &AnsatzSpec) -> Result<Solved, CascadeError> {
    if table.len() < j {
        return Err(CascadeError::MissingOrder { case: case.descriptor(), have: table.len().saturating_sub(1), need: j });
    }
    if ansatz.family != case.family {
        return Err(CascadeError::FamilyMismatch { table: ansatz.family.to_string(), catalog: case.family.to_string() });
    }
    let ops = cascade_operators(case)?;
    let rhs = rhs_for(&ops, &table.truncated(j), j, case.family)?;
    let mut spec = ansatz.clone();
    for tries in 0..=MAX_ESCALATIONS {
        if let Some((particular, nullspace)) = attempt(&ops[0], &rhs, &spec, j)? {
            return Ok(Solved { particular, nullspace, ansatz: spec, escalations: tries });
        }
        if tries < MAX_ESCALATIONS {
            spec = spec.escalate();
        }
    }
    Err(CascadeError::Inconsistent { j, bounds: spec.bounds, tries: MAX_ESCALATIONS + 1 })
}

type Attempt = Option<(ModuleElement, Vec<ModuleElement>)>;

fn attempt(c0: &DiffOperator, rhs: &ModuleElement, spec: &AnsatzSpec, j: usize) -> Result<Attempt, CascadeError> {
    let cols = spec.monomials();
    let mut images = Vec::with_capacity(cols.len());
    for &(i, d) in &cols {
        let m = ModuleElement::basis(spec.family, i).mul_poly(&ParamPoly::monomial(Var::Y, d, qi(1)));
        images.push(coordinate_map(&c0.apply(&m)?));
    }
    let target = coordinate_map(rhs);
    let mut rows: Vec<(usize, u32)> = target.keys().copied().collect();
    for im in &images {
        rows.extend(im.keys().copied());
    }
    rows.sort_unstable();
    rows.dedup();
    let matrix: Vec<Vec<MPoly>> =
        rows.iter().map(|r| images.iter().map(|im| im.get(r).cloned().unwrap_or_default()).collect()).collect();
    let b: Vec<MPoly> = rows.iter().map(|r| target.get(r).cloned().unwrap_or_default()).collect();
    let sol = solve_exact(&matrix, &b)?;
    if !sol.consistent {
        return Ok(None);
    }
    let mut particular = ModuleElement::zero(spec.family);
    for (&(i, d), c) in cols.iter().zip(&sol.particular) {
        if c.is_zero() {
            continue;
        }
        let p = c.as_poly().ok_or_else(|| CascadeError::NonPolynomial { j, coeff: c.to_string() })?;
        particular = particular.try_add(&monomial_element(spec.family, i, d, p))?;
    }
    let mut nullspace = Vec::new();
    for v in &sol.nullspace {
        let den = common_denominator(v);
        let mut h = ModuleElement::zero(spec.family);
        for (&(i, d), c) in cols.iter().zip(v) {
            if c.is_zero() {
                continue;
            }
            let p = (&den * c.num()).div_exact(c.den())?;
            h = h.try_add(&monomial_element(spec.family, i, d, p))?;
        }
        nullspace.push(h);
    }
    Ok(Some((particular, nullspace)))
}

fn coordinate_map(e: &ModuleElement) -> BTreeMap<(usize, u32), MPoly> {
    e.coordinates().into_iter().map(|(k, p)| (k, p.mpoly().clone())).collect()
}

fn monomial_element(family: BasisFamily, i: usize, d: u32, coeff: MPoly) -> ModuleElement {
    let p = ParamPoly::from_mpoly(Var::Y, coeff).shift(d);
    ModuleElement::from_coeffs(family, [(i, p)]).expect("index within family")
}

/// Least common multiple of the denominators, up to a constant.
fn common_denominator(v: &[RatFunc]) -> MPoly {
    let mut l = MPoly::one();
    for c in v {
        if c.is_polynomial() {
            continue;
        }
        let g = MPoly::gcd(&l, c.den());
        l = &l * &c.den().div_exact(&g).expect("gcd divides");
    }
    l
}
