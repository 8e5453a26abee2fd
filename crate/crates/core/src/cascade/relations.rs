//! Differential relations that produce r₁ (and derivatives of r₀) directly
//! from r₀. Each relation evaluates LHS − RHS exactly; zero certifies it.

use super::{paper_table, CascadeError};
use crate::basis::{DiffOperator, ModuleElement};
use crate::catalog::{Edge, EdgeCase, Ensemble};
use crate::exact::{qi, qpow_signed, Param, ParamPoly, Var, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Relation {
    pub id: &'static str,
    pub description: &'static str,
}

const REGISTRY: &[Relation] = &[
    Relation { id: "gue-r1-from-r0", description: "GUE soft edge: d/dy(-3/10 d/dy + y^2/5) r0 = r1" },
    Relation { id: "gbe-r1-from-r0:beta=1", description: "GOE soft edge: (-3/5 d^2 + y^2/5 d + 2y/5) r0 = r1" },
    Relation { id: "gbe-r1-from-r0:beta=4", description: "GSE soft edge: (-3/5 d^2 + y^2/5 d + 2y/5) r0 = r1" },
    Relation {
        id: "gbe-general-r1-from-r0:beta=1",
        description: "general beta form (-3/(5 beta) d^2 + y^2/5 d + 2y/5) R0 = R1 at beta = 1",
    },
    Relation {
        id: "gbe-general-r1-from-r0:beta=2",
        description: "general beta form at beta = 2, where R_j = r_j of the GUE table",
    },
    Relation {
        id: "gbe-general-r1-from-r0:beta=4",
        description: "general beta form at beta = 4, with R_j(y) = beta^(-1/6 - j/3) r_j(beta^(1/3) y)",
    },
    Relation { id: "lue-soft-a-dr0", description: "LUE soft edge, a fixed: d/dy r0 = -Ai^2" },
    Relation { id: "lue-soft-a-d2r0", description: "LUE soft edge, a fixed: d^2/dy^2 r0 = -2 Ai Ai'" },
    Relation { id: "lue-soft-a-r1-from-r0", description: "LUE soft edge, a fixed: -1/5 d/dy(d/dy + y^2) r0 = r1" },
    Relation {
        id: "lue-sr-r1-from-r0",
        description: "LUE right soft edge: 1/5 d/dy((T - 3)/2 d/dy - (2T - 1) y^2) r0 = r1, T formal",
    },
    Relation { id: "lue-sr-r1-from-r0:tau=0", description: "the right soft edge relation at T = 0 against the GUE table" },
    Relation { id: "lue-hard-dr0", description: "LUE hard edge: D r0 = J_a(sqrt y)^2/4 with D = d/dy y" },
    Relation {
        id: "lue-hard-d2r0",
        description: "LUE hard edge: D^2 r0 = (sqrt(y) J_a J_a' + J_a^2)/4",
    },
    Relation {
        id: "lue-hard-r1-from-r0",
        description: "LUE hard edge: r1 = -(D^2 r0/12 + D(y r0)/48 + (A - 2) D r0/24)",
    },
    Relation {
        id: "lbe-sr-r1-from-r0:beta=1",
        description: "LOE right soft edge: d/dy(-(2T - 1)/5 y^2 + (T - 3)/5 d/dy) r0 = r1, T formal",
    },
    Relation { id: "lbe-sr-r1-from-r0:beta=4", description: "LSE right soft edge: same operator, nu = 0 family" },
    Relation { id: "lbe-sr-r1-from-r0:tau=0", description: "the LOE right soft edge r1 at T = 0 against the GOE table" },
    Relation {
        id: "lbe-hard-r1-from-r0",
        description: "LOE/LSE hard edge, R(y) = r(y/2): R1 = -(8 D^2 R0 + D(y R0) + 2(A - 5) D R0)/12",
    },
];

pub fn relation_ids() -> Vec<Relation> {
    REGISTRY.to_vec()
}

fn op(items: &[(&str, u32)]) -> DiffOperator {
    DiffOperator::parse(Var::Y, items).expect("relation literal parses")
}

fn rows(case: EdgeCase) -> Result<Vec<ModuleElement>, CascadeError> {
    Ok(paper_table(&case)?.entries)
}

fn case(e: Ensemble, beta: u8, edge: Edge) -> EdgeCase {
    EdgeCase::new(e, beta, edge).expect("static case")
}

/// Multiply the coefficient of y^p·d^q by β^{(q − p + 1)/3}: the operator
/// L in y acting on R(y) = β^{−1/6}·r(β^{1/3}y), divided by β^{−1/3}, read in
/// the variable of r.
fn cube_root_rescale(d: &DiffOperator, beta: i64) -> Result<DiffOperator, CascadeError> {
    let mut terms = Vec::new();
    for (qd, p) in d.terms() {
        let mut out = Vec::new();
        for (e, pe, c) in p.iter_terms() {
            let s = *qd as i64 - e as i64 + 1;
            if s.rem_euclid(3) != 0 {
                return Err(CascadeError::Catalog(crate::catalog::CatalogError::Integrity(format!(
                    "term y^{e} d^{qd} carries beta^({s}/3)"
                ))));
            }
            out.push((e, pe, c * qpow_signed(&qi(beta), s / 3)));
        }
        terms.push((ParamPoly::from_terms(Var::Y, p.params(), out)?, *qd));
    }
    Ok(DiffOperator::new(terms))
}

fn general_beta_operator(beta: i64) -> DiffOperator {
    let c = Q::new((-3).into(), (5 * beta).into());
    let lead = format!("({}/{})", c.numer(), c.denom());
    op(&[(lead.as_str(), 2), ("y^2/5", 1), ("2/5*y", 0)])
}

/// LHS − RHS of the relation `id`.
pub fn check_relation(id: &str) -> Result<ModuleElement, CascadeError> {
    use Edge::*;
    use Ensemble::*;
    let d1 = op(&[("1", 1)]);
    let out = match id {
        "gue-r1-from-r0" => {
            let r = rows(EdgeCase::gue_soft())?;
            let l = d1.compose(&op(&[("-3/10", 1), ("y^2/5", 0)]));
            l.apply(&r[0])?.try_sub(&r[1])?
        }
        "gbe-r1-from-r0:beta=1" | "gbe-r1-from-r0:beta=4" => {
            let beta = if id.ends_with('1') { 1 } else { 4 };
            let r = rows(case(Gaussian, beta, SoftFixedA))?;
            op(&[("-3/5", 2), ("y^2/5", 1), ("2/5*y", 0)]).apply(&r[0])?.try_sub(&r[1])?
        }
        "gbe-general-r1-from-r0:beta=1" => {
            let r = rows(case(Gaussian, 1, SoftFixedA))?;
            general_beta_operator(1).apply(&r[0])?.try_sub(&r[1])?
        }
        "gbe-general-r1-from-r0:beta=2" => {
            let r = rows(EdgeCase::gue_soft())?;
            general_beta_operator(2).apply(&r[0])?.try_sub(&r[1])?
        }
        "gbe-general-r1-from-r0:beta=4" => {
            let r = rows(case(Gaussian, 4, SoftFixedA))?;
            cube_root_rescale(&general_beta_operator(4), 4)?.apply(&r[0])?.try_sub(&r[1])?
        }
        "lue-soft-a-dr0" | "lue-soft-a-d2r0" => {
            let c = EdgeCase::lue(SoftFixedA);
            let r = rows(c)?;
            if id == "lue-soft-a-dr0" {
                r[0].differentiate().try_add(&ModuleElement::basis(c.family, 1))?
            } else {
                r[0].differentiate().differentiate().try_add(&ModuleElement::basis(c.family, 3).scale(&qi(2)))?
            }
        }
        "lue-soft-a-r1-from-r0" => {
            let r = rows(EdgeCase::lue(SoftFixedA))?;
            let l = d1.compose(&op(&[("1", 1), ("y^2", 0)])).scale(&Q::new((-1).into(), 5.into()));
            l.apply(&r[0])?.try_sub(&r[1])?
        }
        "lue-sr-r1-from-r0" => {
            let r = rows(EdgeCase::lue(SoftRight))?;
            lue_sr_operator().apply(&r[0])?.try_sub(&r[1])?
        }
        "lue-sr-r1-from-r0:tau=0" => {
            let r = rows(EdgeCase::gue_soft())?;
            lue_sr_operator().bind(Param::T, &qi(0)).apply(&r[0])?.try_sub(&r[1])?
        }
        "lue-hard-dr0" | "lue-hard-d2r0" => {
            let c = EdgeCase::lue(Hard);
            let r = rows(c)?;
            let y = ParamPoly::parse(Var::Y, "y/4")?;
            let b1 = ModuleElement::basis(c.family, 1).mul_poly(&y);
            if id == "lue-hard-dr0" {
                r[0].differentiate().try_sub(&b1)?
            } else {
                let b3 = ModuleElement::basis(c.family, 3).mul_poly(&y);
                r[0].differentiate().differentiate().try_sub(&b1.try_add(&b3)?)?
            }
        }
        "lue-hard-r1-from-r0" => {
            let r = rows(EdgeCase::lue(Hard))?;
            let dr = r[0].differentiate();
            let d2r = dr.differentiate();
            let dyr = r[0].mul_poly(&ParamPoly::parse(Var::Y, "y")?).differentiate();
            let a = ParamPoly::parse(Var::Y, "(A - 2)/24")?;
            let sum = d2r.scale(&Q::new(1.into(), 12.into())).try_add(&dyr.scale(&Q::new(1.into(), 48.into())))?.try_add(&dr.mul_poly(&a))?;
            sum.neg().try_sub(&r[1])?
        }
        "lbe-sr-r1-from-r0:beta=1" | "lbe-sr-r1-from-r0:beta=4" => {
            let beta = if id.ends_with('1') { 1 } else { 4 };
            let r = rows(case(Laguerre, beta, SoftRight))?;
            lbe_sr_operator().apply(&r[0])?.try_sub(&r[1])?
        }
        "lbe-sr-r1-from-r0:tau=0" => {
            let lag = rows(case(Laguerre, 1, SoftRight))?;
            let gau = rows(case(Gaussian, 1, SoftFixedA))?;
            lag[1].bind(Param::T, &qi(0)).try_sub(&gau[1])?
        }
        "lbe-hard-r1-from-r0" => {
            let r = rows(case(Laguerre, 1, Hard))?;
            let dr = r[0].differentiate();
            let d2r = dr.differentiate();
            let dyr = r[0].mul_poly(&ParamPoly::parse(Var::Y, "y")?).differentiate();
            let a = ParamPoly::parse(Var::Y, "2*(A - 5)")?;
            let sum = d2r.scale(&qi(8)).try_add(&dyr)?.try_add(&dr.mul_poly(&a))?;
            sum.scale(&Q::new((-1).into(), 12.into())).try_sub(&r[1])?
        }
        _ => return Err(CascadeError::UnknownRelation(id.to_string())),
    };
    Ok(out)
}

/// 1/5·d/dy((T − 3)/2·d/dy − (2T − 1)y²).
pub fn lue_sr_operator() -> DiffOperator {
    op(&[("1", 1)]).compose(&op(&[("(T - 3)/10", 1), ("-(2T - 1)/5*y^2", 0)]))
}

/// d/dy(−(2T − 1)/5·y² + (T − 3)/5·d/dy).
pub fn lbe_sr_operator() -> DiffOperator {
    op(&[("1", 1)]).compose(&op(&[("(T - 3)/5", 1), ("-(2T - 1)/5*y^2", 0)]))
}
