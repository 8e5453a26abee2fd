//! Correction terms r_j of the edge expansions: exact residual checks of the
//! nested inhomogeneous cascades Σₖ Cₖ r_{j−k} = 0, ansatz solving with
//! nullspace detection, differential relations between consecutive orders and
//! the split of a solution into a multiple of r₀ plus a particular part.

mod decompose;
mod relations;
mod solve;
mod tables;

use std::fmt::Write as _;

use serde::Serialize;

pub use decompose::{decompose_homogeneous, Decomposition};
pub use relations::{check_relation, lbe_sr_operator, lue_sr_operator, relation_ids, Relation};
pub use solve::{airy_weight, operator_weight, solve_next, AnsatzSpec, Solved, Sparsity};
pub use tables::{corrected_table, errata, laguerre_beta_hard_particular, paper_table, Erratum};

use crate::basis::{BasisError, ModuleElement};
use crate::catalog::{cascade_operators, CatalogError, EdgeCase};
use crate::exact::ExactError;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum CascadeError {
    #[error("no correction table for {0}")]
    NoTable(String),
    #[error("table for {case} holds orders 0..{have}, order {need} requested")]
    MissingOrder { case: String, have: usize, need: usize },
    #[error("table family {table} does not match catalog family {catalog}")]
    FamilyMismatch { table: String, catalog: String },
    #[error("order {j}: ansatz with bounds {bounds:?} is inconsistent after {tries} attempts; raise the degree bounds")]
    Inconsistent { j: usize, bounds: Vec<u32>, tries: usize },
    #[error("order {j}: solution coefficient {coeff} is not polynomial in the parameters")]
    NonPolynomial { j: usize, coeff: String },
    #[error("unknown relation id {0:?}")]
    UnknownRelation(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Basis(#[from] BasisError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Provenance {
    /// Transcribed from a published table or equation.
    PaperTable,
    /// Produced by [`solve_next`].
    Solved,
    /// Obtained from another table by a substitution (left edge: T ↦ −T).
    Derived,
}

/// r₀, r₁, … for one edge case.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorrectionTable {
    pub case: EdgeCase,
    pub entries: Vec<ModuleElement>,
    pub provenance: Vec<Provenance>,
}

impl CorrectionTable {
    pub fn new(case: EdgeCase) -> Self {
        CorrectionTable { case, entries: Vec::new(), provenance: Vec::new() }
    }

    pub fn push(&mut self, e: ModuleElement, p: Provenance) {
        self.entries.push(e);
        self.provenance.push(p);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The first `n` entries.
    pub fn truncated(&self, n: usize) -> Self {
        CorrectionTable {
            case: self.case,
            entries: self.entries.iter().take(n).cloned().collect(),
            provenance: self.provenance.iter().take(n).copied().collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("table serializes")
    }

    /// One line per (order, basis function), coefficients as in the printed
    /// tables.
    pub fn to_text(&self) -> String {
        let fam = self.case.family;
        let mut s = format!("{} [{}]\n", self.case.descriptor(), fam);
        for (j, (e, p)) in self.entries.iter().zip(&self.provenance).enumerate() {
            let _ = writeln!(s, "j = {j} ({p:?})");
            for i in 1..=fam.size() {
                let c = e.coeff(i);
                if !c.is_zero() {
                    let _ = writeln!(s, "  {:>14}: {}", fam.basis_name(i), c);
                }
            }
        }
        s
    }
}

/// Σₖ Cₖ r_{j−k} for the stored entries, with negative orders read as zero.
pub fn residual(case: &EdgeCase, table: &CorrectionTable, j: usize) -> Result<ModuleElement, CascadeError> {
    if table.len() <= j {
        return Err(CascadeError::MissingOrder { case: case.descriptor(), have: table.len().saturating_sub(1), need: j });
    }
    check_family(case, table)?;
    let ops = cascade_operators(case)?;
    let mut acc = ModuleElement::zero(case.family);
    for (k, op) in ops.iter().enumerate().take(j + 1) {
        acc = acc.try_add(&op.apply(&table.entries[j - k])?)?;
    }
    Ok(acc)
}

fn check_family(case: &EdgeCase, table: &CorrectionTable) -> Result<(), CascadeError> {
    if let Some(e) = table.entries.iter().find(|e| e.family() != case.family) {
        return Err(CascadeError::FamilyMismatch { table: e.family().to_string(), catalog: case.family.to_string() });
    }
    Ok(())
}

/// Residuals of every stored order of every case. With `corrected` the
/// errata are applied first, and then every residual vanishes.
pub fn verify_tables(corrected: bool) -> Vec<(String, Result<bool, CascadeError>)> {
    let mut out = Vec::new();
    for case in crate::catalog::all_cases() {
        let table = if corrected { corrected_table(&case) } else { paper_table(&case) };
        let table = match table {
            Ok(t) => t,
            Err(e) => {
                out.push((case.descriptor(), Err(e)));
                continue;
            }
        };
        for j in 0..table.len() {
            out.push((format!("{case} j={j}"), residual(&case, &table, j).map(|r| r.is_zero())));
        }
    }
    out
}
