//! Large-N operator expansion of ₁F₁(−N + shift; α+1; x/N) acting on
//! ₀F₁(α+1; −x), with D = x·d/dx in the sense Dᵐ = xᵐ dᵐ/dxᵐ.
//!
//! The p-th series coefficient carries ∏_{l=1}^{p−1+shift}(1 − l/N). The
//! N^{−k} part of that product is (−1)ᵏ·e_k(1, …, p−1+shift), a polynomial in
//! p of degree 2k, and writing it in the falling-factorial basis p(p−1)…(p−m+1)
//! turns it into Σ c_m·Dᵐ.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use rug::Float;
use serde::Serialize;

use super::TransformError;
use crate::basis::q_to_float;
use crate::exact::rational::factorial;
use crate::exact::{fmt_q, qi, Q};
use crate::numerics::special::hyp1f1;
use crate::numerics::{NumericError, PrecisionContext};

pub const MAX_HYPERGEOM_ORDER: u32 = 6;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HypergeomOpTable {
    pub shift: u8,
    pub order: u32,
    /// N-power k ↦ (coefficient, power of D), highest D power first.
    #[serde(serialize_with = "ser_entries")]
    pub entries: BTreeMap<u32, Vec<(Q, u32)>>,
}

fn ser_entries<S: serde::Serializer>(e: &BTreeMap<u32, Vec<(Q, u32)>>, s: S) -> Result<S::Ok, S::Error> {
    let m: BTreeMap<String, Vec<(String, u32)>> =
        e.iter().map(|(k, v)| (format!("N^-{k}"), v.iter().map(|(c, d)| (fmt_q(c), *d)).collect())).collect();
    m.serialize(s)
}

/// e_k(1, …, n) for all n ≤ n_max and k ≤ k_max.
fn elementary_table(n_max: usize, k_max: usize) -> Vec<Vec<Q>> {
    let mut e = vec![vec![Q::zero(); k_max + 1]; n_max + 1];
    e[0][0] = qi(1);
    for n in 1..=n_max {
        e[n][0] = qi(1);
        for k in 1..=k_max {
            e[n][k] = &e[n - 1][k] + qi(n as i64) * &e[n - 1][k - 1];
        }
    }
    e
}

pub fn hypergeom_ops(shift: u8, order: u32) -> Result<HypergeomOpTable, TransformError> {
    if order > MAX_HYPERGEOM_ORDER {
        return Err(TransformError::OrderTooLarge { order: order as usize, max: MAX_HYPERGEOM_ORDER as usize });
    }
    if shift > 1 {
        return Err(TransformError::Internal(format!("shift must be 0 or 1, got {shift}")));
    }
    let k_max = order as usize;
    let points = 2 * k_max + 3;
    let e = elementary_table(points + 1, k_max);
    let mut entries = BTreeMap::new();
    for k in 0..=k_max {
        // f(p) for p = 0 … 2k+2; the product is empty while p − 1 + shift < 1
        let mut vals: Vec<Q> = (0..2 * k + 3)
            .map(|p| {
                let n = (p + shift as usize).saturating_sub(1);
                let v = e[n][k].clone();
                if k % 2 == 1 {
                    -v
                } else {
                    v
                }
            })
            .collect();
        // forward differences at p = 0
        let mut diffs = Vec::with_capacity(vals.len());
        while !vals.is_empty() {
            diffs.push(vals[0].clone());
            vals = vals.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        if diffs[2 * k + 1..].iter().any(|d| !d.is_zero()) {
            return Err(TransformError::Internal(format!("N^-{k} weight is not a polynomial of degree {}", 2 * k)));
        }
        let mut terms: Vec<(Q, u32)> = (0..=2 * k)
            .rev()
            .filter(|&m| !diffs[m].is_zero())
            .map(|m| (&diffs[m] / Q::from(factorial(m as u32)), m as u32))
            .collect();
        terms.shrink_to_fit();
        entries.insert(k as u32, terms);
    }
    Ok(HypergeomOpTable { shift, order, entries })
}

impl HypergeomOpTable {
    pub fn entry(&self, k: u32) -> &[(Q, u32)] {
        self.entries.get(&k).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Coefficient of Dᵐ at N^{−k}.
    pub fn coeff(&self, k: u32, m: u32) -> Q {
        self.entry(k).iter().find(|(_, d)| *d == m).map(|(c, _)| c.clone()).unwrap_or_else(Q::zero)
    }

    /// Σ_p (−x)ᵖ/(p!(a+1)_p)·Σ_k N^{−k}·Σ_m c_{k,m}·p(p−1)…(p−m+1), the
    /// truncated operator series applied to ₀F₁(a+1; −x).
    pub fn apply_to_0f1(&self, n: f64, a: f64, x: f64, ctx: &PrecisionContext) -> Result<Float, NumericError> {
        let prec = ctx.bits();
        let mut total = Float::with_val(prec, 0);
        let mut base = Float::with_val(prec, 1);
        let tol = Float::with_val(prec, Float::i_exp(1, -(prec as i32)));
        for p in 0u32..10_000 {
            if p > 0 {
                base *= -x;
                base /= p as f64 * (a + p as f64);
            }
            let mut weight = Float::with_val(prec, 0);
            let mut npow = Float::with_val(prec, 1);
            for k in 0..=self.order {
                for (c, m) in self.entry(k) {
                    let mut fall = Float::with_val(prec, 1);
                    for i in 0..*m {
                        fall *= p as f64 - i as f64;
                    }
                    let cf = q_to_float(c, prec);
                    weight += fall * cf / &npow;
                }
                npow *= n;
            }
            let term = Float::with_val(prec, &base * &weight);
            total += &term;
            if p > x.abs() as u32 + 20 && Float::with_val(prec, term.abs_ref()) < Float::with_val(prec, total.abs_ref()) * &tol {
                return Ok(total);
            }
        }
        Err(NumericError::Unconverged { what: "operator series for 0F1".into(), achieved: f64::NAN })
    }

    /// ₁F₁(−N + shift; a+1; x/N) evaluated directly.
    pub fn exact_value(&self, n: f64, a: f64, x: f64, ctx: &PrecisionContext) -> Result<Float, NumericError> {
        hyp1f1(-n + self.shift as f64, a + 1.0, x / n, ctx)
    }

    /// |exact − expansion| / |exact|.
    pub fn relative_error(&self, n: f64, a: f64, x: f64, ctx: &PrecisionContext) -> Result<f64, NumericError> {
        let exact = self.exact_value(n, a, x, ctx)?;
        let approx = self.apply_to_0f1(n, a, x, ctx)?;
        let diff = Float::with_val(ctx.bits(), &exact - &approx);
        Ok((diff / exact).to_f64().abs())
    }
}

impl fmt::Display for HypergeomOpTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = if self.shift == 0 { "-N" } else { "-N+1" };
        write!(f, "1F1({head};a+1;x/N) = ( 1")?;
        for (k, terms) in self.entries.range(1..) {
            if terms.is_empty() {
                continue;
            }
            // factor the common sign out of the bracket, as in the printed layout
            let all_neg = terms.iter().all(|(c, _)| c.is_negative());
            let npow = if *k == 1 { "1/N".to_string() } else { format!("1/N^{k}") };
            write!(f, " {} {npow} (", if all_neg { "-" } else { "+" })?;
            for (i, (c, m)) in terms.iter().enumerate() {
                let c = if all_neg { -c.clone() } else { c.clone() };
                let sep = if i == 0 {
                    if c.is_negative() {
                        "-"
                    } else {
                        ""
                    }
                } else if c.is_negative() {
                    " - "
                } else {
                    " + "
                };
                let mag = c.abs();
                let dm = if *m == 1 { "D".to_string() } else { format!("D^{m}") };
                if mag == qi(1) {
                    write!(f, "{sep}{dm}")?;
                } else {
                    write!(f, "{sep}{} {dm}", fmt_q(&mag))?;
                }
            }
            write!(f, ")")?;
        }
        write!(f, " + ... ) 0F1(a+1;-x)")
    }
}
