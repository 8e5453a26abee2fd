//! Exact small-N densities as weight × rational polynomial, and an exact check
//! that the raw finite-N operators annihilate them.
//!
//! Derivatives are taken through the Pearson log-derivative of the weight:
//! d[e^{−x²}R] = e^{−x²}(R′ − 2xR) and d[x^a e^{−x}R] = x^a e^{−x}(aR/x − R + R′),
//! so every intermediate stays a Laurent polynomial with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rug::ops::Pow;
use rug::Float;
use serde::Serialize;

use super::NumericError;
use crate::basis::{q_to_float, DiffOperator};
use crate::catalog::{gue_unscaled_operator, lue_raw_operator, EdgeCase, Ensemble};
use crate::exact::rational::{binomial, factorial};
use crate::exact::{fmt_q, qi, Q};

pub const MAX_EXACT_N: u32 = 8;

/// Σ c_k x^k with possibly negative k.
pub type Laurent = BTreeMap<i32, Q>;

fn add_to(p: &mut Laurent, k: i32, c: Q) {
    if c.is_zero() {
        return;
    }
    let e = p.entry(k).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        p.remove(&k);
    }
}

fn mul(a: &Laurent, b: &Laurent) -> Laurent {
    let mut r = Laurent::new();
    for (i, x) in a {
        for (j, y) in b {
            add_to(&mut r, i + j, x * y);
        }
    }
    r
}

fn render(p: &Laurent) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, c) in p.iter().rev() {
        let neg = c.is_negative();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let mag = c.abs();
        match k {
            0 => s.push_str(&fmt_q(&mag)),
            _ => {
                if !mag.is_one() {
                    s.push_str(&fmt_q(&mag));
                    s.push('*');
                }
                if *k == 1 {
                    s.push('x');
                } else {
                    s.push_str(&format!("x^{k}"));
                }
            }
        }
    }
    s
}

/// The weight multiplying the rational part of a density.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Weight {
    /// e^{−x²}/√π
    Gaussian,
    /// x^a e^{−x}
    Laguerre { a: u32 },
}

impl Weight {
    /// d/dx acting on weight × R, returned as the new R.
    pub fn derive(&self, r: &Laurent) -> Laurent {
        let mut out = Laurent::new();
        for (k, c) in r {
            if *k != 0 {
                add_to(&mut out, k - 1, c * qi(*k as i64));
            }
            match self {
                Weight::Gaussian => add_to(&mut out, k + 1, c * qi(-2)),
                Weight::Laguerre { a } => {
                    add_to(&mut out, k - 1, c * qi(*a as i64));
                    add_to(&mut out, *k, -c.clone());
                }
            }
        }
        out
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Gaussian => write!(f, "exp(-x^2)/sqrt(pi)"),
            Weight::Laguerre { a: 0 } => write!(f, "exp(-x)"),
            Weight::Laguerre { a } => write!(f, "x^{a}*exp(-x)"),
        }
    }
}

/// ρ_N(x) = weight(x)·poly(x), exactly.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExactDensity {
    pub n: u32,
    pub weight: Weight,
    #[serde(serialize_with = "ser_laurent")]
    pub poly: Laurent,
}

fn ser_laurent<S: serde::Serializer>(p: &Laurent, s: S) -> Result<S::Ok, S::Error> {
    let m: BTreeMap<i32, String> = p.iter().map(|(k, c)| (*k, fmt_q(c))).collect();
    m.serialize(s)
}

fn hermite(k: u32) -> Laurent {
    // H_{k+1} = 2x H_k − 2k H_{k−1}
    let mut prev = Laurent::new();
    let mut cur: Laurent = [(0, qi(1))].into_iter().collect();
    for m in 0..k {
        let mut next = Laurent::new();
        for (e, c) in &cur {
            add_to(&mut next, e + 1, c * qi(2));
        }
        for (e, c) in &prev {
            add_to(&mut next, *e, c * qi(-2 * m as i64));
        }
        prev = cur;
        cur = next;
    }
    cur
}

fn laguerre(k: u32, a: u32) -> Laurent {
    (0..=k)
        .map(|i| {
            let c = Q::new(binomial(k + a, k - i), factorial(i));
            (i as i32, if i % 2 == 1 { -c } else { c })
        })
        .collect()
}

/// Exact density for GUE (weight e^{−x²}) or LUE with integer a ≥ 0, N ≤ 8.
pub fn exact_density(case: &EdgeCase, n: u32, a: &Q) -> Result<ExactDensity, NumericError> {
    if case.beta != 2 {
        return Err(NumericError::Unsupported(format!("{case}: exact densities are provided for beta = 2")));
    }
    if n == 0 || n > MAX_EXACT_N {
        return Err(NumericError::Domain(format!("exact densities need 1 <= N <= {MAX_EXACT_N}, got {n}")));
    }
    let mut poly = Laurent::new();
    let weight = match case.ensemble {
        Ensemble::Gaussian => {
            for k in 0..n {
                let h = hermite(k);
                let w = Q::new(1.into(), factorial(k) * num_bigint::BigInt::from(2u32).pow(k));
                for (e, c) in mul(&h, &h) {
                    add_to(&mut poly, e, c * &w);
                }
            }
            Weight::Gaussian
        }
        Ensemble::Laguerre => {
            if !a.is_integer() || a.is_negative() {
                return Err(NumericError::Domain(format!("exact LUE densities need integer a >= 0, got {a}")));
            }
            let ai: u32 = a.to_integer().try_into().map_err(|_| NumericError::Domain(format!("a = {a} too large")))?;
            for k in 0..n {
                let l = laguerre(k, ai);
                let w = Q::new(factorial(k), factorial(k + ai));
                for (e, c) in mul(&l, &l) {
                    add_to(&mut poly, e, c * &w);
                }
            }
            Weight::Laguerre { a: ai }
        }
    };
    Ok(ExactDensity { n, weight, poly })
}

impl ExactDensity {
    /// ∫ρ dx computed from exact moments of the weight; equals N.
    pub fn mass(&self) -> Q {
        let mut total = Q::zero();
        for (k, c) in &self.poly {
            let m = match self.weight {
                Weight::Gaussian if k % 2 != 0 => Q::zero(),
                Weight::Gaussian => {
                    let h = (*k / 2) as u32;
                    let df: num_bigint::BigInt = (1..=h).map(|i| num_bigint::BigInt::from(2 * i - 1)).product();
                    Q::new(df, num_bigint::BigInt::from(2u32).pow(h))
                }
                Weight::Laguerre { a } => Q::from(factorial(a + *k as u32)),
            };
            total += c * m;
        }
        total
    }

    pub fn eval(&self, x: &Float) -> Float {
        let prec = x.prec();
        let mut p = Float::with_val(prec, 0);
        for (k, c) in &self.poly {
            p += q_to_float(c, prec) * Float::with_val(prec, x.pow(*k));
        }
        let w = match self.weight {
            Weight::Gaussian => {
                let pi = Float::with_val(prec, rug::float::Constant::Pi);
                Float::with_val(prec, -Float::with_val(prec, x.square_ref())).exp() / pi.sqrt()
            }
            Weight::Laguerre { a } => Float::with_val(prec, x.pow(a)) * Float::with_val(prec, -x).exp(),
        };
        p * w
    }
}

impl fmt::Display for ExactDensity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rho_{}(x) = {} * ({})", self.n, self.weight, render(&self.poly))
    }
}

/// Applies `op` (coefficients in one variable, no formal parameters) to
/// weight × `r`, returning the rational part of the result.
pub fn apply_operator(op: &DiffOperator, weight: Weight, r: &Laurent) -> Result<Laurent, NumericError> {
    let max = op.terms().keys().copied().max().unwrap_or(0);
    let mut derivs = vec![r.clone()];
    for i in 0..max as usize {
        let next = weight.derive(&derivs[i]);
        derivs.push(next);
    }
    let mut out = Laurent::new();
    for (k, coeff) in op.terms() {
        let mut c = Laurent::new();
        for (e, pe, v) in coeff.iter_terms() {
            if pe.iter().any(|x| *x != 0) {
                return Err(NumericError::Domain(format!("operator coefficient {coeff} has unbound parameters")));
            }
            add_to(&mut c, e as i32, v.clone());
        }
        for (e, v) in mul(&c, &derivs[*k as usize]) {
            add_to(&mut out, e, v);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct FiniteOdeCheck {
    pub case: String,
    pub n: u32,
    pub a: String,
    pub density: String,
    pub residual: String,
    pub passed: bool,
}

/// Applies the raw finite-N operator (LUE in x, GUE in the unscaled variable)
/// to the exact density and reports the residual, which must vanish.
pub fn verify_finite_ode(case: &EdgeCase, n: u32, a: &Q) -> Result<FiniteOdeCheck, NumericError> {
    let dens = exact_density(case, n, a)?;
    let nq = qi(n as i64);
    let op = match case.ensemble {
        Ensemble::Gaussian => gue_unscaled_operator(&nq),
        Ensemble::Laguerre => lue_raw_operator(&nq, a),
    };
    let res = apply_operator(&op, dens.weight, &dens.poly)?;
    Ok(FiniteOdeCheck {
        case: case.descriptor(),
        n,
        a: fmt_q(a),
        density: dens.to_string(),
        residual: render(&res),
        passed: res.is_empty(),
    })
}

pub fn render_laurent(p: &Laurent) -> String {
    render(p)
}
