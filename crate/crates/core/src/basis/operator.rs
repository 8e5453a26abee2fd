use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::element::ModuleElement;
use super::family::Derivation;
use super::BasisError;
use crate::exact::{qi, Param, ParamPoly, Var, Q};

/// Σ pₖ(v)·dᵏ/dvᵏ with polynomial coefficients in a single variable.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DiffOperator {
    /// Keyed by derivative order; zero coefficients are not stored.
    terms: BTreeMap<u32, ParamPoly>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

/// Σ c_m(y)·θᵐ with θ = y·d/dy, coefficients written to the left.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EulerOperator {
    pub terms: BTreeMap<u32, ParamPoly>,
}

/// Signed Stirling numbers of the first kind s(n, k).
fn stirling1(n: u32) -> Vec<i64> {
    let mut row = vec![1i64];
    for m in 0..n {
        // x(x-1)...(x-m) = (previous)·(x - m)
        let mut next = vec![0i64; row.len() + 1];
        for (k, c) in row.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * m as i64;
        }
        row = next;
    }
    row
}

/// Stirling numbers of the second kind S(n, k).
fn stirling2(n: u32, k: u32) -> i64 {
    if n == 0 && k == 0 {
        return 1;
    }
    if n == 0 || k == 0 {
        return 0;
    }
    k as i64 * stirling2(n - 1, k) + stirling2(n - 1, k - 1)
}

impl DiffOperator {
    pub fn new<I: IntoIterator<Item = (ParamPoly, u32)>>(terms: I) -> Self {
        let mut op = DiffOperator { terms: BTreeMap::new(), note: String::new() };
        for (p, k) in terms {
            op.add_term(k, &p);
        }
        op
    }

    pub fn zero() -> Self {
        Self::new([])
    }

    pub fn identity(var: Var) -> Self {
        Self::new([(ParamPoly::one(var), 0)])
    }

    /// Build from literals, e.g. `[("1", 3), ("-4y", 1), ("2", 0)]`.
    pub fn parse(var: Var, items: &[(&str, u32)]) -> Result<Self, BasisError> {
        let mut terms = Vec::new();
        for (s, k) in items {
            terms.push((ParamPoly::parse(var, s)?, *k));
        }
        Ok(Self::new(terms))
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    fn add_term(&mut self, k: u32, p: &ParamPoly) {
        if p.is_zero() {
            return;
        }
        let next = match self.terms.get(&k) {
            Some(old) => old + p,
            None => p.clone(),
        };
        if next.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, next);
        }
    }

    pub fn terms(&self) -> &BTreeMap<u32, ParamPoly> {
        &self.terms
    }

    pub fn coeff(&self, k: u32) -> Option<&ParamPoly> {
        self.terms.get(&k)
    }

    pub fn order(&self) -> u32 {
        self.terms.keys().next_back().copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn var(&self) -> Var {
        self.terms.values().next().map_or(Var::Y, |p| p.var())
    }

    pub fn add(&self, o: &DiffOperator) -> DiffOperator {
        let mut out = self.clone();
        for (k, p) in &o.terms {
            out.add_term(*k, p);
        }
        out.note.clear();
        out
    }

    pub fn sub(&self, o: &DiffOperator) -> DiffOperator {
        self.add(&o.scale(&qi(-1)))
    }

    pub fn scale(&self, c: &Q) -> DiffOperator {
        self.mul_poly(&ParamPoly::constant(self.var(), c.clone()))
    }

    /// Left multiplication by a polynomial.
    pub fn mul_poly(&self, p: &ParamPoly) -> DiffOperator {
        DiffOperator::new(self.terms.iter().map(|(k, c)| (p * c, *k)))
    }

    /// Operator product `self ∘ other` using the Leibniz rule.
    pub fn compose(&self, other: &DiffOperator) -> DiffOperator {
        let mut out = DiffOperator::zero();
        for (a, p) in &self.terms {
            for (b, q) in &other.terms {
                // p·d^a ∘ q·d^b = p·Σ_i C(a,i) q^{(i)} d^{a-i+b}
                let mut qd = q.clone();
                let mut binom = Q::from_integer(1.into());
                for i in 0..=*a {
                    if qd.is_zero() {
                        break;
                    }
                    out.add_term(a - i + b, &(p * &qd.scale(&binom)));
                    qd = qd.derivative();
                    binom = binom * qi((a - i) as i64) / qi(i as i64 + 1);
                }
            }
        }
        out
    }

    pub fn substitute_param(&self, p: Param, value: &ParamPoly) -> DiffOperator {
        let mut out = DiffOperator::new(self.terms.iter().map(|(k, c)| (c.substitute_param(p, value), *k)));
        out.note = self.note.clone();
        out
    }

    pub fn bind(&self, p: Param, x: &Q) -> DiffOperator {
        let mut out = DiffOperator::new(self.terms.iter().map(|(k, c)| (c.bind(p, x), *k)));
        out.note = self.note.clone();
        out
    }

    /// Every order-k coefficient divisible by y^k.
    pub fn euler_compatible(&self) -> Result<(), BasisError> {
        for (k, p) in &self.terms {
            if !p.is_zero() && p.min_degree() < *k {
                return Err(BasisError::EulerIncompatible { order: *k, coeff: p.to_string() });
            }
        }
        Ok(())
    }

    /// Rewrite as Σ c_m(y)·θᵐ.
    pub fn euler_normalize(&self) -> Result<EulerOperator, BasisError> {
        self.euler_compatible()?;
        let mut terms: BTreeMap<u32, ParamPoly> = BTreeMap::new();
        for (k, p) in &self.terms {
            let qk = strip_y_power(p, *k);
            // y^k d^k = θ(θ-1)...(θ-k+1) = Σ_m s(k,m) θ^m
            for (m, s) in stirling1(*k).into_iter().enumerate() {
                if s == 0 {
                    continue;
                }
                let add = qk.scale(&qi(s));
                let e = terms.entry(m as u32).or_insert_with(|| ParamPoly::zero(Var::Y));
                *e = &*e + &add;
            }
        }
        terms.retain(|_, p| !p.is_zero());
        Ok(EulerOperator { terms })
    }

    /// Apply to a module element. Bessel families go through the θ form.
    pub fn apply(&self, elem: &ModuleElement) -> Result<ModuleElement, BasisError> {
        if let Some(p) = self.terms.values().next() {
            if p.var() != Var::Y {
                return Err(BasisError::NotInY);
            }
        }
        match elem.family().derivation() {
            Derivation::Plain => {
                let mut out = ModuleElement::zero(elem.family());
                let mut deriv = elem.clone();
                for k in 0..=self.order() {
                    if let Some(p) = self.terms.get(&k) {
                        out = out.try_add(&deriv.mul_poly(p))?;
                    }
                    deriv = deriv.differentiate();
                }
                Ok(out)
            }
            Derivation::Euler => self.euler_normalize()?.apply(elem),
        }
    }
}

/// p(y) / y^k, assuming divisibility.
fn strip_y_power(p: &ParamPoly, k: u32) -> ParamPoly {
    let params = p.params();
    ParamPoly::from_terms(Var::Y, params, p.iter_terms().map(|(e, pe, c)| (e - k, pe, c.clone())))
        .expect("same params")
}

impl EulerOperator {
    pub fn apply(&self, elem: &ModuleElement) -> Result<ModuleElement, BasisError> {
        let mut out = ModuleElement::zero(elem.family());
        let mut th = elem.clone();
        let top = self.terms.keys().next_back().copied().unwrap_or(0);
        for m in 0..=top {
            if let Some(c) = self.terms.get(&m) {
                out = out.try_add(&th.mul_poly(c))?;
            }
            if m < top {
                th = th.theta();
            }
        }
        Ok(out)
    }

    /// Back to Σ pₖ(y) dᵏ/dyᵏ via θᵐ = Σ_k S(m,k) yᵏ dᵏ.
    pub fn to_plain(&self) -> DiffOperator {
        let mut items = Vec::new();
        for (m, c) in &self.terms {
            for k in 0..=*m {
                let s = stirling2(*m, k);
                if s != 0 {
                    items.push((c.shift(k).scale(&qi(s)), k));
                }
            }
        }
        DiffOperator::new(items)
    }
}

impl fmt::Display for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let v = self.var().name();
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(k, p)| {
                let d = match k {
                    0 => String::new(),
                    1 => format!("d/d{v}"),
                    k => format!("d^{k}/d{v}^{k}"),
                };
                match (p.to_string().as_str(), d.is_empty()) {
                    (s, true) => format!("({s})"),
                    ("1", false) => d,
                    (s, false) => format!("({s})*{d}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Display for EulerOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| match m {
                0 => format!("({c})"),
                1 => format!("({c})*theta"),
                m => format!("({c})*theta^{m}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
