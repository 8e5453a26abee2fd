use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::exact::{fmt_q, q, q_to_f64, qi, Q};

/// Which transcendental factor a block of Laurent terms multiplies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sector {
    /// e^{γ³/12}/√π, Laurent in γ^{1/2}.
    A,
    /// e^{γ³/3}, Laurent in γ.
    B,
    /// e^{γ³/3}·Erf(γ^{3/2}/2), Laurent in γ.
    C,
}

/// Σ over three sectors of (implicit factor)·(Laurent polynomial in γ).
///
/// Sector A is keyed by twice the exponent so that half-integer powers stay
/// integral; sectors B and C are keyed by the exponent itself.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TransformElement {
    pub a: BTreeMap<i32, Q>,
    pub b: BTreeMap<i32, Q>,
    pub c: BTreeMap<i32, Q>,
}

fn bump(m: &mut BTreeMap<i32, Q>, k: i32, c: Q) {
    if c.is_zero() {
        return;
    }
    let e = m.entry(k).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        m.remove(&k);
    }
}

impl TransformElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// c·γ^{half/2} in sector A.
    pub fn a_term(half: i32, c: Q) -> Self {
        let mut t = Self::zero();
        bump(&mut t.a, half, c);
        t
    }

    pub fn b_term(e: i32, c: Q) -> Self {
        let mut t = Self::zero();
        bump(&mut t.b, e, c);
        t
    }

    pub fn c_term(e: i32, c: Q) -> Self {
        let mut t = Self::zero();
        bump(&mut t.c, e, c);
        t
    }

    pub fn sector(&self, s: Sector) -> &BTreeMap<i32, Q> {
        match s {
            Sector::A => &self.a,
            Sector::B => &self.b,
            Sector::C => &self.c,
        }
    }

    /// Coefficient of γ^{half/2} in sector A.
    pub fn a_coeff(&self, half: i32) -> Q {
        self.a.get(&half).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_empty() && self.b.is_empty() && self.c.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }

    pub fn add_assign(&mut self, o: &Self) {
        for (k, c) in &o.a {
            bump(&mut self.a, *k, c.clone());
        }
        for (k, c) in &o.b {
            bump(&mut self.b, *k, c.clone());
        }
        for (k, c) in &o.c {
            bump(&mut self.c, *k, c.clone());
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&qi(-1)))
    }

    pub fn scale(&self, s: &Q) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        let f = |m: &BTreeMap<i32, Q>| m.iter().map(|(k, c)| (*k, c * s)).collect();
        TransformElement { a: f(&self.a), b: f(&self.b), c: f(&self.c) }
    }

    /// Multiplication by γᵏ.
    pub fn mul_gamma(&self, k: i32) -> Self {
        TransformElement {
            a: self.a.iter().map(|(e, c)| (e + 2 * k, c.clone())).collect(),
            b: self.b.iter().map(|(e, c)| (e + k, c.clone())).collect(),
            c: self.c.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// d/dγ. The exponential factors contribute γ²/4 (sector A) and γ² (B, C);
    /// the Erf factor leaks (3/2)·γ^{1/2} into sector A.
    pub fn derivative(&self) -> Self {
        let mut r = Self::zero();
        for (k, c) in &self.a {
            bump(&mut r.a, k - 2, c * q(*k as i64, 2));
            bump(&mut r.a, k + 4, c * q(1, 4));
        }
        for (e, c) in &self.b {
            bump(&mut r.b, e - 1, c * qi(*e as i64));
            bump(&mut r.b, e + 2, c.clone());
        }
        for (e, c) in &self.c {
            bump(&mut r.c, e - 1, c * qi(*e as i64));
            bump(&mut r.c, e + 2, c.clone());
            bump(&mut r.a, 2 * e + 1, c * q(3, 2));
        }
        r
    }

    pub fn derivative_n(&self, n: u32) -> Self {
        (0..n).fold(self.clone(), |acc, _| acc.derivative())
    }

    /// Numeric value at complex γ (principal branch of γ^{1/2}). Returns
    /// `None` when sector C is populated, since that needs a complex Erf.
    pub fn eval(&self, g: Complex64) -> Option<Complex64> {
        if !self.c.is_empty() {
            return None;
        }
        let root = g.sqrt();
        let g3 = g * g * g;
        let mut sa = Complex64::zero();
        for (k, c) in &self.a {
            sa += root.powi(*k) * q_to_f64(c);
        }
        let mut sb = Complex64::zero();
        for (e, c) in &self.b {
            sb += g.powi(*e) * q_to_f64(c);
        }
        let pi_sqrt = std::f64::consts::PI.sqrt();
        Some((g3 / 12.0).exp() / pi_sqrt * sa + (g3 / 3.0).exp() * sb)
    }
}

fn half_exp(k: i32) -> String {
    if k % 2 == 0 {
        (k / 2).to_string()
    } else {
        format!("{k}/2")
    }
}

fn render_block(m: &BTreeMap<i32, Q>, exp: impl Fn(i32) -> String) -> String {
    let mut s = String::new();
    for (i, (k, c)) in m.iter().enumerate() {
        let neg = c.is_negative();
        let mag = fmt_q(&c.abs());
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let e = exp(*k);
        if e == "0" {
            s.push_str(&mag);
        } else {
            s.push_str(&format!("{mag}*g^({e})"));
        }
    }
    s
}

impl fmt::Display for TransformElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if !self.a.is_empty() {
            parts.push(format!("exp(g^3/12)/sqrt(pi)*[{}]", render_block(&self.a, half_exp)));
        }
        if !self.b.is_empty() {
            parts.push(format!("exp(g^3/3)*[{}]", render_block(&self.b, |e| e.to_string())));
        }
        if !self.c.is_empty() {
            parts.push(format!("exp(g^3/3)*erf(g^(3/2)/2)*[{}]", render_block(&self.c, |e| e.to_string())));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize)]
struct TermJson {
    exp: String,
    coeff: String,
}

fn sector_json(m: &BTreeMap<i32, Q>, exp: impl Fn(i32) -> String) -> Vec<TermJson> {
    m.iter().map(|(k, c)| TermJson { exp: exp(*k), coeff: fmt_q(c) }).collect()
}

impl Serialize for TransformElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("TransformElement", 3)?;
        st.serialize_field("sectorA", &sector_json(&self.a, half_exp))?;
        st.serialize_field("sectorB", &sector_json(&self.b, |e| e.to_string()))?;
        st.serialize_field("sectorC", &sector_json(&self.c, |e| e.to_string()))?;
        st.end()
    }
}

/// Σ c·γᵍ·(d/dγ)ᵐ, stored as (m, g) ↦ c.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GammaOperator {
    pub terms: BTreeMap<(u32, u32), Q>,
}

impl GammaOperator {
    pub fn new<I: IntoIterator<Item = (u32, u32, Q)>>(it: I) -> Self {
        let mut op = GammaOperator::default();
        for (m, g, c) in it {
            op.add_term(m, g, c);
        }
        op
    }

    pub fn add_term(&mut self, m: u32, g: u32, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((m, g)).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(m, g));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, s: &Q) -> Self {
        GammaOperator::new(self.terms.iter().map(|(&(m, g), c)| (m, g, c * s)))
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (&(m, g), c) in &o.terms {
            r.add_term(m, g, -c.clone());
        }
        r
    }

    pub fn apply(&self, f: &TransformElement) -> TransformElement {
        let max_m = self.terms.keys().map(|k| k.0).max().unwrap_or(0);
        let mut ders = vec![f.clone()];
        for _ in 0..max_m {
            let next = ders.last().expect("nonempty").derivative();
            ders.push(next);
        }
        let mut r = TransformElement::zero();
        for (&(m, g), c) in &self.terms {
            r.add_assign(&ders[m as usize].mul_gamma(g as i32).scale(c));
        }
        r
    }
}

impl fmt::Display for GammaOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(m, g), c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let mut factors = Vec::new();
            let mag = c.abs();
            if mag != qi(1) || (g == 0 && m == 0) {
                factors.push(fmt_q(&mag));
            }
            match g {
                0 => {}
                1 => factors.push("g".into()),
                _ => factors.push(format!("g^{g}")),
            }
            match m {
                0 => {}
                1 => factors.push("d".into()),
                _ => factors.push(format!("d^{m}")),
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
