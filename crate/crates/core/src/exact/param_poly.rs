//! Polynomials in one main variable with coefficients polynomial in the formal
//! parameters A (= a²), T (= τ) and Ã (= ã).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::mpoly::{MPoly, NSLOTS};
use super::rational::{fmt_q, parse_q, Q};
use super::ExactError;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Var {
    Y,
    Gamma,
    U,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::Y => "y",
            Var::Gamma => "g",
            Var::U => "u",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        match s {
            "y" => Some(Var::Y),
            "g" | "gamma" => Some(Var::Gamma),
            "u" => Some(Var::U),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Param {
    A,
    T,
    At,
}

impl Param {
    pub const ALL: [Param; 3] = [Param::A, Param::T, Param::At];

    pub fn slot(self) -> usize {
        match self {
            Param::A => 1,
            Param::T => 2,
            Param::At => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Param::A => "A",
            Param::T => "T",
            Param::At => "At",
        }
    }

    pub fn from_name(s: &str) -> Option<Param> {
        match s {
            "A" => Some(Param::A),
            "T" => Some(Param::T),
            "At" => Some(Param::At),
            _ => None,
        }
    }
}

/// A subset of {A, T, Ã}.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct ParamSet(u8);

impl ParamSet {
    pub const EMPTY: ParamSet = ParamSet(0);

    pub fn of(params: &[Param]) -> Self {
        ParamSet(params.iter().fold(0, |m, p| m | (1 << p.slot())))
    }

    pub fn contains(self, p: Param) -> bool {
        self.0 & (1 << p.slot()) != 0
    }

    pub fn union(self, other: ParamSet) -> ParamSet {
        ParamSet(self.0 | other.0)
    }

    pub fn without(self, p: Param) -> ParamSet {
        ParamSet(self.0 & !(1 << p.slot()))
    }

    pub fn is_subset(self, other: ParamSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Param> {
        Param::ALL.into_iter().filter(move |p| self.contains(*p))
    }

    fn from_poly(p: &MPoly) -> ParamSet {
        let used = p.used_slots();
        ParamSet::of(&Param::ALL.into_iter().filter(|q| used[q.slot()]).collect::<Vec<_>>())
    }
}

/// Equality and hashing compare values only; the declared parameter set is
/// bookkeeping and does not take part.
#[derive(Clone, Debug)]
pub struct ParamPoly {
    var: Var,
    params: ParamSet,
    poly: MPoly,
}

impl PartialEq for ParamPoly {
    fn eq(&self, other: &Self) -> bool {
        self.var == other.var && self.poly == other.poly
    }
}

impl Eq for ParamPoly {}

impl std::hash::Hash for ParamPoly {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.var.hash(h);
        self.poly.hash(h);
    }
}

/// Operations accepted by [`poly_arith`].
#[derive(Clone, Debug)]
pub enum PolyOp<'a> {
    Add(&'a ParamPoly),
    Mul(&'a ParamPoly),
    Derivative,
    Evaluate(&'a Q),
}

/// Single entry point mirroring the arithmetic contract: `promote` decides
/// whether differing parameter sets are merged or rejected.
pub fn poly_arith(op: PolyOp<'_>, lhs: &ParamPoly, promote: bool) -> Result<ParamPoly, ExactError> {
    match op {
        PolyOp::Add(rhs) => {
            lhs.compatible(rhs, promote)?;
            Ok(lhs + rhs)
        }
        PolyOp::Mul(rhs) => {
            lhs.compatible(rhs, promote)?;
            Ok(lhs * rhs)
        }
        PolyOp::Derivative => Ok(lhs.derivative()),
        PolyOp::Evaluate(x) => Ok(lhs.evaluate(x)),
    }
}

impl ParamPoly {
    pub fn zero(var: Var) -> Self {
        ParamPoly { var, params: ParamSet::EMPTY, poly: MPoly::zero() }
    }

    pub fn one(var: Var) -> Self {
        Self::constant(var, Q::one())
    }

    pub fn constant(var: Var, c: Q) -> Self {
        ParamPoly { var, params: ParamSet::EMPTY, poly: MPoly::constant(c) }
    }

    /// `c · var^k`.
    pub fn monomial(var: Var, k: u32, c: Q) -> Self {
        let mut e = [0; NSLOTS];
        e[0] = k;
        ParamPoly { var, params: ParamSet::EMPTY, poly: MPoly::monomial(e, c) }
    }

    pub fn param(var: Var, p: Param) -> Self {
        ParamPoly { var, params: ParamSet::of(&[p]), poly: MPoly::var_pow(p.slot(), 1) }
    }

    /// Wrap a raw slot polynomial; the parameter set is inferred from use.
    pub fn from_mpoly(var: Var, poly: MPoly) -> Self {
        let params = ParamSet::from_poly(&poly);
        ParamPoly { var, params, poly }
    }

    pub fn with_params(mut self, params: ParamSet) -> Result<Self, ExactError> {
        let used = ParamSet::from_poly(&self.poly);
        if !used.is_subset(params) {
            return Err(ExactError::ParamMismatch(format!(
                "polynomial uses {:?} outside declared {:?}",
                used, params
            )));
        }
        self.params = params;
        Ok(self)
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn params(&self) -> ParamSet {
        self.params
    }

    pub fn mpoly(&self) -> &MPoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn degree(&self) -> u32 {
        self.poly.degree(0)
    }

    pub fn min_degree(&self) -> u32 {
        self.poly.min_degree(0)
    }

    pub fn param_degree(&self, p: Param) -> u32 {
        self.poly.degree(p.slot())
    }

    pub fn compatible(&self, other: &ParamPoly, promote: bool) -> Result<(), ExactError> {
        if self.var != other.var {
            return Err(ExactError::VarMismatch(self.var.name(), other.var.name()));
        }
        if !promote && self.params != other.params {
            return Err(ExactError::ParamMismatch(format!(
                "{:?} vs {:?} without promotion",
                self.params, other.params
            )));
        }
        Ok(())
    }

    fn check_var(&self, other: &ParamPoly) {
        if self.var != other.var && !self.is_zero() && !other.is_zero() {
            panic!("variable mismatch: {} vs {}", self.var.name(), other.var.name());
        }
    }

    fn merged_var(&self, other: &ParamPoly) -> Var {
        if self.is_zero() && self.params == ParamSet::EMPTY {
            other.var
        } else {
            self.var
        }
    }

    /// Coefficient of `var^k` as a parameter-only polynomial.
    pub fn coeff(&self, k: u32) -> ParamPoly {
        ParamPoly { var: self.var, params: self.params, poly: self.poly.coeff_in(0, k) }
    }

    /// Coefficients by power of the main variable.
    pub fn by_degree(&self) -> BTreeMap<u32, ParamPoly> {
        self.poly
            .coeffs_in(0)
            .into_iter()
            .map(|(k, c)| (k, ParamPoly { var: self.var, params: self.params, poly: c }))
            .collect()
    }

    pub fn derivative(&self) -> ParamPoly {
        ParamPoly { var: self.var, params: self.params, poly: self.poly.derivative(0) }
    }

    pub fn param_derivative(&self, p: Param) -> ParamPoly {
        ParamPoly { var: self.var, params: self.params, poly: self.poly.derivative(p.slot()) }
    }

    /// Substitute an exact rational for the main variable (params stay formal).
    pub fn evaluate(&self, x: &Q) -> ParamPoly {
        ParamPoly { var: self.var, params: self.params, poly: self.poly.evaluate(0, x) }
    }

    /// Rational value when the polynomial is a constant.
    pub fn constant_value(&self) -> Option<Q> {
        self.poly.constant_value()
    }

    pub fn scale(&self, c: &Q) -> ParamPoly {
        ParamPoly { var: self.var, params: self.params, poly: self.poly.scale(c) }
    }

    /// Multiply by `var^k`.
    pub fn shift(&self, k: u32) -> ParamPoly {
        let mut e = [0; NSLOTS];
        e[0] = k;
        ParamPoly { var: self.var, params: self.params, poly: self.poly.mul_monomial(&e, &Q::one()) }
    }

    pub fn pow(&self, e: u32) -> ParamPoly {
        ParamPoly { var: self.var, params: self.params, poly: self.poly.pow(e) }
    }

    /// Substitute `value` (a polynomial in the same ring) for parameter `p`.
    pub fn substitute_param(&self, p: Param, value: &ParamPoly) -> ParamPoly {
        let poly = self.poly.substitute(p.slot(), &value.poly);
        let params = self.params.without(p).union(value.params);
        ParamPoly { var: self.var, params, poly }
    }

    /// Substitute `value` for the main variable.
    pub fn compose(&self, value: &ParamPoly) -> ParamPoly {
        let poly = self.poly.substitute(0, &value.poly);
        ParamPoly { var: self.var, params: self.params.union(value.params), poly }
    }

    /// Bind a parameter to a rational value.
    pub fn bind(&self, p: Param, x: &Q) -> ParamPoly {
        let poly = self.poly.evaluate(p.slot(), x);
        ParamPoly { var: self.var, params: self.params.without(p), poly }
    }

    /// Exact division by a polynomial; errors unless the quotient is exact.
    pub fn div_exact(&self, d: &ParamPoly) -> Result<ParamPoly, ExactError> {
        let poly = self.poly.div_exact(&d.poly)?;
        Ok(ParamPoly { var: self.var, params: self.params.union(d.params), poly })
    }

    /// Rename the main variable, keeping coefficients.
    pub fn with_var(&self, var: Var) -> ParamPoly {
        ParamPoly { var, params: self.params, poly: self.poly.clone() }
    }

    /// Iterate `(var-exponent, param-exponents, coefficient)`.
    pub fn iter_terms(&self) -> impl Iterator<Item = (u32, [u32; 3], &Q)> {
        self.poly.terms().map(|(e, c)| (e[0], [e[1], e[2], e[3]], c))
    }

    /// Build from `(var-exponent, param-exponents, coefficient)` triples.
    pub fn from_terms<I: IntoIterator<Item = (u32, [u32; 3], Q)>>(var: Var, params: ParamSet, it: I) -> Result<Self, ExactError> {
        let poly = MPoly::from_terms(it.into_iter().map(|(k, p, c)| ([k, p[0], p[1], p[2]], c)));
        ParamPoly::from_mpoly(var, poly).with_params(params)
    }

    /// Parse expressions such as `"(y - A)/4"` or `"-3/5*y^2 + 2/5*T*y"`.
    /// Division is only allowed by rational constants.
    pub fn parse(var: Var, src: &str) -> Result<Self, ExactError> {
        let mut p = Parser { s: src.as_bytes(), i: 0, var };
        let out = p.expr()?;
        p.skip_ws();
        if p.i != p.s.len() {
            return Err(ExactError::Parse(format!("trailing input in {src:?} at {}", p.i)));
        }
        Ok(out)
    }

    fn param_monomial_string(e: [u32; 3]) -> String {
        let mut parts = Vec::new();
        for (p, k) in Param::ALL.iter().zip(e) {
            match k {
                0 => {}
                1 => parts.push(p.name().to_string()),
                k => parts.push(format!("{}^{}", p.name(), k)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    fn parse_param_monomial(s: &str) -> Result<[u32; 3], ExactError> {
        let mut e = [0u32; 3];
        if s.trim() == "1" {
            return Ok(e);
        }
        for part in s.split('*') {
            let (name, k) = match part.split_once('^') {
                Some((n, k)) => (n.trim(), k.trim().parse::<u32>().map_err(|_| ExactError::Parse(part.into()))?),
                None => (part.trim(), 1),
            };
            let p = Param::from_name(name).ok_or_else(|| ExactError::Parse(format!("unknown param {name:?}")))?;
            e[p.slot() - 1] += k;
        }
        Ok(e)
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Highest powers of the main variable first, like printed tables.
        for (k, c) in self.by_degree().into_iter().rev() {
            let inner = fmt_param_only(&c.poly);
            let single = c.poly.num_terms() == 1;
            let vpart = match k {
                0 => String::new(),
                1 => self.var.name().to_string(),
                k => format!("{}^{}", self.var.name(), k),
            };
            let (neg, body) = if single {
                let s = inner.trim_start_matches('-').to_string();
                (inner.starts_with('-'), s)
            } else {
                (false, format!("({inner})"))
            };
            let term = if vpart.is_empty() {
                body
            } else if body == "1" {
                vpart
            } else {
                format!("{body}*{vpart}")
            };
            if first {
                write!(f, "{}{}", if neg { "-" } else { "" }, term)?;
            } else {
                write!(f, " {} {}", if neg { "-" } else { "+" }, term)?;
            }
            first = false;
        }
        Ok(())
    }
}

fn fmt_param_only(p: &MPoly) -> String {
    let mut out = String::new();
    for (i, (e, c)) in p.terms().rev().enumerate() {
        let mono = ParamPoly::param_monomial_string([e[1], e[2], e[3]]);
        let cs = fmt_q(c);
        let (neg, mag) = match cs.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, cs),
        };
        let body = if mono == "1" {
            mag
        } else if mag == "1" {
            mono
        } else {
            format!("{mag}*{mono}")
        };
        if i == 0 {
            out.push_str(if neg { "-" } else { "" });
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

impl Add<&ParamPoly> for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        self.check_var(rhs);
        ParamPoly { var: self.merged_var(rhs), params: self.params.union(rhs.params), poly: &self.poly + &rhs.poly }
    }
}

impl Sub<&ParamPoly> for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        self.check_var(rhs);
        ParamPoly { var: self.merged_var(rhs), params: self.params.union(rhs.params), poly: &self.poly - &rhs.poly }
    }
}

impl Mul<&ParamPoly> for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        self.check_var(rhs);
        ParamPoly { var: self.merged_var(rhs), params: self.params.union(rhs.params), poly: &self.poly * &rhs.poly }
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly { var: self.var, params: self.params, poly: -&self.poly }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ParamPoly> for ParamPoly {
            type Output = ParamPoly;
            fn $m(self, rhs: ParamPoly) -> ParamPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&ParamPoly> for ParamPoly {
            type Output = ParamPoly;
            fn $m(self, rhs: &ParamPoly) -> ParamPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        -&self
    }
}

// Canonical JSON: {"var": "y", "params": ["A"], "terms": [[k, "A^2", "n/d"], ...]}

#[derive(Serialize, Deserialize)]
struct ParamPolyRepr {
    var: String,
    params: Vec<String>,
    terms: Vec<(u32, String, String)>,
}

impl Serialize for ParamPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ParamPolyRepr {
            var: self.var.name().to_string(),
            params: self.params.iter().map(|p| p.name().to_string()).collect(),
            terms: self
                .iter_terms()
                .map(|(k, pe, c)| (k, ParamPoly::param_monomial_string(pe), fmt_q(c)))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ParamPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = ParamPolyRepr::deserialize(d)?;
        let var = Var::from_name(&r.var).ok_or_else(|| D::Error::custom(format!("unknown variable {:?}", r.var)))?;
        let params = r
            .params
            .iter()
            .map(|p| Param::from_name(p).ok_or_else(|| D::Error::custom(format!("unknown param {p:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let mut terms = Vec::new();
        for (k, mono, c) in r.terms {
            let pe = ParamPoly::parse_param_monomial(&mono).map_err(D::Error::custom)?;
            let c = parse_q(&c).map_err(D::Error::custom)?;
            terms.push((k, pe, c));
        }
        ParamPoly::from_terms(var, ParamSet::of(&params), terms).map_err(D::Error::custom)
    }
}

// Small recursive-descent parser for coefficient literals.

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
    var: Var,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.i).copied()
    }

    fn err(&self, msg: &str) -> ExactError {
        ExactError::Parse(format!("{msg} at byte {} of {:?}", self.i, String::from_utf8_lossy(self.s)))
    }

    fn expr(&mut self) -> Result<ParamPoly, ExactError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.i += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.i += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.i += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.i += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ParamPoly, ExactError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.i += 1;
                    acc = acc * self.power()?;
                }
                Some(b'/') => {
                    self.i += 1;
                    let d = self.power()?;
                    let c = d.constant_value().ok_or_else(|| self.err("division by a non-constant"))?;
                    if c.is_zero() {
                        return Err(ExactError::DivisionByZero);
                    }
                    acc = acc.scale(&(Q::one() / c));
                }
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() => {
                    // Implicit multiplication such as `2y` or `3(y+1)`.
                    acc = acc * self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<ParamPoly, ExactError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.i += 1;
            self.skip_ws();
            let start = self.i;
            while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
                self.i += 1;
            }
            let e: u32 = std::str::from_utf8(&self.s[start..self.i])
                .unwrap()
                .parse()
                .map_err(|_| self.err("bad exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ParamPoly, ExactError> {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.i += 1;
                Ok(e)
            }
            Some(b'-') => {
                self.i += 1;
                Ok(-self.power()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.i;
                while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
                    self.i += 1;
                }
                let n = std::str::from_utf8(&self.s[start..self.i]).unwrap();
                Ok(ParamPoly::constant(self.var, parse_q(n)?))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.i;
                while self.i < self.s.len() && self.s[self.i].is_ascii_alphabetic() {
                    self.i += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.i]).unwrap();
                if name == self.var.name() {
                    return Ok(ParamPoly::monomial(self.var, 1, Q::one()));
                }
                match Param::from_name(name) {
                    Some(p) => Ok(ParamPoly::param(self.var, p)),
                    None => Err(self.err(&format!("unknown symbol {name:?}"))),
                }
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}
