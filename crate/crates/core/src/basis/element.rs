use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::family::{BasisFamily, Derivation};
use super::BasisError;
use crate::exact::{Param, ParamPoly, ParamSet, Var, Q};

/// Σ pᵢ(y)·bᵢ(y) over a basis family. Zero coefficients are never stored, so
/// the zero element has an empty map and equality is exact.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModuleElement {
    family: BasisFamily,
    coeffs: BTreeMap<usize, ParamPoly>,
}

impl ModuleElement {
    pub fn zero(family: BasisFamily) -> Self {
        ModuleElement { family, coeffs: BTreeMap::new() }
    }

    /// The basis element bᵢ itself.
    pub fn basis(family: BasisFamily, i: usize) -> Self {
        Self::from_coeffs(family, [(i, ParamPoly::one(Var::Y))]).expect("valid basis index")
    }

    pub fn from_coeffs<I: IntoIterator<Item = (usize, ParamPoly)>>(family: BasisFamily, it: I) -> Result<Self, BasisError> {
        let mut out = ModuleElement::zero(family);
        for (i, p) in it {
            if i == 0 || i > family.size() {
                return Err(BasisError::BasisIndex { index: i, family: family.to_string() });
            }
            if p.var() != Var::Y && !p.is_zero() {
                return Err(BasisError::NotInY);
            }
            out.add_coeff(i, &p);
        }
        Ok(out)
    }

    /// Build from coefficient literals, e.g. `[(1, "-y"), (2, "1")]`.
    pub fn parse(family: BasisFamily, items: &[(usize, &str)]) -> Result<Self, BasisError> {
        let mut v = Vec::new();
        for (i, s) in items {
            v.push((*i, ParamPoly::parse(Var::Y, s)?));
        }
        Self::from_coeffs(family, v)
    }

    pub fn family(&self) -> BasisFamily {
        self.family
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, ParamPoly> {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> ParamPoly {
        self.coeffs.get(&i).cloned().unwrap_or_else(|| ParamPoly::zero(Var::Y))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn params(&self) -> ParamSet {
        self.coeffs.values().fold(ParamSet::EMPTY, |s, p| s.union(p.params()))
    }

    fn add_coeff(&mut self, i: usize, p: &ParamPoly) {
        if p.is_zero() {
            return;
        }
        let next = match self.coeffs.get(&i) {
            Some(old) => old + p,
            None => p.clone(),
        };
        if next.is_zero() {
            self.coeffs.remove(&i);
        } else {
            self.coeffs.insert(i, next);
        }
    }

    /// Reinterpret in a larger family (e.g. AIRY3 inside AIRY5).
    pub fn embed(&self, target: BasisFamily) -> Result<Self, BasisError> {
        if !self.family.embeds_in(target) {
            return Err(BasisError::FamilyMismatch(self.family.to_string(), target.to_string()));
        }
        Ok(ModuleElement { family: target, coeffs: self.coeffs.clone() })
    }

    pub fn with_nu(&self, nu: Option<u8>) -> Self {
        let mut f = self.family;
        f.nu = nu;
        ModuleElement { family: f, coeffs: self.coeffs.clone() }
    }

    fn same_family(&self, o: &ModuleElement) -> Result<BasisFamily, BasisError> {
        if self.family.id != o.family.id {
            // Allow mixing a 3-element family into its 5-element extension.
            if self.family.embeds_in(o.family) {
                return Ok(o.family);
            }
            if o.family.embeds_in(self.family) {
                return Ok(self.family);
            }
            return Err(BasisError::FamilyMismatch(self.family.to_string(), o.family.to_string()));
        }
        match (self.family.nu, o.family.nu) {
            (Some(a), Some(b)) if a != b => {
                Err(BasisError::FamilyMismatch(self.family.to_string(), o.family.to_string()))
            }
            (None, Some(_)) => Ok(o.family),
            _ => Ok(self.family),
        }
    }

    pub fn try_add(&self, o: &ModuleElement) -> Result<Self, BasisError> {
        let family = self.same_family(o)?;
        let mut out = ModuleElement { family, coeffs: self.coeffs.clone() };
        for (i, p) in &o.coeffs {
            out.add_coeff(*i, p);
        }
        Ok(out)
    }

    pub fn try_sub(&self, o: &ModuleElement) -> Result<Self, BasisError> {
        self.try_add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&Q::from_integer((-1).into()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        self.mul_poly(&ParamPoly::constant(Var::Y, c.clone()))
    }

    /// Multiply every coefficient by the polynomial `p(y)`.
    pub fn mul_poly(&self, p: &ParamPoly) -> Self {
        let mut out = ModuleElement::zero(self.family);
        for (i, c) in &self.coeffs {
            out.add_coeff(*i, &(c * p));
        }
        out
    }

    /// Apply the family's derivation: d/dy for Airy families, 𝒟_y for
    /// Bessel families. The result always stays in the same family.
    pub fn differentiate(&self) -> Self {
        let mut out = ModuleElement::zero(self.family);
        let euler = self.family.derivation() == Derivation::Euler;
        for (i, p) in &self.coeffs {
            // Derivative of the coefficient: p′ (plain) or y·p′ (Euler).
            let dp = if euler { p.derivative().shift(1) } else { p.derivative() };
            out.add_coeff(*i, &dp);
            for (j, c) in self.family.derive_basis(*i) {
                out.add_coeff(j, &(p * &c));
            }
        }
        out
    }

    /// θ = y·d/dy for Euler families, i.e. 𝒟_y − 1.
    pub fn theta(&self) -> Self {
        debug_assert!(self.family.is_bessel());
        let d = self.differentiate();
        d.try_sub(self).expect("same family")
    }

    pub fn substitute_param(&self, p: Param, value: &ParamPoly) -> Self {
        let mut out = ModuleElement::zero(self.family);
        for (i, c) in &self.coeffs {
            out.add_coeff(*i, &c.substitute_param(p, value));
        }
        out
    }

    pub fn bind(&self, p: Param, x: &Q) -> Self {
        let mut out = ModuleElement::zero(self.family);
        for (i, c) in &self.coeffs {
            out.add_coeff(*i, &c.bind(p, x));
        }
        out
    }

    /// Coordinates in the canonical ordering (basis index major, y-degree
    /// minor); each coordinate is a parameter-only polynomial.
    pub fn coordinates(&self) -> Vec<((usize, u32), ParamPoly)> {
        let mut out = Vec::new();
        for (i, p) in &self.coeffs {
            for (k, c) in p.by_degree() {
                out.push(((*i, k), c));
            }
        }
        out
    }

    /// Render as `[a1: ..., a2: ...]`.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(i, p)| format!("({})*{}", p, self.family.symbol(*i)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    family: String,
    nu: Option<u8>,
    coeffs: Vec<(usize, ParamPoly)>,
}

impl Serialize for ModuleElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let family = BasisFamily { id: self.family.id, nu: None }.to_string();
        ElementRepr { family, nu: self.family.nu, coeffs: self.coeffs.iter().map(|(i, p)| (*i, p.clone())).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ModuleElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = ElementRepr::deserialize(d)?;
        let mut family = BasisFamily::parse(&r.family).ok_or_else(|| D::Error::custom("unknown family"))?;
        family.nu = r.nu;
        ModuleElement::from_coeffs(family, r.coeffs).map_err(D::Error::custom)
    }
}
