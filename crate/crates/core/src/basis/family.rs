use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact::{q, Param, ParamPoly, ParamSet, Var};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum FamilyId {
    Airy3,
    Airy5,
    Bessel3,
    Bessel5,
}

/// How the module is closed: plain d/dy for Airy products, the Euler
/// derivation 𝒟_y f = (y f)′ for Bessel products.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Derivation {
    Plain,
    Euler,
}

/// A transcendental basis. `nu` selects the antiderivative convention of the
/// five-element families and only matters numerically.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct BasisFamily {
    pub id: FamilyId,
    pub nu: Option<u8>,
}

impl BasisFamily {
    pub const AIRY3: BasisFamily = BasisFamily { id: FamilyId::Airy3, nu: None };
    pub const BESSEL3: BasisFamily = BasisFamily { id: FamilyId::Bessel3, nu: None };

    pub fn airy5(nu: u8) -> Self {
        BasisFamily { id: FamilyId::Airy5, nu: Some(nu) }
    }

    pub fn bessel5(nu: u8) -> Self {
        BasisFamily { id: FamilyId::Bessel5, nu: Some(nu) }
    }

    /// ν = 1 pairs with β = 1 and ν = 0 with β = 4.
    pub fn for_beta(id: FamilyId, beta: u8) -> Self {
        match id {
            FamilyId::Airy5 | FamilyId::Bessel5 => BasisFamily { id, nu: Some(if beta == 1 { 1 } else { 0 }) },
            _ => BasisFamily { id, nu: None },
        }
    }

    pub fn size(self) -> usize {
        match self.id {
            FamilyId::Airy3 | FamilyId::Bessel3 => 3,
            FamilyId::Airy5 | FamilyId::Bessel5 => 5,
        }
    }

    pub fn derivation(self) -> Derivation {
        match self.id {
            FamilyId::Airy3 | FamilyId::Airy5 => Derivation::Plain,
            FamilyId::Bessel3 | FamilyId::Bessel5 => Derivation::Euler,
        }
    }

    pub fn is_bessel(self) -> bool {
        self.derivation() == Derivation::Euler
    }

    /// Parameters the closure rules themselves introduce.
    pub fn params(self) -> ParamSet {
        if self.is_bessel() {
            ParamSet::of(&[Param::A])
        } else {
            ParamSet::EMPTY
        }
    }

    pub fn basis_name(self, i: usize) -> &'static str {
        const AIRY: [&str; 5] = ["Ai^2", "Ai'^2", "Ai*Ai'", "Ai*AI", "Ai'*AI"];
        const BESSEL: [&str; 5] = ["J^2/y", "J'^2", "J*J'/sqrt(y)", "J*JI/sqrt(y)", "J'*JI"];
        if self.is_bessel() {
            BESSEL[i - 1]
        } else {
            AIRY[i - 1]
        }
    }

    /// Short symbol used in renderings: a1..a5 or b1..b5.
    pub fn symbol(self, i: usize) -> String {
        format!("{}{}", if self.is_bessel() { 'b' } else { 'a' }, i)
    }

    /// Image of basis element `i` (1-based) under the family's derivation, as
    /// `(basis index, coefficient)` pairs.
    pub fn derive_basis(self, i: usize) -> Vec<(usize, ParamPoly)> {
        let p = |s: &str| ParamPoly::parse(Var::Y, s).expect("closure table literal");
        let half = |s: &str| p(s).scale(&q(1, 2));
        match (self.derivation(), i) {
            (Derivation::Plain, 1) => vec![(3, p("2"))],
            (Derivation::Plain, 2) => vec![(3, p("2y"))],
            (Derivation::Plain, 3) => vec![(1, p("y")), (2, p("1"))],
            (Derivation::Plain, 4) => vec![(1, p("1")), (5, p("1"))],
            (Derivation::Plain, 5) => vec![(3, p("1")), (4, p("y"))],
            (Derivation::Euler, 1) => vec![(3, p("1"))],
            (Derivation::Euler, 2) => vec![(3, p("A - y"))],
            (Derivation::Euler, 3) => vec![(1, half("A - y")), (2, half("1"))],
            (Derivation::Euler, 4) => vec![(1, half("-y")), (4, half("1")), (5, half("1"))],
            (Derivation::Euler, 5) => vec![(3, half("-y")), (4, half("A - y")), (5, half("1"))],
            _ => panic!("basis index {i} out of range for {self}"),
        }
    }

    /// True when elements of `self` can be read as elements of `other`.
    pub fn embeds_in(self, other: BasisFamily) -> bool {
        if self == other {
            return true;
        }
        matches!(
            (self.id, other.id),
            (FamilyId::Airy3, FamilyId::Airy5) | (FamilyId::Bessel3, FamilyId::Bessel5)
        )
    }

    pub fn parse(s: &str) -> Option<BasisFamily> {
        let (id, nu) = match s.split_once(':') {
            Some((i, n)) => (i, Some(n.trim_start_matches("nu=").parse::<u8>().ok()?)),
            None => (s, None),
        };
        let id = match id.to_ascii_uppercase().as_str() {
            "AIRY3" => FamilyId::Airy3,
            "AIRY5" => FamilyId::Airy5,
            "BESSEL3" => FamilyId::Bessel3,
            "BESSEL5" => FamilyId::Bessel5,
            _ => return None,
        };
        Some(BasisFamily { id, nu })
    }
}

impl fmt::Display for BasisFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.id {
            FamilyId::Airy3 => "AIRY3",
            FamilyId::Airy5 => "AIRY5",
            FamilyId::Bessel3 => "BESSEL3",
            FamilyId::Bessel5 => "BESSEL5",
        };
        match self.nu {
            Some(nu) => write!(f, "{name}:nu={nu}"),
            None => write!(f, "{name}"),
        }
    }
}

impl Serialize for BasisFamily {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
