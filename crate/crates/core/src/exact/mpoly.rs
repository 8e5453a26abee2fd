//! Sparse multivariate polynomials over Q in a fixed set of four slots.
//!
//! Slot 0 is the "main" variable (y, γ or u depending on context), slots
//! 1..=3 are the formal parameters A, T and Ã. Terms live in a `BTreeMap`
//! keyed by exponent vectors, so the lexicographic order with slot 0 most
//! significant is the iteration order and the leading term is the last key.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{qpow, Q};
use super::ExactError;

pub const NSLOTS: usize = 4;
pub type Exps = [u32; NSLOTS];

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MPoly {
    terms: BTreeMap<Exps, Q>,
}

fn exps_unit(slot: usize, e: u32) -> Exps {
    let mut x = [0; NSLOTS];
    x[slot] = e;
    x
}

fn exps_add(a: &Exps, b: &Exps) -> Exps {
    let mut r = *a;
    for i in 0..NSLOTS {
        r[i] += b[i];
    }
    r
}

fn exps_divides(a: &Exps, b: &Exps) -> bool {
    (0..NSLOTS).all(|i| a[i] <= b[i])
}

fn exps_sub(b: &Exps, a: &Exps) -> Exps {
    let mut r = *b;
    for i in 0..NSLOTS {
        r[i] -= a[i];
    }
    r
}

impl MPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial([0; NSLOTS], c)
    }

    pub fn monomial(e: Exps, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        MPoly { terms }
    }

    /// The variable in `slot` raised to the power `e`.
    pub fn var_pow(slot: usize, e: u32) -> Self {
        Self::monomial(exps_unit(slot, e), Q::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Exps, Q)>>(it: I) -> Self {
        let mut p = MPoly::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exps, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&[0; NSLOTS]))
    }

    pub fn constant_value(&self) -> Option<Q> {
        if self.is_zero() {
            Some(Q::zero())
        } else if self.is_constant() {
            self.terms.get(&[0; NSLOTS]).cloned()
        } else {
            None
        }
    }

    pub fn coeff(&self, e: &Exps) -> Q {
        self.terms.get(e).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, e: Exps, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, e: &Exps, c: &Q) -> Self {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(f, x)| (exps_add(e, f), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = MPoly::one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    pub fn degree(&self, slot: usize) -> u32 {
        self.terms.keys().map(|e| e[slot]).max().unwrap_or(0)
    }

    pub fn min_degree(&self, slot: usize) -> u32 {
        self.terms.keys().map(|e| e[slot]).min().unwrap_or(0)
    }

    /// Slots that occur with a positive exponent somewhere.
    pub fn used_slots(&self) -> [bool; NSLOTS] {
        let mut used = [false; NSLOTS];
        for e in self.terms.keys() {
            for i in 0..NSLOTS {
                used[i] |= e[i] > 0;
            }
        }
        used
    }

    pub fn leading(&self) -> Option<(&Exps, &Q)> {
        self.terms.iter().next_back()
    }

    /// View as a univariate polynomial in `slot`.
    pub fn coeffs_in(&self, slot: usize) -> BTreeMap<u32, MPoly> {
        let mut out: BTreeMap<u32, MPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut f = *e;
            let k = f[slot];
            f[slot] = 0;
            out.entry(k).or_default().add_term(f, c.clone());
        }
        out
    }

    pub fn coeff_in(&self, slot: usize, k: u32) -> MPoly {
        MPoly::from_terms(self.terms.iter().filter(|(e, _)| e[slot] == k).map(|(e, c)| {
            let mut f = *e;
            f[slot] = 0;
            (f, c.clone())
        }))
    }

    pub fn derivative(&self, slot: usize) -> Self {
        MPoly::from_terms(self.terms.iter().filter(|(e, _)| e[slot] > 0).map(|(e, c)| {
            let mut f = *e;
            f[slot] -= 1;
            (f, c * Q::from_integer(e[slot].into()))
        }))
    }

    /// Replace the variable in `slot` by the polynomial `value`.
    pub fn substitute(&self, slot: usize, value: &MPoly) -> Self {
        let by = self.coeffs_in(slot);
        let mut out = MPoly::zero();
        // Horner from the top degree down.
        let top = by.keys().next_back().copied().unwrap_or(0);
        for k in (0..=top).rev() {
            out = &out * value;
            if let Some(c) = by.get(&k) {
                out = &out + c;
            }
        }
        out
    }

    pub fn evaluate(&self, slot: usize, x: &Q) -> Self {
        MPoly::from_terms(self.terms.iter().map(|(e, c)| {
            let mut f = *e;
            f[slot] = 0;
            (f, c * qpow(x, e[slot]))
        }))
    }

    /// Exact division; errors when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Result<MPoly, ExactError> {
        let (de, dc) = match d.leading() {
            Some((e, c)) => (*e, c.clone()),
            None => return Err(ExactError::DivisionByZero),
        };
        if d.is_constant() {
            let inv = Q::one() / &dc;
            return Ok(self.scale(&inv));
        }
        let mut quot = MPoly::zero();
        let mut rem = self.clone();
        while let Some((re, rc)) = rem.leading().map(|(e, c)| (*e, c.clone())) {
            if !exps_divides(&de, &re) {
                return Err(ExactError::NotExact);
            }
            let e = exps_sub(&re, &de);
            let c = rc / &dc;
            rem = &rem - &d.mul_monomial(&e, &c);
            quot.add_term(e, c);
        }
        Ok(quot)
    }

    /// Scale so that the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) => self.scale(&(Q::one() / c)),
            None => MPoly::zero(),
        }
    }

    /// Monic greatest common divisor over Q.
    pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return MPoly::one();
        }
        let ua = a.used_slots();
        let ub = b.used_slots();
        let v = match (0..NSLOTS).rev().find(|&i| ua[i] || ub[i]) {
            Some(v) => v,
            None => return MPoly::one(),
        };
        if !ua[v] {
            return MPoly::gcd(a, &b.content_in(v));
        }
        if !ub[v] {
            return MPoly::gcd(&a.content_in(v), b);
        }
        let ca = a.content_in(v);
        let cb = b.content_in(v);
        let c = MPoly::gcd(&ca, &cb);
        let pa = a.div_exact(&ca).expect("content divides");
        let pb = b.div_exact(&cb).expect("content divides");
        let (mut f, mut g) = if pa.degree(v) >= pb.degree(v) { (pa, pb) } else { (pb, pa) };
        loop {
            let r = f.prem(&g, v);
            if r.is_zero() {
                break;
            }
            if r.degree(v) == 0 {
                g = MPoly::one();
                break;
            }
            f = g;
            g = r.primitive_in(v);
        }
        (&c * &g.primitive_in(v)).monic()
    }

    /// Gcd of the coefficients when viewed as a polynomial in `slot`.
    pub fn content_in(&self, slot: usize) -> MPoly {
        let mut g = MPoly::zero();
        for c in self.coeffs_in(slot).values() {
            g = MPoly::gcd(&g, c);
            if g.is_constant() {
                return MPoly::one();
            }
        }
        g
    }

    pub fn primitive_in(&self, slot: usize) -> MPoly {
        if self.is_zero() {
            return MPoly::zero();
        }
        let c = self.content_in(slot);
        self.div_exact(&c).expect("content divides")
    }

    /// Pseudo-remainder of `self` by `g` as polynomials in `slot`.
    fn prem(&self, g: &MPoly, slot: usize) -> MPoly {
        let dg = g.degree(slot);
        let lg = g.coeff_in(slot, dg);
        let mut r = self.clone();
        while !r.is_zero() && r.degree(slot) >= dg {
            let dr = r.degree(slot);
            let lr = r.coeff_in(slot, dr);
            let shift = &lr * &MPoly::var_pow(slot, dr - dg);
            r = &(&lg * &r) - &(&shift * g);
        }
        r
    }
}

impl Add<&MPoly> for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub<&MPoly> for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul<&MPoly> for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(exps_add(e1, e2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: &MPoly) -> MPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}
