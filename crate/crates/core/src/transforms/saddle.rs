//! Saddle-point expansion of the soft-edge GUE density transform
//! F_N(γ) = Σ_k N^{−k/3}·F_k(γ).
//!
//! The integrand about s = 1 is e^{−(t + iγ^{3/2}/2)²}·exp(Φ) with
//! Φ = Σ_{k≥1} εᵏ φ_k(t, γ^{1/2}), ε = N^{−1/3}. After t ↦ t − iγ^{3/2}/2
//! the Gaussian is centred, exp(Φ) is expanded to order K and each power of
//! t is replaced by its Gaussian moment.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::element::TransformElement;
use super::TransformError;
use crate::exact::rational::{binomial, factorial};
use crate::exact::{fmt_q, q, qi, Q};

pub const MAX_SADDLE_ORDER: usize = 12;

/// a + i·b with rational parts; i is kept formal.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GaussQ {
    pub re: Q,
    pub im: Q,
}

impl GaussQ {
    pub fn real(re: Q) -> Self {
        GaussQ { re, im: Q::zero() }
    }

    pub fn imag(im: Q) -> Self {
        GaussQ { re: Q::zero(), im }
    }

    /// (−i)ⁿ·c
    fn minus_i_pow(n: u32, c: Q) -> Self {
        match n % 4 {
            0 => GaussQ::real(c),
            1 => GaussQ::imag(-c),
            2 => GaussQ::real(-c),
            _ => GaussQ::imag(c),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn scale(&self, s: &Q) -> Self {
        GaussQ { re: &self.re * s, im: &self.im * s }
    }
}

impl Add for &GaussQ {
    type Output = GaussQ;
    fn add(self, o: &GaussQ) -> GaussQ {
        GaussQ { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Mul for &GaussQ {
    type Output = GaussQ;
    fn mul(self, o: &GaussQ) -> GaussQ {
        GaussQ { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
}

impl Neg for &GaussQ {
    type Output = GaussQ;
    fn neg(self) -> GaussQ {
        GaussQ { re: -self.re.clone(), im: -self.im.clone() }
    }
}

/// Polynomial in t and γ^{1/2}, keyed by (power of t, twice the power of γ).
pub type TGPoly = BTreeMap<(u32, i32), GaussQ>;

fn poly_add_term(p: &mut TGPoly, key: (u32, i32), c: GaussQ) {
    if c.is_zero() {
        return;
    }
    let e = p.entry(key).or_default();
    *e = &*e + &c;
    if e.is_zero() {
        p.remove(&key);
    }
}

fn poly_mul(a: &TGPoly, b: &TGPoly) -> TGPoly {
    let mut r = TGPoly::new();
    for ((ta, ga), ca) in a {
        for ((tb, gb), cb) in b {
            poly_add_term(&mut r, (ta + tb, ga + gb), ca * cb);
        }
    }
    r
}

/// Truncated series Σ_{k≤K} εᵏ·c_k with c_k ∈ Q(i)[t, γ^{±1/2}].
#[derive(Clone, Debug, PartialEq, Default)]
pub struct EpsSeries {
    pub order: usize,
    pub coeffs: Vec<TGPoly>,
}

impl EpsSeries {
    pub fn zero(order: usize) -> Self {
        EpsSeries { order, coeffs: vec![TGPoly::new(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        poly_add_term(&mut s.coeffs[0], (0, 0), GaussQ::real(qi(1)));
        s
    }

    pub fn add_term(&mut self, k: usize, t_pow: u32, g_half: i32, c: GaussQ) {
        if k <= self.order {
            poly_add_term(&mut self.coeffs[k], (t_pow, g_half), c);
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        let mut r = Self::zero(order);
        for i in 0..=order {
            for j in 0..=order - i {
                if self.coeffs[i].is_empty() || o.coeffs[j].is_empty() {
                    continue;
                }
                for (key, c) in poly_mul(&self.coeffs[i], &o.coeffs[j]) {
                    poly_add_term(&mut r.coeffs[i + j], key, c);
                }
            }
        }
        r
    }

    /// exp of a series without constant term, via k·E_k = Σ_m m·Φ_m·E_{k−m}.
    pub fn exp(&self) -> Result<Self, TransformError> {
        if !self.coeffs[0].is_empty() {
            return Err(TransformError::Internal("exp needs a series without constant term".into()));
        }
        let mut e = Self::one(self.order);
        for k in 1..=self.order {
            let mut acc = TGPoly::new();
            for m in 1..=k {
                if self.coeffs[m].is_empty() || e.coeffs[k - m].is_empty() {
                    continue;
                }
                let w = qi(m as i64);
                for (key, c) in poly_mul(&self.coeffs[m], &e.coeffs[k - m]) {
                    poly_add_term(&mut acc, key, c.scale(&w));
                }
            }
            let inv = q(1, k as i64);
            e.coeffs[k] = acc.into_iter().map(|(key, c)| (key, c.scale(&inv))).collect();
        }
        Ok(e)
    }

    /// t ↦ t + s with s = −i·γ^{3/2}/2.
    pub fn shift_t(&self) -> Self {
        let s = GaussQ::imag(q(-1, 2));
        let mut r = Self::zero(self.order);
        for (k, poly) in self.coeffs.iter().enumerate() {
            for ((tp, gh), c) in poly {
                let mut spow = GaussQ::real(qi(1));
                for i in 0..=*tp {
                    let w = Q::from(binomial(*tp, i));
                    r.add_term(k, tp - i, gh + 3 * i as i32, (c * &spow).scale(&w));
                    spow = &spow * &s;
                }
            }
        }
        r
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().map(|p| p.len()).sum()
    }
}

/// (l)_j = l(l+1)…(l+j−1)
fn rising(l: u32, j: u32) -> Q {
    (0..j).fold(Q::one(), |acc, i| acc * qi((l + i) as i64))
}

/// Φ = Σ_k εᵏ φ_k from the expansion of (1 − γ/(N^{1/3}s))^{−N}·e^{γN^{2/3}s}
/// about s = 1 with s − 1 = it/(N^{1/3}γ^{1/2}).
pub fn saddle_exponent(order: usize) -> EpsSeries {
    let mut phi = EpsSeries::zero(order);
    for k in 1..=order as u32 {
        let l = k + 3;
        phi.add_term(k as usize, 0, 2 * l as i32, GaussQ::real(q(1, l as i64)));
        let l = k + 2;
        phi.add_term(k as usize, 1, 2 * l as i32 - 1, GaussQ::imag(qi(-1)));
        let l = k + 1;
        phi.add_term(k as usize, 2, 2 * (l as i32 - 1), GaussQ::real(q(-(l as i64 + 1), 2)));
        for j in 3..=k + 2 {
            let l = k + 3 - j;
            let c = rising(l, j) / (qi(l as i64) * Q::from(factorial(j)));
            phi.add_term(k as usize, j, 2 * l as i32 - j as i32, GaussQ::minus_i_pow(j, c));
        }
    }
    phi
}

/// ∫ tⁿ e^{−t²} dt / √π
fn gaussian_moment(n: u32) -> Q {
    if n.is_odd() {
        return Q::zero();
    }
    let m = n / 2;
    let double_fact: BigInt = (1..=m).map(|i| BigInt::from(2 * i - 1)).product();
    Q::new(double_fact, BigInt::from(2u32).pow(m))
}

#[derive(Clone, Debug, Serialize)]
pub struct SaddleExpansion {
    pub order: usize,
    /// Coefficient of N^{−k/3}, k = 0 … order.
    pub coeffs: Vec<TransformElement>,
    /// Terms in the expanded integrand before integration.
    pub integrand_terms: usize,
}

impl SaddleExpansion {
    /// The GUE corrections graded as in the density tables: the coefficient of
    /// N^{−2j/3} equals 4^{−j}·u_j, so u_j = 4^j·F_{2j}.
    pub fn u(&self, j: usize) -> Option<TransformElement> {
        self.coeffs.get(2 * j).map(|c| c.scale(&Q::from(BigInt::from(4u32).pow(j as u32))))
    }

    /// Reads the free constant b of u₃ from the γ^{−3/2} coefficient, which
    /// is −4³·b in the normalisation where u₃ = −4³γ^{−9/2}(… + bγ³ + …).
    pub fn b_constant(&self) -> Option<Q> {
        self.u(3).map(|u3| -u3.a_coeff(-3) / qi(64))
    }
}

impl SaddleExpansion {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            s.push_str(&format!("N^(-{k}/3): {c}\n"));
        }
        if let Some(b) = self.b_constant() {
            s.push_str(&format!("b = {}\n", fmt_q(&b)));
        }
        s
    }
}

/// Coefficients of N^{−k/3} for k ≤ `order` as sector-A transforms.
pub fn saddle_expand(order: usize) -> Result<SaddleExpansion, TransformError> {
    if order > MAX_SADDLE_ORDER {
        return Err(TransformError::OrderTooLarge { order, max: MAX_SADDLE_ORDER });
    }
    let integrand = saddle_exponent(order).shift_t().exp()?;
    let coeffs = integrand
        .coeffs
        .par_iter()
        .enumerate()
        .map(|(k, poly)| {
            let mut out = TransformElement::zero();
            let mut imag = TransformElement::zero();
            for ((tp, gh), c) in poly {
                let m = gaussian_moment(*tp);
                if m.is_zero() {
                    continue;
                }
                // prefactor e^{γ³/12}/(2√π γ^{3/2}) after ∫e^{−t²} = √π
                out.add_assign(&TransformElement::a_term(gh - 3, &c.re * &m * q(1, 2)));
                imag.add_assign(&TransformElement::a_term(*gh, &c.im * &m));
            }
            if !imag.is_zero() {
                return Err(TransformError::ImaginaryResidue { k });
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SaddleExpansion { order, coeffs, integrand_terms: integrand.num_terms() })
}
