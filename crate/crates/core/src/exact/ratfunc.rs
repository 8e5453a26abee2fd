//! Rational functions in the formal parameters, kept as reduced fraction pairs.

use std::fmt;

use num_traits::{One, Zero};

use super::mpoly::MPoly;
use super::rational::Q;
use super::ExactError;

/// Largest exponent of any single parameter allowed in a reduced fraction.
pub const MAX_PARAM_DEGREE: u32 = 16;

/// `num/den` with `gcd(num, den) = 1` and `den` monic; zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: MPoly,
    den: MPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: MPoly::zero(), den: MPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(MPoly::one())
    }

    pub fn from_poly(p: MPoly) -> Self {
        RatFunc { num: p, den: MPoly::one() }
    }

    pub fn from_q(c: Q) -> Self {
        Self::from_poly(MPoly::constant(c))
    }

    pub fn new(num: MPoly, den: MPoly) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = MPoly::gcd(&num, &den);
            if g.is_constant() {
                (num, den)
            } else {
                (num.div_exact(&g)?, den.div_exact(&g)?)
            }
        };
        let lc = den.leading().map(|(_, c)| c.clone()).unwrap_or_else(Q::one);
        let inv = Q::one() / lc;
        let out = RatFunc { num: num.scale(&inv), den: den.scale(&inv) };
        out.check_degree()?;
        Ok(out)
    }

    fn check_degree(&self) -> Result<(), ExactError> {
        for slot in 1..super::mpoly::NSLOTS {
            let d = self.num.degree(slot).max(self.den.degree(slot));
            if d > MAX_PARAM_DEGREE {
                return Err(ExactError::DegreeBound { slot, degree: d });
            }
        }
        Ok(())
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The polynomial value when the denominator is constant.
    pub fn as_poly(&self) -> Option<MPoly> {
        let d = self.den.constant_value()?;
        Some(self.num.scale(&(Q::one() / d)))
    }

    pub fn add(&self, o: &RatFunc) -> Result<RatFunc, ExactError> {
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den.clone());
        }
        RatFunc::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }

    pub fn sub(&self, o: &RatFunc) -> Result<RatFunc, ExactError> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFunc) -> Result<RatFunc, ExactError> {
        if self.is_zero() || o.is_zero() {
            return Ok(RatFunc::zero());
        }
        RatFunc::new(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc, ExactError> {
        if o.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        RatFunc::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn scale(&self, c: &Q) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &MPoly| super::ParamPoly::from_mpoly(super::Var::Y, p.clone()).to_string();
        if self.den.is_constant() {
            let d = self.den.constant_value().unwrap_or_else(Q::one);
            write!(f, "{}", show(&self.num.scale(&(Q::one() / d))))
        } else {
            write!(f, "({})/({})", show(&self.num), show(&self.den))
        }
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl std::ops::Add for RatFunc {
    type Output = RatFunc;
    fn add(self, o: RatFunc) -> RatFunc {
        RatFunc::add(&self, &o).expect("rational function degree bound exceeded")
    }
}
