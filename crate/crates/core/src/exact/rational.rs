//! Helpers around `BigRational`, the scalar type of every exact computation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ExactError;

/// Exact rational scalar. `BigRational` keeps itself reduced with a positive
/// denominator, which is the canonical form we rely on for equality.
pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qzero() -> Q {
    Q::zero()
}

pub fn qone() -> Q {
    Q::one()
}

/// Canonical text form: `"n"` for integers, `"n/d"` otherwise.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Result<Q, ExactError> {
    let s = s.trim();
    let bad = || ExactError::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(ExactError::DivisionByZero);
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn qpow(x: &Q, e: u32) -> Q {
    let mut r = Q::one();
    for _ in 0..e {
        r *= x;
    }
    r
}

/// Integer power with a possibly negative exponent.
pub fn qpow_signed(x: &Q, e: i64) -> Q {
    let p = qpow(x, e.unsigned_abs() as u32);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

/// Lossy conversion used only for display and float seeding.
pub fn q_to_f64(x: &Q) -> f64 {
    let n = x.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
    let d = x.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
    if n.is_finite() && d.is_finite() {
        return n / d;
    }
    // Very large numerator or denominator: scale via bit lengths.
    let shift = x.numer().bits().max(x.denom().bits()) as i64 - 60;
    let scale = BigInt::one() << shift.max(0) as usize;
    let n = (x.numer() / &scale).to_string().parse::<f64>().unwrap_or(0.0);
    let d = (x.denom() / &scale).to_string().parse::<f64>().unwrap_or(0.0);
    if d == 0.0 {
        if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    } else {
        n / d
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}
