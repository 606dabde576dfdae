//! Exact arithmetic foundation.
//!
//! Everything downstream works on [`Natural`] (unbounded nonnegative integers) and
//! [`Rational`] (signed fractions kept in lowest terms). There is no floating point
//! anywhere in the crate.

mod natural;
mod rational;

pub use natural::Natural;
pub use rational::Rational;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Greatest common divisor, with `gcd(0, 0) = 0`.
pub fn gcd(a: &Natural, b: &Natural) -> Natural {
    Natural::from_biguint(gcd_biguint(a.as_biguint(), b.as_biguint()))
}

pub(crate) fn gcd_biguint(a: &BigUint, b: &BigUint) -> BigUint {
    // Euclid rather than binary gcd: when one side is small the first remainder
    // collapses the big side immediately, which is the common case for
    // rational sums with small-denominator terms.
    let (mut a, mut b) = if a >= b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    while !b.is_zero() {
        if let (Some(x), Some(y)) = (a.to_u64(), b.to_u64()) {
            return BigUint::from(gcd_u64(x, y));
        }
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

pub(crate) fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Largest power result we are willing to allocate, in bits.
const POW_MAX_BITS: u64 = 1 << 34;

/// `base^exp` by repeated squaring. `0^0` is rejected.
pub fn pow(base: &Natural, exp: &Natural) -> Result<Natural> {
    if base.is_zero() && exp.is_zero() {
        return Err(Error::ZeroToZero);
    }
    if exp.is_zero() || base.is_one() {
        return Ok(Natural::one());
    }
    if base.is_zero() {
        return Ok(Natural::zero());
    }
    let e = exp
        .to_u64()
        .filter(|&e| base.bits().saturating_mul(e) <= POW_MAX_BITS)
        .ok_or_else(|| Error::ExponentTooLarge(exp.clone()))?;
    Ok(Natural::from_biguint(pow_biguint(base.as_biguint(), e)))
}

pub(crate) fn pow_biguint(base: &BigUint, mut exp: u64) -> BigUint {
    let mut result = BigUint::one();
    let mut square = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            result *= &square;
        }
        exp >>= 1;
        if exp > 0 {
            square = &square * &square;
        }
    }
    result
}

/// `base^exp` for a machine-word exponent; `0^0` is rejected.
pub fn pow_u64(base: &Natural, exp: u64) -> Result<Natural> {
    pow(base, &Natural::from(exp))
}
