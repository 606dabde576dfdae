//! The divisor-sum function σ and the perfect-number predicate `σ(n) = 2n`.

mod enumerate;
mod sieve;

pub use enumerate::{perfect_up_to, EnumerationMode, PerfectEnumerator};
pub use sieve::{
    scan_sigma, sigma_sieve, sigma_sieve_with, SieveConfig, SigmaTable, DEFAULT_MEMORY_CAP,
    MAX_SCAN_LIMIT, MEMORY_CAP_ENV,
};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factorization::prime_power_factors;
use crate::numkernel::{pow_biguint, Natural};

/// A number together with its divisor sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigmaValue {
    pub n: Natural,
    pub sigma: Natural,
}

impl SigmaValue {
    pub fn compute(n: &Natural) -> Result<Self> {
        Ok(SigmaValue {
            n: n.clone(),
            sigma: sigma_fast(n)?,
        })
    }

    /// σ(n) − n, the sum of proper divisors.
    pub fn aliquot(&self) -> Natural {
        &self.sigma - &self.n
    }
}

fn reject_zero(n: &Natural, op: &'static str) -> Result<()> {
    if n.is_zero() {
        Err(Error::ZeroInput { op })
    } else {
        Ok(())
    }
}

/// All positive divisors of `n`, ascending, found by trial division up to `√n`.
pub fn divisors(n: &Natural) -> Result<Vec<Natural>> {
    reject_zero(n, "divisors")?;
    if let Some(v) = n.to_u64() {
        let mut low = Vec::new();
        let mut high = Vec::new();
        let mut d = 1u64;
        while d <= v / d {
            if v % d == 0 {
                low.push(d);
                if d != v / d {
                    high.push(v / d);
                }
            }
            d += 1;
        }
        return Ok(low
            .into_iter()
            .chain(high.into_iter().rev())
            .map(Natural::from)
            .collect());
    }
    let v = n.as_biguint();
    let mut low = Vec::new();
    let mut high = Vec::new();
    let mut d = BigUint::one();
    while &d * &d <= *v {
        if (v % &d).to_u64() == Some(0) {
            let q = v / &d;
            if q != d {
                high.push(Natural::from_biguint(q));
            }
            low.push(Natural::from_biguint(d.clone()));
        }
        d += 1u32;
    }
    low.extend(high.into_iter().rev());
    Ok(low)
}

/// σ(n) as the literal sum of [`divisors`].
pub fn sigma_naive(n: &Natural) -> Result<Natural> {
    reject_zero(n, "sigma")?;
    Ok(divisors(n)?.iter().sum())
}

/// σ(n) from the factorization: `Π (p^(e+1) − 1) / (p − 1)`.
pub fn sigma_fast(n: &Natural) -> Result<Natural> {
    reject_zero(n, "sigma")?;
    let factors = prime_power_factors(n)?;
    Ok(factors
        .pairs()
        .iter()
        .map(|(p, e)| sigma_prime_power(p, *e))
        .product())
}

/// σ(p^e) for prime `p`.
pub fn sigma_prime_power(p: &Natural, e: u64) -> Natural {
    let p = p.as_biguint();
    let top = pow_biguint(p, e + 1) - 1u32;
    Natural::from_biguint(top / (p - 1u32))
}

pub fn is_perfect(n: &Natural) -> Result<bool> {
    reject_zero(n, "is_perfect")?;
    Ok(sigma_fast(n)? == n * 2u64)
}
