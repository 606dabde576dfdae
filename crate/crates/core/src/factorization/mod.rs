//! Primality, Lucas–Lehmer, prime-power factorization and the 2-adic split.
//!
//! Primality is exact everywhere it answers:
//!
//! * below 10^6, trial division;
//! * Mersenne numbers `2^k - 1`, Lucas–Lehmer;
//! * otherwise below 3.3·10^24, a strong-probable-prime test on the first thirteen
//!   prime bases, which has no pseudoprimes in that range;
//! * anything larger is refused with [`Error::PrimalityOutOfRange`].

mod primes;

pub use primes::{primes_up_to, IncrementalPrimes};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numkernel::Natural;

const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

/// Bases 2..=41 make the strong test deterministic below this bound.
const SPRP_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
const SPRP_BOUND: u128 = 3_317_044_064_679_887_385_961_981;

pub fn is_prime(n: &Natural) -> Result<bool> {
    if let Some(v) = n.to_u64() {
        if v < TRIAL_DIVISION_BOUND {
            return Ok(is_prime_trial(v));
        }
    }
    if let Some(k) = mersenne_exponent(n) {
        return lucas_lehmer(k);
    }
    if let Some(v) = n.to_u64() {
        return Ok(is_prime_sprp_u64(v));
    }
    match n.to_u128() {
        Some(v) if v < SPRP_BOUND => Ok(is_prime_sprp_big(n.as_biguint())),
        _ => Err(Error::PrimalityOutOfRange(n.clone())),
    }
}

/// Primality for machine words, always exact.
pub fn is_prime_u64(n: u64) -> bool {
    if n < TRIAL_DIVISION_BOUND {
        is_prime_trial(n)
    } else {
        is_prime_sprp_u64(n)
    }
}

fn is_prime_trial(n: u64) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n % 2 == 0 || n % 3 == 0 {
        return false;
    }
    let mut d = 5;
    while d * d <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// `Some(k)` when `n = 2^k - 1` with `k >= 2`.
fn mersenne_exponent(n: &Natural) -> Option<u64> {
    let next = n + 1u64;
    let k = next.trailing_zeros()?;
    (k >= 2 && next.bits() == k + 1).then_some(k)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut result = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    result
}

fn is_prime_sprp_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SPRP_BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &SPRP_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn is_prime_sprp_big(n: &BigUint) -> bool {
    for &p in &SPRP_BASES {
        if (n % p).is_zero() {
            return *n == BigUint::from(p);
        }
    }
    let n_minus_one = n - 1u32;
    let s = n_minus_one.trailing_zeros().expect("n > 1");
    let d = &n_minus_one >> s;
    'witness: for &a in &SPRP_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Decides whether `2^k - 1` is prime.
///
/// Composite `k` short-circuits to `false` since `2^a - 1` divides `2^(ab) - 1`.
pub fn lucas_lehmer(k: u64) -> Result<bool> {
    if k < 2 {
        return Err(Error::ExponentTooSmall(k));
    }
    if k == 2 {
        return Ok(true);
    }
    if !is_prime_u64(k) {
        return Ok(false);
    }
    if k < 64 {
        let m = (1u128 << k) - 1;
        let mut s: u128 = 4;
        for _ in 0..k - 2 {
            s = (s * s + m - 2) % m;
        }
        return Ok(s == 0);
    }
    let m = (BigUint::one() << k) - 1u32;
    let mut s = BigUint::from(4u32);
    let two = BigUint::from(2u32);
    for _ in 0..k - 2 {
        let sq = &s * &s;
        // x mod (2^k - 1) by folding the high bits onto the low bits.
        let mut r = (&sq & &m) + (&sq >> k);
        if r >= m {
            r -= &m;
        }
        s = if r >= two { r - &two } else { r + &m - &two };
    }
    Ok(s.is_zero())
}

/// `n = Π p^e` with distinct primes in ascending order; empty for `n = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PrimePowerFactorization {
    pairs: Vec<(Natural, u64)>,
}

impl PrimePowerFactorization {
    /// Validates that primes are strictly ascending, prime, and carry exponents `>= 1`.
    pub fn from_pairs(pairs: Vec<(Natural, u64)>) -> Result<Self> {
        for (i, (p, e)) in pairs.iter().enumerate() {
            if *e == 0 {
                return Err(Error::InvalidFactorization(format!("zero exponent on {p}")));
            }
            if !is_prime(p)? {
                return Err(Error::InvalidFactorization(format!("{p} is not prime")));
            }
            if i > 0 && pairs[i - 1].0 >= *p {
                return Err(Error::InvalidFactorization(
                    "primes must be strictly ascending".to_owned(),
                ));
            }
        }
        Ok(PrimePowerFactorization { pairs })
    }

    pub fn pairs(&self) -> &[(Natural, u64)] {
        &self.pairs
    }

    pub fn into_pairs(self) -> Vec<(Natural, u64)> {
        self.pairs
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    /// Multiplies the factorization back out.
    pub fn product(&self) -> Natural {
        self.pairs
            .iter()
            .map(|(p, e)| Natural::from_biguint(crate::numkernel::pow_biguint(p.as_biguint(), *e)))
            .product()
    }
}

impl std::fmt::Display for PrimePowerFactorization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.pairs.is_empty() {
            return f.write_str("1");
        }
        for (i, (p, e)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Factors `n >= 1` by trial division over an incremental prime stream.
///
/// After each prime factor is stripped the cofactor is checked for primality, so
/// inputs of the form "small factors times one large prime" finish quickly.
pub fn prime_power_factors(n: &Natural) -> Result<PrimePowerFactorization> {
    if n.is_zero() {
        return Err(Error::ZeroInput {
            op: "prime_power_factors",
        });
    }
    let mut pairs = Vec::new();
    let mut rest = n.as_biguint().clone();
    let mut primes = IncrementalPrimes::new();

    // Wide phase: cofactor does not fit a machine word.
    let mut check_cofactor = true;
    while rest.to_u64().is_none() {
        if check_cofactor && cofactor_is_prime(&rest) {
            pairs.push((Natural::from_biguint(rest), 1));
            return Ok(PrimePowerFactorization { pairs });
        }
        let p = primes.next().expect("prime stream is unbounded");
        let mut e = 0;
        while (&rest % p).is_zero() {
            rest /= p;
            e += 1;
        }
        check_cofactor = e > 0;
        if e > 0 {
            pairs.push((Natural::from(p), e));
        }
    }

    let mut rest = rest.to_u64().expect("narrow phase");
    if rest > 1 && is_prime_u64(rest) {
        pairs.push((Natural::from(rest), 1));
        return Ok(PrimePowerFactorization { pairs });
    }
    for p in primes {
        if rest == 1 {
            break;
        }
        if p.saturating_mul(p) > rest {
            pairs.push((Natural::from(rest), 1));
            break;
        }
        if rest % p != 0 {
            continue;
        }
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        pairs.push((Natural::from(p), e));
        if rest > 1 && is_prime_u64(rest) {
            pairs.push((Natural::from(rest), 1));
            break;
        }
    }
    Ok(PrimePowerFactorization { pairs })
}

fn cofactor_is_prime(rest: &BigUint) -> bool {
    // Out-of-range cofactors are treated as "unknown" and trial division continues.
    is_prime(&Natural::from_biguint(rest.clone())).unwrap_or(false)
}

/// `n = odd_part * 2^two_adic` with `odd_part` odd.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct OddSplit {
    pub odd_part: Natural,
    pub two_adic: u64,
}

pub fn odd_split(n: &Natural) -> Result<OddSplit> {
    let two_adic = n
        .trailing_zeros()
        .ok_or(Error::ZeroInput { op: "odd_split" })?;
    Ok(OddSplit {
        odd_part: n >> two_adic,
        two_adic,
    })
}
