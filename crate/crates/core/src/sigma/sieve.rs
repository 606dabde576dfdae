use std::ops::Index;

use crate::error::{Error, Result};
use crate::factorization::primes_up_to;
use crate::numkernel::Natural;

/// Default cap on the σ table: 1 GiB, i.e. limits up to 134,217,727.
pub const DEFAULT_MEMORY_CAP: u64 = 1 << 30;

/// Environment variable overriding [`DEFAULT_MEMORY_CAP`], in bytes.
pub const MEMORY_CAP_ENV: &str = "PERFECT_SIEVE_MEMORY_CAP";

/// Largest limit the segmented scan accepts. σ(n) stays far below `u64::MAX` here.
pub const MAX_SCAN_LIMIT: u64 = 1 << 48;

const TABLE_ENTRY_BYTES: u128 = std::mem::size_of::<u64>() as u128;
const SEGMENT_LEN: u64 = 1 << 16;
const TABLE_BLOCK_LEN: u64 = 1 << 17;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SieveConfig {
    pub memory_cap_bytes: u64,
}

impl Default for SieveConfig {
    fn default() -> Self {
        SieveConfig {
            memory_cap_bytes: DEFAULT_MEMORY_CAP,
        }
    }
}

impl SieveConfig {
    /// Reads [`MEMORY_CAP_ENV`]; unset or unparsable values fall back to the default.
    pub fn from_env() -> Self {
        std::env::var(MEMORY_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(|memory_cap_bytes| SieveConfig { memory_cap_bytes })
            .unwrap_or_default()
    }

    pub fn table_bytes(limit: u64) -> u128 {
        (limit as u128 + 1) * TABLE_ENTRY_BYTES
    }

    pub fn table_fits(&self, limit: u64) -> bool {
        Self::table_bytes(limit) <= self.memory_cap_bytes as u128
    }
}

/// σ(1..=limit), immutable once built.
///
/// Indexing with `0` or past the limit panics; [`SigmaTable::get`] is the checked form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaTable {
    values: Vec<u64>,
}

impl SigmaTable {
    pub fn limit(&self) -> u64 {
        (self.values.len() - 1) as u64
    }

    pub fn get(&self, n: u64) -> Option<u64> {
        if n == 0 {
            return None;
        }
        self.values.get(n as usize).copied()
    }

    pub fn get_natural(&self, n: u64) -> Option<Natural> {
        self.get(n).map(Natural::from)
    }

    /// `(n, σ(n))` for every `n` in the table.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.values
            .iter()
            .copied()
            .enumerate()
            .skip(1)
            .map(|(n, s)| (n as u64, s))
    }
}

impl Index<u64> for SigmaTable {
    type Output = u64;

    fn index(&self, n: u64) -> &u64 {
        assert!(n != 0, "sigma undefined at 0");
        &self.values[n as usize]
    }
}

pub fn sigma_sieve(limit: u64) -> Result<SigmaTable> {
    sigma_sieve_with(limit, &SieveConfig::default())
}

/// Builds σ(1..=limit) by divisor accumulation.
///
/// Every divisor pair `d · q = n` with `d <= q` adds `d + q` (or just `d` when
/// `d = q`) to entry `n`. Only `d <= √limit` is enumerated, block by block, so each
/// block stays cache resident; the total is `O(limit · log limit)` additions.
///
/// Needs `8 · (limit + 1)` bytes, which must not exceed the configured cap.
pub fn sigma_sieve_with(limit: u64, config: &SieveConfig) -> Result<SigmaTable> {
    if limit == 0 {
        return Err(Error::ZeroInput { op: "sigma_sieve" });
    }
    if !config.table_fits(limit) {
        return Err(Error::SieveMemory {
            limit,
            bytes: SieveConfig::table_bytes(limit),
            cap: config.memory_cap_bytes,
        });
    }
    let mut values = vec![0u64; limit as usize + 1];
    let mut lo = 1u64;
    while lo <= limit {
        let hi = lo.saturating_add(TABLE_BLOCK_LEN - 1).min(limit);
        for d in 1..=hi.isqrt() {
            let mut q = d.max(lo.div_ceil(d));
            let mut m = d * q;
            while m <= hi {
                values[m as usize] += if q == d { d } else { d + q };
                q += 1;
                m += d;
            }
        }
        lo = hi + 1;
    }
    Ok(SigmaTable { values })
}

/// Visits `(n, σ(n))` for `n` in `lo..=hi` (odd `n` only when `odd_only`) in
/// ascending order, one fixed-size segment at a time.
///
/// Each segment strips the primes up to `√hi` off its entries and multiplies the
/// matching prime-power sums together; what remains above 1 is a single large prime.
/// Memory is one segment plus the sieving primes.
pub fn scan_sigma(lo: u64, hi: u64, odd_only: bool, mut visit: impl FnMut(u64, u64)) -> Result<()> {
    if lo == 0 {
        return Err(Error::ZeroInput { op: "sigma" });
    }
    if hi > MAX_SCAN_LIMIT {
        return Err(Error::EnumerationLimit {
            limit: hi,
            max: MAX_SCAN_LIMIT,
        });
    }
    if lo > hi {
        return Ok(());
    }
    let primes = primes_up_to(hi.isqrt());
    let stride = if odd_only { 2 } else { 1 };
    let mut rest = Vec::with_capacity(SEGMENT_LEN as usize);
    let mut sums = Vec::with_capacity(SEGMENT_LEN as usize);

    let mut seg_lo = lo;
    while seg_lo <= hi {
        let seg_hi = seg_lo.saturating_add(SEGMENT_LEN - 1).min(hi);
        let first = if odd_only { seg_lo | 1 } else { seg_lo };
        if first <= seg_hi {
            rest.clear();
            sums.clear();
            rest.extend((first..=seg_hi).step_by(stride as usize));
            sums.resize(rest.len(), 1u64);

            for &p in &primes {
                if odd_only && p == 2 {
                    continue;
                }
                if p * p > seg_hi {
                    break;
                }
                let mut m = first.div_ceil(p) * p;
                if odd_only && m % 2 == 0 {
                    m += p;
                }
                let step = p * stride;
                while m <= seg_hi {
                    let idx = ((m - first) / stride) as usize;
                    let mut r = rest[idx] / p;
                    let mut power = p;
                    let mut sum = 1 + p;
                    while r % p == 0 {
                        r /= p;
                        power *= p;
                        sum += power;
                    }
                    rest[idx] = r;
                    sums[idx] *= sum;
                    m += step;
                }
            }

            for (i, (&r, &s)) in rest.iter().zip(sums.iter()).enumerate() {
                let n = first + i as u64 * stride;
                let sigma = if r > 1 { s * (r + 1) } else { s };
                visit(n, sigma);
            }
        }
        match seg_hi.checked_add(1) {
            Some(next) => seg_lo = next,
            None => break,
        }
    }
    Ok(())
}
