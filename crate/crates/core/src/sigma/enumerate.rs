use super::sieve::{scan_sigma, sigma_sieve_with, SieveConfig};
use crate::error::{Error, Result};
use crate::numkernel::Natural;
use crate::structure::euclid_perfect;

/// How [`PerfectEnumerator`] finds perfect numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EnumerationMode {
    /// σ table scan when the table fits the memory cap, otherwise Euclid
    /// generation for the evens plus a segmented scan of the odd residues.
    #[default]
    Production,
    /// Runs both strategies and fails unless they agree.
    CrossCheck,
}

#[derive(Debug, Clone, Default)]
pub struct PerfectEnumerator {
    pub config: SieveConfig,
    pub mode: EnumerationMode,
}

impl PerfectEnumerator {
    pub fn new(config: SieveConfig, mode: EnumerationMode) -> Self {
        PerfectEnumerator { config, mode }
    }

    pub fn cross_check() -> Self {
        PerfectEnumerator::new(SieveConfig::default(), EnumerationMode::CrossCheck)
    }

    /// Every perfect `n <= limit`, ascending.
    pub fn perfect_up_to(&self, limit: u64) -> Result<Vec<Natural>> {
        if limit == 0 {
            return Err(Error::ZeroInput {
                op: "perfect_up_to",
            });
        }
        match self.mode {
            EnumerationMode::Production => {
                if self.config.table_fits(limit) {
                    self.sieve_scan(limit)
                } else {
                    self.generator_scan(limit)
                }
            }
            EnumerationMode::CrossCheck => {
                let sieve = self.sieve_scan(limit)?;
                let generator = self.generator_scan(limit)?;
                if sieve != generator {
                    return Err(Error::StrategyDisagreement {
                        limit,
                        sieve,
                        generator,
                    });
                }
                Ok(sieve)
            }
        }
    }

    /// Every `n <= limit` with `σ(n) = 2n`, from the full table when it fits the
    /// cap and from the segmented scan over all residues otherwise.
    pub fn sieve_scan(&self, limit: u64) -> Result<Vec<Natural>> {
        if self.config.table_fits(limit) {
            let table = sigma_sieve_with(limit, &self.config)?;
            return Ok(table
                .iter()
                .filter(|&(n, s)| s == 2 * n)
                .map(|(n, _)| Natural::from(n))
                .collect());
        }
        let mut found = Vec::new();
        scan_sigma(1, limit, false, |n, s| {
            if s == 2 * n {
                found.push(Natural::from(n));
            }
        })?;
        Ok(found)
    }

    /// Evens from the Euclid construction over Lucas–Lehmer exponents, odds from
    /// a segmented σ scan restricted to odd `n`.
    pub fn generator_scan(&self, limit: u64) -> Result<Vec<Natural>> {
        let mut found = even_perfects_up_to(limit)?;
        scan_sigma(1, limit, true, |n, s| {
            if s == 2 * n {
                found.push(Natural::from(n));
            }
        })?;
        found.sort();
        Ok(found)
    }
}

/// Even perfect numbers `<= limit` generated as `2^(k-1) (2^k - 1)` for prime `2^k - 1`.
pub(crate) fn even_perfects_up_to(limit: u64) -> Result<Vec<Natural>> {
    let bound = Natural::from(limit);
    let mut out = Vec::new();
    for k in 2u64.. {
        let candidate = &Natural::power_of_two(k - 1) * &(Natural::power_of_two(k) - 1u64);
        if candidate > bound {
            break;
        }
        match euclid_perfect(k) {
            Ok(form) => out.push(form.n),
            Err(Error::CompositeMersenne(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// [`PerfectEnumerator::perfect_up_to`] with the default memory cap in production mode.
pub fn perfect_up_to(limit: u64) -> Result<Vec<Natural>> {
    PerfectEnumerator::default().perfect_up_to(limit)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ns(vs: &[u64]) -> Vec<Natural> {
        vs.iter().copied().map(Natural::from).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(perfect_up_to(10_000).unwrap(), ns(&[6, 28, 496, 8128]));
        assert_eq!(perfect_up_to(5).unwrap(), Vec::<Natural>::new());
        assert_eq!(perfect_up_to(6).unwrap(), ns(&[6]));
        assert!(perfect_up_to(0).is_err());
    }

    #[test]
    fn strategies_agree() {
        let e = PerfectEnumerator::cross_check();
        for limit in [1, 5, 6, 27, 28, 495, 496, 10_000, 200_000] {
            let sieve = e.sieve_scan(limit).unwrap();
            assert_eq!(sieve, e.generator_scan(limit).unwrap(), "limit {limit}");
            assert_eq!(sieve, e.perfect_up_to(limit).unwrap());
        }
    }

    #[test]
    fn small_cap_switches_strategy() {
        let tiny = SieveConfig {
            memory_cap_bytes: 1024,
        };
        let production = PerfectEnumerator::new(tiny, EnumerationMode::Production);
        assert_eq!(
            production.perfect_up_to(10_000).unwrap(),
            ns(&[6, 28, 496, 8128])
        );
        // the sieve strategy falls back to the segmented scan instead of erroring
        let cross = PerfectEnumerator::new(tiny, EnumerationMode::CrossCheck);
        assert_eq!(
            cross.perfect_up_to(10_000).unwrap(),
            ns(&[6, 28, 496, 8128])
        );
    }

    #[test]
    fn even_generator() {
        assert_eq!(even_perfects_up_to(8128).unwrap(), ns(&[6, 28, 496, 8128]));
        assert_eq!(even_perfects_up_to(8127).unwrap(), ns(&[6, 28, 496]));
        assert_eq!(
            even_perfects_up_to(u64::MAX).unwrap().last(),
            Some(&Natural::from(2_305_843_008_139_952_128u64))
        );
    }
}
