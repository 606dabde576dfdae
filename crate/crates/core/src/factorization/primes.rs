//! Prime generation: a plain sieve for bounded ranges and an unbounded segmented one.

const SEGMENT: u64 = 1 << 15;

/// All primes `<= limit`, ascending.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

/// Unbounded ascending prime stream, sieved one segment at a time.
///
/// Sieving primes for later segments come from a nested stream that is only
/// started once the first segment runs out, so memory stays at one segment plus
/// the primes below the square root of the current position.
pub struct IncrementalPrimes {
    segment_hi: u64,
    current: Vec<u64>,
    pos: usize,
    base: Vec<u64>,
    base_source: Option<Box<IncrementalPrimes>>,
    base_peek: Option<u64>,
}

impl IncrementalPrimes {
    pub fn new() -> Self {
        IncrementalPrimes {
            segment_hi: SEGMENT,
            current: primes_up_to(SEGMENT - 1),
            pos: 0,
            base: Vec::new(),
            base_source: None,
            base_peek: None,
        }
    }

    fn advance_segment(&mut self) {
        let lo = self.segment_hi;
        let hi = lo.saturating_add(SEGMENT);
        self.segment_hi = hi;

        let source = self
            .base_source
            .get_or_insert_with(|| Box::new(IncrementalPrimes::new()));
        loop {
            let p = match self.base_peek.take() {
                Some(p) => p,
                None => source.next().expect("prime stream is unbounded"),
            };
            if (p as u128) * (p as u128) >= hi as u128 {
                self.base_peek = Some(p);
                break;
            }
            self.base.push(p);
        }

        let len = (hi - lo) as usize;
        let mut composite = vec![false; len];
        for &p in &self.base {
            let start = (p * p).max(lo.div_ceil(p) * p);
            let mut j = start;
            while j < hi {
                composite[(j - lo) as usize] = true;
                j += p;
            }
        }
        self.current.clear();
        self.current.extend(
            composite
                .iter()
                .enumerate()
                .filter(|(_, &c)| !c)
                .map(|(i, _)| lo + i as u64),
        );
        self.pos = 0;
    }
}

impl Default for IncrementalPrimes {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for IncrementalPrimes {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        while self.pos >= self.current.len() {
            if self.segment_hi == u64::MAX {
                return None;
            }
            self.advance_segment();
        }
        let p = self.current[self.pos];
        self.pos += 1;
        Some(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sieve() {
        assert_eq!(primes_up_to(1), Vec::<u64>::new());
        assert_eq!(primes_up_to(2), vec![2]);
        assert_eq!(primes_up_to(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn incremental_matches_plain_sieve_across_segments() {
        let limit = 5 * SEGMENT + 123;
        let expected = primes_up_to(limit);
        let got: Vec<u64> = IncrementalPrimes::new()
            .take_while(|&p| p <= limit)
            .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn incremental_reaches_past_nested_source() {
        // 10^6 needs sieving primes up to 1000, all from the nested stream's first segment;
        // the 78498th prime is 999983.
        let count = IncrementalPrimes::new()
            .take_while(|&p| p < 1_000_000)
            .count();
        assert_eq!(count, 78_498);
    }
}
