//! Structure of perfect numbers as executable constructions.
//!
//! * [`euclid_perfect`] builds `2^(k-1) (2^k - 1)` from a Mersenne prime exponent.
//! * [`euler_decompose_even`] recovers `k` from an even perfect number via its 2-adic
//!   valuation and checks the Mersenne shape of the odd part.
//! * [`euler_decompose_odd`] splits an odd `n` into `p^i · m²`: factor, select the
//!   single prime with an odd exponent, halve every remaining exponent into `m`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factorization::{
    is_prime, lucas_lehmer, odd_split, prime_power_factors, PrimePowerFactorization,
};
use crate::numkernel::{pow_biguint, Natural};
use crate::sigma::is_perfect;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct EvenPerfectForm {
    pub k: u64,
    pub mersenne: Natural,
    pub n: Natural,
}

impl EvenPerfectForm {
    /// The 2-adic valuation of `n`, i.e. `k - 1`.
    pub fn two_adic(&self) -> u64 {
        self.k - 1
    }
}

/// `n = p^i · m²` with `p` an odd prime, `i` odd, `m` odd and coprime to `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct OddDecomposition {
    pub p: Natural,
    pub i: u64,
    pub m: Natural,
}

impl OddDecomposition {
    pub fn reconstruct(&self) -> Natural {
        let prime_part = Natural::from_biguint(pow_biguint(self.p.as_biguint(), self.i));
        &prime_part * &(&self.m * &self.m)
    }

    /// The key the uniqueness monitor files this number under.
    pub fn hornfeck_key(&self) -> &Natural {
        &self.m
    }
}

/// Euclid's construction for a prime `2^k - 1`; fails if the Mersenne number is composite.
pub fn euclid_perfect(k: u64) -> Result<EvenPerfectForm> {
    if !lucas_lehmer(k)? {
        return Err(Error::CompositeMersenne(k));
    }
    let mersenne = Natural::power_of_two(k) - 1u64;
    let n = &Natural::power_of_two(k - 1) * &mersenne;
    if !is_perfect(&n)? {
        return Err(Error::StructureViolation(format!(
            "Euclid construction for k = {k} gave {n}, which is not perfect"
        )));
    }
    Ok(EvenPerfectForm { k, mersenne, n })
}

pub fn euler_decompose_even(n: &Natural) -> Result<EvenPerfectForm> {
    if n.is_zero() {
        return Err(Error::ZeroInput {
            op: "euler_decompose_even",
        });
    }
    if n.is_odd() {
        return Err(Error::NotEven(n.clone()));
    }
    if !is_perfect(n)? {
        return Err(Error::NotPerfect(n.clone()));
    }
    let split = odd_split(n)?;
    let k = split.two_adic + 1;
    let mersenne = Natural::power_of_two(k) - 1u64;
    if split.odd_part != mersenne {
        return Err(Error::StructureViolation(format!(
            "odd part {} of even perfect {n} is not 2^{k} - 1",
            split.odd_part
        )));
    }
    if !is_prime(&mersenne)? {
        return Err(Error::StructureViolation(format!(
            "odd part 2^{k} - 1 of even perfect {n} is composite"
        )));
    }
    let form = euclid_perfect(k)?;
    if form.n != *n {
        return Err(Error::StructureViolation(format!(
            "Euclid construction for k = {k} gave {} instead of {n}",
            form.n
        )));
    }
    Ok(form)
}

/// The unique `(prime, exponent)` pair whose exponent is odd.
pub fn find_odd_exponent_pair(f: &PrimePowerFactorization) -> Result<(Natural, u64)> {
    let mut odd = f.pairs().iter().filter(|(_, e)| e % 2 == 1);
    let first = odd.next().ok_or(Error::NoOddExponent)?;
    let extra = odd.count();
    if extra > 0 {
        return Err(Error::MultipleOddExponents { count: extra + 1 });
    }
    Ok(first.clone())
}

/// `n = p^i · m²` for odd `n` whose factorization has exactly one odd exponent.
///
/// Perfection is not required; any `n` of this shape decomposes.
pub fn euler_decompose_odd(n: &Natural) -> Result<OddDecomposition> {
    if n.is_zero() {
        return Err(Error::ZeroInput {
            op: "euler_decompose_odd",
        });
    }
    if n.is_even() {
        return Err(Error::NotOdd(n.clone()));
    }
    if n.is_one() {
        return Err(Error::UnitHasNoPrimePart);
    }
    let factors = prime_power_factors(n)?;
    let (p, i) = find_odd_exponent_pair(&factors)?;
    if p == 2u64 {
        return Err(Error::StructureViolation(format!(
            "odd {n} selected the prime 2"
        )));
    }
    let m = factors
        .pairs()
        .iter()
        .filter(|(q, _)| *q != p)
        .map(|(q, e)| Natural::from_biguint(pow_biguint(q.as_biguint(), e / 2)))
        .product();
    let decomposition = OddDecomposition { p, i, m };
    if decomposition.reconstruct() != *n {
        return Err(Error::StructureViolation(format!(
            "p^i m^2 = {} does not reconstruct {n}",
            decomposition.reconstruct()
        )));
    }
    Ok(decomposition)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> Natural {
        Natural::from(v)
    }

    fn factors(pairs: &[(u64, u64)]) -> PrimePowerFactorization {
        PrimePowerFactorization::from_pairs(pairs.iter().map(|&(p, e)| (n(p), e)).collect())
            .unwrap()
    }

    #[test]
    fn euclid_examples() {
        assert_eq!(euclid_perfect(2).unwrap().n, n(6));
        assert_eq!(euclid_perfect(5).unwrap().n, n(496));
        let f = euclid_perfect(13).unwrap();
        assert_eq!(f.n, n(4096 * 8191));
        assert_eq!(f.n, n(33_550_336));
        assert_eq!(f.mersenne, n(8191));
        assert_eq!(euclid_perfect(11), Err(Error::CompositeMersenne(11)));
        assert_eq!(euclid_perfect(4), Err(Error::CompositeMersenne(4)));
        assert_eq!(euclid_perfect(1), Err(Error::ExponentTooSmall(1)));
    }

    #[test]
    fn euclid_wide() {
        let f = euclid_perfect(89).unwrap();
        assert_eq!(f.n.bits(), 177);
        assert_eq!(euler_decompose_even(&f.n).unwrap(), f);
    }

    #[test]
    fn euler_even_examples() {
        let f = euler_decompose_even(&n(28)).unwrap();
        assert_eq!((f.k, f.mersenne.clone()), (3, n(7)));
        let f = euler_decompose_even(&n(6)).unwrap();
        assert_eq!((f.k, f.mersenne.clone()), (2, n(3)));
        let f = euler_decompose_even(&n(8128)).unwrap();
        assert_eq!((f.k, f.mersenne.clone(), f.two_adic()), (7, n(127), 6));
    }

    #[test]
    fn euler_even_errors() {
        assert_eq!(euler_decompose_even(&n(27)), Err(Error::NotEven(n(27))));
        assert_eq!(euler_decompose_even(&n(12)), Err(Error::NotPerfect(n(12))));
        assert!(euler_decompose_even(&n(0)).is_err());
    }

    #[test]
    fn odd_pair_examples() {
        assert_eq!(
            find_odd_exponent_pair(&factors(&[(3, 3), (5, 2)])).unwrap(),
            (n(3), 3)
        );
        assert_eq!(
            find_odd_exponent_pair(&factors(&[(7, 1)])).unwrap(),
            (n(7), 1)
        );
        assert_eq!(
            find_odd_exponent_pair(&factors(&[(3, 2), (5, 2)])),
            Err(Error::NoOddExponent)
        );
        assert_eq!(
            find_odd_exponent_pair(&factors(&[(3, 1), (5, 3), (7, 2)])),
            Err(Error::MultipleOddExponents { count: 2 })
        );
    }

    #[test]
    fn euler_odd_examples() {
        let d = euler_decompose_odd(&n(675)).unwrap();
        assert_eq!(
            d,
            OddDecomposition {
                p: n(3),
                i: 3,
                m: n(5)
            }
        );
        let d = euler_decompose_odd(&n(7)).unwrap();
        assert_eq!(
            d,
            OddDecomposition {
                p: n(7),
                i: 1,
                m: n(1)
            }
        );
        // 33075 = 3^3 5^2 7^2
        assert_eq!(27 * 25 * 49, 33075);
        let d = euler_decompose_odd(&n(33075)).unwrap();
        assert_eq!(
            d,
            OddDecomposition {
                p: n(3),
                i: 3,
                m: n(35)
            }
        );
        assert_eq!(d.hornfeck_key(), &n(35));
    }

    #[test]
    fn euler_odd_errors() {
        assert_eq!(euler_decompose_odd(&n(10)), Err(Error::NotOdd(n(10))));
        assert_eq!(euler_decompose_odd(&n(1)), Err(Error::UnitHasNoPrimePart));
        assert_eq!(euler_decompose_odd(&n(225)), Err(Error::NoOddExponent));
        assert_eq!(
            euler_decompose_odd(&n(15)),
            Err(Error::MultipleOddExponents { count: 2 })
        );
    }
}
