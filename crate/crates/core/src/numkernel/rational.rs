use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{gcd_biguint, Natural};
use crate::error::{Error, Result};

/// Exact signed fraction, always in lowest terms with a positive denominator.
///
/// Because the representation is canonical, derived equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational {
    numer: BigInt,
    denom: BigUint,
}

impl Rational {
    /// Builds `numer / denom` and reduces it.
    pub fn new(numer: BigInt, denom: Natural) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(numer, denom.into_biguint()))
    }

    fn reduce(numer: BigInt, denom: BigUint) -> Self {
        let g = gcd_biguint(numer.magnitude(), &denom);
        if g.is_one() || g.is_zero() {
            return Self::raw(numer, denom);
        }
        let mag = numer.magnitude() / &g;
        Self::raw(BigInt::from_biguint(numer.sign(), mag), denom / g)
    }

    fn raw(numer: BigInt, denom: BigUint) -> Self {
        if numer.is_zero() {
            return Rational {
                numer: BigInt::zero(),
                denom: BigUint::one(),
            };
        }
        Rational { numer, denom }
    }

    pub fn zero() -> Self {
        Self::raw(BigInt::zero(), BigUint::one())
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(v: i64) -> Self {
        Self::raw(BigInt::from(v), BigUint::one())
    }

    pub fn from_natural(n: &Natural) -> Self {
        Self::raw(BigInt::from(n.as_biguint().clone()), BigUint::one())
    }

    /// `1 / n`.
    pub fn recip_of(n: &Natural) -> Result<Self> {
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::raw(BigInt::one(), n.as_biguint().clone()))
    }

    pub fn numer(&self) -> &BigInt {
        &self.numer
    }

    pub fn denom(&self) -> Natural {
        Natural::from_biguint(self.denom.clone())
    }

    pub fn denom_ref(&self) -> &BigUint {
        &self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.numer.is_negative()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let sign = self.numer.sign();
        Ok(Self::raw(
            BigInt::from_biguint(sign, self.denom.clone()),
            self.numer.magnitude().clone(),
        ))
    }

    /// Exact division; fails when `rhs` is zero.
    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational> {
        Ok(self * &rhs.recip()?)
    }

    fn add_signed(&self, rhs: &Rational, negate_rhs: bool) -> Rational {
        let rhs_numer = if negate_rhs {
            -&rhs.numer
        } else {
            rhs.numer.clone()
        };
        // Henrici: with g = gcd(b, d), a/b + c/d = t / (b/g * d/g2) where
        // t = a*(d/g) + c*(b/g) and g2 = gcd(t, g). Only small gcds are taken when
        // one denominator is small.
        let g = gcd_biguint(&self.denom, &rhs.denom);
        if g.is_one() {
            let numer = &self.numer * BigInt::from(rhs.denom.clone())
                + rhs_numer * BigInt::from(self.denom.clone());
            return Self::raw(numer, &self.denom * &rhs.denom);
        }
        let b_g = &self.denom / &g;
        let d_g = &rhs.denom / &g;
        let t = &self.numer * BigInt::from(d_g.clone()) + rhs_numer * BigInt::from(b_g.clone());
        let g2 = gcd_biguint(t.magnitude(), &g);
        let numer = if g2.is_one() {
            t
        } else {
            BigInt::from_biguint(t.sign(), t.magnitude() / &g2)
        };
        Self::raw(numer, b_g * (d_g * (&g / &g2)))
    }

    fn mul_impl(&self, rhs: &Rational) -> Rational {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let g1 = gcd_biguint(self.numer.magnitude(), &rhs.denom);
        let g2 = gcd_biguint(rhs.numer.magnitude(), &self.denom);
        let a = self.numer.magnitude() / &g1;
        let c = rhs.numer.magnitude() / &g2;
        let sign = if self.numer.sign() == rhs.numer.sign() {
            Sign::Plus
        } else {
            Sign::Minus
        };
        Self::raw(
            BigInt::from_biguint(sign, a * c),
            (&self.denom / &g2) * (&rhs.denom / &g1),
        )
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        // a/b vs c/d with b, d > 0  <=>  a*d vs c*b
        let lhs = &self.numer * BigInt::from(other.denom.clone());
        let rhs = &other.numer * BigInt::from(self.denom.clone());
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer, self.denom)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `"num/den"` or a bare integer; the result is reduced.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            input: s.to_owned(),
            what: "an exact fraction",
        };
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let digits = num.strip_prefix('-').unwrap_or(num);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let numer = BigInt::parse_bytes(num.as_bytes(), 10).ok_or_else(bad)?;
        let denom: Natural = den.parse().map_err(|_| bad())?;
        Rational::new(numer, denom)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Add<&Rational> for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        self.add_signed(rhs, false)
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        self.add_signed(&rhs, false)
    }
}

impl Sub<&Rational> for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        self.add_signed(rhs, true)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        self.add_signed(&rhs, true)
    }
}

impl Mul<&Rational> for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        self.mul_impl(rhs)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        self.mul_impl(&rhs)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational::raw(-&self.numer, self.denom.clone())
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational::raw(-self.numer, self.denom)
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| &acc + &x)
    }
}

impl<'a> std::iter::Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| &acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&q("1/6") + &q("1/28"), q("17/84"));
        assert_eq!(&q("2") - &q("1/8"), q("15/8"));
        assert_eq!(&q("3/4") * &q("4/3"), q("1/1"));
        assert_eq!(q("3/4").checked_div(&q("3/8")).unwrap(), q("2"));
        assert_eq!(
            q("1/2").checked_div(&Rational::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn comparison_examples() {
        assert_eq!(q("17/84").cmp(&q("2/1")), Ordering::Less);
        assert_eq!(q("15/8").cmp(&q("15/8")), Ordering::Equal);
        // 49*3 = 147 < 180 = 36*5
        assert_eq!(q("49/36").cmp(&q("5/3")), Ordering::Less);
        assert_eq!(q("-1/2").cmp(&q("-1/3")), Ordering::Less);
    }

    #[test]
    fn parsing_normalizes() {
        assert_eq!(q("6/8").to_string(), "3/4");
        assert_eq!(q("0/5").to_string(), "0/1");
        assert_eq!(q("-4/6").to_string(), "-2/3");
        assert_eq!(q("7").to_string(), "7/1");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("1/-2".parse::<Rational>().is_err());
        assert!("1.5".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
        assert!("-".parse::<Rational>().is_err());
    }

    #[test]
    fn henrici_paths_stay_reduced() {
        // shared denominators, cancellation through g2
        assert_eq!(&q("1/6") + &q("1/3"), q("1/2"));
        assert_eq!(&q("1/4") + &q("3/4"), q("1"));
        assert_eq!(&q("5/12") - &q("1/12"), q("1/3"));
        assert_eq!(&q("1/6") - &q("1/6"), Rational::zero());
    }
}
