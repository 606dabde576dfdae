//! Exact number theory of perfect numbers.
//!
//! * [`numkernel`]: unbounded naturals and lowest-terms rationals.
//! * [`factorization`]: primality, Lucas–Lehmer, prime-power factorization.
//! * [`sigma`]: the divisor sum σ, the perfect predicate, σ sieves and enumeration.
//! * [`structure`]: Euclid's construction and the even/odd structural decompositions.
//! * [`series`]: exact partial sums of `1/k` over perfect `k` and certificates that
//!   they stay below 4.

pub mod error;
pub mod factorization;
pub mod numkernel;
pub mod series;
pub mod sigma;
pub mod structure;

pub use error::{Error, Result};
pub use numkernel::{Natural, Rational};
