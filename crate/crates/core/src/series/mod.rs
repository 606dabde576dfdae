//! Exact partial sums of `1/k` over perfect `k`, and their bound certificates.
//!
//! Nothing here approximates. Every sum is an exact [`Rational`], and every
//! inequality in a [`BoundCertificate`] is decided by exact comparison.

mod certificate;
mod ledger;

pub use certificate::{
    certify, certify_bound, certify_bound_with, BoundCertificate, BranchCertificate,
    CertificateDocument, Conclusion, Relation, Step, CERTIFICATE_VERSION,
};
pub use ledger::HornfeckLedger;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numkernel::{Natural, Rational};
use crate::sigma::PerfectEnumerator;
use crate::structure::{
    euler_decompose_even, euler_decompose_odd, EvenPerfectForm, OddDecomposition,
};

/// Successive sums `Σ_{i=0}^{n} 1/2^i`, yielded as `(n, sum)` from `n = 0`.
#[derive(Debug, Clone)]
pub struct GeometricPartials {
    next_index: u64,
    term: Rational,
    sum: Rational,
}

pub fn geometric_partials() -> GeometricPartials {
    GeometricPartials {
        next_index: 0,
        term: Rational::one(),
        sum: Rational::zero(),
    }
}

impl Iterator for GeometricPartials {
    type Item = (u64, Rational);

    fn next(&mut self) -> Option<Self::Item> {
        self.sum = &self.sum + &self.term;
        let n = self.next_index;
        self.next_index += 1;
        self.term = &self.term * &Rational::recip_of(&Natural::from(2u64)).expect("nonzero");
        Some((n, self.sum.clone()))
    }
}

/// `2 − 1/2^n`.
pub fn geometric_closed_form(n: u64) -> Rational {
    let half_power = Rational::recip_of(&Natural::power_of_two(n)).expect("nonzero");
    &Rational::from_integer(2) - &half_power
}

/// `Σ_{i=0}^{n} 1/2^i`, summed term by term and checked against `2 − 1/2^n`.
pub fn geometric_partial(n: u64) -> Rational {
    let (_, sum) = geometric_partials().nth(n as usize).expect("unbounded");
    assert_eq!(
        sum,
        geometric_closed_form(n),
        "geometric identity failed at n = {n}"
    );
    sum
}

/// Successive sums `Σ_{m=1}^{n} 1/m²`, yielded as `(n, sum)` from `n = 1`.
#[derive(Debug, Clone)]
pub struct BaselPartials {
    next_index: u64,
    sum: Rational,
}

pub fn basel_partials() -> BaselPartials {
    BaselPartials {
        next_index: 1,
        sum: Rational::zero(),
    }
}

impl Iterator for BaselPartials {
    type Item = (u64, Rational);

    fn next(&mut self) -> Option<Self::Item> {
        let m = self.next_index;
        self.next_index += 1;
        let square = Natural::from(m) * m;
        self.sum = &self.sum + &Rational::recip_of(&square).expect("m >= 1");
        Some((m, self.sum.clone()))
    }
}

/// `2 − 1/n`, the induction bound for the Basel partial sums.
pub fn basel_bound(n: u64) -> Result<Rational> {
    let recip = Rational::recip_of(&Natural::from(n))?;
    Ok(&Rational::from_integer(2) - &recip)
}

/// `Σ_{m=1}^{n} 1/m²`, checked against `≤ 2 − 1/n`.
pub fn basel_partial(n: u64) -> Result<Rational> {
    if n == 0 {
        return Err(Error::ZeroInput {
            op: "basel_partial",
        });
    }
    let (_, sum) = basel_partials().nth(n as usize - 1).expect("unbounded");
    assert!(
        sum <= basel_bound(n)?,
        "Basel bound 2 - 1/n failed at n = {n}"
    );
    Ok(sum)
}

/// How a perfect term was decomposed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "parity", rename_all = "lowercase")]
pub enum TermForm {
    Even(EvenPerfectForm),
    Odd(OddDecomposition),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Term {
    pub n: Natural,
    pub reciprocal: Rational,
    pub form: TermForm,
}

/// `Σ 1/k` over perfect `k <= cutoff`, split by parity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialSum {
    pub cutoff: u64,
    pub total: Rational,
    pub even_part: Rational,
    pub odd_part: Rational,
    pub terms: Vec<Term>,
}

impl PartialSum {
    /// Sums the reciprocals of `perfects`, which must be ascending and `<= cutoff`.
    ///
    /// Even entries go through the even decomposition (which re-verifies perfection).
    /// Odd entries are decomposed as `p^i · m²` and filed in `ledger`; they are
    /// taken on trust as perfect, which lets tests drive the ledger with synthetic
    /// inputs.
    pub fn from_perfects(
        cutoff: u64,
        perfects: &[Natural],
        ledger: &HornfeckLedger,
    ) -> Result<Self> {
        let bound = Natural::from(cutoff);
        let mut terms = Vec::with_capacity(perfects.len());
        let mut even_part = Rational::zero();
        let mut odd_part = Rational::zero();
        for (idx, n) in perfects.iter().enumerate() {
            if *n > bound || (idx > 0 && perfects[idx - 1] >= *n) {
                return Err(Error::StructureViolation(format!(
                    "term {n} is out of order or above cutoff {cutoff}"
                )));
            }
            let reciprocal = Rational::recip_of(n)?;
            let form = if n.is_even() {
                even_part = &even_part + &reciprocal;
                TermForm::Even(euler_decompose_even(n)?)
            } else {
                odd_part = &odd_part + &reciprocal;
                let d = euler_decompose_odd(n)?;
                ledger.record(d.hornfeck_key(), n)?;
                TermForm::Odd(d)
            };
            terms.push(Term {
                n: n.clone(),
                reciprocal,
                form,
            });
        }
        Ok(PartialSum {
            cutoff,
            total: &even_part + &odd_part,
            even_part,
            odd_part,
            terms,
        })
    }
}

pub fn perfect_reciprocal_sum(cutoff: u64) -> Result<PartialSum> {
    perfect_reciprocal_sum_with(cutoff, &PerfectEnumerator::default())
}

pub fn perfect_reciprocal_sum_with(
    cutoff: u64,
    enumerator: &PerfectEnumerator,
) -> Result<PartialSum> {
    if cutoff == 0 {
        return Err(Error::ZeroInput {
            op: "perfect_reciprocal_sum",
        });
    }
    let perfects = enumerator.perfect_up_to(cutoff)?;
    PartialSum::from_perfects(cutoff, &perfects, &HornfeckLedger::new())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub cutoff: u64,
    pub total: Rational,
}

/// Partial sums at ascending cutoffs, verified nondecreasing and below 4.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonotoneReport {
    pub rows: Vec<ReportRow>,
    pub bound: Rational,
}

pub fn monotone_bounded_report(cutoffs: &[u64]) -> Result<MonotoneReport> {
    monotone_bounded_report_with(cutoffs, &PerfectEnumerator::default())
}

/// Enumerates once at the largest cutoff and reads every smaller cutoff off that
/// list, since the perfect numbers up to a smaller cutoff are a prefix of it.
pub fn monotone_bounded_report_with(
    cutoffs: &[u64],
    enumerator: &PerfectEnumerator,
) -> Result<MonotoneReport> {
    let ascending = cutoffs.windows(2).all(|w| w[0] < w[1]);
    let (Some(&first), Some(&last)) = (cutoffs.first(), cutoffs.last()) else {
        return Err(Error::CutoffsNotAscending);
    };
    if !ascending || first == 0 {
        return Err(Error::CutoffsNotAscending);
    }
    let all = enumerator.perfect_up_to(last)?;
    let ledger = HornfeckLedger::new();
    let bound = Rational::from_integer(4);
    let mut rows: Vec<ReportRow> = Vec::with_capacity(cutoffs.len());
    for &cutoff in cutoffs {
        let limit = Natural::from(cutoff);
        let upto = all.partition_point(|n| *n <= limit);
        let sum = PartialSum::from_perfects(cutoff, &all[..upto], &ledger)?;
        if let Some(prev) = rows.last() {
            if sum.total < prev.total {
                return Err(Error::MonotonicityViolation {
                    from: prev.cutoff,
                    to: cutoff,
                });
            }
        }
        if sum.total >= bound {
            return Err(Error::BoundViolation { cutoff });
        }
        rows.push(ReportRow {
            cutoff,
            total: sum.total,
        });
    }
    Ok(MonotoneReport { rows, bound })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn n(v: u64) -> Natural {
        Natural::from(v)
    }

    #[test]
    fn geometric_examples() {
        assert_eq!(geometric_partial(0), q("1"));
        assert_eq!(geometric_partial(3), q("15/8"));
        assert_eq!(geometric_partial(10), q("2047/1024"));
    }

    #[test]
    fn basel_examples() {
        assert_eq!(basel_partial(1).unwrap(), q("1"));
        assert_eq!(basel_partial(3).unwrap(), q("49/36"));
        assert_eq!(basel_partial(4).unwrap(), q("205/144"));
        assert!(basel_partial(0).is_err());
        assert_eq!(basel_bound(4).unwrap(), q("7/4"));
    }

    #[test]
    fn reciprocal_sum_examples() {
        assert_eq!(perfect_reciprocal_sum(5).unwrap().total, Rational::zero());
        let s = perfect_reciprocal_sum(10_000).unwrap();
        assert_eq!(s.odd_part, Rational::zero());
        assert_eq!(s.total, s.even_part);
        assert_eq!(s.terms.len(), 4);
        assert!(perfect_reciprocal_sum(0).is_err());
    }

    #[test]
    fn synthetic_odd_terms_hit_the_ledger() {
        // 675 = 3^3 5^2 and 175 = 7 5^2 share m = 5
        let ledger = HornfeckLedger::new();
        let err = PartialSum::from_perfects(1000, &[n(175), n(675)], &ledger).unwrap_err();
        assert_eq!(err.code(), "HORNFECK_VIOLATION");

        let ok = PartialSum::from_perfects(1000, &[n(7), n(675)], &HornfeckLedger::new()).unwrap();
        assert_eq!(ok.odd_part, &q("1/7") + &q("1/675"));
    }

    #[test]
    fn from_perfects_rejects_bad_lists() {
        let ledger = HornfeckLedger::new();
        assert!(PartialSum::from_perfects(10, &[n(28)], &ledger).is_err());
        assert!(PartialSum::from_perfects(100, &[n(28), n(6)], &ledger).is_err());
        assert_eq!(
            PartialSum::from_perfects(100, &[n(12)], &ledger),
            Err(Error::NotPerfect(n(12)))
        );
    }

    #[test]
    fn report_examples() {
        let r = monotone_bounded_report(&[5, 10, 100]).unwrap();
        let totals: Vec<_> = r.rows.iter().map(|row| row.total.clone()).collect();
        assert_eq!(totals, vec![q("0"), q("1/6"), &q("1/6") + &q("1/28")]);
        let r = monotone_bounded_report(&[1]).unwrap();
        assert_eq!(r.rows[0].total, Rational::zero());
    }

    #[test]
    fn report_rejects_bad_cutoffs() {
        assert_eq!(
            monotone_bounded_report(&[]),
            Err(Error::CutoffsNotAscending)
        );
        assert_eq!(
            monotone_bounded_report(&[10, 10]),
            Err(Error::CutoffsNotAscending)
        );
        assert_eq!(
            monotone_bounded_report(&[10, 5]),
            Err(Error::CutoffsNotAscending)
        );
        assert_eq!(
            monotone_bounded_report(&[0, 5]),
            Err(Error::CutoffsNotAscending)
        );
    }
}
