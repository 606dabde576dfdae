//! Certificates for `Σ_{perfect k <= cutoff} 1/k < 4`.
//!
//! The chain, per branch:
//!
//! ```text
//! even:  Σ 1/(2^i (2^(i+1) − 1))  <=  Σ 1/2^i  <=  Σ_{i=0}^{N} 1/2^i  <=  2 − 1/2^N  <  2
//! odd:   Σ 1/(p^i m²)             <=  Σ 1/m²   <=  Σ_{m=1}^{M} 1/m²   <=  2 − 1/M    <  2
//! total: even + odd  <  2 + 2 = 4
//! ```
//!
//! with `N = ⌊log2 cutoff⌋` and `M = ⌊√cutoff⌋`. Any even perfect `2^i (2^(i+1) − 1) <= cutoff`
//! has `i <= N`, and any odd perfect `p^i m² <= cutoff` has `m <= M`, so the relaxation
//! to the full geometric and Basel sums covers every possible term, not only the ones
//! found. Distinct even perfects have distinct `i`; distinct odd ones have distinct `m`
//! (enforced by the [`HornfeckLedger`](super::HornfeckLedger)).

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{
    basel_bound, basel_partial, geometric_closed_form, geometric_partial,
    perfect_reciprocal_sum_with, PartialSum, TermForm,
};
use crate::error::{Error, Result};
use crate::numkernel::{Natural, Rational};
use crate::sigma::PerfectEnumerator;

pub const CERTIFICATE_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Le,
    Lt,
}

impl Relation {
    pub fn admits(self, ordering: Ordering) -> bool {
        match self {
            Relation::Le => ordering != Ordering::Greater,
            Relation::Lt => ordering == Ordering::Less,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Lt => "<",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub label: String,
    pub lhs: Rational,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Step {
    fn new(label: impl Into<String>, lhs: Rational, relation: Relation, rhs: Rational) -> Self {
        Step {
            label: label.into(),
            lhs,
            relation,
            rhs,
        }
    }

    pub fn holds(&self) -> bool {
        self.relation.admits(self.lhs.cmp(&self.rhs))
    }

    fn check(&self) -> Result<()> {
        if self.holds() {
            Ok(())
        } else {
            Err(self.failure())
        }
    }

    fn failure(&self) -> Error {
        Error::CertificateFailure {
            label: self.label.clone(),
        }
    }
}

/// One parity branch: term-wise relaxations, then the chain from the branch sum to 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchCertificate {
    pub part: Rational,
    pub term_steps: Vec<Step>,
    pub chain: Vec<Step>,
}

impl BranchCertificate {
    fn validate(&self) -> Result<()> {
        for step in self.term_steps.iter().chain(&self.chain) {
            step.check()?;
        }
        let (Some(first), Some(last)) = (self.chain.first(), self.chain.last()) else {
            return Err(Error::CertificateFailure {
                label: "empty chain".to_owned(),
            });
        };
        // the term-wise steps must add up to the first link
        let term_lhs: Rational = self.term_steps.iter().map(|s| &s.lhs).sum();
        let term_rhs: Rational = self.term_steps.iter().map(|s| &s.rhs).sum();
        if first.lhs != self.part || term_lhs != first.lhs || term_rhs != first.rhs {
            return Err(first.failure());
        }
        for pair in self.chain.windows(2) {
            if pair[0].rhs != pair[1].lhs {
                return Err(pair[1].failure());
            }
        }
        let strict = self.chain.iter().any(|s| s.relation == Relation::Lt);
        if !strict || last.rhs != Rational::from_integer(2) {
            return Err(last.failure());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conclusion {
    pub total: Rational,
    pub relation: Relation,
    pub bound: Rational,
}

/// A checked trace of the inequality chain bounding the partial sum at `cutoff`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCertificate {
    pub cutoff: u64,
    pub geometric_index: u64,
    pub basel_index: u64,
    pub even: BranchCertificate,
    pub odd: BranchCertificate,
    pub total_step: Step,
    pub conclusion: Conclusion,
}

pub fn certify_bound(cutoff: u64) -> Result<BoundCertificate> {
    certify_bound_with(cutoff, &PerfectEnumerator::default())
}

pub fn certify_bound_with(cutoff: u64, enumerator: &PerfectEnumerator) -> Result<BoundCertificate> {
    certify(&perfect_reciprocal_sum_with(cutoff, enumerator)?)
}

/// Builds and validates the certificate for an already computed partial sum.
pub fn certify(sum: &PartialSum) -> Result<BoundCertificate> {
    let cutoff = sum.cutoff;
    if cutoff == 0 {
        return Err(Error::ZeroInput {
            op: "certify_bound",
        });
    }
    let geometric_index = cutoff.ilog2() as u64;
    let basel_index = cutoff.isqrt();
    let two = Rational::from_integer(2);

    let mut even_terms = Vec::new();
    let mut odd_terms = Vec::new();
    for term in &sum.terms {
        match &term.form {
            TermForm::Even(form) => {
                let i = form.two_adic();
                if i > geometric_index {
                    return Err(Error::CertificateFailure {
                        label: format!("even exponent {i} exceeds index {geometric_index}"),
                    });
                }
                even_terms.push(Step::new(
                    format!("even term: 1/{} <= 1/2^{i}", term.n),
                    term.reciprocal.clone(),
                    Relation::Le,
                    Rational::recip_of(&Natural::power_of_two(i))?,
                ));
            }
            TermForm::Odd(d) => {
                if d.m > Natural::from(basel_index) {
                    return Err(Error::CertificateFailure {
                        label: format!("odd key {} exceeds index {basel_index}", d.m),
                    });
                }
                odd_terms.push(Step::new(
                    format!("odd term: 1/{} <= 1/{}^2", term.n, d.m),
                    term.reciprocal.clone(),
                    Relation::Le,
                    Rational::recip_of(&(&d.m * &d.m))?,
                ));
            }
        }
    }

    let even_relaxed: Rational = even_terms.iter().map(|s| &s.rhs).sum();
    let geometric = geometric_partial(geometric_index);
    let geometric_closed = geometric_closed_form(geometric_index);
    let even = BranchCertificate {
        part: sum.even_part.clone(),
        term_steps: even_terms,
        chain: vec![
            Step::new(
                "even: sum of 1/(2^i (2^(i+1) - 1)) <= sum of 1/2^i",
                sum.even_part.clone(),
                Relation::Le,
                even_relaxed.clone(),
            ),
            Step::new(
                format!(
                    "even: sum of 1/2^i over distinct i <= sum_{{i=0}}^{{{geometric_index}}} 1/2^i"
                ),
                even_relaxed,
                Relation::Le,
                geometric.clone(),
            ),
            Step::new(
                format!(
                    "even: sum_{{i=0}}^{{{geometric_index}}} 1/2^i <= 2 - 1/2^{geometric_index}"
                ),
                geometric,
                Relation::Le,
                geometric_closed.clone(),
            ),
            Step::new(
                format!("even: 2 - 1/2^{geometric_index} < 2"),
                geometric_closed,
                Relation::Lt,
                two.clone(),
            ),
        ],
    };

    let odd_relaxed: Rational = odd_terms.iter().map(|s| &s.rhs).sum();
    let basel = basel_partial(basel_index)?;
    let basel_cap = basel_bound(basel_index)?;
    let odd = BranchCertificate {
        part: sum.odd_part.clone(),
        term_steps: odd_terms,
        chain: vec![
            Step::new(
                "odd: sum of 1/(p^i m^2) <= sum of 1/m^2",
                sum.odd_part.clone(),
                Relation::Le,
                odd_relaxed.clone(),
            ),
            Step::new(
                format!("odd: sum of 1/m^2 over distinct m <= sum_{{m=1}}^{{{basel_index}}} 1/m^2"),
                odd_relaxed,
                Relation::Le,
                basel.clone(),
            ),
            Step::new(
                format!("odd: sum_{{m=1}}^{{{basel_index}}} 1/m^2 <= 2 - 1/{basel_index}"),
                basel,
                Relation::Le,
                basel_cap.clone(),
            ),
            Step::new(
                format!("odd: 2 - 1/{basel_index} < 2"),
                basel_cap,
                Relation::Lt,
                two,
            ),
        ],
    };

    let bound = Rational::from_integer(4);
    let total_step = Step::new(
        "total: even + odd < 2 + 2 = 4",
        sum.total.clone(),
        Relation::Lt,
        bound.clone(),
    );
    let certificate = BoundCertificate {
        cutoff,
        geometric_index,
        basel_index,
        even,
        odd,
        total_step,
        conclusion: Conclusion {
            total: sum.total.clone(),
            relation: Relation::Lt,
            bound,
        },
    };
    certificate.validate()?;
    Ok(certificate)
}

impl BoundCertificate {
    /// Re-checks every step and that the steps compose into `total < 4`.
    pub fn validate(&self) -> Result<()> {
        self.even.validate()?;
        self.odd.validate()?;
        self.total_step.check()?;
        let four = Rational::from_integer(4);
        let composed = &self.even.part + &self.odd.part;
        if composed != self.conclusion.total
            || self.total_step.lhs != self.conclusion.total
            || self.total_step.rhs != four
            || self.total_step.relation != Relation::Lt
            || self.conclusion.bound != four
            || self.conclusion.relation != Relation::Lt
        {
            return Err(self.total_step.failure());
        }
        Ok(())
    }

    /// Every step in document order: even terms, even chain, odd terms, odd chain, total.
    pub fn steps(&self) -> impl Iterator<Item = &Step> {
        self.even
            .term_steps
            .iter()
            .chain(&self.even.chain)
            .chain(&self.odd.term_steps)
            .chain(&self.odd.chain)
            .chain(std::iter::once(&self.total_step))
    }

    pub fn to_document(&self) -> CertificateDocument {
        CertificateDocument {
            version: CERTIFICATE_VERSION,
            cutoff: Natural::from(self.cutoff),
            steps: self.steps().cloned().collect(),
            conclusion: self.conclusion.clone(),
        }
    }
}

/// Exported certificate. Every number is an exact `"num/den"` string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub version: u32,
    pub cutoff: Natural,
    pub steps: Vec<Step>,
    pub conclusion: Conclusion,
}

impl CertificateDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            input: e.to_string(),
            what: "a certificate document",
        })
    }

    /// Checks each exported step and the conclusion in isolation.
    pub fn steps_hold(&self) -> bool {
        self.steps.iter().all(Step::holds)
            && self
                .conclusion
                .relation
                .admits(self.conclusion.total.cmp(&self.conclusion.bound))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{perfect_reciprocal_sum, HornfeckLedger};

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn cutoff_one_is_trivial() {
        let c = certify_bound(1).unwrap();
        assert_eq!(c.even.part, Rational::zero());
        assert_eq!(c.odd.part, Rational::zero());
        assert_eq!((c.geometric_index, c.basel_index), (0, 1));
        assert_eq!(c.conclusion.total, Rational::zero());
        assert!(c.steps().all(Step::holds));
    }

    #[test]
    fn cutoff_ten_thousand() {
        let c = certify_bound(10_000).unwrap();
        assert_eq!(c.even.term_steps.len(), 4);
        assert_eq!(c.geometric_index, 13);
        assert_eq!(c.basel_index, 100);
        assert_eq!(c.conclusion.bound, q("4"));
        assert_eq!(c.even.term_steps[0].lhs, q("1/6"));
        assert_eq!(c.even.term_steps[0].rhs, q("1/2"));
        c.validate().unwrap();
    }

    #[test]
    fn tampering_is_caught() {
        let good = certify_bound(10_000).unwrap();

        let mut c = good.clone();
        c.even.chain[1].rhs = q("1/100");
        assert!(c.validate().is_err());

        let mut c = good.clone();
        c.total_step.relation = Relation::Le;
        c.total_step.rhs = q("5");
        assert!(c.validate().is_err());

        let mut c = good.clone();
        c.conclusion.total = q("1/7");
        assert!(c.validate().is_err());

        let mut c = good;
        c.odd.chain.pop();
        assert!(c.validate().is_err());
    }

    #[test]
    fn synthetic_odd_branch_certifies() {
        let ledger = HornfeckLedger::new();
        let sum = PartialSum::from_perfects(
            10_000,
            &[
                Natural::from(6u64),
                Natural::from(7u64),
                Natural::from(675u64),
            ],
            &ledger,
        )
        .unwrap();
        let c = certify(&sum).unwrap();
        assert_eq!(c.odd.term_steps.len(), 2);
        assert_eq!(c.odd.chain[0].rhs, &q("1/1") + &q("1/25"));
    }

    #[test]
    fn document_round_trip() {
        let c = certify_bound(100).unwrap();
        let doc = c.to_document();
        let text = doc.to_json();
        assert!(text.contains("\"relation\": \"le\""));
        assert!(text.contains("\"relation\": \"lt\""));
        let back = CertificateDocument::from_json(&text).unwrap();
        assert_eq!(back, doc);
        assert!(back.steps_hold());
        assert_eq!(back.cutoff, Natural::from(100u64));
    }

    #[test]
    fn sums_feed_certificates_unchanged() {
        let sum = perfect_reciprocal_sum(500).unwrap();
        let c = certify(&sum).unwrap();
        assert_eq!(c.conclusion.total, sum.total);
        assert_eq!(c.conclusion.total, &(&q("1/6") + &q("1/28")) + &q("1/496"));
    }
}
