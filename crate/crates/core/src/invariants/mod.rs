//! Ring invariants separating the two small resolutions at `m = 2n`:
//! square-zero degree-1 elements of `A^±`, and nilpotent loci of degree-1
//! elements in `B^± = A^±/(Y)`.

mod bring;
mod certificate;
mod distinguish;
mod symbolic;

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::chow::ChowElement;
use crate::error::{Error, Result};
use crate::presentation::QuotientRing;
use crate::rational::{self, display_rational, Rational};

pub use bring::{
    b_reduce, closed_form_power, hyperplane_power_test, plus_factor_candidates, power_in_b, sampled_hyperplane_test,
    BRing, ReductionPath, SYMBOLIC_ARITY_GUARD,
};
pub use certificate::{no_square_zero_certificate_plus_n3, CaseStatus, Certificate, CertificateCase};
pub use distinguish::{
    b_ring_evidence, distinguish, BRingEvidence, DistinguishReport, FactorCheck, HyperplaneResult, PoincareComparison,
    ReductionPremise, SampleEvidence, SquareZeroEvidence, Verdict, POINCARE_GUARD, SAMPLE_COUNT,
};
pub use symbolic::SymbolicElement;

/// `a = sum_i a_i X_i`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinearForm {
    #[serde(with = "rational::vec_as_string")]
    coefficients: Vec<Rational>,
}

impl LinearForm {
    pub fn new(coefficients: Vec<Rational>) -> Self {
        LinearForm { coefficients }
    }

    pub fn zero(m: usize) -> Self {
        LinearForm { coefficients: vec![Rational::zero(); m] }
    }

    /// The coordinate form `e_i`, 1-based.
    pub fn unit(m: usize, i: usize) -> Self {
        let mut out = Self::zero(m);
        out.coefficients[i - 1] = rational::int(1);
        out
    }

    pub fn from_integers(values: &[i64]) -> Self {
        LinearForm { coefficients: values.iter().map(|&v| rational::int(v)).collect() }
    }

    /// Comma-separated rationals, e.g. `0,1,1/2,-3`.
    pub fn parse(text: &str) -> Result<Self> {
        let coefficients =
            text.split(',').map(|part| rational::parse_rational(part.trim())).collect::<Result<Vec<_>>>()?;
        Ok(LinearForm { coefficients })
    }

    pub fn arity(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    /// `a_i`, 1-based.
    pub fn coefficient(&self, i: usize) -> &Rational {
        &self.coefficients[i - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }

    pub fn to_element(&self) -> ChowElement {
        ChowElement::linear(&self.coefficients)
    }
}

impl fmt::Debug for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coefficients.iter().map(display_rational).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// An element of `B = Q[X_1..X_m]/(X_i^2)`: a [`ChowElement`] without `Y`.
#[derive(Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct BElement(ChowElement);

impl BElement {
    pub fn new(el: ChowElement) -> Result<Self> {
        if el.terms().keys().any(|mon| mon.k > 0) {
            return Err(Error::InvalidInput(format!("{el} has Y-power terms")));
        }
        Ok(BElement(el))
    }

    /// Drop the `Y`-power terms.
    pub fn project(el: &ChowElement) -> Self {
        BElement(el.mod_y())
    }

    pub fn as_element(&self) -> &ChowElement {
        &self.0
    }

    pub fn into_element(self) -> ChowElement {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for BElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for BElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Normal form of `a^2` in the quotient.
pub fn square_in_quotient(ring: &QuotientRing, a: &LinearForm) -> Result<ChowElement> {
    if a.arity() != ring.arity() {
        return Err(Error::ArityMismatch { left: ring.arity(), right: a.arity() });
    }
    let el = a.to_element();
    ring.normal_form(&(&el * &el))
}

#[cfg(test)]
mod tests;
