//! Executable case analysis showing that `A^+` at `n = 3` has no nonzero
//! degree-1 element with zero square.
//!
//! Writing `x = sum a_i X_i`, the square of `x` vanishes iff
//! `P_Y = sum a_i^2 - 2 sum_{2<=i<j} a_i a_j` and
//! `P_i = a_i (a_1 + a_i - sum_{j>=2} a_j)` (`i = 2..6`) all vanish. The
//! first step checks that these forms span the same space as the
//! coefficients of `x^2` reduced in the ring. The cases are then indexed by
//! the support of `(a_2..a_6)`.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::symbolic::SymbolicElement;
use crate::chow::ChowElement;
use crate::error::Result;
use crate::exactpoly::{MultiPoly, SubsetIndex};
use crate::linalg::Echelon;
use crate::presentation::QuotientRing;
use crate::rational::{display_rational, int, Rational};
use crate::stability::{Sign, Stability};

const M: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseStatus {
    Closed,
    Open,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateCase {
    pub support: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch: Option<String>,
    pub status: CaseStatus,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    /// The hand-written forms span the same space as the ring-derived ones.
    pub premise: bool,
    pub cases: Vec<CertificateCase>,
    pub verdict: String,
}

impl Certificate {
    pub fn all_closed(&self) -> bool {
        self.cases.iter().all(|c| c.status == CaseStatus::Closed)
    }

    pub fn holds(&self) -> bool {
        self.premise && self.all_closed()
    }

    pub fn open_cases(&self) -> Vec<&CertificateCase> {
        self.cases.iter().filter(|c| c.status == CaseStatus::Open).collect()
    }
}

fn a(i: usize) -> MultiPoly {
    MultiPoly::var(M, i - 1)
}

fn y_form() -> MultiPoly {
    let squares = (1..=M).fold(MultiPoly::zero(M), |acc, i| &acc + &a(i).pow(2));
    let mixed = (2..=M)
        .flat_map(|i| (i + 1..=M).map(move |j| (i, j)))
        .fold(MultiPoly::zero(M), |acc, (i, j)| &acc + &(&a(i) * &a(j)));
    &squares - &mixed.scale(&int(2))
}

/// `a_1 + a_i - sum_{j>=2} a_j`.
fn linear_condition(i: usize) -> MultiPoly {
    let tail = (2..=M).fold(MultiPoly::zero(M), |acc, j| &acc + &a(j));
    &(&a(1) + &a(i)) - &tail
}

fn hand_forms() -> Vec<MultiPoly> {
    std::iter::once(y_form()).chain((2..=M).map(|i| &a(i) * &linear_condition(i))).collect()
}

/// Coefficients of the reduced square of the generic degree-1 element.
fn ring_forms() -> Result<Vec<MultiPoly>> {
    let theta = Stability::theta_pm(3, Sign::Plus, None)?;
    let ring = QuotientRing::build(&theta, 2)?;
    let square = SymbolicElement::generic_linear(M).pow(2);
    let reduced = square.map_linear(|mon| ring.normal_form(&ChowElement::monomial(M, mon, Rational::one())))?;
    Ok(reduced.terms().values().cloned().collect())
}

fn quadratic_span(forms: &[MultiPoly]) -> Echelon {
    let exponents: Vec<Vec<u32>> = (0..M)
        .flat_map(|i| (i..M).map(move |j| (i, j)))
        .map(|(i, j)| {
            let mut e = vec![0; M];
            e[i] += 1;
            e[j] += 1;
            e
        })
        .collect();
    let rows: Vec<Vec<Rational>> = forms
        .iter()
        .map(|f| {
            assert!(f.terms().keys().all(|e| e.iter().sum::<u32>() == 2), "forms must be quadratic");
            exponents.iter().map(|e| f.coefficient(e)).collect()
        })
        .collect();
    Echelon::from_rows(exponents.len(), rows.iter().map(Vec::as_slice))
}

fn linear_row(p: &MultiPoly) -> Vec<Rational> {
    (0..M)
        .map(|i| {
            let mut e = vec![0; M];
            e[i] = 1;
            p.coefficient(&e)
        })
        .collect()
}

fn empty_support_cases() -> Vec<CertificateCase> {
    let mut restricted = y_form();
    for j in 2..=M {
        restricted = restricted.substitute(j - 1, &MultiPoly::zero(M));
    }
    let forced = restricted == a(1).pow(2);
    vec![
        CertificateCase {
            support: vec![],
            branch: Some("a1 = 0".into()),
            status: CaseStatus::Closed,
            reason: "every coefficient vanishes, so x = 0".into(),
        },
        CertificateCase {
            support: vec![],
            branch: Some("a1 != 0".into()),
            status: if forced { CaseStatus::Closed } else { CaseStatus::Open },
            reason: if forced {
                "Y-coefficient restricts to a1^2, nonzero".into()
            } else {
                format!("Y-coefficient restricts to {restricted:?}, expected a1^2")
            },
        },
    ]
}

fn support_case(support: SubsetIndex) -> CertificateCase {
    let k = support.len();
    let open =
        |reason: String| CertificateCase { support: support.to_vec(), branch: None, status: CaseStatus::Open, reason };
    // a_j = 0 off the support, and a_i != 0 turns P_i = 0 into a linear condition.
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for j in (2..=M).filter(|&j| !support.contains(j)) {
        rows.push(linear_row(&a(j)));
    }
    for i in support.members() {
        rows.push(linear_row(&linear_condition(i)));
    }
    let system = Echelon::from_rows(M, rows.iter().map(Vec::as_slice));
    let kernel = system.kernel_basis();
    if kernel.len() != 1 {
        return open(format!("solution space has dimension {}", kernel.len()));
    }
    let first = support.members().next().expect("nonempty support");
    let pivot = kernel[0][first - 1].clone();
    if pivot.is_zero() {
        return open("solutions vanish on the support".into());
    }
    let direction: Vec<Rational> = kernel[0].iter().map(|v| v / &pivot).collect();
    let expected: Vec<Rational> = (1..=M)
        .map(|i| match i {
            1 => int(k as i64 - 1),
            i if support.contains(i) => int(1),
            _ => Rational::zero(),
        })
        .collect();
    if direction != expected {
        return open(format!("unexpected solution direction {direction:?}"));
    }
    let value = y_form().evaluate(&direction);
    if value.is_zero() {
        return open("Y-coefficient vanishes along the solution line".into());
    }
    CertificateCase {
        support: support.to_vec(),
        branch: None,
        status: CaseStatus::Closed,
        reason: format!(
            "a_i = c on the support and a1 = {}c; Y-coefficient = {}c^2, nonzero for c != 0",
            k - 1,
            display_rational(&value)
        ),
    }
}

/// Run the full case analysis for `A^+` at `n = 3`.
pub fn no_square_zero_certificate_plus_n3() -> Result<Certificate> {
    let premise = {
        let derived = quadratic_span(&ring_forms()?);
        let hand = quadratic_span(&hand_forms());
        derived.contains_span(&hand) && hand.contains_span(&derived)
    };
    let mut supports: Vec<SubsetIndex> = SubsetIndex::full(M).without(1).all_subsets().collect();
    supports.retain(|s| !s.is_empty());
    supports.sort_by(|x, y| x.len().cmp(&y.len()).then(x.cmp(y)));
    let mut cases = empty_support_cases();
    cases.extend(supports.into_par_iter().map(support_case).collect::<Vec<_>>());
    let holds = premise && cases.iter().all(|c| c.status == CaseStatus::Closed);
    let verdict = if holds {
        "no nonzero 2-nilpotent homogeneous element of degree 1 in A+".to_string()
    } else if !premise {
        "certificate failed: equations do not match the ring".to_string()
    } else {
        "certificate failed: open cases remain".to_string()
    };
    Ok(Certificate { premise, cases, verdict })
}
