use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::bring::{random_rational, BRing};
use super::certificate::{no_square_zero_certificate_plus_n3, Certificate};
use super::{square_in_quotient, LinearForm};
use crate::chow::ChowElement;
use crate::error::{Error, Result};
use crate::exactpoly::MultiPoly;
use crate::presentation::QuotientRing;
use crate::rational::{int, Rational};
use crate::stability::{Sign, Stability, MAX_STABILITY_ARITY};

/// Largest `n` for which Poincaré polynomials are computed in a report.
pub const POINCARE_GUARD: usize = 5;
/// Samples drawn per property in the `B`-ring evidence.
pub const SAMPLE_COUNT: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "rings distinguished")]
    Distinguished,
    #[serde(rename = "inconclusive at this n")]
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Distinguished => "rings distinguished",
            Verdict::Inconclusive => "inconclusive at this n",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoincareComparison {
    pub plus: Option<Vec<usize>>,
    pub minus: Option<Vec<usize>>,
    pub equal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareZeroEvidence {
    pub witness: LinearForm,
    pub square_in_minus: ChowElement,
    pub square_in_plus: ChowElement,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HyperplaneResult {
    pub normal: LinearForm,
    pub vanishes: bool,
}

/// Every hyperplane inside the `(n-1)`-nilpotent locus of `B^+` must divide
/// one fixed coefficient of `a^{n-1}`; this records that the coefficient
/// factors as expected and that none of its factors works.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorCheck {
    pub coefficient_factors: bool,
    pub candidates: Vec<HyperplaneResult>,
    pub no_hyperplane: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleEvidence {
    pub count: usize,
    pub minus_vanishing_with_a1_zero: usize,
    pub plus_nonvanishing_generic: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BRingEvidence {
    pub power: u32,
    pub e1_hyperplane_minus: bool,
    pub e1_hyperplane_plus: bool,
    pub plus_factors: FactorCheck,
    pub samples: SampleEvidence,
}

impl BRingEvidence {
    pub fn separates(&self) -> bool {
        self.e1_hyperplane_minus && !self.e1_hyperplane_plus && self.plus_factors.no_hyperplane
    }
}

/// An isomorphism `A^+ -> A^-` descends to `B^+ -> B^-` once all relations
/// have degree at least 3.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionPremise {
    pub min_generator_degree: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistinguishReport {
    pub schema: &'static str,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub poincare: PoincareComparison,
    pub square_zero: Option<SquareZeroEvidence>,
    pub b_ring: Option<BRingEvidence>,
    pub reduction_premise: ReductionPremise,
    pub verdict: Verdict,
    pub reason: String,
}

fn poincare(n: usize, plus: &Stability, minus: &Stability) -> Result<PoincareComparison> {
    if n > POINCARE_GUARD {
        return Ok(PoincareComparison {
            plus: None,
            minus: None,
            equal: None,
            note: Some(format!("skipped: computed only for n <= {POINCARE_GUARD}")),
        });
    }
    // the top nonzero degree is m - 3 = 2n - 3; one more degree shows the vanishing
    let top = 2 * n - 2;
    let (p, q) = rayon::join(|| QuotientRing::build(plus, top), || QuotientRing::build(minus, top));
    let (p, q) = (p?.poincare_polynomial(), q?.poincare_polynomial());
    let equal = p == q;
    Ok(PoincareComparison { plus: Some(p), minus: Some(q), equal: Some(equal), note: None })
}

fn square_zero(plus: &Stability, minus: &Stability) -> Result<SquareZeroEvidence> {
    let witness = LinearForm::from_integers(&[0, 1, 1, 1, 1, 0]);
    let square_in_minus = square_in_quotient(&QuotientRing::build(minus, 2)?, &witness)?;
    let square_in_plus = square_in_quotient(&QuotientRing::build(plus, 2)?, &witness)?;
    let certificate = no_square_zero_certificate_plus_n3()?;
    Ok(SquareZeroEvidence { witness, square_in_minus, square_in_plus, certificate })
}

fn factor_check(n: usize, ring: &BRing) -> Result<FactorCheck> {
    let m = 2 * n;
    let k = (n - 1) as u32;
    let (monomial, candidates) = super::bring::plus_factor_candidates(n);
    let factorial: Rational = (1..n as i64).map(int).product();
    let product = candidates.iter().fold(MultiPoly::constant(m, factorial), |acc, form| {
        let linear = (1..=m).fold(MultiPoly::zero(m), |s, i| &s + &MultiPoly::var(m, i - 1).scale(form.coefficient(i)));
        &acc * &linear
    });
    let coefficient_factors = ring.symbolic_power(k)?.coefficient(&monomial) == product;
    let candidates = candidates
        .into_par_iter()
        .map(|normal| ring.hyperplane_power_test(&normal, k).map(|vanishes| HyperplaneResult { normal, vanishes }))
        .collect::<Result<Vec<_>>>()?;
    let no_hyperplane = coefficient_factors && candidates.iter().all(|c| !c.vanishes);
    Ok(FactorCheck { coefficient_factors, candidates, no_hyperplane })
}

fn samples(n: usize, seed: u64, plus: &BRing, minus: &BRing) -> Result<SampleEvidence> {
    let m = 2 * n;
    let k = (n - 1) as u32;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let on_hyperplane: Vec<LinearForm> = (0..SAMPLE_COUNT)
        .map(|_| {
            let mut point: Vec<Rational> = (0..m).map(|_| random_rational(&mut rng)).collect();
            point[0] = int(0);
            LinearForm::new(point)
        })
        .collect();
    let generic: Vec<LinearForm> = (0..SAMPLE_COUNT)
        .map(|_| {
            let mut point: Vec<Rational> = Vec::with_capacity(m);
            while point.len() < m {
                let candidate = random_rational(&mut rng);
                if !point.contains(&candidate) {
                    point.push(candidate);
                }
            }
            LinearForm::new(point)
        })
        .collect();
    let vanishing =
        on_hyperplane.par_iter().map(|a| minus.power(a, k).map(|p| p.is_zero())).collect::<Result<Vec<_>>>()?;
    let nonvanishing =
        generic.par_iter().map(|a| plus.power(a, k).map(|p| !p.is_zero())).collect::<Result<Vec<_>>>()?;
    Ok(SampleEvidence {
        count: SAMPLE_COUNT,
        minus_vanishing_with_a1_zero: vanishing.into_iter().filter(|&v| v).count(),
        plus_nonvanishing_generic: nonvanishing.into_iter().filter(|&v| v).count(),
    })
}

/// `B`-ring evidence at `m = 2n` for `3 <= n <= 4`.
pub fn b_ring_evidence(n: usize, seed: u64) -> Result<BRingEvidence> {
    if !(3..=SYMBOLIC_N_GUARD).contains(&n) {
        return Err(Error::GuardExceeded(format!("B-ring evidence needs 3 <= n <= {SYMBOLIC_N_GUARD}, got {n}")));
    }
    let plus = Stability::theta_pm(n, Sign::Plus, None)?;
    let minus = Stability::theta_pm(n, Sign::Minus, None)?;
    b_ring(n, seed, &plus, &minus)
}

fn b_ring(n: usize, seed: u64, plus: &Stability, minus: &Stability) -> Result<BRingEvidence> {
    let k = (n - 1) as u32;
    let plus_ring = BRing::new(plus, n - 1)?;
    let minus_ring = BRing::new(minus, n - 1)?;
    let e1 = LinearForm::unit(2 * n, 1);
    Ok(BRingEvidence {
        power: k,
        e1_hyperplane_minus: minus_ring.hyperplane_power_test(&e1, k)?,
        e1_hyperplane_plus: plus_ring.hyperplane_power_test(&e1, k)?,
        plus_factors: factor_check(n, &plus_ring)?,
        samples: samples(n, seed, &plus_ring, &minus_ring)?,
    })
}

/// Compare `A^+` and `A^-` at `m = 2n` with every available invariant.
pub fn distinguish(n: usize, seed: u64) -> Result<DistinguishReport> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("n must be at least 2, got {n}")));
    }
    let m = 2 * n;
    if m > MAX_STABILITY_ARITY {
        return Err(Error::GuardExceeded(format!("m = {m} exceeds {MAX_STABILITY_ARITY}")));
    }
    let plus = Stability::theta_pm(n, Sign::Plus, None)?;
    let minus = Stability::theta_pm(n, Sign::Minus, None)?;
    let poincare = poincare(n, &plus, &minus)?;
    let square_zero = if n == 3 { Some(square_zero(&plus, &minus)?) } else { None };
    let b_ring = if (3..=SYMBOLIC_N_GUARD).contains(&n) { Some(b_ring(n, seed, &plus, &minus)?) } else { None };
    let reduction_premise = ReductionPremise { min_generator_degree: n - 1, holds: n >= 4 };

    let (verdict, reason) = match n {
        2 => (Verdict::Inconclusive, "no invariant here separates the rings at n = 2".to_string()),
        3 => {
            let evidence = square_zero.as_ref().expect("computed for n = 3");
            if evidence.square_in_minus.is_zero() && evidence.certificate.holds() {
                (Verdict::Distinguished, "A- has a nonzero degree-1 element with zero square; A+ has none".to_string())
            } else {
                (Verdict::Inconclusive, "square-zero evidence incomplete".to_string())
            }
        }
        _ if n <= SYMBOLIC_N_GUARD => {
            let evidence = b_ring.as_ref().expect("computed for n <= 4");
            if reduction_premise.holds && evidence.separates() {
                (
                    Verdict::Distinguished,
                    "an isomorphism would induce B+ = B-; the nilpotent locus in B- contains the hyperplane a1 = 0, the one in B+ contains no hyperplane".to_string(),
                )
            } else {
                (Verdict::Inconclusive, "B-ring evidence incomplete".to_string())
            }
        }
        _ => (Verdict::Inconclusive, format!("symbolic evidence limited to n <= {SYMBOLIC_N_GUARD}")),
    };
    Ok(DistinguishReport {
        schema: "chowcfg/1",
        n,
        m,
        seed,
        poincare,
        square_zero,
        b_ring,
        reduction_premise,
        verdict,
        reason,
    })
}

const SYMBOLIC_N_GUARD: usize = super::bring::SYMBOLIC_ARITY_GUARD / 2;
