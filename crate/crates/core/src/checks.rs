//! Verification suites: each one runs a family of exact identities and
//! reports one line per check.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_integer::binomial;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::autgroup::{decompose, random_dense_matrix, signed_permutations};
use crate::chow::{ambient_hilbert, ChowElement};
use crate::error::{Error, Result};
use crate::exactpoly::{substitute_chow, SubsetIndex};
use crate::invariants::{
    b_ring_evidence, distinguish, no_square_zero_certificate_plus_n3, square_in_quotient, LinearForm, Verdict,
    SAMPLE_COUNT,
};
use crate::presentation::{relation_oracle, relation_r, relation_s, same_ideal, Ambient, GeneratorSet, QuotientRing};
use crate::rational::{int, rat};
use crate::stability::{Sign, Stability};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    LemmaRs,
    Recursions,
    Stability,
    Hilbert,
    Quotient,
    Minimality,
    Certificate,
    BRing,
    Aut,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::LemmaRs,
        Suite::Recursions,
        Suite::Stability,
        Suite::Hilbert,
        Suite::Quotient,
        Suite::Minimality,
        Suite::Certificate,
        Suite::BRing,
        Suite::Aut,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::LemmaRs => "lemma-rs",
            Suite::Recursions => "recursions",
            Suite::Stability => "stability",
            Suite::Hilbert => "hilbert",
            Suite::Quotient => "quotient",
            Suite::Minimality => "minimality",
            Suite::Certificate => "certificate",
            Suite::BRing => "b-ring",
            Suite::Aut => "aut",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|s| s.name() == text)
            .ok_or_else(|| Error::InvalidInput(format!("unknown suite {text:?}")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub label: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_us: Option<u64>,
}

impl CheckLine {
    fn new(label: impl Into<String>, passed: bool) -> Self {
        CheckLine { label: label.into(), passed, detail: None, elapsed_us: None }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    pub summary: String,
    pub checks: Vec<CheckLine>,
}

impl SuiteReport {
    fn from_checks(suite: Suite, checks: Vec<CheckLine>, success: &str) -> Self {
        let failures = checks.iter().filter(|c| !c.passed).count();
        let passed = failures == 0;
        let summary =
            if passed { success.to_string() } else { format!("{failures} of {} checks failed", checks.len()) };
        SuiteReport { suite, passed, summary, checks }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckLine> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteOptions {
    /// Restrict suites that sweep over `m` to this single value.
    pub m: Option<usize>,
    /// Seed for the sampled parts.
    pub seed: u64,
}

pub fn run_suite(suite: Suite, options: &SuiteOptions) -> Result<SuiteReport> {
    match suite {
        Suite::LemmaRs => lemma_rs(options),
        Suite::Recursions => recursions(options),
        Suite::Stability => stability(),
        Suite::Hilbert => hilbert(options),
        Suite::Quotient => quotient(),
        Suite::Minimality => minimality(options),
        Suite::Certificate => certificate(options),
        Suite::BRing => b_ring(options),
        Suite::Aut => aut(options),
    }
}

fn arities(options: &SuiteOptions, default: std::ops::RangeInclusive<usize>, limit: usize) -> Result<Vec<usize>> {
    match options.m {
        Some(m) if (3..=limit).contains(&m) => Ok(vec![m]),
        Some(m) => Err(Error::GuardExceeded(format!("this suite supports 3 <= m <= {limit}, got {m}"))),
        None => Ok(default.collect()),
    }
}

fn lemma_rs(options: &SuiteOptions) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    for m in arities(options, 3..=7, 10)? {
        let sets: Vec<SubsetIndex> = SubsetIndex::full(m).all_subsets().collect();
        let lines: Vec<CheckLine> = sets
            .into_par_iter()
            .map(|set| {
                let start = Instant::now();
                let (r, s) = relation_oracle(m, set);
                let r_ok = substitute_chow(&relation_r(m, set).lift()).map(|p| p == r).unwrap_or(false);
                let s_ok = substitute_chow(&relation_s(m, set).lift()).map(|p| p == s).unwrap_or(false);
                let mut line = CheckLine::new(format!("m={m} I={set}"), r_ok && s_ok);
                if !r_ok || !s_ok {
                    line = line.with_detail(format!("R {} S {}", ok_word(r_ok), ok_word(s_ok)));
                }
                line.elapsed_us = Some(start.elapsed().as_micros() as u64);
                line
            })
            .collect();
        checks.extend(lines);
    }
    Ok(SuiteReport::from_checks(Suite::LemmaRs, checks, "all oracle identities hold"))
}

fn ok_word(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "differs"
    }
}

fn recursions(options: &SuiteOptions) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    for m in arities(options, 3..=7, 10)? {
        let y = ChowElement::y(m);
        let sets: Vec<SubsetIndex> = SubsetIndex::full(m).all_subsets().filter(|s| !s.is_empty()).collect();
        let failures: Vec<String> = sets
            .into_par_iter()
            .flat_map_iter(|set| {
                let (r, s) = (relation_r(m, set), relation_s(m, set));
                let y = y.clone();
                set.members()
                    .filter_map(move |i| {
                        let rest = set.without(i);
                        let (r_rest, s_rest) = (relation_r(m, rest), relation_s(m, rest));
                        let xi = ChowElement::x(m, i);
                        let ok = r == &(&xi * &r_rest) + &s_rest && s == &(&xi * &s_rest) + &(&y * &r_rest);
                        (!ok).then(|| format!("I={set} i={i}"))
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        let count = m << (m - 1);
        let mut line = CheckLine::new(format!("m={m}: {count} identities"), failures.is_empty());
        if !failures.is_empty() {
            line = line.with_detail(failures.join(", "));
        }
        checks.push(line);
    }
    Ok(SuiteReport::from_checks(Suite::Recursions, checks, "all recursions hold"))
}

/// Forbidden subsets at `m = 2n`: `|I| > n`, plus the `n`-sets containing
/// `1` (for `theta+`) or avoiding it (for `theta-`).
fn closed_form_family(n: usize, sign: Option<Sign>) -> Vec<SubsetIndex> {
    let mut out: Vec<SubsetIndex> = SubsetIndex::full(2 * n)
        .all_subsets()
        .filter(|set| {
            let k = set.len();
            k > n
                || (k == n
                    && match sign {
                        None => false,
                        Some(Sign::Plus) => set.contains(1),
                        Some(Sign::Minus) => !set.contains(1),
                    })
        })
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

fn stability() -> Result<SuiteReport> {
    let mut checks = Vec::new();
    for n in 2..=5 {
        let canonical = Stability::canonical(2 * n)?;
        checks.push(CheckLine::new(
            format!("n={n} forbidden(theta0) closed form"),
            canonical.forbidden().all() == closed_form_family(n, None).as_slice(),
        ));
        for sign in [Sign::Plus, Sign::Minus] {
            let theta = Stability::theta_pm(n, sign, None)?;
            let name = if sign == Sign::Plus { "theta+" } else { "theta-" };
            checks.push(CheckLine::new(
                format!("n={n} forbidden({name}) closed form"),
                theta.forbidden().all() == closed_form_family(n, Some(sign)).as_slice(),
            ));
            checks.push(CheckLine::new(format!("n={n} {name} coprime"), theta.is_coprime()));
            checks.push(CheckLine::new(format!("n={n} {name} deforms theta0"), canonical.is_deformation(&theta)?));
        }
    }
    for m in 3..=10 {
        let coprime = Stability::canonical(m)?.is_coprime();
        checks.push(CheckLine::new(format!("m={m} theta0 coprime = {coprime}"), coprime == (m % 2 == 1)));
    }
    Ok(SuiteReport::from_checks(Suite::Stability, checks, "all stability identities hold"))
}

fn hilbert(options: &SuiteOptions) -> Result<SuiteReport> {
    const DEGREE: usize = 12;
    let mut checks = Vec::new();
    for m in arities(options, 3..=8, 12)? {
        // (1+q)^{m-1}/(1-q): partial sums of binomial coefficients
        let expected: Vec<usize> = (0..=DEGREE).map(|d| (0..=d.min(m - 1)).map(|j| binomial(m - 1, j)).sum()).collect();
        let actual = ambient_hilbert(m, DEGREE);
        let mut line = CheckLine::new(format!("m={m} through degree {DEGREE}"), actual == expected);
        if actual != expected {
            line = line.with_detail(format!("got {actual:?}, expected {expected:?}"));
        }
        checks.push(line);
    }
    Ok(SuiteReport::from_checks(Suite::Hilbert, checks, "ambient Hilbert series matches"))
}

fn shape_checks(label: &str, m: usize, dims: &[usize], checks: &mut Vec<CheckLine>) {
    let top = m - 3;
    let poincare: Vec<usize> = dims.iter().copied().take(top + 1).collect();
    let palindromic = poincare.iter().eq(poincare.iter().rev());
    let vanishing = dims.iter().skip(top + 1).all(|&d| d == 0);
    checks.push(
        CheckLine::new(format!("{label} starts at 1"), dims.first() == Some(&1)).with_detail(format!("{dims:?}")),
    );
    checks.push(CheckLine::new(format!("{label} palindromic"), palindromic));
    checks.push(CheckLine::new(format!("{label} vanishes above degree {top}"), vanishing));
}

fn quotient() -> Result<SuiteReport> {
    let mut checks = Vec::new();
    let five = QuotientRing::build(&Stability::canonical(5)?, 4)?.dimensions();
    shape_checks("m=5 theta0", 5, &five, &mut checks);
    for n in [2, 3] {
        let m = 2 * n;
        let plus = QuotientRing::build(&Stability::theta_pm(n, Sign::Plus, None)?, m)?.dimensions();
        let minus = QuotientRing::build(&Stability::theta_pm(n, Sign::Minus, None)?, m)?.dimensions();
        shape_checks(&format!("m={m} theta+"), m, &plus, &mut checks);
        shape_checks(&format!("m={m} theta-"), m, &minus, &mut checks);
        checks.push(CheckLine::new(format!("m={m} theta+ and theta- agree"), plus == minus));
    }
    Ok(SuiteReport::from_checks(Suite::Quotient, checks, "quotient dimensions are consistent"))
}

fn minimality(options: &SuiteOptions) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    for m in arities(options, 3..=6, 7)? {
        let mut thetas = vec![("theta0", Stability::canonical(m)?)];
        if m % 2 == 0 {
            thetas.push(("theta+", Stability::theta_pm(m / 2, Sign::Plus, None)?));
            thetas.push(("theta-", Stability::theta_pm(m / 2, Sign::Minus, None)?));
        }
        for (name, theta) in thetas {
            let minimal = QuotientRing::build_with(&theta, m, GeneratorSet::Minimal, Ambient::Full)?;
            let all = QuotientRing::build_with(&theta, m, GeneratorSet::AllForbidden, Ambient::Full)?;
            checks.push(CheckLine::new(format!("m={m} {name} degrees 0..={m}"), same_ideal(&minimal, &all)?));
        }
    }
    Ok(SuiteReport::from_checks(Suite::Minimality, checks, "minimal forbidden subsets generate the same ideal"))
}

fn certificate(options: &SuiteOptions) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    let minus = QuotientRing::build(&Stability::theta_pm(3, Sign::Minus, None)?, 2)?;
    let witness = LinearForm::from_integers(&[0, 1, 1, 1, 1, 0]);
    checks.push(CheckLine::new(
        "witness (0,1,1,1,1,0) squares to 0 in A-",
        square_in_quotient(&minus, &witness)?.is_zero(),
    ));
    let cert = no_square_zero_certificate_plus_n3()?;
    checks.push(CheckLine::new("quadratic equations match the ring", cert.premise));
    let closed = cert.cases.iter().filter(|c| c.status == crate::invariants::CaseStatus::Closed).count();
    checks.push(
        CheckLine::new("all 33 cases closed", closed == 33 && cert.cases.len() == 33)
            .with_detail(format!("{closed} of {} closed", cert.cases.len())),
    );
    let report = distinguish(3, options.seed)?;
    checks.push(
        CheckLine::new("distinguish(3) verdict", report.verdict == Verdict::Distinguished)
            .with_detail(report.verdict.as_str()),
    );
    Ok(SuiteReport::from_checks(Suite::Certificate, checks, "A+ and A- are distinguished at n = 3"))
}

fn b_ring(options: &SuiteOptions) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    for n in [3, 4] {
        let evidence = b_ring_evidence(n, options.seed)?;
        checks.push(CheckLine::new(format!("n={n} e1 hyperplane in B-: vanishes"), evidence.e1_hyperplane_minus));
        checks
            .push(CheckLine::new(format!("n={n} e1 hyperplane in B+: does not vanish"), !evidence.e1_hyperplane_plus));
        checks.push(CheckLine::new(
            format!("n={n} B+ locus contains no hyperplane"),
            evidence.plus_factors.no_hyperplane,
        ));
        let s = &evidence.samples;
        checks.push(
            CheckLine::new(
                format!("n={n} B- samples with a1 = 0 vanish"),
                s.minus_vanishing_with_a1_zero == SAMPLE_COUNT,
            )
            .with_detail(format!("{}/{}", s.minus_vanishing_with_a1_zero, s.count)),
        );
        checks.push(
            CheckLine::new(
                format!("n={n} B+ generic samples do not vanish"),
                s.plus_nonvanishing_generic == SAMPLE_COUNT,
            )
            .with_detail(format!("{}/{}", s.plus_nonvanishing_generic, s.count)),
        );
    }
    Ok(SuiteReport::from_checks(Suite::BRing, checks, "B+ and B- nilpotent loci differ"))
}

/// Number of seeded random matrices the automorphism suite rejects.
pub const RANDOM_MATRICES: usize = 200;

fn aut(options: &SuiteOptions) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    let dilations = [int(1), int(2), rat(1, 3), rat(5, 7)];
    for m in [3, 4] {
        for d in &dilations {
            let group = signed_permutations(m, d);
            let count = group.len();
            let failures = group
                .par_iter()
                .filter(|g| {
                    let a = g.matrix();
                    let accepted = a.check_conditions().unwrap_or(false);
                    let direct = a.preserves_relations_directly().unwrap_or(false);
                    let round_trip = decompose(&a).ok().flatten().map(|h| h.matrix() == a).unwrap_or(false);
                    !(accepted && direct && round_trip)
                })
                .count();
            checks.push(
                CheckLine::new(format!("m={m} d={d}: {count} signed permutations accepted"), failures == 0)
                    .with_detail(format!("{failures} failures")),
            );
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut matrices = Vec::with_capacity(RANDOM_MATRICES);
    while matrices.len() < RANDOM_MATRICES {
        let a = random_dense_matrix(3 + matrices.len() % 2, &mut rng);
        if a.is_invertible() {
            matrices.push(a);
        }
    }
    let disagreements = matrices
        .par_iter()
        .filter(|a| {
            let accepted = a.check_conditions().unwrap_or(true);
            let direct = a.preserves_relations_directly().unwrap_or(true);
            accepted || direct || decompose(a).ok().flatten().is_some()
        })
        .count();
    checks.push(
        CheckLine::new(format!("{RANDOM_MATRICES} seeded dense matrices rejected"), disagreements == 0)
            .with_detail(format!("seed {}, {disagreements} accepted", options.seed)),
    );
    Ok(SuiteReport::from_checks(Suite::Aut, checks, "automorphism classification holds"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn fast_suites_pass() {
        let options = SuiteOptions { m: Some(5), seed: 3 };
        for suite in [Suite::LemmaRs, Suite::Recursions, Suite::Hilbert, Suite::Minimality] {
            let report = run_suite(suite, &options).unwrap();
            assert!(report.passed, "{suite}: {:?}", report.failures().collect::<Vec<_>>());
        }
        assert!(run_suite(Suite::LemmaRs, &SuiteOptions { m: Some(30), seed: 0 }).is_err());
    }

    #[test]
    fn stability_suite_passes() {
        let report = run_suite(Suite::Stability, &SuiteOptions::default()).unwrap();
        assert!(report.passed);
        assert_eq!(report.checks.len(), 4 * 7 + 8);
    }
}
