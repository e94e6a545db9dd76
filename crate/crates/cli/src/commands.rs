use std::path::Path;

use anyhow::{bail, Context, Result};
use chowcfg::autgroup::{decompose, CandidateMatrix, SignedScaledPermutation};
use chowcfg::checks::{run_suite, Suite, SuiteOptions};
use chowcfg::chow::ChowElement;
use chowcfg::exactpoly::{substitute_chow, SubsetIndex};
use chowcfg::invariants::{self, square_in_quotient, LinearForm};
use chowcfg::presentation::{relation_oracle, relation_r, relation_s, QuotientRing};
use chowcfg::rational::display_rational;
use chowcfg::stability::{Stability, MAX_STABILITY_ARITY};
use serde::Serialize;

use crate::{theta, Outcome, Output, ThetaArgs};

const SCHEMA: &str = "chowcfg/1";

/// `println!` that reports a closed stdout as an error instead of panicking.
macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        writeln!(std::io::stdout().lock(), $($arg)*)?
    }};
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    outln!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn reject_csv(output: Output, command: &str) -> Result<()> {
    if output == Output::Csv {
        bail!("{command} has no CSV output; use json or text");
    }
    Ok(())
}

fn subsets(sets: &[SubsetIndex]) -> Vec<Vec<usize>> {
    sets.iter().map(|s| s.to_vec()).collect()
}

fn weights_text(theta: &Stability) -> String {
    theta.weights().iter().map(display_rational).collect::<Vec<_>>().join(", ")
}

#[derive(Serialize)]
struct Forbidden {
    all: Vec<Vec<usize>>,
    minimal: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct StabilityReport<'a> {
    schema: &'static str,
    theta: &'a Stability,
    nontrivial: bool,
    coprime: bool,
    forbidden: Forbidden,
}

pub fn stability(args: &ThetaArgs, m: Option<usize>, output: Output) -> Result<Outcome> {
    reject_csv(output, "stability")?;
    let theta = theta::resolve(&args.theta, m, args.epsilon.as_deref())?;
    let family = theta.forbidden();
    let report = StabilityReport {
        schema: SCHEMA,
        theta: &theta,
        nontrivial: theta.is_nontrivial(),
        coprime: theta.is_coprime(),
        forbidden: Forbidden { all: subsets(family.all()), minimal: subsets(family.minimal()) },
    };
    if output == Output::Json {
        print_json(&report)?;
    } else {
        outln!("weights: {}", weights_text(&theta));
        outln!("nontrivial: {}", report.nontrivial);
        outln!("coprime: {}", report.coprime);
        outln!("forbidden subsets: {}", family.all().len());
        let minimal: Vec<String> = family.minimal().iter().map(ToString::to_string).collect();
        outln!("minimal forbidden ({}): {}", minimal.len(), minimal.join(" "));
    }
    Ok(Outcome::Success)
}

#[derive(Serialize)]
struct RelationsReport {
    schema: &'static str,
    m: usize,
    subset: Vec<usize>,
    #[serde(rename = "R")]
    r: ChowElement,
    #[serde(rename = "S")]
    s: ChowElement,
    oracle_agrees: bool,
}

pub fn relations(m: usize, members: &[usize], output: Output) -> Result<Outcome> {
    reject_csv(output, "relations")?;
    if !(1..=MAX_STABILITY_ARITY).contains(&m) {
        bail!("--m must lie in 1..={MAX_STABILITY_ARITY}");
    }
    let set = SubsetIndex::new(members.iter().copied())?;
    if !set.within(m) {
        bail!("subset {set} is not contained in 1..={m}");
    }
    let (r, s) = (relation_r(m, set), relation_s(m, set));
    let (r_oracle, s_oracle) = relation_oracle(m, set);
    let oracle_agrees = substitute_chow(&r.lift())? == r_oracle && substitute_chow(&s.lift())? == s_oracle;
    if output == Output::Json {
        print_json(&RelationsReport { schema: SCHEMA, m, subset: set.to_vec(), r, s, oracle_agrees })?;
    } else {
        outln!("R_{set} = {r}");
        outln!("S_{set} = {s}");
        outln!("torus oracle: {}", if oracle_agrees { "agrees" } else { "DISAGREES" });
    }
    Ok(if oracle_agrees { Outcome::Success } else { Outcome::VerificationFailed })
}

#[derive(Serialize)]
struct Generator {
    subset: Vec<usize>,
    #[serde(rename = "R")]
    r: ChowElement,
    #[serde(rename = "S")]
    s: ChowElement,
}

#[derive(Serialize)]
struct DimensionRow {
    degree: usize,
    dimension: usize,
}

#[derive(Serialize)]
struct BettiReport<'a> {
    schema: &'static str,
    theta: &'a Stability,
    max_degree: usize,
    generators: Vec<Generator>,
    dimensions: Vec<DimensionRow>,
    poincare: Vec<usize>,
}

pub fn betti(args: &ThetaArgs, m: Option<usize>, max_degree: usize, output: Output) -> Result<Outcome> {
    let theta = theta::resolve(&args.theta, m, args.epsilon.as_deref())?;
    let ring = QuotientRing::build(&theta, max_degree)?;
    let dims = ring.dimensions();
    match output {
        Output::Csv => {
            outln!("degree,dimension");
            for (degree, dim) in dims.iter().enumerate() {
                outln!("{degree},{dim}");
            }
        }
        Output::Json => {
            let generators = ring
                .generators()
                .iter()
                .map(|p| Generator { subset: p.set.to_vec(), r: p.r.clone(), s: p.s.clone() })
                .collect();
            let dimensions =
                dims.iter().enumerate().map(|(degree, &dimension)| DimensionRow { degree, dimension }).collect();
            print_json(&BettiReport {
                schema: SCHEMA,
                theta: &theta,
                max_degree,
                generators,
                dimensions,
                poincare: ring.poincare_polynomial(),
            })?;
        }
        Output::Text => {
            outln!("weights: {}", weights_text(&theta));
            outln!("generators: {} relation pairs", ring.generators().len());
            outln!("degree  dimension");
            for (degree, dim) in dims.iter().enumerate() {
                outln!("{degree:>6}  {dim:>9}");
            }
        }
    }
    Ok(Outcome::Success)
}

pub fn verify(suite: &str, m: Option<usize>, seed: u64, output: Output) -> Result<Outcome> {
    reject_csv(output, "verify")?;
    let suite: Suite = suite.parse()?;
    let report = run_suite(suite, &SuiteOptions { m, seed })?;
    if output == Output::Json {
        print_json(&report)?;
    } else {
        for line in &report.checks {
            let status = if line.passed { "ok  " } else { "FAIL" };
            let mut text = format!("{status} {}", line.label);
            if let Some(us) = line.elapsed_us {
                text.push_str(&format!(" ({us} us)"));
            }
            if let Some(detail) = line.detail.as_ref().filter(|_| !line.passed) {
                text.push_str(&format!(": {detail}"));
            }
            outln!("{text}");
        }
        outln!("{}: {}", report.suite, report.summary);
    }
    Ok(if report.passed { Outcome::Success } else { Outcome::VerificationFailed })
}

#[derive(Serialize)]
struct NilpotentReport<'a> {
    schema: &'static str,
    theta: &'a Stability,
    witness: &'a LinearForm,
    square: ChowElement,
    square_zero: bool,
}

pub fn nilpotent(args: &ThetaArgs, m: Option<usize>, witness: &str, output: Output) -> Result<Outcome> {
    reject_csv(output, "nilpotent")?;
    let witness = LinearForm::parse(witness)?;
    let m = m.or(Some(witness.arity()));
    let theta = theta::resolve(&args.theta, m, args.epsilon.as_deref())?;
    let ring = QuotientRing::build(&theta, 2)?;
    let square = square_in_quotient(&ring, &witness)?;
    let square_zero = square.is_zero();
    if output == Output::Json {
        print_json(&NilpotentReport { schema: SCHEMA, theta: &theta, witness: &witness, square, square_zero })?;
    } else {
        outln!("a = {witness}");
        outln!("a^2 = {square}");
        outln!("square zero: {square_zero}");
    }
    Ok(Outcome::Success)
}

pub fn distinguish(n: usize, seed: u64, output: Output) -> Result<Outcome> {
    reject_csv(output, "distinguish")?;
    let report = invariants::distinguish(n, seed)?;
    if output == Output::Json {
        print_json(&report)?;
        return Ok(Outcome::Success);
    }
    outln!("n = {n}, m = {}", report.m);
    match (&report.poincare.plus, &report.poincare.minus) {
        (Some(p), Some(q)) => {
            outln!("Poincare A+: {p:?}");
            outln!("Poincare A-: {q:?}");
            outln!("Poincare polynomials equal: {}", p == q);
        }
        _ => outln!("Poincare polynomials: {}", report.poincare.note.as_deref().unwrap_or("skipped")),
    }
    if let Some(evidence) = &report.square_zero {
        outln!(
            "witness {}: square in A- = {}, square in A+ = {}",
            evidence.witness,
            evidence.square_in_minus,
            evidence.square_in_plus
        );
        let closed = evidence.certificate.cases.iter().filter(|c| c.status == invariants::CaseStatus::Closed).count();
        outln!(
            "certificate: {closed}/{} cases closed; {}",
            evidence.certificate.cases.len(),
            evidence.certificate.verdict
        );
    }
    if let Some(b) = &report.b_ring {
        outln!("B-: a^{} vanishes on a1 = 0: {}", b.power, b.e1_hyperplane_minus);
        outln!("B+: a^{} vanishes on a1 = 0: {}", b.power, b.e1_hyperplane_plus);
        outln!("B+: no hyperplane in the nilpotent locus: {}", b.plus_factors.no_hyperplane);
        outln!(
            "samples (seed {}): {}/{} vanish in B- with a1 = 0, {}/{} nonzero in B+",
            report.seed,
            b.samples.minus_vanishing_with_a1_zero,
            b.samples.count,
            b.samples.plus_nonvanishing_generic,
            b.samples.count
        );
    }
    outln!("verdict: {}", report.verdict.as_str());
    outln!("reason: {}", report.reason);
    Ok(Outcome::Success)
}

#[derive(Serialize)]
struct AutReport {
    schema: &'static str,
    matrix: CandidateMatrix,
    conditions_hold: bool,
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    factorization: Option<SignedScaledPermutation>,
}

pub fn aut_check(path: &Path, output: Output) -> Result<Outcome> {
    reject_csv(output, "aut check")?;
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let matrix = CandidateMatrix::from_json(&text)?;
    let conditions_hold = matrix.check_conditions()?;
    let factorization = if matrix.size() > 2 { decompose(&matrix)? } else { None };
    let verdict = if conditions_hold { "automorphism" } else { "not an automorphism" };
    if output == Output::Json {
        print_json(&AutReport { schema: SCHEMA, matrix, conditions_hold, verdict, factorization })?;
    } else {
        outln!("verdict: {verdict}");
        match &factorization {
            Some(g) => {
                outln!("dilation: {}", display_rational(g.dilation()));
                outln!("sigma: {:?}", g.sigma());
                outln!("signs: {:?}", g.signs());
            }
            None if conditions_hold => outln!("factorization: unavailable for m <= 2"),
            None => {}
        }
    }
    Ok(Outcome::Success)
}
