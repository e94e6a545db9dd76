//! Acceptance suite: one pass/fail line per criterion. Runs without the
//! libtest harness so the lines always reach the console.

use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use chowcfg::checks::{run_suite, Suite, SuiteOptions};
use chowcfg::invariants::{distinguish, no_square_zero_certificate_plus_n3, square_in_quotient, LinearForm, Verdict};
use chowcfg::presentation::QuotientRing;
use chowcfg::stability::{Sign, Stability};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn suite(suite: Suite, seed: u64) -> Outcome {
    let report = run_suite(suite, &SuiteOptions { m: None, seed }).map_err(|e| e.to_string())?;
    if report.passed {
        Ok(format!("{} checks; {}", report.checks.len(), report.summary))
    } else {
        let failed: Vec<String> = report.failures().map(|c| c.label.clone()).collect();
        Err(format!("{}: {}", report.summary, failed.join("; ")))
    }
}

fn ensure(condition: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if condition {
        Ok(())
    } else {
        Err(message())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    ensure(start.elapsed() <= limit, || format!("took {:?}, limit {limit:?}", start.elapsed()))
}

fn oracle_identities() -> Outcome {
    let start = Instant::now();
    let detail = suite(Suite::LemmaRs, 0)?;
    ensure(detail.starts_with("248 checks"), || format!("expected 248 subsets over m = 3..7, got {detail}"))?;
    within(Duration::from_secs(120), start)?;
    Ok(detail)
}

fn quotient_sanity() -> Outcome {
    let start = Instant::now();
    let dims = |theta: &Stability, d: usize| -> Result<Vec<usize>, String> {
        Ok(QuotientRing::build(theta, d).map_err(|e| e.to_string())?.dimensions())
    };
    let pm = |n: usize, sign: Sign| Stability::theta_pm(n, sign, None).map_err(|e| e.to_string());
    let goldens: [(&str, Vec<usize>, Vec<usize>); 5] = [
        ("m=5 theta0", dims(&Stability::canonical(5).map_err(|e| e.to_string())?, 4)?, vec![1, 5, 1, 0, 0]),
        ("m=6 theta+", dims(&pm(3, Sign::Plus)?, 6)?, vec![1, 6, 6, 1, 0, 0, 0]),
        ("m=6 theta-", dims(&pm(3, Sign::Minus)?, 6)?, vec![1, 6, 6, 1, 0, 0, 0]),
        ("m=4 theta+", dims(&pm(2, Sign::Plus)?, 3)?, vec![1, 1, 0, 0]),
        ("m=4 theta-", dims(&pm(2, Sign::Minus)?, 3)?, vec![1, 1, 0, 0]),
    ];
    for (label, got, expected) in &goldens {
        ensure(got == expected, || format!("{label}: got {got:?}, expected {expected:?}"))?;
    }
    let detail = suite(Suite::Quotient, 0)?;
    within(Duration::from_secs(300), start)?;
    Ok(format!("goldens match; {detail}"))
}

fn non_isomorphism_certificate() -> Outcome {
    let start = Instant::now();
    let minus = QuotientRing::build(&Stability::theta_pm(3, Sign::Minus, None).map_err(|e| e.to_string())?, 2)
        .map_err(|e| e.to_string())?;
    let witness = LinearForm::from_integers(&[0, 1, 1, 1, 1, 0]);
    let square = square_in_quotient(&minus, &witness).map_err(|e| e.to_string())?;
    ensure(square.is_zero(), || format!("witness square is {square}"))?;
    let cert = no_square_zero_certificate_plus_n3().map_err(|e| e.to_string())?;
    ensure(cert.cases.len() == 33 && cert.holds(), || format!("certificate: {:?}", cert.open_cases()))?;
    let report = distinguish(3, 7).map_err(|e| e.to_string())?;
    ensure(report.verdict == Verdict::Distinguished, || format!("verdict {}", report.verdict.as_str()))?;
    let detail = suite(Suite::Certificate, 7)?;
    within(Duration::from_secs(60), start)?;
    Ok(format!("33/33 cases closed; {detail}"))
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_chowcfg"))
            .args(["distinguish", "--n", "3", "--seed", "7", "--output", "json"])
            .output()
            .map_err(|e| e.to_string())
    };
    let first = run()?;
    let second = run()?;
    ensure(first.status.success() && second.status.success(), || "distinguish exited with failure".into())?;
    ensure(first.stdout == second.stdout, || "outputs differ".into())?;
    Ok(format!("{} identical bytes", first.stdout.len()))
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("oracle identities for R_I and S_I, m = 3..7", Box::new(oracle_identities)),
        ("relation recursions, m <= 7", Box::new(|| suite(Suite::Recursions, 0))),
        ("stability families, coprimality, deformations", Box::new(|| suite(Suite::Stability, 0))),
        ("ambient Hilbert series, m = 3..8", Box::new(|| suite(Suite::Hilbert, 0))),
        ("quotient Poincare polynomials", Box::new(quotient_sanity)),
        ("minimal forbidden subsets suffice, m <= 6", Box::new(|| suite(Suite::Minimality, 0))),
        ("square-zero certificate at n = 3", Box::new(non_isomorphism_certificate)),
        ("B-ring hyperplane table and samples, n = 3, 4", Box::new(|| suite(Suite::BRing, 8))),
        ("automorphism classification, m = 3, 4", Box::new(|| suite(Suite::Aut, 9))),
        ("byte-identical distinguish output", Box::new(determinism)),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (index, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|payload| {
            let message = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {message}"))
        });
        let elapsed = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {name} [{detail}] ({elapsed:.1}s)", index + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2}: FAIL  {name} [{detail}] ({elapsed:.1}s)", index + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
