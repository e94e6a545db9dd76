use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::chow::{ChowElement, ChowMonomial};
use crate::exactpoly::{MultiPoly, SubsetIndex};
use crate::presentation::{Ambient, GeneratorSet, QuotientRing};
use crate::rational::{int, rat};
use crate::stability::{Sign, Stability};

fn theta(n: usize, sign: Sign) -> Stability {
    Stability::theta_pm(n, sign, None).unwrap()
}

fn x(m: usize, i: usize) -> ChowElement {
    ChowElement::x(m, i)
}

fn x_set(m: usize, members: &[usize]) -> ChowElement {
    ChowElement::x_set(m, SubsetIndex::of(members))
}

#[test]
fn square_zero_witness_in_minus_only() {
    let witness = LinearForm::from_integers(&[0, 1, 1, 1, 1, 0]);
    let minus = QuotientRing::build(&theta(3, Sign::Minus), 2).unwrap();
    let plus = QuotientRing::build(&theta(3, Sign::Plus), 2).unwrap();
    assert!(square_in_quotient(&minus, &witness).unwrap().is_zero());
    assert!(!square_in_quotient(&plus, &witness).unwrap().is_zero());
    assert!(square_in_quotient(&plus, &LinearForm::zero(6)).unwrap().is_zero());
}

#[test]
fn every_four_subset_of_the_tail_squares_to_zero_in_minus() {
    let minus = QuotientRing::build(&theta(3, Sign::Minus), 2).unwrap();
    for set in SubsetIndex::full(6).without(1).subsets_of_size(4) {
        let mut coefficients = vec![int(0); 6];
        for i in set.members() {
            coefficients[i - 1] = int(1);
        }
        assert!(square_in_quotient(&minus, &LinearForm::new(coefficients)).unwrap().is_zero(), "{set}");
    }
}

#[test]
fn shallow_cache_is_an_error() {
    let ring = QuotientRing::build(&theta(3, Sign::Plus), 1).unwrap();
    assert!(matches!(
        square_in_quotient(&ring, &LinearForm::unit(6, 1)),
        Err(crate::Error::DegreeBeyondCache { degree: 2, cached: 1 })
    ));
}

#[test]
fn certificate_closes_every_case() {
    let cert = no_square_zero_certificate_plus_n3().unwrap();
    assert!(cert.premise);
    assert_eq!(cert.cases.len(), 33);
    assert!(cert.all_closed(), "{:?}", cert.open_cases());
    assert_eq!(cert.verdict, "no nonzero 2-nilpotent homogeneous element of degree 1 in A+");
    assert_eq!(cert.cases.iter().filter(|c| c.support.is_empty()).count(), 2);
    let full = cert.cases.last().unwrap();
    assert_eq!(full.support, vec![2, 3, 4, 5, 6]);
    assert!(full.reason.contains("a1 = 4c"));
}

#[test]
fn b_reduce_examples() {
    let m = 6;
    let minus = theta(3, Sign::Minus);
    let plus = theta(3, Sign::Plus);
    assert!(b_reduce(&minus, &x_set(m, &[2, 3])).unwrap().is_zero());
    let expected = -&(&x_set(m, &[1, 2]) + &x_set(m, &[1, 3]));
    assert_eq!(b_reduce(&plus, &x_set(m, &[2, 3])).unwrap().as_element(), &expected);
    for t in [&minus, &plus] {
        assert_eq!(b_reduce(t, &x_set(m, &[1, 2])).unwrap().as_element(), &x_set(m, &[1, 2]));
    }
    assert!(b_reduce(&plus, &ChowElement::y(m)).is_err());
}

#[test]
fn preset_detection_and_notice() {
    let ring = BRing::new(&theta(3, Sign::Plus), 2).unwrap();
    assert_eq!(ring.closed_form(), Some((Sign::Plus, 3)));
    assert!(ring.notice().is_none());
    let other_epsilon = Stability::theta_pm(3, Sign::Minus, Some(rat(1, 10))).unwrap();
    assert_eq!(BRing::new(&other_epsilon, 2).unwrap().closed_form(), Some((Sign::Minus, 3)));
    let canonical = BRing::new(&Stability::canonical(6).unwrap(), 2).unwrap();
    assert_eq!(canonical.closed_form(), None);
    assert!(canonical.notice().is_some());
    assert_eq!(canonical.path(2), ReductionPath::LinearAlgebra);
}

#[test]
fn closed_form_matches_linear_algebra_on_top_degree() {
    for n in [3, 4] {
        let m = 2 * n;
        for sign in [Sign::Plus, Sign::Minus] {
            let ring = BRing::new(&theta(n, sign), n - 1).unwrap();
            let linear = ring.quotient();
            for set in SubsetIndex::full(m).subsets_of_size(n - 1) {
                let mon = ChowElement::x_set(m, set);
                let closed = ring.reduce(&mon).unwrap().into_element();
                assert!(closed.terms().keys().all(|t| t.set.contains(1)), "{set}");
                assert_eq!(linear.normal_form(&closed).unwrap(), linear.normal_form(&mon).unwrap(), "{set}");
            }
        }
    }
}

#[test]
fn top_degree_basis_size() {
    for n in [3, 4] {
        for sign in [Sign::Plus, Sign::Minus] {
            let ring = QuotientRing::build_with(&theta(n, sign), n - 1, GeneratorSet::Minimal, Ambient::ModY).unwrap();
            let expected = SubsetIndex::full(2 * n).without(1).subsets_of_size(n - 2).len();
            assert_eq!(ring.dimensions()[n - 1], expected);
        }
    }
}

#[test]
fn power_examples() {
    let plus = theta(3, Sign::Plus);
    let minus = theta(3, Sign::Minus);
    let a = LinearForm::from_integers(&[0, 1, 1, 0, 0, 0]);
    let expected = -&(&x_set(6, &[1, 2]) + &x_set(6, &[1, 3])).scale(&int(2));
    assert_eq!(power_in_b(&plus, &a, 2).unwrap().as_element(), &expected);
    let b = LinearForm::from_integers(&[0, 3, -1, 2, 5, 7]);
    assert!(power_in_b(&minus, &b, 2).unwrap().is_zero());
    assert_eq!(power_in_b(&plus, &b, 0).unwrap().as_element(), &ChowElement::one(6));
}

#[test]
fn hyperplane_examples() {
    let e1 = LinearForm::unit(6, 1);
    assert!(hyperplane_power_test(&theta(3, Sign::Minus), &e1, 2).unwrap());
    assert!(!hyperplane_power_test(&theta(3, Sign::Plus), &e1, 2).unwrap());
    assert!(hyperplane_power_test(&theta(3, Sign::Plus), &LinearForm::zero(6), 2).is_err());
    let big = Stability::theta_pm(5, Sign::Plus, None).unwrap();
    assert!(matches!(hyperplane_power_test(&big, &LinearForm::unit(10, 1), 2), Err(crate::Error::GuardExceeded(_))));
}

#[test]
fn no_sign_pattern_hyperplane_in_plus_locus() {
    let ring = BRing::new(&theta(3, Sign::Plus), 2).unwrap();
    let mut checked = 0;
    for code in 0..3usize.pow(6) {
        let mut digits = code;
        let values: Vec<i64> = (0..6)
            .map(|_| {
                let d = digits % 3;
                digits /= 3;
                d as i64 - 1
            })
            .collect();
        if values.iter().all(|&v| v == 0) {
            continue;
        }
        assert!(!ring.hyperplane_power_test(&LinearForm::from_integers(&values), 2).unwrap(), "{values:?}");
        checked += 1;
    }
    assert_eq!(checked, 728);
}

#[test]
fn sampled_test_agrees_with_symbolic() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let e1 = LinearForm::unit(8, 1);
    assert!(sampled_hyperplane_test(&theta(4, Sign::Minus), &e1, 3, 20, &mut rng).unwrap());
    assert!(!sampled_hyperplane_test(&theta(4, Sign::Plus), &e1, 3, 20, &mut rng).unwrap());
}

#[test]
fn b_ring_table() {
    for n in [3, 4] {
        let e1 = LinearForm::unit(2 * n, 1);
        let k = (n - 1) as u32;
        assert!(hyperplane_power_test(&theta(n, Sign::Minus), &e1, k).unwrap());
        assert!(!hyperplane_power_test(&theta(n, Sign::Plus), &e1, k).unwrap());
    }
}

#[test]
fn plus_coefficient_factors() {
    for n in [3, 4] {
        let ring = BRing::new(&theta(n, Sign::Plus), n - 1).unwrap();
        let (monomial, candidates) = plus_factor_candidates(n);
        assert_eq!(monomial, ChowMonomial::new(SubsetIndex::new(1..n).unwrap(), 0));
        assert_eq!(candidates.len(), n - 1);
        let power = ring.symbolic_power((n - 1) as u32).unwrap();
        let coefficient = power.coefficient(&monomial);
        for form in &candidates {
            // each factor divides the coefficient: it vanishes on the factor's hyperplane
            let pivot = (1..=2 * n).find(|&i| !form.coefficient(i).is_zero()).unwrap();
            let others = (1..=2 * n)
                .filter(|&i| i != pivot)
                .fold(MultiPoly::zero(2 * n), |s, i| &s + &MultiPoly::var(2 * n, i - 1).scale(form.coefficient(i)));
            let solved = others.scale(&(-form.coefficient(pivot).recip()));
            assert!(coefficient.substitute(pivot - 1, &solved).is_zero());
            assert!(!ring.hyperplane_power_test(form, (n - 1) as u32).unwrap());
        }
    }
}

#[test]
fn symbolic_expansion_before_reduction() {
    for n in [2, 3, 4] {
        let m = 2 * n;
        let k = n - 1;
        let power = SymbolicElement::generic_linear(m).pow_mod_y(k as u32);
        let factorial: crate::Rational = (1..=k as i64).map(int).product();
        let mut expected = SymbolicElement::zero(m);
        for set in SubsetIndex::full(m).subsets_of_size(k) {
            let a_j = set
                .members()
                .fold(MultiPoly::constant(m, factorial.clone()), |acc, i| &acc * &MultiPoly::var(m, i - 1));
            expected.add_term(ChowMonomial::new(set, 0), a_j);
        }
        assert_eq!(power, expected);
    }
}

#[test]
fn symbolic_power_matches_closed_form() {
    for n in [3, 4] {
        let m = 2 * n;
        for sign in [Sign::Plus, Sign::Minus] {
            let ring = BRing::new(&theta(n, sign), n - 1).unwrap();
            let symbolic = ring.symbolic_power((n - 1) as u32).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            for _ in 0..5 {
                let point: Vec<crate::Rational> = (0..m).map(|_| super::bring::random_rational(&mut rng)).collect();
                let a = LinearForm::new(point.clone());
                assert_eq!(&symbolic.evaluate(&point), closed_form_power(sign, &a).unwrap().as_element());
            }
        }
    }
}

#[test]
fn seeded_samples() {
    for n in [3, 4] {
        let m = 2 * n;
        let k = (n - 1) as u32;
        let plus = BRing::new(&theta(n, Sign::Plus), n - 1).unwrap();
        let minus = BRing::new(&theta(n, Sign::Minus), n - 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(100 + n as u64);
        for _ in 0..100 {
            let mut point: Vec<crate::Rational> = (0..m).map(|_| super::bring::random_rational(&mut rng)).collect();
            point[0] = int(0);
            let a = LinearForm::new(point);
            let power = minus.power(&a, k).unwrap();
            assert!(power.is_zero());
            assert_eq!(&power, &closed_form_power(Sign::Minus, &a).unwrap());
        }
        let mut accepted = 0;
        while accepted < 100 {
            let point: Vec<crate::Rational> = (0..m).map(|_| super::bring::random_rational(&mut rng)).collect();
            let distinct = (0..m).all(|i| (i + 1..m).all(|j| point[i] != point[j]));
            if !distinct {
                continue;
            }
            let a = LinearForm::new(point);
            let power = plus.power(&a, k).unwrap();
            assert!(!power.is_zero());
            assert_eq!(&power, &closed_form_power(Sign::Plus, &a).unwrap());
            accepted += 1;
        }
    }
}

#[test]
fn distinguish_n2_is_inconclusive() {
    let report = distinguish(2, 0).unwrap();
    assert_eq!(report.verdict, Verdict::Inconclusive);
    assert_eq!(report.poincare.plus, Some(vec![1, 1]));
    assert_eq!(report.poincare.equal, Some(true));
    assert!(report.square_zero.is_none() && report.b_ring.is_none());
}

#[test]
fn distinguish_n3() {
    let report = distinguish(3, 7).unwrap();
    assert_eq!(report.verdict, Verdict::Distinguished);
    assert_eq!(report.poincare.plus, Some(vec![1, 6, 6, 1]));
    assert_eq!(report.poincare.equal, Some(true));
    let evidence = report.square_zero.as_ref().unwrap();
    assert_eq!(evidence.witness, LinearForm::from_integers(&[0, 1, 1, 1, 1, 0]));
    assert!(evidence.square_in_minus.is_zero());
    assert!(!evidence.square_in_plus.is_zero());
    assert!(evidence.certificate.holds());
    assert!(!report.reduction_premise.holds);
    let b = report.b_ring.as_ref().unwrap();
    assert!(b.separates());
    assert_eq!(b.samples.minus_vanishing_with_a1_zero, SAMPLE_COUNT);
    let json = serde_json::to_string(&report).unwrap();
    assert!(json.starts_with(r#"{"schema":"chowcfg/1","n":3"#));
    assert!(json.contains(r#""verdict":"rings distinguished""#));
    assert_eq!(json, serde_json::to_string(&distinguish(3, 7).unwrap()).unwrap());
}

#[test]
fn distinguish_n4() {
    let report = distinguish(4, 1).unwrap();
    assert_eq!(report.verdict, Verdict::Distinguished);
    assert!(report.reduction_premise.holds);
    assert_eq!(report.poincare.equal, Some(true));
    let b = report.b_ring.unwrap();
    assert!(b.e1_hyperplane_minus && !b.e1_hyperplane_plus);
    assert!(b.plus_factors.coefficient_factors && b.plus_factors.no_hyperplane);
    assert_eq!(b.samples.plus_nonvanishing_generic, SAMPLE_COUNT);
}

#[test]
fn distinguish_rejects_small_n() {
    assert!(distinguish(1, 0).is_err());
}

#[test]
fn linear_form_parsing() {
    let a = LinearForm::parse("0, 1, -1/2,3").unwrap();
    assert_eq!(a.coefficients(), &[int(0), int(1), rat(-1, 2), int(3)]);
    assert!(LinearForm::parse("1,x").is_err());
    assert_eq!(serde_json::to_string(&a).unwrap(), r#"["0/1","1/1","-1/2","3/1"]"#);
    assert_eq!(a.to_element(), &(&x(4, 2) - &x(4, 3).scale(&rat(1, 2))) + &x(4, 4).scale(&int(3)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn b_reduce_is_linear(c1 in -5i64..=5, c2 in -5i64..=5, s1 in 0u32..64, s2 in 0u32..64) {
        let plus = BRing::new(&theta(3, Sign::Plus), 6).unwrap();
        let mon = |mask: u32| ChowElement::x_set(6, SubsetIndex::from_mask(mask));
        let combo = &mon(s1).scale(&int(c1)) + &mon(s2).scale(&int(c2));
        let separately = &plus.reduce(&mon(s1)).unwrap().into_element().scale(&int(c1))
            + &plus.reduce(&mon(s2)).unwrap().into_element().scale(&int(c2));
        prop_assert_eq!(plus.reduce(&combo).unwrap().into_element(), separately);
    }

    #[test]
    fn b_reduce_matches_quotient_class(s in 0u32..64) {
        for sign in [Sign::Plus, Sign::Minus] {
            let ring = BRing::new(&theta(3, sign), 6).unwrap();
            let mon = ChowElement::x_set(6, SubsetIndex::from_mask(s));
            let reduced = ring.reduce(&mon).unwrap().into_element();
            prop_assert_eq!(ring.quotient().normal_form(&reduced).unwrap(), ring.quotient().normal_form(&mon).unwrap());
        }
    }
}
