use proptest::prelude::*;

use super::*;

fn s(members: &[usize]) -> SubsetIndex {
    SubsetIndex::of(members)
}

fn theta_plus(n: usize) -> Stability {
    Stability::theta_pm(n, Sign::Plus, None).unwrap()
}

fn theta_minus(n: usize) -> Stability {
    Stability::theta_pm(n, Sign::Minus, None).unwrap()
}

/// Closed-form forbidden families for m = 2n, written out by subset size.
fn closed_form_family(n: usize, sign: Option<Sign>) -> Vec<SubsetIndex> {
    let m = 2 * n;
    let mut out: Vec<SubsetIndex> = (0u32..(1 << m))
        .map(SubsetIndex::from_mask)
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

#[test]
fn nontriviality() {
    assert!(Stability::canonical(6).unwrap().is_nontrivial());
    assert!(!Stability::new(vec![int(1), int(1), int(0)]).unwrap().is_nontrivial());
    assert!(!Stability::new(vec![rat(3, 2), rat(1, 4), rat(1, 4)]).unwrap().is_nontrivial());
}

#[test]
fn construction_guards() {
    assert!(matches!(Stability::new(vec![int(1), int(1)]), Err(Error::InvalidStability(_))));
    assert!(matches!(Stability::new(vec![int(1); 3]), Err(Error::InvalidStability(_))));
    assert!(matches!(Stability::canonical(25), Err(Error::GuardExceeded(_))));
}

#[test]
fn coprimality() {
    assert!(Stability::canonical(5).unwrap().is_coprime());
    assert!(!Stability::canonical(6).unwrap().is_coprime());
    assert!(Stability::theta_pm(3, Sign::Plus, Some(rat(1, 6))).unwrap().is_coprime());
    for m in 3..=10 {
        assert_eq!(Stability::canonical(m).unwrap().is_coprime(), m % 2 == 1, "m = {m}");
    }
}

#[test]
fn deformations() {
    let canonical = Stability::canonical(6).unwrap();
    let plus = Stability::theta_pm(3, Sign::Plus, Some(rat(1, 6))).unwrap();
    let minus = Stability::theta_pm(3, Sign::Minus, Some(rat(1, 6))).unwrap();
    assert!(canonical.is_deformation(&plus).unwrap());
    assert!(canonical.is_deformation(&minus).unwrap());
    assert!(plus.is_deformation(&plus).unwrap());
    assert!(!plus.is_deformation(&minus).unwrap());
    // the subset {1,2,3} alone already breaks it
    assert!(plus.theta_of(s(&[1, 2, 3])) > int(1));
    assert!(minus.theta_of(s(&[1, 2, 3])) < int(1));
    assert!(matches!(canonical.is_deformation(&Stability::canonical(5).unwrap()), Err(Error::ArityMismatch { .. })));
}

#[test]
fn forbidden_canonical_six() {
    let fam = Stability::canonical(6).unwrap().forbidden();
    assert_eq!(fam.all().len(), 22);
    assert_eq!(fam.minimal().len(), 15);
    assert!(fam.minimal().iter().all(|set| set.len() == 4));
    assert!(fam.contains(s(&[1, 2, 3, 4, 5, 6])));
    assert!(!fam.contains(s(&[1, 2, 3])));
}

#[test]
fn forbidden_deformed_six() {
    let plus = Stability::theta_pm(3, Sign::Plus, Some(rat(1, 6))).unwrap().forbidden();
    let added: Vec<_> = plus.all().iter().filter(|set| set.len() == 3).copied().collect();
    assert_eq!(added.len(), 10);
    assert!(added.iter().all(|set| set.contains(1)));
    // minimal: the ten 3-sets containing 1 plus the five 4-subsets of {2..6}
    assert_eq!(plus.minimal().len(), 15);
    let four: Vec<_> = plus.minimal().iter().filter(|set| set.len() == 4).copied().collect();
    assert_eq!(four, s(&[2, 3, 4, 5, 6]).subsets_of_size(4));

    let minus = Stability::theta_pm(3, Sign::Minus, Some(rat(1, 6))).unwrap().forbidden();
    let added: Vec<_> = minus.all().iter().filter(|set| set.len() == 3).copied().collect();
    assert_eq!(added.len(), 10);
    assert!(added.iter().all(|set| !set.contains(1)));
}

#[test]
fn preset_weights() {
    assert_eq!(Stability::canonical(6).unwrap().weights(), vec![rat(1, 3); 6].as_slice());
    let plus = Stability::theta_pm(3, Sign::Plus, Some(rat(1, 6))).unwrap();
    let mut expected = vec![rat(1, 2)];
    expected.extend(vec![rat(3, 10); 5]);
    assert_eq!(plus.weights(), expected.as_slice());
    assert_eq!(default_epsilon(3), rat(5, 24));
    assert_eq!(epsilon_bound(3), rat(5, 12));
    assert_eq!(Preset::from_str("theta-minus").unwrap().build(6, None).unwrap(), theta_minus(3));
    assert!(matches!(Preset::from_str("sideways"), Err(Error::UnknownPreset(_))));
    assert!(matches!(Preset::ThetaPlus.build(5, None), Err(Error::InvalidStability(_))));
}

#[test]
fn subset_value_formula() {
    for n in 2..=5usize {
        let eps = default_epsilon(n);
        let plus = theta_plus(n);
        let (nn, two_n_minus_one) = (int(n as i64), int(2 * n as i64 - 1));
        for mask in 1u32..(1 << (2 * n)) {
            let set = SubsetIndex::from_mask(mask);
            let k = int(set.len() as i64);
            let expected = if set.contains(1) {
                &k / &nn + (int(2 * n as i64) - &k) * &eps / &two_n_minus_one
            } else {
                &k / &nn - &k * &eps / &two_n_minus_one
            };
            assert_eq!(plus.theta_of(set), expected);
        }
    }
}

#[test]
fn epsilon_range() {
    for bad in [int(0), rat(-1, 10), rat(5, 12), int(1)] {
        assert!(matches!(Stability::theta_pm(3, Sign::Plus, Some(bad)), Err(Error::EpsilonOutOfRange { .. })));
    }
    // inside the bound but the first weight of theta^- would be negative
    assert!(matches!(Stability::theta_pm(3, Sign::Minus, Some(rat(7, 20))), Err(Error::EpsilonOutOfRange { .. })));
    assert!(Stability::theta_pm(3, Sign::Plus, Some(rat(7, 20))).unwrap().is_nontrivial());
    assert!(Stability::theta_pm(1, Sign::Plus, None).is_err());
}

#[test]
fn deformed_families_match_closed_form() {
    for n in 2..=5 {
        let canonical = Stability::canonical(2 * n).unwrap();
        assert_eq!(canonical.forbidden().all(), closed_form_family(n, None).as_slice());
        for (theta, sign) in [(theta_plus(n), Sign::Plus), (theta_minus(n), Sign::Minus)] {
            assert_eq!(theta.forbidden().all(), closed_form_family(n, Some(sign)).as_slice(), "n = {n}");
            assert!(theta.is_coprime());
            assert!(theta.is_nontrivial());
            assert!(canonical.is_deformation(&theta).unwrap());
        }
    }
}

#[test]
fn json_round_trip() {
    let theta = theta_plus(3);
    let text = serde_json::to_string(&theta).unwrap();
    assert_eq!(text, r#"{"m":6,"weights":["13/24","7/24","7/24","7/24","7/24","7/24"]}"#);
    assert_eq!(serde_json::from_str::<Stability>(&text).unwrap(), theta);
    assert!(serde_json::from_str::<Stability>(r#"{"m":4,"weights":["1/2","1/2","1/2"]}"#).is_err());
    assert!(serde_json::from_str::<Stability>(r#"{"m":3,"weights":["1/2","1/2","1/2"]}"#).is_err());
    assert_eq!(parse_inline_weights("2/3, 2/3, 2/3").unwrap(), Stability::canonical(3).unwrap());
}

fn weights(m: usize) -> impl Strategy<Value = Stability> {
    prop::collection::vec(1i64..12, m).prop_map(|raw| {
        let total: i64 = raw.iter().sum();
        Stability::new(raw.iter().map(|&w| rat(2 * w, total)).collect()).unwrap()
    })
}

proptest! {
    #[test]
    fn coprime_agrees_with_direct_enumeration(theta in weights(6)) {
        let direct = (1u32..63).all(|mask| theta.theta_of(SubsetIndex::from_mask(mask)) != int(1));
        prop_assert_eq!(theta.is_coprime(), direct);
        // forbidden(theta) versus {I : theta_I >= 1}, proper subsets only
        let fam = theta.forbidden();
        let weak: Vec<u32> = (1u32..63).filter(|&m| theta.theta_of(SubsetIndex::from_mask(m)) >= int(1)).collect();
        let strict: Vec<u32> = (1u32..63).filter(|&m| fam.contains(SubsetIndex::from_mask(m))).collect();
        prop_assert_eq!(theta.is_coprime(), weak == strict);
    }

    #[test]
    fn forbidden_is_upward_closed_and_minimal(theta in weights(6)) {
        let fam = theta.forbidden();
        for &set in fam.all() {
            prop_assert!(theta.theta_of(set) > int(1));
            for extra in 1..=6 {
                let bigger = set.with(extra);
                if theta.theta_of(bigger) >= theta.theta_of(set) {
                    prop_assert!(fam.contains(bigger));
                }
            }
        }
        for &min in fam.minimal() {
            prop_assert!(fam.contains(min));
            prop_assert!(!fam.minimal().iter().any(|&o| o != min && o.is_subset_of(min)));
            prop_assert!(!fam.all().iter().any(|&o| o != min && o.is_subset_of(min)));
        }
    }

    #[test]
    fn deformation_is_reflexive_and_grows_forbidden(a in weights(5), b in weights(5)) {
        prop_assert!(a.is_deformation(&a).unwrap());
        if b.is_coprime() && a.is_deformation(&b).unwrap() {
            let (fa, fb) = (a.forbidden(), b.forbidden());
            prop_assert!(fa.all().iter().all(|&set| fb.contains(set)));
        }
    }
}
