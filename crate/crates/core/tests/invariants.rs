use proptest::prelude::*;

use setfam_core::binomial::count;
use setfam_core::constructions::{construct, ConstructionId};
use setfam_core::json::{from_json, to_json};
use setfam_core::lex::{compatible_profile, lex_family};
use setfam_core::search::{sample_cross_intersecting, sample_initial, sample_intersecting, CrossSpec};
use setfam_core::shifting::{audit_ad_extremis, saturate_pair};
use setfam_core::{
    are_cross_intersecting, enumerate_ksets, max_compatible_size, shift_ad_extremis, shift_family, shift_ij,
    shift_to_initial, PropertyPredicate, Rational, SetFamily,
};

/// An arbitrary family on at most `max_n` points, uniformity 0..=n.
fn family(max_n: usize) -> impl Strategy<Value = SetFamily> {
    (1..=max_n)
        .prop_flat_map(|n| (Just(n), 0..=n))
        .prop_flat_map(|(n, k)| (Just(n), Just(k), prop::collection::vec(any::<bool>(), count(n, k))))
        .prop_map(|(n, k, keep)| {
            let all = enumerate_ksets(n, k).unwrap();
            let chosen = all.into_iter().zip(keep).filter(|(_, b)| *b).map(|(s, _)| s);
            SetFamily::new(n, k, chosen).unwrap()
        })
}

fn nonempty_family(max_n: usize) -> impl Strategy<Value = SetFamily> {
    family(max_n).prop_filter("nonempty", |f| !f.is_empty())
}

fn intersecting(max_n: usize) -> impl Strategy<Value = SetFamily> {
    (2..=max_n)
        .prop_flat_map(|n| (Just(n), 1..=n / 2, any::<u64>()))
        .prop_map(|(n, k, seed)| sample_intersecting(n, k, 1, seed).unwrap())
}

fn cross_pair(max_n: usize) -> impl Strategy<Value = (SetFamily, SetFamily)> {
    (4..=max_n)
        .prop_flat_map(|n| (Just(n), 1..=n / 2, 1..=n / 2, any::<u64>()))
        .prop_map(|(n, k, l, seed)| sample_cross_intersecting(CrossSpec::new(n, k, l, 1), seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn partition_identity(f in family(9)) {
        if f.k() == 0 {
            prop_assert!(f.link(1).is_err());
            return Ok(());
        }
        for i in 1..=f.n() {
            prop_assert_eq!(f.len(), f.link(i).unwrap().len() + f.avoiding(i).unwrap().len());
        }
    }

    #[test]
    fn diversity_is_size_minus_max_degree(f in nonempty_family(9)) {
        let s = f.stats().unwrap();
        prop_assert_eq!(s.diversity, s.size - s.max_degree);
        prop_assert_eq!(s.rho, Rational::new(s.max_degree as i64, s.size as i64));
        prop_assert_eq!(f.degree(s.argmax_element), s.max_degree);
        prop_assert!((1..s.argmax_element).all(|i| f.degree(i) < s.max_degree));
    }

    #[test]
    fn star_characterizations_agree(f in nonempty_family(9)) {
        let s = f.stats().unwrap();
        prop_assert_eq!(f.is_star(), s.diversity == 0);
        prop_assert_eq!(f.is_star(), s.rho == Rational::from_integer(1));
        if f.k() >= 1 {
            prop_assert_eq!(f.is_star(), s.covering_number == Some(1));
        }
    }

    #[test]
    fn diversity_is_monotone(f in family(9), drop in any::<u64>()) {
        let sub = SetFamily::new(f.n(), f.k(), f.iter().enumerate().filter(|(i, _)| (drop >> (i % 64)) & 1 == 0).map(|(_, s)| s.clone())).unwrap();
        prop_assert!(sub.diversity() <= f.diversity());
    }

    #[test]
    fn canonical_order(f in family(9)) {
        let lists = f.to_lists();
        let mut sorted = lists.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(lists, sorted);
    }

    #[test]
    fn json_round_trip(f in family(10)) {
        prop_assert_eq!(from_json(&to_json(&f)).unwrap(), f);
    }

    #[test]
    fn shift_preserves_size_and_lowers_weight(f in family(9), seed in any::<u64>()) {
        prop_assume!(f.n() >= 2);
        let i = 1 + (seed as usize) % (f.n() - 1);
        let j = i + 1 + (seed as usize >> 8) % (f.n() - i);
        let s = shift_family(&f, i, j).unwrap();
        prop_assert_eq!(s.len(), f.len());
        prop_assert!(s.weight() <= f.weight());
        prop_assert_eq!(s.weight() == f.weight(), s == f);
    }

    #[test]
    fn shift_preserves_intersecting(f in intersecting(10), seed in any::<u64>()) {
        let n = f.n();
        let i = 1 + (seed as usize) % (n - 1);
        let j = i + 1 + (seed as usize >> 8) % (n - i);
        prop_assert!(shift_family(&f, i, j).unwrap().is_intersecting());
    }

    #[test]
    fn simultaneous_shift_preserves_cross_intersection((f, g) in cross_pair(10), seed in any::<u64>()) {
        let n = f.n();
        let i = 1 + (seed as usize) % (n - 1);
        let j = i + 1 + (seed as usize >> 8) % (n - i);
        let shifted = shift_ij(&[f.clone(), g.clone()], i, j).unwrap();
        prop_assert!(are_cross_intersecting(&shifted[0], &shifted[1]));
        prop_assert_eq!((shifted[0].len(), shifted[1].len()), (f.len(), g.len()));
    }

    #[test]
    fn shift_to_initial_is_idempotent_and_initial(f in family(8)) {
        let once = shift_to_initial(&f);
        prop_assert!(once.is_initial());
        prop_assert_eq!(shift_to_initial(&once), once.clone());
        prop_assert_eq!(once.len(), f.len());
    }

    #[test]
    fn initial_means_every_shift_fixes(f in family(7)) {
        let fixed = (1..f.n()).all(|i| (i + 1..=f.n()).all(|j| shift_family(&f, i, j).unwrap() == f));
        prop_assert_eq!(fixed, f.is_initial());
    }

    #[test]
    fn initial_shadow_of_the_complement_link(n in 3usize..=10, k in 2usize..=4, seed in any::<u64>()) {
        prop_assume!(k <= n);
        let f = sample_initial(n, k, seed).unwrap();
        prop_assume!(!f.is_empty());
        let away = f.avoiding(1).unwrap();
        let through = f.link(1).unwrap();
        if !away.is_empty() {
            for s in away.shadow().unwrap().iter() {
                prop_assert!(through.contains(s));
            }
        }
    }

    #[test]
    fn ad_extremis_result_passes_the_audit((f, g) in cross_pair(9)) {
        let pair = [f.clone(), g.clone()];
        let predicate = if f.covering_number() >= Some(2) && g.covering_number() >= Some(2) {
            PropertyPredicate::non_trivial()
        } else {
            PropertyPredicate::True
        };
        let run = shift_ad_extremis(&pair, &predicate).unwrap();
        prop_assert!(audit_ad_extremis(&run.families, &predicate).is_ok());
        prop_assert!(predicate.holds(&run.families));
        prop_assert!(are_cross_intersecting(&run.families[0], &run.families[1]));
        prop_assert!(run.sweeps as u64 <= f.weight() + g.weight() + 1);
    }

    #[test]
    fn hilton_lex_pairs_stay_cross_intersecting((f, g) in cross_pair(10)) {
        let (f, g) = saturate_pair(&f, &g).unwrap();
        let n = f.n();
        let lf = lex_family(n, f.k(), f.len()).unwrap();
        let lg = lex_family(n, g.k(), g.len()).unwrap();
        prop_assert!(are_cross_intersecting(&lf, &lg));
        // lex-scan soundness: the scan bound dominates the sampled pair
        if n >= f.k() + g.k() {
            prop_assert!(g.len() <= max_compatible_size(n, f.k(), g.k(), f.len()).unwrap());
        }
    }

    #[test]
    fn lex_families_are_nested(n in 1usize..=9, k in 0usize..=9, m in 0usize..=126, extra in 0usize..=10) {
        prop_assume!(k <= n);
        let total = count(n, k);
        let (m, m2) = (m.min(total), (m + extra).min(total));
        let small = lex_family(n, k, m).unwrap();
        let big = lex_family(n, k, m2).unwrap();
        prop_assert!(small.is_subfamily_of(&big));
        prop_assert_eq!(small.len(), m);
    }

    #[test]
    fn lex_shadows_are_initial(n in 2usize..=8, k in 1usize..=8, m in 0usize..=70) {
        prop_assume!(k <= n);
        let f = lex_family(n, k, m.min(count(n, k))).unwrap();
        prop_assert!(f.shadow().unwrap().is_initial());
    }
}

#[test]
fn lex_shadows_need_not_be_lex_prefixes() {
    // ∂{123} = {12, 13, 23}, while the first three pairs in lex order end with 14
    let shadow = lex_family(6, 3, 1).unwrap().shadow().unwrap();
    assert_eq!(shadow.to_lists(), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
    assert!(!shadow.is_subfamily_of(&lex_family(6, 2, 3).unwrap()));
}

#[test]
fn compatible_profile_is_non_increasing() {
    for n in 2..=10 {
        for a in 1..=n {
            for b in 1..=n - a {
                let p = compatible_profile(n, a, b).unwrap();
                assert_eq!(p[0], count(n, b));
                assert!(p.windows(2).all(|w| w[0] >= w[1]), "n = {n}, a = {a}, b = {b}: {p:?}");
            }
        }
    }
}

#[test]
fn constructions_are_intersecting_and_non_trivial() {
    for n in 4..=12 {
        for k in 2..=(n / 2).min(5) {
            let mut ids = vec![
                ConstructionId::Triangle { n, k },
                ConstructionId::HTilde { n, k },
                ConstructionId::HiltonMilner { n, k },
            ];
            ids.extend((2..=k).map(|r| ConstructionId::AR { n, k, r }));
            if k == 3 && n >= 7 {
                ids.push(ConstructionId::Fano { n, k });
            }
            for id in ids {
                let Ok(f) = construct(id) else { continue };
                assert!(f.is_intersecting(), "{id:?}");
                assert!(f.covering_number() >= Some(2), "{id:?} is a star");
            }
            let star = construct(ConstructionId::FullStar { n, k, i: 1 }).unwrap();
            assert!(star.is_star() && star.len() == count(n - 1, k - 1));
        }
    }
}

#[test]
fn ar_degree_and_diversity_are_strictly_monotone_in_r() {
    for n in 7..=14 {
        for k in 3..=(n / 2).min(5) {
            let stats: Vec<_> = (2..=k)
                .map(|r| construct(ConstructionId::AR { n, k, r }).unwrap())
                .map(|f| (f.max_degree().0, f.diversity()))
                .collect();
            for w in stats.windows(2) {
                assert!(w[0].0 < w[1].0 && w[0].1 > w[1].1, "n = {n}, k = {k}: {stats:?}");
            }
        }
    }
}

#[test]
fn fano_sizes() {
    for n in 7..=14 {
        for k in 3..=(n - 4).min(6) {
            let f = construct(ConstructionId::Fano { n, k }).unwrap();
            if k == 3 {
                assert_eq!(f.len(), 7);
                assert_eq!(f.rho().unwrap(), Rational::new(3, 7));
            } else {
                assert_eq!(f.len(), 7 * count(n - 7, k - 3));
            }
        }
    }
}

#[test]
fn stats_on_named_examples() {
    let h = construct(ConstructionId::HTilde { n: 8, k: 3 }).unwrap();
    assert_eq!((h.len(), h.rho().unwrap()), (15, Rational::new(2, 3)));
    let fano = construct(ConstructionId::Fano { n: 8, k: 3 }).unwrap().stats().unwrap();
    assert_eq!((fano.rho, fano.diversity, fano.covering_number), (Rational::new(3, 7), 4, Some(3)));
    let star = construct(ConstructionId::FullStar { n: 6, k: 3, i: 1 }).unwrap().stats().unwrap();
    assert_eq!((star.size, star.diversity, star.covering_number), (10, 0, Some(1)));
}
