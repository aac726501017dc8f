//! Filtered Euler characteristics: truncation, detection and products.

mod common;

use std::collections::BTreeMap;

use catcover_core::builders::{Ladder, LadderBase};
use catcover_core::filtered::{chi_coefficients_of, Copies, CopiesProjection};
use catcover_core::{
    chi_fil, detect_rational, f_chi_coefficients, series_euler_characteristic, verify_fil_product, BigInt,
    BigRational, FilteredCategory, FiniteCategory, LevelCategory, Poly, RationalFunction,
};
use common::{depth_levels, poset, q, walk_targeted};
use num::Zero;
use proptest::prelude::*;

fn arb_filtered_poset() -> impl Strategy<Value = FilteredCategory> {
    (1usize..=5, prop::collection::vec((0usize..5, 0usize..5), 0..8), prop::collection::vec(0usize..3, 5)).prop_map(
        |(n, rel, gaps)| {
            let p = poset(n, &rel);
            // Stretch the depth filtration by random gaps; still strict.
            let mut levels = depth_levels(&p);
            for (i, level) in levels.values_mut().enumerate() {
                *level = *level * 3 + gaps[i % gaps.len()];
            }
            FilteredCategory::new(p, &levels).unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn truncation_is_stable(f in arb_filtered_poset(), short in 0usize..8, extra in 0usize..8) {
        let long = short + extra;
        let a = f_chi_coefficients(&f, short).coefficients;
        let b = f_chi_coefficients(&f, long).coefficients;
        prop_assert_eq!(&a[..], &b[..=short]);
        let la = f_chi_coefficients(&Ladder, short).coefficients;
        let lb = f_chi_coefficients(&Ladder, long).coefficients;
        prop_assert_eq!(&la[..], &lb[..=short]);
    }

    #[test]
    fn coefficients_match_level_chain_walks(f in arb_filtered_poset()) {
        // c_i = (-1)^i Σ_n (-1)^n #{non-degenerate n-chains ending at level i}.
        let c = f.category();
        let top = f.max_level();
        let mut expected = vec![BigInt::zero(); top + 1];
        for n in 0..=c.num_objects() {
            for (x, count) in walk_targeted(c, n, true).into_iter().enumerate() {
                let level = f.filtration().levels()[x];
                let sign = if (level + n) % 2 == 0 { 1 } else { -1 };
                expected[level] += BigInt::from(sign * count as i64);
            }
        }
        prop_assert_eq!(chi_coefficients_of(&f, top).coefficients, expected);
    }

    #[test]
    fn detection_recovers_small_rational_functions(
        num in prop::collection::vec(-4i64..=4, 1..=3),
        den_tail in prop::collection::vec(-3i64..=3, 0..=2),
    ) {
        let mut den = vec![1i64];
        den.extend(den_tail);
        let f = RationalFunction::new(Poly::from_ints(&num), Poly::from_ints(&den));
        let coeffs = f.taylor(19).unwrap();
        prop_assert_eq!(detect_rational(&coeffs, 4).unwrap(), Some(f));
    }

    #[test]
    fn discrete_fibers_count_their_objects(levels in prop::collection::vec(0usize..6, 1..6)) {
        let names: Vec<String> = (0..levels.len()).map(|i| format!("d{i}")).collect();
        let mu: BTreeMap<String, usize> = names.iter().cloned().zip(levels.iter().copied()).collect();
        let fiber = FilteredCategory::new(FiniteCategory::discrete(&names).unwrap(), &mu).unwrap();
        // An impulse at level i needs 2(i + 1) fitted terms.
        let chi = chi_fil(&fiber, 16, 3).unwrap();
        prop_assert_eq!(chi.value(), Some(&q(levels.len() as i64)));
    }

    #[test]
    fn copies_multiply_coefficients(copies in 1usize..=3, f in arb_filtered_poset()) {
        let many = Copies { inner: LadderBase, copies };
        let base = f_chi_coefficients(&LadderBase, 12).coefficients;
        let total = f_chi_coefficients(&many, 12).coefficients;
        prop_assert!(total.iter().zip(&base).all(|(t, b)| *t == b * BigInt::from(copies)));
        let many = Copies { inner: f.clone(), copies };
        let base = f_chi_coefficients(&f, 12).coefficients;
        let total = f_chi_coefficients(&many, 12).coefficients;
        prop_assert!(total.iter().zip(&base).all(|(t, b)| *t == b * BigInt::from(copies)));
    }

    #[test]
    fn finite_chi_fil_is_the_series_chi(f in arb_filtered_poset()) {
        let levels = 2 * (f.max_level() + 1) + 6;
        let chi = chi_fil(&f, levels, 4).unwrap();
        let expected: Option<BigRational> = series_euler_characteristic(f.category());
        prop_assert_eq!(chi.value().cloned(), expected);
        prop_assert!(chi.rational.unwrap().is_polynomial());
    }

    #[test]
    fn copies_of_a_filtered_poset_cover_it(copies in 1usize..=3, f in arb_filtered_poset()) {
        prop_assume!(f.category().is_connected());
        let many = Copies { inner: f.clone(), copies };
        let levels = 2 * (f.max_level() + 1) + 6;
        let report = verify_fil_product(&many, &f, &CopiesProjection, levels, 4, &BTreeMap::new()).unwrap();
        prop_assert_eq!(report.sheets, copies);
        prop_assert!(report.passed());
    }
}

#[test]
fn two_copies_of_the_ladder_base() {
    let total = Copies { inner: LadderBase, copies: 2 };
    let report = verify_fil_product(&total, &LadderBase, &CopiesProjection, 24, 6, &BTreeMap::new()).unwrap();
    assert_eq!(report.sheets, 2);
    assert!(report.passed());
    assert_eq!(chi_fil(&total, 24, 6).unwrap().value(), Some(&q(1)));
}

#[test]
fn ladder_truncations_are_finite_categories() {
    for level in 0..6 {
        let t = Ladder.truncate(level);
        assert!(t.category().is_acyclic());
        assert_eq!(t.category().num_objects(), 2 * (level + 1));
    }
}

#[test]
fn truncating_below_every_object_is_empty() {
    let mu = BTreeMap::from([("d".to_owned(), 3)]);
    let f = FilteredCategory::new(FiniteCategory::discrete(&["d"]).unwrap(), &mu).unwrap();
    assert_eq!(f.truncate(2).category().num_objects(), 0);
    assert_eq!(f_chi_coefficients(&f, 2).coefficients, vec![BigInt::zero(); 3]);
}
