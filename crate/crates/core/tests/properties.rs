//! Invariants of nerve counts, zeta functions and Euler characteristics on
//! random categories, checked against the walking oracles in `common`.

mod common;

use catcover_core::io::{category_to_json, parse_category};
use catcover_core::matrix::PolyMatrix;
use catcover_core::zeta::closed_form_from_log_derivative;
use catcover_core::{
    adjacency_matrix, chi_from_closed_form, enumerate_nerve, euler_rational_function, groupoid_euler, log_derivative,
    nerve_count, nerve_count_targeted, series_euler_characteristic, zeta_closed_form, zeta_series, BigRational,
    FiniteCategory, Poly, Variant, ZetaClosedForm, ZetaPole,
};
use common::{action_groupoid_covering, all_chains, frac, poset, q, seeded_category, walk_targeted, walk_total, zeta_by_walking};
use num::{One, Zero};
use proptest::prelude::*;

const VARIANTS: [Variant; 2] = [Variant::Degenerate, Variant::Nondegenerate];

fn arb_category() -> impl Strategy<Value = FiniteCategory> {
    (any::<u64>(), 1usize..=5, 0usize..=4).prop_map(|(seed, k, extra)| seeded_category(seed, k, k + extra))
}

fn arb_poset() -> impl Strategy<Value = FiniteCategory> {
    (1usize..=6, prop::collection::vec((0usize..6, 0usize..6), 0..10)).prop_map(|(n, rel)| poset(n, &rel))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matrix_counts_match_walks_and_listings(c in arb_category()) {
        for n in 0..=4 {
            for variant in VARIANTS {
                let nondeg = variant == Variant::Nondegenerate;
                let counted = nerve_count(&c, n, variant).count;
                prop_assert_eq!(counted.clone(), walk_total(&c, n, nondeg).into());
                let listed = enumerate_nerve(&c, n, variant, usize::MAX);
                prop_assert_eq!(counted, listed.chains.len().into());
                if n > 0 {
                    prop_assert_eq!(listed.chains.len(), all_chains(&c, n, nondeg).len());
                }
            }
        }
    }

    #[test]
    fn targeted_counts_sum_to_the_total(c in arb_category()) {
        for n in 0..=4 {
            for variant in VARIANTS {
                let walked = walk_targeted(&c, n, variant == Variant::Nondegenerate);
                let mut sum = num::BigUint::zero();
                for x in c.object_ids() {
                    let t = nerve_count_targeted(&c, n, c.object_name(x), variant).unwrap().count;
                    prop_assert_eq!(t.clone(), walked[x.0].into());
                    sum += t;
                }
                prop_assert_eq!(sum, nerve_count(&c, n, variant).count);
            }
        }
    }

    #[test]
    fn low_degree_counts(c in arb_category()) {
        let deg = |n| nerve_count(&c, n, Variant::Degenerate).count;
        let nondeg = |n| nerve_count(&c, n, Variant::Nondegenerate).count;
        prop_assert_eq!(deg(0), c.num_objects().into());
        prop_assert_eq!(nondeg(0), c.num_objects().into());
        prop_assert_eq!(deg(1), c.num_morphisms().into());
        prop_assert_eq!(nondeg(1), (c.num_morphisms() - c.num_objects()).into());
        for n in 0..=5 {
            prop_assert!(deg(n) >= nondeg(n));
        }
    }

    #[test]
    fn source_and_target_sets_partition_the_morphisms(c in arb_category()) {
        let (mut s, mut t) = (0, 0);
        for x in c.object_ids() {
            let sets = c.morphism_sets(x);
            prop_assert!(sets.source.contains(&sets.identity) && sets.target.contains(&sets.identity));
            prop_assert!(sets.source.iter().all(|&f| c.source(f) == x));
            prop_assert!(sets.target.iter().all(|&f| c.target(f) == x));
            s += sets.source.len();
            t += sets.target.len();
        }
        prop_assert_eq!(s, c.num_morphisms());
        prop_assert_eq!(t, c.num_morphisms());
    }

    #[test]
    fn posets_are_acyclic(p in arb_poset()) {
        prop_assert!(p.is_poset());
        prop_assert!(p.is_acyclic());
        // Nerves of a finite acyclic category vanish above the object count.
        prop_assert!(nerve_count(&p, p.num_objects(), Variant::Nondegenerate).count.is_zero());
    }

    #[test]
    fn json_round_trip(c in arb_category()) {
        let text = category_to_json(&c);
        let back = parse_category(&text).unwrap();
        prop_assert_eq!(category_to_json(&back), text);
        prop_assert_eq!(back, c);
    }

    #[test]
    fn zeta_series_matches_walked_counts(c in arb_category()) {
        let order = 6;
        prop_assert_eq!(zeta_series(&c, order).coeffs().to_vec(), zeta_by_walking(&c, order).0);
    }

    #[test]
    fn log_derivative_generates_the_counts(c in arb_category()) {
        let taylor = log_derivative(&c).taylor(7).unwrap();
        for (k, coeff) in taylor.iter().enumerate() {
            prop_assert_eq!(coeff.clone(), q(walk_total(&c, k + 1, false) as i64));
        }
    }

    #[test]
    fn closed_form_expands_to_the_series(c in arb_category()) {
        if let Ok(form) = zeta_closed_form(&c) {
            prop_assert_eq!(form.expand(7).coeffs().to_vec(), zeta_by_walking(&c, 7).0);
            prop_assert_eq!(form.log_derivative(), log_derivative(&c));
        }
    }

    #[test]
    fn two_paths_to_chi_agree(c in arb_category()) {
        // A singular adjacency matrix can break both statements; see
        // `singular_adjacency_breaks_the_existence_criterion`.
        if adjacency_is_singular(&c) {
            return Ok(());
        }
        if let Ok(form) = zeta_closed_form(&c) {
            let series = series_euler_characteristic(&c);
            prop_assert_eq!(&series, &chi_from_closed_form(&form));
            prop_assert_eq!(series.is_some(), form.q.is_zero());
        }
    }

    #[test]
    fn acyclic_chi_is_the_alternating_chain_sum(p in arb_poset()) {
        let mut alternating = BigRational::zero();
        for n in 0..=p.num_objects() {
            let term = q(walk_total(&p, n, true) as i64);
            if n % 2 == 0 { alternating += term } else { alternating -= term }
        }
        prop_assert_eq!(series_euler_characteristic(&p), Some(alternating));
        prop_assert!(euler_rational_function(&p).is_polynomial());
    }

    #[test]
    fn adjugate_entry_sum_by_the_determinant_lemma(c in arb_category()) {
        // sum(adj M) = det(M + J) - det M for the all-ones matrix J.
        let a = adjacency_matrix(&c, Variant::Degenerate);
        let m = PolyMatrix::identity_minus(&a.entries);
        let n = m.dim();
        let plus_j = PolyMatrix::from_rows(
            (0..n).map(|i| (0..n).map(|j| m.get(i, j) + &Poly::one()).collect()).collect(),
        );
        let adj = m.adjugate();
        prop_assert_eq!(adj.entry_sum(), &plus_j.determinant() - &m.determinant());
        prop_assert_eq!(adj, m.adjugate_by_cofactors());
    }

    #[test]
    fn partial_fractions_reconstruct_the_data(
        poles in prop::collection::btree_map(-4i64..=4, (prop::collection::vec(-3i64..=3, 0..3), 1i64..=3), 0..3),
        q_coeffs in prop::collection::vec(-3i64..=3, 0..3),
    ) {
        let poles: Vec<ZetaPole> = poles
            .into_iter()
            .filter(|(a, _)| *a != 0)
            .map(|(a, (mut bs, last))| {
                bs.push(last);
                ZetaPole {
                    a: q(a),
                    multiplicity: bs.len(),
                    coefficients: bs.into_iter().map(q).collect(),
                }
            })
            .collect();
        let mut qc = vec![BigRational::zero()];
        qc.extend(q_coeffs.into_iter().map(q));
        let form = ZetaClosedForm { poles, q: Poly::from_coeffs(qc), splits: true };
        let rebuilt = closed_form_from_log_derivative(&form.log_derivative()).unwrap();
        prop_assert_eq!(rebuilt, form);
    }

    #[test]
    fn groupoid_formula_matches_the_series(m in 1usize..=6, pick in 0usize..6, copies in 1usize..=3) {
        let divisors: Vec<usize> = (1..=m).filter(|k| m % k == 0).collect();
        let k = divisors[pick % divisors.len()];
        let g = action_groupoid_covering(m, k).total;
        let parts: Vec<&FiniteCategory> = std::iter::repeat_n(&g, copies).collect();
        let c = FiniteCategory::coproduct(&parts).unwrap();
        // A connected groupoid with automorphism group of order m / k.
        let expected = frac((copies * k) as i64, m as i64);
        prop_assert_eq!(groupoid_euler(&c).unwrap(), expected.clone());
        prop_assert_eq!(series_euler_characteristic(&c), Some(expected));
    }
}

fn adjacency_is_singular(c: &FiniteCategory) -> bool {
    // det(E - Az) has degree |Ob| exactly when det A ≠ 0.
    let a = adjacency_matrix(c, Variant::Degenerate);
    PolyMatrix::identity_minus(&a.entries).determinant().degree() != Some(c.num_objects())
}

/// Two objects with adjacency matrix [[2, 4], [1, 2]]. The closed form is
/// (1 - 4z)^(-9/4) with Q = 0, yet f_I = (2 + 3t)/((1 + t)(1 - 3t)) has a
/// pole at t = -1: the existence criterion fails without det A ≠ 0.
#[test]
fn singular_adjacency_breaks_the_existence_criterion() {
    let c = parse_category(include_str!("fixtures/singular_adjacency.json")).unwrap();
    let a = adjacency_matrix(&c, Variant::Degenerate);
    let entries: Vec<Vec<u32>> = a
        .entries
        .iter()
        .map(|row| row.iter().map(|x| x.to_u32_digits().first().copied().unwrap_or(0)).collect())
        .collect();
    assert_eq!(entries, vec![vec![2, 4], vec![1, 2]]);
    assert!(adjacency_is_singular(&c));

    // Independent check of both generating functions from walked counts;
    // the monic denominator is (1 + t)(1 - 3t)/(-3).
    let taylor = euler_rational_function(&c).taylor(6).unwrap();
    for (n, coeff) in taylor.iter().enumerate() {
        assert_eq!(*coeff, q(walk_total(&c, n, true) as i64));
    }
    for n in 1..=6 {
        assert_eq!(walk_total(&c, n, false), 9 * 4u64.pow(n as u32 - 1));
    }

    let form = zeta_closed_form(&c).unwrap();
    assert!(form.q.is_zero());
    assert_eq!(form.display(), "(1 - 4z)^(-9/4)");
    assert_eq!(chi_from_closed_form(&form), Some(frac(9, 16)));
    assert_eq!(euler_rational_function(&c).denominator(), &Poly::from_ints(&[-1, 2, 3]).scale(&frac(1, 3)));
    assert_eq!(series_euler_characteristic(&c), None);
}

#[test]
fn chi_of_a_point_is_one() {
    let c = FiniteCategory::discrete(&["pt"]).unwrap();
    assert_eq!(series_euler_characteristic(&c), Some(BigRational::one()));
}
