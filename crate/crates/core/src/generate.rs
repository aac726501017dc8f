//! Random small categories for property tests and benchmarks.
//!
//! Each object is a small finite set and each morphism a function between
//! them; a few random functions are closed under composition. Categories of
//! functions are associative by construction, so every output is valid.

use std::collections::HashMap;

use rand::Rng;

use crate::category::{FiniteCategory, RawCategory};

/// `(source, target, values)`: a function from `0..size(source)`.
type Arrow = (usize, usize, Vec<usize>);

/// A random category with at most `max_objects` objects and at most
/// `max_morphisms` morphisms (identities included). Requires
/// `1 ≤ max_objects ≤ max_morphisms`.
pub fn random_category<R: Rng + ?Sized>(rng: &mut R, max_objects: usize, max_morphisms: usize) -> FiniteCategory {
    assert!(1 <= max_objects && max_objects <= max_morphisms);
    loop {
        if let Some(c) = attempt(rng, max_objects, max_morphisms) {
            return c;
        }
    }
}

fn attempt<R: Rng + ?Sized>(rng: &mut R, max_objects: usize, max_morphisms: usize) -> Option<FiniteCategory> {
    let k = rng.gen_range(1..=max_objects);
    let sizes: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=3)).collect();
    let mut arrows: Vec<Arrow> = (0..k).map(|x| (x, x, (0..sizes[x]).collect())).collect();
    let mut index: HashMap<Arrow, usize> = arrows.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
    let generators = rng.gen_range(0..=(max_morphisms - k).min(4));
    for _ in 0..generators {
        let s = rng.gen_range(0..k);
        let t = rng.gen_range(0..k);
        let values = (0..sizes[s]).map(|_| rng.gen_range(0..sizes[t])).collect();
        let a = (s, t, values);
        if !index.contains_key(&a) {
            index.insert(a.clone(), arrows.len());
            arrows.push(a);
        }
    }
    // close under composition
    let mut composites: HashMap<(usize, usize), usize> = HashMap::new();
    let mut changed = true;
    while changed {
        changed = false;
        let n = arrows.len();
        for f in 0..n {
            for g in 0..n {
                if arrows[f].1 != arrows[g].0 || composites.contains_key(&(g, f)) {
                    continue;
                }
                let values = arrows[f].2.iter().map(|&v| arrows[g].2[v]).collect();
                let gf = (arrows[f].0, arrows[g].1, values);
                let id = match index.get(&gf) {
                    Some(&id) => id,
                    None => {
                        if arrows.len() == max_morphisms {
                            return None;
                        }
                        index.insert(gf.clone(), arrows.len());
                        arrows.push(gf);
                        changed = true;
                        arrows.len() - 1
                    }
                };
                composites.insert((g, f), id);
            }
        }
    }
    let mut raw = RawCategory::new();
    for x in 0..k {
        raw.add_object(format!("o{x}"));
    }
    let name = |i: usize| if i < k { format!("1_o{i}") } else { format!("m{}", i - k) };
    for (i, (s, t, _)) in arrows.iter().enumerate().skip(k) {
        raw.add_morphism(name(i), format!("o{s}"), format!("o{t}"));
    }
    let mut table: Vec<_> = composites.into_iter().collect();
    table.sort();
    for ((g, f), gf) in table {
        raw.add_composite(name(g), name(f), name(gf));
    }
    Some(raw.build().expect("categories of functions are valid"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sizes_are_bounded_and_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut again = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let c = random_category(&mut rng, 6, 8);
            assert!(c.num_objects() <= 6 && c.num_morphisms() <= 8);
            assert_eq!(c, random_category(&mut again, 6, 8));
        }
    }

    #[test]
    fn non_identity_morphisms_appear() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let interesting = (0..50)
            .map(|_| random_category(&mut rng, 3, 8))
            .filter(|c| !c.is_discrete())
            .count();
        assert!(interesting > 10);
    }
}
