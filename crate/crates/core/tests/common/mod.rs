//! Independent oracles for the integration tests. Nothing here goes through
//! matrices, adjugates or partial fractions.

#![allow(dead_code)]

use catcover_core::{BigInt, BigRational, FiniteCategory, MorphismId, ObjectId};
use num::{One, Zero};

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Chains of length `n` ending at each object, by walking the composition
/// table (no adjacency matrix).
pub fn walk_targeted(c: &FiniteCategory, n: usize, nondegenerate: bool) -> Vec<u64> {
    let mut out = vec![0u64; c.num_objects()];
    fn go(c: &FiniteCategory, at: ObjectId, left: usize, nondeg: bool, out: &mut [u64]) {
        if left == 0 {
            out[at.0] += 1;
            return;
        }
        for &f in c.outgoing(at) {
            if nondeg && c.is_identity(f) {
                continue;
            }
            go(c, c.target(f), left - 1, nondeg, out);
        }
    }
    for x in c.object_ids() {
        go(c, x, n, nondegenerate, &mut out);
    }
    out
}

pub fn walk_total(c: &FiniteCategory, n: usize, nondegenerate: bool) -> u64 {
    walk_targeted(c, n, nondegenerate).iter().sum()
}

/// Truncated power series with the operations the oracles need.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series(pub Vec<BigRational>);

impl Series {
    pub fn zero(order: usize) -> Self {
        Series(vec![BigRational::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        let mut s = Series::zero(order);
        s.0[0] = BigRational::one();
        s
    }

    pub fn order(&self) -> usize {
        self.0.len() - 1
    }

    pub fn mul(&self, other: &Series) -> Series {
        let order = self.order();
        let mut out = Series::zero(order);
        for i in 0..=order {
            for j in 0..=order - i {
                out.0[i + j] += &self.0[i] * &other.0[j];
            }
        }
        out
    }

    /// `exp(g)` by summing `g^k / k!`; `g` must have zero constant term.
    pub fn exp(&self) -> Series {
        assert!(self.0[0].is_zero());
        let order = self.order();
        let mut total = Series::one(order);
        let mut term = Series::one(order);
        for k in 1..=order {
            term = term.mul(self);
            for c in term.0.iter_mut() {
                *c /= q(k as i64);
            }
            for (t, c) in total.0.iter_mut().zip(&term.0) {
                *t += c;
            }
        }
        total
    }

    /// `(1 - a z)^{-1}`.
    pub fn geometric(a: &BigRational, order: usize) -> Series {
        let mut s = Series::zero(order);
        let mut p = BigRational::one();
        for n in 0..=order {
            s.0[n] = p.clone();
            p *= a;
        }
        s
    }

    pub fn pow(&self, k: usize) -> Series {
        (0..k).fold(Series::one(self.order()), |acc, _| acc.mul(self))
    }
}

/// `ζ` through `z^order` from walked chain counts.
pub fn zeta_by_walking(c: &FiniteCategory, order: usize) -> Series {
    let mut g = Series::zero(order);
    for n in 1..=order {
        g.0[n] = q(walk_total(c, n, false) as i64) / q(n as i64);
    }
    g.exp()
}

/// Lists every chain of length `n` as morphism sequences (brute force).
pub fn all_chains(c: &FiniteCategory, n: usize, nondegenerate: bool) -> Vec<Vec<MorphismId>> {
    let mut out = Vec::new();
    let usable = |f: MorphismId| !(nondegenerate && c.is_identity(f));
    let mut frontier: Vec<Vec<MorphismId>> = c.morphism_ids().filter(|&f| usable(f)).map(|f| vec![f]).collect();
    if n == 0 {
        return c.object_ids().map(|_| Vec::new()).collect();
    }
    for _ in 1..n {
        let mut next = Vec::new();
        for chain in frontier {
            let end = c.target(*chain.last().unwrap());
            for &g in c.outgoing(end) {
                if usable(g) {
                    let mut longer = chain.clone();
                    longer.push(g);
                    next.push(longer);
                }
            }
        }
        frontier = next;
    }
    out.extend(frontier);
    out
}

/// Random category from a seed, reproducible across runs.
pub fn seeded_category(seed: u64, max_objects: usize, max_morphisms: usize) -> FiniteCategory {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    catcover_core::generate::random_category(&mut rng, max_objects, max_morphisms)
}

/// The poset on `0..n` generated by `i < j` for each selected pair `(i, j)`
/// with `i < j`; objects are `p{i}`, the unique arrow `i ≤ j` is `p{i}p{j}`.
#[allow(clippy::needless_range_loop)]
pub fn poset(n: usize, relations: &[(usize, usize)]) -> FiniteCategory {
    let mut leq = vec![vec![false; n]; n];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(i, j) in relations {
        let (i, j) = (i % n, j % n);
        if i < j {
            leq[i][j] = true;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if leq[i][k] && leq[k][j] {
                    leq[i][j] = true;
                }
            }
        }
    }
    let arrow = |i: usize, j: usize| if i == j { format!("1_p{i}") } else { format!("p{i}p{j}") };
    let mut raw = catcover_core::RawCategory::new();
    for i in 0..n {
        raw.add_object(format!("p{i}"));
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && leq[i][j] {
                raw.add_morphism(arrow(i, j), format!("p{i}"), format!("p{j}"));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i != j && j != k && leq[i][j] && leq[j][k] {
                    raw.add_composite(arrow(j, k), arrow(i, j), arrow(i, k));
                }
            }
        }
    }
    raw.build().expect("poset")
}

/// Levels by longest chain ending at each object of an acyclic category.
pub fn depth_levels(c: &FiniteCategory) -> std::collections::BTreeMap<String, usize> {
    let mut depth = vec![0usize; c.num_objects()];
    for _ in 0..c.num_objects() {
        for f in c.morphism_ids() {
            if !c.is_identity(f) {
                let (s, t) = (c.source(f).0, c.target(f).0);
                depth[t] = depth[t].max(depth[s] + 1);
            }
        }
    }
    c.object_ids().map(|x| (c.object_name(x).to_owned(), depth[x.0])).collect()
}

/// The action groupoid of `Z/m` acting on `Z/k` by translation (`k | m`),
/// with its projection onto `Z/m`: a connected `k`-sheeted covering.
pub fn action_groupoid_covering(m: usize, k: usize) -> catcover_core::CoveringBundle {
    assert!(k >= 1 && m.is_multiple_of(k));
    let group_name = |g: usize| if g == 0 { "1_*".to_owned() } else { format!("g^{g}") };
    let arrow = |x: usize, g: usize| if g == 0 { format!("1_x{x}") } else { format!("({x},{g})") };
    let mut raw = catcover_core::RawCategory::new();
    for x in 0..k {
        raw.add_object(format!("x{x}"));
    }
    for x in 0..k {
        for g in 1..m {
            raw.add_morphism(arrow(x, g), format!("x{x}"), format!("x{}", (x + g) % k));
        }
    }
    for x in 0..k {
        for g in 1..m {
            for h in 1..m {
                raw.add_composite(arrow((x + g) % k, h), arrow(x, g), arrow(x, (g + h) % m));
            }
        }
    }
    let total = raw.build().expect("action groupoid");
    let base = catcover_core::builders::cyclic_group(m).unwrap();
    let mut map = catcover_core::RawFunctor::default();
    for x in 0..k {
        map.object_map.insert(format!("x{x}"), "*".into());
        for g in 0..m {
            map.morphism_map.insert(arrow(x, g), group_name(g));
        }
    }
    catcover_core::CoveringBundle { total, base, map }
}

/// `k` disjoint copies of `c` projected onto `c`.
pub fn trivial_covering(c: &FiniteCategory, k: usize) -> catcover_core::CoveringBundle {
    let parts: Vec<&FiniteCategory> = std::iter::repeat_n(c, k).collect();
    let total = FiniteCategory::coproduct(&parts).unwrap();
    let mut map = catcover_core::RawFunctor::default();
    for i in 0..k {
        for x in c.object_ids() {
            let name = c.object_name(x);
            map.object_map.insert(format!("{i}:{name}"), name.to_owned());
        }
        for f in c.morphism_ids() {
            let name = c.name_of(f);
            map.morphism_map.insert(format!("{i}:{name}"), name.to_owned());
        }
    }
    catcover_core::CoveringBundle { total, base: c.clone(), map }
}
