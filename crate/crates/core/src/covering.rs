//! Coverings of finite categories.
//!
//! A functor `P: E → B` with `B` connected is a covering when, for every
//! object `x` of `E`, `P` restricts to bijections `S(x) → S(P(x))` and
//! `T(x) → T(P(x))`. A successful check produces a [`CoveringCertificate`]
//! that later computations take as proof.

use std::collections::VecDeque;

use num::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::category::{MorphismId, ObjectId};
use crate::functor::CatFunctor;
use crate::nerve::{targeted_count_table, Variant};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CoveringError {
    #[error("base category is not connected")]
    BaseNotConnected,
    #[error("at `{object}`: `{first}` and `{second}` in S(x) have the same image")]
    SourceMapNotInjective {
        object: String,
        first: String,
        second: String,
    },
    #[error("at `{object}`: `{missing}` in S(P(x)) has no preimage in S(x)")]
    SourceMapNotSurjective { object: String, missing: String },
    #[error("at `{object}`: `{first}` and `{second}` in T(x) have the same image")]
    TargetMapNotInjective {
        object: String,
        first: String,
        second: String,
    },
    #[error("at `{object}`: `{missing}` in T(P(x)) has no preimage in T(x)")]
    TargetMapNotSurjective { object: String, missing: String },
    #[error("fiber over `{first}` has {first_size} objects but fiber over `{second}` has {second_size}")]
    FiberSizeMismatch {
        first: String,
        first_size: usize,
        second: String,
        second_size: usize,
    },
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
}

/// The bijections `S(x) → S(P(x))` and `T(x) → T(P(x))` as `(f, P(f))`
/// pairs, in the order of `S(x)` and `T(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjectWitness {
    pub source: Vec<(MorphismId, MorphismId)>,
    pub target: Vec<(MorphismId, MorphismId)>,
}

/// Proof that a functor is a covering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringCertificate {
    functor: CatFunctor,
    sheets: usize,
    fibers: Vec<Vec<ObjectId>>,
    witnesses: Vec<ObjectWitness>,
}

enum Side {
    Source,
    Target,
}

fn pair_up(
    p: &CatFunctor,
    x: ObjectId,
    upstairs: &[MorphismId],
    downstairs: &[MorphismId],
    side: Side,
) -> Result<Vec<(MorphismId, MorphismId)>, CoveringError> {
    let (e, b) = (p.source(), p.target());
    let object = || e.object_name(x).to_owned();
    let mut preimage: Vec<Option<MorphismId>> = vec![None; b.num_morphisms()];
    let mut pairs = Vec::with_capacity(upstairs.len());
    for &f in upstairs {
        let g = p.map_morphism(f);
        if let Some(first) = preimage[g.0] {
            let (first, second) = (e.name_of(first).to_owned(), e.name_of(f).to_owned());
            return Err(match side {
                Side::Source => CoveringError::SourceMapNotInjective { object: object(), first, second },
                Side::Target => CoveringError::TargetMapNotInjective { object: object(), first, second },
            });
        }
        preimage[g.0] = Some(f);
        pairs.push((f, g));
    }
    if let Some(&g) = downstairs.iter().find(|g| preimage[g.0].is_none()) {
        let missing = b.name_of(g).to_owned();
        return Err(match side {
            Side::Source => CoveringError::SourceMapNotSurjective { object: object(), missing },
            Side::Target => CoveringError::TargetMapNotSurjective { object: object(), missing },
        });
    }
    Ok(pairs)
}

/// Decides whether `p` is a covering. Conditions are checked in order:
/// connectivity of the base, then `S` and `T` bijections object by object,
/// then equal fiber sizes.
pub fn check_covering(p: CatFunctor) -> Result<CoveringCertificate, CoveringError> {
    let (e, b) = (p.source(), p.target());
    if !b.is_connected() {
        return Err(CoveringError::BaseNotConnected);
    }
    let mut witnesses = Vec::with_capacity(e.num_objects());
    for x in e.object_ids() {
        let px = p.map_object(x);
        let source = pair_up(&p, x, e.outgoing(x), b.outgoing(px), Side::Source)?;
        let target = pair_up(&p, x, e.incoming(x), b.incoming(px), Side::Target)?;
        witnesses.push(ObjectWitness { source, target });
    }
    let mut fibers = vec![Vec::new(); b.num_objects()];
    for x in e.object_ids() {
        fibers[p.map_object(x).0].push(x);
    }
    let sheets = fibers[0].len();
    if let Some(i) = fibers.iter().position(|f| f.len() != sheets) {
        return Err(CoveringError::FiberSizeMismatch {
            first: b.object_name(ObjectId(0)).to_owned(),
            first_size: sheets,
            second: b.object_name(ObjectId(i)).to_owned(),
            second_size: fibers[i].len(),
        });
    }
    Ok(CoveringCertificate {
        functor: p,
        sheets,
        fibers,
        witnesses,
    })
}

/// `P^{-1}(b)` by name, for any functor.
pub fn fiber(p: &CatFunctor, b: &str) -> Result<Vec<String>, CoveringError> {
    let target = p
        .target()
        .object_id(b)
        .ok_or_else(|| CoveringError::UnknownObject(b.to_owned()))?;
    let e = p.source();
    Ok(e.object_ids()
        .filter(|&x| p.map_object(x) == target)
        .map(|x| e.object_name(x).to_owned())
        .collect())
}

/// One pair `x ↦ y_x` of a fiber transport, with the lift `f_x: x → y_x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransportPair {
    pub from: String,
    pub to: String,
    pub lift: String,
}

/// The bijection `P^{-1}(b) → P^{-1}(b')` induced by `f: b → b'`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberTransport {
    pub morphism: String,
    pub source: String,
    pub target: String,
    pub pairs: Vec<TransportPair>,
}

/// Which way a zig-zag step traverses a base morphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

impl CoveringCertificate {
    pub fn functor(&self) -> &CatFunctor {
        &self.functor
    }

    pub fn sheets(&self) -> usize {
        self.sheets
    }

    pub fn fiber_ids(&self, b: ObjectId) -> &[ObjectId] {
        &self.fibers[b.0]
    }

    pub fn witness(&self, x: ObjectId) -> &ObjectWitness {
        &self.witnesses[x.0]
    }

    /// Fibers by name, in base object order.
    pub fn fiber_table(&self) -> Vec<(String, Vec<String>)> {
        let (e, b) = (self.functor.source(), self.functor.target());
        b.object_ids()
            .map(|y| {
                let members = self.fibers[y.0].iter().map(|&x| e.object_name(x).to_owned()).collect();
                (b.object_name(y).to_owned(), members)
            })
            .collect()
    }

    /// The unique `f_x ∈ S(x)` with `P(f_x) = f`.
    pub fn lift(&self, x: ObjectId, f: MorphismId) -> Option<MorphismId> {
        self.witnesses[x.0]
            .source
            .iter()
            .find(|&&(_, g)| g == f)
            .map(|&(lift, _)| lift)
    }

    /// The unique `f_x ∈ T(x)` with `P(f_x) = f`.
    pub fn lift_ending_at(&self, x: ObjectId, f: MorphismId) -> Option<MorphismId> {
        self.witnesses[x.0]
            .target
            .iter()
            .find(|&&(_, g)| g == f)
            .map(|&(lift, _)| lift)
    }

    /// Pairs `(x, y_x)` for `f: b → b'`, following unique lifts forward.
    pub fn transport_ids(&self, f: MorphismId) -> Vec<(ObjectId, ObjectId, MorphismId)> {
        let (e, b) = (self.functor.source(), self.functor.target());
        self.fibers[b.source(f).0]
            .iter()
            .map(|&x| {
                let lift = self.lift(x, f).expect("certified covering has every lift");
                (x, e.target(lift), lift)
            })
            .collect()
    }

    /// The bijection `P^{-1}(b) ≅ P^{-1}(b')` obtained by composing fiber
    /// transports along `steps` in diagrammatic order (first step applied
    /// first). Backward steps follow lifts ending in the fiber.
    pub fn transport_along(
        &self,
        start: ObjectId,
        steps: &[(MorphismId, Direction)],
    ) -> Option<Vec<(ObjectId, ObjectId)>> {
        let (e, b) = (self.functor.source(), self.functor.target());
        let mut at = start;
        let mut current: Vec<(ObjectId, ObjectId)> = self.fibers[start.0].iter().map(|&x| (x, x)).collect();
        for &(f, dir) in steps {
            let (from, to) = match dir {
                Direction::Forward => (b.source(f), b.target(f)),
                Direction::Backward => (b.target(f), b.source(f)),
            };
            if from != at {
                return None;
            }
            for pair in &mut current {
                pair.1 = match dir {
                    Direction::Forward => e.target(self.lift(pair.1, f)?),
                    Direction::Backward => e.source(self.lift_ending_at(pair.1, f)?),
                };
            }
            at = to;
        }
        Some(current)
    }

    /// A zig-zag of base morphisms from `b` to `b2` (shortest, by BFS).
    pub fn zigzag(&self, b: ObjectId, b2: ObjectId) -> Vec<(MorphismId, Direction)> {
        let base = self.functor.target();
        let mut previous: Vec<Option<(ObjectId, MorphismId, Direction)>> = vec![None; base.num_objects()];
        let mut seen = vec![false; base.num_objects()];
        seen[b.0] = true;
        let mut queue = VecDeque::from([b]);
        while let Some(y) = queue.pop_front() {
            let forward = base.outgoing(y).iter().map(|&f| (f, base.target(f), Direction::Forward));
            let backward = base.incoming(y).iter().map(|&f| (f, base.source(f), Direction::Backward));
            for (f, z, dir) in forward.chain(backward) {
                if !seen[z.0] {
                    seen[z.0] = true;
                    previous[z.0] = Some((y, f, dir));
                    queue.push_back(z);
                }
            }
        }
        let mut path = Vec::new();
        let mut at = b2;
        while let Some((y, f, dir)) = previous[at.0] {
            path.push((f, dir));
            at = y;
        }
        path.reverse();
        path
    }

    /// True iff no non-identity morphism of `E` maps to an identity of `B`,
    /// so every fiber is a discrete category.
    pub fn fibers_are_discrete(&self) -> bool {
        let (e, b) = (self.functor.source(), self.functor.target());
        e.morphism_ids()
            .all(|f| e.is_identity(f) || !b.is_identity(self.functor.map_morphism(f)))
    }
}

/// Transport along `f` in `B`, by morphism name.
pub fn fiber_transport(cert: &CoveringCertificate, f: &str) -> Result<FiberTransport, CoveringError> {
    let (e, b) = (cert.functor().source(), cert.functor().target());
    let id = b
        .morphism_id(f)
        .ok_or_else(|| CoveringError::UnknownMorphism(f.to_owned()))?;
    let pairs = cert
        .transport_ids(id)
        .into_iter()
        .map(|(x, y, lift)| TransportPair {
            from: e.object_name(x).to_owned(),
            to: e.object_name(y).to_owned(),
            lift: e.name_of(lift).to_owned(),
        })
        .collect();
    Ok(FiberTransport {
        morphism: f.to_owned(),
        source: b.object_name(b.source(id)).to_owned(),
        target: b.object_name(b.target(id)).to_owned(),
        pairs,
    })
}

/// One failed comparison in a factorization report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationViolation {
    pub n: usize,
    pub variant: Variant,
    /// `None` for the total count.
    pub object: Option<String>,
    pub total_count: String,
    /// `#N_n(B)_{P(x)}`, or `sheets · #N_n(B)` for totals.
    pub expected: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationReport {
    pub sheets: usize,
    pub max_n: usize,
    pub checks: usize,
    pub violations: Vec<FactorizationViolation>,
}

impl FactorizationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For `n ≤ max_n` and both variants: `#N_n(E)_x = #N_n(B)_{P(x)}` for every
/// object `x`, and `#N_n(E) = sheets · #N_n(B)`.
pub fn verify_nerve_factorization(cert: &CoveringCertificate, max_n: usize) -> FactorizationReport {
    let (e, b) = (cert.functor().source(), cert.functor().target());
    let mut violations = Vec::new();
    let mut checks = 0;
    for variant in [Variant::Degenerate, Variant::Nondegenerate] {
        let up = targeted_count_table(e, max_n, variant);
        let down = targeted_count_table(b, max_n, variant);
        for n in 0..=max_n {
            for x in e.object_ids() {
                checks += 1;
                let expected = &down[n][cert.functor().map_object(x).0];
                if &up[n][x.0] != expected {
                    violations.push(FactorizationViolation {
                        n,
                        variant,
                        object: Some(e.object_name(x).to_owned()),
                        total_count: up[n][x.0].to_string(),
                        expected: expected.to_string(),
                    });
                }
            }
            checks += 1;
            let total: BigUint = up[n].iter().sum();
            let expected: BigUint = down[n].iter().sum::<BigUint>() * cert.sheets();
            if total != expected {
                violations.push(FactorizationViolation {
                    n,
                    variant,
                    object: None,
                    total_count: total.to_string(),
                    expected: expected.to_string(),
                });
            }
        }
    }
    FactorizationReport {
        sheets: cert.sheets(),
        max_n,
        checks,
        violations,
    }
}

/// Serializable certificate summary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateSummary {
    pub sheets: usize,
    pub fibers: Vec<FiberEntry>,
    pub witnesses: Vec<WitnessEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberEntry {
    pub base_object: String,
    pub objects: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessEntry {
    pub object: String,
    pub image: String,
    pub source: Vec<(String, String)>,
    pub target: Vec<(String, String)>,
}

impl CoveringCertificate {
    pub fn summary(&self) -> CertificateSummary {
        let (e, b) = (self.functor.source(), self.functor.target());
        let names = |pairs: &[(MorphismId, MorphismId)]| {
            pairs
                .iter()
                .map(|&(f, g)| (e.name_of(f).to_owned(), b.name_of(g).to_owned()))
                .collect()
        };
        CertificateSummary {
            sheets: self.sheets,
            fibers: self
                .fiber_table()
                .into_iter()
                .map(|(base_object, objects)| FiberEntry { base_object, objects })
                .collect(),
            witnesses: e
                .object_ids()
                .map(|x| WitnessEntry {
                    object: e.object_name(x).to_owned(),
                    image: b.object_name(self.functor.map_object(x)).to_owned(),
                    source: names(&self.witnesses[x.0].source),
                    target: names(&self.witnesses[x.0].target),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{discrete, fan, gamma_covering, terminal, z2};
    use crate::functor::{validate_functor, RawFunctor};

    #[test]
    fn gamma_has_two_sheets() {
        let cert = check_covering(gamma_covering().functor().unwrap()).unwrap();
        assert_eq!(cert.sheets(), 2);
        assert_eq!(fiber(cert.functor(), "*").unwrap(), vec!["x", "y"]);
        let t = fiber_transport(&cert, "-1").unwrap();
        let swapped: Vec<_> = t.pairs.iter().map(|p| (p.from.as_str(), p.to.as_str(), p.lift.as_str())).collect();
        assert_eq!(swapped, vec![("x", "y", "f"), ("y", "x", "f^-1")]);
        let id = fiber_transport(&cert, "1_*").unwrap();
        assert!(id.pairs.iter().all(|p| p.from == p.to));
        assert!(cert.fibers_are_discrete());
    }

    #[test]
    fn fan_transport_follows_h1() {
        let cert = check_covering(fan(4).unwrap().functor().unwrap()).unwrap();
        assert_eq!(cert.sheets(), 4);
        let t = fiber_transport(&cert, "h1").unwrap();
        for p in &t.pairs {
            assert_eq!(p.from[1..], p.to[1..]);
            assert_eq!(p.lift, format!("f{}", &p.from[1..]));
        }
        assert!(matches!(fiber_transport(&cert, "nope"), Err(CoveringError::UnknownMorphism(_))));
        assert!(matches!(fiber(cert.functor(), "c"), Err(CoveringError::UnknownObject(_))));
    }

    #[test]
    fn discrete_over_terminal() {
        let mut map = RawFunctor::default();
        for x in ["d0", "d1"] {
            map.object_map.insert(x.into(), "*".into());
        }
        let p = validate_functor(&map, discrete(2).unwrap(), terminal()).unwrap();
        assert_eq!(check_covering(p).unwrap().sheets(), 2);
    }

    #[test]
    fn collapsing_gamma_to_terminal_is_not_a_covering() {
        let mut map = RawFunctor::default();
        for x in ["x", "y"] {
            map.object_map.insert(x.into(), "*".into());
        }
        for f in ["f", "f^-1"] {
            map.morphism_map.insert(f.into(), "1_*".into());
        }
        let p = validate_functor(&map, crate::builders::gamma(), terminal()).unwrap();
        assert_eq!(
            check_covering(p),
            Err(CoveringError::SourceMapNotInjective {
                object: "x".into(),
                first: "1_x".into(),
                second: "f".into(),
            })
        );
    }

    #[test]
    fn terminal_into_z2_misses_minus_one() {
        let mut map = RawFunctor::default();
        map.object_map.insert("*".into(), "*".into());
        let p = validate_functor(&map, terminal(), z2()).unwrap();
        assert_eq!(
            check_covering(p),
            Err(CoveringError::SourceMapNotSurjective {
                object: "*".into(),
                missing: "-1".into(),
            })
        );
    }

    #[test]
    fn disconnected_base_is_refused() {
        let d = discrete(2).unwrap();
        let p = CatFunctor::identity(d);
        assert_eq!(check_covering(p), Err(CoveringError::BaseNotConnected));
    }

    #[test]
    fn zigzag_transport_is_a_bijection() {
        let cert = check_covering(fan(3).unwrap().functor().unwrap()).unwrap();
        let b = cert.functor().target();
        let (a, bb) = (b.object_id("a").unwrap(), b.object_id("b").unwrap());
        // a → b via h1, back to a via h2: x_i ↦ y_i ↦ x_{i-1}
        let path = [
            (b.morphism_id("h1").unwrap(), Direction::Forward),
            (b.morphism_id("h2").unwrap(), Direction::Backward),
        ];
        let loop_map = cert.transport_along(a, &path).unwrap();
        let mut images: Vec<_> = loop_map.iter().map(|&(_, y)| y).collect();
        images.sort();
        assert_eq!(images, cert.fiber_ids(a).to_vec());
        assert!(loop_map.iter().all(|(x, y)| x != y));
        let there = cert.zigzag(a, bb);
        assert_eq!(there.len(), 1);
        assert!(cert.transport_along(bb, &there).is_none());
    }

    #[test]
    fn factorization_on_gamma() {
        let cert = check_covering(gamma_covering().functor().unwrap()).unwrap();
        let report = verify_nerve_factorization(&cert, 6);
        assert!(report.passed());
        assert_eq!(report.checks, 2 * 7 * 3);
    }
}
