//! Functors between finite categories.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::category::{FiniteCategory, MorphismId, ObjectId};

/// Object and morphism maps by name, as read from a functor file.
///
/// Identity morphisms may be left out of `morphism_map`; they are sent to the
/// identity of the image object.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFunctor {
    pub object_map: BTreeMap<String, String>,
    #[serde(default)]
    pub morphism_map: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctorViolation {
    UnmappedObject(String),
    UnmappedMorphism(String),
    UnknownSourceName(String),
    UnknownTargetName(String),
    EndpointMismatch(String),
    IdentityNotPreserved(String),
    CompositionNotPreserved { g: String, f: String },
}

impl fmt::Display for FunctorViolation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FunctorViolation::*;
        match self {
            UnmappedObject(x) => write!(out, "object `{x}` has no image"),
            UnmappedMorphism(f) => write!(out, "morphism `{f}` has no image"),
            UnknownSourceName(s) => write!(out, "`{s}` is not in the source category"),
            UnknownTargetName(s) => write!(out, "`{s}` is not in the target category"),
            EndpointMismatch(f) => write!(out, "image of `{f}` has the wrong endpoints"),
            IdentityNotPreserved(x) => write!(out, "identity of `{x}` is not sent to an identity"),
            CompositionNotPreserved { g, f } => {
                write!(out, "F(`{g}` ∘ `{f}`) ≠ F(`{g}`) ∘ F(`{f}`)")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct InvalidFunctor {
    pub violations: Vec<FunctorViolation>,
}

impl fmt::Display for InvalidFunctor {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "invalid functor ({} violation(s))", self.violations.len())?;
        for v in &self.violations {
            write!(out, "\n  - {v}")?;
        }
        Ok(())
    }
}

/// A validated functor. Owns both categories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatFunctor {
    source: FiniteCategory,
    target: FiniteCategory,
    objects: Vec<ObjectId>,
    morphisms: Vec<MorphismId>,
}

/// Resolves `raw` against `source` and `target` and checks functoriality
/// exhaustively (endpoints, identities, every composable pair).
pub fn validate_functor(
    raw: &RawFunctor,
    source: FiniteCategory,
    target: FiniteCategory,
) -> Result<CatFunctor, InvalidFunctor> {
    let mut violations = Vec::new();

    for name in raw.object_map.keys() {
        if source.object_id(name).is_none() {
            violations.push(FunctorViolation::UnknownSourceName(name.clone()));
        }
    }
    for name in raw.morphism_map.keys() {
        if source.morphism_id(name).is_none() {
            violations.push(FunctorViolation::UnknownSourceName(name.clone()));
        }
    }

    let mut objects = Vec::with_capacity(source.num_objects());
    for x in source.object_ids() {
        let name = source.object_name(x);
        match raw.object_map.get(name) {
            None => violations.push(FunctorViolation::UnmappedObject(name.to_owned())),
            Some(image) => match target.object_id(image) {
                None => violations.push(FunctorViolation::UnknownTargetName(image.clone())),
                Some(y) => objects.push(y),
            },
        }
    }
    if !violations.is_empty() {
        return Err(InvalidFunctor { violations });
    }

    let mut morphisms = Vec::with_capacity(source.num_morphisms());
    for f in source.morphism_ids() {
        let name = source.name_of(f);
        let image = match raw.morphism_map.get(name) {
            Some(image) => match target.morphism_id(image) {
                Some(g) => g,
                None => {
                    violations.push(FunctorViolation::UnknownTargetName(image.clone()));
                    continue;
                }
            },
            None if source.is_identity(f) => target.identity(objects[source.source(f).0]),
            None => {
                violations.push(FunctorViolation::UnmappedMorphism(name.to_owned()));
                continue;
            }
        };
        morphisms.push(image);
    }
    if !violations.is_empty() {
        return Err(InvalidFunctor { violations });
    }

    let functor = CatFunctor {
        source,
        target,
        objects,
        morphisms,
    };
    functor.check_laws().map(|()| functor)
}

impl CatFunctor {
    fn check_laws(&self) -> Result<(), InvalidFunctor> {
        let (e, b) = (&self.source, &self.target);
        let mut violations = Vec::new();
        for f in e.morphism_ids() {
            let pf = self.map_morphism(f);
            if b.source(pf) != self.map_object(e.source(f))
                || b.target(pf) != self.map_object(e.target(f))
            {
                violations.push(FunctorViolation::EndpointMismatch(e.name_of(f).to_owned()));
            }
        }
        for x in e.object_ids() {
            if self.map_morphism(e.identity(x)) != b.identity(self.map_object(x)) {
                violations.push(FunctorViolation::IdentityNotPreserved(
                    e.object_name(x).to_owned(),
                ));
            }
        }
        if !violations.is_empty() {
            return Err(InvalidFunctor { violations });
        }
        for f in e.morphism_ids() {
            for &g in e.outgoing(e.target(f)) {
                let gf = e.compose(g, f).expect("composable by construction");
                let image = b.compose(self.map_morphism(g), self.map_morphism(f));
                if image != Some(self.map_morphism(gf)) {
                    violations.push(FunctorViolation::CompositionNotPreserved {
                        g: e.name_of(g).to_owned(),
                        f: e.name_of(f).to_owned(),
                    });
                }
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(InvalidFunctor { violations })
        }
    }

    /// The identity functor on `c`.
    pub fn identity(c: FiniteCategory) -> CatFunctor {
        CatFunctor {
            objects: c.object_ids().collect(),
            morphisms: c.morphism_ids().collect(),
            target: c.clone(),
            source: c,
        }
    }

    pub fn source(&self) -> &FiniteCategory {
        &self.source
    }

    pub fn target(&self) -> &FiniteCategory {
        &self.target
    }

    pub fn map_object(&self, x: ObjectId) -> ObjectId {
        self.objects[x.0]
    }

    pub fn map_morphism(&self, f: MorphismId) -> MorphismId {
        self.morphisms[f.0]
    }

    pub fn to_raw(&self) -> RawFunctor {
        let (e, b) = (&self.source, &self.target);
        RawFunctor {
            object_map: e
                .object_ids()
                .map(|x| (e.object_name(x).to_owned(), b.object_name(self.map_object(x)).to_owned()))
                .collect(),
            morphism_map: e
                .morphism_ids()
                .map(|f| (e.name_of(f).to_owned(), b.name_of(self.map_morphism(f)).to_owned()))
                .collect(),
        }
    }
}
