//! Finite categories presented by full composition tables.
//!
//! A [`RawCategory`] is the unvalidated description read from a file or
//! assembled by a builder. [`validate_category`] checks every axiom of a small
//! category and produces an immutable [`FiniteCategory`]. Validation is eager:
//! associativity is checked on every composable triple, which costs
//! `O(#N_3)` composite lookups (at worst `O(|Mor|^3)`).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index of an object in file order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjectId(pub usize);

/// Index of a morphism in file order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MorphismId(pub usize);

impl ObjectId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl MorphismId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMorphism {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// One composition table entry: `gf = g ∘ f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawComposite {
    pub g: String,
    pub f: String,
    pub gf: String,
}

/// Unvalidated category description; this is also the on-disk format.
///
/// Composites involving an identity may be omitted from `compose`; they are
/// filled in by the identity laws. Entries that are present are checked.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<RawMorphism>,
    pub identities: BTreeMap<String, String>,
    #[serde(default)]
    pub compose: Vec<RawComposite>,
}

impl RawCategory {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds an object together with an identity morphism named `1_<name>`.
    pub fn add_object(&mut self, name: impl Into<String>) -> &mut Self {
        let name = name.into();
        let id = format!("1_{name}");
        self.morphisms.push(RawMorphism {
            id: id.clone(),
            src: name.clone(),
            tgt: name.clone(),
        });
        self.identities.insert(name.clone(), id);
        self.objects.push(name);
        self
    }

    pub fn add_morphism(
        &mut self,
        id: impl Into<String>,
        src: impl Into<String>,
        tgt: impl Into<String>,
    ) -> &mut Self {
        self.morphisms.push(RawMorphism {
            id: id.into(),
            src: src.into(),
            tgt: tgt.into(),
        });
        self
    }

    /// Records `g ∘ f = gf`.
    pub fn add_composite(
        &mut self,
        g: impl Into<String>,
        f: impl Into<String>,
        gf: impl Into<String>,
    ) -> &mut Self {
        self.compose.push(RawComposite {
            g: g.into(),
            f: f.into(),
            gf: gf.into(),
        });
        self
    }

    pub fn build(&self) -> Result<FiniteCategory, InvalidCategory> {
        validate_category(self)
    }
}

/// A single failed axiom, naming the offending ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    EmptyCategory,
    DuplicateObject(String),
    DuplicateMorphism(String),
    DanglingEndpoint { morphism: String, endpoint: String },
    MissingIdentity(String),
    IdentityForUnknownObject(String),
    IdentityWrongEndpoints { object: String, morphism: String },
    UnknownMorphism(String),
    NotComposable { g: String, f: String },
    CompositeEndpointMismatch { g: String, f: String, gf: String },
    ConflictingComposite { g: String, f: String },
    CompositionNotClosed { g: String, f: String },
    IdentityLawViolated(String),
    AssociativityViolated { h: String, g: String, f: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            EmptyCategory => write!(out, "category has no objects"),
            DuplicateObject(x) => write!(out, "duplicate object `{x}`"),
            DuplicateMorphism(f) => write!(out, "duplicate morphism `{f}`"),
            DanglingEndpoint { morphism, endpoint } => {
                write!(out, "morphism `{morphism}` refers to unknown object `{endpoint}`")
            }
            MissingIdentity(x) => write!(out, "object `{x}` has no identity morphism"),
            IdentityForUnknownObject(x) => write!(out, "identity listed for unknown object `{x}`"),
            IdentityWrongEndpoints { object, morphism } => {
                write!(out, "identity `{morphism}` of `{object}` is not an endomorphism of `{object}`")
            }
            UnknownMorphism(f) => write!(out, "composition table refers to unknown morphism `{f}`"),
            NotComposable { g, f } => write!(out, "`{g}` ∘ `{f}` listed but target of `{f}` is not source of `{g}`"),
            CompositeEndpointMismatch { g, f, gf } => {
                write!(out, "`{g}` ∘ `{f}` = `{gf}` has the wrong endpoints")
            }
            ConflictingComposite { g, f } => write!(out, "`{g}` ∘ `{f}` listed twice with different values"),
            CompositionNotClosed { g, f } => write!(out, "composite `{g}` ∘ `{f}` is missing"),
            IdentityLawViolated(f) => write!(out, "identity law fails for `{f}`"),
            AssociativityViolated { h, g, f } => {
                write!(out, "associativity fails for (`{h}`, `{g}`, `{f}`)")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct InvalidCategory {
    pub violations: Vec<Violation>,
}

impl fmt::Display for InvalidCategory {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "invalid category ({} violation(s))", self.violations.len())?;
        for v in &self.violations {
            write!(out, "\n  - {v}")?;
        }
        Ok(())
    }
}

/// Associativity failures beyond this many are not listed individually.
pub const MAX_REPORTED_ASSOCIATIVITY_VIOLATIONS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub source: ObjectId,
    pub target: ObjectId,
}

/// A validated small finite category. Immutable after construction.
#[derive(Clone, Debug)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<MorphismId>,
    outgoing: Vec<Vec<MorphismId>>,
    incoming: Vec<Vec<MorphismId>>,
    // position of each morphism inside `outgoing[source]`
    out_position: Vec<usize>,
    // after[f][k] = outgoing[target(f)][k] ∘ f
    after: Vec<Vec<MorphismId>>,
    object_index: HashMap<String, ObjectId>,
    morphism_index: HashMap<String, MorphismId>,
}

/// Source and target sets `S(x)`, `T(x)` of one object.
#[derive(Clone, Copy, Debug)]
pub struct MorphismSets<'a> {
    pub object: ObjectId,
    pub identity: MorphismId,
    pub source: &'a [MorphismId],
    pub target: &'a [MorphismId],
}

impl MorphismSets<'_> {
    /// `S(x) \ {1_x}`.
    pub fn nondegenerate_source(&self) -> Vec<MorphismId> {
        self.source.iter().copied().filter(|&f| f != self.identity).collect()
    }

    /// `T(x) \ {1_x}`.
    pub fn nondegenerate_target(&self) -> Vec<MorphismId> {
        self.target.iter().copied().filter(|&f| f != self.identity).collect()
    }
}

/// Checks every small-category axiom on `raw`.
pub fn validate_category(raw: &RawCategory) -> Result<FiniteCategory, InvalidCategory> {
    let fail = |violations: Vec<Violation>| Err(InvalidCategory { violations });
    let mut violations = Vec::new();

    if raw.objects.is_empty() {
        return fail(vec![Violation::EmptyCategory]);
    }

    let mut object_index = HashMap::with_capacity(raw.objects.len());
    for (i, name) in raw.objects.iter().enumerate() {
        if object_index.insert(name.clone(), ObjectId(i)).is_some() {
            violations.push(Violation::DuplicateObject(name.clone()));
        }
    }

    let mut morphism_index = HashMap::with_capacity(raw.morphisms.len());
    let mut morphisms = Vec::with_capacity(raw.morphisms.len());
    for (i, m) in raw.morphisms.iter().enumerate() {
        if morphism_index.insert(m.id.clone(), MorphismId(i)).is_some() {
            violations.push(Violation::DuplicateMorphism(m.id.clone()));
        }
        let mut endpoint = |name: &String| match object_index.get(name) {
            Some(&x) => x,
            None => {
                violations.push(Violation::DanglingEndpoint {
                    morphism: m.id.clone(),
                    endpoint: name.clone(),
                });
                ObjectId(usize::MAX)
            }
        };
        let source = endpoint(&m.src);
        let target = endpoint(&m.tgt);
        morphisms.push(Morphism {
            name: m.id.clone(),
            source,
            target,
        });
    }

    for key in raw.identities.keys() {
        if !object_index.contains_key(key) {
            violations.push(Violation::IdentityForUnknownObject(key.clone()));
        }
    }
    let mut identities = Vec::with_capacity(raw.objects.len());
    for (i, name) in raw.objects.iter().enumerate() {
        match raw.identities.get(name).and_then(|id| morphism_index.get(id)) {
            None => violations.push(Violation::MissingIdentity(name.clone())),
            Some(&id) => {
                let m = &morphisms[id.0];
                if m.source != ObjectId(i) || m.target != ObjectId(i) {
                    violations.push(Violation::IdentityWrongEndpoints {
                        object: name.clone(),
                        morphism: m.name.clone(),
                    });
                }
                identities.push(id);
            }
        }
    }
    if !violations.is_empty() {
        return fail(violations);
    }

    let n_obj = raw.objects.len();
    let mut outgoing = vec![Vec::new(); n_obj];
    let mut incoming = vec![Vec::new(); n_obj];
    let mut out_position = vec![0; morphisms.len()];
    for (i, m) in morphisms.iter().enumerate() {
        out_position[i] = outgoing[m.source.0].len();
        outgoing[m.source.0].push(MorphismId(i));
        incoming[m.target.0].push(MorphismId(i));
    }

    // Staged composition table.
    let mut table: HashMap<(MorphismId, MorphismId), MorphismId> = HashMap::new();
    for entry in &raw.compose {
        let lookup = |name: &String| morphism_index.get(name).copied();
        let (Some(g), Some(f), Some(gf)) = (lookup(&entry.g), lookup(&entry.f), lookup(&entry.gf))
        else {
            for name in [&entry.g, &entry.f, &entry.gf] {
                if !morphism_index.contains_key(name) {
                    violations.push(Violation::UnknownMorphism(name.clone()));
                }
            }
            continue;
        };
        let (mg, mf, mgf) = (&morphisms[g.0], &morphisms[f.0], &morphisms[gf.0]);
        if mf.target != mg.source {
            violations.push(Violation::NotComposable {
                g: entry.g.clone(),
                f: entry.f.clone(),
            });
            continue;
        }
        if mgf.source != mf.source || mgf.target != mg.target {
            violations.push(Violation::CompositeEndpointMismatch {
                g: entry.g.clone(),
                f: entry.f.clone(),
                gf: entry.gf.clone(),
            });
            continue;
        }
        match table.insert((g, f), gf) {
            Some(prev) if prev != gf => violations.push(Violation::ConflictingComposite {
                g: entry.g.clone(),
                f: entry.f.clone(),
            }),
            _ => {}
        }
    }
    for (i, m) in morphisms.iter().enumerate() {
        let f = MorphismId(i);
        table.entry((f, identities[m.source.0])).or_insert(f);
        table.entry((identities[m.target.0], f)).or_insert(f);
    }

    let mut after = Vec::with_capacity(morphisms.len());
    for (i, m) in morphisms.iter().enumerate() {
        let f = MorphismId(i);
        let row: Vec<MorphismId> = outgoing[m.target.0]
            .iter()
            .map(|&g| match table.get(&(g, f)) {
                Some(&gf) => gf,
                None => {
                    violations.push(Violation::CompositionNotClosed {
                        g: morphisms[g.0].name.clone(),
                        f: m.name.clone(),
                    });
                    g
                }
            })
            .collect();
        after.push(row);
    }
    if !violations.is_empty() {
        return fail(violations);
    }

    let category = FiniteCategory {
        objects: raw.objects.clone(),
        morphisms,
        identities,
        outgoing,
        incoming,
        out_position,
        after,
        object_index,
        morphism_index,
    };

    for f in category.morphism_ids() {
        let left = category.compose(category.identity(category.target(f)), f);
        let right = category.compose(f, category.identity(category.source(f)));
        if left != Some(f) || right != Some(f) {
            violations.push(Violation::IdentityLawViolated(category.name_of(f).to_owned()));
        }
    }

    let mut assoc = 0usize;
    'outer: for f in category.morphism_ids() {
        for &g in category.outgoing(category.target(f)) {
            let gf = category.compose_unchecked(g, f);
            for &h in category.outgoing(category.target(g)) {
                let hg = category.compose_unchecked(h, g);
                if category.compose_unchecked(h, gf) != category.compose_unchecked(hg, f) {
                    assoc += 1;
                    if assoc > MAX_REPORTED_ASSOCIATIVITY_VIOLATIONS {
                        break 'outer;
                    }
                    violations.push(Violation::AssociativityViolated {
                        h: category.name_of(h).to_owned(),
                        g: category.name_of(g).to_owned(),
                        f: category.name_of(f).to_owned(),
                    });
                }
            }
        }
    }

    if violations.is_empty() {
        Ok(category)
    } else {
        fail(violations)
    }
}

impl FiniteCategory {
    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_ids(&self) -> impl Iterator<Item = ObjectId> + '_ {
        (0..self.objects.len()).map(ObjectId)
    }

    pub fn morphism_ids(&self) -> impl Iterator<Item = MorphismId> + '_ {
        (0..self.morphisms.len()).map(MorphismId)
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn object_name(&self, x: ObjectId) -> &str {
        &self.objects[x.0]
    }

    pub fn morphism(&self, f: MorphismId) -> &Morphism {
        &self.morphisms[f.0]
    }

    pub fn name_of(&self, f: MorphismId) -> &str {
        &self.morphisms[f.0].name
    }

    pub fn object_id(&self, name: &str) -> Option<ObjectId> {
        self.object_index.get(name).copied()
    }

    pub fn morphism_id(&self, name: &str) -> Option<MorphismId> {
        self.morphism_index.get(name).copied()
    }

    pub fn source(&self, f: MorphismId) -> ObjectId {
        self.morphisms[f.0].source
    }

    pub fn target(&self, f: MorphismId) -> ObjectId {
        self.morphisms[f.0].target
    }

    pub fn identity(&self, x: ObjectId) -> MorphismId {
        self.identities[x.0]
    }

    pub fn is_identity(&self, f: MorphismId) -> bool {
        self.identities[self.source(f).0] == f
    }

    /// `g ∘ f`, or `None` when the pair is not composable.
    pub fn compose(&self, g: MorphismId, f: MorphismId) -> Option<MorphismId> {
        (self.target(f) == self.source(g)).then(|| self.compose_unchecked(g, f))
    }

    fn compose_unchecked(&self, g: MorphismId, f: MorphismId) -> MorphismId {
        self.after[f.0][self.out_position[g.0]]
    }

    /// `S(x)`: morphisms with source `x`, in file order.
    pub fn outgoing(&self, x: ObjectId) -> &[MorphismId] {
        &self.outgoing[x.0]
    }

    /// `T(x)`: morphisms with target `x`, in file order.
    pub fn incoming(&self, x: ObjectId) -> &[MorphismId] {
        &self.incoming[x.0]
    }

    pub fn morphism_sets(&self, x: ObjectId) -> MorphismSets<'_> {
        MorphismSets {
            object: x,
            identity: self.identity(x),
            source: self.outgoing(x),
            target: self.incoming(x),
        }
    }

    pub fn hom(&self, x: ObjectId, y: ObjectId) -> impl Iterator<Item = MorphismId> + '_ {
        self.outgoing(x).iter().copied().filter(move |&f| self.target(f) == y)
    }

    /// `Hom(x, y)` with `1_x` removed when `x = y`.
    pub fn nondegenerate_hom(&self, x: ObjectId, y: ObjectId) -> impl Iterator<Item = MorphismId> + '_ {
        self.hom(x, y).filter(move |&f| !self.is_identity(f))
    }

    /// A two-sided inverse of `f`, if one exists.
    pub fn inverse(&self, f: MorphismId) -> Option<MorphismId> {
        let (x, y) = (self.source(f), self.target(f));
        self.hom(y, x).find(|&g| {
            self.compose_unchecked(g, f) == self.identity(x)
                && self.compose_unchecked(f, g) == self.identity(y)
        })
    }

    /// True iff the underlying undirected graph on objects is connected.
    pub fn is_connected(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }

    /// Connected-component label of each object (labels are dense, in order of
    /// first appearance).
    pub fn components(&self) -> Vec<usize> {
        let n = self.num_objects();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                let neighbours = self.outgoing[x]
                    .iter()
                    .map(|&f| self.target(f))
                    .chain(self.incoming[x].iter().map(|&f| self.source(f)));
                for y in neighbours {
                    if label[y.0] == usize::MAX {
                        label[y.0] = next;
                        stack.push(y.0);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// Every endomorphism and every isomorphism is an identity.
    pub fn is_acyclic(&self) -> bool {
        self.morphism_ids().all(|f| {
            self.is_identity(f) || (self.source(f) != self.target(f) && self.inverse(f).is_none())
        })
    }

    pub fn is_groupoid(&self) -> bool {
        self.morphism_ids().all(|f| self.inverse(f).is_some())
    }

    pub fn is_discrete(&self) -> bool {
        self.morphism_ids().all(|f| self.is_identity(f))
    }

    /// Acyclic with every hom-set of size at most one.
    pub fn is_poset(&self) -> bool {
        self.is_acyclic()
            && self
                .object_ids()
                .all(|x| self.object_ids().all(|y| self.hom(x, y).nth(1).is_none()))
    }

    /// Serializes back to the file representation with an explicit, complete
    /// composition table.
    pub fn to_raw(&self) -> RawCategory {
        let objects = self.objects.clone();
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| RawMorphism {
                id: m.name.clone(),
                src: self.objects[m.source.0].clone(),
                tgt: self.objects[m.target.0].clone(),
            })
            .collect();
        let identities = self
            .object_ids()
            .map(|x| (self.objects[x.0].clone(), self.name_of(self.identity(x)).to_owned()))
            .collect();
        let mut compose = Vec::new();
        for f in self.morphism_ids() {
            for &g in self.outgoing(self.target(f)) {
                compose.push(RawComposite {
                    g: self.name_of(g).to_owned(),
                    f: self.name_of(f).to_owned(),
                    gf: self.name_of(self.compose_unchecked(g, f)).to_owned(),
                });
            }
        }
        RawCategory {
            objects,
            morphisms,
            identities,
            compose,
        }
    }

    /// The category with no objects. Only truncations produce it; input
    /// validation rejects it.
    pub(crate) fn empty() -> FiniteCategory {
        FiniteCategory {
            objects: Vec::new(),
            morphisms: Vec::new(),
            identities: Vec::new(),
            outgoing: Vec::new(),
            incoming: Vec::new(),
            out_position: Vec::new(),
            after: Vec::new(),
            object_index: HashMap::new(),
            morphism_index: HashMap::new(),
        }
    }

    /// Discrete category on the given object names.
    pub fn discrete<S: AsRef<str>>(names: &[S]) -> Result<FiniteCategory, InvalidCategory> {
        let mut raw = RawCategory::new();
        for n in names {
            raw.add_object(n.as_ref());
        }
        raw.build()
    }

    /// Disjoint union; object and morphism names of summand `i` get the
    /// prefix `i:`.
    pub fn coproduct(parts: &[&FiniteCategory]) -> Result<FiniteCategory, InvalidCategory> {
        let mut raw = RawCategory::new();
        for (i, part) in parts.iter().enumerate() {
            let p = part.to_raw();
            let tag = |s: &String| format!("{i}:{s}");
            raw.objects.extend(p.objects.iter().map(tag));
            raw.morphisms.extend(p.morphisms.iter().map(|m| RawMorphism {
                id: tag(&m.id),
                src: tag(&m.src),
                tgt: tag(&m.tgt),
            }));
            raw.identities
                .extend(p.identities.iter().map(|(k, v)| (tag(k), tag(v))));
            raw.compose.extend(p.compose.iter().map(|c| RawComposite {
                g: tag(&c.g),
                f: tag(&c.f),
                gf: tag(&c.gf),
            }));
        }
        raw.build()
    }
}

impl PartialEq for FiniteCategory {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identities == other.identities
            && self.outgoing == other.outgoing
            && self.after == other.after
    }
}

impl Eq for FiniteCategory {}
