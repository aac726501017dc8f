//! ℕ-filtered acyclic categories and the filtered Euler characteristic.
//!
//! A filtration `μ` assigns a level to each object so that every
//! non-identity morphism strictly raises the level. The coefficient series is
//!
//! ```text
//! f_χ(t) = Σ_i c_i t^i,   c_i = (-1)^i Σ_{n=0}^{i} (-1)^n #N̄_n(A)_i
//! ```
//!
//! where `#N̄_n(A)_i` counts non-degenerate chains ending at an object of
//! level `i`. Such chains stay inside levels `≤ i`, so `c_i` only needs the
//! truncation at level `i`. Infinite categories are supplied as
//! [`LevelCategory`] generators.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, BigUint, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::category::{FiniteCategory, RawCategory};
use crate::euler::value_at_minus_one;
use crate::exact::{ExactRational, ExactRationalFunction};
use crate::functor::{validate_functor, CatFunctor, InvalidFunctor, RawFunctor};
use crate::nerve::{targeted_count_table, Variant};
use crate::recurrence::{berlekamp_massey, rational_from_recurrence};
use crate::ratfunc::RationalFunction;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FilteredError {
    #[error("the category is not acyclic")]
    NotAcyclic,
    #[error("`{morphism}` goes from level {source_level} to level {target_level}")]
    FiltrationNotStrict {
        morphism: String,
        source_level: usize,
        target_level: usize,
    },
    #[error("object `{0}` has no level")]
    UnassignedObject(String),
    #[error("filtration names unknown object `{0}`")]
    UnknownObject(String),
    #[error("need at least {needed} coefficients, got {got}")]
    InsufficientTerms { needed: usize, got: usize },
    #[error("`{0}` and its image lie at different levels")]
    FiltrationIncompatible(String),
    #[error("covering condition fails at `{object}` (level {level})")]
    CoveringViolatedAtTruncation { object: String, level: usize },
    #[error("fibers over `{first}` and `{second}` differ in size at the truncation")]
    FiberSizeMismatch { first: String, second: String },
    #[error("projection is not a functor on the truncation: {0}")]
    NotAFunctor(InvalidFunctor),
}

/// Validated levels, indexed by object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    levels: Vec<usize>,
}

impl Filtration {
    pub fn levels(&self) -> &[usize] {
        &self.levels
    }
}

pub fn validate_filtration(
    c: &FiniteCategory,
    mu: &BTreeMap<String, usize>,
) -> Result<Filtration, FilteredError> {
    if !c.is_acyclic() {
        return Err(FilteredError::NotAcyclic);
    }
    if let Some(name) = mu.keys().find(|n| c.object_id(n).is_none()) {
        return Err(FilteredError::UnknownObject(name.clone()));
    }
    let levels = c
        .object_ids()
        .map(|x| {
            let name = c.object_name(x);
            mu.get(name)
                .copied()
                .ok_or_else(|| FilteredError::UnassignedObject(name.to_owned()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    for f in c.morphism_ids() {
        if c.is_identity(f) {
            continue;
        }
        let (s, t) = (levels[c.source(f).0], levels[c.target(f).0]);
        if s >= t {
            return Err(FilteredError::FiltrationNotStrict {
                morphism: c.name_of(f).to_owned(),
                source_level: s,
                target_level: t,
            });
        }
    }
    Ok(Filtration { levels })
}

/// A finite category together with a valid filtration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredCategory {
    category: FiniteCategory,
    filtration: Filtration,
}

impl FilteredCategory {
    pub fn new(category: FiniteCategory, mu: &BTreeMap<String, usize>) -> Result<Self, FilteredError> {
        let filtration = validate_filtration(&category, mu)?;
        Ok(FilteredCategory { category, filtration })
    }

    /// A discrete category with every object at level 0.
    pub fn discrete_at_zero<S: AsRef<str>>(names: &[S]) -> FilteredCategory {
        let category = FiniteCategory::discrete(names).expect("nonempty list of distinct names");
        let levels = vec![0; category.num_objects()];
        FilteredCategory {
            category,
            filtration: Filtration { levels },
        }
    }

    /// Each object at the length of the longest non-degenerate chain ending
    /// there: the pointwise smallest valid filtration.
    pub fn by_depth(category: FiniteCategory) -> Result<Self, FilteredError> {
        if !category.is_acyclic() {
            return Err(FilteredError::NotAcyclic);
        }
        let table = targeted_count_table(&category, category.num_objects(), Variant::Nondegenerate);
        let levels = category
            .object_ids()
            .map(|x| table.iter().rposition(|row| !row[x.0].is_zero()).unwrap_or(0))
            .collect();
        Ok(FilteredCategory {
            category,
            filtration: Filtration { levels },
        })
    }

    pub fn category(&self) -> &FiniteCategory {
        &self.category
    }

    pub fn filtration(&self) -> &Filtration {
        &self.filtration
    }

    pub fn max_level(&self) -> usize {
        self.filtration.levels.iter().copied().max().unwrap_or(0)
    }

    pub fn level_of(&self, name: &str) -> Option<usize> {
        self.category.object_id(name).map(|x| self.filtration.levels[x.0])
    }
}

/// A possibly infinite filtered acyclic category given level by level.
///
/// Implementations must be deterministic, give every object and morphism a
/// globally unique name not starting with `1_`, and only be asked for
/// `arrows(u, v)` when `u` lies at a strictly lower level than `v`.
pub trait LevelCategory {
    /// Objects at `level`, in a fixed order.
    fn objects_at(&self, level: usize) -> Vec<String>;

    /// Non-identity morphisms `source → target`.
    fn arrows(&self, source: &str, target: &str) -> Vec<String>;

    /// `g ∘ f` for composable non-identity morphisms.
    fn compose(&self, g: &str, f: &str) -> String;

    /// The full subcategory on levels `0..=max_level`.
    fn truncate(&self, max_level: usize) -> FilteredCategory {
        let mut raw = RawCategory::new();
        let mut objects: Vec<(String, usize)> = Vec::new();
        for level in 0..=max_level {
            for x in self.objects_at(level) {
                raw.add_object(x.clone());
                objects.push((x, level));
            }
        }
        // arrows_into[k], arrows_out_of[k]: non-identity morphisms at objects[k]
        let mut arrows_into: Vec<Vec<String>> = vec![Vec::new(); objects.len()];
        let mut arrows_out_of: Vec<Vec<String>> = vec![Vec::new(); objects.len()];
        for (i, (u, lu)) in objects.iter().enumerate() {
            for (j, (v, lv)) in objects.iter().enumerate() {
                if lu < lv {
                    for f in self.arrows(u, v) {
                        raw.add_morphism(f.clone(), u.clone(), v.clone());
                        arrows_into[j].push(f.clone());
                        arrows_out_of[i].push(f);
                    }
                }
            }
        }
        for (incoming, outgoing) in arrows_into.iter().zip(&arrows_out_of) {
            for f in incoming {
                for g in outgoing {
                    raw.add_composite(g.clone(), f.clone(), self.compose(g, f));
                }
            }
        }
        let category = build_truncation(&raw);
        let levels = objects.into_iter().map(|(_, l)| l).collect();
        FilteredCategory {
            category,
            filtration: Filtration { levels },
        }
    }
}

/// Truncations below the lowest occupied level are empty.
fn build_truncation(raw: &RawCategory) -> FiniteCategory {
    if raw.objects.is_empty() {
        return FiniteCategory::empty();
    }
    raw.build().expect("truncation of a valid level category")
}

/// A functor between level categories, given on names.
pub trait LevelFunctor {
    fn map_object(&self, x: &str) -> String;
    /// Image of a non-identity morphism.
    fn map_arrow(&self, f: &str) -> String;
}

impl LevelCategory for FilteredCategory {
    fn objects_at(&self, level: usize) -> Vec<String> {
        self.category
            .object_ids()
            .filter(|x| self.filtration.levels[x.0] == level)
            .map(|x| self.category.object_name(x).to_owned())
            .collect()
    }

    fn arrows(&self, source: &str, target: &str) -> Vec<String> {
        let c = &self.category;
        match (c.object_id(source), c.object_id(target)) {
            (Some(x), Some(y)) => c.nondegenerate_hom(x, y).map(|f| c.name_of(f).to_owned()).collect(),
            _ => Vec::new(),
        }
    }

    fn compose(&self, g: &str, f: &str) -> String {
        let c = &self.category;
        let gf = c
            .compose(c.morphism_id(g).expect("known morphism"), c.morphism_id(f).expect("known morphism"))
            .expect("composable pair");
        c.name_of(gf).to_owned()
    }

    fn truncate(&self, max_level: usize) -> FilteredCategory {
        if max_level >= self.max_level() {
            return self.clone();
        }
        let mut raw = self.category.to_raw();
        let keep = |name: &String| self.level_of(name).is_some_and(|l| l <= max_level);
        raw.objects.retain(keep);
        raw.identities.retain(|x, _| keep(x));
        raw.morphisms.retain(|m| keep(&m.src) && keep(&m.tgt));
        let kept: std::collections::HashSet<&str> = raw.morphisms.iter().map(|m| m.id.as_str()).collect();
        let compose = raw
            .compose
            .iter()
            .filter(|e| kept.contains(e.g.as_str()) && kept.contains(e.f.as_str()))
            .cloned()
            .collect();
        raw.compose = compose;
        let category = build_truncation(&raw);
        let levels = category
            .object_ids()
            .map(|x| self.level_of(category.object_name(x)).expect("kept object"))
            .collect();
        FilteredCategory {
            category,
            filtration: Filtration { levels },
        }
    }
}

impl LevelFunctor for CatFunctor {
    fn map_object(&self, x: &str) -> String {
        let (e, b) = (self.source(), self.target());
        b.object_name(CatFunctor::map_object(self, e.object_id(x).expect("known object")))
            .to_owned()
    }

    fn map_arrow(&self, f: &str) -> String {
        let (e, b) = (self.source(), self.target());
        b.name_of(self.map_morphism(e.morphism_id(f).expect("known morphism")))
            .to_owned()
    }
}

/// The identity on a level category.
#[derive(Clone, Copy, Debug, Default)]
pub struct IdentityLevelFunctor;

impl LevelFunctor for IdentityLevelFunctor {
    fn map_object(&self, x: &str) -> String {
        x.to_owned()
    }

    fn map_arrow(&self, f: &str) -> String {
        f.to_owned()
    }
}

/// `copies` disjoint copies of a level category; names get the prefix `k:`.
#[derive(Clone, Debug)]
pub struct Copies<C> {
    pub inner: C,
    pub copies: usize,
}

fn split_copy(name: &str) -> (&str, &str) {
    name.split_once(':').expect("copy-tagged name")
}

impl<C: LevelCategory> LevelCategory for Copies<C> {
    fn objects_at(&self, level: usize) -> Vec<String> {
        let inner = self.inner.objects_at(level);
        (0..self.copies)
            .flat_map(|k| inner.iter().map(move |x| format!("{k}:{x}")))
            .collect()
    }

    fn arrows(&self, source: &str, target: &str) -> Vec<String> {
        let (k, u) = split_copy(source);
        let (l, v) = split_copy(target);
        if k != l {
            return Vec::new();
        }
        self.inner.arrows(u, v).into_iter().map(|f| format!("{k}:{f}")).collect()
    }

    fn compose(&self, g: &str, f: &str) -> String {
        let (k, g) = split_copy(g);
        let (_, f) = split_copy(f);
        format!("{k}:{}", self.inner.compose(g, f))
    }
}

/// Projection from [`Copies`] onto the original.
#[derive(Clone, Copy, Debug, Default)]
pub struct CopiesProjection;

impl LevelFunctor for CopiesProjection {
    fn map_object(&self, x: &str) -> String {
        split_copy(x).1.to_owned()
    }

    fn map_arrow(&self, f: &str) -> String {
        split_copy(f).1.to_owned()
    }
}

/// `c_0, …, c_L` of `f_χ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiCoefficients {
    pub coefficients: Vec<BigInt>,
}

impl ChiCoefficients {
    pub fn as_rationals(&self) -> Vec<BigRational> {
        self.coefficients.iter().cloned().map(BigRational::from_integer).collect()
    }
}

/// Coefficients of `f_χ` through level `max_level`, from the targeted
/// non-degenerate chain counts of a filtered finite category.
pub fn chi_coefficients_of(c: &FilteredCategory, max_level: usize) -> ChiCoefficients {
    let category = c.category();
    let levels = c.filtration().levels();
    let longest = c.max_level().min(max_level);
    let table = targeted_count_table(category, longest, Variant::Nondegenerate);
    let mut coefficients = vec![BigInt::zero(); max_level + 1];
    for x in category.object_ids() {
        let i = levels[x.0];
        if i > max_level {
            continue;
        }
        // a chain of length n ending at level i has n ≤ i
        let mut alternating = BigInt::zero();
        for (n, row) in table.iter().enumerate().take(i + 1) {
            let count = BigInt::from(row[x.0].clone());
            if n % 2 == 0 {
                alternating += count;
            } else {
                alternating -= count;
            }
        }
        if i.is_multiple_of(2) {
            coefficients[i] += alternating;
        } else {
            coefficients[i] -= alternating;
        }
    }
    ChiCoefficients { coefficients }
}

/// `c_0, …, c_L` for a level category, computed on its truncation at `L`.
pub fn f_chi_coefficients<C: LevelCategory + ?Sized>(c: &C, max_level: usize) -> ChiCoefficients {
    chi_coefficients_of(&c.truncate(max_level), max_level)
}

/// Fits a minimal linear recurrence to all but the last `guard` terms and
/// accepts it only if its rational function reproduces every term.
pub fn detect_rational(coeffs: &[BigRational], guard: usize) -> Result<Option<RationalFunction>, FilteredError> {
    let needed = 2 * guard.max(1);
    if coeffs.len() < needed {
        return Err(FilteredError::InsufficientTerms {
            needed,
            got: coeffs.len(),
        });
    }
    let fit = &coeffs[..coeffs.len() - guard];
    let (connection, order) = berlekamp_massey(fit);
    if 2 * order > fit.len() {
        return Ok(None);
    }
    let f = rational_from_recurrence(fit, &connection, order);
    let expanded = f.taylor(coeffs.len() - 1).expect("connection polynomial has constant term 1");
    Ok((expanded == coeffs).then_some(f))
}

/// Outcome of evaluating `f_χ` at `-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChiFilValue {
    Defined(BigRational),
    /// No recurrence verified at this truncation and guard.
    NotRationalAtTruncation,
    /// The detected rational function has a pole at `t = -1`.
    PoleAtMinusOne,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiFil {
    pub levels: usize,
    pub guard: usize,
    pub coefficients: ChiCoefficients,
    pub rational: Option<RationalFunction>,
    pub value: ChiFilValue,
}

impl ChiFil {
    pub fn value(&self) -> Option<&BigRational> {
        match &self.value {
            ChiFilValue::Defined(v) => Some(v),
            _ => None,
        }
    }

    pub fn to_report(&self) -> ChiFilReport {
        let (value, reason) = match &self.value {
            ChiFilValue::Defined(v) => (Some(ExactRational::from(v)), None),
            ChiFilValue::NotRationalAtTruncation => (None, Some("not rational at this truncation".to_owned())),
            ChiFilValue::PoleAtMinusOne => (None, Some("pole at t = -1".to_owned())),
        };
        ChiFilReport {
            levels: self.levels,
            guard: self.guard,
            coefficients: self.coefficients.coefficients.iter().map(ToString::to_string).collect(),
            rational: self.rational.as_ref().map(|f| ExactRationalFunction::new(f, "t")),
            value,
            reason,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChiFilReport {
    pub levels: usize,
    pub guard: usize,
    pub coefficients: Vec<String>,
    /// Labelled as rational at truncation `(levels, guard)`.
    pub rational: Option<ExactRationalFunction>,
    pub value: Option<ExactRational>,
    pub reason: Option<String>,
}

pub fn chi_fil_from_coefficients(coefficients: ChiCoefficients, guard: usize) -> Result<ChiFil, FilteredError> {
    let levels = coefficients.coefficients.len() - 1;
    let rational = detect_rational(&coefficients.as_rationals(), guard)?;
    let value = match &rational {
        None => ChiFilValue::NotRationalAtTruncation,
        Some(f) => match value_at_minus_one(f) {
            Some(v) => ChiFilValue::Defined(v),
            None => ChiFilValue::PoleAtMinusOne,
        },
    };
    Ok(ChiFil {
        levels,
        guard,
        coefficients,
        rational,
        value,
    })
}

/// `χ_fil` from the first `max_level + 1` coefficients.
pub fn chi_fil<C: LevelCategory + ?Sized>(c: &C, max_level: usize, guard: usize) -> Result<ChiFil, FilteredError> {
    chi_fil_from_coefficients(f_chi_coefficients(c, max_level), guard)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FilProductReport {
    pub levels: usize,
    pub guard: usize,
    pub sheets: usize,
    /// Levels `i` where `c_i(A) ≠ sheets · c_i(B)`.
    pub coefficient_mismatches: Vec<usize>,
    pub total: ChiFilReport,
    pub base: ChiFilReport,
    pub fiber: ChiFilReport,
    /// `χ_fil(A) = χ_fil(fiber) · χ_fil(B)`, when all three are defined.
    pub product_holds: Option<bool>,
}

impl FilProductReport {
    pub fn passed(&self) -> bool {
        self.coefficient_mismatches.is_empty() && self.product_holds == Some(true)
    }
}

/// Checks the covering condition on the truncations, then the coefficient
/// factorization and the product of filtered Euler characteristics.
///
/// `fiber_levels` filters the fiber over the first base object; missing
/// entries default to 0.
pub fn verify_fil_product(
    total: &dyn LevelCategory,
    base: &dyn LevelCategory,
    projection: &dyn LevelFunctor,
    max_level: usize,
    guard: usize,
    fiber_levels: &BTreeMap<String, usize>,
) -> Result<FilProductReport, FilteredError> {
    let up = total.truncate(max_level);
    let down = base.truncate(max_level);
    let (e, b) = (up.category(), down.category());

    let mut map = RawFunctor::default();
    for x in e.object_ids() {
        let name = e.object_name(x);
        let image = projection.map_object(name);
        if down.level_of(&image) != Some(up.filtration().levels()[x.0]) {
            return Err(FilteredError::FiltrationIncompatible(name.to_owned()));
        }
        map.object_map.insert(name.to_owned(), image);
    }
    for f in e.morphism_ids().filter(|&f| !e.is_identity(f)) {
        map.morphism_map
            .insert(e.name_of(f).to_owned(), projection.map_arrow(e.name_of(f)));
    }
    let p = validate_functor(&map, e.clone(), b.clone()).map_err(FilteredError::NotAFunctor)?;

    // Both truncations are cut at the same level and P preserves levels, so
    // S and T restrict compatibly; the bijections can be checked on every
    // object, the boundary level included.
    for x in e.object_ids() {
        let px = CatFunctor::map_object(&p, x);
        let bijective = |up: &[crate::category::MorphismId], down: &[crate::category::MorphismId]| {
            let mut images: Vec<_> = up.iter().map(|&f| p.map_morphism(f)).collect();
            images.sort();
            let mut expected = down.to_vec();
            expected.sort();
            images == expected
        };
        if !bijective(e.outgoing(x), b.outgoing(px)) || !bijective(e.incoming(x), b.incoming(px)) {
            return Err(FilteredError::CoveringViolatedAtTruncation {
                object: e.object_name(x).to_owned(),
                level: up.filtration().levels()[x.0],
            });
        }
    }
    let mut fibers = vec![Vec::new(); b.num_objects()];
    for x in e.object_ids() {
        fibers[CatFunctor::map_object(&p, x).0].push(e.object_name(x).to_owned());
    }
    let sheets = fibers[0].len();
    if let Some(i) = fibers.iter().position(|f| f.len() != sheets) {
        return Err(FilteredError::FiberSizeMismatch {
            first: b.object_names()[0].clone(),
            second: b.object_names()[i].clone(),
        });
    }

    let c_total = chi_coefficients_of(&up, max_level);
    let c_base = chi_coefficients_of(&down, max_level);
    let factor = BigInt::from(sheets);
    let coefficient_mismatches = (0..=max_level)
        .filter(|&i| c_total.coefficients[i] != &c_base.coefficients[i] * &factor)
        .collect();

    let fiber_mu: BTreeMap<String, usize> = fibers[0]
        .iter()
        .map(|x| (x.clone(), fiber_levels.get(x).copied().unwrap_or(0)))
        .collect();
    let fiber_category = FilteredCategory::new(
        FiniteCategory::discrete(&fibers[0]).expect("nonempty fiber"),
        &fiber_mu,
    )?;
    let chi_total = chi_fil_from_coefficients(c_total, guard)?;
    let chi_base = chi_fil_from_coefficients(c_base, guard)?;
    let chi_fiber = chi_fil(&fiber_category, max_level, guard)?;
    let product_holds = match (chi_total.value(), chi_base.value(), chi_fiber.value()) {
        (Some(a), Some(bv), Some(f)) => Some(*a == f * bv),
        _ => None,
    };
    Ok(FilProductReport {
        levels: max_level,
        guard,
        sheets,
        coefficient_mismatches,
        total: chi_total.to_report(),
        base: chi_base.to_report(),
        fiber: chi_fiber.to_report(),
        product_holds,
    })
}

/// Number of non-degenerate chains of length `n` ending at level `i`, for
/// every `n, i ≤ max_level`.
pub fn level_chain_counts(c: &FilteredCategory, max_level: usize) -> Vec<Vec<BigUint>> {
    let table = targeted_count_table(c.category(), max_level, Variant::Nondegenerate);
    let levels = c.filtration().levels();
    table
        .iter()
        .map(|row| {
            let mut by_level = vec![BigUint::zero(); max_level + 1];
            for (x, count) in row.iter().enumerate() {
                if levels[x] <= max_level {
                    by_level[levels[x]] += count;
                }
            }
            by_level
        })
        .collect()
}
