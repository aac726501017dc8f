//! JSON file formats.
//!
//! * Category: `{objects, morphisms: [{id, src, tgt}], identities, compose: [{g, f, gf}]}`.
//! * Functor: `{source_file?, target_file?, object_map, morphism_map?}`.
//! * Filtered category: the category fields plus `filtration: {object: level}`.
//! * Covering bundle: `{total, base, functor: {object_map, morphism_map}}`.
//!
//! Unknown fields are rejected everywhere.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::builders::CoveringBundle;
use crate::category::{FiniteCategory, InvalidCategory, RawCategory, RawComposite, RawMorphism};
use crate::filtered::{FilteredCategory, FilteredError};
use crate::functor::{validate_functor, CatFunctor, InvalidFunctor, RawFunctor};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed input: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("{0}")]
    Category(#[from] InvalidCategory),
    #[error("{0}")]
    Functor(#[from] InvalidFunctor),
    #[error("{0}")]
    Filtration(#[from] FilteredError),
    #[error("functor file gives no {0} category")]
    MissingEndpoint(&'static str),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_file: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_file: Option<String>,
    pub object_map: BTreeMap<String, String>,
    #[serde(default)]
    pub morphism_map: BTreeMap<String, String>,
}

impl FunctorFile {
    pub fn raw(&self) -> RawFunctor {
        RawFunctor {
            object_map: self.object_map.clone(),
            morphism_map: self.morphism_map.clone(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilteredCategoryFile {
    pub objects: Vec<String>,
    pub morphisms: Vec<RawMorphism>,
    pub identities: BTreeMap<String, String>,
    #[serde(default)]
    pub compose: Vec<RawComposite>,
    pub filtration: BTreeMap<String, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleFile {
    pub total: RawCategory,
    pub base: RawCategory,
    pub functor: RawFunctor,
}

pub fn read_text(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.to_owned(),
        source,
    })
}

pub fn parse_category(text: &str) -> Result<FiniteCategory, IoError> {
    let raw: RawCategory = serde_json::from_str(text)?;
    Ok(raw.build()?)
}

pub fn load_category(path: &Path) -> Result<FiniteCategory, IoError> {
    parse_category(&read_text(path)?)
}

pub fn parse_functor_file(text: &str) -> Result<FunctorFile, IoError> {
    Ok(serde_json::from_str(text)?)
}

/// Loads a functor file. Explicit `source`/`target` paths win over the ones
/// named in the file; relative paths in the file are resolved against its
/// directory.
pub fn load_functor(
    path: &Path,
    source: Option<&Path>,
    target: Option<&Path>,
) -> Result<CatFunctor, IoError> {
    let file = parse_functor_file(&read_text(path)?)?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let resolve = |explicit: Option<&Path>, named: &Option<String>, which| match (explicit, named) {
        (Some(p), _) => Ok(p.to_owned()),
        (None, Some(n)) => Ok(dir.join(n)),
        (None, None) => Err(IoError::MissingEndpoint(which)),
    };
    let e = load_category(&resolve(source, &file.source_file, "source")?)?;
    let b = load_category(&resolve(target, &file.target_file, "target")?)?;
    Ok(validate_functor(&file.raw(), e, b)?)
}

pub fn parse_filtered_category(text: &str) -> Result<FilteredCategory, IoError> {
    let file: FilteredCategoryFile = serde_json::from_str(text)?;
    let raw = RawCategory {
        objects: file.objects,
        morphisms: file.morphisms,
        identities: file.identities,
        compose: file.compose,
    };
    Ok(FilteredCategory::new(raw.build()?, &file.filtration)?)
}

pub fn parse_bundle(text: &str) -> Result<CoveringBundle, IoError> {
    let file: BundleFile = serde_json::from_str(text)?;
    Ok(CoveringBundle {
        total: file.total.build()?,
        base: file.base.build()?,
        map: file.functor,
    })
}

pub fn category_to_json(c: &FiniteCategory) -> String {
    serde_json::to_string_pretty(&c.to_raw()).expect("category serializes")
}

pub fn bundle_to_json(bundle: &CoveringBundle) -> String {
    let file = BundleFile {
        total: bundle.total.to_raw(),
        base: bundle.base.to_raw(),
        functor: bundle.map.clone(),
    };
    serde_json::to_string_pretty(&file).expect("bundle serializes")
}

pub fn filtered_to_json(c: &FilteredCategory) -> String {
    let raw = c.category().to_raw();
    let file = FilteredCategoryFile {
        filtration: raw
            .objects
            .iter()
            .map(|x| (x.clone(), c.level_of(x).expect("object of c")))
            .collect(),
        objects: raw.objects,
        morphisms: raw.morphisms,
        identities: raw.identities,
        compose: raw.compose,
    };
    serde_json::to_string_pretty(&file).expect("filtered category serializes")
}
