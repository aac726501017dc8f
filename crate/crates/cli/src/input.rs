//! Reading categories, functors and bundles from files, stdin or the
//! built-in examples. Every loaded input is digested for the report.

use std::io::Read as _;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use catcover_core::io::{bundle_to_json, category_to_json, parse_bundle, parse_category, parse_functor_file};
use catcover_core::{build_example, validate_functor, CatFunctor, Example, ExampleSpec, FiniteCategory};

use crate::args::{CategoryInput, CoveringInput};
use crate::report::InputDigest;

pub struct Text {
    pub name: String,
    pub text: String,
}

impl Text {
    pub fn digest(&self) -> InputDigest {
        InputDigest::of(&self.name, self.text.as_bytes())
    }
}

/// Reads `path`, or stdin for `-`.
pub fn read(path: &str) -> Result<Text> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).context("cannot read stdin")?;
        return Ok(Text {
            name: "<stdin>".into(),
            text,
        });
    }
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {path}"))?;
    Ok(Text {
        name: path.to_owned(),
        text,
    })
}

pub fn example(spec: ExampleSpec) -> Result<Example> {
    Ok(build_example(spec)?)
}

/// Digest of a built-in example: its serialized form.
pub fn example_digest(spec: ExampleSpec, ex: &Example) -> InputDigest {
    let text = match ex {
        Example::Finite(c) => category_to_json(c),
        Example::Covering(b) => bundle_to_json(b),
        Example::Ladder | Example::LadderBase => String::new(),
    };
    InputDigest::of(format!("example:{spec}"), text.as_bytes())
}

pub fn parse_category_text(t: &Text) -> Result<FiniteCategory> {
    parse_category(&t.text).with_context(|| format!("in {}", t.name))
}

pub fn category(input: &CategoryInput) -> Result<(FiniteCategory, Vec<InputDigest>)> {
    match input.example {
        Some(spec) => {
            let ex = example(spec)?;
            let digest = example_digest(spec, &ex);
            let c = ex
                .category()
                .cloned()
                .ok_or_else(|| anyhow!("`{spec}` is infinite; use `filtered chi --example {spec}`"))?;
            Ok((c, vec![digest]))
        }
        None => {
            let t = read(&input.input)?;
            Ok((parse_category_text(&t)?, vec![t.digest()]))
        }
    }
}

/// The functor named by a covering input.
pub fn covering(input: &CoveringInput) -> Result<(CatFunctor, Vec<InputDigest>)> {
    if let Some(spec) = input.example {
        let ex = example(spec)?;
        let digest = example_digest(spec, &ex);
        let Example::Covering(bundle) = ex else {
            bail!("`{spec}` is not a covering example; try `gamma` or `fan:n`");
        };
        return Ok((bundle.functor()?, vec![digest]));
    }
    if let Some(path) = &input.bundle {
        let t = read(path)?;
        let bundle = parse_bundle(&t.text).with_context(|| format!("in {}", t.name))?;
        let p = bundle.functor().with_context(|| format!("in {}", t.name))?;
        return Ok((p, vec![t.digest()]));
    }
    match input.files.as_slice() {
        [e, b, p] => functor_with_endpoints(p, e, b),
        [p] => {
            if p == "-" {
                bail!("a functor file naming its endpoints must be a path, not stdin");
            }
            let t = read(p)?;
            let file = parse_functor_file(&t.text).with_context(|| format!("in {}", t.name))?;
            let dir = Path::new(p).parent().unwrap_or(Path::new("."));
            let resolve = |named: &Option<String>, which: &str| -> Result<PathBuf> {
                named
                    .as_ref()
                    .map(|n| dir.join(n))
                    .ok_or_else(|| anyhow!("{p} gives no {which} category; pass `E B P` instead"))
            };
            let e = resolve(&file.source_file, "source")?;
            let b = resolve(&file.target_file, "target")?;
            functor_with_endpoints(p, &e.to_string_lossy(), &b.to_string_lossy())
        }
        [] => bail!("give `E B P`, a functor file, `--bundle FILE` or `--example NAME`"),
        _ => bail!("expected `E B P` or a single functor file, got {} files", input.files.len()),
    }
}

fn functor_with_endpoints(p: &str, e: &str, b: &str) -> Result<(CatFunctor, Vec<InputDigest>)> {
    let (te, tb, tp) = (read(e)?, read(b)?, read(p)?);
    let total = parse_category_text(&te)?;
    let base = parse_category_text(&tb)?;
    let file = parse_functor_file(&tp.text).with_context(|| format!("in {}", tp.name))?;
    let functor = validate_functor(&file.raw(), total, base).with_context(|| format!("in {}", tp.name))?;
    Ok((functor, vec![te.digest(), tb.digest(), tp.digest()]))
}
