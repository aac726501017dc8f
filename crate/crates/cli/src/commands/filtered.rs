//! `filtered chi` and `filtered verify`.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use catcover_core::builders::{Ladder, LadderBase, LadderProjection};
use catcover_core::exact::{format_rational, ExactRational};
use catcover_core::filtered::ChiFilReport;
use catcover_core::io::{parse_filtered_category, parse_functor_file};
use catcover_core::{
    chi_fil, validate_functor, verify_fil_product, ChiFilValue, Example, FilteredCategory, FilteredError,
    LevelCategory, LevelFunctor,
};
use serde_json::json;

use crate::args::{FilteredChiArgs, FilteredVerifyArgs};
use crate::input;
use crate::report::{InputDigest, Report};

fn depth_filtered(c: catcover_core::FiniteCategory, name: &str) -> Result<FilteredCategory> {
    FilteredCategory::by_depth(c).map_err(|_| anyhow!("`{name}` is not acyclic, so it has no filtration"))
}

fn insufficient(e: FilteredError) -> anyhow::Error {
    anyhow!(e).context("raise --levels or lower --guard")
}

pub fn chi(args: &FilteredChiArgs) -> Result<Report> {
    let (category, digests): (Box<dyn LevelCategory>, Vec<InputDigest>) = match args.example {
        Some(spec) => {
            let ex = input::example(spec)?;
            let digest = input::example_digest(spec, &ex);
            let c: Box<dyn LevelCategory> = match ex {
                Example::Ladder => Box::new(Ladder),
                Example::LadderBase => Box::new(LadderBase),
                other => Box::new(depth_filtered(other.category().expect("finite").clone(), &spec.to_string())?),
            };
            (c, vec![digest])
        }
        None => {
            let t = input::read(&args.input)?;
            let f = parse_filtered_category(&t.text).with_context(|| format!("in {}", t.name))?;
            (Box::new(f), vec![t.digest()])
        }
    };
    let (levels, guard) = (args.truncation.levels, args.truncation.guard);
    let result = chi_fil(category.as_ref(), levels, guard).map_err(insufficient)?;
    let mut report = Report::new(digests);
    let stream: Vec<String> = result.coefficients.coefficients.iter().map(ToString::to_string).collect();
    report.line(format!("coefficients c_0..c_{levels}: {}", stream.join(", ")));
    match &result.rational {
        Some(f) => report.line(format!("f_chi(t) = {} (rational at L = {levels}, guard = {guard})", f.display("t"))),
        None => report.line(format!("no rational function verified at L = {levels}, guard = {guard}")),
    }
    match &result.value {
        ChiFilValue::Defined(v) => report.line(format!("chi_fil = {}", format_rational(v))),
        ChiFilValue::NotRationalAtTruncation => {
            report.refuse(format!("f_chi is not rational at truncation L = {levels}, guard = {guard}"))
        }
        ChiFilValue::PoleAtMinusOne => report.refuse("f_chi has a pole at t = -1"),
    }
    report.result = json!(result.to_report());
    Ok(report)
}

fn value(r: &ChiFilReport) -> String {
    r.value
        .as_ref()
        .and_then(ExactRational::to_rational)
        .map_or("undefined".to_owned(), |v| format_rational(&v))
}

pub fn verify(args: &FilteredVerifyArgs) -> Result<Report> {
    let (levels, guard) = (args.truncation.levels, args.truncation.guard);
    let fibers = BTreeMap::new();
    let (outcome, digests) = match (args.example, args.files.as_slice()) {
        (Some(spec), _) => {
            let ex = input::example(spec)?;
            let digest = input::example_digest(spec, &ex);
            let outcome = match ex {
                Example::Ladder => verify_fil_product(&Ladder, &LadderBase, &LadderProjection, levels, guard, &fibers),
                Example::Covering(bundle) => {
                    let p = bundle.functor()?;
                    let total = depth_filtered(bundle.total, &spec.to_string())?;
                    let base = depth_filtered(bundle.base, "base")?;
                    verify_fil_product(&total, &base, &p as &dyn LevelFunctor, levels, guard, &fibers)
                }
                _ => bail!("`{spec}` is not a covering example; try `ladder`"),
            };
            (outcome, vec![digest])
        }
        (None, [total, base, functor]) => {
            let (tt, tb, tp) = (input::read(total)?, input::read(base)?, input::read(functor)?);
            let total = parse_filtered_category(&tt.text).with_context(|| format!("in {}", tt.name))?;
            let base = parse_filtered_category(&tb.text).with_context(|| format!("in {}", tb.name))?;
            let file = parse_functor_file(&tp.text).with_context(|| format!("in {}", tp.name))?;
            let p = validate_functor(&file.raw(), total.category().clone(), base.category().clone())
                .with_context(|| format!("in {}", tp.name))?;
            let outcome = verify_fil_product(&total, &base, &p, levels, guard, &fibers);
            (outcome, vec![tt.digest(), tb.digest(), tp.digest()])
        }
        _ => bail!("give `TOTAL BASE FUNCTOR` or `--example NAME`"),
    };
    let mut report = Report::new(digests);
    let r = match outcome {
        Ok(r) => r,
        Err(e @ FilteredError::InsufficientTerms { .. }) => return Err(insufficient(e)),
        Err(e) => {
            report.check(false, "covering on every truncation");
            report.result = json!({ "covering": false, "violation": e.to_string() });
            report.fail(e.to_string());
            return Ok(report);
        }
    };
    report.check(true, format!("covering with {} sheet(s) through level {levels}", r.sheets));
    report.check(
        r.coefficient_mismatches.is_empty(),
        format!("c_i(total) = {} * c_i(base) for i <= {levels}", r.sheets),
    );
    for (label, chi) in [("total", &r.total), ("base", &r.base), ("fiber", &r.fiber)] {
        report.line(format!("  chi_fil({label}) = {}", value(chi)));
    }
    match r.product_holds {
        Some(ok) => report.check(
            ok,
            format!(
                "chi_fil(total) = chi_fil(fiber) * chi_fil(base): {} = {} * {}",
                value(&r.total),
                value(&r.fiber),
                value(&r.base)
            ),
        ),
        None => report.refuse(format!("chi_fil is undefined at L = {levels}, guard = {guard}")),
    }
    report.result = json!(r);
    Ok(report)
}
