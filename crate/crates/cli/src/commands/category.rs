//! `validate`, `info`, `nerve`, `zeta` and `euler`.

use anyhow::{anyhow, bail, Result};
use catcover_core::exact::{format_rational, ExactRational, ExactRationalFunction};
use catcover_core::io::{parse_bundle, parse_category, parse_filtered_category, parse_functor_file, IoError};
use catcover_core::nerve::targeted_count_table;
use catcover_core::zeta::REFUSAL_SERIES_ORDER;
use catcover_core::{
    chi_from_closed_form, euler_rational_function, groupoid_euler, nerve_counts, series_euler_characteristic,
    validate_functor, zeta_closed_form, zeta_series, FiniteCategory, Poly, Variant, ZetaError,
};
use serde_json::json;

use crate::args::{CategoryInput, FileKind, NerveArgs, ValidateArgs, ZetaArgs};
use crate::input;
use crate::report::Report;

pub fn validate(args: &ValidateArgs) -> Result<Report> {
    if args.kind != FileKind::Functor && (args.source.is_some() || args.target.is_some()) {
        bail!("--source and --target only apply to `--kind functor`");
    }
    let t = input::read(&args.input)?;
    let mut report = Report::new(vec![t.digest()]);
    let outcome: Result<String, IoError> = match args.kind {
        FileKind::Category => parse_category(&t.text).map(|c| sizes(&c)),
        FileKind::Filtered => parse_filtered_category(&t.text)
            .map(|f| format!("{}, levels 0..={}", sizes(f.category()), f.max_level())),
        FileKind::Bundle => parse_bundle(&t.text).and_then(|b| {
            b.functor()?;
            Ok(format!("total {}; base {}", sizes(&b.total), sizes(&b.base)))
        }),
        FileKind::Functor => {
            if args.input == "-" {
                bail!("functor files must be given by path");
            }
            let file = parse_functor_file(&t.text)?;
            let dir = std::path::Path::new(&args.input).parent().unwrap_or(std::path::Path::new("."));
            let endpoint = |explicit: &Option<String>, named: &Option<String>, which: &str| -> Result<_> {
                let path = match (explicit, named) {
                    (Some(p), _) => p.clone(),
                    (None, Some(n)) => dir.join(n).to_string_lossy().into_owned(),
                    (None, None) => bail!("no {which} category; pass --{which}"),
                };
                let e = input::read(&path)?;
                Ok((input::parse_category_text(&e)?, e.digest()))
            };
            let (source, ds) = endpoint(&args.source, &file.source_file, "source")?;
            let (target, dt) = endpoint(&args.target, &file.target_file, "target")?;
            report.inputs.extend([ds, dt]);
            validate_functor(&file.raw(), source, target)
                .map(|p| format!("{} objects mapped", p.source().num_objects()))
                .map_err(IoError::from)
        }
    };
    let kind = format!("{:?}", args.kind).to_lowercase();
    match outcome {
        Ok(summary) => {
            report.check(true, format!("valid {kind}: {summary}"));
            report.result = json!({ "kind": kind, "valid": true, "violations": [] });
        }
        Err(IoError::Parse(e)) => return Err(anyhow!(e).context(format!("in {}", t.name))),
        Err(e) => {
            report.check(false, format!("invalid {kind}"));
            let violations = violation_lines(&e);
            for v in &violations {
                report.line(format!("  - {v}"));
            }
            report.result = json!({ "kind": kind, "valid": false, "violations": violations });
        }
    }
    Ok(report)
}

fn violation_lines(e: &IoError) -> Vec<String> {
    match e {
        IoError::Category(c) => c.violations.iter().map(ToString::to_string).collect(),
        IoError::Functor(f) => f.violations.iter().map(ToString::to_string).collect(),
        other => vec![other.to_string()],
    }
}

fn sizes(c: &FiniteCategory) -> String {
    format!("{} objects, {} morphisms", c.num_objects(), c.num_morphisms())
}

pub fn info(args: &CategoryInput) -> Result<Report> {
    let (c, digests) = input::category(args)?;
    let mut report = Report::new(digests);
    let components = c.components().into_iter().max().map_or(0, |m| m + 1);
    report.line(sizes(&c));
    report.line(format!("components: {components}"));
    let predicates = [
        ("connected", c.is_connected()),
        ("acyclic", c.is_acyclic()),
        ("groupoid", c.is_groupoid()),
        ("discrete", c.is_discrete()),
        ("poset", c.is_poset()),
    ];
    for (name, value) in predicates {
        report.line(format!("{name}: {value}"));
    }
    report.line("object  |S(x)|  |T(x)|");
    let mut objects = Vec::new();
    for x in c.object_ids() {
        let sets = c.morphism_sets(x);
        report.line(format!("{:<7} {:>6}  {:>6}", c.object_name(x), sets.source.len(), sets.target.len()));
        objects.push(json!({
            "name": c.object_name(x),
            "source_size": sets.source.len(),
            "target_size": sets.target.len(),
        }));
    }
    let mut result = json!({
        "objects": c.num_objects(),
        "morphisms": c.num_morphisms(),
        "components": components,
        "per_object": objects,
    });
    for (name, value) in predicates {
        result[name] = json!(value);
    }
    report.result = result;
    Ok(report)
}

pub fn nerve(args: &NerveArgs) -> Result<Report> {
    let (c, digests) = input::category(&args.category)?;
    let mut report = Report::new(digests);
    let deg = nerve_counts(&c, args.max_n, Variant::Degenerate);
    let nondeg = nerve_counts(&c, args.max_n, Variant::Nondegenerate);
    let targeted = match &args.object {
        None => None,
        Some(name) => {
            let x = c.object_id(name).ok_or_else(|| anyhow!("unknown object `{name}`"))?;
            let column = |v| targeted_count_table(&c, args.max_n, v).into_iter().map(move |row| row[x.0].clone());
            Some((column(Variant::Degenerate).collect::<Vec<_>>(), column(Variant::Nondegenerate).collect::<Vec<_>>()))
        }
    };
    let mut header = format!("{:>3}  {:>12}  {:>15}", "n", "degenerate", "non-degenerate");
    if let Some(name) = &args.object {
        header.push_str(&format!("  {:>12}  {:>15}", format!("at {name}"), format!("non-deg at {name}")));
    }
    report.line(header);
    let mut rows = Vec::new();
    for n in 0..=args.max_n {
        let mut line = format!("{n:>3}  {:>12}  {:>15}", deg[n], nondeg[n]);
        let mut row = json!({
            "n": n,
            "degenerate": deg[n].to_string(),
            "nondegenerate": nondeg[n].to_string(),
        });
        if let Some((td, tn)) = &targeted {
            line.push_str(&format!("  {:>12}  {:>15}", td[n], tn[n]));
            row["targeted_degenerate"] = json!(td[n].to_string());
            row["targeted_nondegenerate"] = json!(tn[n].to_string());
        }
        report.line(line);
        rows.push(row);
    }
    report.result = json!({ "max_n": args.max_n, "object": args.object, "rows": rows });
    Ok(report)
}

fn series_line(coeffs: &[num::BigRational]) -> String {
    let order = coeffs.len() - 1;
    format!("{} + O(z^{})", Poly::from_coeffs(coeffs.to_vec()).display("z"), order + 1)
}

fn exact_list(coeffs: &[num::BigRational]) -> Vec<ExactRational> {
    coeffs.iter().map(ExactRational::from).collect()
}

pub fn zeta(args: &ZetaArgs) -> Result<Report> {
    let (c, digests) = input::category(&args.category)?;
    let mut report = Report::new(digests);
    let order = match (args.series, args.closed_form) {
        (Some(n), _) => Some(n),
        (None, false) => Some(8),
        (None, true) => None,
    };
    let mut result = json!({});
    if let Some(n) = order {
        let series = zeta_series(&c, n);
        report.line(format!("zeta = {}", series_line(series.coeffs())));
        result["series"] = json!(exact_list(series.coeffs()));
    }
    if args.closed_form {
        match zeta_closed_form(&c) {
            Ok(form) => {
                report.line(format!("closed form: zeta = {}", form.display()));
                result["closed_form"] = json!(form.to_report());
            }
            Err(e @ ZetaError::NonRationalSpectrum { .. }) => {
                let ZetaError::NonRationalSpectrum { remainder, series } = &e;
                if order.is_none() {
                    report.line(format!("zeta = {}", series_line(series.coeffs())));
                    result["series"] = json!(exact_list(series.coeffs()));
                }
                result["closed_form"] = json!(null);
                result["irreducible_factor"] = json!(catcover_core::exact::poly_coefficients(remainder));
                result["refusal_series_order"] = json!(REFUSAL_SERIES_ORDER);
                report.refuse(format!("no closed form: {e}"));
            }
        }
    }
    report.result = result;
    Ok(report)
}

pub fn euler(args: &CategoryInput) -> Result<Report> {
    let (c, digests) = input::category(args)?;
    let mut report = Report::new(digests);
    let f = euler_rational_function(&c);
    report.line(format!("f_I(t) = {}", f.display("t")));
    let chi = series_euler_characteristic(&c);
    let closed = zeta_closed_form(&c).ok().map(|form| chi_from_closed_form(&form));
    let groupoid = c.is_groupoid().then(|| groupoid_euler(&c).expect("groupoid"));
    match &chi {
        Some(v) => report.line(format!("chi = {}", format_rational(v))),
        None => report.refuse("f_I(t) has a pole at t = -1, so the series Euler characteristic does not exist"),
    }
    if let Some(other) = &closed {
        let shown = other.as_ref().map_or("none".to_owned(), format_rational);
        report.check(*other == chi, format!("zeta closed form gives chi = {shown}"));
    }
    if let Some(g) = &groupoid {
        report.check(chi.as_ref() == Some(g), format!("groupoid sum of 1/|Aut| = {}", format_rational(g)));
    }
    report.result = json!({
        "chi": chi.as_ref().map(ExactRational::from),
        "f_i": ExactRationalFunction::new(&f, "t"),
        "closed_form_chi": closed.map(|o| o.as_ref().map(ExactRational::from)),
        "groupoid_chi": groupoid.as_ref().map(ExactRational::from),
    });
    Ok(report)
}
