//! `cover check` and `cover verify`.

use anyhow::Result;
use catcover_core::exact::{format_rational, ExactRational};
use catcover_core::{
    check_covering, verify_chi_product, verify_nerve_factorization, verify_zeta_power, CoveringCertificate,
};
use serde_json::json;

use crate::args::{CoverVerifyArgs, CoveringInput};
use crate::input;
use crate::report::Report;

fn certified(input: &CoveringInput) -> Result<(Report, Option<CoveringCertificate>)> {
    let (p, digests) = input::covering(input)?;
    let mut report = Report::new(digests);
    match check_covering(p) {
        Ok(cert) => Ok((report, Some(cert))),
        Err(e) => {
            report.check(false, "covering condition");
            report.result = json!({ "covering": false, "violation": e.to_string() });
            report.fail(e.to_string());
            Ok((report, None))
        }
    }
}

fn describe(report: &mut Report, cert: &CoveringCertificate) {
    report.check(true, format!("covering with {} sheet(s)", cert.sheets()));
    for (base, fiber) in cert.fiber_table() {
        report.line(format!("  fiber over {base}: {}", fiber.join(", ")));
    }
}

pub fn check(input: &CoveringInput) -> Result<Report> {
    let (mut report, cert) = certified(input)?;
    if let Some(cert) = cert {
        describe(&mut report, &cert);
        report.result = json!({ "covering": true, "certificate": cert.summary() });
    }
    Ok(report)
}

fn shown(q: &Option<ExactRational>) -> String {
    q.as_ref()
        .and_then(ExactRational::to_rational)
        .map_or("none".to_owned(), |v| format_rational(&v))
}

pub fn verify(args: &CoverVerifyArgs) -> Result<Report> {
    let (mut report, cert) = certified(&args.covering)?;
    let Some(cert) = cert else { return Ok(report) };
    describe(&mut report, &cert);
    let sheets = cert.sheets();

    let factorization = verify_nerve_factorization(&cert, args.max_n);
    report.check(
        factorization.passed(),
        format!("nerve counts factor through n = {} ({} checks)", args.max_n, factorization.checks),
    );
    for v in factorization.violations.iter().take(5) {
        let at = v.object.as_deref().unwrap_or("total");
        report.line(format!("  n = {} {:?} at {at}: {} vs {}", v.n, v.variant, v.total_count, v.expected));
    }

    let zeta = verify_zeta_power(&cert, args.max_n);
    report.check(zeta.passed(), format!("zeta_E = zeta_B^{sheets} through z^{}", args.max_n));

    let chi = verify_chi_product(&cert);
    report.check(chi.existence_agrees, "chi(E) exists exactly when chi(B) does");
    match chi.product_holds {
        Some(ok) => report.check(
            ok,
            format!("chi(E) = chi(fiber) * chi(B): {} = {} * {}", shown(&chi.total), shown(&chi.fiber), shown(&chi.base)),
        ),
        None => report.line("  chi does not exist for E and B; the product formula is vacuous"),
    }
    report.check(chi.closed_form_agrees, "closed-form chi agrees with the series chi");

    report.result = json!({
        "certificate": cert.summary(),
        "factorization": factorization,
        "zeta_power": zeta,
        "chi_product": chi,
    });
    Ok(report)
}
