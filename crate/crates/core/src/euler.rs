//! Series Euler characteristic and the groupoid formula.
//!
//! `f_C(t) = sum(adj(E - (A - E)t)) / det(E - (A - E)t)` has Taylor
//! coefficients `#N̄_n(C)`. The series Euler characteristic is `f_C(-1)`,
//! taken on the reduced function.

use num::{BigRational, One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::category::FiniteCategory;
use crate::covering::CoveringCertificate;
use crate::exact::ExactRational;
use crate::matrix::PolyMatrix;
use crate::nerve::{adjacency_matrix, Variant};
use crate::poly::Poly;
use crate::ratfunc::RationalFunction;
use crate::zeta::{chi_from_closed_form, zeta_closed_form};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EulerError {
    #[error("the category is not a groupoid")]
    NotAGroupoid,
}

/// The pair `(sum(adj M), det M)` for `M = E - (A - E)t`, unreduced.
pub fn euler_rational_parts(c: &FiniteCategory) -> (Poly, Poly) {
    let b = adjacency_matrix(c, Variant::Nondegenerate);
    let m = PolyMatrix::identity_minus(&b.entries);
    (m.adjugate().entry_sum(), m.determinant())
}

/// Reduced `f_C(t)`.
pub fn euler_rational_function(c: &FiniteCategory) -> RationalFunction {
    let (num, den) = euler_rational_parts(c);
    RationalFunction::new(num, den)
}

/// `f_C(-1)` when the reduced denominator does not vanish at `-1`.
pub fn series_euler_characteristic(c: &FiniteCategory) -> Option<BigRational> {
    value_at_minus_one(&euler_rational_function(c))
}

/// `Σ 1/#Aut(x)` over isomorphism classes.
pub fn groupoid_euler(c: &FiniteCategory) -> Result<BigRational, EulerError> {
    if !c.is_groupoid() {
        return Err(EulerError::NotAGroupoid);
    }
    // In a groupoid the connected components are the isomorphism classes.
    let labels = c.components();
    let mut seen = vec![false; labels.iter().max().map_or(0, |m| m + 1)];
    let mut total = BigRational::zero();
    for x in c.object_ids() {
        if std::mem::replace(&mut seen[labels[x.0]], true) {
            continue;
        }
        let automorphisms = c.hom(x, x).count();
        total += BigRational::new(1.into(), automorphisms.into());
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChiProductReport {
    pub sheets: usize,
    pub total: Option<ExactRational>,
    pub base: Option<ExactRational>,
    /// χ of the fiber, computed on the discrete category it spans.
    pub fiber: Option<ExactRational>,
    /// Existence for the total category agrees with existence for the base.
    pub existence_agrees: bool,
    /// `χ(E) = χ(fiber)·χ(B)`, when both sides exist.
    pub product_holds: Option<bool>,
    /// `χ` of total and base recomputed from the zeta closed forms, when both
    /// split over the rationals.
    pub closed_form_total: Option<Option<ExactRational>>,
    pub closed_form_base: Option<Option<ExactRational>>,
    /// Both routes to `χ` agree on total and base (vacuous when a closed form
    /// is unavailable).
    pub closed_form_agrees: bool,
}

impl ChiProductReport {
    pub fn passed(&self) -> bool {
        self.existence_agrees && self.product_holds != Some(false) && self.closed_form_agrees
    }
}

/// Checks `χ(E) = χ(P^{-1}(b))·χ(B)` and the existence equivalence.
pub fn verify_chi_product(cert: &CoveringCertificate) -> ChiProductReport {
    let (e, b) = (cert.functor().source(), cert.functor().target());
    let fiber_names: Vec<&str> = cert
        .fiber_ids(b.object_ids().next().expect("base is nonempty"))
        .iter()
        .map(|&x| e.object_name(x))
        .collect();
    let fiber = FiniteCategory::discrete(&fiber_names).expect("fibers are nonempty");

    let chi_e = series_euler_characteristic(e);
    let chi_b = series_euler_characteristic(b);
    let chi_f = series_euler_characteristic(&fiber);

    let product_holds = match (&chi_e, &chi_b, &chi_f) {
        (Some(x), Some(y), Some(f)) => Some(*x == f * y),
        _ => None,
    };

    let closed = |c: &FiniteCategory| zeta_closed_form(c).ok().map(|form| chi_from_closed_form(&form));
    let closed_e = closed(e);
    let closed_b = closed(b);
    let agrees = |series: &Option<BigRational>, form: &Option<Option<BigRational>>| match form {
        Some(value) => value == series,
        None => true,
    };

    let exact = |q: &Option<BigRational>| q.as_ref().map(ExactRational::from);
    ChiProductReport {
        sheets: cert.sheets(),
        total: exact(&chi_e),
        base: exact(&chi_b),
        fiber: exact(&chi_f),
        existence_agrees: chi_e.is_some() == chi_b.is_some(),
        product_holds,
        closed_form_agrees: agrees(&chi_e, &closed_e) && agrees(&chi_b, &closed_b),
        closed_form_total: closed_e.as_ref().map(exact),
        closed_form_base: closed_b.as_ref().map(exact),
    }
}

/// Value at `t = -1` of a rational function, if it is not a pole.
pub fn value_at_minus_one(f: &RationalFunction) -> Option<BigRational> {
    f.eval(&-BigRational::one())
}
