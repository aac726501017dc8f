//! Zeta functions of finite categories.
//!
//! `ζ_C(z) = exp(Σ_{n≥1} #N_n(C) z^n / n)`. Its logarithmic derivative is the
//! rational function `sum(adj(E - Az)·A) / det(E - Az) = Σ #N_n z^{n-1}`.
//! When the reduced denominator splits into rational linear factors, the
//! partial-fraction decomposition gives the closed form
//!
//! ```text
//! ζ(z) = Π_k (1 - a_k z)^{-b_{k,0}} · exp(Q(z) + Σ_k Σ_{j≥1} b_{k,j} z^j / (j (1 - a_k z)^j))
//! ```

use num::{BigInt, BigRational, One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::category::FiniteCategory;
use crate::covering::CoveringCertificate;
use crate::exact::{format_rational, poly_coefficients, ExactRational};
use crate::matrix::PolyMatrix;
use crate::nerve::{adjacency_matrix, nerve_counts, Variant};
use crate::poly::{rat, Poly};
use crate::ratfunc::RationalFunction;
use crate::series::PowerSeries;

/// Order of the series attached to a refused closed form.
pub const REFUSAL_SERIES_ORDER: usize = 12;

/// The unreduced pieces of the log-derivative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogDerivativeParts {
    /// `sum(adj(E - Az)·A)`.
    pub numerator: Poly,
    /// `det(E - Az)`.
    pub determinant: Poly,
    /// Polynomial quotient `q` of `numerator` by `determinant`.
    pub quotient: Poly,
    /// Remainder `r`, so `numerator = q·det + r`.
    pub remainder: Poly,
}

pub fn log_derivative_parts(c: &FiniteCategory) -> LogDerivativeParts {
    let a = adjacency_matrix(c, Variant::Degenerate);
    let m = PolyMatrix::identity_minus(&a.entries);
    let row_sums: Vec<BigRational> = a
        .row_sums()
        .into_iter()
        .map(|s| BigRational::from_integer(BigInt::from(s)))
        .collect();
    // sum(adj(M)·A) = 1ᵀ adj(M) (A 1)
    let numerator = m.adjugate().weighted_entry_sum(&row_sums);
    let determinant = m.determinant();
    let (quotient, remainder) = numerator.div_rem(&determinant);
    LogDerivativeParts {
        numerator,
        determinant,
        quotient,
        remainder,
    }
}

/// Reduced `Σ_{n≥1} #N_n z^{n-1}`.
pub fn log_derivative(c: &FiniteCategory) -> RationalFunction {
    let parts = log_derivative_parts(c);
    RationalFunction::new(parts.numerator, parts.determinant)
}

/// Coefficients of `ζ_C` through `z^order`.
pub fn zeta_series(c: &FiniteCategory, order: usize) -> PowerSeries {
    let weighted: Vec<BigRational> = nerve_counts(c, order, Variant::Degenerate)
        .into_iter()
        .map(|n| BigRational::from_integer(BigInt::from(n)))
        .collect();
    PowerSeries::exp_from_weighted(&weighted)
}

/// One factor `1 - a z` of the closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaPole {
    pub a: BigRational,
    /// Multiplicity `e` of the pole `z = 1/a` in the reduced log-derivative.
    pub multiplicity: usize,
    /// `b_0, …, b_{e-1}`.
    pub coefficients: Vec<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaClosedForm {
    /// Sorted by `a`.
    pub poles: Vec<ZetaPole>,
    /// Zero constant term.
    pub q: Poly,
    pub splits: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ZetaError {
    #[error("the log-derivative denominator has no rational factorization (irreducible part {})", remainder.display("z"))]
    NonRationalSpectrum {
        /// Part of the reduced denominator left after removing all rational
        /// linear factors.
        remainder: Poly,
        /// `ζ` through [`REFUSAL_SERIES_ORDER`], still exact.
        series: PowerSeries,
    },
}

/// Binomial coefficient as a rational.
fn binomial(n: usize, k: usize) -> BigRational {
    if k > n {
        return BigRational::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    BigRational::from_integer(acc)
}

fn pow(x: &BigRational, k: i64) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..k.unsigned_abs() {
        acc *= x;
    }
    if k < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// Factors a monic `d` with `d(0) ≠ 0` as `Π (z - ρ)^e` over the rationals.
/// Returns the roots with multiplicities and the unfactored remainder.
fn factor_linear(d: &Poly) -> (Vec<(BigRational, usize)>, Poly) {
    let mut rest = d.clone();
    let mut roots = Vec::new();
    for rho in d.rational_roots() {
        let factor = Poly::from_coeffs(vec![-rho.clone(), BigRational::one()]);
        let mut e = 0;
        while let Some(next) = rest.exact_div(&factor) {
            rest = next;
            e += 1;
        }
        roots.push((rho, e));
    }
    (roots, rest)
}

/// Splits a reduced log-derivative into the closed-form data, or returns the
/// irreducible part of its denominator.
pub fn closed_form_from_log_derivative(l: &RationalFunction) -> Result<ZetaClosedForm, Poly> {
    let den = l.denominator();
    let (roots, rest) = factor_linear(den);
    if rest.degree() != Some(0) {
        return Err(rest);
    }
    let (q, r) = l.numerator().div_rem(den);
    let mut poles = Vec::with_capacity(roots.len());
    for (rho, e) in &roots {
        let a = rho.recip();
        let linear = Poly::from_coeffs(vec![-rho.clone(), BigRational::one()]);
        let others = den.exact_div(&linear.pow(*e)).expect("factor divides denominator");
        // r/den = Σ_m s_{e-m} (z - ρ)^{-m} + (terms regular at ρ)
        let local = RationalFunction::new(r.shift(rho), others.shift(rho))
            .taylor(e - 1)
            .expect("other factors do not vanish at the pole");
        let neg_a = -a.clone();
        // c[m] is the coefficient of (1 - az)^{-m}.
        let mut c = vec![BigRational::zero(); e + 1];
        for m in 1..=*e {
            c[m] = &local[e - m] * pow(&neg_a, m as i64);
        }
        let mut b = vec![BigRational::zero(); *e];
        for m in (2..=*e).rev() {
            let mut acc = c[m].clone();
            for (j, bj) in b.iter().enumerate().skip(m) {
                let sign = if (j + 1 - m) % 2 == 0 { rat(1) } else { rat(-1) };
                acc -= bj * pow(&a, 1 - j as i64) * binomial(j - 1, j + 1 - m) * sign;
            }
            b[m - 1] = acc * pow(&a, m as i64 - 2);
        }
        b[0] = &c[1] / &a;
        poles.push(ZetaPole {
            a,
            multiplicity: *e,
            coefficients: b,
        });
    }
    poles.sort_by(|x, y| x.a.cmp(&y.a));
    Ok(ZetaClosedForm {
        poles,
        q: q.antiderivative(),
        splits: true,
    })
}

pub fn zeta_closed_form(c: &FiniteCategory) -> Result<ZetaClosedForm, ZetaError> {
    closed_form_from_log_derivative(&log_derivative(c)).map_err(|remainder| {
        ZetaError::NonRationalSpectrum {
            remainder,
            series: zeta_series(c, REFUSAL_SERIES_ORDER),
        }
    })
}

/// `Σ_k Σ_j (-1)^j b_{k,j} / a_k^{j+1}`, or `None` when `Q ≠ 0`.
pub fn chi_from_closed_form(form: &ZetaClosedForm) -> Option<BigRational> {
    if !form.q.is_zero() {
        return None;
    }
    let mut total = BigRational::zero();
    for pole in &form.poles {
        for (j, b) in pole.coefficients.iter().enumerate() {
            let term = b / pow(&pole.a, j as i64 + 1);
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
    }
    Some(total)
}

impl ZetaClosedForm {
    /// Taylor coefficients of `log ζ` through `z^order`.
    fn log_series(&self, order: usize) -> Vec<BigRational> {
        let mut g = vec![BigRational::zero(); order + 1];
        for (n, gn) in g.iter_mut().enumerate().skip(1) {
            *gn = self.q.coeff(n);
        }
        for pole in &self.poles {
            let a = &pole.a;
            // -b_0 log(1 - az) = b_0 Σ a^n z^n / n
            for (n, gn) in g.iter_mut().enumerate().skip(1) {
                *gn += &pole.coefficients[0] * pow(a, n as i64) / rat(n as i64);
            }
            // z^j / (1 - az)^j = Σ_m C(m+j-1, j-1) a^m z^{m+j}
            for (j, b) in pole.coefficients.iter().enumerate().skip(1) {
                let scale = b / rat(j as i64);
                for m in 0..=order.saturating_sub(j) {
                    g[m + j] += &scale * binomial(m + j - 1, j - 1) * pow(a, m as i64);
                }
            }
        }
        g
    }

    /// Re-expands the closed form as a power series through `z^order`.
    pub fn expand(&self, order: usize) -> PowerSeries {
        PowerSeries::new(self.log_series(order), order).exp()
    }

    /// `d/dz log ζ` rebuilt from the closed-form data.
    pub fn log_derivative(&self) -> RationalFunction {
        let mut total = RationalFunction::from_poly(self.q.derivative());
        for pole in &self.poles {
            let base = Poly::linear_factor(&pole.a);
            let first = RationalFunction::new(Poly::constant(&pole.coefficients[0] * &pole.a), base.clone());
            total = total.add(&first);
            for (j, b) in pole.coefficients.iter().enumerate().skip(1) {
                let term = RationalFunction::new(Poly::monomial(b.clone(), j - 1), base.pow(j + 1));
                total = total.add(&term);
            }
        }
        total
    }

    /// E.g. `(1 - z)^-4 * exp(4z/(1 - z))`.
    pub fn display(&self) -> String {
        let mut factors = Vec::new();
        let mut exp_terms = Vec::new();
        if !self.q.is_zero() {
            exp_terms.push(self.q.display("z"));
        }
        for pole in &self.poles {
            let base = Poly::linear_factor(&pole.a).display("z");
            let exponent = -pole.coefficients[0].clone();
            if !exponent.is_zero() {
                factors.push(if exponent.is_one() {
                    format!("({base})")
                } else if exponent.is_integer() {
                    format!("({base})^{exponent}")
                } else {
                    format!("({base})^({})", format_rational(&exponent))
                });
            }
            for (j, b) in pole.coefficients.iter().enumerate().skip(1) {
                if b.is_zero() {
                    continue;
                }
                let top = Poly::monomial(b / rat(j as i64), j).display("z");
                let top = if top.contains(' ') { format!("({top})") } else { top };
                let bottom = if j == 1 { format!("({base})") } else { format!("({base})^{j}") };
                exp_terms.push(format!("{top}/{bottom}"));
            }
        }
        if !exp_terms.is_empty() {
            let mut inner = String::new();
            for (i, t) in exp_terms.iter().enumerate() {
                if i == 0 {
                    inner.push_str(t);
                } else if let Some(rest) = t.strip_prefix('-') {
                    inner.push_str(" - ");
                    inner.push_str(rest);
                } else {
                    inner.push_str(" + ");
                    inner.push_str(t);
                }
            }
            factors.push(format!("exp({inner})"));
        }
        if factors.is_empty() {
            "1".to_owned()
        } else {
            factors.join(" * ")
        }
    }

    pub fn to_report(&self) -> ClosedFormReport {
        ClosedFormReport {
            display: self.display(),
            splits: self.splits,
            q: poly_coefficients(&self.q),
            poles: self
                .poles
                .iter()
                .map(|p| PoleReport {
                    a: ExactRational::from(&p.a),
                    multiplicity: p.multiplicity,
                    b: p.coefficients.iter().map(ExactRational::from).collect(),
                })
                .collect(),
            chi: chi_from_closed_form(self).as_ref().map(ExactRational::from),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoleReport {
    pub a: ExactRational,
    pub multiplicity: usize,
    pub b: Vec<ExactRational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedFormReport {
    pub display: String,
    pub splits: bool,
    pub q: Vec<ExactRational>,
    pub poles: Vec<PoleReport>,
    pub chi: Option<ExactRational>,
}

/// Result of comparing `ζ_E` with `ζ_B^sheets`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZetaPowerReport {
    pub sheets: usize,
    pub order: usize,
    /// Orders `n ≥ 1` where `#N_n(E) ≠ sheets · #N_n(B)`.
    pub count_mismatches: Vec<usize>,
    /// Coefficient indices where the series disagree.
    pub series_mismatches: Vec<usize>,
    pub total_series: Vec<ExactRational>,
    pub base_power_series: Vec<ExactRational>,
}

impl ZetaPowerReport {
    pub fn passed(&self) -> bool {
        self.count_mismatches.is_empty() && self.series_mismatches.is_empty()
    }
}

/// Checks `ζ_E = ζ_B^sheets` coefficientwise through `z^order`.
pub fn verify_zeta_power(cert: &CoveringCertificate, order: usize) -> ZetaPowerReport {
    let (e, b) = (cert.functor().source(), cert.functor().target());
    let sheets = cert.sheets();
    let total_counts = nerve_counts(e, order, Variant::Degenerate);
    let base_counts = nerve_counts(b, order, Variant::Degenerate);
    let count_mismatches = (1..=order)
        .filter(|&n| total_counts[n] != &base_counts[n] * sheets)
        .collect();
    let total = zeta_series(e, order);
    let power = zeta_series(b, order).pow(sheets);
    let series_mismatches = (0..=order)
        .filter(|&n| total.coeffs()[n] != power.coeffs()[n])
        .collect();
    ZetaPowerReport {
        sheets,
        order,
        count_mismatches,
        series_mismatches,
        total_series: total.coeffs().iter().map(ExactRational::from).collect(),
        base_power_series: power.coeffs().iter().map(ExactRational::from).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{fan, fan_base, gamma, terminal, z2};
    use crate::poly::ratio;

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(Poly::from_ints(num), Poly::from_ints(den))
    }

    #[test]
    fn log_derivatives() {
        assert_eq!(log_derivative(&z2()), rf(&[2], &[1, -2]));
        assert_eq!(log_derivative(&gamma()), rf(&[4], &[1, -2]));
        assert_eq!(log_derivative(&terminal()), rf(&[1], &[1, -1]));
    }

    #[test]
    fn series_values() {
        let ints = |v: &[i64]| v.iter().map(|&x| rat(x)).collect::<Vec<_>>();
        assert_eq!(zeta_series(&z2(), 3).coeffs(), &ints(&[1, 2, 4, 8])[..]);
        assert_eq!(zeta_series(&gamma(), 2).coeffs(), &ints(&[1, 4, 12])[..]);
    }

    #[test]
    fn gamma_closed_form() {
        let f = zeta_closed_form(&gamma()).unwrap();
        assert_eq!(f.poles.len(), 1);
        assert_eq!(f.poles[0].a, rat(2));
        assert_eq!(f.poles[0].coefficients, vec![rat(2)]);
        assert!(f.q.is_zero());
        assert_eq!(f.display(), "(1 - 2z)^-2");
        assert_eq!(chi_from_closed_form(&f), Some(rat(1)));
    }

    #[test]
    fn fan_closed_form() {
        for n in 1..=4usize {
            let a = fan(n).unwrap().total;
            let f = zeta_closed_form(&a).unwrap();
            let two_n = rat(2 * n as i64);
            assert_eq!(f.poles.len(), 1);
            assert_eq!(f.poles[0].a, rat(1));
            assert_eq!(f.poles[0].multiplicity, 2);
            assert_eq!(f.poles[0].coefficients, vec![two_n.clone(), two_n]);
            assert!(f.q.is_zero());
            assert_eq!(f.expand(10), zeta_series(&a, 10));
        }
        let b = zeta_closed_form(&fan_base()).unwrap();
        assert_eq!(b.display(), "(1 - z)^-2 * exp(2z/(1 - z))");
        assert_eq!(chi_from_closed_form(&b), Some(rat(0)));
    }

    #[test]
    fn nonzero_q_forces_none() {
        let form = ZetaClosedForm {
            poles: vec![],
            q: Poly::from_ints(&[0, 1]),
            splits: true,
        };
        assert_eq!(chi_from_closed_form(&form), None);
        assert_eq!(form.display(), "exp(z)");
    }

    #[test]
    fn partial_fractions_of_a_triple_pole() {
        // L = 3/(1 - z) + 1/(1 - z)^2 + z/(1 - z)^3 + 5/(1 - 2z) + 1 + z
        let form = ZetaClosedForm {
            poles: vec![
                ZetaPole {
                    a: rat(1),
                    multiplicity: 3,
                    coefficients: vec![rat(3), rat(1), rat(1)],
                },
                ZetaPole {
                    a: rat(2),
                    multiplicity: 1,
                    coefficients: vec![ratio(5, 2)],
                },
            ],
            q: Poly::from_coeffs(vec![rat(0), rat(1), ratio(1, 2)]),
            splits: true,
        };
        let l = form.log_derivative();
        let again = closed_form_from_log_derivative(&l).unwrap();
        assert_eq!(again, form);
    }

    #[test]
    fn irreducible_denominator_is_refused() {
        // 1/(1 - z - z^2)
        let l = rf(&[1], &[1, -1, -1]);
        let rest = closed_form_from_log_derivative(&l).unwrap_err();
        assert_eq!(rest.degree(), Some(2));
    }
}
