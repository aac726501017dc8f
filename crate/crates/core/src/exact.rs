//! Serializable views of exact values.
//!
//! Rationals are written as decimal-string numerator/denominator pairs so
//! that no precision is lost in JSON.

use num::{BigInt, BigRational, BigUint};
use serde::{Deserialize, Serialize};

use crate::poly::Poly;
use crate::ratfunc::RationalFunction;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactRational {
    pub num: String,
    pub den: String,
}

impl From<&BigRational> for ExactRational {
    fn from(q: &BigRational) -> Self {
        ExactRational {
            num: q.numer().to_string(),
            den: q.denom().to_string(),
        }
    }
}

impl ExactRational {
    pub fn to_rational(&self) -> Option<BigRational> {
        let num: BigInt = self.num.parse().ok()?;
        let den: BigInt = self.den.parse().ok()?;
        (den != BigInt::from(0)).then(|| BigRational::new(num, den))
    }
}

/// `p/q`, or just `p` for integers.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Serializes any `Display` value as a string.
pub fn serialize_display<T: std::fmt::Display, S: serde::Serializer>(value: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(value)
}

/// Big integers as decimal strings.
pub fn biguint_strings(values: &[BigUint]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

/// Coefficients in ascending degree.
pub fn poly_coefficients(p: &Poly) -> Vec<ExactRational> {
    p.coeffs().iter().map(ExactRational::from).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactRationalFunction {
    pub numerator: Vec<ExactRational>,
    pub denominator: Vec<ExactRational>,
    pub display: String,
}

impl ExactRationalFunction {
    pub fn new(f: &RationalFunction, var: &str) -> Self {
        ExactRationalFunction {
            numerator: poly_coefficients(f.numerator()),
            denominator: poly_coefficients(f.denominator()),
            display: f.display(var),
        }
    }
}
