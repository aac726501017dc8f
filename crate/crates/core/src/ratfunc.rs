//! Reduced rational functions over the rationals.

use std::fmt;

use num::{BigRational, One, Zero};

use crate::poly::Poly;

/// `numerator / denominator` with `gcd = 1` and a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    /// Reduces to canonical form. Panics if `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RationalFunction {
                num,
                den: Poly::one(),
            };
        }
        let g = Poly::gcd(&num, &den);
        let num = num.exact_div(&g).expect("gcd divides numerator");
        let den = den.exact_div(&g).expect("gcd divides denominator");
        let lc = den.leading().expect("nonzero").recip();
        RationalFunction {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// Value at `x`, or `None` if `x` is a pole of the reduced function.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    /// Taylor coefficients at 0 through `z^order`, or `None` when 0 is a pole.
    pub fn taylor(&self, order: usize) -> Option<Vec<BigRational>> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return None;
        }
        let d0_inv = d0.recip();
        let mut out: Vec<BigRational> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.num.coeff(n);
            for k in 1..=n.min(self.den.degree().unwrap_or(0)) {
                acc -= self.den.coeff(k) * &out[n - k];
            }
            out.push(acc * &d0_inv);
        }
        Some(out)
    }

    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    pub fn scale(&self, c: &BigRational) -> RationalFunction {
        RationalFunction::new(self.num.scale(c), self.den.clone())
    }

    /// Renders with the denominator normalized to constant term 1 when
    /// possible, e.g. `2/(1 - t)`.
    pub fn display(&self, var: &str) -> String {
        let d0 = self.den.coeff(0);
        let (num, den) = if d0.is_zero() {
            (self.num.clone(), self.den.clone())
        } else {
            let s = d0.recip();
            (self.num.scale(&s), self.den.scale(&s))
        };
        if den.degree() == Some(0) && den.coeff(0).is_one() {
            return num.display(var);
        }
        let wrap = |p: &Poly| {
            let s = p.display(var);
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(&num), wrap(&den))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        out.write_str(&self.display("t"))
    }
}
