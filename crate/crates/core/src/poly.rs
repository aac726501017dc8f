//! Dense univariate polynomials over arbitrary-precision rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, BigUint, Integer, One, Signed, Zero};

/// Coefficients in ascending degree with no trailing zero. The zero
/// polynomial has no coefficients and no degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c · z^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.push(c);
        Poly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// `1 - a z`.
    pub fn linear_factor(a: &BigRational) -> Self {
        Poly::from_coeffs(vec![BigRational::one(), -a.clone()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn pow(&self, k: usize) -> Poly {
        (0..k).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// `self / divisor` when the division is exact.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat(k as i64))
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Poly {
        let mut coeffs = vec![BigRational::zero()];
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c / rat(k as i64 + 1)),
        );
        Poly::from_coeffs(coeffs)
    }

    /// `p(z + a)`.
    pub fn shift(&self, a: &BigRational) -> Poly {
        // Horner in the shifted variable.
        let step = Poly::from_coeffs(vec![a.clone(), BigRational::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| &(&acc * &step) + &Poly::constant(c.clone()))
    }

    /// `z^deg · p(1/z)` for `deg >= degree(p)`.
    pub fn reversed(&self, deg: usize) -> Poly {
        let mut coeffs = vec![BigRational::zero(); deg + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[deg - k] = c.clone();
        }
        Poly::from_coeffs(coeffs)
    }

    /// Integer coefficients of the primitive polynomial with the same roots
    /// (positive leading coefficient).
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        ints.into_iter().map(|c| c / &content * &sign).collect()
    }

    /// Distinct rational roots, ascending, by the rational root test on the
    /// primitive integer form.
    pub fn rational_roots(&self) -> Vec<BigRational> {
        let mut p = self.clone();
        let mut roots = Vec::new();
        if p.degree().unwrap_or(0) == 0 {
            return roots;
        }
        if p.coeff(0).is_zero() {
            roots.push(BigRational::zero());
            while p.coeff(0).is_zero() {
                p = Poly::from_coeffs(p.coeffs[1..].to_vec());
            }
        }
        if p.degree().unwrap_or(0) == 0 {
            return roots;
        }
        let ints = p.primitive_integer();
        let constant = ints[0].magnitude().clone();
        let lead = ints.last().unwrap().magnitude().clone();
        let numerators = divisors(&constant);
        let denominators = divisors(&lead);
        for num in &numerators {
            for den in &denominators {
                if num.gcd(den) != BigUint::one() {
                    continue;
                }
                for sign in [1, -1] {
                    let cand = BigRational::new(
                        BigInt::from(num.clone()) * sign,
                        BigInt::from(den.clone()),
                    );
                    if p.eval(&cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
        roots.sort();
        roots.dedup();
        roots
    }

    /// Newton interpolation through distinct points.
    pub fn interpolate(points: &[(BigRational, BigRational)]) -> Poly {
        let n = points.len();
        let xs: Vec<&BigRational> = points.iter().map(|(x, _)| x).collect();
        let mut table: Vec<BigRational> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                table[i] = (&table[i] - &table[i - 1]) / (xs[i] - xs[i - level]);
            }
        }
        let mut result = Poly::zero();
        for i in (0..n).rev() {
            let factor = Poly::from_coeffs(vec![-xs[i].clone(), BigRational::one()]);
            result = &(&result * &factor) + &Poly::constant(table[i].clone());
        }
        result
    }

    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_owned();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_owned(),
                _ => format!("{var}^{k}"),
            };
            if mag.is_one() && k > 0 {
                out.push_str(&mono);
            } else if mag.is_integer() {
                out.push_str(&format!("{mag}{mono}"));
            } else if k == 0 {
                out.push_str(&format!("{mag}"));
            } else {
                out.push_str(&format!("({mag}){mono}"));
            }
        }
        out
    }
}

/// Positive divisors by trial division.
fn divisors(n: &BigUint) -> Vec<BigUint> {
    if n.is_zero() {
        return vec![BigUint::one()];
    }
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    let mut rest = n.clone();
    let mut p = BigUint::from(2u32);
    while &p * &p <= rest {
        let mut e = 0;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            factors.push((p.clone(), e));
        }
        p += 1u32;
    }
    if !rest.is_one() {
        factors.push((rest, 1));
    }
    let mut divs = vec![BigUint::one()];
    for (prime, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut power = d.clone();
            for _ in 0..=e {
                next.push(power.clone());
                power *= &prime;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

impl fmt::Display for Poly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        out.write_str(&self.display("z"))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn canonical_form_strips_trailing_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(Poly::zero().degree(), None);
    }

    #[test]
    fn division_and_gcd() {
        // (1 - t^2) = (1 - t)(1 + t)
        let (q, r) = p(&[1, 0, -1]).div_rem(&p(&[1, 1]));
        assert_eq!(q, p(&[1, -1]));
        assert!(r.is_zero());
        let g = Poly::gcd(&p(&[2, 2]), &p(&[1, 0, -1]));
        assert_eq!(g, p(&[1, 1]));
    }

    #[test]
    fn calculus() {
        let f = p(&[3, 4, 6]);
        assert_eq!(f.derivative(), p(&[4, 12]));
        assert_eq!(f.antiderivative(), p(&[0, 3, 2, 2]));
        assert_eq!(f.antiderivative().derivative(), f);
    }

    #[test]
    fn shift_and_reverse() {
        // (z+1)^2 = z^2 + 2z + 1
        assert_eq!(p(&[0, 0, 1]).shift(&rat(1)), p(&[1, 2, 1]));
        assert_eq!(p(&[1, -2]).reversed(1), p(&[-2, 1]));
    }

    #[test]
    fn rational_roots_found() {
        // (2z - 1)(z + 3)(z - 2)^2
        let f = &(&p(&[-1, 2]) * &p(&[3, 1])) * &p(&[-2, 1]).pow(2);
        assert_eq!(f.rational_roots(), vec![rat(-3), ratio(1, 2), rat(2)]);
        assert!(p(&[-2, 0, 1]).rational_roots().is_empty());
        assert_eq!(p(&[0, 0, 1]).rational_roots(), vec![rat(0)]);
    }

    #[test]
    fn display_reads_naturally() {
        assert_eq!(p(&[1, -2]).display("z"), "1 - 2z");
        assert_eq!(p(&[0, 1, 0, -3]).display("t"), "t - 3t^3");
        assert_eq!(Poly::constant(ratio(-1, 2)).display("z"), "-1/2");
        assert_eq!(Poly::monomial(ratio(3, 2), 2).display("z"), "(3/2)z^2");
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-6i64..=6, 0..6).prop_map(|c| Poly::from_ints(&c))
    }

    proptest! {
        #[test]
        fn division_identity(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b);
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.degree() < b.degree() || r.is_zero());
        }

        #[test]
        fn gcd_divides_both(a in small_poly(), b in small_poly()) {
            let g = Poly::gcd(&a, &b);
            if !g.is_zero() {
                prop_assert!(a.exact_div(&g).is_some());
                prop_assert!(b.exact_div(&g).is_some());
            }
        }

        #[test]
        fn interpolation_recovers_polynomial(a in small_poly()) {
            let n = a.degree().map_or(1, |d| d + 1);
            let points: Vec<_> = (0..n as i64).map(|x| (rat(x), a.eval(&rat(x)))).collect();
            prop_assert_eq!(Poly::interpolate(&points), a);
        }
    }
}
