//! Truncated formal power series.

use num::{BigRational, One, Zero};

use crate::poly::rat;

/// Coefficients `c_0..=c_N` of a power series known to order `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl PowerSeries {
    /// Pads or truncates to order `order`.
    pub fn new(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        PowerSeries { coeffs }
    }

    pub fn one(order: usize) -> Self {
        PowerSeries::new(vec![BigRational::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let order = self.order().min(other.order());
        let mut out = vec![BigRational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] += a * b;
            }
        }
        PowerSeries { coeffs: out }
    }

    pub fn pow(&self, k: usize) -> PowerSeries {
        let mut result = PowerSeries::one(self.order());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        result
    }

    /// `exp(g)` for `g` with zero constant term.
    ///
    /// Uses `n h_n = Σ_{k=1}^{n} k g_k h_{n-k}`, from `h' = g' h`.
    pub fn exp(&self) -> PowerSeries {
        assert!(self.coeffs[0].is_zero(), "exp needs a zero constant term");
        let weighted: Vec<BigRational> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, g)| g * rat(k as i64))
            .collect();
        PowerSeries::exp_from_weighted(&weighted)
    }

    /// `exp(Σ_{n≥1} w_n z^n / n)` given `w_1..` at indices `1..`.
    pub(crate) fn exp_from_weighted(weighted: &[BigRational]) -> PowerSeries {
        let order = weighted.len() - 1;
        let mut h = Vec::with_capacity(order + 1);
        h.push(BigRational::one());
        for n in 1..=order {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                if !weighted[k].is_zero() {
                    acc += &weighted[k] * &h[n - k];
                }
            }
            h.push(acc / rat(n as i64));
        }
        PowerSeries { coeffs: h }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratio;

    #[test]
    fn exp_of_log_geometric() {
        // -log(1 - z) = Σ z^n/n, so exp gives 1/(1 - z).
        let order = 6;
        let mut g = vec![BigRational::zero()];
        g.extend((1..=order as i64).map(|n| ratio(1, n)));
        let e = PowerSeries::new(g, order).exp();
        assert!(e.coeffs().iter().all(|c| c.is_one()));
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let s = PowerSeries::new(vec![rat(1), rat(2), rat(-1)], 5);
        let direct = s.mul(&s).mul(&s);
        assert_eq!(s.pow(3), direct);
        assert_eq!(s.pow(0), PowerSeries::one(5));
    }
}
