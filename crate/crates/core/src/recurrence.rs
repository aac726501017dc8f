//! Minimal linear recurrences over the rationals (Berlekamp–Massey) and the
//! rational generating functions they determine.

use num::{BigRational, One, Zero};

use crate::poly::Poly;
use crate::ratfunc::RationalFunction;

/// Shortest recurrence `s_n + Σ_{i=1}^{ℓ} c_i s_{n-i} = 0` (for `ℓ ≤ n < len`)
/// satisfied by `s`. Returns the connection polynomial `1 + c_1 x + … ` and
/// the order `ℓ`.
pub fn berlekamp_massey(s: &[BigRational]) -> (Poly, usize) {
    let mut c = vec![BigRational::one()];
    let mut b = vec![BigRational::one()];
    let mut order = 0usize;
    let mut shift = 1usize;
    let mut last = BigRational::one();
    for n in 0..s.len() {
        let mut d = s[n].clone();
        for i in 1..=order.min(c.len() - 1) {
            d += &c[i] * &s[n - i];
        }
        if d.is_zero() {
            shift += 1;
            continue;
        }
        let factor = &d / &last;
        let mut next = c.clone();
        if next.len() < b.len() + shift {
            next.resize(b.len() + shift, BigRational::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            next[i + shift] -= &factor * bi;
        }
        if 2 * order <= n {
            b = std::mem::replace(&mut c, next);
            order = n + 1 - order;
            last = d;
            shift = 1;
        } else {
            c = next;
            shift += 1;
        }
    }
    (Poly::from_coeffs(c), order)
}

/// `P/C` where `C` is the connection polynomial of `s` and
/// `P = (S·C) mod x^ℓ`.
pub fn rational_from_recurrence(s: &[BigRational], connection: &Poly, order: usize) -> RationalFunction {
    let mut p = vec![BigRational::zero(); order];
    for (k, pk) in p.iter_mut().enumerate() {
        for i in 0..=k {
            if let Some(si) = s.get(k - i) {
                *pk += connection.coeff(i) * si;
            }
        }
    }
    RationalFunction::new(Poly::from_coeffs(p), connection.clone())
}
