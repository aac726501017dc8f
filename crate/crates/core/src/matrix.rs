//! Square matrices of polynomials: determinant and adjugate.
//!
//! The determinant uses fraction-free (Bareiss) elimination in `Q[z]`, where
//! every division is exact. The adjugate is recovered by evaluating at
//! rational points where the matrix is invertible, forming
//! `adj = det · M^{-1}` there, and interpolating each entry.

use num::{BigRational, BigUint, One, Zero};

use crate::poly::{rat, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        PolyMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// `E - B z` for a non-negative integer matrix `B`.
    pub fn identity_minus(b: &[Vec<BigUint>]) -> Self {
        let n = b.len();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = if i == j { BigRational::one() } else { BigRational::zero() };
                        let slope = -BigRational::from_integer(b[i][j].clone().into());
                        Poly::from_coeffs(vec![c, slope])
                    })
                    .collect()
            })
            .collect();
        PolyMatrix::from_rows(rows)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.n + j]
    }

    fn max_entry_degree(&self) -> usize {
        self.entries.iter().filter_map(Poly::degree).max().unwrap_or(0)
    }

    pub fn eval(&self, x: &BigRational) -> Vec<Vec<BigRational>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).eval(x)).collect())
            .collect()
    }

    pub fn determinant(&self) -> Poly {
        let n = self.n;
        if n == 0 {
            return Poly::one();
        }
        let mut m: Vec<Vec<Poly>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut negate = false;
        let mut prev = Poly::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        negate = !negate;
                    }
                    None => return Poly::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
                }
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        if negate {
            -&det
        } else {
            det
        }
    }

    /// The transpose of the cofactor matrix, `adj(M) M = det(M) E`.
    pub fn adjugate(&self) -> PolyMatrix {
        let n = self.n;
        if n == 1 {
            return PolyMatrix::from_rows(vec![vec![Poly::one()]]);
        }
        let det = self.determinant();
        if det.is_zero() {
            return self.adjugate_by_cofactors();
        }
        let needed = (n - 1) * self.max_entry_degree() + 1;
        let mut samples: Vec<(BigRational, Vec<Vec<BigRational>>)> = Vec::with_capacity(needed);
        let mut x = 0i64;
        while samples.len() < needed {
            let point = rat(x);
            x += 1;
            let d = det.eval(&point);
            if d.is_zero() {
                continue;
            }
            let inverse = invert(self.eval(&point)).expect("nonzero determinant");
            let adj = inverse
                .into_iter()
                .map(|row| row.into_iter().map(|v| v * &d).collect())
                .collect();
            samples.push((point, adj));
        }
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let pts: Vec<_> = samples
                            .iter()
                            .map(|(x, a)| (x.clone(), a[i][j].clone()))
                            .collect();
                        Poly::interpolate(&pts)
                    })
                    .collect()
            })
            .collect();
        PolyMatrix::from_rows(rows)
    }

    /// Reference adjugate by explicit cofactor expansion: `n²` minors, each
    /// through [`PolyMatrix::determinant`].
    pub fn adjugate_by_cofactors(&self) -> PolyMatrix {
        let n = self.n;
        if n == 1 {
            return PolyMatrix::from_rows(vec![vec![Poly::one()]]);
        }
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        // adj[i][j] = (-1)^{i+j} det(M without row j, column i)
                        let minor = self.minor(j, i).determinant();
                        if (i + j) % 2 == 1 {
                            -&minor
                        } else {
                            minor
                        }
                    })
                    .collect()
            })
            .collect();
        PolyMatrix::from_rows(rows)
    }

    fn minor(&self, row: usize, col: usize) -> PolyMatrix {
        let rows = (0..self.n)
            .filter(|&i| i != row)
            .map(|i| {
                (0..self.n)
                    .filter(|&j| j != col)
                    .map(|j| self.get(i, j).clone())
                    .collect()
            })
            .collect();
        PolyMatrix::from_rows(rows)
    }

    /// Sum of all entries.
    pub fn entry_sum(&self) -> Poly {
        self.entries.iter().fold(Poly::zero(), |acc, p| &acc + p)
    }

    /// `1ᵀ M v`.
    pub fn weighted_entry_sum(&self, v: &[BigRational]) -> Poly {
        let mut acc = Poly::zero();
        for i in 0..self.n {
            for (j, w) in v.iter().enumerate() {
                if !w.is_zero() {
                    acc = &acc + &self.get(i, j).scale(w);
                }
            }
        }
        acc
    }
}

/// Gauss–Jordan inverse over the rationals; `None` if singular.
pub fn invert(mut m: Vec<Vec<BigRational>>) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let p = m[col][col].recip();
        for j in 0..n {
            m[col][j] *= &p;
            inv[col][j] *= &p;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for j in 0..n {
                let a = &m[col][j] * &factor;
                m[r][j] -= a;
                let b = &inv[col][j] * &factor;
                inv[r][j] -= b;
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn ints(rows: &[&[u64]]) -> Vec<Vec<BigUint>> {
        rows.iter().map(|r| r.iter().map(|&v| BigUint::from(v)).collect()).collect()
    }

    #[test]
    fn pencil_of_all_ones() {
        // E - J z for J the 2x2 all-ones matrix: det = 1 - 2z.
        let m = PolyMatrix::identity_minus(&ints(&[&[1, 1], &[1, 1]]));
        assert_eq!(m.determinant(), p(&[1, -2]));
        let adj = m.adjugate();
        assert_eq!(adj.get(0, 0), &p(&[1, -1]));
        assert_eq!(adj.get(0, 1), &p(&[0, 1]));
        assert_eq!(adj.entry_sum(), p(&[2]));
    }

    #[test]
    fn singular_and_pivoting() {
        let zero_first = PolyMatrix::from_rows(vec![vec![p(&[]), p(&[1])], vec![p(&[1]), p(&[0, 1])]]);
        assert_eq!(zero_first.determinant(), p(&[-1]));
        let singular = PolyMatrix::from_rows(vec![vec![p(&[1, 1]), p(&[1, 1])], vec![p(&[2]), p(&[2])]]);
        assert!(singular.determinant().is_zero());
        assert_eq!(singular.adjugate(), singular.adjugate_by_cofactors());
    }

    #[test]
    fn one_by_one_adjugate_is_one() {
        let m = PolyMatrix::identity_minus(&ints(&[&[0]]));
        assert_eq!(m.adjugate().get(0, 0), &Poly::one());
    }

    fn small_int_matrix() -> impl Strategy<Value = Vec<Vec<BigUint>>> {
        (1usize..=4).prop_flat_map(|n| {
            prop::collection::vec(prop::collection::vec(0u64..3, n), n)
                .prop_map(|rows| rows.into_iter().map(|r| r.into_iter().map(BigUint::from).collect()).collect())
        })
    }

    proptest! {
        #[test]
        fn interpolated_adjugate_matches_cofactors(b in small_int_matrix()) {
            let m = PolyMatrix::identity_minus(&b);
            prop_assert_eq!(m.adjugate(), m.adjugate_by_cofactors());
        }

        #[test]
        fn adjugate_times_matrix_is_det_identity(b in small_int_matrix()) {
            let m = PolyMatrix::identity_minus(&b);
            let adj = m.adjugate();
            let det = m.determinant();
            let n = m.dim();
            for i in 0..n {
                for j in 0..n {
                    let mut acc = Poly::zero();
                    for k in 0..n {
                        acc = &acc + &(adj.get(i, k) * m.get(k, j));
                    }
                    let expected = if i == j { det.clone() } else { Poly::zero() };
                    prop_assert_eq!(acc, expected);
                }
            }
        }
    }
}
