//! Nerve chain counts.
//!
//! `#N_n(C)` is the sum of all entries of `A^n` and `#N_n(C)_x` is the column
//! sum of `A^n` at `x`, where `A` is the adjacency matrix of hom-set sizes.
//! The non-degenerate counts use `A - E` instead. Counts are computed as the
//! row vector `1ᵀ A^n`, one exact multiplication per length.

use num::{BigUint, One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::category::{FiniteCategory, MorphismId, ObjectId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// All morphisms, identities included.
    Degenerate,
    /// Identities removed from chains.
    Nondegenerate,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum NerveError {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    pub variant: Variant,
    /// `entries[i][j]` counts (non-identity, for the non-degenerate variant)
    /// morphisms from object `i` to object `j`.
    pub entries: Vec<Vec<BigUint>>,
}

impl AdjacencyMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn identity(dim: usize, variant: Variant) -> Self {
        let entries = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { BigUint::one() } else { BigUint::zero() })
                    .collect()
            })
            .collect();
        AdjacencyMatrix { variant, entries }
    }

    pub fn mul(&self, rhs: &AdjacencyMatrix) -> AdjacencyMatrix {
        let n = self.dim();
        let mut entries = vec![vec![BigUint::zero(); n]; n];
        for (i, row) in self.entries.iter().enumerate() {
            for (k, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in rhs.entries[k].iter().enumerate() {
                    entries[i][j] += a * b;
                }
            }
        }
        AdjacencyMatrix {
            variant: self.variant,
            entries,
        }
    }

    pub fn pow(&self, n: usize) -> AdjacencyMatrix {
        (0..n).fold(AdjacencyMatrix::identity(self.dim(), self.variant), |acc, _| {
            acc.mul(self)
        })
    }

    pub fn total(&self) -> BigUint {
        self.entries.iter().flatten().sum()
    }

    pub fn column_sum(&self, j: usize) -> BigUint {
        self.entries.iter().map(|row| &row[j]).sum()
    }

    /// Row sums as a vector (`A · 1`).
    pub fn row_sums(&self) -> Vec<BigUint> {
        self.entries.iter().map(|row| row.iter().sum()).collect()
    }

    /// `v ↦ vᵀ A`.
    fn left_apply(&self, v: &[BigUint]) -> Vec<BigUint> {
        let n = self.dim();
        let mut out = vec![BigUint::zero(); n];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, a) in self.entries[i].iter().enumerate() {
                if !a.is_zero() {
                    out[j] += vi * a;
                }
            }
        }
        out
    }
}

pub fn adjacency_matrix(c: &FiniteCategory, variant: Variant) -> AdjacencyMatrix {
    let n = c.num_objects();
    let mut counts = vec![vec![0u64; n]; n];
    for f in c.morphism_ids() {
        if variant == Variant::Nondegenerate && c.is_identity(f) {
            continue;
        }
        counts[c.source(f).0][c.target(f).0] += 1;
    }
    AdjacencyMatrix {
        variant,
        entries: counts
            .into_iter()
            .map(|row| row.into_iter().map(BigUint::from).collect())
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NerveCount {
    pub n: usize,
    #[serde(serialize_with = "crate::exact::serialize_display")]
    pub count: BigUint,
    pub variant: Variant,
    pub target: Option<String>,
}

/// `#N_n(C)_x` for every object `x`, for every length `0..=max_n`.
///
/// `table[n][x]` is the column sum of `A^n` at `x`.
pub fn targeted_count_table(c: &FiniteCategory, max_n: usize, variant: Variant) -> Vec<Vec<BigUint>> {
    let a = adjacency_matrix(c, variant);
    let mut table = Vec::with_capacity(max_n + 1);
    let mut v = vec![BigUint::one(); c.num_objects()];
    for n in 0..=max_n {
        if n > 0 {
            v = a.left_apply(&v);
        }
        table.push(v.clone());
    }
    table
}

/// Totals `#N_n(C)` for `n = 0..=max_n`.
pub fn nerve_counts(c: &FiniteCategory, max_n: usize, variant: Variant) -> Vec<BigUint> {
    targeted_count_table(c, max_n, variant)
        .into_iter()
        .map(|row| row.into_iter().sum())
        .collect()
}

pub fn nerve_count(c: &FiniteCategory, n: usize, variant: Variant) -> NerveCount {
    let count = nerve_counts(c, n, variant).pop().expect("n + 1 entries");
    NerveCount {
        n,
        count,
        variant,
        target: None,
    }
}

pub fn nerve_count_targeted(
    c: &FiniteCategory,
    n: usize,
    object: &str,
    variant: Variant,
) -> Result<NerveCount, NerveError> {
    let x = c
        .object_id(object)
        .ok_or_else(|| NerveError::UnknownObject(object.to_owned()))?;
    let mut row = targeted_count_table(c, n, variant).pop().expect("n + 1 rows");
    Ok(NerveCount {
        n,
        count: std::mem::take(&mut row[x.0]),
        variant,
        target: Some(object.to_owned()),
    })
}

/// An explicit chain `x_0 → x_1 → … → x_n` as its morphisms. Length-zero
/// chains are bare objects.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Chain {
    pub start: ObjectId,
    pub morphisms: Vec<MorphismId>,
}

impl Chain {
    pub fn names(&self, c: &FiniteCategory) -> Vec<String> {
        if self.morphisms.is_empty() {
            vec![c.object_name(self.start).to_owned()]
        } else {
            self.morphisms.iter().map(|&f| c.name_of(f).to_owned()).collect()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NerveEnumeration {
    pub chains: Vec<Chain>,
    pub truncated: bool,
}

/// Lists chains of length `n` in lexicographic order of morphism indices,
/// stopping after `limit` chains.
pub fn enumerate_nerve(c: &FiniteCategory, n: usize, variant: Variant, limit: usize) -> NerveEnumeration {
    let limit = limit.max(1);
    let mut chains = Vec::new();
    if n == 0 {
        chains.extend(c.object_ids().take(limit.saturating_add(1)).map(|x| Chain {
            start: x,
            morphisms: Vec::new(),
        }));
    } else {
        let usable = |f: MorphismId| variant == Variant::Degenerate || !c.is_identity(f);
        let mut stack: Vec<MorphismId> = Vec::with_capacity(n);
        extend(c, n, &usable, &mut stack, &mut chains, limit.saturating_add(1), None);
    }
    let truncated = chains.len() > limit;
    chains.truncate(limit);
    NerveEnumeration { chains, truncated }
}

fn extend(
    c: &FiniteCategory,
    n: usize,
    usable: &dyn Fn(MorphismId) -> bool,
    stack: &mut Vec<MorphismId>,
    out: &mut Vec<Chain>,
    cap: usize,
    at: Option<ObjectId>,
) {
    if out.len() >= cap {
        return;
    }
    if stack.len() == n {
        out.push(Chain {
            start: c.source(stack[0]),
            morphisms: stack.clone(),
        });
        return;
    }
    let candidates: Box<dyn Iterator<Item = MorphismId>> = match at {
        None => Box::new(c.morphism_ids()),
        Some(x) => Box::new(c.outgoing(x).iter().copied()),
    };
    for f in candidates.filter(|&f| usable(f)) {
        stack.push(f);
        extend(c, n, usable, stack, out, cap, Some(c.target(f)));
        stack.pop();
        if out.len() >= cap {
            return;
        }
    }
}
