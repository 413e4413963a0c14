//! Determinants over the truncated series ring.
//!
//! The ring has zero divisors modulo `x^(N+1)` and no field of fractions we
//! want to compute in, so only ring operations are allowed here.

use crate::error::{Error, Result};
use crate::registry::{Named, Registry};
use crate::series::TriSeries;

use super::system::SeriesMatrix;

pub const DEFAULT_DET_LIMIT: usize = 8;

pub trait DeterminantAlgorithm: Named + Send + Sync {
    fn determinant(&self, matrix: &SeriesMatrix) -> TriSeries;
}

pub type DeterminantRegistry = Registry<dyn DeterminantAlgorithm>;

impl Default for DeterminantRegistry {
    fn default() -> Self {
        let mut reg: Self = Registry::empty("determinant algorithm");
        reg.register(Box::new(LaplaceExpansion));
        reg.register(Box::new(BirdDeterminant));
        reg
    }
}

/// Cofactor expansion along successive rows, sharing minors by the set of
/// columns already consumed. `O(2^n · n)` products instead of `O(n!)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct LaplaceExpansion;

impl Named for LaplaceExpansion {
    fn name(&self) -> &'static str {
        "laplace"
    }

    fn description(&self) -> &'static str {
        "row-by-row cofactor expansion with memoised minors"
    }
}

impl DeterminantAlgorithm for LaplaceExpansion {
    fn determinant(&self, matrix: &SeriesMatrix) -> TriSeries {
        let n = matrix.dim();
        let trunc = matrix.trunc();
        if n == 0 {
            return TriSeries::one(trunc);
        }
        let full = (1usize << n) - 1;
        // minors[mask]: determinant of rows popcount(mask).. against the
        // columns not in mask.
        let mut minors: Vec<Option<TriSeries>> = vec![None; 1 << n];
        minors[full] = Some(TriSeries::one(trunc));
        let mut masks: Vec<usize> = (0..full).collect();
        masks.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
        for mask in masks {
            let row = mask.count_ones() as usize;
            let mut acc = TriSeries::zero(trunc);
            let mut free_before = 0;
            for col in 0..n {
                if mask >> col & 1 == 1 {
                    continue;
                }
                let entry = matrix.get(row, col);
                if !entry.is_zero() {
                    if let Some(minor) = &minors[mask | 1 << col] {
                        let term = entry * minor;
                        acc = if free_before % 2 == 0 {
                            acc + term
                        } else {
                            acc - term
                        };
                    }
                }
                free_before += 1;
            }
            minors[mask] = Some(acc);
        }
        minors[0].take().expect("root minor computed")
    }
}

/// Bird's division-free algorithm: iterate `X ↦ μ(X)·A` with `μ(X)` the
/// strictly upper part of `X` plus the negated trailing diagonal sums.
#[derive(Debug, Clone, Copy, Default)]
pub struct BirdDeterminant;

impl Named for BirdDeterminant {
    fn name(&self) -> &'static str {
        "bird"
    }

    fn description(&self) -> &'static str {
        "Bird's O(n^4) division-free iteration"
    }
}

impl DeterminantAlgorithm for BirdDeterminant {
    fn determinant(&self, matrix: &SeriesMatrix) -> TriSeries {
        let n = matrix.dim();
        let trunc = matrix.trunc();
        if n == 0 {
            return TriSeries::one(trunc);
        }
        let mut x = matrix.clone();
        for _ in 1..n {
            let mut mu = SeriesMatrix::zeros(n, trunc);
            let mut tail = TriSeries::zero(trunc);
            for i in (0..n).rev() {
                mu.set(i, i, -&tail);
                tail = &tail + x.get(i, i);
                for j in i + 1..n {
                    mu.set(i, j, x.get(i, j).clone());
                }
            }
            x = multiply(&mu, matrix);
        }
        let d = x.get(0, 0).clone();
        if n.is_multiple_of(2) {
            -d
        } else {
            d
        }
    }
}

fn multiply(lhs: &SeriesMatrix, rhs: &SeriesMatrix) -> SeriesMatrix {
    let n = lhs.dim();
    let mut out = SeriesMatrix::zeros(n, lhs.trunc().min(rhs.trunc()));
    for i in 0..n {
        for j in 0..n {
            let mut acc = TriSeries::zero(out.trunc());
            for k in 0..n {
                let (a, b) = (lhs.get(i, k), rhs.get(k, j));
                if !a.is_zero() && !b.is_zero() {
                    acc = acc + a * b;
                }
            }
            out.set(i, j, acc);
        }
    }
    out
}

/// Exact determinant by cofactor expansion, refusing matrices above `limit`.
pub fn det_division_free(matrix: &SeriesMatrix, limit: usize) -> Result<TriSeries> {
    if matrix.dim() > limit {
        return Err(Error::DeterminantLimit {
            dim: matrix.dim(),
            limit,
        });
    }
    Ok(LaplaceExpansion.determinant(matrix))
}
