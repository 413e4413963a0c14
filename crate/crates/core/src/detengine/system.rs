use std::fmt;
use std::ops::Range;

use crate::combinat::choose2;
use crate::series::TriSeries;

use super::PatternParams;

/// Dense square matrix of series sharing one truncation order.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesMatrix {
    dim: usize,
    trunc: u32,
    entries: Vec<TriSeries>,
}

impl SeriesMatrix {
    pub fn zeros(dim: usize, trunc: u32) -> Self {
        SeriesMatrix {
            dim,
            trunc,
            entries: vec![TriSeries::zero(trunc); dim * dim],
        }
    }

    pub fn identity(dim: usize, trunc: u32) -> Self {
        let mut out = Self::zeros(dim, trunc);
        for i in 0..dim {
            out.set(i, i, TriSeries::one(trunc));
        }
        out
    }

    /// Builds a matrix from rows; entries are truncated to the lowest order
    /// present. Panics if the rows do not form a square.
    pub fn from_rows(rows: Vec<Vec<TriSeries>>) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        let trunc = rows
            .iter()
            .flatten()
            .map(TriSeries::trunc)
            .min()
            .unwrap_or(0);
        SeriesMatrix {
            dim,
            trunc,
            entries: rows.into_iter().flatten().map(|e| e.truncate(trunc)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn get(&self, row: usize, col: usize) -> &TriSeries {
        &self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: TriSeries) {
        self.entries[row * self.dim + col] = value.truncate(self.trunc);
    }

    /// Copy with column `col` replaced by `column`.
    pub fn with_column(&self, col: usize, column: &[TriSeries]) -> Self {
        assert_eq!(column.len(), self.dim);
        let mut out = self.clone();
        for (row, v) in column.iter().enumerate() {
            out.set(row, col, v.clone());
        }
        out
    }

    /// The square block at `rows × cols`.
    pub fn submatrix(&self, rows: Range<usize>, cols: Range<usize>) -> Self {
        assert_eq!(rows.len(), cols.len(), "submatrix must be square");
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for r in rows {
            for c in cols.clone() {
                entries.push(self.get(r, c).clone());
            }
        }
        SeriesMatrix {
            dim,
            trunc: self.trunc,
            entries,
        }
    }

    /// Applies `f` to every entry.
    pub fn map(&self, f: impl Fn(&TriSeries) -> TriSeries) -> Self {
        SeriesMatrix {
            dim: self.dim,
            trunc: self.trunc,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

impl fmt::Display for SeriesMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in 0..self.dim {
            for col in 0..self.dim {
                writeln!(f, "[{row}][{col}] {}", self.get(row, col))?;
            }
        }
        Ok(())
    }
}

/// `z = -1/(1-x)`.
pub(crate) fn z_series(trunc: u32) -> TriSeries {
    -TriSeries::geometric(trunc)
}

/// The system `A·X = C` for `X = (F, F₁, F₁₂, …, F₁₂…ₘ)`.
///
/// Row 0 is `F - F₁/(1-x) = 1`. Row `j` (`1 <= j < m`) moves every term of
/// the recurrence for `F₁₂…ⱼ` to the left except the lone monomial
/// `x^T(j+1) y^j`. Row `m` closes the system with `F₁…ₘ = q x^m y F₁…ₘ₋₁`.
pub fn build_system(p: &PatternParams) -> (SeriesMatrix, Vec<TriSeries>) {
    let (m, n) = (p.m() as usize, p.trunc());
    let dim = m + 1;
    let z = z_series(n);
    let mut a = SeriesMatrix::zeros(dim, n);
    let mut c = vec![TriSeries::zero(n); dim];

    a.set(0, 0, TriSeries::one(n));
    a.set(0, 1, z.clone());
    c[0] = TriSeries::one(n);

    for j in 1..m {
        let tj = choose2(j as u32 + 1);
        for i in 1..j {
            let w = TriSeries::monomial(tj - choose2(i as u32), (j + 1 - i) as u32, 0, -1, n);
            a.set(j, i, w);
        }
        let diag = TriSeries::one(n) - TriSeries::monomial(tj - choose2(j as u32), 1, 0, 1, n);
        a.set(j, j, diag);
        a.set(j, j + 1, z.clone());
        c[j] = TriSeries::monomial(tj, j as u32, 0, 1, n);
    }

    a.set(m, m - 1, TriSeries::monomial(m as u32, 1, 1, -1, n));
    a.set(m, m, TriSeries::one(n));
    (a, c)
}

/// `A` with its first column replaced by `C`.
pub fn build_b(p: &PatternParams) -> SeriesMatrix {
    let (a, c) = build_system(p);
    a.with_column(0, &c)
}

/// The `m × m` matrix `N_m`: leading block of `B`, whose rows below the last
/// one are the same for every pattern length.
pub fn build_n(m: u32, trunc: u32) -> SeriesMatrix {
    let b = build_b(&PatternParams { m: m.max(1), trunc });
    b.submatrix(0..m as usize, 0..m as usize)
}

/// The `m × m` matrix `C_m`: `N_{m+1}` without its first row and column.
pub fn build_c(m: u32, trunc: u32) -> SeriesMatrix {
    let n = build_n(m + 1, trunc);
    n.submatrix(1..m as usize + 1, 1..m as usize + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    const N: u32 = 12;

    fn mono(a: u32, b: u32, s: u32, c: i64) -> TriSeries {
        TriSeries::monomial(a, b, s, c, N)
    }

    #[test]
    fn single_part_pattern() {
        let p = PatternParams::new(1, N).unwrap();
        let (a, c) = build_system(&p);
        let z = z_series(N);
        let expected = SeriesMatrix::from_rows(vec![
            vec![TriSeries::one(N), z.clone()],
            vec![mono(1, 1, 1, -1), TriSeries::one(N)],
        ]);
        assert_eq!(a, expected);
        assert_eq!(c, vec![TriSeries::one(N), TriSeries::zero(N)]);

        let b = build_b(&p);
        let expected_b = SeriesMatrix::from_rows(vec![
            vec![TriSeries::one(N), z],
            vec![TriSeries::zero(N), TriSeries::one(N)],
        ]);
        assert_eq!(b, expected_b);
    }

    #[test]
    fn pair_pattern_entries() {
        let p = PatternParams::new(2, N).unwrap();
        let (a, c) = build_system(&p);
        assert_eq!(a.dim(), 3);
        assert_eq!(a.get(1, 1), &(TriSeries::one(N) - mono(1, 1, 0, 1)));
        assert_eq!(a.get(2, 1), &mono(2, 1, 1, -1));
        assert_eq!(a.get(1, 2), &z_series(N));
        assert_eq!(c[1], mono(1, 1, 0, 1));
        assert!(c[2].is_zero());
    }

    #[test]
    fn triple_pattern_matches_hand_expansion() {
        // F₁₂ = x³y² + x³y²F₁ + x²yF₁₂ + F₁₂₃/(1-x)
        let p = PatternParams::new(3, N).unwrap();
        let (a, c) = build_system(&p);
        assert_eq!(a.get(2, 1), &mono(3, 2, 0, -1));
        assert_eq!(a.get(2, 2), &(TriSeries::one(N) - mono(2, 1, 0, 1)));
        assert_eq!(a.get(2, 3), &z_series(N));
        assert_eq!(c[2], mono(3, 2, 0, 1));
        assert_eq!(a.get(3, 2), &mono(3, 1, 1, -1));
        assert!(a.get(2, 0).is_zero());
        assert!(a.get(3, 1).is_zero());
    }

    #[test]
    fn n_and_c_blocks() {
        assert_eq!(build_n(0, N).dim(), 0);
        assert_eq!(build_c(0, N).dim(), 0);
        let n3 = build_n(3, N);
        assert_eq!(n3.get(0, 0), &TriSeries::one(N));
        assert_eq!(n3.get(2, 0), &mono(3, 2, 0, 1));
        assert_eq!(n3.get(2, 2), &(TriSeries::one(N) - mono(2, 1, 0, 1)));
        let c2 = build_c(2, N);
        assert_eq!(c2.get(0, 0), &(TriSeries::one(N) - mono(1, 1, 0, 1)));
        assert_eq!(c2.get(0, 1), &z_series(N));
        assert_eq!(c2.get(1, 0), &mono(3, 2, 0, -1));
        assert_eq!(c2.get(1, 1), &(TriSeries::one(N) - mono(2, 1, 0, 1)));
    }

    #[test]
    fn b_replaces_first_column() {
        for m in 1..=6 {
            let p = PatternParams::new(m, N).unwrap();
            let (a, c) = build_system(&p);
            let b = build_b(&p);
            assert!(b.get(m as usize, 0).is_zero());
            for row in 0..=m as usize {
                assert_eq!(b.get(row, 0), &c[row]);
                for col in 1..=m as usize {
                    assert_eq!(b.get(row, col), a.get(row, col));
                }
            }
            if m >= 2 {
                assert_eq!(b.get(1, 0), &mono(1, 1, 0, 1));
            }
        }
    }
}
