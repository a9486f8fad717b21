//! Dense exact-rational matrices: RREF, rank, nullspace, and linear solve.
//!
//! Every independence verdict in the crate reduces to a rank computation
//! here, so all elimination is done in exact arithmetic with no tolerance.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::rat::{format_rat, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: matrix has {rows} rows, vector has {len} entries")]
    DimensionMismatch { rows: usize, len: usize },
}

/// Row-major dense matrix over arbitrary-precision rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    /// Builds a matrix from rows; panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|r| r.len() == ncols),
            "ragged rows in RatMatrix::from_rows"
        );
        RatMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Convenience constructor from integer literals, for tests and fixtures.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| crate::rat::rat_int(n)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Returns the submatrix keeping only the listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                m[(i, jj)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Stacks `other` below `self`; panics on column mismatch.
    pub fn vstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        RatMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Concatenates `other` to the right of `self`; panics on row mismatch.
    pub fn hstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut m = RatMatrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    pub fn matmul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let term = a * &other[(k, j)];
                    out[(i, j)] += term;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                rows: self.cols,
                len: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Reduced row-echelon form via exact Gauss-Jordan elimination.
    ///
    /// The pivot in each column is the first row with a nonzero entry;
    /// the returned pivot column list is strictly increasing.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(src) = (pivot_row..m.rows).find(|&i| !m[(i, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, src);
            let inv = m[(pivot_row, col)].recip();
            for j in col..m.cols {
                let scaled = &m[(pivot_row, j)] * &inv;
                m[(pivot_row, j)] = scaled;
            }
            for i in 0..m.rows {
                if i == pivot_row || m[(i, col)].is_zero() {
                    continue;
                }
                let factor = m[(i, col)].clone();
                for j in col..m.cols {
                    let delta = &factor * &m[(pivot_row, j)];
                    m[(i, j)] -= delta;
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    /// Exact rank: the number of pivots of the RREF.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Exact basis of the right nullspace; `cols - rank` vectors.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let pivot_set: Vec<Option<usize>> = {
            let mut map = vec![None; self.cols];
            for (row, &col) in pivots.iter().enumerate() {
                map[col] = Some(row);
            }
            map
        };
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = -r[(row, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rat).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Result of an exact linear solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    /// A particular solution together with a nullspace basis of the
    /// coefficient matrix; the full solution set is the affine span.
    Solution {
        particular: Vec<Rat>,
        nullspace: Vec<Vec<Rat>>,
    },
    /// `rank([a|b]) > rank(a)`: the system has no solution.
    Inconsistent,
}

/// Solves `a x = b` exactly.
pub fn solve(a: &RatMatrix, b: &[Rat]) -> Result<SolveOutcome, LinalgError> {
    if b.len() != a.rows() {
        return Err(LinalgError::DimensionMismatch {
            rows: a.rows(),
            len: b.len(),
        });
    }
    let rhs = RatMatrix::from_rows(b.iter().map(|x| vec![x.clone()]).collect());
    let augmented = a.hstack(&rhs);
    let (r, pivots) = augmented.rref();
    if pivots.contains(&a.cols()) {
        return Ok(SolveOutcome::Inconsistent);
    }
    let mut particular = vec![Rat::zero(); a.cols()];
    for (row, &col) in pivots.iter().enumerate() {
        particular[col] = r[(row, a.cols())].clone();
    }
    Ok(SolveOutcome::Solution {
        particular,
        nullspace: a.nullspace(),
    })
}

/// True iff the rank of the whole matrix equals the sum of the part ranks.
pub fn rank_additive(whole: &RatMatrix, parts: &[&RatMatrix]) -> bool {
    whole.rank() == parts.iter().map(|p| p.rank()).sum::<usize>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};
    use num_traits::Zero;
    use proptest::prelude::*;

    /// Brute-force rank: largest square submatrix with nonzero determinant.
    /// Independent of the elimination path; only usable for small matrices.
    fn rank_oracle(m: &RatMatrix) -> usize {
        fn det(m: &RatMatrix, rows: &[usize], cols: &[usize]) -> Rat {
            if rows.is_empty() {
                return Rat::one();
            }
            let mut acc = Rat::zero();
            let mut sign = Rat::one();
            for (k, &c) in cols.iter().enumerate() {
                let entry = &m[(rows[0], c)];
                if !entry.is_zero() {
                    let sub_cols: Vec<usize> = cols
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != k)
                        .map(|(_, &c)| c)
                        .collect();
                    acc += &sign * entry * det(m, &rows[1..], &sub_cols);
                }
                sign = -sign;
            }
            acc
        }
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in 0..n {
                for mut rest in subsets_from(first + 1, n, k - 1) {
                    rest.insert(0, first);
                    out.push(rest);
                }
            }
            out
        }
        fn subsets_from(start: usize, n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in start..n {
                for mut rest in subsets_from(first + 1, n, k - 1) {
                    rest.insert(0, first);
                    out.push(rest);
                }
            }
            out
        }
        for size in (1..=m.rows().min(m.cols())).rev() {
            for rows in subsets(m.rows(), size) {
                for cols in subsets(m.cols(), size) {
                    if !det(m, &rows, &cols).is_zero() {
                        return size;
                    }
                }
            }
        }
        0
    }

    fn toy_t_hat() -> RatMatrix {
        RatMatrix::from_rows(vec![
            vec![rat_int(2), rat_int(0), rat(1, 3), rat_int(0)],
            vec![rat_int(0), rat_int(2), rat(2, 3), rat_int(1)],
            vec![rat_int(1), rat_int(1), rat_int(0), rat_int(0)],
            vec![rat_int(0), rat_int(0), rat_int(1), rat_int(1)],
        ])
    }

    #[test]
    fn rref_of_identity_is_identity() {
        let id = RatMatrix::identity(3);
        let (r, pivots) = id.rref();
        assert_eq!(r, id);
        assert_eq!(pivots, vec![0, 1, 2]);
    }

    #[test]
    fn rref_collapses_dependent_rows() {
        let m = RatMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        let (r, pivots) = m.rref();
        assert_eq!(r, RatMatrix::from_i64_rows(&[&[1, 2], &[0, 0]]));
        assert_eq!(pivots, vec![0]);
    }

    #[test]
    fn toy_t_hat_has_three_pivots() {
        let (_, pivots) = toy_t_hat().rref();
        assert_eq!(pivots.len(), 3);
        assert_eq!(toy_t_hat().rank(), 3);
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        assert_eq!(RatMatrix::zeros(3, 4).rank(), 0);
    }

    #[test]
    fn nullspace_of_identity_is_empty() {
        assert!(RatMatrix::identity(4).nullspace().is_empty());
    }

    #[test]
    fn nullspace_of_row_sums() {
        let m = RatMatrix::from_i64_rows(&[&[1, 1]]);
        let basis = m.nullspace();
        assert_eq!(basis.len(), 1);
        // (-1, 1) spans the same line as (1, -1)
        assert_eq!(basis[0], vec![rat_int(-1), rat_int(1)]);
    }

    #[test]
    fn toy_t_hat_nullspace_is_one_dimensional() {
        assert_eq!(toy_t_hat().nullspace().len(), 1);
    }

    #[test]
    fn solve_identity() {
        let id = RatMatrix::identity(2);
        let out = solve(&id, &[rat_int(1), rat_int(2)]).unwrap();
        assert_eq!(
            out,
            SolveOutcome::Solution {
                particular: vec![rat_int(1), rat_int(2)],
                nullspace: vec![],
            }
        );
    }

    #[test]
    fn solve_underdetermined() {
        let m = RatMatrix::from_i64_rows(&[&[1, 1]]);
        match solve(&m, &[rat_int(3)]).unwrap() {
            SolveOutcome::Solution {
                particular,
                nullspace,
            } => {
                assert_eq!(particular, vec![rat_int(3), rat_int(0)]);
                assert_eq!(nullspace.len(), 1);
            }
            other => panic!("expected solution, got {other:?}"),
        }
    }

    #[test]
    fn solve_detects_inconsistency() {
        let m = RatMatrix::from_i64_rows(&[&[1], &[1]]);
        assert_eq!(
            solve(&m, &[rat_int(0), rat_int(1)]).unwrap(),
            SolveOutcome::Inconsistent
        );
    }

    #[test]
    fn solve_rejects_dimension_mismatch() {
        let m = RatMatrix::identity(2);
        assert!(solve(&m, &[rat_int(1)]).is_err());
    }

    #[test]
    fn rank_additive_examples() {
        let whole = RatMatrix::identity(4);
        let left = whole.select_columns(&[0, 1]);
        let right = whole.select_columns(&[2, 3]);
        assert!(rank_additive(&whole, &[&left, &right]));
        assert!(rank_additive(&whole, &[&whole]));
        // Overlapping parts double-count rank.
        assert!(!rank_additive(&whole, &[&whole, &right]));
    }

    fn small_matrix() -> impl Strategy<Value = RatMatrix> {
        (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-4i64..=4, r * c).prop_map(move |vals| RatMatrix {
                rows: r,
                cols: c,
                data: vals.into_iter().map(rat_int).collect(),
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn rank_matches_transpose(m in small_matrix()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn rank_matches_brute_force_oracle(m in small_matrix()) {
            prop_assert_eq!(m.rank(), rank_oracle(&m));
        }

        #[test]
        fn nullspace_vectors_are_exact(m in small_matrix()) {
            let basis = m.nullspace();
            prop_assert_eq!(basis.len(), m.cols() - m.rank());
            for v in basis {
                let prod = m.mul_vec(&v).unwrap();
                prop_assert!(prod.iter().all(Rat::is_zero));
            }
        }

        #[test]
        fn solve_returns_exact_solutions(m in small_matrix(), seed in 0u64..1000) {
            // Build a consistent right-hand side from a random preimage.
            let x: Vec<Rat> = (0..m.cols())
                .map(|j| rat_int(((seed >> (j % 8)) % 5) as i64 - 2))
                .collect();
            let b = m.mul_vec(&x).unwrap();
            match solve(&m, &b).unwrap() {
                SolveOutcome::Solution { particular, .. } => {
                    let got = m.mul_vec(&particular).unwrap();
                    prop_assert_eq!(got, b);
                }
                SolveOutcome::Inconsistent => prop_assert!(false, "consistent system reported inconsistent"),
            }
        }
    }
}
