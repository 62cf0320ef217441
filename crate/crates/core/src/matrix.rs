//! Dense matrices over [`Rat`] with exact Gaussian elimination.
//!
//! Result contracts are basis-level: `kernel_basis` and `image_basis`
//! return *some* basis of the relevant space, `solve` returns *some*
//! solution. No canonical forms are promised.

use crate::error::{Error, Result};
use crate::rat::Rat;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>, // row-major
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Parses a row-major array of integers, mostly for tests.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rat::from_int(x)).collect())
                .collect(),
        )
    }

    /// Column vector from a slice.
    pub fn col_vec(entries: &[Rat]) -> Self {
        Matrix {
            rows: entries.len(),
            cols: 1,
            data: entries.to_vec(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self[(i, j)].is_one()
                    } else {
                        self[(i, j)].is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn scale(&self, c: &Rat) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * c)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack col mismatch");
        Matrix::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self[(i, j)].clone()
            } else {
                other[(i - self.rows, j)].clone()
            }
        })
    }

    /// Concatenates the columns of every matrix in `mats` (all with `rows` rows).
    pub fn hstack_all(rows: usize, mats: &[&Matrix]) -> Matrix {
        let total: usize = mats.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(rows, total);
        let mut off = 0;
        for m in mats {
            assert_eq!(m.rows, rows, "hstack row mismatch");
            for i in 0..rows {
                for j in 0..m.cols {
                    out[(i, off + j)] = m[(i, j)].clone();
                }
            }
            off += m.cols;
        }
        out
    }

    pub fn block_diag(blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| {
            self[(rows.start + i, cols.start + j)].clone()
        })
    }

    /// Row-reduces in place; returns pivot columns (one per pivot row).
    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            // Prefer a ±1 pivot to keep entries small.
            let mut pick = None;
            for r in row..self.rows {
                if !self[(r, col)].is_zero() {
                    if self[(r, col)].abs().is_one() {
                        pick = Some(r);
                        break;
                    }
                    if pick.is_none() {
                        pick = Some(r);
                    }
                }
            }
            let Some(p) = pick else { continue };
            self.swap_rows(row, p);
            let inv = self[(row, col)].inv();
            for j in col..self.cols {
                let v = &self[(row, j)] * &inv;
                self[(row, j)] = v;
            }
            for r in 0..self.rows {
                if r != row && !self[(r, col)].is_zero() {
                    let factor = self[(r, col)].clone();
                    for j in col..self.cols {
                        let v = &self[(r, j)] - &(&factor * &self[(row, j)]);
                        self[(r, j)] = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Basis of `{v : self · v = 0}` as column vectors.
    /// The list has `cols − rank` entries.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let mut basis = Vec::new();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![Rat::zero(); self.cols];
            vec[free] = Rat::one();
            for (col, p) in pivot_set.iter().enumerate() {
                if let Some(r) = p {
                    vec[col] = -&m[(*r, free)];
                }
            }
            basis.push(vec);
        }
        basis
    }

    /// Kernel basis packed as the columns of a matrix (`cols × nullity`).
    pub fn kernel_matrix(&self) -> Matrix {
        let basis = self.kernel_basis();
        let n = basis.len();
        Matrix::from_fn(self.cols, n, |i, j| basis[j][i].clone())
    }

    /// Basis of the column space: the pivot columns of the original matrix.
    pub fn image_basis(&self) -> Vec<Vec<Rat>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        pivots.into_iter().map(|c| self.column(c)).collect()
    }

    /// Image basis packed as the columns of a matrix (`rows × rank`).
    pub fn image_matrix(&self) -> Matrix {
        let basis = self.image_basis();
        let n = basis.len();
        Matrix::from_fn(self.rows, n, |i, j| basis[j][i].clone())
    }

    /// Some `x` with `self · x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Rat]) -> Result<Option<Vec<Rat>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: matrix has {} rows, vector has {}",
                self.rows,
                b.len()
            )));
        }
        let rhs = Matrix::col_vec(b);
        Ok(self.solve_matrix(&rhs).map(|m| m.column(0)))
    }

    /// Solves `self · X = B` for all columns of `B` at once.
    /// Returns `None` when any column is inconsistent.
    pub fn solve_matrix(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows, "solve_matrix row mismatch");
        let mut aug = self.hstack(b);
        let pivots = aug.rref_in_place();
        // Any pivot landing in the augmented block means inconsistency.
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, b.cols);
        for (r, &c) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(c, j)] = aug[(r, self.cols + j)].clone();
            }
        }
        Some(x)
    }

    /// Left inverse action: solves `X · self = B`, i.e. the transposed system.
    pub fn solve_left(&self, b: &Matrix) -> Option<Matrix> {
        self.transpose()
            .solve_matrix(&b.transpose())
            .map(|x| x.transpose())
    }

    pub fn trace(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "trace of non-square matrix");
        let mut t = Rat::zero();
        for i in 0..self.rows {
            t += &self[(i, i)];
        }
        t
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let inv = self.solve_matrix(&Matrix::identity(self.rows))?;
        (&(self * &inv) == &Matrix::identity(self.rows)).then_some(inv)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let v = &out[(i, j)] + &(a * b);
                        out[(i, j)] = v;
                    }
                }
            }
        }
        out
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &rhs[(i, j)])
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &rhs[(i, j)])
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| -&self[(i, j)])
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Multiplies a matrix by a column vector.
pub fn mat_vec(m: &Matrix, v: &[Rat]) -> Vec<Rat> {
    assert_eq!(m.cols(), v.len(), "mat_vec shape mismatch");
    (0..m.rows())
        .map(|i| {
            let mut s = Rat::zero();
            for j in 0..m.cols() {
                if !m[(i, j)].is_zero() && !v[j].is_zero() {
                    s += &(&m[(i, j)] * &v[j]);
                }
            }
            s
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn kernel_of_injective_is_empty() {
        assert!(Matrix::identity(2).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_zero_map_is_standard_basis() {
        let k = Matrix::zeros(2, 3).kernel_basis();
        assert_eq!(k.len(), 3);
        for (i, v) in k.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                assert_eq!(x.is_zero(), i != j);
            }
        }
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        // [[1,2],[2,4]] has kernel spanned by (2,-1): frozen from row
        // reduction by hand: x + 2y = 0.
        let m = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        let v = &k[0];
        // proportional to (2, -1)
        assert!((&v[0] * &Rat::from_int(-1)) == (&v[1] * &Rat::from_int(2)));
        assert!(!v[0].is_zero());
    }

    #[test]
    fn image_bases() {
        assert!(Matrix::zeros(3, 2).image_basis().is_empty());
        assert_eq!(Matrix::identity(3).image_basis().len(), 3);
        let m = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        let im = m.image_basis();
        assert_eq!(im.len(), 1);
        // proportional to (1,2)
        assert!((&im[0][1] * &Rat::from_int(1)) == (&im[0][0] * &Rat::from_int(2)));
    }

    #[test]
    fn solve_examples() {
        let id = Matrix::identity(2);
        let b = vec![Rat::from_int(5), Rat::from_int(-1)];
        assert_eq!(id.solve(&b).unwrap().unwrap(), b);

        let zero = Matrix::zeros(2, 2);
        assert!(zero.solve(&b).unwrap().is_none());

        // [[1,1],[0,1]] x = (3,1) has x = (2,1): frozen back-substitution.
        let m = Matrix::from_i64(&[&[1, 1], &[0, 1]]);
        let x = m
            .solve(&[Rat::from_int(3), Rat::from_int(1)])
            .unwrap()
            .unwrap();
        assert_eq!(x, vec![Rat::from_int(2), Rat::from_int(1)]);

        let bad = m.solve(&[Rat::from_int(1)]);
        assert!(bad.is_err());
    }

    fn arb_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-6i64..6, r * c).prop_map(move |vals| Matrix {
                rows: r,
                cols: c,
                data: vals.into_iter().map(Rat::from_int).collect(),
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity_and_kernel_exactness(m in arb_matrix()) {
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.len(), m.cols());
            for v in &k {
                let mv = mat_vec(&m, v);
                prop_assert!(mv.iter().all(Rat::is_zero));
            }
        }

        #[test]
        fn solve_roundtrip(m in arb_matrix(), seed in proptest::collection::vec(-4i64..4, 0..8)) {
            // Build a guaranteed-consistent rhs b = m * x0.
            let x0: Vec<Rat> = (0..m.cols())
                .map(|j| Rat::from_int(*seed.get(j).unwrap_or(&1)))
                .collect();
            let b = mat_vec(&m, &x0);
            let x = m.solve(&b).unwrap().expect("consistent system must solve");
            prop_assert_eq!(mat_vec(&m, &x), b);
        }
    }
}
