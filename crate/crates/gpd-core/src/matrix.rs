//! Dense matrices over a [`Scalar`] backend with exact elimination routines.

use crate::scalar::Scalar;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_cols(rows: usize, cols: Vec<Vec<S>>) -> Self {
        let c = cols.len();
        assert!(cols.iter().all(|col| col.len() == rows), "ragged columns");
        let mut m = Matrix::zeros(rows, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    pub fn col(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<S> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix<S> {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out: Matrix<S> = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for j in 0..self.cols {
                    acc = acc.add(&self.get(i, j).mul(&v[j]));
                }
                acc
            })
            .collect()
    }

    pub fn add_matrix(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a = a.add(b);
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.rows, other.rows);
        let mut out = Matrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Matrix<S> {
        let mut out = Matrix::zeros(row_idx.len(), col_idx.len());
        for (i, &r) in row_idx.iter().enumerate() {
            for (j, &c) in col_idx.iter().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    /// In-place reduced row echelon form; returns the pivot column indices.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row >= self.rows {
                break;
            }
            // Pick the candidate with the largest magnitude; with exact
            // arithmetic any nonzero entry works, with floats this is
            // partial pivoting.
            let mut best: Option<usize> = None;
            for r in pivot_row..self.rows {
                if !self.get(r, col).is_zero() {
                    match best {
                        None => best = Some(r),
                        Some(b) => {
                            if self.get(r, col).abs_gt(self.get(b, col)) {
                                best = Some(r);
                            }
                        }
                    }
                }
            }
            let Some(r) = best else { continue };
            self.swap_rows(pivot_row, r);
            let inv = S::one().div(self.get(pivot_row, col));
            for j in col..self.cols {
                let v = self.get(pivot_row, j).mul(&inv);
                self.set(pivot_row, j, v);
            }
            for r2 in 0..self.rows {
                if r2 == pivot_row || self.get(r2, col).is_zero() {
                    continue;
                }
                let factor = self.get(r2, col).clone();
                for j in col..self.cols {
                    let v = self.get(r2, j).sub(&factor.mul(self.get(pivot_row, j)));
                    self.set(r2, j, v);
                }
                self.set(r2, col, S::zero());
            }
            pivots.push(col);
            pivot_row += 1;
        }
        // Clear sub-tolerance residue so canonical forms compare exactly.
        for v in self.data.iter_mut() {
            if v.is_zero() && *v != S::zero() {
                *v = S::zero();
            }
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
        m.rref().len()
    }

    /// Basis of the null space, one column per free variable, in canonical
    /// reduced column echelon form.
    pub fn kernel(&self) -> Matrix<S> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let mut basis_cols: Vec<Vec<S>> = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free] {
                continue;
            }
            let mut x = vec![S::zero(); self.cols];
            x[free] = S::one();
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = m.get(r, free).neg();
            }
            basis_cols.push(x);
        }
        let raw = Matrix::from_cols(self.cols, basis_cols);
        raw.column_echelon()
    }

    /// Canonical reduced column echelon form of the column span: pivots are 1,
    /// each pivot row is zero in the other columns, and zero columns are
    /// dropped. Two matrices have equal column spans iff these forms agree
    /// entry-wise.
    pub fn column_echelon(&self) -> Matrix<S> {
        let mut t = self.transpose();
        t.rref();
        let mut rows: Vec<Vec<S>> = Vec::new();
        for i in 0..t.rows() {
            let row = t.row(i);
            if row.iter().any(|v| !v.is_zero()) {
                rows.push(row);
            }
        }
        if rows.is_empty() {
            return Matrix::zeros(self.rows, 0);
        }
        Matrix::from_rows(rows).transpose()
    }

    /// Solves `self * x = rhs`; returns None when inconsistent.
    pub fn solve(&self, rhs: &[S]) -> Option<Vec<S>> {
        assert_eq!(self.rows, rhs.len());
        let rhs_m = Matrix::from_cols(self.rows, vec![rhs.to_vec()]);
        let mut aug = self.hstack(&rhs_m);
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![S::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix<S>> {
        assert_eq!(self.rows, self.cols);
        let mut aug = self.hstack(&Matrix::identity(self.rows));
        let pivots = aug.rref();
        if pivots.len() != self.rows {
            return None;
        }
        let idx: Vec<usize> = (self.cols..2 * self.cols).collect();
        let all_rows: Vec<usize> = (0..self.rows).collect();
        Some(aug.submatrix(&all_rows, &idx))
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if !self.get(i, j).eq_scalar(self.get(j, i)) {
                    return false;
                }
            }
        }
        true
    }

    /// Sylvester criterion; assumes symmetry was checked by the caller.
    pub fn is_positive_definite(&self) -> bool {
        // Gaussian elimination without row swaps: all pivots must stay positive.
        let mut m = self.clone();
        for k in 0..m.rows {
            let piv = m.get(k, k).clone();
            if piv.is_zero() || piv.cmp_val(&S::zero()) != std::cmp::Ordering::Greater {
                return false;
            }
            for i in (k + 1)..m.rows {
                let factor = m.get(i, k).div(&piv);
                for j in k..m.cols {
                    let v = m.get(i, j).sub(&factor.mul(m.get(k, j)));
                    m.set(i, j, v);
                }
            }
        }
        true
    }
}
