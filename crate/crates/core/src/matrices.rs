//! Dense matrices over Λ: block assembly, determinants and minor gcds.

use itertools::Itertools;
use thiserror::Error;

use crate::coeff::CoeffDomain;
use crate::laurent::{LaurentPoly, LaurentRing};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix is {rows}×{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("minor size {k} out of range for a {rows}×{cols} matrix")]
    ExtentOutOfRange { k: usize, rows: usize, cols: usize },
    #[error("determinant {0} is not a unit")]
    NotInvertible(String),
}

/// Row-major matrix with entries in Λ.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaMatrix<R: CoeffDomain> {
    ring: LaurentRing<R>,
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly<R>>,
}

impl<R: CoeffDomain> LambdaMatrix<R> {
    pub fn zeros(ring: &LaurentRing<R>, rows: usize, cols: usize) -> Self {
        LambdaMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &LaurentRing<R>, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_rows(ring: &LaurentRing<R>, rows: Vec<Vec<LaurentPoly<R>>>) -> Result<Self, MatrixError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(MatrixError::DimensionMismatch("ragged rows".into()));
        }
        let entries: Vec<_> = rows.into_iter().flatten().collect();
        if entries.iter().any(|e| e.ring() != ring) {
            return Err(MatrixError::DimensionMismatch("entry from another ring".into()));
        }
        Ok(LambdaMatrix {
            ring: ring.clone(),
            rows: nrows,
            cols: ncols,
            entries,
        })
    }

    /// Integer matrix embedded in Λ.
    pub fn from_ints(ring: &LaurentRing<R>, rows: &[Vec<i64>]) -> Result<Self, MatrixError> {
        Self::from_rows(
            ring,
            rows.iter()
                .map(|r| r.iter().map(|&c| ring.from_i64(c)).collect())
                .collect(),
        )
    }

    /// Assembles a block matrix, ignoring the inner block structure.
    /// Every block must be `block_rows × block_cols`.
    pub fn from_blocks(
        ring: &LaurentRing<R>,
        blocks: &[Vec<LambdaMatrix<R>>],
        block_rows: usize,
        block_cols: usize,
    ) -> Result<Self, MatrixError> {
        let br = blocks.len();
        let bc = blocks.first().map_or(0, Vec::len);
        let mut out = Self::zeros(ring, br * block_rows, bc * block_cols);
        for (i, row) in blocks.iter().enumerate() {
            if row.len() != bc {
                return Err(MatrixError::DimensionMismatch("ragged block rows".into()));
            }
            for (j, b) in row.iter().enumerate() {
                if b.rows != block_rows || b.cols != block_cols {
                    return Err(MatrixError::DimensionMismatch(format!(
                        "block ({i},{j}) is {}×{}",
                        b.rows, b.cols
                    )));
                }
                for r in 0..block_rows {
                    for c in 0..block_cols {
                        out.set(i * block_rows + r, j * block_cols + c, b.get(r, c).clone());
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn ring(&self) -> &LaurentRing<R> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly<R> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: LaurentPoly<R>) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[LaurentPoly<R>] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[LaurentPoly<R>] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch(format!(
                "{}×{} times {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(&self.ring, self.rows, other.cols);
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
                    let idx = i * out.cols + j;
                    out.entries[idx] = &out.entries[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&LaurentPoly<R>, &LaurentPoly<R>) -> LaurentPoly<R>,
    ) -> Result<Self, MatrixError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(MatrixError::DimensionMismatch("shapes differ".into()));
        }
        Ok(LambdaMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, MatrixError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MatrixError> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &LaurentPoly<R>) -> Self {
        LambdaMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(&self.ring, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    /// Rows reordered so that row `i` of the result is row `order[i]`.
    pub fn permute_rows(&self, order: &[usize]) -> Self {
        let cols: Vec<usize> = (0..self.cols).collect();
        self.submatrix(order, &cols)
    }

    fn require_square(&self) -> Result<(), MatrixError> {
        if self.rows == self.cols {
            Ok(())
        } else {
            Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Exact determinant: cofactor expansion up to extent 4, fraction-free
    /// elimination above.
    pub fn determinant(&self) -> Result<LaurentPoly<R>, MatrixError> {
        self.require_square()?;
        if self.rows <= 4 {
            self.determinant_cofactor()
        } else {
            self.determinant_bareiss()
        }
    }

    /// Bareiss fraction-free elimination. Every division is exact in Λ.
    pub fn determinant_bareiss(&self) -> Result<LaurentPoly<R>, MatrixError> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(self.ring.one());
        }
        let mut a: Vec<Vec<LaurentPoly<R>>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut negate = false;
        let mut prev = self.ring.one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return Ok(self.ring.zero());
                };
                a.swap(k, p);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num
                        .exact_div(&prev)
                        .expect("Bareiss quotient is exact");
                }
                a[i][k] = self.ring.zero();
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if negate { -det } else { det })
    }

    /// Laplace expansion along the first row.
    pub fn determinant_cofactor(&self) -> Result<LaurentPoly<R>, MatrixError> {
        self.require_square()?;
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(self.laplace(&idx, &idx))
    }

    fn laplace(&self, rows: &[usize], cols: &[usize]) -> LaurentPoly<R> {
        match rows.len() {
            0 => return self.ring.one(),
            1 => return self.get(rows[0], cols[0]).clone(),
            _ => {}
        }
        let mut acc = self.ring.zero();
        for (j, &c) in cols.iter().enumerate() {
            let e = self.get(rows[0], c);
            if e.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = e * &self.laplace(&rows[1..], &rest);
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    /// Transposed cofactor matrix, `adj(M)·M = det(M)·I`.
    pub fn adjugate(&self) -> Result<Self, MatrixError> {
        self.require_square()?;
        let n = self.rows;
        let mut out = Self::zeros(&self.ring, n, n);
        if n == 1 {
            out.set(0, 0, self.ring.one());
            return Ok(out);
        }
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let minor = self.submatrix(&rows, &cols).determinant()?;
                out.set(i, j, if (i + j) % 2 == 0 { minor } else { -minor });
            }
        }
        Ok(out)
    }

    /// Inverse over Λ; exists exactly when the determinant is a unit.
    pub fn inverse(&self) -> Result<Self, MatrixError> {
        let det = self.determinant()?;
        let inv = det
            .unit_inverse()
            .ok_or_else(|| MatrixError::NotInvertible(det.render()))?;
        Ok(self.adjugate()?.scale(&inv))
    }

    /// Canonical gcd of all `k × k` minors. With `k = cols` only row
    /// subsets vary. Stops early once the gcd is a unit.
    pub fn minors_gcd(&self, k: usize) -> Result<LaurentPoly<R>, MatrixError> {
        if k == 0 || k > self.rows.min(self.cols) {
            return Err(MatrixError::ExtentOutOfRange {
                k,
                rows: self.rows,
                cols: self.cols,
            });
        }
        let col_sets: Vec<Vec<usize>> = (0..self.cols).combinations(k).collect();
        let mut acc = self.ring.zero();
        for rows in (0..self.rows).combinations(k) {
            for cols in &col_sets {
                let minor = self.submatrix(&rows, cols).determinant()?;
                acc = acc.gcd(&minor);
                if acc.is_unit() {
                    return Ok(self.ring.one());
                }
            }
        }
        Ok(acc)
    }
}
