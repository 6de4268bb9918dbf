//! Dense matrices over `GF(2^m)`: reduction with leftmost-greedy pivots,
//! conjugate transpose, products.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::galois::{Elem, Field};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
    field: Arc<Field>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Result of row reduction: pivot columns (a maximal linearly independent
/// set), free columns, and the expression of each free column over the pivots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedForm {
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
    pub free_cols: Vec<usize>,
    /// `combination[i][j]` is the coefficient of pivot column `j` in free
    /// column `free_cols[i]`.
    pub combination: Vec<Vec<Elem>>,
}

impl ReducedForm {
    /// Null-space basis of the reduced matrix: one vector per free column with
    /// 1 at the free position and the combination coefficients at the pivots.
    /// (In characteristic 2, `beta_i - sum a_ij alpha_j = 0` needs no signs.)
    pub fn null_vectors(&self, cols: usize) -> Vec<Vec<Elem>> {
        self.free_cols
            .iter()
            .zip(&self.combination)
            .map(|(&fc, comb)| {
                let mut v = vec![0; cols];
                v[fc] = 1;
                for (&pc, &a) in self.pivot_cols.iter().zip(comb) {
                    v[pc] = a;
                }
                v
            })
            .collect()
    }
}

impl Matrix {
    pub fn new(field: &Arc<Field>, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        for &x in &data {
            field.check(x)?;
        }
        Ok(Matrix {
            rows,
            cols,
            data,
            field: field.clone(),
        })
    }

    pub fn zeros(field: &Arc<Field>, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
            field: field.clone(),
        }
    }

    pub fn identity(field: &Arc<Field>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: &Arc<Field>, rows: &[Vec<Elem>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(field, rows.len(), cols, rows.concat())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    /// The block of rows `r0..r1` and columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        let mut data = Vec::with_capacity((r1 - r0) * (c1 - c0));
        for r in r0..r1 {
            data.extend_from_slice(&self.row(r)[c0..c1]);
        }
        Matrix {
            rows: r1 - r0,
            cols: c1 - c0,
            data,
            field: self.field.clone(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// `A†`: transpose with every entry conjugated.
    pub fn conj_transpose(&self) -> Matrix {
        let mut t = self.transpose();
        for x in &mut t.data {
            *x = self.field.conj(*x);
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.get(r, c) ^ f.mul(a, other.get(k, c));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    /// `M v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).fold(0, |acc, (&a, &b)| acc ^ f.mul(a, b)))
            .collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Gauss-Jordan reduction with leftmost-greedy pivots: columns are scanned
    /// left to right and the first row (among those not yet used) with a nonzero
    /// entry becomes the pivot row. Columns are never physically permuted.
    pub fn row_reduce(&self) -> ReducedForm {
        let f = &self.field;
        let mut a = self.data.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut free = Vec::new();
        let mut ri = 0;
        for c in 0..cols {
            if ri == self.rows {
                free.push(c);
                continue;
            }
            let Some(p) = (ri..self.rows).find(|&i| a[i * cols + c] != 0) else {
                free.push(c);
                continue;
            };
            if p != ri {
                for j in 0..cols {
                    a.swap(p * cols + j, ri * cols + j);
                }
            }
            let inv = f.inv(a[ri * cols + c]).expect("pivot nonzero");
            for j in 0..cols {
                a[ri * cols + j] = f.mul(a[ri * cols + j], inv);
            }
            for i in 0..self.rows {
                let factor = a[i * cols + c];
                if i == ri || factor == 0 {
                    continue;
                }
                for j in 0..cols {
                    let v = f.mul(factor, a[ri * cols + j]);
                    a[i * cols + j] ^= v;
                }
            }
            pivots.push(c);
            ri += 1;
        }
        let combination = free
            .iter()
            .map(|&fc| (0..pivots.len()).map(|j| a[j * cols + fc]).collect())
            .collect();
        ReducedForm {
            rank: pivots.len(),
            pivot_cols: pivots,
            free_cols: free,
            combination,
        }
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().rank
    }
}

/// True iff every entry of `a * b` is zero.
pub fn product_is_zero(a: &Matrix, b: &Matrix) -> Result<bool> {
    Ok(a.mul(b)?.is_zero())
}
