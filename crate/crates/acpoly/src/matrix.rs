//! Dense row-major matrices over `F_p`.

use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::upoly::DensePoly;
use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub ctx: FieldCtx,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<u64>,
}

impl Matrix {
    pub fn zeros(ctx: FieldCtx, rows: usize, cols: usize) -> Self {
        Matrix { ctx, rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn identity(ctx: FieldCtx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows of signed integers.
    pub fn from_rows_i64(ctx: FieldCtx, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let entries = rows.iter().flat_map(|row| row.iter().map(|&v| ctx.from_i64(v))).collect();
        Matrix { ctx, rows: r, cols: c, entries }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let f = self.ctx;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        let cols: Vec<Vec<u64>> = (0..other.cols).map(|j| other.column(j)).collect();
        for i in 0..self.rows {
            for (j, col) in cols.iter().enumerate() {
                out.set(i, j, f.dot(self.row(i), col));
            }
        }
        out
    }

    pub fn scale(&self, c: u64) -> Matrix {
        let f = self.ctx;
        Matrix { entries: self.entries.iter().map(|&v| f.mul(v, c)).collect(), ..self.clone() }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.ctx, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// The `rows x cols` block with top-left corner `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(self.ctx, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(r0 + i, c0 + j));
            }
        }
        out
    }

    /// Entries as signed representatives, row by row.
    pub fn signed_rows(&self) -> Vec<Vec<i128>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|&v| self.ctx.signed(v)).collect()).collect()
    }

    /// Determinant and inverse by Gauss-Jordan elimination; the inverse is
    /// `None` for a singular matrix.
    pub fn det_and_inverse(&self) -> (u64, Option<Matrix>) {
        assert!(self.is_square(), "square matrix required");
        let f = self.ctx;
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(f, n);
        let mut det = 1u64;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| a.get(r, col) != 0) else {
                return (0, None);
            };
            if piv != col {
                for j in 0..n {
                    a.entries.swap(piv * n + j, col * n + j);
                    inv.entries.swap(piv * n + j, col * n + j);
                }
                det = f.neg(det);
            }
            let pv = a.get(col, col);
            det = f.mul(det, pv);
            let pinv = f.inv(pv).expect("nonzero pivot");
            for j in 0..n {
                a.set(col, j, f.mul(a.get(col, j), pinv));
                inv.set(col, j, f.mul(inv.get(col, j), pinv));
            }
            for r in 0..n {
                let c = a.get(r, col);
                if r == col || c == 0 {
                    continue;
                }
                for j in 0..n {
                    a.set(r, j, f.sub(a.get(r, j), f.mul(c, a.get(col, j))));
                    inv.set(r, j, f.sub(inv.get(r, j), f.mul(c, inv.get(col, j))));
                }
            }
        }
        (det, Some(inv))
    }

    /// The inverse; `SingularMatrix` when the determinant vanishes.
    pub fn inverse(&self) -> Result<Matrix> {
        self.det_and_inverse().1.ok_or(Error::SingularMatrix)
    }

    /// The adjugate, also for singular matrices.
    ///
    /// `adj(A + tI) = det(A + tI) (A + tI)^(-1)` has entries of degree below
    /// `n` in `t`; it is evaluated at `n` shifts where `A + tI` is invertible
    /// and interpolated at `t = 0`.
    pub fn adjugate(&self) -> Result<Matrix> {
        assert!(self.is_square(), "square matrix required");
        let f = self.ctx;
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        if let (det, Some(inv)) = self.det_and_inverse() {
            return Ok(inv.scale(det));
        }
        let mut samples: Vec<(u64, Matrix)> = Vec::with_capacity(n);
        let mut t = 0u64;
        while samples.len() < n {
            t += 1;
            if t >= f.p() {
                return Err(Error::FieldTooSmall);
            }
            let mut shifted = self.clone();
            for i in 0..n {
                shifted.set(i, i, f.add(shifted.get(i, i), t));
            }
            if let (det, Some(inv)) = shifted.det_and_inverse() {
                samples.push((t, inv.scale(det)));
            }
        }
        let mut out = Matrix::zeros(f, n, n);
        for idx in 0..n * n {
            let evals: Vec<_> = samples.iter().map(|(t, m)| (f.elem(*t), f.elem(m.entries[idx]))).collect();
            out.entries[idx] = crate::upoly::interpolate_coeffs(&evals)?.coeff(0);
        }
        Ok(out)
    }

    /// Whether `self` equals `c` times the identity.
    pub fn is_scalar(&self, c: u64) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == if i == j { c } else { 0 }))
    }

    /// Column `j` read as coefficients of a polynomial, highest power first.
    pub fn column_poly_desc(&self, j: usize, rows: core::ops::Range<usize>) -> DensePoly {
        let mut c: Vec<u64> = rows.map(|i| self.get(i, j)).collect();
        c.reverse();
        DensePoly::new(self.ctx, c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn ctx() -> FieldCtx {
        FieldCtx::new(1_000_003).unwrap()
    }

    #[test]
    fn inverse_and_adjugate() {
        let f = ctx();
        let m = Matrix::from_rows_i64(f, &[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_scalar(1));
        let det = oracle::bareiss_det(&m);
        assert_eq!(m.det_and_inverse().0, det);
        assert!(m.adjugate().unwrap().mul(&m).is_scalar(det));
    }

    #[test]
    fn adjugate_of_singular_matrices() {
        let f = ctx();
        // Rank 2: the adjugate is a nonzero rank-one matrix.
        let m = Matrix::from_rows_i64(f, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let adj = m.adjugate().unwrap();
        assert!(adj.mul(&m).is_scalar(0));
        assert!(m.mul(&adj).is_scalar(0));
        assert_eq!(adj.get(0, 0), f.from_i64(4));
        assert_eq!(adj.get(2, 0), f.from_i64(-4));
        assert_eq!(m.inverse(), Err(Error::SingularMatrix));
        // Rank 1: the adjugate vanishes.
        let m = Matrix::from_rows_i64(f, &[&[1, 2, 3], &[2, 4, 6], &[3, 6, 9]]);
        assert!(m.adjugate().unwrap().is_scalar(0));
    }
}
