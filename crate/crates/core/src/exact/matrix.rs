use std::fmt;

use super::{GaussianRational, QMatrix, Rational};
use crate::error::ExactError;

/// A dense matrix over the Gaussian rationals, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![GaussianRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.data[k * n + k] = GaussianRational::one();
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, data: Vec<GaussianRational>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count does not match shape");
        ExactMatrix { rows, cols, data }
    }

    /// Builds a real integer matrix from nested rows.
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&v| GaussianRational::from_int(v)));
        }
        ExactMatrix { rows: r, cols: c, data }
    }

    pub fn diag(entries: &[GaussianRational]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (k, e) in entries.iter().enumerate() {
            m.data[k * n + k] = e.clone();
        }
        m
    }

    pub fn diag_int(entries: &[i64]) -> Self {
        let v: Vec<_> = entries.iter().map(|&e| GaussianRational::from_int(e)).collect();
        Self::diag(&v)
    }

    /// The matrix unit `E_{ij}` of size `n`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m.data[i * n + j] = GaussianRational::one();
        m
    }

    /// Block-diagonal matrix with the given square blocks.
    pub fn block_diag(blocks: &[&ExactMatrix]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(n, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.data[(r0 + i) * c + c0 + j] = b.get(i, j).clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Assembles a matrix from a grid of blocks with compatible shapes.
    pub fn from_blocks(grid: &[Vec<ExactMatrix>]) -> Self {
        let heights: Vec<usize> = grid.iter().map(|row| row[0].rows).collect();
        let widths: Vec<usize> = grid[0].iter().map(|b| b.cols).collect();
        let n: usize = heights.iter().sum();
        let c: usize = widths.iter().sum();
        let mut m = Self::zeros(n, c);
        let mut r0 = 0;
        for (bi, row) in grid.iter().enumerate() {
            let mut c0 = 0;
            for (bj, b) in row.iter().enumerate() {
                assert_eq!(b.rows, heights[bi], "block height mismatch");
                assert_eq!(b.cols, widths[bj], "block width mismatch");
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        m.data[(r0 + i) * c + c0 + j] = b.get(i, j).clone();
                    }
                }
                c0 += b.cols;
            }
            r0 += heights[bi];
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussianRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GaussianRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| z.is_zero())
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.is_real())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        ExactMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        ExactMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|a| -a).collect();
        ExactMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        let data = self.data.iter().map(|a| a * s).collect();
        ExactMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale_real(&self, s: &Rational) -> Self {
        let data = self.data.iter().map(|a| a.scale(s)).collect();
        ExactMatrix { rows: self.rows, cols: self.cols, data }
    }

    /// Matrix product, skipping zero entries of the left factor.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k * other.cols + j];
                    if b.is_zero() {
                        continue;
                    }
                    let p = a * b;
                    out.data[i * other.cols + j] += &p;
                }
            }
        }
        out
    }

    /// The commutator `[self, other] = self·other − other·self`.
    pub fn bracket(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        let data = self.data.iter().map(|a| a.conj()).collect();
        ExactMatrix { rows: self.rows, cols: self.cols, data }
    }

    /// Conjugate transpose `X*`.
    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn trace(&self) -> GaussianRational {
        assert!(self.is_square());
        let mut t = GaussianRational::zero();
        for k in 0..self.rows {
            t += self.get(k, k);
        }
        t
    }

    /// Inverse by Gauss–Jordan elimination over Q(i).
    pub fn inverse(&self) -> Result<Self, ExactError> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&r| !a.get(r, col).is_zero()).ok_or(ExactError::Singular)?;
            if piv != col {
                for j in 0..n {
                    a.data.swap(piv * n + j, col * n + j);
                    inv.data.swap(piv * n + j, col * n + j);
                }
            }
            let p = a.get(col, col).recip();
            for j in 0..n {
                a.data[col * n + j] = &a.data[col * n + j] * &p;
                inv.data[col * n + j] = &inv.data[col * n + j] * &p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = &f * &a.data[col * n + j];
                    a.data[r * n + j] -= &t;
                    let t = &f * &inv.data[col * n + j];
                    inv.data[r * n + j] -= &t;
                }
            }
        }
        Ok(inv)
    }

    /// The real `2n×2n` matrix `[[Re, −Im], [Im, Re]]` representing the
    /// same R-linear map on C^n = R^{2n}.
    pub fn realify(&self) -> QMatrix {
        let (r, c) = (self.rows, self.cols);
        let mut out = QMatrix::zeros(2 * r, 2 * c);
        for i in 0..r {
            for j in 0..c {
                let z = self.get(i, j);
                out.set(i, j, z.re.clone());
                out.set(i, j + c, -&z.im);
                out.set(i + r, j, z.im.clone());
                out.set(i + r, j + c, z.re.clone());
            }
        }
        out
    }

    /// Float copy of the entries as `(re, im)` pairs, row-major.
    pub fn to_f64_pairs(&self) -> Vec<(f64, f64)> {
        self.data.iter().map(|z| z.to_f64_pair()).collect()
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let mut m = ExactMatrix::from_int_rows(&[vec![1, 2, 0], vec![0, 1, 3], vec![4, 0, 1]]);
        m.set(0, 2, GaussianRational::i());
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), ExactMatrix::identity(3));
    }

    #[test]
    fn singular_is_reported() {
        let m = ExactMatrix::from_int_rows(&[vec![1, 2], vec![2, 4]]);
        assert!(matches!(m.inverse(), Err(ExactError::Singular)));
    }

    #[test]
    fn bracket_of_units() {
        let e12 = ExactMatrix::unit(2, 0, 1);
        let e21 = ExactMatrix::unit(2, 1, 0);
        assert_eq!(e12.bracket(&e21), ExactMatrix::diag_int(&[1, -1]));
    }
}
