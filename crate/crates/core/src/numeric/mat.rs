//! Dense complex matrices with row-major storage.
//!
//! Composite indices over tensor factors are left-factor-major throughout the
//! crate: for `x` acting on a `p`-dimensional space and `y` on a
//! `q`-dimensional one, `(x ⊗ y)[(i,k),(j,l)] = x[i,j] · y[k,l]` is stored at
//! row `i*q + k`, column `j*q + l`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex scalar used throughout the crate.
pub type C64 = Complex64;

/// Dense complex matrix. Dimensions are fixed at construction and every
/// operation checks them; zero-dimensional matrices are rejected.
#[derive(Clone, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    // Row-major: entry (i, j) lives at i * cols + j.
    entries: Vec<C64>,
}

impl Mat {
    /// Builds a matrix from row-major entries, rejecting shape mismatches and
    /// non-finite values.
    pub fn new(rows: usize, cols: usize, entries: Vec<C64>) -> Result<Mat> {
        if rows == 0 || cols == 0 {
            return Err(Error::Argument(format!(
                "matrix dimensions must be positive, got {rows}×{cols}"
            )));
        }
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}×{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if entries
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::Argument("matrix entries must be finite".into()));
        }
        Ok(Mat {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix by evaluating `f(row, col)` on every index.
    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> C64) -> Mat {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Mat {
            rows,
            cols,
            entries,
        }
    }

    /// Builds a matrix from row-major real entries. Panics on a length
    /// mismatch; intended for literals in tests and examples.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Mat {
        assert_eq!(entries.len(), rows * cols, "entry count must match shape");
        Mat::from_fn(rows, cols, |i, j| C64::new(entries[i * cols + j], 0.0))
    }

    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat::from_fn(rows, cols, |_, _| C64::new(0.0, 0.0))
    }

    pub fn identity(dim: usize) -> Mat {
        Mat::from_fn(dim, dim, |i, j| {
            if i == j {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
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

    /// Row-major entry slice.
    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn at(&self, i: usize, j: usize) -> C64 {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        self.entries[i * self.cols + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, value: C64) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        self.entries[i * self.cols + j] = value;
    }

    pub(crate) fn add_assign_at(&mut self, i: usize, j: usize, value: C64) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        self.entries[i * self.cols + j] += value;
    }

    /// Matrix product `self · other`. Panics on inner-dimension mismatch;
    /// callers are expected to have validated shapes.
    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(
            self.cols, other.rows,
            "inner dimensions must agree: {}×{} · {}×{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entries[i * self.cols + k];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i * other.cols + j] += a * other.entries[k * other.cols + j];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, factor: C64) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    /// Entry-wise complex conjugate.
    pub fn conj(&self) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i))
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).conj())
    }

    /// Hermitian part `(m + m†)/2`.
    pub fn hermitize(&self) -> Mat {
        assert!(self.is_square(), "hermitian part needs a square matrix");
        self.add(&self.dagger()).scale(C64::new(0.5, 0.0))
    }

    /// Kronecker product with left-factor-major composite indices.
    pub fn kron(&self, other: &Mat) -> Mat {
        Mat::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            self.at(i / other.rows, j / other.cols) * other.at(i % other.rows, j % other.cols)
        })
    }

    pub fn trace(&self) -> C64 {
        assert!(self.is_square(), "trace needs a square matrix");
        (0..self.rows).map(|i| self.at(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entry-wise difference `max|self − other|`. Panics on shape
    /// mismatch.
    pub fn max_abs_diff(&self, other: &Mat) -> f64 {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Column `j` as a `rows×1` matrix.
    pub fn column(&self, j: usize) -> Mat {
        assert!(j < self.cols, "column index out of bounds");
        Mat::from_fn(self.rows, 1, |i, _| self.at(i, j))
    }
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}×{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self.at(i, j);
                write!(f, "{:+.4}{:+.4}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_shapes() {
        assert!(Mat::new(0, 2, vec![]).is_err());
        assert!(Mat::new(2, 2, vec![C64::new(1.0, 0.0); 3]).is_err());
        assert!(Mat::new(1, 1, vec![C64::new(f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn product_and_dagger() {
        let a = Mat::from_real(2, 3, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        let b = Mat::from_real(3, 2, &[7.0, 8.0, 9.0, 10.0, 11.0, 12.0]);
        let c = a.mul(&b);
        assert_eq!(c.at(0, 0), C64::new(58.0, 0.0));
        assert_eq!(c.at(1, 1), C64::new(154.0, 0.0));

        let m = Mat::from_fn(2, 2, |i, j| C64::new(i as f64, j as f64));
        let d = m.dagger();
        assert_eq!(d.at(0, 1), C64::new(1.0, -0.0));
        assert_eq!(d.at(1, 0), C64::new(0.0, -1.0));
    }

    #[test]
    fn kron_uses_left_factor_major_indices() {
        let x = Mat::from_real(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        let y = Mat::from_real(2, 2, &[0.0, 5.0, 6.0, 7.0]);
        let k = x.kron(&y);
        // (x ⊗ y)[(i,k),(j,l)] = x[i,j]·y[k,l] at row i*2+k, col j*2+l
        assert_eq!(k.at(0, 1), C64::new(5.0, 0.0)); // x[0,0]·y[0,1]
        assert_eq!(k.at(2, 3), C64::new(4.0 * 5.0, 0.0)); // x[1,1]·y[0,1]
        assert_eq!(k.at(3, 0), C64::new(3.0 * 6.0, 0.0)); // x[1,0]·y[1,0]
    }

    #[test]
    fn trace_and_norms() {
        let m = Mat::from_real(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m.trace(), C64::new(5.0, 0.0));
        assert!((m.frobenius_norm() - 30.0_f64.sqrt()).abs() < 1e-15);
        assert_eq!(m.max_abs(), 4.0);
    }
}
