//! Bipartite wire primitives: the cup and cap tensors, the swap, Bell
//! states, and the `vec`/`unvec` bijection between operators and bipartite
//! vectors.
//!
//! A map `f: A → B` and the bipartite vector `vec(f) ∈ A ⊗ B` carry the same
//! data; `vec` stacks the columns of `f`, so `vec(f)[(i,m)] = f[m,i]` with
//! the composite index `(i,m)` stored at `i·dim_b + m`. The unnormalized cup
//! `Σ_i |i⟩⊗|i⟩` is `vec` of the identity; rescaled by `1/√d` it is the
//! maximally entangled Bell state.

use crate::error::{Error, Result};
use crate::numeric::{Mat, C64};

/// Vector on a bipartite space `A ⊗ B` with the two factor dimensions kept
/// explicit. Entry `(i, m)` refers to basis vector `|i⟩_A ⊗ |m⟩_B`.
#[derive(Clone, PartialEq)]
pub struct BiVec {
    dim_a: usize,
    dim_b: usize,
    // Left-factor-major: (i, m) lives at i * dim_b + m.
    entries: Vec<C64>,
}

impl BiVec {
    pub fn new(dim_a: usize, dim_b: usize, entries: Vec<C64>) -> Result<BiVec> {
        if dim_a == 0 || dim_b == 0 {
            return Err(Error::Argument("factor dimensions must be positive".into()));
        }
        if entries.len() != dim_a * dim_b {
            return Err(Error::Dimension(format!(
                "vector on {dim_a}⊗{dim_b} needs {} entries, got {}",
                dim_a * dim_b,
                entries.len()
            )));
        }
        if entries
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::Argument("vector entries must be finite".into()));
        }
        Ok(BiVec {
            dim_a,
            dim_b,
            entries,
        })
    }

    pub fn from_fn(dim_a: usize, dim_b: usize, f: impl Fn(usize, usize) -> C64) -> BiVec {
        assert!(dim_a > 0 && dim_b > 0, "factor dimensions must be positive");
        let mut entries = Vec::with_capacity(dim_a * dim_b);
        for i in 0..dim_a {
            for m in 0..dim_b {
                entries.push(f(i, m));
            }
        }
        BiVec {
            dim_a,
            dim_b,
            entries,
        }
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    /// Amplitude on `|i⟩_A ⊗ |m⟩_B`.
    pub fn at(&self, i: usize, m: usize) -> C64 {
        assert!(i < self.dim_a && m < self.dim_b, "index out of bounds");
        self.entries[i * self.dim_b + m]
    }

    pub fn norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Inner product `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &BiVec) -> Result<C64> {
        if (self.dim_a, self.dim_b) != (other.dim_a, other.dim_b) {
            return Err(Error::Dimension(format!(
                "inner product needs equal factor dimensions, got {}⊗{} and {}⊗{}",
                self.dim_a, self.dim_b, other.dim_a, other.dim_b
            )));
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Entry-wise complex conjugate in the standard basis.
    pub fn conj(&self) -> BiVec {
        BiVec {
            dim_a: self.dim_a,
            dim_b: self.dim_b,
            entries: self.entries.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, factor: C64) -> BiVec {
        BiVec {
            dim_a: self.dim_a,
            dim_b: self.dim_b,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &BiVec) -> BiVec {
        assert_eq!(
            (self.dim_a, self.dim_b),
            (other.dim_a, other.dim_b),
            "factor dimensions must agree"
        );
        BiVec {
            dim_a: self.dim_a,
            dim_b: self.dim_b,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// The same vector as a `(dim_a·dim_b)×1` column matrix.
    pub fn as_column(&self) -> Mat {
        Mat::new(self.dim_a * self.dim_b, 1, self.entries.clone())
            .expect("entries already validated")
    }

    /// Reinterprets a column matrix on `A ⊗ B` as a bipartite vector.
    pub fn from_column(column: &Mat, dim_a: usize, dim_b: usize) -> Result<BiVec> {
        if column.cols() != 1 {
            return Err(Error::Dimension(format!(
                "expected a column matrix, got {}×{}",
                column.rows(),
                column.cols()
            )));
        }
        BiVec::new(dim_a, dim_b, column.entries().to_vec())
    }

    /// Rank-one projector `|v⟩⟨v|` on the composite space.
    pub fn outer(&self) -> Mat {
        let d = self.dim_a * self.dim_b;
        Mat::from_fn(d, d, |r, c| self.entries[r] * self.entries[c].conj())
    }

    pub fn max_abs_diff(&self, other: &BiVec) -> f64 {
        assert_eq!(
            (self.dim_a, self.dim_b),
            (other.dim_a, other.dim_b),
            "factor dimensions must agree"
        );
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl std::fmt::Debug for BiVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BiVec {}⊗{} [", self.dim_a, self.dim_b)?;
        for z in &self.entries {
            write!(f, " {:+.4}{:+.4}i", z.re, z.im)?;
        }
        write!(f, " ]")
    }
}

/// Unnormalized maximally entangled vector `Σ_i |i⟩⊗|i⟩` on `d ⊗ d`
/// (squared norm `d`). Equals `vec` of the identity.
pub fn cup(d: usize) -> Result<BiVec> {
    if d == 0 {
        return Err(Error::Argument("cup dimension must be positive".into()));
    }
    Ok(BiVec::from_fn(d, d, |i, m| {
        if i == m {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    }))
}

/// The cup's adjoint `Σ_i ⟨i|⊗⟨i|` as a `1×d²` matrix: composing it with
/// `vec(f)` takes the trace of `f`.
pub fn cap(d: usize) -> Result<Mat> {
    let cup = cup(d)?;
    Ok(cup.as_column().dagger())
}

/// Swap of two tensor factors, `swap(p, q): ℂ^p ⊗ ℂ^q → ℂ^q ⊗ ℂ^p`, as a
/// `pq×pq` permutation matrix.
pub fn swap(p: usize, q: usize) -> Result<Mat> {
    if p == 0 || q == 0 {
        return Err(Error::Argument("swap dimensions must be positive".into()));
    }
    Ok(Mat::from_fn(p * q, p * q, |row, col| {
        // Row indexes q ⊗ p as (y, x); column indexes p ⊗ q as (x', y').
        let (y, x) = (row / p, row % p);
        let (xp, yp) = (col / q, col % q);
        if x == xp && y == yp {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    }))
}

/// Maximally entangled Bell state `cup(d)/√d` (unit norm).
pub fn bell_state(d: usize) -> Result<BiVec> {
    let cup = cup(d)?;
    Ok(cup.scale(C64::new(1.0 / (d as f64).sqrt(), 0.0)))
}

/// Operator-to-state bijection: columns of `f: A → B` stacked into a vector
/// on `A ⊗ B`, i.e. `vec(f)[(i,m)] = f[m,i]`.
pub fn vec(f: &Mat) -> BiVec {
    BiVec::from_fn(f.cols(), f.rows(), |i, m| f.at(m, i))
}

/// Inverse of [`vec`]: rebuilds the `dim_b×dim_a` matrix from a bipartite
/// vector.
pub fn unvec(v: &BiVec) -> Mat {
    Mat::from_fn(v.dim_b(), v.dim_a(), |m, i| v.at(i, m))
}
