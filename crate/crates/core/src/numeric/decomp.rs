//! Hermitian eigendecomposition and singular value decomposition.
//!
//! The heavy lifting is delegated to nalgebra; this module fixes the
//! conventions the rest of the crate relies on: eigenvalues sorted ascending,
//! singular values sorted descending, and SVD factors completed to *full*
//! unitaries so `f = u · diag(σ) · v` holds with `u` square on the left and
//! `v` square on the right (note: `v`, not `v†`).

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::numeric::{Mat, Tol, C64};

pub(super) fn to_na(m: &Mat) -> DMatrix<C64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m.at(i, j))
}

pub(super) fn from_na(m: &DMatrix<C64>) -> Mat {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Eigendecomposition of a hermitian matrix: real `values` sorted ascending,
/// matching orthonormal eigenvector columns in `vectors`.
#[derive(Clone, Debug)]
pub struct HermitianEig {
    pub values: Vec<f64>,
    pub vectors: Mat,
}

impl HermitianEig {
    /// Reassembles `Σ λ_k |u_k⟩⟨u_k|` (used by tests and reconstruction
    /// checks).
    pub fn reconstruct(&self) -> Mat {
        let d = self.vectors.rows();
        let mut out = Mat::zeros(d, d);
        for (k, &lambda) in self.values.iter().enumerate() {
            for i in 0..d {
                for j in 0..d {
                    let term = self.vectors.at(i, k) * self.vectors.at(j, k).conj();
                    out.add_assign_at(i, j, term * C64::new(lambda, 0.0));
                }
            }
        }
        out
    }
}

/// Eigendecomposition of a hermitian matrix.
///
/// The input must be hermitian within `tol` (residual `‖m − m†‖_F` against
/// threshold at scale `‖m‖_F`); it is then symmetrized exactly before
/// factorization so the backend sees a genuinely hermitian operand.
pub fn eig_hermitian(m: &Mat, tol: Tol) -> Result<HermitianEig> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "hermitian eigendecomposition needs a square matrix, got {}×{}",
            m.rows(),
            m.cols()
        )));
    }
    let residual = m.sub(&m.dagger()).frobenius_norm();
    let threshold = tol.threshold(m.frobenius_norm());
    if residual > threshold {
        return Err(Error::NotHermitian {
            residual,
            threshold,
        });
    }
    let eig = to_na(&m.hermitize()).symmetric_eigen();

    let d = m.rows();
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = Mat::from_fn(d, d, |i, k| eig.eigenvectors[(i, order[k])]);
    Ok(HermitianEig { values, vectors })
}

/// Singular value decomposition `f = u · diag(σ) · v` with `σ` sorted
/// descending, `u` a `rows×rows` unitary and `v` a `cols×cols` unitary.
#[derive(Clone, Debug)]
pub struct SvdDecomp {
    pub u: Mat,
    pub sigma: Vec<f64>,
    pub v: Mat,
}

impl SvdDecomp {
    /// `diag(σ)` embedded in a `rows×cols` rectangle.
    pub fn sigma_matrix(&self) -> Mat {
        Mat::from_fn(self.u.rows(), self.v.cols(), |i, j| {
            if i == j && i < self.sigma.len() {
                C64::new(self.sigma[i], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    /// Reassembles `u · diag(σ) · v`.
    pub fn reconstruct(&self) -> Mat {
        self.u.mul(&self.sigma_matrix()).mul(&self.v)
    }
}

/// Full singular value decomposition.
///
/// nalgebra produces thin factors; the missing columns of `u` (rows of `v`)
/// are filled in by orthonormal completion so both factors come back square.
pub fn svd(m: &Mat) -> Result<SvdDecomp> {
    let decomp = to_na(m)
        .try_svd(true, true, f64::EPSILON, 0)
        .ok_or_else(|| {
            Error::Computation("singular value decomposition did not converge".into())
        })?;
    let thin_u = decomp.u.expect("u requested");
    let thin_vt = decomp.v_t.expect("v_t requested");
    let k = decomp.singular_values.len();

    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| decomp.singular_values[b].total_cmp(&decomp.singular_values[a]));
    let sigma: Vec<f64> = order.iter().map(|&i| decomp.singular_values[i]).collect();

    let u_thin = Mat::from_fn(thin_u.nrows(), k, |i, j| thin_u[(i, order[j])]);
    let vt_thin = Mat::from_fn(k, thin_vt.ncols(), |i, j| thin_vt[(order[i], j)]);

    let u = complete_to_unitary(&u_thin);
    let v = complete_to_unitary(&vt_thin.dagger()).dagger();
    Ok(SvdDecomp { u, sigma, v })
}

/// Extends a matrix with `k` orthonormal columns to a full `d×d` unitary.
///
/// Completion is deterministic: each new column is the standard basis vector
/// with the largest residual after projecting out everything chosen so far,
/// re-orthogonalized twice for stability.
fn complete_to_unitary(thin: &Mat) -> Mat {
    let d = thin.rows();
    let k = thin.cols();
    assert!(k <= d, "more columns than rows cannot be orthonormal");
    let mut cols: Vec<Vec<C64>> = (0..k)
        .map(|j| (0..d).map(|i| thin.at(i, j)).collect())
        .collect();

    while cols.len() < d {
        let mut best: Option<(f64, Vec<C64>)> = None;
        for e in 0..d {
            let mut cand = vec![C64::new(0.0, 0.0); d];
            cand[e] = C64::new(1.0, 0.0);
            for _pass in 0..2 {
                for q in &cols {
                    let overlap: C64 = q.iter().zip(&cand).map(|(a, b)| a.conj() * b).sum();
                    for i in 0..d {
                        cand[i] -= overlap * q[i];
                    }
                }
            }
            let norm = cand.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if best.as_ref().is_none_or(|(n, _)| norm > *n) {
                best = Some((norm, cand));
            }
        }
        let (norm, mut cand) = best.expect("dimension is positive");
        assert!(norm > 1e-8, "failed to complete orthonormal basis");
        for z in &mut cand {
            *z /= C64::new(norm, 0.0);
        }
        cols.push(cand);
    }
    Mat::from_fn(d, d, |i, j| cols[j][i])
}
