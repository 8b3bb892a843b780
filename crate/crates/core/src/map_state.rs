//! The map–state dictionary: Schmidt decomposition of bipartite vectors,
//! purification of positive operators, spectral decomposition of normal
//! operators in state form, and a classifier translating operator properties
//! into properties of the corresponding vector.
//!
//! Under `vec`, a singular value decomposition of the operator *is* a
//! Schmidt decomposition of the state, an eigendecomposition of a normal
//! operator is an expansion into conjugate-paired product vectors, and every
//! matrix property (real, symmetric, hermitian, unitary, …) has an exact
//! counterpart on the vector side. Each operation here computes both sides
//! where that is meaningful, so the correspondence stays checkable.

use crate::error::{Error, Result};
use crate::numeric::{self, Mat, Tol, C64};
use crate::wires::{self, BiVec};

/// Schmidt decomposition `v = Σ_k σ_k · a_k ⊗ b_k` with strictly positive
/// coefficients sorted descending and orthonormal vector families on each
/// factor.
#[derive(Clone, Debug)]
pub struct SchmidtDecomp {
    /// Strictly positive Schmidt coefficients, descending. Their count is the
    /// Schmidt rank.
    pub coeffs: Vec<f64>,
    /// `dim_a × rank` matrix whose columns are the left factors `a_k`.
    pub left: Mat,
    /// `dim_b × rank` matrix whose columns are the right factors `b_k`.
    pub right: Mat,
}

impl SchmidtDecomp {
    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    /// Reassembles `Σ_k σ_k · a_k ⊗ b_k`.
    pub fn reconstruct(&self) -> BiVec {
        let (da, db) = (self.left.rows(), self.right.rows());
        BiVec::from_fn(da, db, |i, m| {
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, &s)| C64::new(s, 0.0) * self.left.at(i, k) * self.right.at(m, k))
                .sum()
        })
    }
}

/// Schmidt decomposition of a bipartite vector.
///
/// Computed as the singular value decomposition of the operator `unvec(v)`:
/// for `unvec(v) = u · diag(σ) · w`, the left factors are the (transposed)
/// rows of `w` and the right factors the columns of `u`. Coefficients at or
/// below `tol` relative to the largest are dropped, so `coeffs` has exactly
/// the Schmidt rank entries; a vector that is zero within tolerance is
/// rejected.
pub fn schmidt_decompose(v: &BiVec, tol: Tol) -> Result<SchmidtDecomp> {
    if v.norm() == 0.0 {
        return Err(Error::Argument(
            "cannot Schmidt-decompose the zero vector".into(),
        ));
    }
    let f = wires::unvec(v);
    let svd = numeric::svd(&f)?;
    let cutoff = tol.threshold(svd.sigma.first().copied().unwrap_or(0.0));
    let rank = svd.sigma.iter().take_while(|&&s| s > cutoff).count();
    if rank == 0 {
        return Err(Error::Argument(
            "cannot Schmidt-decompose a vector that is zero within tolerance".into(),
        ));
    }
    let coeffs = svd.sigma[..rank].to_vec();
    // v[(i,m)] = f[m,i] = Σ_k u[m,k]·σ_k·w[k,i], so a_k[i] = w[k,i], b_k[m] = u[m,k].
    let left = Mat::from_fn(v.dim_a(), rank, |i, k| svd.v.at(k, i));
    let right = Mat::from_fn(v.dim_b(), rank, |m, k| svd.u.at(m, k));
    Ok(SchmidtDecomp {
        coeffs,
        left,
        right,
    })
}

/// Purification of a positive semidefinite operator `rho` on `B`: a vector
/// on `aux ⊗ B` whose marginal on `B` (tracing out the auxiliary factor)
/// equals `rho`. Requires `dim_aux` at least the rank of `rho`.
///
/// The construction stacks `√λ_k · u_k` into the columns of a map
/// `f: aux → B` and returns `vec(f)`, with eigenpairs taken in descending
/// order. All purifications with the same auxiliary dimension differ from
/// this one by a unitary on the auxiliary factor alone; see
/// [`purify_with_gauge`].
pub fn purify(rho: &Mat, dim_aux: usize, tol: Tol) -> Result<BiVec> {
    let f = purification_map(rho, dim_aux, tol)?;
    Ok(wires::vec(&f))
}

/// [`purify`] followed by a unitary `gauge` on the auxiliary factor. The
/// marginal on `B` is unchanged for every unitary gauge.
pub fn purify_with_gauge(rho: &Mat, dim_aux: usize, gauge: &Mat, tol: Tol) -> Result<BiVec> {
    if (gauge.rows(), gauge.cols()) != (dim_aux, dim_aux) {
        return Err(Error::Dimension(format!(
            "gauge must be {dim_aux}×{dim_aux}, got {}×{}",
            gauge.rows(),
            gauge.cols()
        )));
    }
    let residual = gauge
        .dagger()
        .mul(gauge)
        .sub(&Mat::identity(dim_aux))
        .frobenius_norm();
    let threshold = tol.threshold(gauge.frobenius_norm().powi(2));
    if residual > threshold {
        return Err(Error::NotUnitary {
            residual,
            threshold,
        });
    }
    let f = purification_map(rho, dim_aux, tol)?;
    Ok(wires::vec(&f.mul(gauge)))
}

fn purification_map(rho: &Mat, dim_aux: usize, tol: Tol) -> Result<Mat> {
    if dim_aux == 0 {
        return Err(Error::Argument(
            "auxiliary dimension must be positive".into(),
        ));
    }
    if !rho.is_square() {
        return Err(Error::Dimension(format!(
            "purification needs a square operator, got {}×{}",
            rho.rows(),
            rho.cols()
        )));
    }
    let eig = numeric::eig_hermitian(rho, tol)?;
    let scale = rho.frobenius_norm();
    let min = *eig.values.first().expect("dimension is positive");
    if min < -tol.threshold(scale) {
        return Err(Error::NotPsd {
            min_eigenvalue: min,
        });
    }
    let max = *eig.values.last().expect("dimension is positive");
    let cutoff = tol.threshold(max.max(0.0));
    let rank = eig.values.iter().filter(|&&l| l > cutoff).count();
    if dim_aux < rank {
        return Err(Error::Argument(format!(
            "auxiliary dimension {dim_aux} is smaller than the operator's rank {rank}"
        )));
    }
    let d = rho.rows();
    // Columns in descending eigenvalue order; eig_hermitian sorts ascending.
    Ok(Mat::from_fn(d, dim_aux, |m, k| {
        if k < rank {
            let idx = d - 1 - k;
            self_adjoint_sqrt(eig.values[idx]) * eig.vectors.at(m, idx)
        } else {
            C64::new(0.0, 0.0)
        }
    }))
}

fn self_adjoint_sqrt(lambda: f64) -> C64 {
    C64::new(lambda.max(0.0).sqrt(), 0.0)
}

/// Spectral decomposition of a normal operator presented in state form:
/// `vec(f) = Σ_k λ_k · conj(u_k) ⊗ u_k` with orthonormal eigenvectors `u_k`.
#[derive(Clone, Debug)]
pub struct SpectralStateDecomp {
    /// Complex eigenvalues sorted by real part, then imaginary part.
    pub eigenvalues: Vec<C64>,
    /// `d×d` matrix of orthonormal eigenvector columns, matching
    /// `eigenvalues` by position.
    pub vectors: Mat,
}

impl SpectralStateDecomp {
    /// The `k`-th product term `conj(u_k) ⊗ u_k`.
    pub fn term(&self, k: usize) -> BiVec {
        let d = self.vectors.rows();
        BiVec::from_fn(d, d, |i, m| {
            self.vectors.at(i, k).conj() * self.vectors.at(m, k)
        })
    }

    /// Reassembles the operator `Σ_k λ_k · u_k u_k†`.
    pub fn reconstruct_operator(&self) -> Mat {
        let d = self.vectors.rows();
        let mut out = Mat::zeros(d, d);
        for (k, &lambda) in self.eigenvalues.iter().enumerate() {
            for m in 0..d {
                for n in 0..d {
                    let term = self.vectors.at(m, k) * self.vectors.at(n, k).conj();
                    out.add_assign_at(m, n, lambda * term);
                }
            }
        }
        out
    }

    /// Reassembles the state `Σ_k λ_k · conj(u_k) ⊗ u_k`; equals
    /// `vec(reconstruct_operator())`.
    pub fn reconstruct_state(&self) -> BiVec {
        let d = self.vectors.rows();
        let mut out = BiVec::from_fn(d, d, |_, _| C64::new(0.0, 0.0));
        for (k, &lambda) in self.eigenvalues.iter().enumerate() {
            out = out.add(&self.term(k).scale(lambda));
        }
        out
    }
}

/// Spectral decomposition of a normal operator (`f†f = ff†` within `tol`).
///
/// A normal `f` splits into commuting hermitian parts
/// `h₁ = (f + f†)/2` and `h₂ = (f − f†)/2i`. Both are diagonalized
/// simultaneously: eigenvectors of `h₁`, with `h₂` re-diagonalized inside
/// each (near-)degenerate eigenspace of `h₁`. The eigenvalues are
/// `λ_k = μ₁ + i·μ₂` from the two parts; in state form each eigenpair
/// contributes the product vector `conj(u_k) ⊗ u_k`.
pub fn spectral_state_decomposition(f: &Mat, tol: Tol) -> Result<SpectralStateDecomp> {
    if !f.is_square() {
        return Err(Error::Dimension(format!(
            "spectral decomposition needs a square operator, got {}×{}",
            f.rows(),
            f.cols()
        )));
    }
    let norm = f.frobenius_norm();
    let residual = f.dagger().mul(f).sub(&f.mul(&f.dagger())).frobenius_norm();
    let threshold = tol.threshold(norm * norm);
    if residual > threshold {
        return Err(Error::NotNormal {
            residual,
            threshold,
        });
    }

    let d = f.rows();
    let h1 = f.hermitize();
    let h2 = f.sub(&f.dagger()).scale(C64::new(0.0, -0.5));
    let eig1 = numeric::eig_hermitian(&h1, tol)?;

    // Group (near-)degenerate h₁ eigenvalues: a gap above this splits
    // clusters. Within a cluster h₁ is a multiple of the identity up to the
    // gap, so rotating its eigenvectors is harmless.
    let spread = eig1
        .values
        .iter()
        .map(|l| l.abs())
        .fold(0.0, f64::max)
        .max(norm);
    let cluster_gap = tol.threshold(spread);

    let mut pairs: Vec<(C64, Vec<C64>)> = Vec::with_capacity(d);
    let mut start = 0;
    while start < d {
        let mut end = start + 1;
        while end < d && eig1.values[end] - eig1.values[end - 1] <= cluster_gap {
            end += 1;
        }
        let size = end - start;
        if size == 1 {
            let u: Vec<C64> = (0..d).map(|i| eig1.vectors.at(i, start)).collect();
            let mu2 = rayleigh(&h2, &u);
            pairs.push((C64::new(eig1.values[start], mu2), u));
        } else {
            // Re-diagonalize h₂ restricted to the cluster's eigenspace.
            let basis = Mat::from_fn(d, size, |i, k| eig1.vectors.at(i, start + k));
            let block = basis.dagger().mul(&h2).mul(&basis);
            let sub = numeric::eig_hermitian(&block, tol)?;
            let refined = basis.mul(&sub.vectors);
            for k in 0..size {
                let u: Vec<C64> = (0..d).map(|i| refined.at(i, k)).collect();
                let mu1 = rayleigh(&h1, &u);
                pairs.push((C64::new(mu1, sub.values[k]), u));
            }
        }
        start = end;
    }

    pairs.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
    let eigenvalues: Vec<C64> = pairs.iter().map(|(l, _)| *l).collect();
    let vectors = Mat::from_fn(d, d, |i, k| pairs[k].1[i]);
    Ok(SpectralStateDecomp {
        eigenvalues,
        vectors,
    })
}

/// Rayleigh quotient `⟨u|h|u⟩` of a hermitian `h` with a unit vector `u`.
fn rayleigh(h: &Mat, u: &[C64]) -> f64 {
    let d = h.rows();
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..d {
        for j in 0..d {
            acc += u[i].conj() * h.at(i, j) * u[j];
        }
    }
    acc.re
}

/// Verdict for one operator property checked along two routes: directly on
/// the matrix and through the equivalent statement about `vec(f)`. The two
/// margins measure the same residual and must agree.
#[derive(Clone, Copy, Debug)]
pub struct FlagCheck {
    pub holds: bool,
    /// Residual of the matrix-side characterization (Frobenius norm).
    pub direct_margin: f64,
    /// Residual of the state-side characterization (vector 2-norm).
    pub dual_margin: f64,
}

/// How an operator and its state vector relate, property by property.
///
/// The square-only flags are `None` for rectangular inputs, which still get
/// the realness, diagonality, and Schmidt rank fields.
#[derive(Clone, Debug)]
pub struct OperatorStateReport {
    /// All entries real ⟺ `vec(f)` has real amplitudes.
    pub real: FlagCheck,
    /// `fᵀ = f` ⟺ `vec(f)` is invariant under swapping the two factors.
    pub symmetric: Option<FlagCheck>,
    /// `fᵀ = −f` ⟺ `vec(f)` is negated by the factor swap.
    pub antisymmetric: Option<FlagCheck>,
    /// `f† = f` ⟺ the factor swap conjugates `vec(f)`.
    pub hermitian: Option<FlagCheck>,
    /// `f†f = 1` ⟺ `vec(f)` has a flat Schmidt spectrum at 1.
    pub unitary: Option<FlagCheck>,
    /// `f` diagonal ⟺ `vec(f)` is supported on the paired basis `|i⟩⊗|i⟩`.
    pub diagonal: FlagCheck,
    /// Rank of `f` = Schmidt rank of `vec(f)` (0 only for the zero matrix).
    pub schmidt_rank: usize,
    /// `f = a·b†` for single vectors ⟺ `vec(f)` is a product vector ⟺
    /// Schmidt rank 1.
    pub factorizable: bool,
}

/// Classifies an operator against the map–state property dictionary,
/// computing every applicable flag on both the matrix and the vector side.
pub fn classify_operator_state(f: &Mat, tol: Tol) -> Result<OperatorStateReport> {
    let v = wires::vec(f);
    let vc = v.as_column();
    let scale = f.frobenius_norm();
    let thr = tol.threshold(scale);
    let flag = |direct: f64, dual: f64| FlagCheck {
        holds: direct <= thr,
        direct_margin: direct,
        dual_margin: dual,
    };

    let real = flag(
        f.sub(&f.conj()).frobenius_norm() / 2.0,
        vc.sub(&vc.conj()).frobenius_norm() / 2.0,
    );

    let diag_direct = {
        let mut acc = 0.0;
        for m in 0..f.rows() {
            for i in 0..f.cols() {
                if m != i {
                    acc += f.at(m, i).norm_sqr();
                }
            }
        }
        acc.sqrt()
    };
    let diag_dual = {
        let mut acc = 0.0;
        for i in 0..v.dim_a() {
            for m in 0..v.dim_b() {
                if i != m {
                    acc += v.at(i, m).norm_sqr();
                }
            }
        }
        acc.sqrt()
    };
    let diagonal = flag(diag_direct, diag_dual);

    let svd = numeric::svd(f)?;
    let sigma_max = svd.sigma.first().copied().unwrap_or(0.0);
    let schmidt_rank = svd
        .sigma
        .iter()
        .take_while(|&&s| s > tol.threshold(sigma_max))
        .count();
    let factorizable = schmidt_rank == 1;

    let (symmetric, antisymmetric, hermitian, unitary) = if f.is_square() {
        let d = f.rows();
        let sw = wires::swap(d, d).expect("dimension is positive");
        let swapped = sw.mul(&vc);
        let symmetric = flag(
            f.sub(&f.transpose()).frobenius_norm(),
            swapped.sub(&vc).frobenius_norm(),
        );
        let antisymmetric = flag(
            f.add(&f.transpose()).frobenius_norm(),
            swapped.add(&vc).frobenius_norm(),
        );
        let hermitian = flag(
            f.sub(&f.dagger()).frobenius_norm(),
            swapped.sub(&vc.conj()).frobenius_norm(),
        );
        // Unitarity residual scales like ‖f‖², not ‖f‖.
        let uni_thr = tol.threshold(scale * scale);
        let uni_direct = f.dagger().mul(f).sub(&Mat::identity(d)).frobenius_norm();
        let uni_dual = svd
            .sigma
            .iter()
            .map(|s| (s * s - 1.0).powi(2))
            .sum::<f64>()
            .sqrt();
        let unitary = FlagCheck {
            holds: uni_direct <= uni_thr,
            direct_margin: uni_direct,
            dual_margin: uni_dual,
        };
        (
            Some(symmetric),
            Some(antisymmetric),
            Some(hermitian),
            Some(unitary),
        )
    } else {
        (None, None, None, None)
    };

    Ok(OperatorStateReport {
        real,
        symmetric,
        antisymmetric,
        hermitian,
        unitary,
        diagonal,
        schmidt_rank,
        factorizable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::sample;
    use crate::numeric::{partial_trace, Seed};

    fn orthonormal_columns(m: &Mat) -> bool {
        let gram = m.dagger().mul(m);
        gram.max_abs_diff(&Mat::identity(m.cols())) < 1e-12
    }

    #[test]
    fn schmidt_of_bell_state_is_flat() {
        let bell = wires::bell_state(3).unwrap();
        let s = schmidt_decompose(&bell, Tol::default()).unwrap();
        assert_eq!(s.rank(), 3);
        for c in &s.coeffs {
            assert!((c - 1.0 / 3f64.sqrt()).abs() < 1e-14);
        }
        assert!(s.reconstruct().max_abs_diff(&bell) < 1e-14);
    }

    #[test]
    fn schmidt_matches_svd_of_unvec() {
        let mut rng = Seed::new(5).rng();
        let f = sample::ginibre_from(&mut rng, 3, 4).unwrap();
        let v = wires::vec(&f);
        let s = schmidt_decompose(&v, Tol::default()).unwrap();
        let svd = numeric::svd(&f).unwrap();
        assert_eq!(s.rank(), 3);
        for (a, b) in s.coeffs.iter().zip(&svd.sigma) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!(orthonormal_columns(&s.left));
        assert!(orthonormal_columns(&s.right));
        assert!(s.reconstruct().max_abs_diff(&v) < 1e-12);
        // Norm is carried entirely by the coefficients.
        let sq: f64 = s.coeffs.iter().map(|c| c * c).sum();
        assert!((sq - v.norm().powi(2)).abs() < 1e-12);
    }

    #[test]
    fn schmidt_rejects_zero_vector() {
        let zero = BiVec::new(2, 2, vec![C64::new(0.0, 0.0); 4]).unwrap();
        assert!(matches!(
            schmidt_decompose(&zero, Tol::default()),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn purification_marginal_recovers_the_operator() {
        // rho = diag(0.3, 0.7) on B, auxiliary dimension 2.
        let rho = Mat::from_real(2, 2, &[0.3, 0.0, 0.0, 0.7]);
        let v = purify(&rho, 2, Tol::default()).unwrap();
        assert!((v.norm().powi(2) - 1.0).abs() < 1e-14);
        let marginal = partial_trace(&v.outer(), &[2, 2], &[1]).unwrap();
        assert!(marginal.max_abs_diff(&rho) < 1e-14);
    }

    #[test]
    fn purification_of_sampled_density_with_larger_auxiliary() {
        let rho = sample::density(3, Seed::new(21)).unwrap();
        let v = purify(&rho, 5, Tol::default()).unwrap();
        assert_eq!((v.dim_a(), v.dim_b()), (5, 3));
        let marginal = partial_trace(&v.outer(), &[5, 3], &[1]).unwrap();
        assert!(marginal.max_abs_diff(&rho) < 1e-12);
    }

    #[test]
    fn purification_gauge_freedom_leaves_marginal_fixed() {
        let rho = sample::density(3, Seed::new(8)).unwrap();
        let gauge = sample::unitary(3, Seed::new(9)).unwrap();
        let v = purify_with_gauge(&rho, 3, &gauge, Tol::default()).unwrap();
        let marginal = partial_trace(&v.outer(), &[3, 3], &[1]).unwrap();
        assert!(marginal.max_abs_diff(&rho) < 1e-12);
        // Distinct gauges give distinct purifications of the same operator.
        let plain = purify(&rho, 3, Tol::default()).unwrap();
        assert!(v.max_abs_diff(&plain) > 1e-3);
    }

    #[test]
    fn purification_rejects_small_auxiliary_and_non_psd() {
        let rho = Mat::identity(3).scale(C64::new(1.0 / 3.0, 0.0));
        assert!(matches!(
            purify(&rho, 2, Tol::default()),
            Err(Error::Argument(_))
        ));
        let not_psd = Mat::from_real(2, 2, &[1.0, 0.0, 0.0, -0.5]);
        assert!(matches!(
            purify(&not_psd, 2, Tol::default()),
            Err(Error::NotPsd { .. })
        ));
        let not_unitary = Mat::from_real(2, 2, &[1.0, 0.0, 0.0, 2.0]);
        assert!(purify_with_gauge(
            &rho.scale(C64::new(3.0, 0.0)),
            3,
            &Mat::identity(3),
            Tol::default()
        )
        .is_ok());
        assert!(matches!(
            purify_with_gauge(
                &Mat::identity(2).scale(C64::new(0.5, 0.0)),
                2,
                &not_unitary,
                Tol::default()
            ),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn spectral_decomposition_of_diagonal_normal_operator() {
        // f = diag(1, i) is normal but not hermitian.
        let f = Mat::from_fn(2, 2, |i, j| {
            if i != j {
                C64::new(0.0, 0.0)
            } else if i == 0 {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 1.0)
            }
        });
        let s = spectral_state_decomposition(&f, Tol::default()).unwrap();
        assert!((s.eigenvalues[0] - C64::new(0.0, 1.0)).norm() < 1e-12);
        assert!((s.eigenvalues[1] - C64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(s.reconstruct_operator().max_abs_diff(&f) < 1e-12);
        let state = s.reconstruct_state();
        assert!(state.max_abs_diff(&wires::vec(&f)) < 1e-12);
    }

    #[test]
    fn spectral_decomposition_handles_degenerate_hermitian_part() {
        // h₁ = 0 with two distinct h₂ eigenvalues: f = i·diag(1, -1) after a
        // basis rotation, exercising the cluster re-diagonalization path.
        let u = sample::unitary(4, Seed::new(12)).unwrap();
        let diag = Mat::from_fn(4, 4, |i, j| {
            if i != j {
                C64::new(0.0, 0.0)
            } else {
                C64::new(0.0, [1.0, -1.0, 2.0, -1.0][i])
            }
        });
        let f = u.mul(&diag).mul(&u.dagger());
        let s = spectral_state_decomposition(&f, Tol::default()).unwrap();
        assert!(s.reconstruct_operator().max_abs_diff(&f) < 1e-10);
        assert!(orthonormal_columns(&s.vectors));
        let mut ims: Vec<f64> = s.eigenvalues.iter().map(|l| l.im).collect();
        ims.sort_by(f64::total_cmp);
        for (got, want) in ims.iter().zip(&[-1.0, -1.0, 1.0, 2.0]) {
            assert!((got - want).abs() < 1e-10);
        }
    }

    #[test]
    fn spectral_decomposition_of_unitary_lands_on_unit_circle() {
        let u = sample::unitary(5, Seed::new(33)).unwrap();
        let s = spectral_state_decomposition(&u, Tol::default()).unwrap();
        for l in &s.eigenvalues {
            assert!((l.norm() - 1.0).abs() < 1e-11);
        }
        assert!(s.reconstruct_operator().max_abs_diff(&u) < 1e-10);
    }

    #[test]
    fn spectral_decomposition_rejects_non_normal() {
        let f = Mat::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(matches!(
            spectral_state_decomposition(&f, Tol::default()),
            Err(Error::NotNormal { .. })
        ));
    }

    #[test]
    fn classify_pauli_y() {
        let y = Mat::from_fn(2, 2, |i, j| match (i, j) {
            (0, 1) => C64::new(0.0, -1.0),
            (1, 0) => C64::new(0.0, 1.0),
            _ => C64::new(0.0, 0.0),
        });
        let r = classify_operator_state(&y, Tol::default()).unwrap();
        assert!(!r.real.holds);
        assert!(!r.symmetric.unwrap().holds);
        assert!(r.antisymmetric.unwrap().holds);
        assert!(r.hermitian.unwrap().holds);
        assert!(r.unitary.unwrap().holds);
        assert!(!r.diagonal.holds);
        assert_eq!(r.schmidt_rank, 2);
        assert!(!r.factorizable);
    }

    #[test]
    fn classify_rank_one_real_matrix() {
        // |0⟩⟨1| is factorizable: vec is the product vector |1⟩⊗|0⟩.
        let f = Mat::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        let r = classify_operator_state(&f, Tol::default()).unwrap();
        assert!(r.real.holds);
        assert!(!r.hermitian.unwrap().holds);
        assert!(!r.unitary.unwrap().holds);
        assert_eq!(r.schmidt_rank, 1);
        assert!(r.factorizable);
    }

    #[test]
    fn classify_identity_and_rectangular() {
        let r = classify_operator_state(&Mat::identity(3), Tol::default()).unwrap();
        assert!(r.real.holds);
        assert!(r.symmetric.unwrap().holds);
        assert!(!r.antisymmetric.unwrap().holds);
        assert!(r.hermitian.unwrap().holds);
        assert!(r.unitary.unwrap().holds);
        assert!(r.diagonal.holds);
        assert_eq!(r.schmidt_rank, 3);
        assert!(!r.factorizable);

        let rect = Mat::from_real(2, 3, &[1.0, 0.0, 0.0, 0.0, 2.0, 0.0]);
        let r = classify_operator_state(&rect, Tol::default()).unwrap();
        assert!(r.symmetric.is_none());
        assert!(r.hermitian.is_none());
        assert!(r.real.holds);
        assert!(r.diagonal.holds);
        assert_eq!(r.schmidt_rank, 2);
    }

    #[test]
    fn classify_direct_and_dual_margins_agree() {
        let mut rng = Seed::new(77).rng();
        for _ in 0..6 {
            let f = sample::ginibre_from(&mut rng, 3, 3).unwrap();
            let r = classify_operator_state(&f, Tol::default()).unwrap();
            let checks = [
                r.real,
                r.diagonal,
                r.symmetric.unwrap(),
                r.antisymmetric.unwrap(),
                r.hermitian.unwrap(),
            ];
            for c in checks {
                assert!(
                    (c.direct_margin - c.dual_margin).abs() <= 1e-10 * (1.0 + c.direct_margin),
                    "margins disagree: {} vs {}",
                    c.direct_margin,
                    c.dual_margin
                );
            }
            let u = r.unitary.unwrap();
            assert!((u.direct_margin - u.dual_margin).abs() <= 1e-8 * (1.0 + u.direct_margin));
        }
    }

    #[test]
    fn symmetric_and_antisymmetric_only_for_zero() {
        let z = Mat::zeros(2, 2);
        let r = classify_operator_state(&z, Tol::default()).unwrap();
        assert!(r.symmetric.unwrap().holds && r.antisymmetric.unwrap().holds);
        assert_eq!(r.schmidt_rank, 0);
        assert!(!r.factorizable);
        // Any nonzero operator can satisfy at most one of the two.
        let f = sample::ginibre(3, 3, Seed::new(4)).unwrap();
        let r = classify_operator_state(&f, Tol::default()).unwrap();
        assert!(!(r.symmetric.unwrap().holds && r.antisymmetric.unwrap().holds));
    }
}
