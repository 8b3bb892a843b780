//! Channels and the channel–state duality: Choi matrices, superoperators,
//! Kraus sets, property verdicts, duals, and composition.
//!
//! A channel `Ω: End(A) → End(B)` is stored canonically as its unnormalized
//! Choi matrix `J(Ω) = Σ_ij |i⟩⟨j| ⊗ Ω(|i⟩⟨j|)` on `A ⊗ B` (input factor
//! major; `Tr J = dim_in` for trace-preserving channels). The superoperator
//! `S(Ω)`, defined by `vec(Ω(ρ)) = S·vec(ρ)`, carries the same data
//! reshuffled and is cached on first use. The density-operator reading of
//! the Choi matrix divides by `dim_in`; that scaling is available as
//! [`Channel::normalized_choi`] and never applied implicitly.
//!
//! Property verdicts follow the standard chain CPP ⟹ PP ⟹ HP:
//! hermiticity preservation is hermiticity of `J`, complete positivity
//! preservation is positivity of `J` (Choi's theorem), trace preservation is
//! `Tr_B J = I_A`, unitality is `Tr_A J = I_B`. Plain positivity
//! preservation has no eigenvalue test — `J` only needs to be nonnegative
//! against *product* vectors `conj(a) ⊗ b` — so [`Channel::check_pp`] runs a
//! randomized see-saw minimization and reports either a concrete violating
//! witness or the best value found.

mod pp;

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::numeric::sample;
use crate::numeric::{self, Mat, Seed, Tol, C64};
use crate::wires::{self, BiVec};

/// Default number of random restarts for the positivity-preservation
/// see-saw.
pub const DEFAULT_PP_RESTARTS: u32 = 32;

/// Default iteration cap per see-saw restart.
pub const DEFAULT_PP_MAX_ITERS: u32 = 200;

/// A linear map `Ω: End(A) → End(B)`, held as its unnormalized Choi matrix
/// with the input/output dimensions alongside.
#[derive(Clone, Debug)]
pub struct Channel {
    dim_in: usize,
    dim_out: usize,
    choi: Mat,
    superop: OnceLock<Mat>,
}

impl Channel {
    /// Wraps an unnormalized Choi matrix on `A ⊗ B`.
    pub fn from_choi(dim_in: usize, dim_out: usize, choi: Mat) -> Result<Channel> {
        if dim_in == 0 || dim_out == 0 {
            return Err(Error::Argument(
                "channel dimensions must be positive".into(),
            ));
        }
        if !choi.is_square() || choi.rows() != dim_in * dim_out {
            return Err(Error::Dimension(format!(
                "Choi matrix for a {dim_in}→{dim_out} channel must be {side}×{side}, got {}×{}",
                choi.rows(),
                choi.cols(),
                side = dim_in * dim_out
            )));
        }
        Ok(Channel {
            dim_in,
            dim_out,
            choi,
            superop: OnceLock::new(),
        })
    }

    /// Wraps a superoperator: the `dim_out²×dim_in²` matrix with
    /// `vec(Ω(ρ)) = S·vec(ρ)`.
    pub fn from_superop(dim_in: usize, dim_out: usize, superop: Mat) -> Result<Channel> {
        let choi = superop_to_choi(&superop, dim_in, dim_out)?;
        let channel = Channel {
            dim_in,
            dim_out,
            choi,
            superop: OnceLock::new(),
        };
        // Keep the caller's exact matrix so the cached route is bit-identical
        // to the input.
        let _ = channel.superop.set(superop);
        Ok(channel)
    }

    /// Builds the channel `ρ ↦ Σ_k f_k ρ f_k†`; its Choi matrix is
    /// `Σ_k |vec(f_k)⟩⟨vec(f_k)|`, so the result is completely positivity
    /// preserving by construction.
    pub fn from_kraus(kraus: &KrausSet) -> Channel {
        let (da, db) = (kraus.dim_in(), kraus.dim_out());
        let side = da * db;
        let mut choi = Mat::zeros(side, side);
        for f in kraus.operators() {
            let v = wires::vec(f);
            for r in 0..side {
                for c in 0..side {
                    choi.add_assign_at(r, c, v.entries()[r] * v.entries()[c].conj());
                }
            }
        }
        Channel {
            dim_in: da,
            dim_out: db,
            choi,
            superop: OnceLock::new(),
        }
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    /// The unnormalized Choi matrix on `A ⊗ B`.
    pub fn choi(&self) -> &Mat {
        &self.choi
    }

    /// The Choi matrix rescaled by `1/dim_in`, i.e. the density-operator
    /// reading (unit trace for trace-preserving channels).
    pub fn normalized_choi(&self) -> Mat {
        self.choi.scale(C64::new(1.0 / self.dim_in as f64, 0.0))
    }

    /// The superoperator, computed from the Choi matrix on first use and
    /// cached.
    pub fn superop(&self) -> &Mat {
        self.superop.get_or_init(|| {
            choi_to_superop(&self.choi, self.dim_in, self.dim_out)
                .expect("stored Choi matrix always has a consistent shape")
        })
    }

    /// Applies the channel via the superoperator route:
    /// `unvec(S·vec(ρ))`.
    pub fn apply(&self, rho: &Mat) -> Result<Mat> {
        self.check_input(rho)?;
        let out = self.superop().mul(&wires::vec(rho).as_column());
        let v = BiVec::from_column(&out, self.dim_out, self.dim_out)?;
        Ok(wires::unvec(&v))
    }

    /// Applies the channel by direct Choi contraction:
    /// `Ω(ρ)[m,n] = Σ_ij ρ[i,j]·J[(i,m),(j,n)]`. Agrees with [`Channel::apply`];
    /// both routes are kept so the representations stay mutually checkable.
    pub fn apply_via_choi(&self, rho: &Mat) -> Result<Mat> {
        self.check_input(rho)?;
        let (da, db) = (self.dim_in, self.dim_out);
        Ok(Mat::from_fn(db, db, |m, n| {
            let mut acc = C64::new(0.0, 0.0);
            for i in 0..da {
                for j in 0..da {
                    acc += rho.at(i, j) * self.choi.at(i * db + m, j * db + n);
                }
            }
            acc
        }))
    }

    fn check_input(&self, rho: &Mat) -> Result<()> {
        if (rho.rows(), rho.cols()) != (self.dim_in, self.dim_in) {
            return Err(Error::Dimension(format!(
                "channel input must be {d}×{d}, got {}×{}",
                rho.rows(),
                rho.cols(),
                d = self.dim_in
            )));
        }
        Ok(())
    }

    /// Extracts a Kraus set from the spectral decomposition of the Choi
    /// matrix: `f_k = unvec(√ω_k·ψ_k)` over eigenpairs above the rank
    /// threshold, in descending eigenvalue order. The operator count equals
    /// the Choi rank. Requires the channel to be completely positivity
    /// preserving within `tol`.
    ///
    /// Each operator's global phase is fixed by making its first nonzero
    /// entry (row-major scan) real positive, so the output is deterministic
    /// wherever the eigendecomposition is. Inside a degenerate eigenvalue
    /// block the operators remain basis-dependent; compare roundtrips as
    /// channels, not operator lists.
    pub fn kraus_decompose(&self, tol: Tol) -> Result<KrausSet> {
        let threshold = tol.threshold(self.choi.frobenius_norm());
        let residual = self.choi.sub(&self.choi.dagger()).frobenius_norm();
        if residual > threshold {
            return Err(Error::NotHermitian {
                residual,
                threshold,
            });
        }
        let eig = numeric::eig_hermitian(&self.choi.hermitize(), tol)?;
        let min = *eig.values.first().expect("Choi matrix is nonempty");
        if min < -threshold {
            return Err(Error::NotCpp {
                min_eigenvalue: min,
            });
        }
        let max = *eig.values.last().expect("Choi matrix is nonempty");
        let cutoff = tol.threshold(max.max(0.0));
        let mut operators = Vec::new();
        for k in (0..eig.values.len()).rev() {
            let omega = eig.values[k];
            if omega <= cutoff {
                break;
            }
            let scaled = eig.vectors.column(k).scale(C64::new(omega.sqrt(), 0.0));
            let v = BiVec::from_column(&scaled, self.dim_in, self.dim_out)?;
            operators.push(fix_phase(wires::unvec(&v)));
        }
        if operators.is_empty() {
            // The zero channel: rank 0, represented by a single zero operator.
            operators.push(Mat::zeros(self.dim_out, self.dim_in));
        }
        KrausSet::new(operators)
    }

    /// Full property verdict: hermiticity preservation, complete positivity
    /// preservation, the see-saw positivity-preservation search, trace
    /// preservation, unitality, the doubly-stochastic flag, and the Choi
    /// trace. Verdicts are reported with their residuals; nothing here
    /// errors.
    pub fn property_report(&self, tol: Tol, pp_restarts: u32, seed: Seed) -> PropertyReport {
        let j = &self.choi;
        let threshold = tol.threshold(j.frobenius_norm());

        let hp_residual = j.sub(&j.dagger()).frobenius_norm();
        let hp = PropertyCheck {
            holds: hp_residual <= threshold,
            residual: hp_residual,
            threshold,
        };

        let jh = j.hermitize();
        let eig = numeric::eig_hermitian(&jh, tol).expect("hermitized matrix");
        let min_eigenvalue = *eig.values.first().expect("Choi matrix is nonempty");
        // CPP additionally requires HP: positivity of the hermitized Choi
        // matrix alone says nothing about a non-hermitian one, and the
        // verdict chain CPP ⟹ PP ⟹ HP must stay sound.
        let cpp = CppCheck {
            holds: hp.holds && min_eigenvalue >= -threshold,
            min_eigenvalue,
            threshold,
        };

        let identity_in = Mat::identity(self.dim_in);
        let tp_residual = numeric::partial_trace(j, &[self.dim_in, self.dim_out], &[0])
            .expect("factor dims match the Choi side")
            .sub(&identity_in)
            .frobenius_norm();
        let tp = PropertyCheck {
            holds: tp_residual <= threshold,
            residual: tp_residual,
            threshold,
        };

        let identity_out = Mat::identity(self.dim_out);
        let unital_residual = numeric::partial_trace(j, &[self.dim_in, self.dim_out], &[1])
            .expect("factor dims match the Choi side")
            .sub(&identity_out)
            .frobenius_norm();
        let unital = PropertyCheck {
            holds: unital_residual <= threshold,
            residual: unital_residual,
            threshold,
        };

        let pp = if hp.holds {
            pp::search(
                &jh,
                self.dim_in,
                self.dim_out,
                tol,
                pp_restarts,
                DEFAULT_PP_MAX_ITERS,
                seed,
            )
        } else {
            PpVerdict::HermiticityFailed {
                residual: hp_residual,
            }
        };

        let doubly_stochastic = tp.holds && unital.holds && self.dim_in == self.dim_out;

        PropertyReport {
            dim_in: self.dim_in,
            dim_out: self.dim_out,
            choi_trace: j.trace().re,
            hp,
            cpp,
            pp,
            tp,
            unital,
            doubly_stochastic,
        }
    }

    /// See-saw search for a positivity-preservation violation: minimizes
    /// `q(a,b) = ⟨conj(a)⊗b| J |conj(a)⊗b⟩ = ⟨b| Ω(aa†) |b⟩` over unit
    /// vectors by alternating exact eigenvector updates, with `restarts`
    /// independent random initializations (seed-split, order-independent).
    ///
    /// Returns a witness if the best value is below `−(rel·‖J‖_F + abs)`,
    /// otherwise the best value found — a heuristic "no violation found",
    /// not a proof of positivity preservation. Requires hermiticity
    /// preservation; otherwise `q` is not even real.
    pub fn check_pp(&self, tol: Tol, restarts: u32, max_iters: u32, seed: Seed) -> PpVerdict {
        let residual = self.choi.sub(&self.choi.dagger()).frobenius_norm();
        if residual > tol.threshold(self.choi.frobenius_norm()) {
            return PpVerdict::HermiticityFailed { residual };
        }
        pp::search(
            &self.choi.hermitize(),
            self.dim_in,
            self.dim_out,
            tol,
            restarts,
            max_iters,
            seed,
        )
    }

    /// The dual (adjoint) channel `Ω*: End(B) → End(A)` with respect to the
    /// Hilbert–Schmidt inner product: `hs_inner(e, Ω(ρ)) =
    /// hs_inner(Ω*(e), ρ)`. Its Choi matrix is
    /// `swap·conj(J)·swap` and its superoperator is `S(Ω)†`. Dualizing
    /// exchanges trace preservation with unitality and preserves HP/PP/CPP.
    pub fn dual(&self) -> Channel {
        let fwd = wires::swap(self.dim_in, self.dim_out).expect("dims are positive");
        let back = wires::swap(self.dim_out, self.dim_in).expect("dims are positive");
        let choi = fwd.mul(&self.choi.conj()).mul(&back);
        Channel {
            dim_in: self.dim_out,
            dim_out: self.dim_in,
            choi,
            superop: OnceLock::new(),
        }
    }

    /// Sequential composition: `self` from `A` to `B`, then `then` from `B`
    /// to `C`. The Choi matrices contract over the middle space:
    /// `J[(a,c),(a',c')] = Σ_{b,b'} J₁[(a,b),(a',b')]·J₂[(b,c),(b',c')]`,
    /// which equals conjugating `J₁⊗J₂` with `I_A ⊗ cap(B) ⊗ I_C`. On the
    /// superoperator side this is the plain product `S₂·S₁`.
    pub fn concatenate(&self, then: &Channel) -> Result<Channel> {
        if self.dim_out != then.dim_in {
            return Err(Error::Dimension(format!(
                "cannot concatenate a →{} channel into a {}→ channel",
                self.dim_out, then.dim_in
            )));
        }
        let (da, db, dc) = (self.dim_in, self.dim_out, then.dim_out);
        let side = da * dc;
        let choi = Mat::from_fn(side, side, |row, col| {
            let (a, c) = (row / dc, row % dc);
            let (ap, cp) = (col / dc, col % dc);
            let mut acc = C64::new(0.0, 0.0);
            for b in 0..db {
                for bp in 0..db {
                    acc += self.choi.at(a * db + b, ap * db + bp)
                        * then.choi.at(b * dc + c, bp * dc + cp);
                }
            }
            acc
        });
        Ok(Channel {
            dim_in: da,
            dim_out: dc,
            choi,
            superop: OnceLock::new(),
        })
    }

    /// Parallel composition `Ω₁ ⊗ Ω₂` on `A₁⊗A₂ → B₁⊗B₂`. The Choi matrix
    /// is `J₁⊗J₂` with the middle factors regrouped, i.e. conjugation by
    /// `I ⊗ swap(dim_out₁, dim_in₂) ⊗ I`.
    pub fn tensor(&self, other: &Channel) -> Channel {
        let (a1, b1) = (self.dim_in, self.dim_out);
        let (a2, b2) = (other.dim_in, other.dim_out);
        let (din, dout) = (a1 * a2, b1 * b2);
        let choi = Mat::from_fn(din * dout, din * dout, |row, col| {
            let (x, y) = (row / dout, row % dout);
            let (x1, x2) = (x / a2, x % a2);
            let (y1, y2) = (y / b2, y % b2);
            let (xp, yp) = (col / dout, col % dout);
            let (x1p, x2p) = (xp / a2, xp % a2);
            let (y1p, y2p) = (yp / b2, yp % b2);
            self.choi.at(x1 * b1 + y1, x1p * b1 + y1p) * other.choi.at(x2 * b2 + y2, x2p * b2 + y2p)
        });
        Channel {
            dim_in: din,
            dim_out: dout,
            choi,
            superop: OnceLock::new(),
        }
    }

    /// Frobenius distance between the Choi matrices of two channels with
    /// equal dimensions — the gauge-free way to compare channels.
    pub fn choi_distance(&self, other: &Channel) -> Result<f64> {
        if (self.dim_in, self.dim_out) != (other.dim_in, other.dim_out) {
            return Err(Error::Dimension(format!(
                "cannot compare a {}→{} channel with a {}→{} channel",
                self.dim_in, self.dim_out, other.dim_in, other.dim_out
            )));
        }
        Ok(self.choi.sub(&other.choi).frobenius_norm())
    }

    /// The identity channel on dimension `dim`: `S = I`, `J = cup·cup†`.
    pub fn identity(dim: usize) -> Result<Channel> {
        if dim == 0 {
            return Err(Error::Argument("channel dimension must be positive".into()));
        }
        Ok(Channel::from_kraus(&KrausSet::new(vec![Mat::identity(
            dim,
        )])?))
    }

    /// The unitary conjugation channel `ρ ↦ UρU†`.
    pub fn unitary(u: &Mat, tol: Tol) -> Result<Channel> {
        if !u.is_square() {
            return Err(Error::Dimension(format!(
                "unitary channel needs a square matrix, got {}×{}",
                u.rows(),
                u.cols()
            )));
        }
        let residual = u
            .dagger()
            .mul(u)
            .sub(&Mat::identity(u.cols()))
            .frobenius_norm();
        let threshold = tol.threshold(u.frobenius_norm().powi(2));
        if residual > threshold {
            return Err(Error::NotUnitary {
                residual,
                threshold,
            });
        }
        Ok(Channel::from_kraus(&KrausSet::new(vec![u.clone()])?))
    }

    /// The erasure channel `ρ ↦ Tr(ρ)·ρ_out`: every input is replaced by the
    /// fixed output state. Its Choi matrix is `I_A ⊗ ρ_out`.
    pub fn erasure(rho_out: &Mat, dim_in: usize, tol: Tol) -> Result<Channel> {
        if dim_in == 0 {
            return Err(Error::Argument("channel dimension must be positive".into()));
        }
        validate_density(rho_out, tol)?;
        Channel::from_choi(dim_in, rho_out.rows(), Mat::identity(dim_in).kron(rho_out))
    }

    /// The transpose map `ρ ↦ ρᵀ`. Both its superoperator and its Choi
    /// matrix equal `swap(dim, dim)`; the model case of a positivity
    /// preserving but not *completely* positivity preserving map.
    pub fn transpose(dim: usize) -> Result<Channel> {
        Channel::from_choi(dim, dim, wires::swap(dim, dim)?)
    }

    /// Partial transpose `I ⊗ T` on `dim_keep ⊗ dim_t`: transposes only the
    /// second factor. Not positivity preserving for `dim_keep, dim_t ≥ 2`.
    pub fn partial_transpose(dim_keep: usize, dim_t: usize) -> Result<Channel> {
        Ok(Channel::identity(dim_keep)?.tensor(&Channel::transpose(dim_t)?))
    }

    /// The erasure channel onto the maximally mixed state, `J = I/dim_out`.
    pub fn max_entropy_erasure(dim_in: usize, dim_out: usize) -> Result<Channel> {
        if dim_out == 0 {
            return Err(Error::Argument("channel dimension must be positive".into()));
        }
        let mixed = Mat::identity(dim_out).scale(C64::new(1.0 / dim_out as f64, 0.0));
        Channel::erasure(&mixed, dim_in, Tol::default())
    }
}

/// Reshuffles a superoperator into the Choi matrix. Both carry the same
/// entries; the index law under the crate's conventions is
/// `J[(i,m),(j,n)] = S[(n,m),(j,i)]`. The permutation preserves the
/// Hilbert–Schmidt norm and is exactly invertible ([`choi_to_superop`]).
pub fn superop_to_choi(s: &Mat, dim_in: usize, dim_out: usize) -> Result<Mat> {
    if dim_in == 0 || dim_out == 0 {
        return Err(Error::Argument(
            "channel dimensions must be positive".into(),
        ));
    }
    if (s.rows(), s.cols()) != (dim_out * dim_out, dim_in * dim_in) {
        return Err(Error::Dimension(format!(
            "superoperator for a {dim_in}→{dim_out} channel must be {}×{}, got {}×{}",
            dim_out * dim_out,
            dim_in * dim_in,
            s.rows(),
            s.cols()
        )));
    }
    let side = dim_in * dim_out;
    Ok(Mat::from_fn(side, side, |row, col| {
        let (i, m) = (row / dim_out, row % dim_out);
        let (j, n) = (col / dim_out, col % dim_out);
        s.at(n * dim_out + m, j * dim_in + i)
    }))
}

/// Inverse reshuffle: Choi matrix to superoperator,
/// `S[(n,m),(j,i)] = J[(i,m),(j,n)]`.
pub fn choi_to_superop(j: &Mat, dim_in: usize, dim_out: usize) -> Result<Mat> {
    if dim_in == 0 || dim_out == 0 {
        return Err(Error::Argument(
            "channel dimensions must be positive".into(),
        ));
    }
    let side = dim_in * dim_out;
    if !j.is_square() || j.rows() != side {
        return Err(Error::Dimension(format!(
            "Choi matrix for a {dim_in}→{dim_out} channel must be {side}×{side}, got {}×{}",
            j.rows(),
            j.cols()
        )));
    }
    Ok(Mat::from_fn(
        dim_out * dim_out,
        dim_in * dim_in,
        |row, col| {
            let (n, m) = (row / dim_out, row % dim_out);
            let (jj, i) = (col / dim_in, col % dim_in);
            j.at(i * dim_out + m, jj * dim_out + n)
        },
    ))
}

/// Rescales a matrix so its leading entry is real positive: the first entry
/// above a relative floor in row-major order is rotated onto the positive
/// real axis.
fn fix_phase(f: Mat) -> Mat {
    let floor = 1e-12 * f.max_abs();
    match f.entries().iter().find(|z| z.norm() > floor) {
        Some(&z) => {
            let phase = z / z.norm();
            f.scale(phase.conj())
        }
        None => f,
    }
}

fn validate_density(rho: &Mat, tol: Tol) -> Result<()> {
    if !rho.is_square() {
        return Err(Error::NotDensity(format!(
            "not square: {}×{}",
            rho.rows(),
            rho.cols()
        )));
    }
    let eig = match numeric::eig_hermitian(rho, tol) {
        Ok(eig) => eig,
        Err(Error::NotHermitian {
            residual,
            threshold,
        }) => {
            return Err(Error::NotDensity(format!(
                "not hermitian: residual {residual:.3e} exceeds {threshold:.3e}"
            )));
        }
        Err(e) => return Err(e),
    };
    let min = *eig.values.first().expect("dimension is positive");
    if min < -tol.threshold(rho.frobenius_norm()) {
        return Err(Error::NotDensity(format!("negative eigenvalue {min:.6e}")));
    }
    let trace = rho.trace();
    if (trace.re - 1.0).abs() > tol.threshold(1.0) || trace.im.abs() > tol.threshold(1.0) {
        return Err(Error::NotDensity(format!(
            "trace {:.6}{:+.6}i is not 1",
            trace.re, trace.im
        )));
    }
    Ok(())
}

/// A Kraus representation: a nonempty list of equal-shape `dim_out×dim_in`
/// operators defining `Ω(ρ) = Σ_k f_k ρ f_k†`.
#[derive(Clone, Debug)]
pub struct KrausSet {
    operators: Vec<Mat>,
}

impl KrausSet {
    pub fn new(operators: Vec<Mat>) -> Result<KrausSet> {
        let first = operators.first().ok_or_else(|| {
            Error::Argument("Kraus set must contain at least one operator".into())
        })?;
        let shape = (first.rows(), first.cols());
        if operators.iter().any(|f| (f.rows(), f.cols()) != shape) {
            return Err(Error::Dimension(
                "all Kraus operators must have the same shape".into(),
            ));
        }
        Ok(KrausSet { operators })
    }

    pub fn operators(&self) -> &[Mat] {
        &self.operators
    }

    pub fn count(&self) -> usize {
        self.operators.len()
    }

    pub fn dim_in(&self) -> usize {
        self.operators[0].cols()
    }

    pub fn dim_out(&self) -> usize {
        self.operators[0].rows()
    }

    /// Applies the operator sum `Σ_k f_k ρ f_k†` directly.
    pub fn apply(&self, rho: &Mat) -> Result<Mat> {
        if (rho.rows(), rho.cols()) != (self.dim_in(), self.dim_in()) {
            return Err(Error::Dimension(format!(
                "Kraus input must be {d}×{d}, got {}×{}",
                rho.rows(),
                rho.cols(),
                d = self.dim_in()
            )));
        }
        let mut out = Mat::zeros(self.dim_out(), self.dim_out());
        for f in &self.operators {
            out = out.add(&f.mul(rho).mul(&f.dagger()));
        }
        Ok(out)
    }

    /// Completeness residual `‖Σ_k f_k†f_k − I‖_F`; zero exactly for
    /// trace-preserving sets.
    pub fn completeness_residual(&self) -> f64 {
        self.completeness_sum()
            .sub(&Mat::identity(self.dim_in()))
            .frobenius_norm()
    }

    fn completeness_sum(&self) -> Mat {
        let mut sum = Mat::zeros(self.dim_in(), self.dim_in());
        for f in &self.operators {
            sum = sum.add(&f.dagger().mul(f));
        }
        sum
    }

    pub fn is_trace_preserving(&self, tol: Tol) -> bool {
        let scale: f64 = self
            .operators
            .iter()
            .map(|f| f.frobenius_norm().powi(2))
            .sum();
        self.completeness_residual() <= tol.threshold(scale.max(1.0))
    }

    /// The superoperator `Σ_k conj(f_k) ⊗ f_k` assembled directly from the
    /// operators (an independent route to [`Channel::superop`]).
    pub fn superop(&self) -> Mat {
        let (da, db) = (self.dim_in(), self.dim_out());
        let mut s = Mat::zeros(db * db, da * da);
        for f in &self.operators {
            s = s.add(&f.conj().kron(f));
        }
        s
    }

    /// Random Kraus set: `count` independent complex gaussian operators,
    /// scaled so the completeness sum has expectation `I` (near, not
    /// exactly, trace preserving).
    pub fn sample(dim_in: usize, dim_out: usize, count: usize, seed: Seed) -> Result<KrausSet> {
        if count == 0 {
            return Err(Error::Argument(
                "Kraus set must contain at least one operator".into(),
            ));
        }
        let mut rng = seed.rng();
        let scale = C64::new(1.0 / ((count * dim_out) as f64).sqrt(), 0.0);
        let operators = (0..count)
            .map(|_| sample::ginibre_from(&mut rng, dim_out, dim_in).map(|g| g.scale(scale)))
            .collect::<Result<Vec<_>>>()?;
        KrausSet::new(operators)
    }

    /// Random *exactly* trace-preserving Kraus set: a random set
    /// right-normalized by `(Σf†f)^{−1/2}`. Requires
    /// `count·dim_out ≥ dim_in`, otherwise no trace-preserving set of that
    /// size exists.
    pub fn sample_tp(dim_in: usize, dim_out: usize, count: usize, seed: Seed) -> Result<KrausSet> {
        if count * dim_out < dim_in {
            return Err(Error::Argument(format!(
                "{count} operators of shape {dim_out}×{dim_in} cannot be trace preserving: \
                 Σf†f has rank at most {}",
                count * dim_out
            )));
        }
        let raw = KrausSet::sample(dim_in, dim_out, count, seed)?;
        let correction = inv_sqrt_psd(&raw.completeness_sum())?;
        let operators = raw.operators.iter().map(|f| f.mul(&correction)).collect();
        KrausSet::new(operators)
    }
}

/// Inverse square root of a strictly positive hermitian matrix via its
/// eigendecomposition.
fn inv_sqrt_psd(t: &Mat) -> Result<Mat> {
    let eig = numeric::eig_hermitian(t, Tol::default())?;
    let max = *eig.values.last().expect("dimension is positive");
    let min = *eig.values.first().expect("dimension is positive");
    if min <= Tol::default().threshold(max.max(0.0)) {
        return Err(Error::Computation(format!(
            "matrix is singular within tolerance (min eigenvalue {min:.3e}); \
             cannot form an inverse square root"
        )));
    }
    let d = t.rows();
    let mut out = Mat::zeros(d, d);
    for (k, &lambda) in eig.values.iter().enumerate() {
        let w = C64::new(1.0 / lambda.sqrt(), 0.0);
        for i in 0..d {
            for j in 0..d {
                let term = eig.vectors.at(i, k) * eig.vectors.at(j, k).conj();
                out.add_assign_at(i, j, w * term);
            }
        }
    }
    Ok(out)
}

/// One boolean channel property with the residual it was decided on.
#[derive(Clone, Copy, Debug)]
pub struct PropertyCheck {
    pub holds: bool,
    pub residual: f64,
    pub threshold: f64,
}

/// Complete-positivity verdict: the minimum eigenvalue of the hermitized
/// Choi matrix against the acceptance threshold.
#[derive(Clone, Copy, Debug)]
pub struct CppCheck {
    pub holds: bool,
    pub min_eigenvalue: f64,
    pub threshold: f64,
}

/// Outcome of the positivity-preservation see-saw.
#[derive(Clone, Debug)]
pub enum PpVerdict {
    /// A product state witnessing `q(a,b) < −threshold`.
    Violation(PpWitness),
    /// No violating product state found; the best (lowest) objective value
    /// over all restarts is reported. This is heuristic evidence, not a
    /// proof of positivity preservation.
    NoViolationFound { best_value: f64, restarts: u32 },
    /// The Choi matrix is not hermitian, so the objective is ill-posed.
    HermiticityFailed { residual: f64 },
}

impl PpVerdict {
    pub fn is_violation(&self) -> bool {
        matches!(self, PpVerdict::Violation(_))
    }
}

/// A positivity-preservation violation: unit vectors with
/// `value = ⟨conj(a)⊗b| J |conj(a)⊗b⟩ = ⟨b| Ω(aa†) |b⟩ < −threshold`,
/// i.e. the channel maps the pure state `aa†` to an operator with a
/// negative expectation.
#[derive(Clone, Debug)]
pub struct PpWitness {
    /// Unit column `a` in the input space.
    pub input: Mat,
    /// Unit column `b` in the output space.
    pub output: Mat,
    pub value: f64,
    pub threshold: f64,
}

/// Property verdicts for one channel, each with its numeric margin.
#[derive(Clone, Debug)]
pub struct PropertyReport {
    pub dim_in: usize,
    pub dim_out: usize,
    /// `Tr J = Tr Ω(I)`: equals `dim_in` for TP channels, `dim_out` for
    /// unital ones.
    pub choi_trace: f64,
    /// Hermiticity preservation: `J = J†`.
    pub hp: PropertyCheck,
    /// Complete positivity preservation: `J ⪰ 0` (and HP).
    pub cpp: CppCheck,
    /// Positivity preservation, decided by randomized search.
    pub pp: PpVerdict,
    /// Trace preservation: `Tr_B J = I_A`.
    pub tp: PropertyCheck,
    /// Unitality: `Tr_A J = I_B`.
    pub unital: PropertyCheck,
    /// Trace preserving and unital (which forces `dim_in = dim_out`).
    pub doubly_stochastic: bool,
}
