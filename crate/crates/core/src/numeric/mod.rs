//! Shared numeric kernels: dense complex matrices, hermitian
//! eigendecomposition, singular value decomposition, partial traces, and
//! seeded random sampling.
//!
//! Everything downstream (operator–state conversions, channel
//! representations, diagram evaluation) is built on these kernels, so their
//! index conventions are normative for the whole crate. General
//! (non-hermitian, non-normal) eigendecomposition is deliberately out of
//! scope; callers needing spectra of normal operators go through
//! [`crate::map_state::spectral_state_decomposition`].

mod decomp;
mod mat;
pub mod sample;

pub use decomp::{eig_hermitian, svd, HermitianEig, SvdDecomp};
pub use mat::{Mat, C64};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Two-knob numeric tolerance. A comparison at scale `s` passes when the
/// residual is at most `rel·s + abs`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tol {
    pub rel: f64,
    pub abs: f64,
}

impl Default for Tol {
    fn default() -> Self {
        Tol {
            rel: 1e-9,
            abs: 1e-12,
        }
    }
}

impl Tol {
    pub fn new(rel: f64, abs: f64) -> Tol {
        Tol { rel, abs }
    }

    /// Acceptance threshold for a residual measured at the given scale
    /// (typically a Frobenius norm).
    pub fn threshold(&self, scale: f64) -> f64 {
        self.rel * scale + self.abs
    }
}

/// Seed for the crate's deterministic random generator.
///
/// Every sampling entry point derives a ChaCha8 stream cipher generator
/// ([`ChaCha8Rng`]) from the seed, so results are reproducible across runs
/// and platforms. Independent substreams for parallel work come from
/// [`Seed::stream`], which keeps the same key and varies the cipher's stream
/// number.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Seed {
    pub value: u64,
}

impl Seed {
    pub fn new(value: u64) -> Seed {
        Seed { value }
    }

    /// Base generator for this seed (stream 0).
    pub fn rng(self) -> ChaCha8Rng {
        self.stream(0)
    }

    /// Independent generator `index` derived from this seed. Distinct
    /// indices give statistically independent, individually reproducible
    /// streams.
    pub fn stream(self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.value);
        rng.set_stream(index);
        rng
    }
}

/// Hilbert–Schmidt inner product `⟨f, g⟩ = Tr(f†·g) = Σ conj(f[m,i])·g[m,i]`.
pub fn hs_inner(f: &Mat, g: &Mat) -> Result<C64> {
    if (f.rows(), f.cols()) != (g.rows(), g.cols()) {
        return Err(Error::Dimension(format!(
            "Hilbert–Schmidt inner product needs equal shapes, got {}×{} and {}×{}",
            f.rows(),
            f.cols(),
            g.rows(),
            g.cols()
        )));
    }
    Ok(f.entries()
        .iter()
        .zip(g.entries())
        .map(|(a, b)| a.conj() * b)
        .sum())
}

/// Partial trace of `m` over the tensor factors *not* listed in `keep`.
///
/// `dims` lists the factor dimensions in left-factor-major order and must
/// multiply to the side of the square matrix `m`. `keep` selects the factors
/// that survive; the result is ordered by ascending factor index. Tracing
/// preserves the full trace: `trace(partial_trace(m, …)) == trace(m)`.
pub fn partial_trace(m: &Mat, dims: &[usize], keep: &[usize]) -> Result<Mat> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "partial trace needs a square matrix, got {}×{}",
            m.rows(),
            m.cols()
        )));
    }
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::Argument("factor dimensions must be positive".into()));
    }
    let side: usize = dims.iter().product();
    if side != m.rows() {
        return Err(Error::Dimension(format!(
            "factor dimensions {dims:?} multiply to {side}, matrix side is {}",
            m.rows()
        )));
    }
    if keep.is_empty() {
        return Err(Error::Argument("keep set must not be empty".into()));
    }
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if kept.len() != keep.len() {
        return Err(Error::Argument(
            "keep set contains duplicate factors".into(),
        ));
    }
    if *kept.last().unwrap() >= dims.len() {
        return Err(Error::Argument(format!(
            "keep set {keep:?} references a factor outside 0..{}",
            dims.len()
        )));
    }

    // Stride of factor f in the composite index (left-factor-major).
    let mut stride = vec![1usize; dims.len()];
    for f in (0..dims.len().saturating_sub(1)).rev() {
        stride[f] = stride[f + 1] * dims[f + 1];
    }
    let traced: Vec<usize> = (0..dims.len()).filter(|f| !kept.contains(f)).collect();
    let kept_dims: Vec<usize> = kept.iter().map(|&f| dims[f]).collect();
    let traced_dims: Vec<usize> = traced.iter().map(|&f| dims[f]).collect();
    let out_side: usize = kept_dims.iter().product();
    let traced_side: usize = traced_dims.iter().product();

    // Offset of composite index `idx` (over the listed dims) into the full
    // index, using the strides of the listed factors.
    let offset = |idx: usize, factors: &[usize], factor_dims: &[usize]| -> usize {
        let mut rem = idx;
        let mut full = 0;
        for (pos, &f) in factors.iter().enumerate() {
            let block: usize = factor_dims[pos + 1..].iter().product();
            full += (rem / block) * stride[f];
            rem %= block;
        }
        full
    };

    let mut out = Mat::zeros(out_side, out_side);
    for r in 0..out_side {
        let r_off = offset(r, &kept, &kept_dims);
        for c in 0..out_side {
            let c_off = offset(c, &kept, &kept_dims);
            let mut acc = C64::new(0.0, 0.0);
            for t in 0..traced_side {
                let t_off = offset(t, &traced, &traced_dims);
                acc += m.at(r_off + t_off, c_off + t_off);
            }
            out.set(r, c, acc);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hs_inner_worked_example() {
        // f = [[1,0],[0,1]], g = [[1,2],[3,4]] → Tr(f†g) = 5
        let f = Mat::identity(2);
        let g = Mat::from_real(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(hs_inner(&f, &g).unwrap(), C64::new(5.0, 0.0));
        assert!(hs_inner(&f, &Mat::identity(3)).is_err());
    }

    #[test]
    fn hs_inner_conjugates_first_argument() {
        let f = Mat::from_fn(1, 1, |_, _| C64::new(0.0, 2.0));
        let g = Mat::from_fn(1, 1, |_, _| C64::new(0.0, 3.0));
        assert_eq!(hs_inner(&f, &g).unwrap(), C64::new(6.0, 0.0));
    }

    #[test]
    fn partial_trace_of_kron_factorizes() {
        let x = Mat::from_real(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        let y = Mat::from_real(3, 3, &[1.0, 0.0, 2.0, 0.0, 5.0, 0.0, 1.0, 0.0, 3.0]);
        let m = x.kron(&y);
        let tx = partial_trace(&m, &[2, 3], &[0]).unwrap();
        let ty = partial_trace(&m, &[2, 3], &[1]).unwrap();
        // Tr_B(x ⊗ y) = Tr(y)·x and vice versa
        assert!(tx.max_abs_diff(&x.scale(y.trace())) < 1e-14);
        assert!(ty.max_abs_diff(&y.scale(x.trace())) < 1e-14);
    }

    #[test]
    fn partial_trace_preserves_full_trace() {
        let m = Mat::from_fn(12, 12, |i, j| {
            C64::new((i * 17 + j) as f64, (i as f64) - (j as f64))
        });
        for keep in [vec![0], vec![1], vec![2], vec![0, 2]] {
            let t = partial_trace(&m, &[2, 3, 2], &keep).unwrap();
            assert!((t.trace() - m.trace()).norm() < 1e-12);
        }
    }

    #[test]
    fn partial_trace_rejects_bad_arguments() {
        let m = Mat::identity(6);
        assert!(matches!(
            partial_trace(&m, &[2, 2], &[0]),
            Err(Error::Dimension(_))
        ));
        assert!(matches!(
            partial_trace(&m, &[2, 3], &[]),
            Err(Error::Argument(_))
        ));
        assert!(matches!(
            partial_trace(&m, &[2, 3], &[2]),
            Err(Error::Argument(_))
        ));
        assert!(matches!(
            partial_trace(&m, &[2, 3], &[0, 0]),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn seed_streams_are_reproducible_and_distinct() {
        use rand::Rng;
        let s = Seed::new(7);
        let a: f64 = s.stream(1).random();
        let b: f64 = s.stream(1).random();
        let c: f64 = s.stream(2).random();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
