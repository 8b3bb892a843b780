//! Seeded random sampling of matrices, states, and densities.
//!
//! All distributions are driven by [`ChaCha8Rng`], so a fixed [`Seed`] gives
//! bit-identical output across runs and platforms. Each `*_from` variant
//! draws from a caller-supplied generator, which lets a single stream feed
//! several samples in a fixed order.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::numeric::decomp::{from_na, to_na};
use crate::numeric::{Mat, Seed, C64};

fn check_dim(d: usize, what: &str) -> Result<()> {
    if d == 0 {
        Err(Error::Argument(format!(
            "{what} dimension must be positive"
        )))
    } else {
        Ok(())
    }
}

fn standard_complex(rng: &mut ChaCha8Rng) -> C64 {
    // Re and Im each N(0, 1/2), so E|z|² = 1.
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Complex Ginibre matrix: independent standard complex gaussian entries.
pub fn ginibre(rows: usize, cols: usize, seed: Seed) -> Result<Mat> {
    ginibre_from(&mut seed.rng(), rows, cols)
}

pub fn ginibre_from(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Result<Mat> {
    check_dim(rows, "row")?;
    check_dim(cols, "column")?;
    let entries = (0..rows * cols).map(|_| standard_complex(rng)).collect();
    Mat::new(rows, cols, entries)
}

/// Haar-distributed unitary: QR of a Ginibre matrix with each column of `q`
/// rephased by the corresponding diagonal of `r` (the standard correction
/// that makes the QR output Haar rather than merely unitary).
pub fn unitary(dim: usize, seed: Seed) -> Result<Mat> {
    unitary_from(&mut seed.rng(), dim)
}

pub fn unitary_from(rng: &mut ChaCha8Rng, dim: usize) -> Result<Mat> {
    let g = ginibre_from(rng, dim, dim)?;
    let qr = to_na(&g).qr();
    let q = from_na(&qr.q());
    let r = qr.r();
    Ok(Mat::from_fn(dim, dim, |i, j| {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        q.at(i, j) * phase
    }))
}

/// Haar-distributed pure state as a `dim×1` unit column.
pub fn pure_state(dim: usize, seed: Seed) -> Result<Mat> {
    pure_state_from(&mut seed.rng(), dim)
}

pub fn pure_state_from(rng: &mut ChaCha8Rng, dim: usize) -> Result<Mat> {
    let g = ginibre_from(rng, dim, 1)?;
    let norm = g.frobenius_norm();
    assert!(norm > 0.0, "gaussian vector is zero");
    Ok(g.scale(C64::new(1.0 / norm, 0.0)))
}

/// Random density operator `g·g†/Tr(g·g†)` with `g` Ginibre.
pub fn density(dim: usize, seed: Seed) -> Result<Mat> {
    density_from(&mut seed.rng(), dim)
}

pub fn density_from(rng: &mut ChaCha8Rng, dim: usize) -> Result<Mat> {
    let g = ginibre_from(rng, dim, dim)?;
    let rho = g.mul(&g.dagger());
    let tr = rho.trace().re;
    assert!(tr > 0.0, "gaugeless density has zero trace");
    Ok(rho.scale(C64::new(1.0 / tr, 0.0)))
}

/// Random separable density on `dim_a ⊗ dim_b`: a convex mixture of `terms`
/// product densities with Dirichlet(1,…,1) weights.
pub fn separable_density(dim_a: usize, dim_b: usize, terms: usize, seed: Seed) -> Result<Mat> {
    separable_density_from(&mut seed.rng(), dim_a, dim_b, terms)
}

pub fn separable_density_from(
    rng: &mut ChaCha8Rng,
    dim_a: usize,
    dim_b: usize,
    terms: usize,
) -> Result<Mat> {
    check_dim(dim_a, "first factor")?;
    check_dim(dim_b, "second factor")?;
    if terms == 0 {
        return Err(Error::Argument(
            "separable mixture needs at least one term".into(),
        ));
    }
    // Exponential(1) draws normalized to a flat Dirichlet weight vector.
    let mut weights: Vec<f64> = (0..terms)
        .map(|_| -(1.0 - rng.random::<f64>()).ln())
        .collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    let mut rho = Mat::zeros(dim_a * dim_b, dim_a * dim_b);
    for w in weights {
        let a = density_from(rng, dim_a)?;
        let b = density_from(rng, dim_b)?;
        rho = rho.add(&a.kron(&b).scale(C64::new(w, 0.0)));
    }
    Ok(rho)
}
