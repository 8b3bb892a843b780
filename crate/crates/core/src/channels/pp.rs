//! See-saw minimization of `q(a,b) = ⟨conj(a)⊗b| J |conj(a)⊗b⟩` over unit
//! product vectors.
//!
//! Positivity preservation asks whether `q(a,b) ≥ 0` for all `a, b`: writing
//! `q(a,b) = ⟨b| Ω(aa†) |b⟩` shows a negative value exhibits a pure input
//! state with a non-positive image. For fixed `a` the objective is a
//! quadratic form `⟨b| M(a) |b⟩` in `b`, and for fixed `b` a quadratic form
//! `⟨conj(a)| N(b) |conj(a)⟩` in `conj(a)`, so each half-step is an exact
//! hermitian eigenproblem and the objective descends monotonically. The
//! search is restarted from independent random product states; restarts run
//! in parallel on split RNG streams, which keeps the outcome independent of
//! thread scheduling.

use rayon::prelude::*;

use crate::numeric::{self, sample, Mat, Seed, Tol, C64};

use super::{PpVerdict, PpWitness};

pub(super) fn search(
    jh: &Mat,
    dim_in: usize,
    dim_out: usize,
    tol: Tol,
    restarts: u32,
    max_iters: u32,
    seed: Seed,
) -> PpVerdict {
    let threshold = tol.threshold(jh.frobenius_norm());
    let effective = restarts.max(1);
    // Stream 0 is the crate-wide default RNG; restarts take streams 1….
    let runs: Vec<Run> = (0..effective)
        .into_par_iter()
        .map(|r| {
            run_restart(
                jh,
                dim_in,
                dim_out,
                max_iters,
                seed.stream(u64::from(r) + 1),
            )
        })
        .collect();
    let best = runs
        .into_iter()
        .min_by(|x, y| x.value.total_cmp(&y.value))
        .expect("at least one restart");
    if best.value < -threshold {
        PpVerdict::Violation(PpWitness {
            input: best.input,
            output: best.output,
            value: best.value,
            threshold,
        })
    } else {
        PpVerdict::NoViolationFound {
            best_value: best.value,
            restarts: effective,
        }
    }
}

struct Run {
    value: f64,
    input: Mat,
    output: Mat,
}

fn run_restart(
    jh: &Mat,
    dim_in: usize,
    dim_out: usize,
    max_iters: u32,
    mut rng: rand_chacha::ChaCha8Rng,
) -> Run {
    let mut a = sample::pure_state_from(&mut rng, dim_in).expect("dimension is positive");
    let mut b = sample::pure_state_from(&mut rng, dim_out).expect("dimension is positive");
    let stall = 1e-13 * jh.frobenius_norm().max(1.0);
    let mut value = objective(jh, &a, &b, dim_out);
    for _ in 0..max_iters {
        b = min_eigvec(&output_gram(jh, &a, dim_in, dim_out));
        a = min_eigvec(&input_gram(jh, &b, dim_in, dim_out)).conj();
        let next = objective(jh, &a, &b, dim_out);
        let improved = value - next;
        value = next;
        if improved <= stall {
            break;
        }
    }
    Run {
        value,
        input: a,
        output: b,
    }
}

/// `M(a)[m,n] = Σ_ij a_i conj(a_j) J[(i,m),(j,n)]`, i.e. `Ω(aa†)`.
fn output_gram(jh: &Mat, a: &Mat, dim_in: usize, dim_out: usize) -> Mat {
    Mat::from_fn(dim_out, dim_out, |m, n| {
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..dim_in {
            for j in 0..dim_in {
                acc += a.at(i, 0) * a.at(j, 0).conj() * jh.at(i * dim_out + m, j * dim_out + n);
            }
        }
        acc
    })
}

/// `N(b)[i,j] = Σ_mn conj(b_m) b_n J[(i,m),(j,n)]`; the quadratic form of
/// `conj(a)` at fixed `b`.
fn input_gram(jh: &Mat, b: &Mat, dim_in: usize, dim_out: usize) -> Mat {
    Mat::from_fn(dim_in, dim_in, |i, j| {
        let mut acc = C64::new(0.0, 0.0);
        for m in 0..dim_out {
            for n in 0..dim_out {
                acc += b.at(m, 0).conj() * b.at(n, 0) * jh.at(i * dim_out + m, j * dim_out + n);
            }
        }
        acc
    })
}

fn min_eigvec(gram: &Mat) -> Mat {
    // The grams are hermitian up to summation rounding; hermitize so the
    // eigensolver's residual gate can never trip.
    let eig = numeric::eig_hermitian(&gram.hermitize(), Tol::default())
        .expect("hermitized matrix always decomposes");
    eig.vectors.column(0)
}

fn objective(jh: &Mat, a: &Mat, b: &Mat, dim_out: usize) -> f64 {
    let psi = Mat::from_fn(a.rows() * dim_out, 1, |r, _| {
        a.at(r / dim_out, 0).conj() * b.at(r % dim_out, 0)
    });
    psi.dagger().mul(jh).mul(&psi).at(0, 0).re
}
