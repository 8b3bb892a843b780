//! Map–state and channel–state dualities as executable operations.
//!
//! The crate turns the bookkeeping of quantum information — operators as
//! bipartite state vectors, channels as Choi matrices, superoperators, or
//! Kraus sets — into checked, convertible representations:
//!
//! - [`numeric`]: dense complex matrices, hermitian eigendecomposition, SVD,
//!   partial traces, and seeded sampling.
//! - [`wires`]: the cup/cap/swap tensors and the `vec`/`unvec` bijection
//!   between operators and bipartite vectors.
//! - [`map_state`]: Schmidt decomposition, purification, spectral
//!   decomposition of normal operators in state form, and the operator↔state
//!   property dictionary.
//! - [`channels`]: the [`Channel`] type with Choi/superoperator/Kraus
//!   conversions, property verdicts (hermiticity-, positivity-,
//!   complete-positivity-, trace-preservation, unitality), duals,
//!   concatenation, and tensor products.
//! - [`diagram`]: a small textual language for wire diagrams with a parser,
//!   type checker, evaluator, and numerical identity checking.
//!
//! Conventions, fixed crate-wide: composite indices are left-factor-major;
//! `vec` stacks columns (`vec(f)[(i,m)] = f[m,i]`); Choi matrices are
//! unnormalized (`trace = dim_in` for trace-preserving channels) and live on
//! input ⊗ output.

pub mod channels;
pub mod diagram;
mod error;
pub mod map_state;
pub mod numeric;
pub mod wires;

pub use channels::{Channel, KrausSet, PpVerdict, PpWitness, PropertyCheck, PropertyReport};
pub use error::{Error, Result};
pub use numeric::{Mat, Seed, Tol, C64};
pub use wires::BiVec;
