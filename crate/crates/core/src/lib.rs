//! Exact Gaussian Hermitian matrix-model integration and the U(N) image of
//! the LMO invariant of Seifert spheres.
//!
//! The crate computes the same Gaussian integrals along two independent
//! routes: Wick contraction of trace half-edges ([`gaussmm`]) and pairing of
//! marked surfaces against cup strips ([`diagrams`]). The Seifert pipeline
//! ([`seifert`]) builds the Ω-element potential through the thickening map
//! Ψ and the power-sum map Φ, integrates it exactly as an ℏ-series and
//! compares the result with a direct eigenvalue quadrature. [`wrt2`]
//! evaluates the SU(2) surgery formula for lens spaces.
//!
//! Data-parallel loops (matching enumeration, quadrature grids, Monte Carlo
//! batches) run on rayon when the `parallel` feature is enabled and fall
//! back to sequential iteration otherwise. Results are bit-identical either
//! way.

pub mod arithgeo;
pub mod corealg;
pub mod diagrams;
mod error;
pub mod gaussmm;
mod hp;
pub mod par;
pub mod seifert;
pub mod symfun;
pub mod wrt2;

pub use error::{Error, Result};
