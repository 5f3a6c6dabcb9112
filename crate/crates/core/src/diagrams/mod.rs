//! Jacobi diagrams, their thickening into marked surfaces, the power-sum
//! image of marked surfaces, pairing integration against cup strips, and a
//! brute-force gl(N) contraction used as an oracle for all of the above.

mod contraction;
mod jacobi;
mod pairing;
mod surface;
mod thicken;

pub use contraction::{gl_n_bruteforce, MAX_CONTRACTION_WORK};
pub use jacobi::{perfect_matchings, JacobiDiagram, Vertex};
pub use pairing::{
    lmo_pair, lmo_pair_monomial, lmo_pair_per_color, lmo_pair_symfunc, monomial_surface, PairingValue,
};
pub use surface::{ribbon_r, MarkedSurface, SurfaceCombo};
pub use thicken::{phi, psi};
