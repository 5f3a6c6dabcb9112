//! The Seifert-sphere pipeline: the Ω coefficients, the matrix-model
//! potential, the perturbative partition function, and two numerical
//! cross-checks (tensor quadrature of the eigenvalue integral and GUE
//! Monte Carlo).

mod gue;
mod numeric;
mod potential;

pub use gue::{gue_sample_moments, MIN_SAMPLES};
pub use numeric::{
    gue_eigen_average, numeric_coupling, seifert_integral_numeric, NumericResult, QuadratureOptions,
};
pub use potential::{
    lmo_seifert_free_energy, lmo_seifert_integral, lmo_seifert_partition, omega_coeffs,
    seifert_potential, theta_prefactor, theta_value, wheel_image, SeifertPotential,
};
