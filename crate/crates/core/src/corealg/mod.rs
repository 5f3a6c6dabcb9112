//! Exact scalars, polynomials in the formal rank symbol `N`, and ℏ-graded
//! truncated series.

mod npoly;
mod scalar;
mod series;

pub use npoly::NPoly;
pub use scalar::{int, parse_scalar, rat, scalar_to_f64, Scalar};
pub use series::{HSeries, MIN_HBAR_EXPONENT};
pub(crate) use series::inv_factorial;
