//! Partitions, symmetric-group characters, and symmetric functions in the
//! multi-colored power-sum basis.

mod character;
mod partition;
mod symfunc;

pub use character::{powersum_to_schur, schur_to_powersum, schur_to_powersum_coeffs, sym_character};
pub use partition::{partitions_of, Partition};
pub use symfunc::{Color, Monomial, SymFunc};
