//! Partitions, symmetric-group characters, symmetric polynomials in the
//! grading variables, and abstract symmetric functions in five bases.

mod basis;
mod character;
pub(crate) mod linalg;
mod partition;
mod qpoly;

pub use basis::{Basis, SymFunc};
pub use character::{character_table, irreducible_character, CharacterTable};
pub use partition::{factorial, partitions_of, Partition};
pub use qpoly::{
    complete_homogeneous, decompose_schur, elementary, monomial_sym, power_sum,
    schur_polynomial, QPoly,
};
