//! polaris-core: exact computer algebra for modules of matrix polynomials
//! closed under partial derivatives and generalized polarization operators,
//! with graded character and symmetric-function tooling on top.

mod error;
pub mod classify;
pub mod closure;
pub mod families;
pub mod formulas;
pub mod frobenius;
pub mod operators;
pub mod polycore;
pub mod symfunc;

pub use classify::{IsoType, ProjectivePoint};
pub use closure::{ClosureReport, GradedSubspace};
pub use error::{Error, Result};
pub use frobenius::{ClassFunction, FrobeniusSeries, RenderStyle};
pub use operators::Permutation;
pub use symfunc::{Basis, Partition, QPoly, SymFunc};
pub use polycore::{ExponentMatrix, MatrixPolynomial, MultiDegree, Shape};
