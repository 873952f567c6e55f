//! Exact rational scalars and sparse linear algebra over based vector spaces.

mod rational;
mod space;
pub mod sparse;

pub use rational::Rational;
pub use space::{
    kernel, quotient_project, rref, BasedSpace, QuotientSpace, SparseMatrix, SparseVector, Subspace,
};
pub use sparse::{Accumulator, Coordinates, RowEchelon, SparseVec};
