//! The root-graded Lie algebras ℒ(𝔟, 𝒦) and their verification.

mod level;
mod model;
mod verify;

pub use level::{
    level_correction, level_coset, level_shift, level_subalgebra, verify_level_transition, Level,
};
pub use model::{
    build_model, level_size, meets_rank_bound, Component, GradedElement, GradedModel, Part,
};
pub use verify::{
    basis_weights, subalgebra, verify_antisymmetry, verify_grading, verify_jacobi,
    verify_subalgebra, JacobiReport, JacobiStrategy, SubModel,
};
