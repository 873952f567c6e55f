//! Finite truncations of the classical Lie algebras sl, o_B, o_D and sp,
//! their natural and symmetric modules, Clifford Jordan algebras and the
//! truncation operators used by the graded construction.

mod algebra;
mod forms;
mod jordan;
mod module;

pub use algebra::{
    ad_eigenvalue, build_algebra, cartan_generators, eigen_to_weight, matrix_unit, proportionality,
    subalgebra_from_subsystem, MatrixLieAlgebra, Weight,
};
pub use forms::{
    circ_trunc, matrix_family, v_ops, FormedSpace, NaturalSpace, TruncationIdempotent, VOpVariant,
};
pub use jordan::{
    derivation_span_equals_ob, jordan_derivation, jordan_product, CliffordJordan,
    DerivationSpanReport,
};
pub use module::{build_module, module_axiom_witness, weight_decompose, ModuleKind, RepModule};
