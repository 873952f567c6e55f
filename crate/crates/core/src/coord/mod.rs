//! Coordinate quadruples and the Lie algebra {𝔟,𝔟}_ℓ built from them.

mod bb;
mod checks;
mod io;
mod presets;
mod quadruple;

pub use bb::{
    build_bb, check_uniform, derivation, derivation_basis, full_homology, relation_generators,
    tensor, BBQuotient, Endo, HomologySubspace, TensorQuotient, UniformReport,
};
pub use checks::{
    verify_bb_lie, verify_beta_star_relations, verify_derivations, verify_diamond_heart,
    verify_homology, verify_laws,
};
pub use io::{load_quadruple, quadruple_from_json, quadruple_to_json, QuadrupleFile};
pub use presets::{
    clifford, group_ring, matrix, matrix_hermitian, matrix_transpose, parse_preset, preset,
    symplectic, PRESET_NAMES,
};
pub use quadruple::{
    b_circ_brk, b_mul, beta_star, diamond_heart, validate_quadruple, CoordAlgebra, CoordElement,
    CoordinateQuadruple, LawCheck, ValidationReport,
};
