//! The convolution algebra K_Γ(Y×Y) of a finite Γ-set: classes,
//! specializations, rank-one idempotents, simple modules and the splitting
//! of opposite squares of centrally extended sets.

mod central;
mod idempotents;
mod module;
mod square;

pub use central::{cstar_witness, CEOrbitData, SplitCheck};
pub use idempotents::{
    abelian_idempotents, check_family, idempotent_family, matrix_on_basis, rigid_unique,
    s3_idempotents, s3_three_point_untwisted, s3_triv_cubed_case, s3_two_triv_case, FamilyReport,
    TrivCubedCase, TwoTrivCase,
};
pub use module::{build_module, IsotypicPart, SpecModule};
pub use square::{KClass, PairOrbit, SpecMatrix, Square};

#[cfg(test)]
mod tests;
