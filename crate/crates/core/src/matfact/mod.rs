//! Matrix factorizations, Hom complexes and Ext, and the graded twist
//! construction over `B_W ♯ ℤ/d`.

mod factorization;
mod twist;
pub mod upoly;

pub use factorization::{
    ext_dims, graded_hom_dims, verify_graded_degrees, verify_mf, ExtDims, ExtMethod, HomComplex,
    HomElement, MatrixFactorization, PolyMatrix,
};
pub use twist::{
    graded_audit, graded_mf_to_twist, hat_degree, koszul_factorization, maurer_cartan_check,
    morphism_degree_identity, summand_for_twist, summand_twist, twist_to_graded_mf, GradedAudit,
    Summand, TwistObject,
};
