//! Curved Hochschild chains and cochains.

mod algebra;
mod chains;
mod cochains;
mod homology;

pub use algebra::{Carrier, Chain, FiniteAlgebra, Grading, PolyCarrier, Tensor};
pub use chains::{
    apply, b_minus, b_plus, boundary, boundary_minus_matrices, boundary_plus_matrices,
    mixed_complex_check, mixed_complex_check_with, prefers_normalized, vanishing_homotopy,
    ChainHomotopy, ChainWindow,
};
pub use cochains::{
    cochain_diff_matrices, cochain_square_check, cochain_vanishing_homotopy, Cochain, CochainDiff,
    CochainHomotopy, CochainLabel, CochainWindow,
};
pub use homology::{
    bc_plus_homology, bm_coordinates, bm_entry, compact_type_check, hh_bm_graded, hh_ordinary,
    BicomplexWindow, BorelMooreOptions, CompactTypeReport, HomologyEntry, HomologyReport,
    OrdinaryOptions, Variant, AGREEMENTS,
};
