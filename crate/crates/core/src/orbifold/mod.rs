//! Orbifold LG models: diagonal abelian actions, sectors, the localization
//! formula and the chain map `Ψ` on cross products.

mod action;
mod cross;

pub use action::{
    coinvariant_dims, fixed_locus, orbifold_hh_bm, restrict_potential, sector_hh_bm, ClassIndex,
    GroupAction, GroupElement, OrbifoldReport, Sector, SectorClass, SectorHomology, SectorReport,
};
pub use cross::{
    cross_product, psi_chain_check, psi_chain_check_with, psi_map, twisted_b_minus, CrossProduct,
    FiniteAction, FiniteGroup, SectorChains,
};
