//! The self-product construction and the dihedral example built from it.
//!
//! The product layer takes two presentations over the same `(G, H, {W_k})`
//! and builds the presentation of `G x G` on their fiber product. The dihedral
//! layer realizes `D_p x D_p` inside `S_2p`, compares the grid correspondence
//! on `p^2` points with the Kanev correspondence of the product, and checks the
//! subgroup lattice, the genera and the Jacobian decomposition.

mod decomposition;
mod grid;
mod lattice;
mod product;

pub use decomposition::{
    genus_table, jacobian_decomposition, CurveDecomposition, DecompositionReport, Genera,
    GenusTable, IdentityCheck, Summand,
};
pub use grid::{
    build_phis, commutes_with, displayed_action, grid_correspondence, grid_index, grid_point,
    pair_action, pair_image, validate_monodromy, verify_equivariance, verify_kanev_equals_grid,
    EquivarianceReport, GeneratorCheck, GridCorrespondence, KanevGridReport, MonodromyReport,
    PairActionReport, Phis,
};
pub use lattice::{
    factors_through_etale_cyclic, is_etale, showcase_lattice, DihedralSquare, LatticeReport,
    NamedClaim,
};
pub use product::{
    cyclic2_presentation, dihedral_presentation, dihedral_product, fiber_product,
    hyperelliptic_product, verify_dimension_additivity, verify_product_exponent, verify_pullback,
    AdditivityReport, ProductExponentReport, ProductPresentation, PullbackReport,
};
