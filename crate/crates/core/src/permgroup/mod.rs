//! Permutation groups with fully materialized element lists.
//!
//! Every group in scope is small, so elements are enumerated once, sorted, and
//! addressed by index. Index-based routines (`mul`, `inv`, [`IndexSet`]) are the
//! workhorse for cosets, subgroup lattices and characters.

mod action;
mod bitset;
mod cosets;
mod group;
mod perm;
mod subgroups;

pub use action::{
    block_systems, is_transitive, minimal_block_systems, orbit, orbit_under, orbits, stabilizer,
    stabilizer_under,
};
pub use bitset::IndexSet;
pub use cosets::{
    double_coset_count, double_cosets, right_cosets, verify_double_cosets, Coset, CosetSpace,
    DoubleCosetData,
};
pub use group::{direct_product, PermGroup, DEFAULT_ORDER_CAP};
pub use perm::Perm;
pub use subgroups::{
    all_subgroups, are_conjugate, conjugate, core, cyclic_subgroup_classes, intersection,
    is_normal, join, proper_supergroups, subgroup_classes,
};
