//! Finite groups: permutations, wreath products `S_N ≀ C_n`, commutator
//! decompositions, power products and their vanishing sets.

mod group;
mod ore;
mod perm;
mod wreath;

pub use group::{power_product, r_set, GroupDesc, GroupElem, Subgroup, DEFAULT_SUBGROUP_BOUND};
pub use ore::ore_commutator;
pub use perm::Permutation;
pub use wreath::{build_pqrs, WreathElement};
