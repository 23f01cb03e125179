//! Executable combinatorics for generalized Bestvina–Brady groups `G_L^M(S)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`intsets`]: periodic subsets of ℤ, Gödel-numbered sets `T(S)` and
//!   nested periodic approximations of profinitely closed sets.
//! * [`finitegroups`]: permutations, wreath products `S_N ≀ C_n`, a small
//!   dynamic finite-group layer and the power-product invariant `ℛ(G, g)`.
//! * [`simplicial`]: flag complexes, octahedralization, subdivisions and
//!   simplicial approximations.
//! * [`covers`]: finite regular covers given by deck-group edge labellings.
//! * [`gbbcore`]: presentations, finite quotients, certificates and recipes.
//! * [`cubical`]: wrapped quotients of the cube complex `X_L^M(S)` and the
//!   hyperplane specialness checker.
//! * [`dehn`]: cyclic presentations and Dehn's algorithm.
//! * [`cli`], [`fixtures`], [`io`]: the command-line workbench.

pub mod cli;
pub mod covers;
pub mod cubical;
pub mod dehn;
pub mod error;
pub mod finitegroups;
pub mod fixtures;
pub mod gbbcore;
pub mod intsets;
pub mod io;
pub mod simplicial;
mod unionfind;

pub use error::{Error, Result};
