//! Exact computational algebra over finite chain rings `Z/p^k`: permutation
//! groups and their double cosets, modules over group algebras with a full
//! homological toolkit, bundles of modules over finite spaces with their
//! direct sums and tensor products, towers of bundles, and an end-to-end
//! verifier for the Mackey decomposition formula.
//!
//! All arithmetic is exact; there are no tolerances anywhere. Every value is
//! immutable after construction and every operation is a pure function, so
//! everything here is safe to use concurrently.

pub mod bundle;
pub mod error;
pub mod group;
pub mod homology;
pub mod mackey;
pub mod mat;
pub mod module;
pub mod ring;
pub mod sweeps;
pub mod tower;
pub mod tree;

pub use error::{Error, Result};
pub use group::{
    all_subgroups, double_coset_reps, orbits, right_coset_reps, CosetDecomposition, FiniteGroup,
    GSpace, Subgroup,
};
pub use homology::{ext_bounded, is_projective, pd_bounded, syzygy, tor_bounded, Pd};
pub use mackey::{decompose_group_algebra, hgk_factorization, mackey_verify, MackeyReport};
pub use mat::{howell_form, rank_profile, solve_affine, Mat, RowSolver, SolutionSet};
pub use module::{
    balanced_tensor, hom_basis, induce, perm_module, restrict, Bimodule, GModule, ModuleHom,
};
pub use ring::ChainRing;
