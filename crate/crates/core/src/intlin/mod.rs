//! Exact integer linear algebra: Smith and Hermite normal forms, unimodular
//! transforms, and linear systems over ℤ and over cyclic quotients.

mod lattice;
mod matrix;
mod snf;
mod solve;

pub use lattice::{hnf, reduce_vec, Lattice};
pub use matrix::{mod_floor, IntMatrix};
pub use snf::{snf, SnfDecomposition};
pub use solve::{is_surjective_mod, solve_mod, ModSolver};

pub(crate) use snf::{Engine, Track};
