//! Exact linear algebra over GF(p) and over the rationals.

pub mod ff;
pub mod qmatrix;
pub mod rational;
pub mod sparse;
pub mod subspace;

pub use ff::{ff_rank, ff_rref, FFMatrix};
pub use qmatrix::{q_rank_kernel, QMatrix};
pub use rational::Q;
pub use sparse::{Echelon, SparseVec, TrackedEchelon};
pub use subspace::{all_subspaces, subspace_canon, subspace_ops, Subspace, SubspaceOps};
