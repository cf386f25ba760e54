//! Central stability homology and the simplicial complexes behind its
//! connectivity estimates.

pub mod chains;
pub mod complexes;
pub mod resolution_check;

pub use chains::{
    boundary_columns, boundary_matrix, boundary_rank, cc_dim, central_homology, central_report, m0_vanishing_degree,
    CentralHomology, CentralReport,
};
pub use complexes::{
    pbc_bound, pbc_connectivity, pbc_homology, relative_si_bound, relative_si_connectivity, relative_si_homology,
    AugSemiSimplicialSet, ConnectivityReport,
};
pub use resolution_check::{resolution_equivalence_check, ResolutionCheck};
