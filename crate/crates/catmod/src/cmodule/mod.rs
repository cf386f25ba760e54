//! C-modules evaluated degreewise on a window `[0..N]` over Q.

use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::category::{CatMorphism, CategoryId};
use crate::linalg::sparse::{collect_terms, SparseVec};
use crate::linalg::QMatrix;

pub mod h0;
pub mod induced;
pub mod rep;
pub mod resolve;
pub mod stability;
pub mod sub;
pub mod tensor;

pub use h0::{generation_degree, h0, h0_all_morphisms, H0};
pub use induced::{induced, representable, Induced, InducedMap, Piece};
pub use rep::{GroupRep, SchreierTree};
pub use resolve::{cover, derived_homology, presentation_data, resolve, Cover, Presentation, Resolution};
pub use stability::{stability_scan, StabilityRow};
pub use sub::{skyscraper, Quotient, SubModule};
pub use tensor::Tensor;

/// A functor from the category to finite-dimensional Q-vector spaces,
/// known on degrees `0..=window()`.
pub trait CModule: Send + Sync {
    fn cat(&self) -> &CategoryId;
    fn window(&self) -> usize;
    fn dim(&self, n: usize) -> usize;
    /// `A(f) e_j` for `f: k^m -> k^n` and `j < dim(m)`.
    fn column(&self, f: &CatMorphism, j: usize) -> SparseVec;

    fn apply(&self, f: &CatMorphism, v: &SparseVec) -> SparseVec {
        let mut terms = Vec::new();
        for (j, x) in v {
            for (i, y) in self.column(f, *j as usize) {
                terms.push((i, x * &y));
            }
        }
        collect_terms(terms)
    }

    fn matrix(&self, f: &CatMorphism) -> QMatrix {
        let cols: Vec<SparseVec> = (0..self.dim(f.source())).map(|j| self.column(f, j)).collect();
        QMatrix::from_sparse_columns(self.dim(f.target()), &cols)
    }

    fn dims(&self) -> Vec<usize> {
        (0..=self.window()).map(|n| self.dim(n)).collect()
    }
}

pub type ModRef = Arc<dyn CModule>;

/// A degree, or `None` for the zero module (printed as "none").
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    None,
    At(usize),
}

impl Degree {
    pub fn value(self) -> Option<usize> {
        match self {
            Degree::None => None,
            Degree::At(n) => Some(n),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::None => f.write_str("none"),
            Degree::At(n) => write!(f, "{n}"),
        }
    }
}

impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Degree::None => s.serialize_str("none"),
            Degree::At(n) => s.serialize_u64(*n as u64),
        }
    }
}

/// Generation degree seen inside a window. `at_boundary` means H0 is nonzero
/// in the top degree, so the true degree may be larger.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WindowDegree {
    pub degree: Degree,
    pub at_boundary: bool,
}

impl fmt::Display for WindowDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.at_boundary {
            write!(f, ">={} (window boundary)", self.degree)
        } else {
            write!(f, "{}", self.degree)
        }
    }
}
