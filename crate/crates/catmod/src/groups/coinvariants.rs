use std::collections::HashMap;

use crate::error::{invalid, Result};
use crate::linalg::sparse::{axpy, unit, Echelon, SparseVec};
use crate::linalg::{QMatrix, Q};

/// `V / span{s v - v}` for the generators `s`.
#[derive(Clone, Debug)]
pub struct Coinvariants {
    pub dim: usize,
    rel: Echelon,
    /// Basis vector of `V` whose class is quotient basis vector `i`.
    pub lift: Vec<usize>,
    pos: HashMap<u32, u32>,
}

impl Coinvariants {
    /// Quotient coordinates of a vector of `V`.
    pub fn project(&self, v: SparseVec) -> SparseVec {
        let mut out: SparseVec = self.rel.reduce(v).into_iter().map(|(c, x)| (self.pos[&c], x)).collect();
        out.sort_by_key(|t| t.0);
        out
    }

    /// `dim x dim V` matrix of the quotient map.
    pub fn projection(&self) -> QMatrix {
        let cols: Vec<SparseVec> = (0..self.rel.dim()).map(|j| self.project(unit(j))).collect();
        QMatrix::from_sparse_columns(self.dim, &cols)
    }
}

pub fn coinvariants_of_space(dim: usize, action: &[QMatrix]) -> Result<Coinvariants> {
    if let Some(s) = action.iter().find(|s| s.rows() != dim || s.cols() != dim) {
        return invalid(format!("action matrix is {}x{}, space has dimension {dim}", s.rows(), s.cols()));
    }
    Ok(coinvariants_of_action(dim, action.len(), |s, j| action[s].sparse_column(j)))
}

/// Same, with the action given column by column: `column(s, j)` is `s e_j`.
pub fn coinvariants_of_action(dim: usize, gens: usize, column: impl Fn(usize, usize) -> SparseVec) -> Coinvariants {
    let mut rel = Echelon::new(dim);
    'outer: for s in 0..gens {
        for j in 0..dim {
            rel.insert(axpy(&column(s, j), &Q::int(-1), &unit(j)));
            if rel.is_full() {
                break 'outer;
            }
        }
    }
    quotient_by(&rel)
}

/// Quotient of `F^dim` by the span of an echelon; coordinates are the non-pivot entries of normal forms.
pub(crate) fn quotient_by(rel: &Echelon) -> Coinvariants {
    let lift = rel.nonpivots();
    let pos = lift.iter().enumerate().map(|(i, &c)| (c as u32, i as u32)).collect();
    Coinvariants { dim: lift.len(), rel: rel.clone(), lift, pos }
}
