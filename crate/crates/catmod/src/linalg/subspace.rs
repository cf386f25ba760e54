use serde::{Deserialize, Serialize};

use super::ff::FFMatrix;
use crate::error::{invalid, Result};

/// Subspace of GF(p)^ambient held as the RREF of a spanning set with zero rows
/// dropped, so structural equality is subspace equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subspace {
    p: u8,
    ambient: usize,
    basis: FFMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceOps {
    pub sum: Subspace,
    pub intersection: Subspace,
    pub is_complement_pair: bool,
}

impl Subspace {
    /// Canonical form of the row span of `vectors`.
    pub fn canon(vectors: &FFMatrix, ambient: usize) -> Result<Subspace> {
        if vectors.cols() != ambient {
            return invalid(format!("vectors of length {} in ambient dimension {ambient}", vectors.cols()));
        }
        Ok(Subspace::canon_unchecked(vectors))
    }

    pub(crate) fn canon_unchecked(vectors: &FFMatrix) -> Subspace {
        let (r, piv) = vectors.rref();
        let keep: Vec<usize> = (0..piv.len()).collect();
        Subspace { p: vectors.p(), ambient: vectors.cols(), basis: r.select_rows(&keep) }
    }

    pub fn zero(p: u8, ambient: usize) -> Subspace {
        Subspace { p, ambient, basis: FFMatrix::zeros(p, 0, ambient) }
    }

    pub fn full(p: u8, ambient: usize) -> Subspace {
        Subspace { p, ambient, basis: FFMatrix::identity(p, ambient) }
    }

    /// Span of standard basis vectors `e_i`, `i` in `coords` (0-based).
    pub fn coordinate(p: u8, ambient: usize, coords: &[usize]) -> Subspace {
        let mut m = FFMatrix::zeros(p, coords.len(), ambient);
        for (r, &c) in coords.iter().enumerate() {
            m.set(r, c, 1);
        }
        Subspace::canon_unchecked(&m)
    }

    /// Column space of `m`.
    pub fn column_space(m: &FFMatrix) -> Subspace {
        Subspace::canon_unchecked(&m.transpose())
    }

    pub fn p(&self) -> u8 {
        self.p
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }
    pub fn basis(&self) -> &FFMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim()).map(|i| self.basis.row(i).iter().position(|&e| e != 0).unwrap()).collect()
    }

    pub fn contains_vector(&self, v: &[u8]) -> bool {
        let row = FFMatrix::raw(self.p, 1, self.ambient, v.to_vec());
        self.basis.vstack(&row).rank() == self.dim()
    }

    pub fn contains(&self, o: &Subspace) -> bool {
        self.sum(o).dim() == self.dim()
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        assert_eq!((self.p, self.ambient), (o.p, o.ambient), "subspaces of different spaces");
        Subspace::canon_unchecked(&self.basis.vstack(&o.basis))
    }

    /// Vectors orthogonal to the subspace under the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        Subspace { p: self.p, ambient: self.ambient, basis: self.basis.kernel() }
    }

    pub fn intersection(&self, o: &Subspace) -> Subspace {
        assert_eq!((self.p, self.ambient), (o.p, o.ambient), "subspaces of different spaces");
        self.annihilator().sum(&o.annihilator()).annihilator()
    }

    pub fn is_complement_pair(&self, o: &Subspace) -> bool {
        self.dim() + o.dim() == self.ambient && self.sum(o).dim() == self.ambient
    }

    pub fn ops(&self, o: &Subspace) -> SubspaceOps {
        let sum = self.sum(o);
        let intersection = self.intersection(o);
        let is_complement_pair = self.dim() + o.dim() == self.ambient && intersection.dim() == 0;
        SubspaceOps { sum, intersection, is_complement_pair }
    }

    /// Image under the linear map `m` (ambient -> m.rows()).
    pub fn image(&self, m: &FFMatrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient);
        Subspace::canon_unchecked(&m.mul(&self.basis.transpose()).transpose())
    }

    /// Base-p digits of the canonical basis, row-major.
    pub fn digits(&self) -> &[u8] {
        self.basis.data()
    }

    /// Coordinates of `v` (assumed in the subspace) with respect to the canonical basis.
    pub fn coordinates(&self, v: &[u8]) -> Vec<u8> {
        self.pivots().iter().map(|&c| v[c]).collect()
    }
}

pub fn subspace_canon(vectors: &FFMatrix, ambient: usize) -> Result<Subspace> {
    Subspace::canon(vectors, ambient)
}

pub fn subspace_ops(a: &Subspace, b: &Subspace) -> Result<SubspaceOps> {
    if (a.p, a.ambient) != (b.p, b.ambient) {
        return invalid("subspaces over different fields or ambient spaces");
    }
    Ok(a.ops(b))
}

/// Every `k`-dimensional subspace of F_p^ambient, in increasing canonical order.
pub fn all_subspaces(p: u8, ambient: usize, k: usize) -> Vec<Subspace> {
    let mut out = Vec::new();
    if k > ambient {
        return out;
    }
    let mut pivots = Vec::with_capacity(k);
    choose_pivots(p, ambient, k, 0, &mut pivots, &mut out);
    out.sort();
    out
}

fn choose_pivots(p: u8, ambient: usize, k: usize, start: usize, pivots: &mut Vec<usize>, out: &mut Vec<Subspace>) {
    if pivots.len() == k {
        // free slots: row r, column c > pivot r, c not a pivot
        let slots: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| (pivots[r] + 1..ambient).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        let total = (p as usize).pow(slots.len() as u32);
        for mut x in 0..total {
            let mut m = FFMatrix::zeros(p, k, ambient);
            for (r, &c) in pivots.iter().enumerate() {
                m.set(r, c, 1);
            }
            for &(r, c) in &slots {
                m.set(r, c, (x % p as usize) as u8);
                x /= p as usize;
            }
            out.push(Subspace { p, ambient, basis: m });
        }
        return;
    }
    for c in start..ambient {
        pivots.push(c);
        choose_pivots(p, ambient, k, c + 1, pivots, out);
        pivots.pop();
    }
}
