//! Augmented semi-simplicial sets of morphisms cut out by a predicate, with
//! faces that drop a column (VIC) or a hyperbolic pair (SI).

use std::collections::HashMap;

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::chains::face_morphism;
use crate::category::enumerate::check_budget;
use crate::category::morphism::{perp, symplectic_complement};
use crate::category::{for_each_hom, CatMorphism, CategoryId, MorphismKey};
use crate::error::{invalid, Result};
use crate::groups::order::predicted_hom_count;
use crate::linalg::sparse::{collect_terms, Echelon};
use crate::linalg::{Subspace, Q};

/// Simplices of sizes `0..levels.len()`; size 0 is the augmentation.
pub struct AugSemiSimplicialSet {
    pub id: String,
    n: usize,
    levels: Vec<Vec<CatMorphism>>,
    index: Vec<HashMap<MorphismKey, u32>>,
}

impl AugSemiSimplicialSet {
    /// Keeps the morphisms `k^s -> k^n` satisfying `keep`, for `s <= top`.
    /// `keep` must be closed under faces.
    pub fn build(
        id: String,
        cat: &CategoryId,
        n: usize,
        top: usize,
        budget: u64,
        keep: &(dyn Fn(&CatMorphism) -> bool + Sync),
    ) -> Result<AugSemiSimplicialSet> {
        let mut levels = Vec::new();
        let mut index = Vec::new();
        for s in 0..=top.min(n) {
            check_budget(format!("simplices of size {s} in {id}"), &predicted_hom_count(cat, s, n), budget)?;
            let mut level = Vec::new();
            for_each_hom(cat, s, n, &mut |f| {
                if keep(&f) {
                    level.push(f);
                }
            });
            level.sort_by_key(|f| f.key());
            index.push(level.iter().enumerate().map(|(i, f)| (f.key(), i as u32)).collect());
            levels.push(level);
        }
        Ok(AugSemiSimplicialSet { id, n, levels, index })
    }

    /// Number of simplices of each size.
    pub fn sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    /// Checks `d_j d_k = d_{k-1} d_j` for `j < k` and that faces stay in the set.
    pub fn check_identities(&self) -> Result<()> {
        for (s, level) in self.levels.iter().enumerate().skip(1) {
            for f in level {
                for k in 0..s {
                    let fk = face_morphism(f, k);
                    if !self.index[s - 1].contains_key(&fk.key()) {
                        return invalid(format!("{}: face of a simplex left the set", self.id));
                    }
                    for j in 0..k {
                        if face_morphism(&fk, j) != face_morphism(&face_morphism(f, j), k - 1) {
                            return invalid(format!("{}: simplicial identity fails", self.id));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn rank_of_boundary(&self, s: usize) -> usize {
        if s == 0 || s >= self.levels.len() {
            return 0;
        }
        let mut e = Echelon::new(self.levels[s - 1].len());
        for f in &self.levels[s] {
            let terms = (0..s)
                .map(|j| {
                    let sign = if j % 2 == 0 { Q::one() } else { Q::int(-1) };
                    (self.index[s - 1][&face_morphism(f, j).key()], sign)
                })
                .collect();
            e.insert(collect_terms(terms));
            if e.is_full() {
                break;
            }
        }
        e.rank()
    }

    /// `dim H̃_i` of the realization; needs simplices of sizes `i+1` and `i+2`.
    pub fn reduced_homology(&self, i: isize) -> usize {
        let s = (i + 1) as usize;
        assert!(s + 1 < self.levels.len() || s + 1 > self.n, "simplices of size {} not built", s + 1);
        let dim = self.levels.get(s).map_or(0, Vec::len);
        dim - self.rank_of_boundary(s) - self.rank_of_boundary(s + 1)
    }
}

/// Report for one complex: sizes, homology for `-1 <= i <= floor(bound)`, and the verdict.
#[derive(Clone, Debug, Serialize)]
pub struct ConnectivityReport {
    pub complex: String,
    pub dims: Vec<usize>,
    pub homology: Vec<(isize, usize)>,
    pub bound: Q,
    pub pass: bool,
}

fn floor_q(q: &Q) -> isize {
    q.numer().div_floor(&q.denom()).to_isize().expect("small bound")
}

fn connectivity(id: String, cat: &CategoryId, n: usize, bound: Q, budget: u64, keep: &(dyn Fn(&CatMorphism) -> bool + Sync)) -> Result<ConnectivityReport> {
    let top_i = floor_q(&bound);
    let set = AugSemiSimplicialSet::build(id, cat, n, (top_i + 2).max(1) as usize, budget, keep)?;
    let homology: Vec<(isize, usize)> = (-1..=top_i).map(|i| (i, set.reduced_homology(i))).collect();
    let pass = homology.iter().all(|&(_, h)| h == 0);
    Ok(ConnectivityReport { complex: set.id.clone(), dims: set.sizes(), homology, bound, pass })
}

fn check_ambient(s: &Subspace, p: u8, ambient: usize) -> Result<()> {
    if s.p() != p || s.ambient() != ambient {
        return invalid(format!("subspace of F_{}^{} given where F_{p}^{ambient} was expected", s.p(), s.ambient()));
    }
    Ok(())
}

fn pbc_set(p: u8, dim_v: usize, u: &Subspace, w: &Subspace, top: usize, budget: u64) -> Result<AugSemiSimplicialSet> {
    check_ambient(u, p, dim_v)?;
    check_ambient(w, p, dim_v)?;
    AugSemiSimplicialSet::build(pbc_id(p, dim_v, u, w), &CategoryId::vic(p)?, dim_v, top, budget, &pbc_keep(u, w))
}

fn pbc_id(p: u8, dim_v: usize, u: &Subspace, w: &Subspace) -> String {
    format!("PBC(F_{p}^{dim_v}, dim U={}, dim W={})", u.dim(), w.dim())
}

fn pbc_keep<'a>(u: &'a Subspace, w: &'a Subspace) -> impl Fn(&CatMorphism) -> bool + Sync + 'a {
    move |f| {
        let m = f.as_vic().expect("VIC morphism");
        u.contains(&Subspace::column_space(&m.t)) && m.c.contains(w)
    }
}

/// `dim H̃_i` of `PBC(V, U, W)`: complemented injections with image in `U` and complement containing `W`.
pub fn pbc_homology(p: u8, dim_v: usize, u: &Subspace, w: &Subspace, i: isize, budget: u64) -> Result<usize> {
    if i < -1 {
        return invalid("reduced homology starts in degree -1");
    }
    Ok(pbc_set(p, dim_v, u, w, (i + 2) as usize, budget)?.reduced_homology(i))
}

/// `(dim U - dim W - 3) / 2`.
pub fn pbc_bound(u: &Subspace, w: &Subspace) -> Q {
    Q::new(u.dim() as i64 - w.dim() as i64 - 3, 2)
}

pub fn pbc_connectivity(p: u8, dim_v: usize, u: &Subspace, w: &Subspace, budget: u64) -> Result<ConnectivityReport> {
    check_ambient(u, p, dim_v)?;
    check_ambient(w, p, dim_v)?;
    connectivity(pbc_id(p, dim_v, u, w), &CategoryId::vic(p)?, dim_v, pbc_bound(u, w), budget, &pbc_keep(u, w))
}

/// `dim H̃_i` of `{T in Hom_SI(k^{2s}, k^{2n}) : W ⊆ im(T)^⊥}`.
pub fn relative_si_homology(p: u8, n: usize, w: &Subspace, i: isize, budget: u64) -> Result<usize> {
    if i < -1 {
        return invalid("reduced homology starts in degree -1");
    }
    check_ambient(w, p, 2 * n)?;
    let cat = CategoryId::si(p)?;
    let set = AugSemiSimplicialSet::build(format!("SI relative to W, n={n}"), &cat, n, (i + 2) as usize, budget, &|f| {
        symplectic_complement(f.as_si().expect("SI morphism")).contains(w)
    })?;
    Ok(set.reduced_homology(i))
}

/// Dimension of a maximal symplectic subspace of `W`: `dim W - dim(W ∩ W^⊥)`.
pub fn symplectic_part_dim(w: &Subspace) -> usize {
    w.dim() - w.intersection(&perp(w)).dim()
}

/// `(n + dim U / 2 - dim W - 4) / 2` with `U` a maximal symplectic subspace of `W`.
pub fn relative_si_bound(n: usize, w: &Subspace) -> Q {
    let half_u = (symplectic_part_dim(w) / 2) as i64;
    Q::new(n as i64 + half_u - w.dim() as i64 - 4, 2)
}

pub fn relative_si_connectivity(p: u8, n: usize, w: &Subspace, budget: u64) -> Result<ConnectivityReport> {
    check_ambient(w, p, 2 * n)?;
    let id = format!("SI relative to W (dim {}), n={n}", w.dim());
    connectivity(id, &CategoryId::si(p)?, n, relative_si_bound(n, w), budget, &|f| {
        symplectic_complement(f.as_si().expect("SI morphism")).contains(w)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{all_subspaces, FFMatrix};

    const B: u64 = 10_000_000;

    fn span(p: u8, ambient: usize, rows: &[Vec<u8>]) -> Subspace {
        Subspace::canon(&FFMatrix::from_rows(p, ambient, rows).unwrap(), ambient).unwrap()
    }

    #[test]
    fn pbc_examples() {
        let v3 = Subspace::full(2, 3);
        let z3 = Subspace::zero(2, 3);
        assert_eq!(pbc_homology(2, 3, &v3, &z3, -1, B).unwrap(), 0);
        assert_eq!(pbc_homology(2, 3, &v3, &z3, 0, B).unwrap(), 0);
        let line = span(2, 3, &[vec![1, 1, 0]]);
        assert_eq!(pbc_homology(2, 3, &line, &line, -1, B).unwrap(), 1);
        assert_eq!(pbc_homology(2, 2, &Subspace::full(2, 2), &Subspace::zero(2, 2), -1, B).unwrap(), 0);
        let r = pbc_connectivity(2, 3, &v3, &z3, B).unwrap();
        assert!(r.pass);
        assert_eq!(r.homology, vec![(-1, 0), (0, 0)]);
    }

    #[test]
    fn relative_si_examples() {
        assert_eq!(relative_si_homology(2, 2, &Subspace::zero(2, 4), -1, B).unwrap(), 0);
        assert_eq!(relative_si_homology(2, 1, &Subspace::full(2, 2), -1, B).unwrap(), 1);
        assert_eq!(relative_si_homology(2, 2, &Subspace::full(2, 4), -1, B).unwrap(), 1);
        let pair = span(2, 6, &[vec![1, 0, 0, 0, 0, 0], vec![0, 1, 0, 0, 0, 0]]);
        assert_eq!(symplectic_part_dim(&pair), 2);
        assert_eq!(relative_si_bound(3, &pair), Q::int(-1));
        assert_eq!(relative_si_homology(2, 3, &pair, -1, B).unwrap(), 0);
    }

    #[test]
    fn identities_hold() {
        let v = Subspace::full(2, 3);
        pbc_set(2, 3, &v, &Subspace::zero(2, 3), 3, B).unwrap().check_identities().unwrap();
        let w = span(2, 4, &[vec![1, 0, 1, 0]]);
        let set = AugSemiSimplicialSet::build("si".into(), &CategoryId::si(2).unwrap(), 2, 2, B, &|f| {
            symplectic_complement(f.as_si().unwrap()).contains(&w)
        })
        .unwrap();
        set.check_identities().unwrap();
    }

    #[test]
    fn pbc_all_pairs_in_dimension_three() {
        for k in 0..=3 {
            for u in all_subspaces(2, 3, k) {
                for l in 0..=3 {
                    for w in all_subspaces(2, 3, l) {
                        let r = pbc_connectivity(2, 3, &u, &w, B).unwrap();
                        assert!(r.pass, "{r:?}");
                    }
                }
            }
        }
    }
}
