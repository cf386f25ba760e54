use std::collections::HashMap;
use std::sync::Arc;

use super::{CModule, ModRef};
use crate::category::{CatMorphism, CategoryId};
use crate::ctx::Ctx;
use crate::error::Result;
use crate::linalg::sparse::{unit, Echelon, SparseVec};

/// A submodule given degreewise by a basis in which vector `i` has
/// coefficient 1 at `coord[i]` and 0 at every other `coord` column, so
/// coordinates are read off those columns.
pub struct SubModule {
    parent: ModRef,
    levels: Vec<SubLevel>,
}

struct SubLevel {
    basis: Vec<SparseVec>,
    /// Basis index of each coordinate column.
    position: HashMap<u32, u32>,
}

impl SubModule {
    /// `levels[n] = (basis, coordinate columns)`; the caller guarantees closure under the action.
    pub fn new(parent: ModRef, levels: Vec<(Vec<SparseVec>, Vec<u32>)>) -> Arc<SubModule> {
        assert_eq!(levels.len(), parent.window() + 1);
        let levels = levels
            .into_iter()
            .map(|(basis, coord)| SubLevel { basis, position: coord.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect() })
            .collect();
        Arc::new(SubModule { parent, levels })
    }

    /// The submodule spanned degreewise by the rows of the given echelons.
    pub fn from_echelons(parent: ModRef, spans: &[Echelon]) -> Arc<SubModule> {
        let levels = spans
            .iter()
            .map(|e| {
                let rows = e.rref_rows();
                let coord = rows.iter().map(|r| r[0].0).collect();
                (rows, coord)
            })
            .collect();
        SubModule::new(parent, levels)
    }

    pub fn parent(&self) -> &ModRef {
        &self.parent
    }

    /// Basis vector `i` of degree `n` as a vector of the parent.
    pub fn basis_vector(&self, n: usize, i: usize) -> &SparseVec {
        &self.levels[n].basis[i]
    }

    /// Coordinates of a parent vector known to lie in the submodule.
    pub fn coordinates(&self, n: usize, v: &SparseVec) -> SparseVec {
        let lv = &self.levels[n];
        let mut out: SparseVec = v.iter().filter_map(|(c, x)| lv.position.get(c).map(|&i| (i, x.clone()))).collect();
        out.sort_unstable_by_key(|t| t.0);
        out
    }
}

impl CModule for SubModule {
    fn cat(&self) -> &CategoryId {
        self.parent.cat()
    }

    fn window(&self) -> usize {
        self.parent.window()
    }

    fn dim(&self, n: usize) -> usize {
        self.levels[n].basis.len()
    }

    fn column(&self, f: &CatMorphism, j: usize) -> SparseVec {
        let w = self.parent.apply(f, &self.levels[f.source()].basis[j]);
        self.coordinates(f.target(), &w)
    }
}

/// `A / S` with `S` given degreewise by an echelon basis; the quotient basis
/// is the set of non-pivot columns.
pub struct Quotient {
    parent: ModRef,
    rel: Vec<Echelon>,
    free: Vec<Vec<usize>>,
    pos: Vec<HashMap<u32, u32>>,
}

impl Quotient {
    /// The caller guarantees the spans form a submodule.
    pub fn new(parent: ModRef, rel: Vec<Echelon>) -> Arc<Quotient> {
        assert_eq!(rel.len(), parent.window() + 1);
        let free: Vec<Vec<usize>> = rel.iter().map(|e| e.nonpivots()).collect();
        let pos = free.iter().map(|f| f.iter().enumerate().map(|(i, &c)| (c as u32, i as u32)).collect()).collect();
        Arc::new(Quotient { parent, rel, free, pos })
    }

    pub fn parent(&self) -> &ModRef {
        &self.parent
    }

    pub fn relations(&self, n: usize) -> &Echelon {
        &self.rel[n]
    }

    /// Quotient coordinates of a parent vector.
    pub fn project(&self, n: usize, v: SparseVec) -> SparseVec {
        let r = self.rel[n].reduce(v);
        let mut out: SparseVec = r.into_iter().map(|(c, x)| (self.pos[n][&c], x)).collect();
        out.sort_by_key(|t| t.0);
        out
    }

    /// The parent basis vector lifting quotient basis vector `i`.
    pub fn lift(&self, n: usize, i: usize) -> usize {
        self.free[n][i]
    }
}

impl CModule for Quotient {
    fn cat(&self) -> &CategoryId {
        self.parent.cat()
    }

    fn window(&self) -> usize {
        self.parent.window()
    }

    fn dim(&self, n: usize) -> usize {
        self.free[n].len()
    }

    fn column(&self, f: &CatMorphism, j: usize) -> SparseVec {
        let w = self.parent.column(f, self.free[f.source()][j]);
        self.project(f.target(), w)
    }

    fn apply(&self, f: &CatMorphism, v: &SparseVec) -> SparseVec {
        let lifted: SparseVec = v.iter().map(|(i, x)| (self.free[f.source()][*i as usize] as u32, x.clone())).collect();
        let mut lifted = lifted;
        lifted.sort_by_key(|t| t.0);
        let w = self.parent.apply(f, &lifted);
        self.project(f.target(), w)
    }
}

/// Degreewise span of `seeds` closed under the action of `G_n` generators and
/// images from lower degrees: the submodule generated by the seeds.
pub fn generated_submodule(a: &ModRef, seeds: &[Vec<SparseVec>]) -> Vec<Echelon> {
    let cat = a.cat().clone();
    let mut out: Vec<Echelon> = Vec::with_capacity(a.window() + 1);
    for n in 0..=a.window() {
        let mut e = Echelon::new(a.dim(n));
        if n > 0 {
            let iota = crate::category::standard_inclusion(&cat, n - 1);
            for r in out[n - 1].rows() {
                e.insert(a.apply(&iota, r));
            }
        }
        for s in &seeds[n] {
            e.insert(s.clone());
        }
        close_under_group(a, n, &mut e);
        out.push(e);
    }
    out
}

/// Enlarges `e` to its `G_n`-span.
pub fn close_under_group(a: &ModRef, n: usize, e: &mut Echelon) {
    let gens = crate::groups::generators(a.cat(), n);
    let mut k = 0;
    while k < e.rank() && !e.is_full() {
        let r = e.rows()[k].clone();
        for g in &gens {
            e.insert(a.apply(g, &r));
            if e.is_full() {
                return;
            }
        }
        k += 1;
    }
}

/// Basis vectors `e_j` as sparse vectors, for seeding.
pub fn units(dim: usize) -> Vec<SparseVec> {
    (0..dim).map(unit).collect()
}

/// `Q` in degree 0 with every non-isomorphism acting by zero: `M(0)` modulo
/// all of its degrees `>= 1`.
pub fn skyscraper(ctx: &Ctx, cat: &CategoryId, window: usize) -> Result<ModRef> {
    let m0: ModRef = super::representable(ctx, cat, 0, window)?;
    let rel = (0..=window)
        .map(|n| {
            let mut e = Echelon::new(1);
            if n > 0 {
                e.insert(unit(0));
            }
            e
        })
        .collect();
    Ok(Quotient::new(m0, rel))
}
