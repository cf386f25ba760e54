//! Covers `M(H0(A)) -> A`, their kernels, and the resulting resolutions.
//!
//! The cover induces an isomorphism on H0 and `M(H0(A))` is H0-acyclic, so
//! the long exact sequence gives `H_i(A) = H0(K^{i-1})` with `K^{-1} = A`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::h0::{h0, H0};
use super::induced::{Induced, InducedMap, Piece};
use super::rep::{group_average, GroupRep};
use super::sub::SubModule;
use super::{CModule, ModRef, WindowDegree};
use crate::category::morphism::{automorphism, si_automorphism};
use crate::category::CatMorphism;
use crate::ctx::Ctx;
use crate::error::{invalid, Result};
use crate::linalg::sparse::{unit, SparseVec, TrackedEchelon};

/// `M(H0(A)) -> A` together with its degreewise kernel.
pub struct Cover {
    pub h0: H0,
    pub module: Arc<Induced>,
    pub map: InducedMap,
    pub kernel: Arc<SubModule>,
}

fn inverse(g: &CatMorphism) -> CatMorphism {
    let inv = g.matrix().inverse().expect("automorphism");
    match g {
        CatMorphism::Vic(_) => automorphism(inv),
        CatMorphism::Si(_) => si_automorphism(inv),
    }
}

/// Builds the cover from a `G_d`-equivariant section of `A_d -> H0(A)_d`:
/// the section `e_j -> (lifting column)` averaged over `G_d`.
pub fn cover(ctx: &Ctx, a: &ModRef) -> Result<Cover> {
    let cat = a.cat().clone();
    let h = h0(a);
    let mut pieces = Vec::new();
    let mut images = Vec::new();
    for d in 0..=a.window() {
        let q = h.dim(d);
        if q == 0 {
            continue;
        }
        let tree = ctx.tree(&cat, d)?;
        let free = h.basis_columns(d);
        let pos: HashMap<u32, u32> = free.iter().enumerate().map(|(i, &c)| (c as u32, i as u32)).collect();
        let rel = &h.rel[d];
        let project = |v: SparseVec| -> SparseVec {
            let mut out: SparseVec = rel.reduce(v).into_iter().map(|(c, x)| (pos[&c], x)).collect();
            out.sort_by_key(|t| t.0);
            out
        };
        let gen_cols: Vec<Vec<SparseVec>> =
            tree.gens.iter().map(|s| free.iter().map(|&c| project(a.column(s, c))).collect()).collect();
        let section: Vec<SparseVec> = free
            .iter()
            .map(|&c| {
                if tree.len() == 1 {
                    return unit(c);
                }
                group_average(&tree, |g| a.apply(g, &rel.reduce(a.column(&inverse(g), c))))
            })
            .collect();
        for (j, s) in section.iter().enumerate() {
            if project(s.clone()) != unit(j) {
                return invalid(format!("averaged section fails to split H0 in degree {d}"));
            }
        }
        pieces.push(Piece::Rep(GroupRep::from_columns(tree, q, gen_cols)));
        images.push(section);
    }
    let module = Induced::new(ctx, &cat, a.window(), pieces)?;
    let map = InducedMap::new(module.clone(), a.clone(), images)?;
    let mut levels = Vec::with_capacity(a.window() + 1);
    for n in 0..=a.window() {
        let mut t = TrackedEchelon::new();
        for j in 0..module.dim(n) {
            t.push(map.column(n, j));
        }
        if t.rank() != a.dim(n) {
            return invalid(format!("cover has rank {} onto a space of dimension {} in degree {n}", t.rank(), a.dim(n)));
        }
        let (basis, free) = t.into_kernel();
        levels.push((basis, free.into_iter().map(|f| f as u32).collect()));
    }
    let kernel = SubModule::new(module.clone() as ModRef, levels);
    Ok(Cover { h0: h, module, map, kernel })
}

#[derive(Clone, Debug, Serialize)]
pub struct Presentation {
    pub gen_degree: WindowDegree,
    pub rel_degree: WindowDegree,
    pub window_insufficient: bool,
}

/// Generation degree of `A` and of the kernel of its cover.
pub fn presentation_data(ctx: &Ctx, a: &ModRef) -> Result<Presentation> {
    let c = cover(ctx, a)?;
    let gen_degree = c.h0.generation_degree();
    let kernel: ModRef = c.kernel.clone();
    let rel_degree = h0(&kernel).generation_degree();
    Ok(Presentation { gen_degree, rel_degree, window_insufficient: gen_degree.at_boundary || rel_degree.at_boundary })
}

/// `M^0 -> A`, `M^1 -> K^0`, ..., `M^depth -> K^{depth-1}`.
pub struct Resolution {
    pub covers: Vec<Cover>,
}

impl Resolution {
    /// Window generation degree of each `M^k`.
    pub fn generation_degrees(&self) -> Vec<WindowDegree> {
        self.covers.iter().map(|c| c.h0.generation_degree()).collect()
    }

    pub fn term_dims(&self) -> Vec<Vec<usize>> {
        self.covers.iter().map(|c| c.module.dims()).collect()
    }

    pub fn kernel_dims(&self) -> Vec<Vec<usize>> {
        self.covers.iter().map(|c| c.kernel.dims()).collect()
    }
}

pub fn resolve(ctx: &Ctx, a: &ModRef, depth: usize) -> Result<Resolution> {
    let mut covers: Vec<Cover> = Vec::with_capacity(depth + 1);
    for k in 0..=depth {
        let target: ModRef = if k == 0 { a.clone() } else { covers[k - 1].kernel.clone() };
        covers.push(cover(ctx, &target)?);
    }
    Ok(Resolution { covers })
}

/// Dimensions of `H_i(A)_n` over the window.
pub fn derived_homology(ctx: &Ctx, a: &ModRef, i: usize) -> Result<Vec<usize>> {
    if i == 0 {
        return Ok(h0(a).dims());
    }
    let r = resolve(ctx, a, i - 1)?;
    let k: ModRef = r.covers[i - 1].kernel.clone();
    Ok(h0(&k).dims())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::CategoryId;
    use crate::cmodule::sub::skyscraper;
    use crate::cmodule::{representable, Degree};

    #[test]
    fn skyscraper_presentation_and_homology() {
        let ctx = Ctx::default();
        let cat = CategoryId::vic(2).unwrap();
        let a = skyscraper(&ctx, &cat, 4).unwrap();
        let p = presentation_data(&ctx, &a).unwrap();
        assert_eq!((p.gen_degree.degree, p.rel_degree.degree), (Degree::At(0), Degree::At(1)));
        assert!(!p.window_insufficient);
        assert_eq!(derived_homology(&ctx, &a, 1).unwrap(), vec![0, 1, 0, 0, 0]);
        let r = resolve(&ctx, &a, 2).unwrap();
        let g = r.generation_degrees();
        assert_eq!(g[0].degree, Degree::At(0));
        assert_eq!(g[1].degree, Degree::At(1));
    }

    #[test]
    fn representables_are_free_and_acyclic() {
        let ctx = Ctx::default();
        for cat in [CategoryId::vic(2).unwrap(), CategoryId::vic(3).unwrap(), CategoryId::si(2).unwrap()] {
            let top = if cat.is_si() { 2 } else { 3 };
            for d in 0..=1 {
                let m: ModRef = representable(&ctx, &cat, d, top).unwrap();
                let p = presentation_data(&ctx, &m).unwrap();
                assert_eq!(p.gen_degree.degree, Degree::At(d));
                assert_eq!(p.rel_degree.degree, Degree::None);
                for i in 1..=2 {
                    assert!(derived_homology(&ctx, &m, i).unwrap().iter().all(|&x| x == 0));
                }
            }
        }
        let zero: ModRef = representable(&ctx, &CategoryId::vic(2).unwrap(), 4, 2).unwrap();
        let p = presentation_data(&ctx, &zero).unwrap();
        assert_eq!((p.gen_degree.degree, p.rel_degree.degree), (Degree::None, Degree::None));
        assert_eq!(derived_homology(&ctx, &zero, 1).unwrap(), vec![0, 0, 0]);
    }
}
