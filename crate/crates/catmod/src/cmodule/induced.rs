use std::sync::Arc;

use super::rep::GroupRep;
use super::{CModule, ModRef};
use crate::category::enumerate::HomSet;
use crate::category::{orbit_normal_form, CatMorphism, CategoryId};
use crate::ctx::{Ctx, OrbitBasis};
use crate::error::{invalid, Result};
use crate::linalg::sparse::{unit, SparseVec};

/// A summand of an induced module.
#[derive(Clone, Debug)]
pub enum Piece {
    /// The representable `M(d)`, with basis `Hom(k^d, k^n)`.
    Free(usize),
    /// `M(W)` for a representation `W` of `G_d`, with basis
    /// (orbit normal form, basis vector of `W`).
    Rep(GroupRep),
}

impl Piece {
    pub fn degree(&self) -> usize {
        match self {
            Piece::Free(d) => *d,
            Piece::Rep(w) => w.tree.d,
        }
    }
}

enum LevelBasis {
    Hom(Arc<HomSet>),
    Orbits(Arc<OrbitBasis>, usize),
}

impl LevelBasis {
    fn dim(&self) -> usize {
        match self {
            LevelBasis::Hom(h) => h.len(),
            LevelBasis::Orbits(o, w) => o.len() * w,
        }
    }
}

/// Direct sum of modules `M(W_i)`.
pub struct Induced {
    cat: CategoryId,
    window: usize,
    pieces: Vec<Piece>,
    /// `levels[n][i]`: basis of piece `i` in degree `n`.
    levels: Vec<Vec<LevelBasis>>,
    offsets: Vec<Vec<usize>>,
}

pub fn representable(ctx: &Ctx, cat: &CategoryId, d: usize, window: usize) -> Result<Arc<Induced>> {
    Induced::new(ctx, cat, window, vec![Piece::Free(d)])
}

pub fn induced(ctx: &Ctx, cat: &CategoryId, reps: Vec<GroupRep>, window: usize) -> Result<Arc<Induced>> {
    Induced::new(ctx, cat, window, reps.into_iter().map(Piece::Rep).collect())
}

impl Induced {
    pub fn new(ctx: &Ctx, cat: &CategoryId, window: usize, pieces: Vec<Piece>) -> Result<Arc<Induced>> {
        for p in &pieces {
            if let Piece::Rep(w) = p {
                if &w.tree.cat != cat {
                    return invalid(format!("representation of a group of {} used over {cat}", w.tree.cat));
                }
            }
        }
        let mut levels = Vec::with_capacity(window + 1);
        let mut offsets = Vec::with_capacity(window + 1);
        for n in 0..=window {
            let mut lv = Vec::with_capacity(pieces.len());
            let mut off = vec![0];
            for p in &pieces {
                let b = match p {
                    Piece::Free(d) => LevelBasis::Hom(ctx.hom(cat, *d, n)?),
                    Piece::Rep(w) => LevelBasis::Orbits(ctx.orbit_basis(cat, w.tree.d, n)?, w.dim),
                };
                off.push(off.last().unwrap() + b.dim());
                lv.push(b);
            }
            levels.push(lv);
            offsets.push(off);
        }
        Ok(Arc::new(Induced { cat: cat.clone(), window, pieces, levels, offsets }))
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// `(piece, morphism, index in W)` of basis vector `j` in degree `n`.
    pub fn locate(&self, n: usize, j: usize) -> (usize, &CatMorphism, usize) {
        let off = &self.offsets[n];
        let i = off.partition_point(|&o| o <= j) - 1;
        let local = j - off[i];
        match &self.levels[n][i] {
            LevelBasis::Hom(h) => (i, h.get(local), 0),
            LevelBasis::Orbits(o, w) => (i, &o.reps[local / w], local % w),
        }
    }

    /// Index of the basis vector `(f, k)` of piece `i`, with `f` a Hom
    /// element (free piece) or a normal form.
    fn index(&self, n: usize, i: usize, f: &CatMorphism, k: usize) -> usize {
        let local = match &self.levels[n][i] {
            LevelBasis::Hom(h) => h.index_of(f).expect("Hom set contains composite"),
            LevelBasis::Orbits(o, w) => o.index_of(f).expect("normal form listed") * w + k,
        };
        self.offsets[n][i] + local
    }

    /// Generator `e_k` of piece `i` (the identity morphism tensor `e_k`) in degree `d_i`.
    pub fn generator(&self, i: usize, k: usize) -> usize {
        let d = self.pieces[i].degree();
        let id = crate::category::identity(&self.cat, d);
        self.index(d, i, &id, k)
    }
}

impl CModule for Induced {
    fn cat(&self) -> &CategoryId {
        &self.cat
    }

    fn window(&self) -> usize {
        self.window
    }

    fn dim(&self, n: usize) -> usize {
        *self.offsets[n].last().unwrap()
    }

    fn column(&self, f: &CatMorphism, j: usize) -> SparseVec {
        let (m, n) = (f.source(), f.target());
        let (i, h, k) = self.locate(m, j);
        let composite = f.compose_unchecked(h);
        match &self.pieces[i] {
            Piece::Free(_) => unit(self.index(n, i, &composite, 0)),
            Piece::Rep(w) => {
                let (nf, g) = orbit_normal_form(&self.cat, &composite);
                let base = self.index(n, i, &nf, 0);
                w.apply(&g, &unit(k)).into_iter().map(|(t, x)| (t + base as u32, x)).collect()
            }
        }
    }
}

/// The map `M(W) -> A` determined by `G_d`-equivariant images of the generators.
pub struct InducedMap {
    pub source: Arc<Induced>,
    pub target: ModRef,
    /// `images[i][k]`: image in `A_{d_i}` of generator `k` of piece `i`.
    images: Vec<Vec<SparseVec>>,
}

impl InducedMap {
    /// Checks equivariance on the generators of each `G_d`.
    pub fn new(source: Arc<Induced>, target: ModRef, images: Vec<Vec<SparseVec>>) -> Result<InducedMap> {
        if images.len() != source.pieces.len() {
            return invalid("one image list per induced summand is required");
        }
        for (piece, imgs) in source.pieces.iter().zip(&images) {
            let d = piece.degree();
            if d > target.window() {
                return invalid(format!("summand generated in degree {d} lies outside the target window"));
            }
            match piece {
                Piece::Free(_) if imgs.len() != 1 => return invalid("a free summand needs exactly one image"),
                Piece::Rep(w) if imgs.len() != w.dim => return invalid("image count differs from the representation dimension"),
                Piece::Rep(w) => {
                    for (s, g) in w.tree.gens.iter().enumerate() {
                        for (k, img) in imgs.iter().enumerate() {
                            let lhs = target.apply(g, img);
                            let mut rhs_terms = Vec::new();
                            for (t, x) in w.apply_generator(s, &unit(k)) {
                                for (u, y) in &imgs[t as usize] {
                                    rhs_terms.push((*u, &x * y));
                                }
                            }
                            if lhs != crate::linalg::sparse::collect_terms(rhs_terms) {
                                return invalid(format!("generator images are not G_{d}-equivariant"));
                            }
                        }
                    }
                }
                Piece::Free(_) => {}
            }
        }
        Ok(InducedMap { source, target, images })
    }

    /// Image of basis vector `j` of the source in degree `n`.
    pub fn column(&self, n: usize, j: usize) -> SparseVec {
        let (i, h, k) = self.source.locate(n, j);
        self.target.apply(h, &self.images[i][k])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{compose, for_each_hom};
    use crate::ctx::Ctx;
    use crate::linalg::QMatrix;
    use rand::{Rng, SeedableRng};

    #[test]
    fn representable_dimensions() {
        let ctx = Ctx::default();
        let vic2 = CategoryId::vic(2).unwrap();
        assert_eq!(representable(&ctx, &vic2, 0, 4).unwrap().dims(), vec![1, 1, 1, 1, 1]);
        assert_eq!(representable(&ctx, &vic2, 1, 4).unwrap().dims(), vec![0, 1, 6, 28, 120]);
        let si2 = CategoryId::si(2).unwrap();
        assert_eq!(representable(&ctx, &si2, 1, 2).unwrap().dims(), vec![0, 6, 120]);
    }

    #[test]
    fn induced_dimensions() {
        let ctx = Ctx::default();
        let vic2 = CategoryId::vic(2).unwrap();
        let triv = GroupRep::trivial(ctx.tree(&vic2, 1).unwrap(), 1);
        assert_eq!(induced(&ctx, &vic2, vec![triv], 3).unwrap().dims(), vec![0, 1, 6, 28]);
        // with complements: lines times complements, 1, 3*2, 7*4
        let reg = GroupRep::regular(ctx.tree(&vic2, 2).unwrap());
        let a = induced(&ctx, &vic2, vec![reg], 3).unwrap();
        let b = representable(&ctx, &vic2, 2, 3).unwrap();
        assert_eq!(a.dims(), b.dims());
        let zero = GroupRep::trivial(ctx.tree(&vic2, 1).unwrap(), 0);
        assert_eq!(induced(&ctx, &vic2, vec![zero], 3).unwrap().dims(), vec![0, 0, 0, 0]);
    }

    /// Functoriality on random composable pairs, including a nontrivial representation.
    #[test]
    fn functorial() {
        let ctx = Ctx::default();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for cat in [CategoryId::vic(3).unwrap(), CategoryId::vic_u(3, &[1]).unwrap(), CategoryId::si(2).unwrap()] {
            let tree = ctx.tree(&cat, 1).unwrap();
            // sign-like character through the determinant for VIC over F3
            let mats: Vec<QMatrix> = tree
                .gens
                .iter()
                .map(|g| {
                    let sign = if !cat.is_si() && g.matrix().det() == 2 { -1 } else { 1 };
                    QMatrix::from_ints(1, 1, &[sign]).unwrap()
                })
                .collect();
            let w = GroupRep::new(tree, 1, &mats).unwrap();
            let top = if cat.is_si() { 2 } else { 3 };
            let m = Induced::new(&ctx, &cat, top, vec![Piece::Rep(w), Piece::Free(1)]).unwrap();
            let mut homs = Vec::new();
            for a in 0..=top {
                for b in a..=top {
                    let mut v = Vec::new();
                    for_each_hom(&cat, a, b, &mut |f| v.push(f));
                    homs.push(((a, b), v));
                }
            }
            let pick = |rng: &mut rand_chacha::ChaCha8Rng, a: usize, b: usize| {
                let v = &homs.iter().find(|x| x.0 == (a, b)).unwrap().1;
                v[rng.gen_range(0..v.len())].clone()
            };
            for _ in 0..200 {
                let a = rng.gen_range(0..=top);
                let b = rng.gen_range(a..=top);
                let c = rng.gen_range(b..=top);
                let g = pick(&mut rng, a, b);
                let f = pick(&mut rng, b, c);
                let fg = compose(&f, &g).unwrap();
                assert_eq!(m.matrix(&fg), m.matrix(&f).mul(&m.matrix(&g)));
            }
            for n in 0..=top {
                let id = crate::category::identity(&cat, n);
                assert_eq!(m.matrix(&id), QMatrix::identity(m.dim(n)));
            }
        }
    }
}
