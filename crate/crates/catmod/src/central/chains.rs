//! Central stability chains `CC_i(A)_n = ⊕_{f: k^{i+1} -> k^n} A(C_f)`, with
//! `C_f` the chosen complement (VIC) or `im(f)^⊥` (SI), identified with a
//! standard object through a fixed frame.

use serde::Serialize;

use crate::category::enumerate::check_budget;
use crate::category::frame::{rref_frame, symplectic_frame};
use crate::category::morphism::{symplectic_complement, SiMorphism, VicMorphism};
use crate::category::{for_each_hom, CatMorphism, CategoryId};
use crate::cmodule::ModRef;
use crate::ctx::Ctx;
use crate::error::Result;
use crate::groups::order::predicted_hom_count;
use crate::linalg::sparse::{collect_terms, Echelon, SparseVec};
use crate::linalg::{FFMatrix, QMatrix, Subspace, Q};

/// The subspace whose value `A(C_f)` is the summand of `f`.
pub fn designated_complement(f: &CatMorphism) -> Subspace {
    match f {
        CatMorphism::Vic(m) => m.c.clone(),
        CatMorphism::Si(m) => symplectic_complement(m),
    }
}

/// Frame of a complement: RREF columns (VIC) or a symplectic basis (SI).
pub fn frame(cat: &CategoryId, c: &Subspace) -> FFMatrix {
    if cat.is_si() {
        symplectic_frame(c).expect("complement of a symplectic image is nondegenerate")
    } else {
        rref_frame(c)
    }
}

/// Drops column (VIC) or hyperbolic pair (SI) `j` of `f`.
pub fn face_morphism(f: &CatMorphism, j: usize) -> CatMorphism {
    match f {
        CatMorphism::Vic(m) => {
            let keep: Vec<usize> = (0..m.t.cols()).filter(|&c| c != j).collect();
            let t = m.t.select_columns(&keep);
            let extra = FFMatrix::from_rows(m.t.p(), m.t.rows(), &[m.t.column(j)]).expect("column length");
            let c = Subspace::canon(&m.c.basis().vstack(&extra), m.t.rows()).expect("ambient matches");
            CatMorphism::Vic(VicMorphism { t, c })
        }
        CatMorphism::Si(m) => {
            let keep: Vec<usize> = (0..m.a.cols()).filter(|&c| c / 2 != j).collect();
            CatMorphism::Si(SiMorphism { a: m.a.select_columns(&keep) })
        }
    }
}

/// Face `j` of `f` together with the morphism `C_f -> C_{d_j f}` written in frames.
pub fn face(cat: &CategoryId, f: &CatMorphism, j: usize) -> (CatMorphism, CatMorphism) {
    let g = face_morphism(f, j);
    let src = frame(cat, &designated_complement(f));
    let dst = frame(cat, &designated_complement(&g));
    let inc = dst.left_solve(&src).expect("complement grows under faces");
    let map = match f {
        CatMorphism::Vic(m) => {
            let coords = dst.left_solve(&FFMatrix::from_rows(m.t.p(), m.t.rows(), &[m.t.column(j)]).unwrap().transpose()).expect("in C'");
            CatMorphism::Vic(VicMorphism { t: inc, c: Subspace::column_space(&coords) })
        }
        CatMorphism::Si(_) => CatMorphism::Si(SiMorphism { a: inc }),
    };
    (g, map)
}

/// Category whose Hom sets index the chains. VIC^U modules use all VIC
/// morphisms, so the top level is not cut down to `GL^U`.
pub fn chain_category(cat: &CategoryId) -> CategoryId {
    if cat.is_si() {
        cat.clone()
    } else {
        cat.vic_base()
    }
}

/// Dimension of `CC_i(A)_n`; `i = -1` gives `A_n`.
pub fn cc_dim(a: &ModRef, i: isize, n: usize) -> usize {
    let size = (i + 1) as usize;
    if size > n {
        return 0;
    }
    let count = predicted_hom_count(&chain_category(a.cat()), size, n);
    num_traits::ToPrimitive::to_usize(&count).expect("small count") * a.dim(n - size)
}

/// `∂ (f ⊗ e_k) = Σ_j (-1)^j d_j f ⊗ A(C_f -> C_{d_j f}) e_k`, in the basis of
/// `CC_{i-1}` indexed by `Hom(k^i, k^n)` (key order) times `A_{n-i}`.
pub fn boundary_column(ctx: &Ctx, a: &ModRef, f: &CatMorphism, k: usize) -> Result<SparseVec> {
    let cat = a.cat();
    let size = f.source();
    let n = f.target();
    let faces = ctx.hom(&chain_category(cat), size - 1, n)?;
    let block = a.dim(n - size + 1) as u32;
    let mut terms = Vec::new();
    for j in 0..size {
        let (g, map) = face(cat, f, j);
        let base = faces.index_of(&g).expect("face is a morphism") as u32 * block;
        let sign = if j % 2 == 0 { Q::one() } else { Q::int(-1) };
        for (t, x) in a.column(&map, k) {
            terms.push((base + t, &x * &sign));
        }
    }
    Ok(collect_terms(terms))
}

/// Streams the columns of `∂_i: CC_i -> CC_{i-1}` for `i >= 0`.
pub fn for_each_boundary_column(
    ctx: &Ctx,
    a: &ModRef,
    i: usize,
    n: usize,
    sink: &mut dyn FnMut(SparseVec) -> bool,
) -> Result<()> {
    let cat = chain_category(a.cat());
    let size = i + 1;
    check_budget(format!("CC_{i} chains in degree {n}"), &predicted_hom_count(&cat, size, n), ctx.hom_budget())?;
    let dim_c = a.dim(n.saturating_sub(size));
    if size > n || dim_c == 0 {
        return Ok(());
    }
    let mut err = None;
    let mut stop = false;
    for_each_hom(&cat, size, n, &mut |f| {
        if stop {
            return;
        }
        for k in 0..dim_c {
            match boundary_column(ctx, a, &f, k) {
                Ok(col) => {
                    if !sink(col) {
                        stop = true;
                        return;
                    }
                }
                Err(e) => {
                    err = Some(e);
                    stop = true;
                    return;
                }
            }
        }
    });
    err.map_or(Ok(()), Err)
}

/// Rank of `∂_i` (zero for `i = -1`), stopping early once `cap` is reached.
pub fn boundary_rank(ctx: &Ctx, a: &ModRef, i: isize, n: usize, cap: usize) -> Result<usize> {
    if i < 0 || cap == 0 {
        return Ok(0);
    }
    let mut e = Echelon::new(cc_dim(a, i - 1, n));
    for_each_boundary_column(ctx, a, i as usize, n, &mut |col| {
        e.insert(col);
        e.rank() < cap
    })?;
    Ok(e.rank())
}

/// `∂_i` as sparse columns, in chain-basis order (Hom key order times `A`).
pub fn boundary_columns(ctx: &Ctx, a: &ModRef, i: usize, n: usize) -> Result<Vec<SparseVec>> {
    let hom = ctx.hom(&chain_category(a.cat()), i + 1, n)?;
    let dim_c = if i < n { a.dim(n - i - 1) } else { 0 };
    let mut out = Vec::with_capacity(hom.len() * dim_c);
    for f in hom.morphisms() {
        for k in 0..dim_c {
            out.push(boundary_column(ctx, a, f, k)?);
        }
    }
    Ok(out)
}

/// Dense `∂_i`; only for small chain spaces.
pub fn boundary_matrix(ctx: &Ctx, a: &ModRef, i: usize, n: usize) -> Result<QMatrix> {
    let cols = boundary_columns(ctx, a, i, n)?;
    Ok(QMatrix::from_sparse_columns(cc_dim(a, i as isize - 1, n), &cols))
}

#[derive(Clone, Debug, Serialize)]
pub struct CentralHomology {
    pub i: isize,
    pub n: usize,
    pub chain_dims: [usize; 2],
    pub kernel_dim: usize,
    pub image_rank: usize,
    pub homology: usize,
}

/// `dim HH_i(A)_n = dim ker ∂_i - rank ∂_{i+1}`. The rank of `∂_{i+1}` stops
/// growing at `dim ker ∂_i`, which bounds the elimination.
pub fn central_homology(ctx: &Ctx, a: &ModRef, i: isize, n: usize) -> Result<CentralHomology> {
    let dim_i = cc_dim(a, i, n);
    let rank_i = boundary_rank(ctx, a, i, n, dim_i.min(cc_dim(a, i - 1, n)))?;
    let kernel_dim = dim_i - rank_i;
    let image_rank = boundary_rank(ctx, a, i + 1, n, kernel_dim)?;
    Ok(CentralHomology {
        i,
        n,
        chain_dims: [dim_i, cc_dim(a, i + 1, n)],
        kernel_dim,
        image_rank,
        homology: kernel_dim - image_rank,
    })
}

/// `HH_i(M(0))_n` is claimed to vanish for `n` above this degree.
pub fn m0_vanishing_degree(cat: &CategoryId, i: isize) -> isize {
    if cat.is_si() {
        2 * i + 3
    } else {
        2 * i + 2
    }
}

/// One central homology computation checked against a vanishing claim.
#[derive(Clone, Debug, Serialize)]
pub struct CentralReport {
    pub complex: String,
    pub dims: [usize; 2],
    pub homology: usize,
    /// Vanishing is claimed for `n` strictly above this degree.
    pub bound: Option<isize>,
    pub pass: bool,
}

pub fn central_report(ctx: &Ctx, a: &ModRef, label: &str, i: isize, n: usize, bound: Option<isize>) -> Result<CentralReport> {
    let h = central_homology(ctx, a, i, n)?;
    let claimed = bound.is_some_and(|b| n as isize > b);
    Ok(CentralReport {
        complex: format!("CC_{i}({label})_{n} over {}", a.cat()),
        dims: h.chain_dims,
        homology: h.homology,
        bound,
        pass: !claimed || h.homology == 0,
    })
}

/// `outer * inner` with `outer` given by its columns.
pub fn compose_columns(outer: &[SparseVec], inner: &SparseVec) -> SparseVec {
    let mut terms = Vec::new();
    for (j, x) in inner {
        for (i, y) in &outer[*j as usize] {
            terms.push((*i, x * y));
        }
    }
    collect_terms(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmodule::representable;
    use crate::linalg::sparse::unit;

    #[test]
    fn chain_dimensions_and_augmentation() {
        let ctx = Ctx::default();
        let vic2 = CategoryId::vic(2).unwrap();
        let m0: ModRef = representable(&ctx, &vic2, 0, 4).unwrap();
        assert_eq!(cc_dim(&m0, 0, 2), 6);
        assert_eq!(cc_dim(&m0, -1, 3), 1);
        let cols = boundary_columns(&ctx, &m0, 0, 2).unwrap();
        assert_eq!(cols.len(), 6);
        assert!(cols.iter().all(|c| c == &unit(0)));
        let d0 = boundary_matrix(&ctx, &m0, 0, 2).unwrap();
        assert_eq!((d0.rows(), d0.cols()), (1, 6));
        let si: ModRef = representable(&ctx, &CategoryId::si(2).unwrap(), 0, 2).unwrap();
        assert_eq!(cc_dim(&si, 0, 2), 120);
        assert_eq!(frame(&CategoryId::si(2).unwrap(), &Subspace::full(2, 4)), FFMatrix::identity(2, 4));
    }

    #[test]
    fn boundary_squares_to_zero() {
        let ctx = Ctx::default();
        for cat in [CategoryId::vic(2).unwrap(), CategoryId::vic(3).unwrap(), CategoryId::vic_u(3, &[1]).unwrap(), CategoryId::si(2).unwrap()] {
            let top = if cat.is_si() { 2 } else { 3 };
            for d in 0..=1 {
                let a: ModRef = representable(&ctx, &cat, d, top).unwrap();
                for n in 1..=top {
                    for i in 1..n {
                        let outer = boundary_columns(&ctx, &a, i - 1, n).unwrap();
                        for col in boundary_columns(&ctx, &a, i, n).unwrap() {
                            assert!(compose_columns(&outer, &col).is_empty(), "{cat} d={d} n={n} i={i}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn simplicial_identities() {
        for cat in [CategoryId::vic(2).unwrap(), CategoryId::si(2).unwrap()] {
            let (size, n) = if cat.is_si() { (2, 2) } else { (3, 3) };
            for_each_hom(&cat, size, n, &mut |f| {
                for k in 0..size {
                    for j in 0..k {
                        let left = face_morphism(&face_morphism(&f, k), j);
                        let right = face_morphism(&face_morphism(&f, j), k - 1);
                        assert_eq!(left, right);
                    }
                }
            });
        }
    }

    #[test]
    fn m0_vanishing() {
        let ctx = Ctx::default();
        let vic2 = CategoryId::vic(2).unwrap();
        let m0: ModRef = representable(&ctx, &vic2, 0, 4).unwrap();
        for n in 1..=4 {
            assert_eq!(central_homology(&ctx, &m0, -1, n).unwrap().homology, 0);
        }
        for n in 3..=4 {
            assert_eq!(central_homology(&ctx, &m0, 0, n).unwrap().homology, 0);
        }
        let si: ModRef = representable(&ctx, &CategoryId::si(2).unwrap(), 0, 3).unwrap();
        for n in 2..=3 {
            assert_eq!(central_homology(&ctx, &si, -1, n).unwrap().homology, 0);
        }
        assert_eq!(m0.dim(4), 1);
    }
}
