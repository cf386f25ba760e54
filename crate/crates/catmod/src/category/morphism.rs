use std::fmt;

use serde::{Deserialize, Serialize};

use super::id::{CategoryId, Flavor};
use crate::error::{invalid, Result};
use crate::linalg::ff::neg_mod;
use crate::linalg::{FFMatrix, Subspace};

/// Canonical serialization of a morphism: base-p digits of the injection
/// (row-major) followed by the canonical complement basis, or of the
/// symplectic matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MorphismKey(pub Vec<u8>);

impl fmt::Display for MorphismKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &d in &self.0 {
            write!(f, "{}", (b'0' + d) as char)?;
        }
        Ok(())
    }
}

impl fmt::Debug for MorphismKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Key({self})")
    }
}

impl MorphismKey {
    pub fn parse(s: &str) -> Option<MorphismKey> {
        s.bytes().map(|b| b.checked_sub(b'0').filter(|&d| d < 10)).collect::<Option<Vec<u8>>>().map(MorphismKey)
    }
}

/// `(T, C)`: injection `T` (n x d) with a chosen complement `C` of its image.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VicMorphism {
    pub t: FFMatrix,
    pub c: Subspace,
}

/// Symplectic embedding `A` (2n x 2d) with `A^T Omega_n A = Omega_d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SiMorphism {
    pub a: FFMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CatMorphism {
    Vic(VicMorphism),
    Si(SiMorphism),
}

/// Unvalidated input to [`make_morphism`].
#[derive(Clone, Debug)]
pub enum RawMorphism {
    /// Injection and any spanning set (as rows) of the complement.
    Vic { t: FFMatrix, complement: FFMatrix },
    Si { a: FFMatrix },
}

/// The standard symplectic form on F_p^{2n}: 2x2 blocks [[0,1],[-1,0]], basis v1,w1,v2,w2,...
pub fn omega(p: u8, n: usize) -> FFMatrix {
    let mut m = FFMatrix::zeros(p, 2 * n, 2 * n);
    for i in 0..n {
        m.set(2 * i, 2 * i + 1, 1);
        m.set(2 * i + 1, 2 * i, p - 1);
    }
    m
}

/// `omega(x, y)` for the standard form.
#[inline]
pub fn pairing(p: u8, x: &[u8], y: &[u8]) -> u8 {
    let mut s = 0u32;
    for i in 0..x.len() / 2 {
        s += x[2 * i] as u32 * y[2 * i + 1] as u32 + (p - 1) as u32 * (x[2 * i + 1] as u32 * y[2 * i] as u32 % p as u32);
    }
    (s % p as u32) as u8
}

pub fn is_symplectic(a: &FFMatrix) -> bool {
    let (rows, cols) = (a.rows(), a.cols());
    if rows % 2 != 0 || cols % 2 != 0 {
        return false;
    }
    let p = a.p();
    a.transpose().mul(&omega(p, rows / 2)).mul(a) == omega(p, cols / 2)
}

impl CatMorphism {
    pub fn p(&self) -> u8 {
        match self {
            CatMorphism::Vic(m) => m.t.p(),
            CatMorphism::Si(m) => m.a.p(),
        }
    }

    /// Source degree (half-rank for SI).
    pub fn source(&self) -> usize {
        match self {
            CatMorphism::Vic(m) => m.t.cols(),
            CatMorphism::Si(m) => m.a.cols() / 2,
        }
    }

    pub fn target(&self) -> usize {
        match self {
            CatMorphism::Vic(m) => m.t.rows(),
            CatMorphism::Si(m) => m.a.rows() / 2,
        }
    }

    /// The linear map underlying the morphism.
    pub fn matrix(&self) -> &FFMatrix {
        match self {
            CatMorphism::Vic(m) => &m.t,
            CatMorphism::Si(m) => &m.a,
        }
    }

    pub fn key(&self) -> MorphismKey {
        match self {
            CatMorphism::Vic(m) => {
                let mut k = m.t.digits().to_vec();
                k.extend_from_slice(m.c.digits());
                MorphismKey(k)
            }
            CatMorphism::Si(m) => MorphismKey(m.a.digits().to_vec()),
        }
    }

    pub fn as_vic(&self) -> Option<&VicMorphism> {
        match self {
            CatMorphism::Vic(m) => Some(m),
            CatMorphism::Si(_) => None,
        }
    }

    pub fn as_si(&self) -> Option<&SiMorphism> {
        match self {
            CatMorphism::Si(m) => Some(m),
            CatMorphism::Vic(_) => None,
        }
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &CatMorphism) -> Result<CatMorphism> {
        if self.source() != g.target() || self.p() != g.p() {
            return invalid(format!(
                "cannot compose {}->{} after {}->{}",
                self.source(),
                self.target(),
                g.source(),
                g.target()
            ));
        }
        Ok(self.compose_unchecked(g))
    }

    pub(crate) fn compose_unchecked(&self, g: &CatMorphism) -> CatMorphism {
        match (self, g) {
            (CatMorphism::Vic(f), CatMorphism::Vic(g)) => {
                let t = f.t.mul(&g.t);
                let c = if g.c.dim() == 0 {
                    f.c.clone()
                } else {
                    let pushed = g.c.basis().mul(&f.t.transpose());
                    Subspace::canon_unchecked(&f.c.basis().vstack(&pushed))
                };
                CatMorphism::Vic(VicMorphism { t, c })
            }
            (CatMorphism::Si(f), CatMorphism::Si(g)) => CatMorphism::Si(SiMorphism { a: f.a.mul(&g.a) }),
            _ => panic!("composing morphisms of different categories"),
        }
    }

    /// Rebuilds a morphism of `Hom(k^d, k^n)` from its key.
    pub fn from_key(cat: &CategoryId, d: usize, n: usize, key: &MorphismKey) -> Result<CatMorphism> {
        let p = cat.p;
        let digits = &key.0;
        if cat.is_si() {
            let a = FFMatrix::new(p, 2 * n, 2 * d, digits.clone())?;
            return make_morphism(cat, RawMorphism::Si { a });
        }
        let tl = n * d;
        let cl = n * (n.saturating_sub(d));
        if digits.len() != tl + cl {
            return invalid(format!("key of length {} for Hom(k^{d}, k^{n})", digits.len()));
        }
        let t = FFMatrix::new(p, n, d, digits[..tl].to_vec())?;
        let complement = FFMatrix::new(p, n.saturating_sub(d), n, digits[tl..].to_vec())?;
        let m = make_morphism(cat, RawMorphism::Vic { t, complement: complement.clone() })?;
        if m.as_vic().map(|v| v.c.basis() != &complement).unwrap_or(true) {
            return invalid("complement digits are not in canonical form");
        }
        Ok(m)
    }
}

/// Validates and canonicalizes raw morphism data.
pub fn make_morphism(cat: &CategoryId, raw: RawMorphism) -> Result<CatMorphism> {
    match (cat.flavor, raw) {
        (Flavor::Si, RawMorphism::Si { a }) => {
            if a.p() != cat.p {
                return invalid("matrix over the wrong field");
            }
            if !is_symplectic(&a) {
                return invalid("A^T Omega A != Omega: not a symplectic embedding");
            }
            Ok(CatMorphism::Si(SiMorphism { a }))
        }
        (Flavor::Vic | Flavor::VicU, RawMorphism::Vic { t, complement }) => {
            if t.p() != cat.p || complement.p() != cat.p {
                return invalid("matrix over the wrong field");
            }
            let (n, d) = (t.rows(), t.cols());
            if complement.cols() != n {
                return invalid(format!("complement vectors have length {}, target has dimension {n}", complement.cols()));
            }
            if t.rank() != d {
                return invalid("T is not injective");
            }
            let c = Subspace::canon_unchecked(&complement);
            if !Subspace::column_space(&t).is_complement_pair(&c) {
                return invalid("C is not a complement of the image of T");
            }
            if cat.flavor == Flavor::VicU && d == n && !cat.units().contains(&t.det()) {
                return invalid(format!("determinant {} is not in the unit group {:?}", t.det(), cat.units()));
            }
            Ok(CatMorphism::Vic(VicMorphism { t, c }))
        }
        _ => invalid("morphism data does not match the category flavor"),
    }
}

pub fn compose(f: &CatMorphism, g: &CatMorphism) -> Result<CatMorphism> {
    f.compose(g)
}

pub fn identity(cat: &CategoryId, n: usize) -> CatMorphism {
    let p = cat.p;
    if cat.is_si() {
        CatMorphism::Si(SiMorphism { a: FFMatrix::identity(p, 2 * n) })
    } else {
        CatMorphism::Vic(VicMorphism { t: FFMatrix::identity(p, n), c: Subspace::zero(p, n) })
    }
}

/// Corner inclusion `k^m -> k^n`: first coordinates (first hyperbolic pairs for SI),
/// complement spanned by the remaining coordinates.
pub fn corner_inclusion(cat: &CategoryId, m: usize, n: usize) -> CatMorphism {
    assert!(m <= n);
    let p = cat.p;
    let (vm, vn) = (cat.vector_dim(m), cat.vector_dim(n));
    let mut t = FFMatrix::zeros(p, vn, vm);
    for i in 0..vm {
        t.set(i, i, 1);
    }
    if cat.is_si() {
        CatMorphism::Si(SiMorphism { a: t })
    } else {
        let rest: Vec<usize> = (m..n).collect();
        CatMorphism::Vic(VicMorphism { t, c: Subspace::coordinate(p, n, &rest) })
    }
}

/// The standard inclusion `k^n -> k^{n+1}`.
pub fn standard_inclusion(cat: &CategoryId, n: usize) -> CatMorphism {
    corner_inclusion(cat, n, n + 1)
}

/// Automorphism of the degree-`n` object given by an invertible matrix.
pub fn automorphism(m: FFMatrix) -> CatMorphism {
    let p = m.p();
    let n = m.rows();
    CatMorphism::Vic(VicMorphism { t: m, c: Subspace::zero(p, n) })
}

pub fn si_automorphism(m: FFMatrix) -> CatMorphism {
    CatMorphism::Si(SiMorphism { a: m })
}

/// Embeds `g` (acting on the last block of coordinates) into degree `n` as
/// `diag(I, g)`; for SI the block is the last hyperbolic pairs.
pub fn embed_bottom_right(cat: &CategoryId, g: &CatMorphism, n: usize) -> CatMorphism {
    let inner = g.matrix();
    let vn = cat.vector_dim(n);
    let off = vn - inner.rows();
    let mut m = FFMatrix::identity(cat.p, vn);
    for i in 0..inner.rows() {
        for j in 0..inner.cols() {
            m.set(off + i, off + j, inner.get(i, j));
        }
    }
    if cat.is_si() {
        si_automorphism(m)
    } else {
        automorphism(m)
    }
}

/// Omega-orthogonal complement of the image of an SI morphism.
pub fn symplectic_complement(f: &SiMorphism) -> Subspace {
    let p = f.a.p();
    let n2 = f.a.rows();
    let constraints = f.a.transpose().mul(&omega(p, n2 / 2));
    Subspace::canon_unchecked(&constraints.kernel())
}

/// Omega-orthogonal complement of an arbitrary subspace of F_p^{2n}.
pub fn perp(s: &Subspace) -> Subspace {
    let p = s.p();
    let constraints = s.basis().mul(&omega(p, s.ambient() / 2));
    Subspace::canon_unchecked(&constraints.kernel())
}

/// Negation helper shared by the frame code.
pub(crate) fn sub_scaled(x: &mut [u8], c: u8, y: &[u8], p: u8) {
    if c == 0 {
        return;
    }
    let nc = neg_mod(c, p) as u32;
    for (a, &b) in x.iter_mut().zip(y) {
        *a = ((*a as u32 + nc * b as u32) % p as u32) as u8;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vic(p: u8, n: usize, d: usize, t: &[u8], c: &[u8]) -> Result<CatMorphism> {
        let cat = CategoryId::vic(p).unwrap();
        let t = FFMatrix::new(p, n, d, t.to_vec()).unwrap();
        let complement = FFMatrix::new(p, c.len() / n.max(1), n, c.to_vec()).unwrap();
        make_morphism(&cat, RawMorphism::Vic { t, complement })
    }

    #[test]
    fn make_morphism_examples() {
        assert!(vic(2, 2, 1, &[1, 0], &[0, 1]).is_ok());
        let err = vic(2, 2, 1, &[1, 0], &[1, 0]).unwrap_err();
        assert!(err.to_string().contains("not a complement"));
        let si = CategoryId::si(3).unwrap();
        assert!(make_morphism(&si, RawMorphism::Si { a: FFMatrix::identity(3, 4) }).is_ok());
        let bad = FFMatrix::new(3, 2, 2, vec![1, 1, 0, 2]).unwrap();
        assert!(make_morphism(&si, RawMorphism::Si { a: bad }).unwrap_err().to_string().contains("symplectic"));
        assert!(vic(2, 2, 1, &[0, 0], &[0, 1]).unwrap_err().to_string().contains("injective"));
        let u = CategoryId::vic_u(3, &[1]).unwrap();
        let t = FFMatrix::new(3, 1, 1, vec![2]).unwrap();
        let e = make_morphism(&u, RawMorphism::Vic { t, complement: FFMatrix::zeros(3, 0, 1) }).unwrap_err();
        assert!(e.to_string().contains("unit group"));
    }

    #[test]
    fn composition_rule_by_hand() {
        let g = vic(2, 2, 1, &[1, 0], &[0, 1]).unwrap();
        let f = vic(2, 3, 2, &[1, 0, 0, 1, 0, 0], &[0, 0, 1]).unwrap();
        let h = f.compose(&g).unwrap();
        let hv = h.as_vic().unwrap();
        assert_eq!(hv.t.column(0), vec![1, 0, 0]);
        assert_eq!(hv.c, Subspace::coordinate(2, 3, &[1, 2]));
        assert!(g.compose(&f).is_err());
    }

    #[test]
    fn standard_inclusions() {
        let cat = CategoryId::vic(2).unwrap();
        let i0 = standard_inclusion(&cat, 0);
        assert_eq!((i0.source(), i0.target()), (0, 1));
        assert_eq!(i0.as_vic().unwrap().c, Subspace::full(2, 1));
        for n in 0..3 {
            let two = standard_inclusion(&cat, n + 1).compose(&standard_inclusion(&cat, n)).unwrap();
            assert_eq!(two, corner_inclusion(&cat, n, n + 2));
            assert_eq!(two.as_vic().unwrap().c, Subspace::coordinate(2, n + 2, &[n, n + 1]));
        }
        let si = CategoryId::si(3).unwrap();
        let s = standard_inclusion(&si, 1);
        assert_eq!((s.matrix().rows(), s.matrix().cols()), (4, 2));
        assert!(is_symplectic(s.matrix()));
    }

    #[test]
    fn symplectic_complement_examples() {
        let si = CategoryId::si(2).unwrap();
        let id = identity(&si, 2);
        assert_eq!(symplectic_complement(id.as_si().unwrap()).dim(), 0);
        let s = standard_inclusion(&si, 1);
        assert_eq!(symplectic_complement(s.as_si().unwrap()), Subspace::coordinate(2, 4, &[2, 3]));
    }

    #[test]
    fn keys_roundtrip() {
        let f = vic(3, 3, 1, &[1, 2, 0], &[0, 1, 0, 0, 0, 1]).unwrap();
        let cat = CategoryId::vic(3).unwrap();
        let back = CatMorphism::from_key(&cat, 1, 3, &f.key()).unwrap();
        assert_eq!(back, f);
        assert_eq!(MorphismKey::parse(&f.key().to_string()), Some(f.key()));
    }
}
