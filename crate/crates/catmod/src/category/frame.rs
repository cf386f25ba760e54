//! Deterministic bases ("frames") of subspaces, used to identify a subspace
//! with a standard object and to pick canonical representatives of
//! precomposition orbits.

use super::id::{CategoryId, Flavor};
use super::morphism::{pairing, sub_scaled, CatMorphism, SiMorphism, VicMorphism};
use crate::linalg::ff::inv_mod;
use super::enumerate::emit_complements;
use crate::linalg::{all_subspaces, FFMatrix, Subspace};

/// Frame of `s` as a matrix whose columns are the canonical RREF basis vectors.
pub fn rref_frame(s: &Subspace) -> FFMatrix {
    s.basis().transpose()
}

/// Deterministic symplectic basis (columns v1,w1,v2,w2,...) of a subspace on
/// which the standard form is nondegenerate; `None` if it is degenerate.
pub fn symplectic_frame(s: &Subspace) -> Option<FFMatrix> {
    let p = s.p();
    let mut pool: Vec<Vec<u8>> = s.basis().to_rows();
    let mut out: Vec<Vec<u8>> = Vec::with_capacity(pool.len());
    while !pool.is_empty() {
        let v = pool.remove(0);
        let k = pool.iter().position(|w| pairing(p, &v, w) != 0)?;
        let mut w = pool.remove(k);
        let s = inv_mod(pairing(p, &v, &w), p);
        for x in w.iter_mut() {
            *x = (*x as u32 * s as u32 % p as u32) as u8;
        }
        let mut rest = Vec::with_capacity(pool.len());
        for mut x in pool.drain(..) {
            // x - w(x,w) v + w(x,v) w
            let a = pairing(p, &x, &w);
            let b = pairing(p, &x, &v);
            sub_scaled(&mut x, a, &v, p);
            sub_scaled(&mut x, (p - b) % p, &w, p);
            rest.push(x);
        }
        if !rest.is_empty() {
            let m = FFMatrix::from_rows(p, v.len(), &rest).expect("consistent row lengths");
            pool = Subspace::canon_unchecked(&m).basis().to_rows();
        }
        out.push(v);
        out.push(w);
    }
    let ambient = s.ambient();
    Some(FFMatrix::from_rows(p, ambient, &out).expect("consistent row lengths").transpose())
}

/// Smallest `c` in F_p^x with `x * c` in `units`.
pub fn orientation_fix(x: u8, p: u8, units: &[u8]) -> u8 {
    (1..p).find(|&c| units.contains(&((x as u32 * c as u32 % p as u32) as u8))).expect("units contain 1")
}

/// Smallest element of the coset `x * units`.
pub fn coset_min(x: u8, p: u8, units: &[u8]) -> u8 {
    units.iter().map(|&u| (x as u32 * u as u32 % p as u32) as u8).min().expect("nonempty")
}

/// Canonical representative `r` of the orbit of `f` under precomposition with
/// `G_d`, together with the unique `g` in `G_d` with `f = r ∘ g`.
pub fn orbit_normal_form(cat: &CategoryId, f: &CatMorphism) -> (CatMorphism, CatMorphism) {
    let p = cat.p;
    match f {
        CatMorphism::Vic(VicMorphism { t, c }) => {
            let d = t.cols();
            let mut frame = rref_frame(&Subspace::column_space(t));
            if cat.flavor == Flavor::VicU && d > 0 {
                let h = frame.left_solve(t).expect("frame spans the image");
                let det = h.det();
                let target = coset_min(det, p, &cat.units());
                // det(h') = det / target lies in U once the last column is scaled by target.
                for i in 0..frame.rows() {
                    let x = frame.get(i, d - 1);
                    frame.set(i, d - 1, (x as u32 * target as u32 % p as u32) as u8);
                }
            }
            let g = frame.left_solve(t).expect("frame spans the image");
            let rep = CatMorphism::Vic(VicMorphism { t: frame, c: c.clone() });
            (rep, super::morphism::automorphism(g))
        }
        CatMorphism::Si(SiMorphism { a }) => {
            let frame = symplectic_frame(&Subspace::column_space(a)).expect("image of a symplectic map is nondegenerate");
            let g = frame.left_solve(a).expect("frame spans the image");
            (CatMorphism::Si(SiMorphism { a: frame }), CatMorphism::Si(SiMorphism { a: g }))
        }
    }
}

/// The normal forms of all precomposition orbits in `Hom(k^d, k^n)`, sorted by key.
pub fn orbit_representatives(cat: &CategoryId, d: usize, n: usize) -> Vec<CatMorphism> {
    let p = cat.p;
    let mut out = Vec::new();
    if d > n {
        return out;
    }
    if cat.is_si() {
        for w in all_subspaces(p, 2 * n, 2 * d) {
            if let Some(a) = symplectic_frame(&w) {
                out.push(CatMorphism::Si(SiMorphism { a }));
            }
        }
    } else {
        let mut scales: Vec<u8> = (1..p).map(|x| coset_min(x, p, &cat.units())).collect();
        scales.sort_unstable();
        scales.dedup();
        if d == 0 || d == n || cat.flavor == Flavor::Vic {
            scales = vec![1];
        }
        for w in all_subspaces(p, n, d) {
            let span = span_elements(&w);
            for &c in &scales {
                let mut t = rref_frame(&w);
                if d > 0 {
                    for i in 0..n {
                        t.set(i, d - 1, (t.get(i, d - 1) as u32 * c as u32 % p as u32) as u8);
                    }
                }
                emit_complements(p, n, t, &span, &mut |m| out.push(m));
            }
        }
    }
    out.sort_by_cached_key(|m| m.key());
    out
}

/// All vectors of a subspace.
pub fn span_elements(w: &Subspace) -> Vec<Vec<u8>> {
    let p = w.p();
    let mut span = vec![vec![0u8; w.ambient()]];
    for r in w.basis().to_rows() {
        let mut next = Vec::with_capacity(span.len() * p as usize);
        for c in 0..p as u32 {
            for s in &span {
                next.push(s.iter().zip(&r).map(|(&a, &b)| ((a as u32 + c * b as u32) % p as u32) as u8).collect());
            }
        }
        span = next;
    }
    span
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::morphism::{is_symplectic, omega};

    #[test]
    fn symplectic_frame_is_symplectic() {
        for p in [2u8, 3] {
            let full = Subspace::full(p, 4);
            let f = symplectic_frame(&full).unwrap();
            assert!(is_symplectic(&f));
            let lag = Subspace::coordinate(p, 4, &[0, 2]);
            assert!(symplectic_frame(&lag).is_none());
        }
        let m = FFMatrix::new(3, 4, 2, vec![1, 0, 1, 1, 0, 1, 2, 1]).unwrap();
        let s = Subspace::column_space(&m);
        let pairing_matrix = m.transpose().mul(&omega(3, 2)).mul(&m);
        assert!(pairing_matrix.get(0, 1) != 0);
        assert!(is_symplectic(&symplectic_frame(&s).unwrap()));
    }

    #[test]
    fn orientation_helpers() {
        assert_eq!(orientation_fix(2, 3, &[1]), 2);
        assert_eq!(coset_min(4, 5, &[1, 4]), 1);
        assert_eq!(coset_min(2, 5, &[1, 4]), 2);
    }

    #[test]
    fn representatives_are_normal_forms() {
        use crate::groups::order::{group_order, predicted_hom_count};
        for cat in [
            CategoryId::vic(2).unwrap(),
            CategoryId::vic(3).unwrap(),
            CategoryId::vic_u(3, &[1]).unwrap(),
            CategoryId::vic_u(5, &[1, 4]).unwrap(),
            CategoryId::si(2).unwrap(),
        ] {
            let top = if cat.is_si() { 2 } else { 3 };
            for n in 0..=top {
                for d in 0..=n {
                    let reps = orbit_representatives(&cat, d, n);
                    let g = group_order(&cat, d);
                    assert_eq!(num_bigint::BigInt::from(reps.len()) * g, predicted_hom_count(&cat, d, n), "{cat} d={d} n={n}");
                    for r in &reps {
                        let (nf, g) = orbit_normal_form(&cat, r);
                        assert_eq!(&nf, r);
                        assert_eq!(g, crate::category::morphism::identity(&cat, d));
                    }
                }
            }
        }
    }
}
