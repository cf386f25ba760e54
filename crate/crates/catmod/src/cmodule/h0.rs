use super::sub::close_under_group;
use super::{Degree, ModRef, WindowDegree};
use crate::category::{for_each_hom, standard_inclusion};
use crate::linalg::sparse::{unit, Echelon};

/// `H0(A)_n = A_n / (images of all A_{n-1} -> A_n)`, as the relation span per degree.
pub struct H0 {
    pub rel: Vec<Echelon>,
}

impl H0 {
    pub fn dims(&self) -> Vec<usize> {
        self.rel.iter().map(|e| e.dim() - e.rank()).collect()
    }

    pub fn dim(&self, n: usize) -> usize {
        self.rel[n].dim() - self.rel[n].rank()
    }

    /// Parent basis indices whose classes form the H0 basis in degree `n`.
    pub fn basis_columns(&self, n: usize) -> Vec<usize> {
        self.rel[n].nonpivots()
    }

    pub fn generation_degree(&self) -> WindowDegree {
        let dims = self.dims();
        let degree = dims.iter().rposition(|&x| x > 0).map(Degree::At).unwrap_or(Degree::None);
        WindowDegree { degree, at_boundary: dims.last().is_some_and(|&x| x > 0) && dims.len() > 1 }
    }
}

/// Image of the standard inclusion, closed under `G_n`. Every morphism
/// `k^{n-1} -> k^n` is `g ∘ ι` for some `g` in `G_n`, so this is the full image.
pub fn h0(a: &ModRef) -> H0 {
    let cat = a.cat().clone();
    let rel = (0..=a.window())
        .map(|n| {
            let mut e = Echelon::new(a.dim(n));
            if n > 0 && a.dim(n) > 0 {
                let iota = standard_inclusion(&cat, n - 1);
                for j in 0..a.dim(n - 1) {
                    e.insert(a.column(&iota, j));
                    if e.is_full() {
                        break;
                    }
                }
                close_under_group(a, n, &mut e);
            }
            e
        })
        .collect();
    H0 { rel }
}

/// Reference implementation summing over every morphism of `Hom(k^{n-1}, k^n)`.
pub fn h0_all_morphisms(a: &ModRef) -> H0 {
    let cat = a.cat().clone();
    let rel = (0..=a.window())
        .map(|n| {
            let mut e = Echelon::new(a.dim(n));
            if n > 0 {
                for_each_hom(&cat, n - 1, n, &mut |f| {
                    for j in 0..a.dim(n - 1) {
                        e.insert(a.apply(&f, &unit(j)));
                    }
                });
            }
            e
        })
        .collect();
    H0 { rel }
}

pub fn generation_degree(a: &ModRef) -> WindowDegree {
    h0(a).generation_degree()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::CategoryId;
    use crate::cmodule::{representable, Quotient, Tensor};
    use crate::cmodule::sub::generated_submodule;
    use crate::ctx::Ctx;
    use crate::linalg::Q;

    #[test]
    fn representables() {
        let ctx = Ctx::default();
        let vic2 = CategoryId::vic(2).unwrap();
        let m1: ModRef = representable(&ctx, &vic2, 1, 4).unwrap();
        assert_eq!(h0(&m1).dims(), vec![0, 1, 0, 0, 0]);
        assert_eq!(generation_degree(&m1), WindowDegree { degree: Degree::At(1), at_boundary: false });
        let si: ModRef = representable(&ctx, &CategoryId::si(2).unwrap(), 1, 2).unwrap();
        assert_eq!(h0(&si).dims(), vec![0, 6, 0]);
        let zero: ModRef = representable(&ctx, &vic2, 5, 3).unwrap();
        assert_eq!(h0(&zero).dims(), vec![0, 0, 0, 0]);
        assert_eq!(generation_degree(&zero).degree, Degree::None);
        assert_eq!(Degree::None.to_string(), "none");
    }

    #[test]
    fn fast_path_matches_all_morphisms() {
        let ctx = Ctx::default();
        for cat in [CategoryId::vic(2).unwrap(), CategoryId::vic_u(3, &[1]).unwrap(), CategoryId::si(2).unwrap()] {
            let top = if cat.is_si() { 2 } else { 3 };
            let m1: ModRef = representable(&ctx, &cat, 1, top).unwrap();
            let t: ModRef = Tensor::new(m1.clone(), m1.clone()).unwrap();
            // not a permutation module: M(1) modulo the submodule generated by e_0 - e_1 in degree 2
            let mut seeds = vec![Vec::new(); top + 1];
            seeds[2].push(vec![(0, Q::one()), (1, Q::int(-1))]);
            let q: ModRef = Quotient::new(m1.clone(), generated_submodule(&m1, &seeds));
            for a in [m1, t, q] {
                let fast = h0(&a);
                let slow = h0_all_morphisms(&a);
                for n in 0..=top {
                    assert_eq!(fast.rel[n].rref_rows(), slow.rel[n].rref_rows(), "{cat} n={n}");
                }
            }
        }
    }

    #[test]
    fn tensor_square_generated_in_degree_three() {
        let ctx = Ctx::default();
        let m1: ModRef = representable(&ctx, &CategoryId::vic(2).unwrap(), 1, 4).unwrap();
        let t: ModRef = Tensor::new(m1.clone(), m1).unwrap();
        let h = h0(&t);
        assert_eq!(h.generation_degree().degree, Degree::At(3));
        assert!(!h.generation_degree().at_boundary);
        assert_eq!(t.dim(4), 14400);
    }
}
