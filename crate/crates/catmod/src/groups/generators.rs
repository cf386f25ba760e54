use std::collections::{HashMap, VecDeque};

use super::order::group_order;
use crate::category::enumerate::{check_budget, enumerate_hom_set, HomSet};
use crate::category::morphism::{automorphism, identity, omega, si_automorphism};
use crate::category::{CategoryId, CatMorphism, MorphismKey};
use crate::error::{Error, Result};
use crate::linalg::FFMatrix;

pub const DEFAULT_GROUP_BUDGET: u64 = 2_000_000;

/// Which of the two built-in generating sets to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorSet {
    /// All elementary matrices, or transvections along basis vectors and their pairwise sums.
    Standard,
    /// Adjacent elementary matrices, or transvections along a chain of vectors.
    Adjacent,
}

/// All automorphisms of the degree-`n` object, sorted by key.
pub fn enumerate_group(cat: &CategoryId, n: usize, cap: u64) -> Result<HomSet> {
    check_budget(format!("G_{n} of {cat}"), &group_order(cat, n), cap)?;
    enumerate_hom_set(cat, n, n, u64::MAX)
}

pub fn generators(cat: &CategoryId, n: usize) -> Vec<CatMorphism> {
    generators_with(cat, n, GeneratorSet::Standard)
}

pub fn generators_with(cat: &CategoryId, n: usize, set: GeneratorSet) -> Vec<CatMorphism> {
    let p = cat.p;
    if cat.is_si() {
        let e = |i: usize| {
            let mut v = vec![0u8; 2 * n];
            v[i] = 1;
            v
        };
        let add = |a: Vec<u8>, b: Vec<u8>, c: u8| -> Vec<u8> {
            a.iter().zip(&b).map(|(&x, &y)| ((x as u32 + c as u32 * y as u32) % p as u32) as u8).collect()
        };
        let mut dirs: Vec<Vec<u8>> = (0..2 * n).map(e).collect();
        match set {
            GeneratorSet::Standard => {
                for i in 0..2 * n {
                    for j in i + 1..2 * n {
                        dirs.push(add(e(i), e(j), 1));
                    }
                }
            }
            GeneratorSet::Adjacent => {
                for i in 0..n.saturating_sub(1) {
                    dirs.push(add(e(2 * i), e(2 * i + 2), p - 1));
                }
            }
        }
        return dirs.iter().map(|v| si_automorphism(transvection(p, v))).collect();
    }
    let mut out = Vec::new();
    let elementary = |i: usize, j: usize| {
        let mut m = FFMatrix::identity(p, n);
        m.set(i, j, 1);
        automorphism(m)
    };
    for i in 0..n {
        for j in 0..n {
            let keep = match set {
                GeneratorSet::Standard => i != j,
                GeneratorSet::Adjacent => i + 1 == j || j + 1 == i,
            };
            if keep {
                out.push(elementary(i, j));
            }
        }
    }
    let u = unit_generator(p, &cat.units());
    if n > 0 && u != 1 {
        let mut m = FFMatrix::identity(p, n);
        let at = if set == GeneratorSet::Standard { 0 } else { n - 1 };
        m.set(at, at, u);
        out.push(automorphism(m));
    }
    out
}

/// `x -> x + w(x, v) v`.
pub fn transvection(p: u8, v: &[u8]) -> FFMatrix {
    let m = v.len();
    let ov = omega(p, m / 2).mul_vec(v);
    let mut t = FFMatrix::identity(p, m);
    for (i, &vi) in v.iter().enumerate() {
        for (j, &oj) in ov.iter().enumerate() {
            // w(x, v) = x^T Omega v, so the row functional is (Omega v)^T.
            let x = (t.get(i, j) as u32 + vi as u32 * oj as u32) % p as u32;
            t.set(i, j, x as u8);
        }
    }
    t
}

/// An element generating the cyclic group `units`.
pub fn unit_generator(p: u8, units: &[u8]) -> u8 {
    let order = |u: u8| {
        let mut x = u as u32;
        let mut k = 1;
        while x != 1 {
            x = x * u as u32 % p as u32;
            k += 1;
        }
        k
    };
    units.iter().copied().find(|&u| order(u) == units.len()).unwrap_or(1)
}

/// Breadth-first closure of `gens` from the identity, sorted by key.
pub fn closure(cat: &CategoryId, n: usize, gens: &[CatMorphism], cap: u64) -> Result<Vec<CatMorphism>> {
    let id = identity(cat, n);
    let mut seen: HashMap<MorphismKey, CatMorphism> = HashMap::new();
    seen.insert(id.key(), id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = s.compose_unchecked(&g);
            let k = h.key();
            if !seen.contains_key(&k) {
                if seen.len() as u64 >= cap {
                    return Err(Error::Budget {
                        what: format!("closure of generators of G_{n} of {cat}"),
                        predicted: format!("more than {cap}"),
                        cap,
                    });
                }
                seen.insert(k, h.clone());
                queue.push_back(h);
            }
        }
    }
    let mut out: Vec<(MorphismKey, CatMorphism)> = seen.into_iter().collect();
    out.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    Ok(out.into_iter().map(|x| x.1).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::morphism::is_symplectic;
    use num_traits::ToPrimitive;

    fn cats() -> Vec<CategoryId> {
        vec![
            CategoryId::vic(2).unwrap(),
            CategoryId::vic(3).unwrap(),
            CategoryId::vic(5).unwrap(),
            CategoryId::vic_u(3, &[1]).unwrap(),
            CategoryId::vic_u(5, &[1, 4]).unwrap(),
            CategoryId::si(2).unwrap(),
            CategoryId::si(3).unwrap(),
        ]
    }

    #[test]
    fn enumerated_groups_have_the_right_order() {
        for cat in cats() {
            for n in 0..=2 {
                let g = enumerate_group(&cat, n, DEFAULT_GROUP_BUDGET).unwrap();
                assert_eq!(g.len() as u64, group_order(&cat, n).to_u64().unwrap(), "{cat} n={n}");
            }
        }
        let sp = enumerate_group(&CategoryId::si(2).unwrap(), 1, DEFAULT_GROUP_BUDGET).unwrap();
        assert!(sp.morphisms().iter().all(|m| is_symplectic(m.matrix())));
        assert!(enumerate_group(&CategoryId::vic(7).unwrap(), 4, DEFAULT_GROUP_BUDGET).is_err());
    }

    #[test]
    fn both_generator_sets_generate() {
        for cat in cats() {
            for n in 1..=3 {
                let order = group_order(&cat, n).to_u64().unwrap();
                if order > 60_000 {
                    continue;
                }
                for set in [GeneratorSet::Standard, GeneratorSet::Adjacent] {
                    let gens = generators_with(&cat, n, set);
                    for g in &gens {
                        if cat.is_si() {
                            assert!(is_symplectic(g.matrix()));
                        } else {
                            assert!(cat.units().contains(&g.matrix().det()));
                        }
                    }
                    let c = closure(&cat, n, &gens, DEFAULT_GROUP_BUDGET).unwrap();
                    assert_eq!(c.len() as u64, order, "{cat} n={n} {set:?}");
                    if order <= 5000 {
                        assert_eq!(c, enumerate_group(&cat, n, DEFAULT_GROUP_BUDGET).unwrap().morphisms());
                    }
                }
            }
        }
    }

    #[test]
    fn small_generator_sets() {
        let vic2 = CategoryId::vic(2).unwrap();
        assert!(generators(&vic2, 1).is_empty());
        assert_eq!(generators(&vic2, 2).len(), 2);
        let sp3 = closure(&CategoryId::si(3).unwrap(), 1, &generators(&CategoryId::si(3).unwrap(), 1), 100).unwrap();
        assert_eq!(sp3.len(), 24);
        assert!(closure(&vic2, 3, &generators(&vic2, 3), 10).is_err());
    }
}
