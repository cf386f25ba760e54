use rayon::prelude::*;
use serde_json::{json, Value};

use super::generators::{generators_with, GeneratorSet};
use crate::category::morphism::{embed_bottom_right, standard_inclusion};
use crate::category::{CategoryId, MorphismKey};
use crate::ctx::Ctx;
use crate::error::{invalid, Result};

/// `G_{n-a}`-orbits on `Hom(k^d, k^n)`, the subgroup sitting in the bottom-right block.
#[derive(Clone, Debug)]
pub struct DoubleCosetTable {
    pub cat: CategoryId,
    pub n: usize,
    pub a: usize,
    pub d: usize,
    /// Key-minimal element of each orbit, in increasing key order.
    pub representatives: Vec<MorphismKey>,
    /// Orbit number of each Hom-set index.
    pub orbit_of: Vec<u32>,
}

impl DoubleCosetTable {
    pub fn orbit_count(&self) -> usize {
        self.representatives.len()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "cat": self.cat.flavor.name(),
            "p": self.cat.p,
            "unit_group": self.cat.unit_group,
            "n": self.n,
            "a": self.a,
            "d": self.d,
            "orbit_count": self.orbit_count(),
            "representatives": self.representatives.iter().map(|k| k.to_string()).collect::<Vec<_>>(),
        })
    }
}

pub fn double_cosets(ctx: &Ctx, cat: &CategoryId, n: usize, a: usize, d: usize) -> Result<DoubleCosetTable> {
    double_cosets_with(ctx, cat, n, a, d, GeneratorSet::Standard)
}

pub fn double_cosets_with(
    ctx: &Ctx,
    cat: &CategoryId,
    n: usize,
    a: usize,
    d: usize,
    set: GeneratorSet,
) -> Result<DoubleCosetTable> {
    if a > n {
        return invalid(format!("a = {a} exceeds n = {n}"));
    }
    let hom = ctx.hom(cat, d, n)?;
    let gens: Vec<_> = generators_with(cat, n - a, set).iter().map(|g| embed_bottom_right(cat, g, n)).collect();
    let images: Vec<Vec<u32>> = (0..hom.len())
        .into_par_iter()
        .map(|i| {
            let f = hom.get(i);
            gens.iter()
                .map(|g| hom.index_of(&g.compose_unchecked(f)).expect("Hom set closed under automorphisms") as u32)
                .collect()
        })
        .collect();
    let mut uf = UnionFind::new(hom.len());
    for (i, js) in images.iter().enumerate() {
        for &j in js {
            uf.union(i, j as usize);
        }
    }
    // Roots are orbit minima, and indices follow key order.
    let mut orbit_of = vec![u32::MAX; hom.len()];
    let mut representatives = Vec::new();
    for i in 0..hom.len() {
        let r = uf.find(i);
        if orbit_of[r] == u32::MAX {
            orbit_of[r] = representatives.len() as u32;
            representatives.push(hom.key(i).clone());
        }
        orbit_of[i] = orbit_of[r];
    }
    Ok(DoubleCosetTable { cat: cat.clone(), n, a, d, representatives, orbit_of })
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Keeps the smaller index as root.
    fn union(&mut self, x: usize, y: usize) {
        let (a, b) = (self.find(x), self.find(y));
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.parent[hi] = lo;
        }
    }
}

/// The map `(M(d)_n)_{G_{n-a}} -> (M(d)_{n+1})_{G_{n+1-a}}` on orbits.
#[derive(Clone, Debug)]
pub struct CoinvariantTransition {
    pub map: Vec<u32>,
    pub source_orbits: usize,
    pub target_orbits: usize,
    pub injective: bool,
    pub surjective: bool,
}

pub fn coinvariant_transition(ctx: &Ctx, cat: &CategoryId, n: usize, a: usize, d: usize) -> Result<CoinvariantTransition> {
    let src = double_cosets(ctx, cat, n, a, d)?;
    let dst = double_cosets(ctx, cat, n + 1, a, d)?;
    let hom = ctx.hom(cat, d, n)?;
    let hom1 = ctx.hom(cat, d, n + 1)?;
    let iota = standard_inclusion(cat, n);
    let map: Vec<u32> = src
        .representatives
        .iter()
        .map(|k| {
            let f = hom.get(hom.index_of_key(k).expect("representative in Hom set"));
            let j = hom1.index_of(&iota.compose_unchecked(f)).expect("composite in Hom set");
            dst.orbit_of[j]
        })
        .collect();
    let mut hit = vec![false; dst.orbit_count()];
    for &m in &map {
        hit[m as usize] = true;
    }
    let mut sorted = map.clone();
    sorted.sort_unstable();
    sorted.dedup();
    Ok(CoinvariantTransition {
        injective: sorted.len() == map.len(),
        surjective: hit.iter().all(|&h| h),
        source_orbits: src.orbit_count(),
        target_orbits: dst.orbit_count(),
        map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_orbit_counts() {
        let ctx = Ctx::default();
        let vic2 = CategoryId::vic(2).unwrap();
        assert_eq!(double_cosets(&ctx, &vic2, 3, 0, 1).unwrap().orbit_count(), 1);
        assert_eq!(double_cosets(&ctx, &vic2, 2, 1, 1).unwrap().orbit_count(), 6);
        assert_eq!(double_cosets(&ctx, &vic2, 2, 2, 1).unwrap().orbit_count(), 6);
        assert_eq!(double_cosets(&ctx, &CategoryId::si(2).unwrap(), 1, 1, 2).unwrap().orbit_count(), 0);
        let t = double_cosets(&ctx, &vic2, 3, 1, 2).unwrap();
        let hom = ctx.hom(&vic2, 2, 3).unwrap();
        for (o, rep) in t.representatives.iter().enumerate() {
            let first = t.orbit_of.iter().position(|&x| x as usize == o).unwrap();
            assert_eq!(hom.key(first), rep);
        }
    }

    #[test]
    fn orbit_counts_do_not_depend_on_generators() {
        let ctx = Ctx::default();
        for cat in [CategoryId::vic(2).unwrap(), CategoryId::vic(3).unwrap(), CategoryId::si(2).unwrap()] {
            let top = if cat.is_si() { 2 } else { 3 };
            for n in 0..=top {
                for a in 0..=n {
                    for d in 0..=n.min(2) {
                        let x = double_cosets_with(&ctx, &cat, n, a, d, GeneratorSet::Standard).unwrap();
                        let y = double_cosets_with(&ctx, &cat, n, a, d, GeneratorSet::Adjacent).unwrap();
                        assert_eq!(x.representatives, y.representatives, "{cat} n={n} a={a} d={d}");
                    }
                }
            }
        }
    }

    #[test]
    fn full_unit_group_tables_match_vic() {
        let ctx = Ctx::default();
        let vic = CategoryId::vic(3).unwrap();
        let full = CategoryId::vic_u(3, &[1, 2]).unwrap();
        for n in 0..=3 {
            for a in 0..=n {
                for d in 0..=n.min(2) {
                    let x = double_cosets(&ctx, &vic, n, a, d).unwrap();
                    let y = double_cosets(&ctx, &full, n, a, d).unwrap();
                    assert_eq!(x.representatives, y.representatives);
                }
            }
        }
    }

    #[test]
    fn transitions() {
        let ctx = Ctx::default();
        let vic2 = CategoryId::vic(2).unwrap();
        for n in 1..=4 {
            let t = coinvariant_transition(&ctx, &vic2, n, 1, 1).unwrap();
            assert!(t.injective, "n={n}");
            assert_eq!(t.surjective, n >= 3, "n={n}");
        }
        let u = CategoryId::vic_u(3, &[1]).unwrap();
        for n in 2..=3 {
            assert!(coinvariant_transition(&ctx, &u, n, 0, 1).unwrap().surjective);
        }
        assert!(coinvariant_transition(&ctx, &u, 3, 0, 1).unwrap().injective);
        for n in 0..=3 {
            let t = coinvariant_transition(&ctx, &vic2, n, 0, 0).unwrap();
            assert!(t.injective && t.surjective);
        }
    }
}
