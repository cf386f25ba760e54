use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::id::{CategoryId, Flavor};
use super::morphism::{pairing, CatMorphism, MorphismKey, SiMorphism, VicMorphism};
use crate::error::{Error, Result};
use crate::groups::order::predicted_hom_count;
use crate::linalg::{FFMatrix, Subspace};

pub const DEFAULT_HOM_BUDGET: u64 = 10_000_000;

/// A Hom set in key order, with a key index.
#[derive(Debug)]
pub struct HomSet {
    pub cat: CategoryId,
    pub d: usize,
    pub n: usize,
    morphisms: Vec<CatMorphism>,
    keys: Vec<MorphismKey>,
    index: HashMap<MorphismKey, u32>,
}

impl HomSet {
    pub(crate) fn from_sorted(cat: CategoryId, d: usize, n: usize, pairs: Vec<(MorphismKey, CatMorphism)>) -> HomSet {
        let mut morphisms = Vec::with_capacity(pairs.len());
        let mut keys = Vec::with_capacity(pairs.len());
        for (k, m) in pairs {
            keys.push(k);
            morphisms.push(m);
        }
        let index = keys.iter().enumerate().map(|(i, k)| (k.clone(), i as u32)).collect();
        HomSet { cat, d, n, morphisms, keys, index }
    }

    pub fn len(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.morphisms.is_empty()
    }

    pub fn get(&self, i: usize) -> &CatMorphism {
        &self.morphisms[i]
    }

    pub fn key(&self, i: usize) -> &MorphismKey {
        &self.keys[i]
    }

    pub fn keys(&self) -> &[MorphismKey] {
        &self.keys
    }

    pub fn morphisms(&self) -> &[CatMorphism] {
        &self.morphisms
    }

    pub fn index_of_key(&self, k: &MorphismKey) -> Option<usize> {
        self.index.get(k).map(|&i| i as usize)
    }

    pub fn index_of(&self, m: &CatMorphism) -> Option<usize> {
        self.index_of_key(&m.key())
    }
}

pub fn check_budget(what: impl Into<String>, predicted: &BigInt, cap: u64) -> Result<()> {
    match predicted.to_u64() {
        Some(x) if x <= cap => Ok(()),
        _ => Err(Error::Budget { what: what.into(), predicted: predicted.to_string(), cap }),
    }
}

/// All morphisms `k^d -> k^n`, each exactly once, sorted by key.
pub fn enumerate_hom(cat: &CategoryId, d: usize, n: usize, cap: u64) -> Result<Vec<CatMorphism>> {
    Ok(enumerate_hom_set(cat, d, n, cap)?.morphisms)
}

pub fn enumerate_hom_set(cat: &CategoryId, d: usize, n: usize, cap: u64) -> Result<HomSet> {
    let predicted = predicted_hom_count(cat, d, n);
    check_budget(format!("Hom(k^{d}, k^{n}) in {cat}"), &predicted, cap)?;
    let mut pairs: Vec<(MorphismKey, CatMorphism)> = collect_parallel(cat, d, n)
        .into_iter()
        .map(|m| (m.key(), m))
        .collect();
    pairs.par_sort_unstable_by(|a, b| a.0.cmp(&b.0));
    Ok(HomSet::from_sorted(cat.clone(), d, n, pairs))
}

/// Counts `Hom(k^d, k^n)` by streaming enumeration, without storing it.
pub fn count_hom(cat: &CategoryId, d: usize, n: usize, cap: u64) -> Result<u64> {
    let predicted = predicted_hom_count(cat, d, n);
    check_budget(format!("Hom(k^{d}, k^{n}) in {cat}"), &predicted, cap)?;
    if d > n {
        return Ok(0);
    }
    if d == 0 {
        return Ok(1);
    }
    let firsts = first_columns(cat, n);
    Ok(firsts
        .par_iter()
        .map(|v| {
            if cat.is_si() {
                let mut c = 0u64;
                generate_from_first(cat, d, n, v, &mut |_| c += 1);
                return c;
            }
            let code = v.iter().fold(0u32, |acc, &x| acc * cat.p as u32 + x as u32);
            let mut counter = VicCounter::new(cat, d, n);
            let span = counter.extend(&[0], code);
            counter.walk(&mut vec![code], &span)
        })
        .sum())
}

/// Walks the same tree as `vic_rec` with vectors coded as base-`p` integers
/// and without building morphisms. A leaf contributes one complement per
/// digit string of `emit_complements`.
struct VicCounter<'a> {
    cat: &'a CategoryId,
    d: usize,
    n: usize,
    size: u32,
}

impl VicCounter<'_> {
    fn new(cat: &CategoryId, d: usize, n: usize) -> VicCounter<'_> {
        VicCounter { cat, d, n, size: (cat.p as u32).pow(n as u32) }
    }

    fn digits(&self, mut x: u32) -> Vec<u8> {
        let p = self.cat.p as u32;
        let mut v = vec![0u8; self.n];
        for i in (0..self.n).rev() {
            v[i] = (x % p) as u8;
            x /= p;
        }
        v
    }

    fn add_multiple(&self, x: u32, c: u32, y: u32) -> u32 {
        let p = self.cat.p as u32;
        let (mut x, mut y, mut out, mut place) = (x, y, 0, 1);
        for _ in 0..self.n {
            out += ((x % p + c * (y % p)) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        out
    }

    fn extend(&self, span: &[u32], v: u32) -> Vec<u32> {
        (0..self.cat.p as u32).flat_map(|c| span.iter().map(move |&s| (s, c))).map(|(s, c)| self.add_multiple(s, c, v)).collect()
    }

    fn walk(&mut self, cols: &mut Vec<u32>, span: &[u32]) -> u64 {
        let mut member = vec![false; self.size as usize];
        for &s in span {
            member[s as usize] = true;
        }
        let last = cols.len() + 1 == self.d;
        let complements = (span.len() as u64 * self.cat.p as u64).pow((self.n - self.d) as u32);
        let mut total = 0;
        if cols.len() == self.d {
            return self.leaf(cols, span);
        }
        for v in 0..self.size {
            if member[v as usize] {
                continue;
            }
            if last && !(self.cat.flavor == Flavor::VicU && self.d == self.n) {
                total += complements;
                continue;
            }
            cols.push(v);
            let next = self.extend(span, v);
            total += if last { self.leaf(cols, &next) } else { self.walk(cols, &next) };
            cols.pop();
        }
        total
    }

    fn leaf(&self, cols: &[u32], span: &[u32]) -> u64 {
        if self.cat.flavor == Flavor::VicU && self.d == self.n {
            let vecs: Vec<Vec<u8>> = cols.iter().map(|&c| self.digits(c)).collect();
            if !self.cat.units().contains(&columns_to_matrix(self.cat.p, self.n, &vecs).det()) {
                return 0;
            }
        }
        (span.len() as u64).pow((self.n - self.d) as u32)
    }
}

fn collect_parallel(cat: &CategoryId, d: usize, n: usize) -> Vec<CatMorphism> {
    if d > n {
        return Vec::new();
    }
    if d == 0 {
        let mut out = Vec::new();
        generate_empty_source(cat, n, &mut |m| out.push(m));
        return out;
    }
    first_columns(cat, n)
        .par_iter()
        .flat_map_iter(|v| {
            let mut out = Vec::new();
            generate_from_first(cat, d, n, v, &mut |m| out.push(m));
            out
        })
        .collect()
}

/// Calls `sink` on every morphism, sequentially and in generation order.
pub fn for_each_hom(cat: &CategoryId, d: usize, n: usize, sink: &mut dyn FnMut(CatMorphism)) {
    if d > n {
        return;
    }
    if d == 0 {
        generate_empty_source(cat, n, sink);
        return;
    }
    for v in first_columns(cat, n) {
        generate_from_first(cat, d, n, &v, sink);
    }
}

fn generate_empty_source(cat: &CategoryId, n: usize, sink: &mut dyn FnMut(CatMorphism)) {
    let p = cat.p;
    let vn = cat.vector_dim(n);
    if cat.is_si() {
        sink(CatMorphism::Si(SiMorphism { a: FFMatrix::zeros(p, vn, 0) }));
    } else {
        sink(CatMorphism::Vic(VicMorphism { t: FFMatrix::zeros(p, n, 0), c: Subspace::full(p, n) }));
    }
}

/// All vectors of F_p^m in increasing digit order.
pub fn all_vectors(p: u8, m: usize) -> Vec<Vec<u8>> {
    let total = (p as usize).pow(m as u32);
    (0..total)
        .map(|mut x| {
            let mut v = vec![0u8; m];
            for i in (0..m).rev() {
                v[i] = (x % p as usize) as u8;
                x /= p as usize;
            }
            v
        })
        .collect()
}

fn first_columns(cat: &CategoryId, n: usize) -> Vec<Vec<u8>> {
    all_vectors(cat.p, cat.vector_dim(n)).into_iter().filter(|v| v.iter().any(|&x| x != 0)).collect()
}

fn generate_from_first(cat: &CategoryId, d: usize, n: usize, first: &[u8], sink: &mut dyn FnMut(CatMorphism)) {
    match cat.flavor {
        Flavor::Si => {
            let all = all_vectors(cat.p, 2 * n);
            let mut cols = vec![first.to_vec()];
            si_rec(cat.p, d, n, &all, &mut cols, sink);
        }
        Flavor::Vic | Flavor::VicU => {
            let p = cat.p;
            let all = all_vectors(p, n);
            let span = span_add(p, &[vec![0u8; n]], first);
            let mut cols = vec![first.to_vec()];
            vic_rec(cat, d, n, &all, &mut cols, &span, sink);
        }
    }
}

fn span_add(p: u8, span: &[Vec<u8>], v: &[u8]) -> Vec<Vec<u8>> {
    let mut out = Vec::with_capacity(span.len() * p as usize);
    for c in 0..p as u32 {
        for s in span {
            out.push(s.iter().zip(v).map(|(&a, &b)| ((a as u32 + c * b as u32) % p as u32) as u8).collect());
        }
    }
    out
}

fn columns_to_matrix(p: u8, rows: usize, cols: &[Vec<u8>]) -> FFMatrix {
    let mut m = FFMatrix::zeros(p, rows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, &x) in c.iter().enumerate() {
            m.set(i, j, x);
        }
    }
    m
}

fn vic_rec(
    cat: &CategoryId,
    d: usize,
    n: usize,
    all: &[Vec<u8>],
    cols: &mut Vec<Vec<u8>>,
    span: &[Vec<u8>],
    sink: &mut dyn FnMut(CatMorphism),
) {
    let p = cat.p;
    if cols.len() == d {
        let t = columns_to_matrix(p, n, cols);
        if cat.flavor == Flavor::VicU && d == n && !cat.units().contains(&t.det()) {
            return;
        }
        emit_complements(p, n, t, span, sink);
        return;
    }
    let mut in_span = std::collections::HashSet::with_capacity(span.len());
    for s in span {
        in_span.insert(s.as_slice());
    }
    for v in all {
        if in_span.contains(v.as_slice()) {
            continue;
        }
        let next = span_add(p, span, v);
        cols.push(v.clone());
        vic_rec(cat, d, n, all, cols, &next, sink);
        cols.pop();
    }
}

/// Every complement of `im t` as `span(e_f + w_f)` over the non-pivot
/// coordinates `f` of the image, with `w_f` ranging over the image.
pub(crate) fn emit_complements(p: u8, n: usize, t: FFMatrix, image: &[Vec<u8>], sink: &mut dyn FnMut(CatMorphism)) {
    let pivots = Subspace::column_space(&t).pivots();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let k = free.len();
    let choices = image.len();
    let total = choices.pow(k as u32);
    let mut digits = vec![0usize; k];
    for _ in 0..total {
        let mut rows = FFMatrix::zeros(p, k, n);
        for (r, (&f, &w)) in free.iter().zip(&digits).enumerate() {
            for (j, &x) in image[w].iter().enumerate() {
                rows.set(r, j, x);
            }
            let e = rows.get(r, f);
            rows.set(r, f, (e + 1) % p);
        }
        let c = Subspace::canon_unchecked(&rows);
        sink(CatMorphism::Vic(VicMorphism { t: t.clone(), c }));
        for x in digits.iter_mut() {
            *x += 1;
            if *x < choices {
                break;
            }
            *x = 0;
        }
    }
}

fn si_rec(p: u8, d: usize, n: usize, all: &[Vec<u8>], cols: &mut Vec<Vec<u8>>, sink: &mut dyn FnMut(CatMorphism)) {
    if cols.len() == 2 * d {
        sink(CatMorphism::Si(SiMorphism { a: columns_to_matrix(p, 2 * n, cols) }));
        return;
    }
    let pairs_done = cols.len() / 2;
    if cols.len() % 2 == 1 {
        // choose w with w(v, w) = 1, orthogonal to the finished pairs
        let v = cols[cols.len() - 1].clone();
        for x in all {
            if pairing(p, &v, x) == 1 && cols[..2 * pairs_done].iter().all(|c| pairing(p, c, x) == 0) {
                cols.push(x.clone());
                si_rec(p, d, n, all, cols, sink);
                cols.pop();
            }
        }
    } else {
        for x in all {
            if x.iter().any(|&e| e != 0) && cols.iter().all(|c| pairing(p, c, x) == 0) {
                cols.push(x.clone());
                si_rec(p, d, n, all, cols, sink);
                cols.pop();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::morphism::{identity, is_symplectic};

    #[test]
    fn spec_counts() {
        let vic2 = CategoryId::vic(2).unwrap();
        assert_eq!(enumerate_hom(&vic2, 0, 3, DEFAULT_HOM_BUDGET).unwrap().len(), 1);
        assert_eq!(enumerate_hom(&vic2, 1, 2, DEFAULT_HOM_BUDGET).unwrap().len(), 6);
        assert!(enumerate_hom(&vic2, 3, 2, DEFAULT_HOM_BUDGET).unwrap().is_empty());
        let si2 = CategoryId::si(2).unwrap();
        let h = enumerate_hom(&si2, 1, 2, DEFAULT_HOM_BUDGET).unwrap();
        assert_eq!(h.len(), 120);
        assert!(h.iter().all(|m| is_symplectic(m.matrix())));
        assert_eq!(count_hom(&si2, 1, 4, DEFAULT_HOM_BUDGET).unwrap(), 32640);
    }

    #[test]
    fn counting_matches_enumeration() {
        for cat in [CategoryId::vic(2).unwrap(), CategoryId::vic(3).unwrap(), CategoryId::vic_u(3, &[1]).unwrap()] {
            for n in 0..=3 {
                for d in 0..=n {
                    let mut c = 0u64;
                    for_each_hom(&cat, d, n, &mut |_| c += 1);
                    assert_eq!(count_hom(&cat, d, n, DEFAULT_HOM_BUDGET).unwrap(), c, "{cat} {d} {n}");
                }
            }
        }
    }

    #[test]
    fn sorted_and_unique() {
        let cat = CategoryId::vic(3).unwrap();
        let hs = enumerate_hom_set(&cat, 1, 3, DEFAULT_HOM_BUDGET).unwrap();
        assert!(hs.keys().windows(2).all(|w| w[0] < w[1]));
        assert_eq!(hs.len(), 26 * 9);
        for (i, m) in hs.morphisms().iter().enumerate() {
            assert_eq!(hs.index_of(m), Some(i));
        }
    }

    #[test]
    fn budget_reports_prediction() {
        let cat = CategoryId::vic(3).unwrap();
        match enumerate_hom(&cat, 2, 4, 1000) {
            Err(Error::Budget { predicted, cap, .. }) => assert_eq!((predicted.as_str(), cap), ("505440", 1000)),
            other => panic!("expected a budget error, got {other:?}"),
        }
    }

    #[test]
    fn full_unit_group_matches_vic() {
        for p in [2u8, 3] {
            let vic = CategoryId::vic(p).unwrap();
            let full = CategoryId::vic_u(p, &(1..p).collect::<Vec<_>>()).unwrap();
            for n in 0..=2 {
                for d in 0..=n {
                    let a = enumerate_hom(&vic, d, n, DEFAULT_HOM_BUDGET).unwrap();
                    let b = enumerate_hom(&full, d, n, DEFAULT_HOM_BUDGET).unwrap();
                    assert_eq!(a, b);
                }
            }
        }
    }

    #[test]
    fn identity_is_neutral() {
        let cat = CategoryId::vic(2).unwrap();
        for n in 0..=3 {
            for d in 0..=n.min(2) {
                for f in enumerate_hom(&cat, d, n, DEFAULT_HOM_BUDGET).unwrap() {
                    assert_eq!(identity(&cat, n).compose(&f).unwrap(), f);
                    assert_eq!(f.compose(&identity(&cat, d)).unwrap(), f);
                }
            }
        }
    }
}
