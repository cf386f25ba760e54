use std::collections::HashMap;

use super::rational::Q;

/// Sparse rational vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(u32, Q)>;

pub fn unit(i: usize) -> SparseVec {
    vec![(i as u32, Q::one())]
}

pub fn scale(v: &SparseVec, c: &Q) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x * c)).collect()
}

/// `a + c * b`.
pub fn axpy(a: &SparseVec, c: &Q, b: &SparseVec) -> SparseVec {
    if c.is_zero() {
        return a.clone();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, &b[j].1 * c));
            j += 1;
        } else {
            let s = &a[i].1 + &(&b[j].1 * c);
            if !s.is_zero() {
                out.push((a[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Builds a sparse vector from unsorted `(index, value)` terms, summing repeats.
pub fn collect_terms(mut terms: Vec<(u32, Q)>) -> SparseVec {
    terms.sort_by_key(|t| t.0);
    let mut out: SparseVec = Vec::with_capacity(terms.len());
    for (i, x) in terms {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y = &*y + &x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

pub fn dot_dense(v: &SparseVec, dense: &[Q]) -> Q {
    v.iter().fold(Q::zero(), |acc, (i, x)| &acc + &(x * &dense[*i as usize]))
}

/// Entry at index `i` (zero when absent).
pub fn entry(v: &SparseVec, i: u32) -> Q {
    match v.binary_search_by_key(&i, |t| t.0) {
        Ok(k) => v[k].1.clone(),
        Err(_) => Q::zero(),
    }
}

/// Incrementally built echelon basis of a subspace of Q^dim.
///
/// Rows are normalized to leading coefficient 1. `reduce` clears every pivot
/// column, so its output is the unique normal form of a vector modulo the span
/// and is supported on non-pivot columns only.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    dim: usize,
    rows: Vec<SparseVec>,
    pivot_of: HashMap<u32, usize>,
}

impl Echelon {
    pub fn new(dim: usize) -> Echelon {
        Echelon { dim, rows: Vec::new(), pivot_of: HashMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.pivot_of.contains_key(&(c as u32))
    }

    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        if self.rows.is_empty() {
            return v;
        }
        let mut k = 0;
        while k < v.len() {
            let c = v[k].0;
            match self.pivot_of.get(&c) {
                Some(&r) => {
                    let coeff = -&v[k].1;
                    v = axpy(&v, &coeff, &self.rows[r]);
                    // v[k] is now gone; entries before k are untouched.
                }
                None => k += 1,
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(v);
        self.push_reduced(r)
    }

    fn push_reduced(&mut self, r: SparseVec) -> bool {
        let Some((lead, lc)) = r.first().cloned() else {
            return false;
        };
        let row = if lc.is_one() { r } else { scale(&r, &lc.inv()) };
        self.pivot_of.insert(lead, self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    pub fn pivots_sorted(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.pivot_of.keys().map(|&c| c as usize).collect();
        p.sort_unstable();
        p
    }

    /// Columns that carry the quotient coordinates.
    pub fn nonpivots(&self) -> Vec<usize> {
        (0..self.dim).filter(|&c| !self.is_pivot(c)).collect()
    }

    /// Fully reduced basis, sorted by pivot column.
    pub fn rref_rows(&self) -> Vec<SparseVec> {
        let mut order: Vec<(u32, usize)> = self.pivot_of.iter().map(|(&c, &r)| (c, r)).collect();
        order.sort_unstable();
        order
            .into_iter()
            .map(|(c, r)| {
                let row = &self.rows[r];
                let head = row[0].clone();
                let tail: SparseVec = row[1..].to_vec();
                let mut red = self.reduce(tail);
                red.insert(0, head);
                debug_assert_eq!(red[0].0, c);
                red
            })
            .collect()
    }
}

/// Echelon basis of the image of a linear map that also records, for every
/// source vector that falls into the span of earlier ones, the dependency
/// relation. The relations form the free-variable kernel basis.
#[derive(Clone, Debug)]
pub struct TrackedEchelon {
    images: Vec<SparseVec>,
    combos: Vec<SparseVec>,
    pivot_of: HashMap<u32, usize>,
    kernel: Vec<SparseVec>,
    free: Vec<usize>,
    seen: usize,
}

impl TrackedEchelon {
    pub fn new() -> TrackedEchelon {
        TrackedEchelon { images: Vec::new(), combos: Vec::new(), pivot_of: HashMap::new(), kernel: Vec::new(), free: Vec::new(), seen: 0 }
    }

    /// Feeds the image of the next source basis vector.
    pub fn push(&mut self, mut img: SparseVec) {
        let j = self.seen;
        self.seen += 1;
        let mut combo = unit(j);
        let mut k = 0;
        while k < img.len() {
            match self.pivot_of.get(&img[k].0) {
                Some(&r) => {
                    let coeff = -&img[k].1;
                    img = axpy(&img, &coeff, &self.images[r]);
                    combo = axpy(&combo, &coeff, &self.combos[r]);
                }
                None => k += 1,
            }
        }
        match img.first().cloned() {
            None => {
                self.free.push(j);
                self.kernel.push(combo);
            }
            Some((lead, lc)) => {
                let s = lc.inv();
                self.pivot_of.insert(lead, self.images.len());
                self.images.push(scale(&img, &s));
                self.combos.push(scale(&combo, &s));
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    /// Kernel basis; vector `k` has coefficient 1 at `free()[k]` and 0 at the
    /// other free columns.
    pub fn kernel(&self) -> &[SparseVec] {
        &self.kernel
    }

    pub fn free(&self) -> &[usize] {
        &self.free
    }

    pub fn into_kernel(self) -> (Vec<SparseVec>, Vec<usize>) {
        (self.kernel, self.free)
    }
}

impl Default for TrackedEchelon {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(e: &[(u32, i64)]) -> SparseVec {
        e.iter().map(|&(i, x)| (i, Q::int(x))).collect()
    }

    #[test]
    fn axpy_merges_and_cancels() {
        let a = v(&[(0, 1), (2, 3)]);
        let b = v(&[(1, 1), (2, 1)]);
        assert_eq!(axpy(&a, &Q::int(-3), &b), v(&[(0, 1), (1, -3)]));
    }

    #[test]
    fn echelon_normal_form() {
        let mut e = Echelon::new(3);
        assert!(e.insert(v(&[(0, 2), (1, 2)])));
        assert!(!e.insert(v(&[(0, 1), (1, 1)])));
        assert_eq!(e.rank(), 1);
        assert_eq!(e.reduce(v(&[(0, 1)])), v(&[(1, -1)]));
        assert_eq!(e.nonpivots(), vec![1, 2]);
        assert!(e.insert(v(&[(1, 1), (2, 1)])));
        assert_eq!(e.rref_rows(), vec![v(&[(0, 1), (2, -1)]), v(&[(1, 1), (2, 1)])]);
    }

    #[test]
    fn tracked_kernel() {
        // columns of [[1,2],[2,4]]
        let mut t = TrackedEchelon::new();
        t.push(v(&[(0, 1), (1, 2)]));
        t.push(v(&[(0, 2), (1, 4)]));
        assert_eq!(t.rank(), 1);
        assert_eq!(t.kernel(), &[v(&[(0, -2), (1, 1)])]);
        assert_eq!(t.free(), &[1]);
    }
}
