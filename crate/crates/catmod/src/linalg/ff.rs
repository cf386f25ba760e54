use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

pub const SUPPORTED_PRIMES: [u8; 4] = [2, 3, 5, 7];

pub fn check_prime(p: u8) -> Result<()> {
    if SUPPORTED_PRIMES.contains(&p) {
        Ok(())
    } else {
        invalid(format!("unsupported field size {p}; expected one of 2, 3, 5, 7"))
    }
}

#[inline]
pub fn inv_mod(a: u8, p: u8) -> u8 {
    debug_assert!(!a.is_multiple_of(p));
    let mut r = 1u32;
    let a = a as u32 % p as u32;
    for _ in 0..p - 2 {
        r = r * a % p as u32;
    }
    r as u8
}

#[inline]
pub fn neg_mod(a: u8, p: u8) -> u8 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

/// Dense matrix over GF(p), row-major residues.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FFMatrix {
    p: u8,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl fmt::Debug for FFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FF{}{:?}", self.p, self.to_rows())
    }
}

impl FFMatrix {
    pub fn new(p: u8, rows: usize, cols: usize, data: Vec<u8>) -> Result<FFMatrix> {
        check_prime(p)?;
        if data.len() != rows * cols {
            return invalid(format!("{} entries for a {rows}x{cols} matrix", data.len()));
        }
        if let Some(e) = data.iter().find(|&&e| e >= p) {
            return invalid(format!("entry {e} is not a residue mod {p}"));
        }
        Ok(FFMatrix { p, rows, cols, data })
    }

    /// Reduces arbitrary integers mod p.
    pub fn from_ints(p: u8, rows: usize, cols: usize, data: &[i64]) -> Result<FFMatrix> {
        let data = data.iter().map(|&x| x.rem_euclid(p as i64) as u8).collect();
        FFMatrix::new(p, rows, cols, data)
    }

    pub fn from_rows(p: u8, cols: usize, rows: &[Vec<u8>]) -> Result<FFMatrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return invalid(format!("row of length {} in a matrix with {cols} columns", r.len()));
            }
            data.extend_from_slice(r);
        }
        FFMatrix::new(p, rows.len(), cols, data)
    }

    pub(crate) fn raw(p: u8, rows: usize, cols: usize, data: Vec<u8>) -> FFMatrix {
        debug_assert_eq!(data.len(), rows * cols);
        FFMatrix { p, rows, cols, data }
    }

    pub fn zeros(p: u8, rows: usize, cols: usize) -> FFMatrix {
        FFMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u8, n: usize) -> FFMatrix {
        let mut m = FFMatrix::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn p(&self) -> u8 {
        self.p
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn data(&self) -> &[u8] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u8> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&e| e == 0)
    }

    pub fn transpose(&self) -> FFMatrix {
        let mut t = FFMatrix::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, o: &FFMatrix) -> FFMatrix {
        assert_eq!(self.p, o.p, "field mismatch");
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let p = self.p as u32;
        let mut out = vec![0u8; self.rows * o.cols];
        for i in 0..self.rows {
            let orow = &mut out[i * o.cols..(i + 1) * o.cols];
            let mut acc = vec![0u32; o.cols];
            for k in 0..self.cols {
                let a = self.get(i, k) as u32;
                if a == 0 {
                    continue;
                }
                for (x, &b) in acc.iter_mut().zip(o.row(k)) {
                    *x += a * b as u32;
                }
            }
            for (dst, x) in orow.iter_mut().zip(acc) {
                *dst = (x % p) as u8;
            }
        }
        FFMatrix::raw(self.p, self.rows, o.cols, out)
    }

    pub fn mul_vec(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.cols);
        let p = self.p as u32;
        (0..self.rows)
            .map(|i| {
                let s: u32 = self.row(i).iter().zip(v).map(|(&a, &b)| a as u32 * b as u32).sum();
                (s % p) as u8
            })
            .collect()
    }

    /// Stacks the rows of `o` under the rows of `self`.
    pub fn vstack(&self, o: &FFMatrix) -> FFMatrix {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&o.data);
        FFMatrix::raw(self.p, self.rows + o.rows, self.cols, data)
    }

    /// Places the columns of `o` to the right of `self`.
    pub fn hstack(&self, o: &FFMatrix) -> FFMatrix {
        assert_eq!(self.rows, o.rows);
        let cols = self.cols + o.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(o.row(i));
        }
        FFMatrix::raw(self.p, self.rows, cols, data)
    }

    pub fn select_columns(&self, cols: &[usize]) -> FFMatrix {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            data.extend(cols.iter().map(|&j| self.get(i, j)));
        }
        FFMatrix::raw(self.p, self.rows, cols.len(), data)
    }

    pub fn select_rows(&self, rows: &[usize]) -> FFMatrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend_from_slice(self.row(i));
        }
        FFMatrix::raw(self.p, rows.len(), self.cols, data)
    }

    /// Reduced row echelon form (zero rows kept at the bottom) and pivot columns.
    pub fn rref(&self) -> (FFMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub(crate) fn rref_in_place(&mut self) -> Vec<usize> {
        let (p, rows, cols) = (self.p, self.rows, self.cols);
        let pu = p as u32;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..cols {
                    self.data.swap(piv * cols + j, r * cols + j);
                }
            }
            let inv = inv_mod(self.data[r * cols + c], p) as u32;
            if inv != 1 {
                for j in c..cols {
                    let e = &mut self.data[r * cols + j];
                    *e = (*e as u32 * inv % pu) as u8;
                }
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = self.data[i * cols + c] as u32;
                if f == 0 {
                    continue;
                }
                let nf = pu - f;
                for j in c..cols {
                    let pr = self.data[r * cols + j] as u32;
                    if pr != 0 {
                        let e = &mut self.data[i * cols + j];
                        *e = ((*e as u32 + nf * pr) % pu) as u8;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{x : Mx = 0}`, one vector per row, in the
    /// standard free-variable normalization.
    pub fn kernel(&self) -> FFMatrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = FFMatrix::zeros(self.p, free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            out.data[k * self.cols + f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                out.data[k * self.cols + pc] = neg_mod(r.get(i, f), self.p);
            }
        }
        out
    }

    pub fn det(&self) -> u8 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let p = self.p as u32;
        let mut m = self.data.clone();
        let mut det = 1u32;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&i| m[i * n + c] != 0) else {
                return 0;
            };
            if piv != c {
                for j in 0..n {
                    m.swap(piv * n + j, c * n + j);
                }
                det = (p - det) % p;
            }
            let d = m[c * n + c] as u32;
            det = det * d % p;
            let inv = inv_mod(d as u8, self.p) as u32;
            for i in c + 1..n {
                let f = m[i * n + c] as u32 * inv % p;
                if f == 0 {
                    continue;
                }
                for j in c..n {
                    let e = m[i * n + j] as u32 + (p - f) * m[c * n + j] as u32;
                    m[i * n + j] = (e % p) as u8;
                }
            }
        }
        det as u8
    }

    pub fn inverse(&self) -> Option<FFMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = self.hstack(&FFMatrix::identity(self.p, n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.select_columns(&(n..2 * n).collect::<Vec<_>>()))
    }

    /// Solves `self * X = B` for `X`, assuming `self` has full column rank and
    /// the columns of `B` lie in its column space.
    pub fn left_solve(&self, b: &FFMatrix) -> Option<FFMatrix> {
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        if pivots.len() != self.cols || pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let sol = r.select_rows(&(0..self.cols).collect::<Vec<_>>());
        Some(sol.select_columns(&(self.cols..self.cols + b.cols).collect::<Vec<_>>()))
    }

    /// Digits in row-major order.
    pub fn digits(&self) -> &[u8] {
        &self.data
    }
}

pub fn ff_rref(m: &FFMatrix) -> (FFMatrix, Vec<usize>) {
    m.rref()
}

pub fn ff_rank(m: &FFMatrix) -> usize {
    m.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(p: u8, rows: usize, cols: usize, d: &[u8]) -> FFMatrix {
        FFMatrix::new(p, rows, cols, d.to_vec()).unwrap()
    }

    #[test]
    fn rref_examples() {
        let id = FFMatrix::identity(2, 2);
        assert_eq!(ff_rref(&id), (id.clone(), vec![0, 1]));
        let (r, piv) = ff_rref(&mat(2, 2, 2, &[1, 1, 1, 1]));
        assert_eq!(r, mat(2, 2, 2, &[1, 1, 0, 0]));
        assert_eq!(piv, vec![0]);
        let z = FFMatrix::zeros(3, 3, 3);
        assert_eq!(ff_rref(&z), (z.clone(), vec![]));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(ff_rank(&FFMatrix::identity(5, 4)), 4);
        assert_eq!(ff_rank(&mat(2, 2, 2, &[1, 1, 1, 1])), 1);
        assert_eq!(ff_rank(&mat(3, 2, 2, &[1, 2, 2, 1])), 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(FFMatrix::new(4, 1, 1, vec![1]).is_err());
        assert!(FFMatrix::new(3, 1, 2, vec![1, 3]).is_err());
        assert!(FFMatrix::new(3, 2, 2, vec![1]).is_err());
    }

    #[test]
    fn det_and_inverse() {
        let m = mat(5, 2, 2, &[1, 2, 3, 4]);
        assert_eq!(m.det(), 3); // 4 - 6 = -2
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), FFMatrix::identity(5, 2));
        assert!(mat(3, 2, 2, &[1, 2, 2, 1]).inverse().is_none());
    }

    fn arb_matrix() -> impl Strategy<Value = FFMatrix> {
        (prop::sample::select(SUPPORTED_PRIMES.to_vec()), 0usize..6, 0usize..6).prop_flat_map(|(p, r, c)| {
            prop::collection::vec(0..p, r * c).prop_map(move |d| FFMatrix::new(p, r, c, d).unwrap())
        })
    }

    proptest! {
        #[test]
        fn rank_of_transpose(m in arb_matrix()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn rref_is_fixed_point(m in arb_matrix()) {
            let (r, piv) = m.rref();
            prop_assert_eq!(r.rref(), (r.clone(), piv));
        }

        #[test]
        fn kernel_is_annihilated(m in arb_matrix()) {
            let k = m.kernel();
            prop_assert_eq!(k.rows() + m.rank(), m.cols());
            if k.rows() > 0 {
                prop_assert!(m.mul(&k.transpose()).is_zero());
            }
        }

        #[test]
        fn det_nonzero_iff_full_rank(m in arb_matrix()) {
            if m.rows() == m.cols() {
                prop_assert_eq!(m.det() != 0, m.rank() == m.rows());
            }
        }
    }
}
