use serde::{Deserialize, Serialize};

use super::rational::Q;
use super::sparse::{SparseVec, TrackedEchelon};
use crate::error::{invalid, Result};

/// Dense matrix of exact rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Q>) -> Result<QMatrix> {
        if data.len() != rows * cols {
            return invalid(format!("{} entries for a {rows}x{cols} matrix", data.len()));
        }
        Ok(QMatrix { rows, cols, data })
    }

    pub fn from_ints(rows: usize, cols: usize, data: &[i64]) -> Result<QMatrix> {
        QMatrix::new(rows, cols, data.iter().map(|&x| Q::int(x)).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> QMatrix {
        QMatrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> QMatrix {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Q::one();
        }
        m
    }

    /// Matrix whose column `j` is `cols[j]`.
    pub fn from_sparse_columns(rows: usize, cols: &[SparseVec]) -> QMatrix {
        let mut m = QMatrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c {
                m.data[*i as usize * cols.len() + j] = x.clone();
            }
        }
        m
    }

    pub fn from_sparse_rows(cols: usize, rows: &[SparseVec]) -> QMatrix {
        let mut m = QMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, x) in r {
                m.data[i * cols + *j as usize] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Q) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn sparse_column(&self, j: usize) -> SparseVec {
        (0..self.rows).filter_map(|i| {
            let x = self.get(i, j);
            (!x.is_zero()).then(|| (i as u32, x.clone()))
        }).collect()
    }

    pub fn sparse_row(&self, i: usize) -> SparseVec {
        self.row(i).iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(j, x)| (j as u32, x.clone())).collect()
    }

    pub fn density(&self) -> f64 {
        if self.data.is_empty() {
            return 0.0;
        }
        self.data.iter().filter(|x| !x.is_zero()).count() as f64 / self.data.len() as f64
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, o: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut out = QMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let e = &mut out.data[i * o.cols + j];
                        *e = &*e + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(Q::zero(), |acc, (a, b)| if a.is_zero() { acc } else { &acc + &(a * b) }))
            .collect()
    }

    pub fn apply_sparse(&self, v: &SparseVec) -> SparseVec {
        let mut out = Vec::new();
        for i in 0..self.rows {
            let s = v.iter().fold(Q::zero(), |acc, (j, x)| {
                let a = self.get(i, *j as usize);
                if a.is_zero() { acc } else { &acc + &(a * x) }
            });
            if !s.is_zero() {
                out.push((i as u32, s));
            }
        }
        out
    }

    pub fn sub(&self, o: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Q::is_zero)
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, o: &QMatrix) -> QMatrix {
        let mut m = QMatrix::zeros(self.rows + o.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..o.rows {
            for j in 0..o.cols {
                m.set(self.rows + i, self.cols + j, o.get(i, j).clone());
            }
        }
        m
    }

    /// Kronecker product, left factor varying slowest.
    pub fn kron(&self, o: &QMatrix) -> QMatrix {
        let mut m = QMatrix::zeros(self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        m.set(i * o.rows + k, j * o.cols + l, a * o.get(k, l));
                    }
                }
            }
        }
        m
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if piv != r {
                for j in 0..cols {
                    m.data.swap(piv * cols + j, r * cols + j);
                }
            }
            let inv = m.get(r, c).inv();
            for j in c..cols {
                let x = m.get(r, j) * &inv;
                m.set(r, j, x);
            }
            for i in 0..rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..cols {
                    let pr = m.get(r, j);
                    if !pr.is_zero() {
                        let x = m.get(i, j) - &(&f * pr);
                        m.set(i, j, x);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        q_rank_kernel(self).0
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = QMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Q::one());
        }
        let (r, piv) = aug.rref();
        if piv.len() < n || piv.iter().any(|&c| c >= n) {
            return None;
        }
        let mut inv = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }
}

/// Density below which rank and kernel go through the sparse eliminator.
pub const SPARSE_DENSITY: f64 = 0.05;

/// Rank and right-kernel basis (one kernel vector per row of the returned
/// matrix, free-variable normalization: coefficient 1 at its own free column,
/// 0 at the others).
pub fn q_rank_kernel(m: &QMatrix) -> (usize, QMatrix) {
    if m.density() < SPARSE_DENSITY {
        q_rank_kernel_sparse(m)
    } else {
        q_rank_kernel_dense(m)
    }
}

pub fn q_rank_kernel_dense(m: &QMatrix) -> (usize, QMatrix) {
    let (r, pivots) = m.rref();
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let mut k = QMatrix::zeros(free.len(), m.cols);
    for (row, &f) in free.iter().enumerate() {
        k.set(row, f, Q::one());
        for (i, &pc) in pivots.iter().enumerate() {
            k.set(row, pc, -r.get(i, f));
        }
    }
    (pivots.len(), k)
}

pub fn q_rank_kernel_sparse(m: &QMatrix) -> (usize, QMatrix) {
    let mut t = TrackedEchelon::new();
    for j in 0..m.cols {
        t.push(m.sparse_column(j));
    }
    let rank = t.rank();
    let (kernel, _) = t.into_kernel();
    (rank, QMatrix::from_sparse_rows(m.cols, &kernel))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let (r, k) = q_rank_kernel(&QMatrix::identity(3));
        assert_eq!((r, k.rows()), (3, 0));
        let m = QMatrix::from_ints(2, 2, &[1, 2, 2, 4]).unwrap();
        let (r, k) = q_rank_kernel(&m);
        assert_eq!(r, 1);
        assert_eq!(k, QMatrix::from_ints(1, 2, &[-2, 1]).unwrap());
        let (r, k) = q_rank_kernel(&QMatrix::zeros(2, 3));
        assert_eq!((r, k.rows()), (0, 3));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = QMatrix::from_ints(2, 2, &[2, 1, 1, 1]).unwrap();
        assert_eq!(m.mul(&m.inverse().unwrap()), QMatrix::identity(2));
        assert!(QMatrix::from_ints(2, 2, &[1, 2, 2, 4]).unwrap().inverse().is_none());
    }

    fn arb_q() -> impl Strategy<Value = QMatrix> {
        (0usize..7, 0usize..7, 0u32..100).prop_flat_map(|(r, c, zero_pct)| {
            prop::collection::vec((-3i64..4, 1i64..4, 0u32..100), r * c).prop_map(move |e| {
                let data = e.into_iter().map(|(n, d, z)| if z < zero_pct { Q::zero() } else { Q::new(n, d) }).collect();
                QMatrix::new(r, c, data).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_q()) {
            let (r, k) = q_rank_kernel(&m);
            prop_assert_eq!(r + k.rows(), m.cols());
            if k.rows() > 0 {
                prop_assert!(m.mul(&k.transpose()).is_zero());
            }
        }

        #[test]
        fn sparse_path_is_bit_identical(m in arb_q()) {
            prop_assert_eq!(q_rank_kernel_dense(&m), q_rank_kernel_sparse(&m));
        }

        #[test]
        fn rank_of_transpose(m in arb_q()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }
    }
}
