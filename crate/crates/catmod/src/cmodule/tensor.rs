use std::sync::Arc;

use super::{CModule, ModRef};
use crate::category::{CatMorphism, CategoryId};
use crate::error::{invalid, Result};
use crate::linalg::sparse::SparseVec;

/// Pointwise tensor product; basis `(i, j)` has index `i * dim B + j`.
pub struct Tensor {
    a: ModRef,
    b: ModRef,
}

impl Tensor {
    pub fn new(a: ModRef, b: ModRef) -> Result<Arc<Tensor>> {
        if a.cat() != b.cat() {
            return invalid(format!("tensor of modules over {} and {}", a.cat(), b.cat()));
        }
        if a.window() != b.window() {
            return invalid("tensor factors must share a window");
        }
        Ok(Arc::new(Tensor { a, b }))
    }
}

impl CModule for Tensor {
    fn cat(&self) -> &CategoryId {
        self.a.cat()
    }

    fn window(&self) -> usize {
        self.a.window()
    }

    fn dim(&self, n: usize) -> usize {
        self.a.dim(n) * self.b.dim(n)
    }

    fn column(&self, f: &CatMorphism, j: usize) -> SparseVec {
        let db = self.b.dim(f.source());
        let dbt = self.b.dim(f.target()) as u32;
        let x = self.a.column(f, j / db);
        let y = self.b.column(f, j % db);
        let mut out = Vec::with_capacity(x.len() * y.len());
        for (i, u) in &x {
            for (k, v) in &y {
                out.push((i * dbt + k, u * v));
            }
        }
        out
    }
}
