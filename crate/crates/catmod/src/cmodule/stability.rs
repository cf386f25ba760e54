use serde::Serialize;

use super::ModRef;
use crate::category::morphism::embed_bottom_right;
use crate::category::standard_inclusion;
use crate::groups::coinvariants::{coinvariants_of_action, Coinvariants};
use crate::groups::generators;
use crate::linalg::sparse::Echelon;

/// Flags for `(A_n)_{G_{n-a}} -> (A_{n+1})_{G_{n+1-a}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityRow {
    pub a: usize,
    pub n: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub injective: bool,
    pub surjective: bool,
}

/// `(A_n)_{G_{n-a}}` with `G_{n-a}` in the bottom-right block.
pub fn coinvariants(a: &ModRef, n: usize, sub: usize) -> Coinvariants {
    let cat = a.cat();
    let gens: Vec<_> = generators(cat, n - sub).iter().map(|g| embed_bottom_right(cat, g, n)).collect();
    coinvariants_of_action(a.dim(n), gens.len(), |s, j| a.column(&gens[s], j))
}

/// One row per `a <= a_max` and `a <= n < window`.
pub fn stability_scan(m: &ModRef, a_max: usize) -> Vec<StabilityRow> {
    let cat = m.cat().clone();
    let mut rows = Vec::new();
    for a in 0..=a_max {
        for n in a..m.window() {
            let src = coinvariants(m, n, a);
            let dst = coinvariants(m, n + 1, a);
            let iota = standard_inclusion(&cat, n);
            let mut image = Echelon::new(dst.dim);
            for &j in &src.lift {
                image.insert(dst.project(m.column(&iota, j)));
            }
            rows.push(StabilityRow {
                a,
                n,
                source_dim: src.dim,
                target_dim: dst.dim,
                injective: image.rank() == src.dim,
                surjective: image.rank() == dst.dim,
            });
        }
    }
    rows
}
