//! Compares two predicates on a module `A` and degrees `d_0 < ... < d_k`:
//! the resolution side (the minimal induced resolution has `M^j` generated
//! in degree `<= d_j`) and the homology side (`HH_i(A)_n = 0` for
//! `n > d_{i+1}`, `-1 <= i < k`). Both are evaluated inside the window.

use serde::Serialize;

use super::chains::central_homology;
use crate::cmodule::{resolve, Degree, ModRef, WindowDegree};
use crate::ctx::Ctx;
use crate::error::{invalid, Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct HomologyPoint {
    pub i: isize,
    pub n: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResolutionCheck {
    pub degrees: Vec<usize>,
    pub window: usize,
    pub generation_degrees: Vec<WindowDegree>,
    pub resolution_side: bool,
    pub homology: Vec<HomologyPoint>,
    pub homology_side: bool,
    pub agree: bool,
}

/// Smallest admissible gap `d_{j+1} - d_j`: 3 for SI, 2 otherwise.
pub fn required_gap(a: &ModRef) -> usize {
    if a.cat().is_si() {
        3
    } else {
        2
    }
}

pub fn resolution_equivalence_check(ctx: &Ctx, a: &ModRef, degrees: &[usize]) -> Result<ResolutionCheck> {
    let Some(&last) = degrees.last() else {
        return invalid("degree list is empty");
    };
    let gap = required_gap(a);
    if degrees.windows(2).any(|w| w[1] < w[0] + gap) {
        return invalid(format!("consecutive degrees must differ by at least {gap} over {}", a.cat()));
    }
    let window = a.window();
    if window <= last {
        return Err(Error::Window(format!("window {window} leaves nothing above degree {last}")));
    }
    let k = degrees.len() - 1;
    let generation_degrees = resolve(ctx, a, k)?.generation_degrees();
    let resolution_side = generation_degrees.iter().zip(degrees).all(|(g, &d)| match g.degree {
        Degree::None => true,
        Degree::At(x) => x <= d,
    });
    let mut homology = Vec::new();
    for i in -1..k as isize {
        for n in degrees[(i + 1) as usize] + 1..=window {
            homology.push(HomologyPoint { i, n, dim: central_homology(ctx, a, i, n)?.homology });
        }
    }
    let homology_side = homology.iter().all(|h| h.dim == 0);
    Ok(ResolutionCheck {
        degrees: degrees.to_vec(),
        window,
        generation_degrees,
        resolution_side,
        homology,
        homology_side,
        agree: resolution_side == homology_side,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::CategoryId;
    use crate::cmodule::{representable, skyscraper};

    #[test]
    fn test_modules_agree() {
        let ctx = Ctx::default();
        let vic2 = CategoryId::vic(2).unwrap();
        let m1: ModRef = representable(&ctx, &vic2, 1, 4).unwrap();
        let r = resolution_equivalence_check(&ctx, &m1, &[1, 3]).unwrap();
        assert!(r.resolution_side && r.homology_side && r.agree, "{r:?}");
        let zero: ModRef = representable(&ctx, &vic2, 5, 4).unwrap();
        let r = resolution_equivalence_check(&ctx, &zero, &[0, 2]).unwrap();
        assert!(r.resolution_side && r.homology_side);
        let sky = skyscraper(&ctx, &vic2, 4).unwrap();
        let r = resolution_equivalence_check(&ctx, &sky, &[0, 2]).unwrap();
        assert!(r.agree && r.resolution_side, "{r:?}");
        // M(1) is not generated in degree 0, and HH_{-1}(M(1))_1 = Q sees it
        let r = resolution_equivalence_check(&ctx, &m1, &[0, 2]).unwrap();
        assert!(!r.resolution_side && !r.homology_side, "{r:?}");
    }

    #[test]
    fn rejects_bad_input() {
        let ctx = Ctx::default();
        let m1: ModRef = representable(&ctx, &CategoryId::vic(2).unwrap(), 1, 3).unwrap();
        assert!(matches!(resolution_equivalence_check(&ctx, &m1, &[0, 1]), Err(Error::Invalid(_))));
        assert!(matches!(resolution_equivalence_check(&ctx, &m1, &[1, 3]), Err(Error::Window(_))));
        assert!(resolution_equivalence_check(&ctx, &m1, &[]).is_err());
    }
}
