use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use crate::category::morphism::identity;
use crate::category::{CatMorphism, CategoryId, MorphismKey};
use crate::error::{invalid, Error, Result};
use crate::groups::generators::generators;
use crate::linalg::sparse::{collect_terms, unit, SparseVec};
use crate::linalg::{QMatrix, Q};

/// Breadth-first spanning tree of `G_d` over `generators(cat, d)`: every
/// element is stored with its parent and the generator `s` with
/// `element = s ∘ parent`.
#[derive(Debug)]
pub struct SchreierTree {
    pub cat: CategoryId,
    pub d: usize,
    pub gens: Vec<CatMorphism>,
    elements: Vec<CatMorphism>,
    parent: Vec<(u32, u16)>,
    index: HashMap<MorphismKey, u32>,
}

impl SchreierTree {
    pub fn build(cat: &CategoryId, d: usize, cap: u64) -> Result<SchreierTree> {
        let gens = generators(cat, d);
        let id = identity(cat, d);
        let mut index = HashMap::from([(id.key(), 0u32)]);
        let mut elements = vec![id];
        let mut parent = vec![(0u32, u16::MAX)];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (si, s) in gens.iter().enumerate() {
                let h = s.compose_unchecked(&elements[i]);
                let k = h.key();
                if index.contains_key(&k) {
                    continue;
                }
                if elements.len() as u64 >= cap {
                    return Err(Error::Budget { what: format!("G_{d} of {cat}"), predicted: format!("more than {cap}"), cap });
                }
                index.insert(k, elements.len() as u32);
                parent.push((i as u32, si as u16));
                queue.push_back(elements.len());
                elements.push(h);
            }
        }
        Ok(SchreierTree { cat: cat.clone(), d, gens, elements, parent, index })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[CatMorphism] {
        &self.elements
    }

    pub fn index_of(&self, g: &CatMorphism) -> Option<usize> {
        self.index.get(&g.key()).map(|&i| i as usize)
    }

    /// Generator indices `[s_1, ..., s_k]` with `g = s_k ∘ ... ∘ s_1`.
    pub fn word(&self, i: usize) -> Vec<u16> {
        let mut w = Vec::new();
        let mut at = i;
        while at != 0 {
            let (p, s) = self.parent[at];
            w.push(s);
            at = p as usize;
        }
        w.reverse();
        w
    }
}

/// A finite-dimensional representation of `G_d`, given by the images of
/// `generators(cat, d)`, stored as sparse columns.
#[derive(Clone, Debug)]
pub struct GroupRep {
    pub tree: Arc<SchreierTree>,
    pub dim: usize,
    gen_cols: Vec<Vec<SparseVec>>,
}

impl GroupRep {
    /// Validates that the generator matrices define a representation.
    pub fn new(tree: Arc<SchreierTree>, dim: usize, mats: &[QMatrix]) -> Result<GroupRep> {
        if mats.len() != tree.gens.len() {
            return invalid(format!("{} action matrices for {} generators of G_{}", mats.len(), tree.gens.len(), tree.d));
        }
        if let Some(m) = mats.iter().find(|m| m.rows() != dim || m.cols() != dim) {
            return invalid(format!("action matrix is {}x{}, expected {dim}x{dim}", m.rows(), m.cols()));
        }
        let gen_cols = mats.iter().map(|m| (0..dim).map(|j| m.sparse_column(j)).collect()).collect();
        let rep = GroupRep { tree, dim, gen_cols };
        rep.check_relations()?;
        Ok(rep)
    }

    /// For actions known to be valid by construction.
    pub(crate) fn from_columns(tree: Arc<SchreierTree>, dim: usize, gen_cols: Vec<Vec<SparseVec>>) -> GroupRep {
        GroupRep { tree, dim, gen_cols }
    }

    pub fn trivial(tree: Arc<SchreierTree>, dim: usize) -> GroupRep {
        let cols = (0..tree.gens.len()).map(|_| (0..dim).map(unit).collect()).collect();
        GroupRep { tree, dim, gen_cols: cols }
    }

    /// The regular representation on the group elements, in tree order.
    pub fn regular(tree: Arc<SchreierTree>) -> GroupRep {
        let cols = tree
            .gens
            .iter()
            .map(|s| tree.elements.iter().map(|g| unit(tree.index_of(&s.compose_unchecked(g)).expect("closed"))).collect())
            .collect();
        GroupRep { dim: tree.len(), tree, gen_cols: cols }
    }

    pub fn generator_matrix(&self, s: usize) -> QMatrix {
        QMatrix::from_sparse_columns(self.dim, &self.gen_cols[s])
    }

    pub fn apply_generator(&self, s: usize, v: &SparseVec) -> SparseVec {
        let mut terms = Vec::new();
        for (j, x) in v {
            for (i, y) in &self.gen_cols[s][*j as usize] {
                terms.push((*i, x * y));
            }
        }
        collect_terms(terms)
    }

    /// `rho(g) v` for the element with tree index `i`.
    pub fn apply_index(&self, i: usize, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        for s in self.tree.word(i) {
            out = self.apply_generator(s as usize, &out);
        }
        out
    }

    pub fn apply(&self, g: &CatMorphism, v: &SparseVec) -> SparseVec {
        self.apply_index(self.tree.index_of(g).expect("element of G_d"), v)
    }

    /// Checks `rho(s) rho(g) = rho(s g)` on every non-tree edge.
    fn check_relations(&self) -> Result<()> {
        let t = &self.tree;
        let basis: Vec<SparseVec> = (0..self.dim).map(unit).collect();
        let mut images: Vec<Vec<SparseVec>> = Vec::with_capacity(t.len());
        images.push(basis.clone());
        for i in 1..t.len() {
            let (p, s) = t.parent[i];
            let cols = images[p as usize].iter().map(|v| self.apply_generator(s as usize, v)).collect();
            images.push(cols);
        }
        for (i, g) in t.elements.iter().enumerate() {
            for (si, s) in t.gens.iter().enumerate() {
                let h = t.index_of(&s.compose_unchecked(g)).expect("closed");
                let lhs: Vec<SparseVec> = images[i].iter().map(|v| self.apply_generator(si, v)).collect();
                if lhs != images[h] {
                    return invalid("action matrices do not satisfy the group relations");
                }
            }
        }
        Ok(())
    }
}

/// `(1/|G|) sum_g` of a linear expression in `g`, for Reynolds averaging.
pub(crate) fn group_average(tree: &SchreierTree, mut term: impl FnMut(&CatMorphism) -> SparseVec) -> SparseVec {
    let mut terms = Vec::new();
    for g in &tree.elements {
        terms.extend(term(g));
    }
    let inv = Q::new(1, tree.len() as i64);
    collect_terms(terms).into_iter().map(|(i, x)| (i, &x * &inv)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::generators::DEFAULT_GROUP_BUDGET;

    #[test]
    fn trees_span_the_group() {
        for cat in [CategoryId::vic(3).unwrap(), CategoryId::si(2).unwrap(), CategoryId::vic_u(5, &[1, 4]).unwrap()] {
            for d in 0..=2 {
                let t = SchreierTree::build(&cat, d, DEFAULT_GROUP_BUDGET).unwrap();
                assert_eq!(t.len() as u64, num_traits::ToPrimitive::to_u64(&crate::groups::group_order(&cat, d)).unwrap());
                for (i, g) in t.elements().iter().enumerate().step_by(7) {
                    let mut h = identity(&cat, d);
                    for s in t.word(i) {
                        h = t.gens[s as usize].compose_unchecked(&h);
                    }
                    assert_eq!(&h, g);
                }
            }
        }
    }

    #[test]
    fn validates_representations() {
        let cat = CategoryId::vic(2).unwrap();
        let t = Arc::new(SchreierTree::build(&cat, 2, DEFAULT_GROUP_BUDGET).unwrap());
        let reg = GroupRep::regular(t.clone());
        let mats: Vec<QMatrix> = (0..t.gens.len()).map(|s| reg.generator_matrix(s)).collect();
        assert!(GroupRep::new(t.clone(), t.len(), &mats).is_ok());
        // E12 and E21 are conjugate, so they cannot act by different signs.
        let bad = vec![QMatrix::from_ints(1, 1, &[-1]).unwrap(), QMatrix::identity(1)];
        assert!(GroupRep::new(t.clone(), 1, &bad).is_err());
        let sign = vec![QMatrix::from_ints(1, 1, &[-1]).unwrap(); 2];
        assert!(GroupRep::new(t.clone(), 1, &sign).is_ok());
        let one = vec![QMatrix::identity(1); 2];
        assert!(GroupRep::new(t.clone(), 1, &one).is_ok());
        assert!(GroupRep::new(t, 1, &one[..1]).is_err());
    }
}
