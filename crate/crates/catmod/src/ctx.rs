use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use crate::category::cache::{cache_path, read_cache, write_cache};
use crate::category::enumerate::{enumerate_hom_set, HomSet, DEFAULT_HOM_BUDGET};
use crate::category::enumerate::check_budget;
use crate::category::frame::orbit_representatives;
use crate::category::{CatMorphism, CategoryId, MorphismKey};
use crate::cmodule::rep::SchreierTree;
use crate::groups::order::{group_order, predicted_hom_count};
use crate::error::Result;
use crate::groups::generators::{enumerate_group, DEFAULT_GROUP_BUDGET};

type HomKey = (CategoryId, usize, usize);

/// Budgets plus memoized Hom sets and groups. Clones share the memo tables.
#[derive(Clone)]
pub struct Ctx {
    inner: Arc<Inner>,
}

struct Inner {
    hom_budget: u64,
    group_budget: u64,
    cache_dir: Option<PathBuf>,
    homs: Mutex<HashMap<HomKey, Arc<HomSet>>>,
    groups: Mutex<HashMap<(CategoryId, usize), Arc<HomSet>>>,
    trees: Mutex<HashMap<(CategoryId, usize), Arc<SchreierTree>>>,
    reps: Mutex<HashMap<HomKey, Arc<OrbitBasis>>>,
}

impl Default for Ctx {
    fn default() -> Ctx {
        Ctx::new(DEFAULT_HOM_BUDGET, DEFAULT_GROUP_BUDGET, None)
    }
}

impl Ctx {
    pub fn new(hom_budget: u64, group_budget: u64, cache_dir: Option<PathBuf>) -> Ctx {
        Ctx {
            inner: Arc::new(Inner {
                hom_budget,
                group_budget,
                cache_dir,
                homs: Mutex::new(HashMap::new()),
                groups: Mutex::new(HashMap::new()),
                trees: Mutex::new(HashMap::new()),
                reps: Mutex::new(HashMap::new()),
            }),
        }
    }

    pub fn hom_budget(&self) -> u64 {
        self.inner.hom_budget
    }

    pub fn group_budget(&self) -> u64 {
        self.inner.group_budget
    }

    pub fn cache_dir(&self) -> Option<&PathBuf> {
        self.inner.cache_dir.as_ref()
    }

    /// `Hom(k^d, k^n)`, from memory, the cache directory, or fresh enumeration.
    // The lock is never held while enumerating: enumeration runs on the rayon
    // pool, and a worker blocked on this mutex could deadlock it.
    pub fn hom(&self, cat: &CategoryId, d: usize, n: usize) -> Result<Arc<HomSet>> {
        let key = (cat.clone(), d, n);
        if let Some(h) = self.inner.homs.lock().unwrap().get(&key) {
            return Ok(h.clone());
        }
        let hs = match &self.inner.cache_dir {
            Some(dir) => {
                let path = cache_path(dir, cat, d, n);
                if path.exists() {
                    read_cache(&path, cat, d, n)?
                } else {
                    let hs = enumerate_hom_set(cat, d, n, self.inner.hom_budget)?;
                    write_cache(dir, &hs)?;
                    hs
                }
            }
            None => enumerate_hom_set(cat, d, n, self.inner.hom_budget)?,
        };
        let hs = Arc::new(hs);
        Ok(self.inner.homs.lock().unwrap().entry(key).or_insert(hs).clone())
    }

    pub fn group(&self, cat: &CategoryId, n: usize) -> Result<Arc<HomSet>> {
        let key = (cat.clone(), n);
        if let Some(g) = self.inner.groups.lock().unwrap().get(&key) {
            return Ok(g.clone());
        }
        let g = Arc::new(enumerate_group(cat, n, self.inner.group_budget)?);
        Ok(self.inner.groups.lock().unwrap().entry(key).or_insert(g).clone())
    }

    /// Spanning tree of `G_d` over its standard generators.
    pub fn tree(&self, cat: &CategoryId, d: usize) -> Result<Arc<SchreierTree>> {
        let key = (cat.clone(), d);
        if let Some(t) = self.inner.trees.lock().unwrap().get(&key) {
            return Ok(t.clone());
        }
        let t = Arc::new(SchreierTree::build(cat, d, self.inner.group_budget)?);
        Ok(self.inner.trees.lock().unwrap().entry(key).or_insert(t).clone())
    }

    /// Normal forms of the precomposition orbits on `Hom(k^d, k^n)`.
    pub fn orbit_basis(&self, cat: &CategoryId, d: usize, n: usize) -> Result<Arc<OrbitBasis>> {
        let key = (cat.clone(), d, n);
        if let Some(b) = self.inner.reps.lock().unwrap().get(&key) {
            return Ok(b.clone());
        }
        let predicted = predicted_hom_count(cat, d, n) / group_order(cat, d);
        check_budget(format!("orbits on Hom(k^{d}, k^{n}) in {cat}"), &predicted, self.inner.hom_budget)?;
        let b = Arc::new(OrbitBasis::new(orbit_representatives(cat, d, n)));
        Ok(self.inner.reps.lock().unwrap().entry(key).or_insert(b).clone())
    }
}

/// Sorted orbit representatives with a key index.
#[derive(Debug)]
pub struct OrbitBasis {
    pub reps: Vec<CatMorphism>,
    index: HashMap<MorphismKey, u32>,
}

impl OrbitBasis {
    fn new(reps: Vec<CatMorphism>) -> OrbitBasis {
        let index = reps.iter().enumerate().map(|(i, r)| (r.key(), i as u32)).collect();
        OrbitBasis { reps, index }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn index_of(&self, r: &CatMorphism) -> Option<usize> {
        self.index.get(&r.key()).map(|&i| i as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn memoizes_and_uses_cache_dir() {
        let dir = tempfile::tempdir().unwrap();
        let ctx = Ctx::new(DEFAULT_HOM_BUDGET, DEFAULT_GROUP_BUDGET, Some(dir.path().to_path_buf()));
        let cat = CategoryId::vic(2).unwrap();
        let a = ctx.hom(&cat, 1, 3).unwrap();
        let b = ctx.hom(&cat, 1, 3).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert!(cache_path(dir.path(), &cat, 1, 3).exists());
        let fresh = Ctx::new(DEFAULT_HOM_BUDGET, DEFAULT_GROUP_BUDGET, Some(dir.path().to_path_buf()));
        assert_eq!(fresh.hom(&cat, 1, 3).unwrap().keys(), a.keys());
        assert!(Ctx::new(10, 10, None).hom(&cat, 2, 4).is_err());
    }
}
