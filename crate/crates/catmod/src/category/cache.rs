//! On-disk Hom caches: one header line, then one key per line in
//! increasing order.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use super::enumerate::HomSet;
use super::id::CategoryId;
use super::morphism::{CatMorphism, MorphismKey};
use crate::error::{Error, Result};

pub const CACHE_MAGIC: &str = "catmod-hom v1";

pub fn cache_path(dir: &Path, cat: &CategoryId, d: usize, n: usize) -> PathBuf {
    let units = cat.units_label().replace(',', "_");
    dir.join(format!("hom-{}-p{}-u{}-d{}-n{}.txt", cat.flavor.name(), cat.p, units, d, n))
}

pub fn header(cat: &CategoryId, d: usize, n: usize, count: usize) -> String {
    format!("{CACHE_MAGIC} {} {} {} {d} {n} {count}", cat.flavor.name(), cat.p, cat.units_label())
}

/// Writes through a temporary file and a rename, so readers never see a partial cache.
pub fn write_cache(dir: &Path, hom: &HomSet) -> Result<PathBuf> {
    let io = |e: std::io::Error| Error::Cache(format!("{}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io)?;
    let path = cache_path(dir, &hom.cat, hom.d, hom.n);
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    {
        let mut f = std::io::BufWriter::new(fs::File::create(&tmp).map_err(io)?);
        writeln!(f, "{}", header(&hom.cat, hom.d, hom.n, hom.len())).map_err(io)?;
        for k in hom.keys() {
            writeln!(f, "{k}").map_err(io)?;
        }
        f.flush().map_err(io)?;
    }
    fs::rename(&tmp, &path).map_err(io)?;
    Ok(path)
}

/// Reads and validates a cache file: header fields, key count, key order
/// and that every key decodes to a morphism of the right shape.
pub fn read_cache(path: &Path, cat: &CategoryId, d: usize, n: usize) -> Result<HomSet> {
    let text = fs::read_to_string(path).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
    let bad = |msg: String| Error::Cache(format!("{}: {msg}", path.display()));
    let mut lines = text.lines();
    let head = lines.next().ok_or_else(|| bad("empty file".into()))?;
    let fields: Vec<&str> = head.split_whitespace().collect();
    if fields.len() != 8 || format!("{} {}", fields[0], fields[1]) != CACHE_MAGIC {
        return Err(bad(format!("bad header {head:?}")));
    }
    let count: usize = fields[7].parse().map_err(|_| bad(format!("bad count {:?}", fields[7])))?;
    let expected = header(cat, d, n, count);
    if head != expected {
        return Err(bad(format!("header {head:?} does not match {expected:?}")));
    }
    let mut pairs: Vec<(MorphismKey, CatMorphism)> = Vec::with_capacity(count);
    for line in lines {
        let key = MorphismKey::parse(line.trim()).ok_or_else(|| bad(format!("bad key {line:?}")))?;
        if let Some((prev, _)) = pairs.last() {
            if *prev >= key {
                return Err(bad(format!("keys out of order at {line:?}")));
            }
        }
        let m = CatMorphism::from_key(cat, d, n, &key).map_err(|e| bad(e.to_string()))?;
        pairs.push((key, m));
    }
    if pairs.len() != count {
        return Err(bad(format!("header promises {count} keys, found {}", pairs.len())));
    }
    Ok(HomSet::from_sorted(cat.clone(), d, n, pairs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::enumerate::{enumerate_hom_set, DEFAULT_HOM_BUDGET};

    #[test]
    fn round_trip_and_tamper() {
        let dir = tempfile::tempdir().unwrap();
        let cat = CategoryId::vic(2).unwrap();
        let hs = enumerate_hom_set(&cat, 1, 3, DEFAULT_HOM_BUDGET).unwrap();
        let path = write_cache(dir.path(), &hs).unwrap();
        let back = read_cache(&path, &cat, 1, 3).unwrap();
        assert_eq!(back.keys(), hs.keys());
        assert_eq!(back.morphisms(), hs.morphisms());

        let text = fs::read_to_string(&path).unwrap();
        let tampered = text.replacen(" 28\n", " 27\n", 1);
        fs::write(&path, tampered).unwrap();
        assert!(matches!(read_cache(&path, &cat, 1, 3), Err(Error::Cache(_))));

        let mut lines: Vec<&str> = text.lines().collect();
        lines.swap(1, 2);
        fs::write(&path, lines.join("\n")).unwrap();
        assert!(read_cache(&path, &cat, 1, 3).is_err());
    }

    #[test]
    fn empty_hom_set() {
        let dir = tempfile::tempdir().unwrap();
        let cat = CategoryId::si(2).unwrap();
        let hs = enumerate_hom_set(&cat, 2, 1, DEFAULT_HOM_BUDGET).unwrap();
        let path = write_cache(dir.path(), &hs).unwrap();
        assert_eq!(read_cache(&path, &cat, 2, 1).unwrap().len(), 0);
        assert!(read_cache(&path, &cat, 2, 2).is_err());
    }
}
