//! Run configuration: defaults, then an optional `key = value` file, then flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use catmod::category::{parse_units, CategoryId, Flavor};
use catmod::groups::DEFAULT_GROUP_BUDGET;
use catmod::category::DEFAULT_HOM_BUDGET;
use catmod::{Error, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

/// Settings shared by every subcommand.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub cat: String,
    pub p: u8,
    pub units: Option<String>,
    pub window: usize,
    pub depth: usize,
    pub cache_dir: Option<PathBuf>,
    pub max_hom_budget: u64,
    pub max_group_budget: u64,
    pub workers: usize,
    pub output_format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig {
            cat: "vic".into(),
            p: 2,
            units: None,
            window: 4,
            depth: 1,
            cache_dir: None,
            max_hom_budget: DEFAULT_HOM_BUDGET,
            max_group_budget: DEFAULT_GROUP_BUDGET,
            workers: 1,
            output_format: OutputFormat::Json,
        }
    }
}

/// Raw settings before validation; flags and the config file both produce one.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub cat: Option<String>,
    pub p: Option<u8>,
    pub units: Option<String>,
    pub window: Option<usize>,
    pub depth: Option<usize>,
    pub cache_dir: Option<PathBuf>,
    pub budget_hom: Option<u64>,
    pub budget_group: Option<u64>,
    pub workers: Option<usize>,
    pub out: Option<String>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

fn parse_field<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| bad(format!("config: bad value {value:?} for {key}")))
}

/// Parses `key = value` lines. Blank lines and `#` comments are skipped.
pub fn parse_config_file(text: &str) -> Result<Overrides> {
    let mut o = Overrides::default();
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| bad(format!("config line {}: expected key = value", no + 1)))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "cat" => o.cat = Some(value.into()),
            "p" => o.p = Some(parse_field(key, value)?),
            "units" => o.units = Some(value.into()),
            "window" => o.window = Some(parse_field(key, value)?),
            "depth" => o.depth = Some(parse_field(key, value)?),
            "cache_dir" => o.cache_dir = Some(value.into()),
            "budget_hom" => o.budget_hom = Some(parse_field(key, value)?),
            "budget_group" => o.budget_group = Some(parse_field(key, value)?),
            "workers" => o.workers = Some(parse_field(key, value)?),
            "out" => o.out = Some(value.into()),
            _ => return Err(bad(format!("config line {}: unknown key {key:?}", no + 1))),
        }
    }
    Ok(o)
}

pub fn load_config_file(path: &Path) -> Result<Overrides> {
    let text = std::fs::read_to_string(path).map_err(|e| bad(format!("config {}: {e}", path.display())))?;
    parse_config_file(&text)
}

impl RunConfig {
    /// Applies `file` then `flags` over the defaults and validates the result.
    pub fn resolve(file: Overrides, flags: Overrides) -> Result<RunConfig> {
        let mut c = RunConfig::default();
        for o in [file, flags] {
            if let Some(v) = o.cat {
                c.cat = v;
            }
            if let Some(v) = o.p {
                c.p = v;
            }
            if o.units.is_some() {
                c.units = o.units;
            }
            if let Some(v) = o.window {
                c.window = v;
            }
            if let Some(v) = o.depth {
                c.depth = v;
            }
            if o.cache_dir.is_some() {
                c.cache_dir = o.cache_dir;
            }
            if let Some(v) = o.budget_hom {
                c.max_hom_budget = v;
            }
            if let Some(v) = o.budget_group {
                c.max_group_budget = v;
            }
            if let Some(v) = o.workers {
                c.workers = v;
            }
            if let Some(v) = o.out {
                c.output_format = match v.as_str() {
                    "json" => OutputFormat::Json,
                    "csv" => OutputFormat::Csv,
                    _ => return Err(bad(format!("unknown output format {v:?}; expected json or csv"))),
                };
            }
        }
        if c.max_hom_budget == 0 || c.max_group_budget == 0 {
            return Err(bad("budgets must be positive"));
        }
        if c.workers == 0 {
            return Err(bad("workers must be at least 1"));
        }
        c.category()?;
        Ok(c)
    }

    /// The category named by `cat`, `p` and `units`. The unit list is checked
    /// for closure here, so a bad list fails before any work starts.
    pub fn category(&self) -> Result<CategoryId> {
        let flavor = match self.cat.as_str() {
            "vic" => Flavor::Vic,
            "vicu" => Flavor::VicU,
            "si" => Flavor::Si,
            other => return Err(bad(format!("unknown category {other:?}; expected vic, vicu or si"))),
        };
        let units = self.units.as_deref().map(parse_units).transpose()?;
        if flavor != Flavor::VicU && units.is_some() {
            return Err(bad("--units only applies to --cat vicu"));
        }
        CategoryId::new(flavor, self.p, units.as_deref())
    }

    pub fn ctx(&self) -> catmod::Ctx {
        catmod::Ctx::new(self.max_hom_budget, self.max_group_budget, self.cache_dir.clone())
    }

    /// SHA-256 over the configuration, command and parameters, in sorted-key JSON.
    /// Workers and the output format are left out: they do not change results.
    pub fn hash(&self, command: &str, params: &serde_json::Value) -> String {
        let mut fields: BTreeMap<&str, serde_json::Value> = BTreeMap::new();
        fields.insert("cat", self.cat.clone().into());
        fields.insert("p", self.p.into());
        fields.insert("units", self.units.clone().into());
        fields.insert("window", self.window.into());
        fields.insert("depth", self.depth.into());
        fields.insert("max_hom_budget", self.max_hom_budget.into());
        fields.insert("max_group_budget", self.max_group_budget.into());
        fields.insert("command", command.into());
        fields.insert("params", params.clone());
        let text = serde_json::to_string(&fields).expect("serializable");
        hex::encode(Sha256::digest(text.as_bytes()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let file = parse_config_file("# comment\ncat = si\np = 3\nwindow = 5\n\nworkers = 2").unwrap();
        let flags = Overrides { p: Some(2), ..Overrides::default() };
        let c = RunConfig::resolve(file, flags).unwrap();
        assert_eq!((c.cat.as_str(), c.p, c.window, c.workers), ("si", 2, 5, 2));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_config_file("cat si").is_err());
        assert!(parse_config_file("colour = red").is_err());
        assert!(parse_config_file("p = two").is_err());
        let units = Overrides { cat: Some("vicu".into()), p: Some(5), units: Some("1,2".into()), ..Overrides::default() };
        assert!(RunConfig::resolve(Overrides::default(), units).is_err());
        let workers = Overrides { workers: Some(0), ..Overrides::default() };
        assert!(RunConfig::resolve(Overrides::default(), workers).is_err());
    }

    #[test]
    fn hash_ignores_workers() {
        let a = RunConfig::default();
        let b = RunConfig { workers: 4, ..RunConfig::default() };
        let params = serde_json::json!({ "d": 1 });
        assert_eq!(a.hash("homcount", &params), b.hash("homcount", &params));
        assert_ne!(a.hash("homcount", &params), a.hash("enumerate", &params));
    }
}
