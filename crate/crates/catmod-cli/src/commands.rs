//! One function per subcommand. Each returns result rows and verdicts; the
//! envelope is added by the caller.

use catmod::bounds::bounds_table;
use catmod::category::{count_hom, CategoryId, Flavor};
use catmod::central::{central_report, m0_vanishing_degree, pbc_connectivity, relative_si_connectivity};
use catmod::certify::{run, Profile};
use catmod::cmodule::{
    derived_homology, h0, presentation_data, representable, resolve, skyscraper, stability_scan, GroupRep, Induced, ModRef, Piece,
    Tensor,
};
use catmod::groups::{double_cosets, predicted_hom_count};
use catmod::linalg::{FFMatrix, Subspace};
use catmod::tensor_bounds::{sharpness_witness, tensor_generation_check};
use catmod::{Ctx, Error, Result};
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::report::{merge_verdicts, Outcome, Verdict};

const DESCRIPTIVE: &str = "descriptive";

fn tag(mut v: Value, claim: &str) -> Value {
    if let Value::Object(m) = &mut v {
        m.insert("claim".into(), claim.into());
    }
    v
}

fn to_value(x: &impl serde::Serialize) -> Value {
    serde_json::to_value(x).expect("serializable")
}

/// A module named on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleSpec {
    /// `rep:D`, the representable `M(D)`.
    Rep(usize),
    /// `trivial:D`, induced from the trivial representation of `G_D`.
    Trivial(usize),
    /// `sky`, `Q` in degree 0.
    Skyscraper,
    /// `tensor:A,B`, `M(A) ⊗ M(B)`.
    Tensor(usize, usize),
}

impl std::str::FromStr for ModuleSpec {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<ModuleSpec, String> {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad degree {t:?} in module {s:?}"));
        match s.split_once(':') {
            None if s == "sky" => Ok(ModuleSpec::Skyscraper),
            Some(("rep", d)) => Ok(ModuleSpec::Rep(num(d)?)),
            Some(("trivial", d)) => Ok(ModuleSpec::Trivial(num(d)?)),
            Some(("tensor", ab)) => {
                let (a, b) = ab.split_once(',').ok_or_else(|| format!("tensor module needs two degrees, got {s:?}"))?;
                Ok(ModuleSpec::Tensor(num(a)?, num(b)?))
            }
            _ => Err(format!("unknown module {s:?}; expected rep:D, trivial:D, sky or tensor:A,B")),
        }
    }
}

impl std::fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ModuleSpec::Rep(d) => write!(f, "rep:{d}"),
            ModuleSpec::Trivial(d) => write!(f, "trivial:{d}"),
            ModuleSpec::Skyscraper => f.write_str("sky"),
            ModuleSpec::Tensor(a, b) => write!(f, "tensor:{a},{b}"),
        }
    }
}

impl ModuleSpec {
    pub fn build(&self, ctx: &Ctx, cat: &CategoryId, window: usize) -> Result<ModRef> {
        Ok(match self {
            ModuleSpec::Rep(d) => representable(ctx, cat, *d, window)?,
            ModuleSpec::Trivial(d) => Induced::new(ctx, cat, window, vec![Piece::Rep(GroupRep::trivial(ctx.tree(cat, *d)?, 1))])?,
            ModuleSpec::Skyscraper => skyscraper(ctx, cat, window)?,
            ModuleSpec::Tensor(a, b) => Tensor::new(representable(ctx, cat, *a, window)?, representable(ctx, cat, *b, window)?)?,
        })
    }

    fn is_induced(&self) -> bool {
        matches!(self, ModuleSpec::Rep(_) | ModuleSpec::Trivial(_))
    }
}

pub fn homcount(cfg: &RunConfig, d: usize, n: usize) -> Result<Outcome> {
    let cat = cfg.category()?;
    let count = count_hom(&cat, d, n, cfg.max_hom_budget)?;
    let predicted = predicted_hom_count(&cat, d, n);
    let pass = predicted == count.into();
    let row = json!({ "category": cat.to_string(), "d": d, "n": n, "count": count, "predicted": predicted.to_string() });
    Ok(Outcome::new(vec![tag(row, "hom-count")], vec![Verdict::new("hom-count", pass)]))
}

/// Lists the Hom set. With a cache directory the set is written, read back
/// and compared key by key.
pub fn enumerate(cfg: &RunConfig, ctx: &Ctx, d: usize, n: usize) -> Result<Outcome> {
    let cat = cfg.category()?;
    let hom = ctx.hom(&cat, d, n)?;
    let mut verdicts = Vec::new();
    if let Some(dir) = &cfg.cache_dir {
        let path = catmod::category::cache::write_cache(dir, &hom)?;
        let back = catmod::category::cache::read_cache(&path, &cat, d, n)?;
        verdicts.push(Verdict::new("cache-roundtrip", back.keys() == hom.keys()));
    }
    let rows = hom.keys().iter().enumerate().map(|(i, k)| json!({ "index": i, "key": k.to_string(), "claim": DESCRIPTIVE })).collect();
    Ok(Outcome::new(rows, verdicts))
}

pub fn double_coset_table(cfg: &RunConfig, ctx: &Ctx, n: usize, a: usize, d: usize) -> Result<Outcome> {
    let cat = cfg.category()?;
    let t = double_cosets(ctx, &cat, n, a, d)?;
    // with a = 0 the whole of G_n acts, which is transitive on Hom(k^d, k^n)
    if a == 0 && n >= d {
        let pass = t.orbit_count() == 1;
        return Ok(Outcome::new(vec![tag(t.to_json(), "hom-transitive")], vec![Verdict::new("hom-transitive", pass)]));
    }
    Ok(Outcome::new(vec![tag(t.to_json(), DESCRIPTIVE)], vec![]))
}

pub fn stability(cfg: &RunConfig, ctx: &Ctx, module: &ModuleSpec, a_max: usize) -> Result<Outcome> {
    let cat = cfg.category()?;
    let m = module.build(ctx, &cat, cfg.window)?;
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    for r in stability_scan(&m, a_max) {
        let (claim, pass) = match module {
            ModuleSpec::Rep(d) => {
                let (inj_from, claim) =
                    if cat.flavor == Flavor::VicU { (2 * d + 1 + r.a, "stability-vicu") } else { (r.a, "stability-vic-si") };
                let pass = (r.n < inj_from || r.injective) && (r.n < 2 * d + r.a || r.surjective);
                (claim, pass)
            }
            _ => (DESCRIPTIVE, true),
        };
        if claim != DESCRIPTIVE {
            checks.push((claim.to_string(), pass));
        }
        rows.push(tag(to_value(&r), claim));
    }
    Ok(Outcome::new(rows, merge_verdicts(checks)))
}

pub fn h0_dims(cfg: &RunConfig, ctx: &Ctx, module: &ModuleSpec) -> Result<Outcome> {
    let m = module.build(ctx, &cfg.category()?, cfg.window)?;
    let rows = h0(&m).dims().into_iter().enumerate().map(|(n, dim)| json!({ "n": n, "dim": dim, "claim": DESCRIPTIVE })).collect();
    Ok(Outcome::new(rows, vec![]))
}

pub fn presentation(cfg: &RunConfig, ctx: &Ctx, module: &ModuleSpec) -> Result<Outcome> {
    let m = module.build(ctx, &cfg.category()?, cfg.window)?;
    let p = presentation_data(ctx, &m)?;
    Ok(Outcome::new(vec![tag(to_value(&p), DESCRIPTIVE)], vec![]))
}

pub fn resolution(cfg: &RunConfig, ctx: &Ctx, module: &ModuleSpec) -> Result<Outcome> {
    let m = module.build(ctx, &cfg.category()?, cfg.window)?;
    let r = resolve(ctx, &m, cfg.depth)?;
    let degrees = r.generation_degrees();
    let terms = r.term_dims();
    let kernels = r.kernel_dims();
    let rows = (0..degrees.len())
        .map(|k| {
            json!({
                "k": k, "generation_degree": degrees[k].to_string(), "term_dims": terms[k],
                "kernel_dims": kernels[k], "claim": DESCRIPTIVE,
            })
        })
        .collect();
    Ok(Outcome::new(rows, vec![]))
}

pub fn derived(cfg: &RunConfig, ctx: &Ctx, module: &ModuleSpec, i: usize) -> Result<Outcome> {
    let m = module.build(ctx, &cfg.category()?, cfg.window)?;
    let dims = derived_homology(ctx, &m, i)?;
    let claim = if module.is_induced() && i > 0 { "induced-acyclic" } else { DESCRIPTIVE };
    let verdicts = if claim == DESCRIPTIVE { vec![] } else { vec![Verdict::new(claim, dims.iter().all(|&x| x == 0))] };
    let rows = dims.into_iter().enumerate().map(|(n, dim)| json!({ "i": i, "n": n, "dim": dim, "claim": claim })).collect();
    Ok(Outcome::new(rows, verdicts))
}

pub fn central(cfg: &RunConfig, ctx: &Ctx, module: &ModuleSpec, i: isize, n: usize) -> Result<Outcome> {
    let cat = cfg.category()?;
    let m = module.build(ctx, &cat, n)?;
    let (bound, claim) = match module {
        ModuleSpec::Rep(0) => (Some(m0_vanishing_degree(&cat, i)), "m0-central-vanishing"),
        _ => (None, DESCRIPTIVE),
    };
    let r = central_report(ctx, &m, &module.to_string(), i, n, bound)?;
    let verdicts = if claim == DESCRIPTIVE { vec![] } else { vec![Verdict::new(claim, r.pass)] };
    Ok(Outcome::new(vec![tag(to_value(&r), claim)], verdicts))
}

/// `"1,0,0;0,1,0"` as spanning rows, `""` or `"0"` for zero, `"full"` for everything.
pub fn parse_subspace(p: u8, ambient: usize, s: &str) -> Result<Subspace> {
    let s = s.trim();
    match s {
        "" | "0" => return Ok(Subspace::zero(p, ambient)),
        "full" => return Ok(Subspace::full(p, ambient)),
        _ => {}
    }
    let rows = s
        .split(';')
        .map(|r| {
            r.split(',')
                .map(|x| x.trim().parse::<u8>().map_err(|_| Error::Invalid(format!("bad entry {x:?} in subspace {s:?}"))))
                .collect::<Result<Vec<u8>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if rows.iter().any(|r| r.len() != ambient) {
        return Err(Error::Invalid(format!("subspace {s:?} needs rows of length {ambient}")));
    }
    Subspace::canon(&FFMatrix::from_rows(p, ambient, &rows)?, ambient)
}

pub fn pbc(cfg: &RunConfig, dim_v: usize, u: &str, w: &str) -> Result<Outcome> {
    let (u, w) = (parse_subspace(cfg.p, dim_v, u)?, parse_subspace(cfg.p, dim_v, w)?);
    let r = pbc_connectivity(cfg.p, dim_v, &u, &w, cfg.max_hom_budget)?;
    let pass = r.pass;
    Ok(Outcome::new(vec![tag(to_value(&r), "pbc-connectivity")], vec![Verdict::new("pbc-connectivity", pass)]))
}

pub fn relative_si(cfg: &RunConfig, n: usize, w: &str) -> Result<Outcome> {
    let w = parse_subspace(cfg.p, 2 * n, w)?;
    let r = relative_si_connectivity(cfg.p, n, &w, cfg.max_hom_budget)?;
    let pass = r.pass;
    Ok(Outcome::new(vec![tag(to_value(&r), "relative-si-connectivity")], vec![Verdict::new("relative-si-connectivity", pass)]))
}

pub fn tensor_gen(cfg: &RunConfig, ctx: &Ctx, a: usize, b: usize) -> Result<Outcome> {
    let r = tensor_generation_check(ctx, &cfg.category()?, a, b, cfg.window)?;
    let pass = r.pass;
    Ok(Outcome::new(vec![tag(to_value(&r), "tensor-generation")], vec![Verdict::new("tensor-generation", pass)]))
}

pub fn sharpness(cfg: &RunConfig, ctx: &Ctx, a: usize, b: usize) -> Result<Outcome> {
    let r = sharpness_witness(ctx, &cfg.category()?, a, b)?;
    let pass = !r.in_image;
    Ok(Outcome::new(vec![tag(to_value(&r), "tensor-sharpness")], vec![Verdict::new("tensor-sharpness", pass)]))
}

/// Rows of the bounds table, filtered. Each row's claim is its formula id.
pub fn bounds(family: Option<&str>, i: Option<usize>, d: Option<usize>, r: Option<usize>, i_max: usize, dr_max: usize) -> Result<Outcome> {
    let i_top = i.map_or(i_max, |x| x.max(i_max));
    let dr_top = d.into_iter().chain(r).fold(dr_max, usize::max);
    let rows: Vec<Value> = bounds_table(i_top, dr_top)
        .into_iter()
        .filter(|row| family.is_none_or(|f| row.family == f))
        .filter(|row| i.is_none_or(|x| row.i == x))
        .filter(|row| d.is_none_or(|x| row.d.is_none_or(|y| y == x)))
        .filter(|row| r.is_none_or(|x| row.r.is_none_or(|y| y == x)))
        .map(|row| {
            let id = row.formula_id.clone();
            tag(to_value(&row), &id)
        })
        .collect();
    if rows.is_empty() {
        return Err(Error::Invalid(format!("no bounds match family {family:?}")));
    }
    Ok(Outcome { results: rows, verdicts: vec![], columns: Some(vec!["family", "i", "d", "r", "bound", "formula_id"]) })
}

pub fn certify_all(ctx: &Ctx, profile: Profile, timing: bool) -> Result<Outcome> {
    let results = run(ctx, profile);
    let verdicts = results.iter().map(|c| Verdict::new(c.claim_id, c.pass)).collect();
    let rows = results
        .into_iter()
        .map(|mut c| {
            if !timing {
                c.elapsed_ms = 0;
            }
            let claim = c.claim_id;
            tag(to_value(&c), claim)
        })
        .collect();
    Ok(Outcome::new(rows, verdicts))
}
