//! `catmod`: runs one computation and prints a report.
//!
//! Exit status: 0 when every verdict passes, 1 on invalid input, 2 when a
//! budget is exceeded, 3 when a certification fails.

mod commands;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use catmod::certify::Profile;
use catmod::{Error, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use commands::ModuleSpec;
use config::{load_config_file, OutputFormat, Overrides, RunConfig};
use report::Report;

#[derive(Parser, Debug)]
#[command(name = "catmod", version, about = "Exact computations with VIC, VIC^U and SI modules")]
struct Cli {
    #[command(flatten)]
    global: GlobalFlags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalFlags {
    /// Category: vic, vicu or si.
    #[arg(long, global = true)]
    cat: Option<String>,
    /// Prime field size.
    #[arg(long, global = true)]
    p: Option<u8>,
    /// Unit subgroup for vicu, as residues: "1,4".
    #[arg(long, global = true)]
    units: Option<String>,
    /// Top degree of the window.
    #[arg(long, global = true)]
    window: Option<usize>,
    /// Resolution depth.
    #[arg(long, global = true)]
    depth: Option<usize>,
    /// Output format: json or csv.
    #[arg(long, global = true)]
    out: Option<String>,
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    budget_hom: Option<u64>,
    #[arg(long, global = true)]
    budget_group: Option<u64>,
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// File of `key = value` lines; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Report zero for every timing field, so reports compare byte for byte.
    #[arg(long, global = true)]
    no_timing: bool,
}

impl GlobalFlags {
    fn overrides(&self) -> Overrides {
        Overrides {
            cat: self.cat.clone(),
            p: self.p,
            units: self.units.clone(),
            window: self.window,
            depth: self.depth,
            cache_dir: self.cache_dir.clone(),
            budget_hom: self.budget_hom,
            budget_group: self.budget_group,
            workers: self.workers,
            out: self.out.clone(),
        }
    }
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(untagged)]
enum Command {
    /// |Hom(k^d, k^n)| by enumeration, checked against |G_n| / |G_{n-d}|.
    Homcount {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
    },
    /// The sorted keys of Hom(k^d, k^n); round-trips them through --cache-dir if given.
    Enumerate {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
    },
    /// G_{n-a}-orbits on Hom(k^d, k^n).
    DoubleCosets {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        d: usize,
    },
    /// Injectivity and surjectivity of coinvariant transitions.
    StabilityScan {
        #[arg(long)]
        module: ModuleArg,
        #[arg(long, default_value_t = 1)]
        a_max: usize,
    },
    /// Dimensions of H0 over the window.
    H0 {
        #[arg(long)]
        module: ModuleArg,
    },
    /// Generation and relation degrees.
    Presentation {
        #[arg(long)]
        module: ModuleArg,
    },
    /// Induced resolution to --depth.
    Resolve {
        #[arg(long)]
        module: ModuleArg,
    },
    /// Dimensions of the derived H_i over the window.
    Derived {
        #[arg(long)]
        module: ModuleArg,
        #[arg(long)]
        i: usize,
    },
    /// Central stability homology HH_i(A)_n.
    CentralHomology {
        #[arg(long)]
        module: ModuleArg,
        #[arg(long, allow_hyphen_values = true)]
        i: isize,
        #[arg(long)]
        n: usize,
    },
    /// Connectivity of the complex of complemented injections PBC(V, U, W).
    Pbc {
        #[arg(long)]
        dim_v: usize,
        /// Spanning rows "1,0,0;0,1,0", "full" or "0".
        #[arg(long, default_value = "full")]
        u: String,
        #[arg(long, default_value = "0")]
        w: String,
    },
    /// Connectivity of the SI complex relative to W.
    RelativeSi {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "0")]
        w: String,
    },
    /// Generation degree of M(a) ⊗ M(b) against its bound.
    TensorGen {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
    },
    /// The explicit element of M(a) ⊗ M(b) outside the image from below.
    Sharpness {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
    },
    /// Closed-form degree bounds, filtered by family, index and d, r.
    Bounds {
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, default_value_t = 3)]
        i_max: usize,
        #[arg(long, default_value_t = 3)]
        dr_max: usize,
    },
    /// The acceptance suite.
    CertifyAll {
        #[arg(long, default_value = "desk")]
        profile: String,
    },
}

/// Keeps the module's command-line spelling for the report parameters.
#[derive(Clone, Debug, Serialize)]
#[serde(into = "String")]
struct ModuleArg(ModuleSpec);

impl std::str::FromStr for ModuleArg {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<ModuleArg, String> {
        s.parse().map(ModuleArg)
    }
}

impl From<ModuleArg> for String {
    fn from(m: ModuleArg) -> String {
        m.0.to_string()
    }
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Homcount { .. } => "homcount",
            Command::Enumerate { .. } => "enumerate",
            Command::DoubleCosets { .. } => "double-cosets",
            Command::StabilityScan { .. } => "stability-scan",
            Command::H0 { .. } => "h0",
            Command::Presentation { .. } => "presentation",
            Command::Resolve { .. } => "resolve",
            Command::Derived { .. } => "derived",
            Command::CentralHomology { .. } => "central-homology",
            Command::Pbc { .. } => "pbc",
            Command::RelativeSi { .. } => "relative-si",
            Command::TensorGen { .. } => "tensor-gen",
            Command::Sharpness { .. } => "sharpness",
            Command::Bounds { .. } => "bounds",
            Command::CertifyAll { .. } => "certify-all",
        }
    }
}

fn dispatch(cmd: &Command, cfg: &RunConfig, timing: bool) -> Result<report::Outcome> {
    let ctx = cfg.ctx();
    match cmd {
        Command::Homcount { d, n } => commands::homcount(cfg, *d, *n),
        Command::Enumerate { d, n } => commands::enumerate(cfg, &ctx, *d, *n),
        Command::DoubleCosets { n, a, d } => commands::double_coset_table(cfg, &ctx, *n, *a, *d),
        Command::StabilityScan { module, a_max } => commands::stability(cfg, &ctx, &module.0, *a_max),
        Command::H0 { module } => commands::h0_dims(cfg, &ctx, &module.0),
        Command::Presentation { module } => commands::presentation(cfg, &ctx, &module.0),
        Command::Resolve { module } => commands::resolution(cfg, &ctx, &module.0),
        Command::Derived { module, i } => commands::derived(cfg, &ctx, &module.0, *i),
        Command::CentralHomology { module, i, n } => commands::central(cfg, &ctx, &module.0, *i, *n),
        Command::Pbc { dim_v, u, w } => commands::pbc(cfg, *dim_v, u, w),
        Command::RelativeSi { n, w } => commands::relative_si(cfg, *n, w),
        Command::TensorGen { a, b } => commands::tensor_gen(cfg, &ctx, *a, *b),
        Command::Sharpness { a, b } => commands::sharpness(cfg, &ctx, *a, *b),
        Command::Bounds { family, i, d, r, i_max, dr_max } => commands::bounds(family.as_deref(), *i, *d, *r, *i_max, *dr_max),
        Command::CertifyAll { profile } => {
            let profile: Profile = profile.parse().map_err(Error::Invalid)?;
            commands::certify_all(&ctx, profile, timing)
        }
    }
}

fn exit_for(e: &Error) -> ExitCode {
    match e {
        Error::Budget { .. } => ExitCode::from(2),
        _ => ExitCode::from(1),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let start = Instant::now();
    let file = match cli.global.config.as_deref().map(load_config_file).transpose() {
        Ok(f) => f.unwrap_or_default(),
        Err(e) => {
            eprintln!("error: {e}");
            return exit_for(&e);
        }
    };
    let cfg = match RunConfig::resolve(file, cli.global.overrides()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_for(&e);
        }
    };
    // a second initialization only happens in tests that call main twice
    let _ = rayon::ThreadPoolBuilder::new().num_threads(cfg.workers).build_global();
    let timing = !cli.global.no_timing;
    let outcome = match dispatch(&cli.command, &cfg, timing) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_for(&e);
        }
    };
    let params = serde_json::to_value(&cli.command).expect("serializable");
    let report = Report {
        version: env!("CARGO_PKG_VERSION"),
        command: cli.command.name().into(),
        config_hash: cfg.hash(cli.command.name(), &params),
        params,
        results: outcome.results,
        verdicts: outcome.verdicts,
        elapsed_ms: if timing { start.elapsed().as_millis() as u64 } else { 0 },
    };
    match cfg.output_format {
        OutputFormat::Json => print!("{}", report.to_json()),
        OutputFormat::Csv => print!("{}", report.to_csv(outcome.columns.as_deref())),
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    }
}
