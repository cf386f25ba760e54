//! Runs every acceptance criterion and prints one verdict line each.
//! Built with `harness = false` so the lines show without `--nocapture`.
//! Non-flag arguments filter criteria by name substring.

use std::process::ExitCode;

use catmod::certify::{run_criterion, CRITERIA};
use catmod::Ctx;

fn main() -> ExitCode {
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let ctx = Ctx::default();
    let mut failed = 0;
    let mut ran = 0;
    for (k, name) in CRITERIA {
        if !filters.is_empty() && !filters.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let r = run_criterion(&ctx, k);
        ran += 1;
        println!("criterion {k:>2} {name:<26} {} ({} ms)", if r.pass { "PASS" } else { "FAIL" }, r.elapsed_ms);
        if !r.pass {
            failed += 1;
            println!("{}", serde_json::to_string_pretty(&r.details).expect("serializable"));
        }
    }
    println!("acceptance: {} of {ran} criteria passed", ran - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
