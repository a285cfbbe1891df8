//! Sweeps the default catalog against every registered theorem and prints
//! per-theorem outcome counts plus any refutations.
//!
//! Usage: `cargo run --release --example catalog_sweep [jobs] [THEOREM-ID ...]`

use std::time::Instant;

use modreg::limits::Limits;
use modreg::theorems::{generate_catalog, sweep, CatalogSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let jobs: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(4);
    let ids: Vec<String> = args.collect();
    let ids: Vec<&str> = ids.iter().map(String::as_str).collect();

    let limits = Limits::default();
    let start = Instant::now();
    let catalog = generate_catalog(&CatalogSpec::default_catalog(), &limits)?;
    println!(
        "catalog: {} rings, {} modules ({:.2?})",
        catalog.rings.len(),
        catalog.module_count(),
        start.elapsed()
    );

    let report = sweep(&catalog, &ids, jobs, &limits)?;
    println!("{:<24} {:>5} {:>5} {:>7} {:>6}", "theorem", "pass", "fail", "skipped", "limit");
    for (id, s) in report.summary() {
        println!("{id:<24} {:>5} {:>5} {:>7} {:>6}", s.pass, s.fail, s.skipped, s.resource_limit);
    }
    for f in report.failures() {
        println!(
            "FAIL {} on {}: {}",
            f.verdict.theorem,
            f.verdict.instance,
            f.verdict.counterexample.as_deref().unwrap_or("")
        );
    }
    let t = report.totals();
    println!(
        "total: {} pass, {} fail, {} skipped, {} limit in {:.2?}",
        t.pass,
        t.fail,
        t.skipped,
        t.resource_limit,
        start.elapsed()
    );
    Ok(())
}
