//! Checks every registered theorem on one instance and shows clause values.
//!
//! Usage: `cargo run --example theorem_check [n]` checks the regular module
//! of Z/n (default 12).

use modreg::limits::Limits;
use modreg::theorems::{verify_theorem, Instance, THEOREMS};
use modreg::{ModuleDescription, RingDescription};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(12);
    let inst = Instance::with_module(&RingDescription::zmod(n), &ModuleDescription::Regular, &Limits::default())?;
    for t in &THEOREMS {
        let v = verify_theorem(t.id, &inst)?;
        print!("{:<24} {}", v.theorem, v.outcome.tag());
        if let Some(r) = v.outcome.reason() {
            print!(" ({r})");
        }
        println!();
        for c in &v.clauses {
            println!("    [{}] {}", if c.value { 'T' } else { 'F' }, c.label);
        }
    }
    Ok(())
}
