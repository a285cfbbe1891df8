//! Splits Z/12 into local factors and localizes a module along them.

use std::sync::Arc;

use modreg::limits::Limits;
use modreg::props::ModuleAnalysis;
use modreg::{build_module, build_ring, ModProp, ModuleDescription, RingDescription};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let limits = Limits::default();
    let r = Arc::new(build_ring(&RingDescription::zmod(12))?);
    let dec = r.local_decomposition(&limits)?;
    for (e, f) in dec.idempotents.iter().zip(&dec.factors) {
        println!("e = {}: local factor of order {}", r.format_element(*e), f.order());
    }
    let m = build_module(
        &r,
        &ModuleDescription::DirectSum {
            summands: vec![
                ModuleDescription::Regular,
                ModuleDescription::CyclicQuotient { ideal_generators: vec![vec![6]] },
            ],
        },
    )?;
    println!("M = Z/12 + Z/6, |M| = {}", m.order());
    for (i, local) in m.localize(&dec, &limits)?.into_iter().enumerate() {
        let ctx = ModuleAnalysis::new(local, limits);
        println!(
            "  M_{i}: order {}, invariants {:?}, reduced {}, f_regular {}",
            ctx.module().order(),
            ctx.module().invariant_factors(),
            ctx.holds(ModProp::Reduced)?,
            ctx.holds(ModProp::FRegular)?
        );
    }
    Ok(())
}
