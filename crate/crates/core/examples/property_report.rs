//! Prints every module property, with witnesses, for a handful of modules.

use std::sync::Arc;

use modreg::limits::Limits;
use modreg::props::ModuleAnalysis;
use modreg::{build_module, build_ring, Error, ModProp, ModuleDescription, RingDescription};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        (RingDescription::zmod(4), ModuleDescription::Regular),
        (RingDescription::zmod(6), ModuleDescription::Regular),
        (RingDescription::zmod(2), ModuleDescription::DirectSum { summands: vec![ModuleDescription::Regular; 2] }),
        (RingDescription::upper_triangular(2, 2), ModuleDescription::Regular),
    ];
    for (rd, md) in &cases {
        let r = Arc::new(build_ring(rd)?);
        let m = build_module(&r, md)?;
        let ctx = ModuleAnalysis::new(m, Limits::default());
        println!("{} :: {}", rd.label(), md.label());
        for p in ModProp::ALL {
            match ctx.evaluate(p) {
                Ok(v) if v.holds => println!("  {p} = true"),
                Ok(v) => {
                    let w = v.witness.map(|w| w.render(&r, Some(ctx.module()))).unwrap_or_default();
                    println!("  {p} = false  witness: {w}");
                }
                Err(Error::NotCommutative) => println!("  {p} = n/a"),
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(())
}
