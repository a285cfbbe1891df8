//! Computes End(M) for a few modules and inspects it as a ring.

use std::sync::Arc;

use modreg::hom::{end_ring, hom_module};
use modreg::limits::Limits;
use modreg::props::evaluate_ring_property;
use modreg::{build_module, build_ring, ModuleDescription, RingDescription, RingProp};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let limits = Limits::default();
    let z8 = Arc::new(build_ring(&RingDescription::zmod(8))?);
    let z2 = Arc::new(build_ring(&RingDescription::zmod(2))?);
    let cases = [
        (
            "Z/2 + Z/4 over Z/8",
            build_module(
                &z8,
                &ModuleDescription::ActionMatrices { invariant_factors: vec![2, 4], action: vec![vec![vec![1, 0], vec![0, 1]]] },
            )?,
        ),
        ("Z/8 over itself", build_module(&z8, &ModuleDescription::Regular)?),
        (
            "(Z/2)^2 over Z/2",
            build_module(&z2, &ModuleDescription::DirectSum { summands: vec![ModuleDescription::Regular; 2] })?,
        ),
    ];
    for (name, m) in &cases {
        let homs = hom_module(m, m, &limits)?;
        let s = end_ring(m, &limits)?;
        let sr = Arc::new(s.ring().clone());
        println!("{name}: {} endomorphisms, End commutative: {}", homs.len(), sr.is_commutative());
        for p in [RingProp::Reduced, RingProp::Regular, RingProp::MorphicRight] {
            println!("  End(M) {p} = {}", evaluate_ring_property(&sr, p, &limits)?.holds);
        }
        for (i, h) in s.homs().iter().enumerate().take(3) {
            println!("  element {i}: matrix {:?}, kernel size {}, image size {}", h.matrix(), h.kernel().len(), h.image().len());
        }
    }
    Ok(())
}
