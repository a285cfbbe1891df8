//! Builds a few small rings and prints their units, idempotents, annihilators
//! and ring-level regularity verdicts.

use std::sync::Arc;

use modreg::limits::Limits;
use modreg::props::evaluate_ring_property;
use modreg::{build_ring, RingDescription, RingProp};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let limits = Limits::default();
    let rings = [
        RingDescription::zmod(4),
        RingDescription::zmod(6),
        RingDescription::poly_quotient(2, vec![1, 1, 1]),
        RingDescription::product(vec![RingDescription::zmod(2), RingDescription::zmod(4)]),
        RingDescription::upper_triangular(2, 2),
    ];
    for d in &rings {
        let r = Arc::new(build_ring(d)?);
        let fmt = |xs: Vec<usize>| xs.into_iter().map(|x| r.format_element(x)).collect::<Vec<_>>().join(" ");
        println!("{}  (order {}, commutative: {})", d.label(), r.order(), r.is_commutative());
        println!("  units:       {}", fmt(r.units()));
        println!("  idempotents: {}", fmt(r.idempotents()));
        for a in r.elements().take(4) {
            let (left, right) = r.annihilators(a);
            println!(
                "  ann({}): left {} elements, right {} elements",
                r.format_element(a),
                left.len(),
                right.elements.len()
            );
        }
        for p in RingProp::ALL {
            let v = evaluate_ring_property(&r, p, &limits)?;
            match &v.witness {
                Some(w) => println!("  {p} = false  witness: {}", w.render(&r, None)),
                None => println!("  {p} = true"),
            }
        }
    }
    Ok(())
}
