//! Walks through the submodule calculus on Z/2 + Z/4 over Z/8: scalar images
//! and kernels, cyclic submodules, the lattice, quotients and summands.

use std::sync::Arc;

use modreg::limits::Limits;
use modreg::{build_module, build_ring, ModuleDescription, RingDescription};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let limits = Limits::default();
    let r = Arc::new(build_ring(&RingDescription::zmod(8))?);
    let m = build_module(
        &r,
        &ModuleDescription::ActionMatrices {
            invariant_factors: vec![2, 4],
            action: vec![vec![vec![1, 0], vec![0, 1]]],
        },
    )?;
    let show = |xs: Vec<usize>| xs.into_iter().map(|x| m.format_element(x)).collect::<Vec<_>>().join(" ");
    println!("M = Z/2 + Z/4 over Z/8, |M| = {}", m.order());

    for a in [2, 4] {
        println!("  Ma for a={a}: {}", show(m.scalar_image(a)?.elements()));
        println!("  ker a for a={a}: {}", show(m.scalar_kernel(a)?.elements()));
    }

    let x = m.from_coeffs(&[1, 1])?;
    let c = m.cyclic_submodule(x);
    println!("  xR for x={}: {}", m.format_element(x), show(c.elements()));

    let lattice = m.all_submodules(&limits)?;
    println!("  {} submodules", lattice.len());
    for n in &lattice {
        let summand = m.is_direct_summand(n, &limits)?;
        let pure = m.is_rd_pure(n)?;
        let q = m.quotient(n, &limits)?;
        println!(
            "    N = {{{}}}  summand: {}  rd-pure: {}  M/N invariants {:?}",
            show(n.elements()),
            summand.holds,
            pure.holds,
            q.module.invariant_factors()
        );
    }
    Ok(())
}
