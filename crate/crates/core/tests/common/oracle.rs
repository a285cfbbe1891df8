//! Side-by-side comparison of the library against the naive evaluator.

use std::sync::Arc;

use modreg::hom::end_ring;
use modreg::limits::Limits;
use modreg::props::{evaluate_ring_property, ModuleAnalysis};
use modreg::{FiniteModule, FiniteRing, ModProp, RingProp};

use super::naive::{NModule, NRing};

/// Module instances within the oracle bounds: `|M| <= 16`, `|R| <= 8`.
pub fn in_bounds(m: &FiniteModule) -> bool {
    m.order() <= 16 && m.ring().order() <= 8
}

fn record(out: &mut Vec<String>, what: &str, lib: impl std::fmt::Debug, naive: impl std::fmt::Debug) {
    let l = format!("{lib:?}");
    let n = format!("{naive:?}");
    if l != n {
        out.push(format!("{what}: library {l}, naive {n}"));
    }
}

/// Ring-level disagreements.
pub fn compare_ring(r: &Arc<FiniteRing>) -> Vec<String> {
    let n = NRing::from_ring(r);
    let lim = Limits::default();
    let holds = |p| evaluate_ring_property(r, p, &lim).unwrap().holds;
    let mut out = Vec::new();
    record(&mut out, "ring regular", holds(RingProp::Regular), n.is_regular());
    record(&mut out, "ring strongly_regular", holds(RingProp::StronglyRegular), n.is_strongly_regular());
    record(&mut out, "ring reduced", holds(RingProp::Reduced), n.is_reduced());
    let regular = NModule::regular(&n);
    record(&mut out, "ring morphic_right", holds(RingProp::MorphicRight), {
        (0..n.n).all(|a| {
            let ar: super::naive::Set = (0..n.n).map(|x| n.mul[a][x]).collect();
            let ann: super::naive::Set = (0..n.n).filter(|&x| n.mul[a][x] == n.zero).collect();
            regular.quotient(&ar).isomorphic(&regular.restrict(&ann))
        })
    });
    out
}

/// Module-level disagreements, including first witnesses where both sides
/// enumerate in the same order.
pub fn compare_module(m: &FiniteModule) -> Vec<String> {
    let lim = Limits::default();
    let ctx = ModuleAnalysis::new(m.clone(), lim);
    let n = NModule::from_module(m);
    let commutative = m.ring().is_commutative();
    let mut out = Vec::new();
    let v = |p| ctx.evaluate(p).unwrap();
    let wm = |p, key: &str| v(p).witness.and_then(|w| w.module_elem(key));
    let wr = |p, key: &str| v(p).witness.and_then(|w| w.ring_elem(key));

    let red = v(ModProp::Reduced).witness.map(|w| {
        (w.module_elem("m").unwrap(), w.ring_elem("a").unwrap(), w.ring_elem("r").unwrap())
    });
    record(&mut out, "reduced witness", red, n.reduced_witness());
    record(&mut out, "rigid", v(ModProp::Rigid).holds, n.is_rigid());
    record(&mut out, "symmetric", v(ModProp::Symmetric).holds, n.is_symmetric());
    record(&mut out, "ifp", v(ModProp::Ifp).holds, n.is_ifp());
    record(&mut out, "morphic", v(ModProp::Morphic).holds, n.is_morphic());
    record(&mut out, "endoregular", v(ModProp::Endoregular).holds, n.is_endoregular());
    record(&mut out, "abelian_endoregular", v(ModProp::AbelianEndoregular).holds, n.is_abelian_endoregular());
    record(&mut out, "duo", v(ModProp::Duo).holds, n.is_duo());
    record(&mut out, "simple", v(ModProp::Simple).holds, n.n == 1 || n.is_simple());
    record(&mut out, "strongly_f_regular witness", wm(ModProp::StronglyFRegular, "m"), n.strongly_f_regular_witness());

    let ends = n.endomorphisms();
    record(&mut out, "|End|", end_ring(m, &lim).unwrap().order(), ends.len());
    record(&mut out, "lattice size", m.all_submodules(&lim).unwrap().len(), n.submodules().len());

    if commutative {
        record(&mut out, "co_reduced witness", wr(ModProp::CoReduced, "a"), n.co_reduced_witness());
        record(&mut out, "weakly_morphic witness", wr(ModProp::WeaklyMorphic, "a"), n.weakly_morphic_witness());
        record(&mut out, "weakly_endoregular witness", wr(ModProp::WeaklyEndoregular, "a"), n.weakly_endoregular_witness());
        record(&mut out, "jt_regular witness", wm(ModProp::JtRegular, "m"), n.jt_witness());
        record(&mut out, "f_regular witness", wm(ModProp::FRegular, "m"), n.f_regular_witness());
        record(&mut out, "almost_locally_simple", v(ModProp::AlmostLocallySimple).holds, n.is_almost_locally_simple());
        record(&mut out, "multiplication", v(ModProp::Multiplication).holds, n.is_multiplication());
    }
    out
}
