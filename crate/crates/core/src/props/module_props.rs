use std::collections::HashSet;

use super::{ModProp, ModuleAnalysis, RingProp, Verdict, Witness};
use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::hom::{hom_module, hom_module_exhaustive, ModuleHom};
use crate::module::{FiniteModule, ModElem, Submodule};
use crate::ring::RingElem;

/// Returns the first counterexample, or `None` when the property holds.
pub(super) fn decide(ctx: &ModuleAnalysis, prop: ModProp) -> Result<Option<Witness>> {
    if prop.requires_commutative() {
        ctx.require_commutative()?;
    }
    let m = ctx.module();
    if m.is_trivial() {
        return Ok(None);
    }
    match prop {
        ModProp::Reduced => Ok(reduced(ctx)),
        ModProp::Symmetric => Ok(symmetric(ctx)),
        ModProp::Ifp => Ok(ifp(ctx)),
        ModProp::Rigid => Ok(rigid(ctx)),
        ModProp::AnnihilatorStable => Ok(annihilator_stable(ctx)),
        ModProp::CoReduced => Ok(co_reduced(ctx)),
        ModProp::WeaklyMorphic => weakly_morphic(ctx),
        ModProp::Morphic => morphic(ctx),
        ModProp::WeaklyEndoregular => Ok(weakly_endoregular(ctx)),
        ModProp::Endoregular => end_ring_witness(ctx, RingProp::Regular),
        ModProp::AbelianEndoregular => abelian_endoregular(ctx),
        ModProp::Duo => duo(ctx),
        ModProp::Multiplication => multiplication(ctx),
        ModProp::JtRegular => Ok(jt_regular(ctx)),
        ModProp::FRegular => Ok(f_regular(ctx)),
        ModProp::StronglyFRegular => strongly_f_regular(ctx),
        ModProp::AlmostLocallySimple => almost_locally_simple(ctx),
        ModProp::ZRegular => z_regular(ctx),
        ModProp::KLocalRetractable => k_local_retractable(ctx),
        ModProp::PInjectiveOverS => p_injective(ctx),
        ModProp::Simple => Ok(simple(ctx)),
    }
}

fn scalars(ctx: &ModuleAnalysis) -> std::ops::Range<RingElem> {
    ctx.ring().elements()
}

fn reduced(ctx: &ModuleAnalysis) -> Option<Witness> {
    let (m, r) = (ctx.module(), ctx.ring());
    for x in m.elements() {
        for a in scalars(ctx) {
            if m.act(m.act(x, a), a) == 0 && !ctx.cyclic(x).is_subset(ctx.kernel(a)) {
                let s = r.elements().find(|&s| m.act(m.act(x, s), a) != 0).expect("cyclic escapes kernel");
                return Some(Witness::new().module("m", x).ring("a", a).ring("r", s));
            }
        }
    }
    None
}

fn symmetric(ctx: &ModuleAnalysis) -> Option<Witness> {
    let m = ctx.module();
    for x in m.elements() {
        for a in scalars(ctx) {
            let xa = m.act(x, a);
            for b in scalars(ctx) {
                if m.act(m.act(x, b), a) == 0 && m.act(xa, b) != 0 {
                    return Some(Witness::new().module("m", x).ring("a", a).ring("b", b));
                }
            }
        }
    }
    None
}

fn ifp(ctx: &ModuleAnalysis) -> Option<Witness> {
    let m = ctx.module();
    for x in m.elements() {
        for a in scalars(ctx) {
            if m.act(x, a) == 0 && !ctx.cyclic(x).is_subset(ctx.kernel(a)) {
                let s = scalars(ctx).find(|&s| m.act(m.act(x, s), a) != 0).expect("cyclic escapes kernel");
                return Some(Witness::new().module("m", x).ring("a", a).ring("r", s));
            }
        }
    }
    None
}

fn rigid(ctx: &ModuleAnalysis) -> Option<Witness> {
    let m = ctx.module();
    for x in m.elements() {
        for a in scalars(ctx) {
            let xa = m.act(x, a);
            if xa != 0 && m.act(xa, a) == 0 {
                return Some(Witness::new().module("m", x).ring("a", a));
            }
        }
    }
    None
}

/// Walks `l_M(a) ⊆ l_M(a²) ⊆ ...` to its stable value.
fn annihilator_stable(ctx: &ModuleAnalysis) -> Option<Witness> {
    let r = ctx.ring();
    for a in scalars(ctx) {
        let base = ctx.kernel(a);
        let mut prev = base.clone();
        let mut power = a;
        let mut n = 1u64;
        loop {
            power = r.mul(power, a);
            n += 1;
            let next = ctx.kernel(power);
            if next != base {
                let x = next.iter().find(|&x| !base.contains(x)).expect("chain grew");
                return Some(Witness::new().module("m", x).ring("a", a).count("n", n));
            }
            if *next == prev {
                break;
            }
            prev = next.clone();
        }
    }
    None
}

fn co_reduced(ctx: &ModuleAnalysis) -> Option<Witness> {
    let r = ctx.ring();
    scalars(ctx).find_map(|a| {
        let (ma, ma2) = (ctx.image(a), ctx.image(r.mul(a, a)));
        (ma != ma2).then(|| {
            let x = ma.iter().find(|&x| !ma2.contains(x)).expect("Ma2 is inside Ma");
            Witness::new().ring("a", a).module("x", x)
        })
    })
}

fn weakly_morphic(ctx: &ModuleAnalysis) -> Result<Option<Witness>> {
    let mut seen = HashSet::new();
    for a in scalars(ctx) {
        let (img, ker) = (ctx.image(a), ctx.kernel(a));
        if !seen.insert((img.clone(), ker.clone())) {
            continue;
        }
        if !ctx.quotient_isomorphic_to(img, ker)? {
            return Ok(Some(Witness::new().ring("a", a)));
        }
    }
    Ok(None)
}

fn morphic(ctx: &ModuleAnalysis) -> Result<Option<Witness>> {
    let s = ctx.end_ring()?;
    let mut seen = HashSet::new();
    for h in s.homs() {
        let (img, ker) = (h.image(), h.kernel());
        if !seen.insert((img.set().clone(), ker.set().clone())) {
            continue;
        }
        if !ctx.quotient_isomorphic_to(img.set(), ker.set())? {
            return Ok(Some(Witness::new().hom("phi", h.matrix().to_vec())));
        }
    }
    Ok(None)
}

fn weakly_endoregular(ctx: &ModuleAnalysis) -> Option<Witness> {
    let n = ctx.module().order();
    scalars(ctx).find_map(|a| {
        let (img, ker) = (ctx.image(a), ctx.kernel(a));
        let ok = img.intersection_len(ker) == 1 && img.len() * ker.len() == n;
        (!ok).then(|| Witness::new().ring("a", a))
    })
}

fn end_ring_witness(ctx: &ModuleAnalysis, prop: RingProp) -> Result<Option<Witness>> {
    let v = ctx.end_ring_property(prop)?;
    if v.holds {
        return Ok(None);
    }
    let s = ctx.end_ring()?;
    let x = v
        .witness
        .and_then(|w| w.ring_elem("a"))
        .ok_or_else(|| Error::Inconsistent("end ring verdict lacks a witness".into()))?;
    Ok(Some(Witness::new().hom("phi", s.hom(x).matrix().to_vec())))
}

/// First `φ` with `M ≠ φ(M) ⊕ ker φ`.
fn image_kernel_split_failure(ctx: &ModuleAnalysis) -> Result<Option<&ModuleHom>> {
    let s = ctx.end_ring()?;
    Ok(s.homs().iter().find(|h| h.image().set().intersection_len(h.kernel().set()) != 1))
}

fn abelian_endoregular(ctx: &ModuleAnalysis) -> Result<Option<Witness>> {
    let ring_route = end_ring_witness(ctx, RingProp::StronglyRegular)?;
    let split_route = image_kernel_split_failure(ctx)?;
    if ring_route.is_some() != split_route.is_some() {
        return Err(Error::Inconsistent(
            "strong regularity of End(M) disagrees with M = φM ⊕ ker φ".into(),
        ));
    }
    Ok(ring_route)
}

fn duo(ctx: &ModuleAnalysis) -> Result<Option<Witness>> {
    let (m, s) = (ctx.module(), ctx.end_ring()?);
    for h in s.homs() {
        if let Some(x) = m.elements().find(|&x| !ctx.cyclic(x).contains(h.apply(x))) {
            return Ok(Some(Witness::new().hom("phi", h.matrix().to_vec()).module("m", x)));
        }
    }
    Ok(None)
}

fn multiplication(ctx: &ModuleAnalysis) -> Result<Option<Witness>> {
    let (m, r) = (ctx.module(), ctx.ring());
    let regular = FiniteModule::regular(r, ctx.limits())?;
    let mut products: HashSet<ElemSet> = HashSet::new();
    for ideal in regular.all_submodules(ctx.limits())? {
        let mut acc = m.zero_submodule();
        for a in r.radix().greedy_generators(ideal.set()) {
            acc = m.sum(&acc, &Submodule::new(ctx.image(a).clone(), vec![]));
        }
        products.insert(acc.set().clone());
    }
    for n in ctx.lattice()? {
        if !products.contains(n.set()) {
            return Ok(Some(Witness::new().elements("n", n.elements())));
        }
    }
    Ok(None)
}

fn jt_regular(ctx: &ModuleAnalysis) -> Option<Witness> {
    let r = ctx.ring();
    let stable: Vec<&ElemSet> = scalars(ctx)
        .filter(|&a| ctx.image(a) == ctx.image(r.mul(a, a)))
        .map(|a| ctx.image(a))
        .collect();
    ctx.module()
        .elements()
        .find(|&x| !stable.iter().any(|&img| img == ctx.cyclic(x)))
        .map(|x| Witness::new().module("m", x))
}

/// `N·a` for an element set `N`.
fn set_times(ctx: &ModuleAnalysis, n: &ElemSet, a: RingElem) -> ElemSet {
    let m = ctx.module();
    ElemSet::from_indices(m.order(), n.iter().map(|x| m.act(x, a)))
}

fn f_regular(ctx: &ModuleAnalysis) -> Option<Witness> {
    let r = ctx.ring();
    let mut seen = HashSet::new();
    for x in ctx.module().elements() {
        let c = ctx.cyclic(x);
        if !seen.insert(c.clone()) {
            continue;
        }
        for a in scalars(ctx) {
            if set_times(ctx, c, a) != set_times(ctx, c, r.mul(a, a)) {
                return Some(Witness::new().module("m", x).ring("a", a));
            }
        }
    }
    None
}

fn has_complement(ctx: &ModuleAnalysis, n: &ElemSet) -> Result<bool> {
    let size = ctx.module().order();
    Ok(ctx
        .lattice()?
        .iter()
        .any(|k| n.len() * k.len() == size && n.intersection_len(k.set()) == 1))
}

fn strongly_f_regular(ctx: &ModuleAnalysis) -> Result<Option<Witness>> {
    let mut seen = HashSet::new();
    for x in ctx.module().elements() {
        let c = ctx.cyclic(x);
        if !seen.insert(c.clone()) {
            continue;
        }
        if !has_complement(ctx, c)? {
            return Ok(Some(Witness::new().module("m", x)));
        }
    }
    Ok(None)
}

/// Nonzero with no proper nonzero submodule.
pub(crate) fn is_simple_module(m: &FiniteModule) -> bool {
    !m.is_trivial() && m.elements().skip(1).all(|x| m.cyclic_submodule(x).len() == m.order())
}

fn almost_locally_simple(ctx: &ModuleAnalysis) -> Result<Option<Witness>> {
    let dec = ctx.ring().local_decomposition(ctx.limits())?;
    let comps = ctx.module().localize(&dec, ctx.limits())?;
    Ok(dec
        .idempotents
        .iter()
        .zip(&comps)
        .find(|(_, c)| !(c.is_trivial() || is_simple_module(c)))
        .map(|(&e, _)| Witness::new().ring("e", e)))
}

fn z_regular(ctx: &ModuleAnalysis) -> Result<Option<Witness>> {
    let m = ctx.module();
    let regular = FiniteModule::regular(ctx.ring(), ctx.limits())?;
    let homs = hom_module(m, &regular, ctx.limits())?;
    Ok(m.elements()
        .find(|&x| !homs.iter().any(|h| m.act(x, h.apply(x)) == x))
        .map(|x| Witness::new().module("m", x)))
}

fn k_local_retractable(ctx: &ModuleAnalysis) -> Result<Option<Witness>> {
    let (m, s) = (ctx.module(), ctx.end_ring()?);
    let images: Vec<ElemSet> = s.homs().iter().map(|h| h.image().set().clone()).collect();
    let mut seen = HashSet::new();
    for h in s.homs() {
        let ker = h.kernel();
        if !seen.insert(ker.set().clone()) {
            continue;
        }
        let mut covered = m.empty_set();
        for img in images.iter().filter(|img| img.is_subset(ker.set())) {
            covered = covered.union(img);
        }
        let missing = ker.iter().find(|&x| !covered.contains(x));
        if let Some(x) = missing {
            return Ok(Some(Witness::new().hom("phi", h.matrix().to_vec()).module("x", x)));
        }
    }
    Ok(None)
}

/// `r_M(l_S(φ))` for the image `φ(M)`.
fn double_annihilator(ctx: &ModuleAnalysis, image: &ElemSet) -> Result<ElemSet> {
    let s = ctx.end_ring()?;
    let mut acc = ElemSet::full(ctx.module().order());
    for psi in s.homs() {
        if image.iter().all(|x| psi.apply(x) == 0) {
            acc = acc.intersection(psi.kernel().set());
        }
    }
    Ok(acc)
}

fn p_injective(ctx: &ModuleAnalysis) -> Result<Option<Witness>> {
    let s = ctx.end_ring()?;
    let mut seen = HashSet::new();
    for h in s.homs() {
        let img = h.image();
        if !seen.insert(img.set().clone()) {
            continue;
        }
        let rl = double_annihilator(ctx, img.set())?;
        let outside = rl.iter().find(|&x| !img.contains(x));
        if let Some(x) = outside {
            return Ok(Some(Witness::new().hom("phi", h.matrix().to_vec()).module("x", x)));
        }
    }
    Ok(None)
}

fn simple(ctx: &ModuleAnalysis) -> Option<Witness> {
    let m = ctx.module();
    m.elements()
        .skip(1)
        .find(|&x| ctx.cyclic(x).len() != m.order())
        .map(|x| Witness::new().elements("n", ctx.cyclic(x).to_vec()))
}

/// First `(φ, m)` with `φ²(m) = 0` but `φS(m) ≠ 0`, i.e. a failure of
/// reducedness of `M` as a left `S`-module.
pub fn s_module_reduced_witness(ctx: &ModuleAnalysis) -> Result<Option<Witness>> {
    let (m, s) = (ctx.module(), ctx.end_ring()?);
    let orbits: Vec<ElemSet> = m
        .elements()
        .map(|x| ElemSet::from_indices(m.order(), s.homs().iter().map(|psi| psi.apply(x))))
        .collect();
    for phi in s.homs() {
        let ker = phi.kernel();
        for x in m.elements() {
            if phi.apply(phi.apply(x)) == 0 && !orbits[x].is_subset(ker.set()) {
                return Ok(Some(Witness::new().hom("phi", phi.matrix().to_vec()).module("m", x)));
            }
        }
    }
    Ok(None)
}

/// Re-checks a verdict's witness directly against the defining formula,
/// using brute-force enumeration instead of the cached structures.
pub fn revalidate_module(ctx: &ModuleAnalysis, prop: ModProp, verdict: &Verdict) -> Result<bool> {
    let w = match (&verdict.witness, verdict.holds) {
        (None, true) => return Ok(true),
        (Some(w), false) => w,
        _ => return Ok(false),
    };
    let (m, r, limits) = (ctx.module(), ctx.ring(), ctx.limits());
    let ring_at = |k: &str| w.ring_elem(k).unwrap_or(0);
    let mod_at = |k: &str| w.module_elem(k).unwrap_or(0);
    let act = |x: ModElem, a: RingElem| m.act(x, a);
    let hom_at = |k: &str| -> Result<ModuleHom> {
        let mat = w
            .hom_matrix(k)
            .ok_or_else(|| Error::InvalidParameter("witness lacks a map".into()))?;
        ModuleHom::from_matrix(m, m, mat.to_vec())
    };
    let all_endos = || hom_module_exhaustive(m, m, limits);
    let image_of = |a: RingElem| -> Vec<ModElem> {
        let mut v: Vec<ModElem> = m.elements().map(|x| act(x, a)).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let span_r = |x: ModElem| -> Vec<ModElem> {
        let mut v: Vec<ModElem> = r.elements().map(|s| act(x, s)).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    Ok(match prop {
        ModProp::Reduced => {
            let (x, a, s) = (mod_at("m"), ring_at("a"), ring_at("r"));
            act(act(x, a), a) == 0 && act(act(x, s), a) != 0
        }
        ModProp::Symmetric => {
            let (x, a, b) = (mod_at("m"), ring_at("a"), ring_at("b"));
            act(act(x, b), a) == 0 && act(act(x, a), b) != 0
        }
        ModProp::Ifp => {
            let (x, a, s) = (mod_at("m"), ring_at("a"), ring_at("r"));
            act(x, a) == 0 && act(act(x, s), a) != 0
        }
        ModProp::Rigid => {
            let (x, a) = (mod_at("m"), ring_at("a"));
            act(act(x, a), a) == 0 && act(x, a) != 0
        }
        ModProp::AnnihilatorStable => {
            let (x, a) = (mod_at("m"), ring_at("a"));
            let n = match w.get("n") {
                Some(super::WitnessValue::Count(n)) => *n,
                _ => return Ok(false),
            };
            let y = (0..n).fold(x, |y, _| act(y, a));
            y == 0 && act(x, a) != 0
        }
        ModProp::CoReduced => {
            let (a, x) = (ring_at("a"), mod_at("x"));
            m.elements().any(|y| act(y, a) == x) && !m.elements().any(|y| act(act(y, a), a) == x)
        }
        ModProp::WeaklyMorphic => {
            let a = ring_at("a");
            let img = ElemSet::from_indices(m.order(), image_of(a));
            let ker = ElemSet::from_indices(m.order(), m.elements().filter(|&x| act(x, a) == 0));
            !ctx.quotient_isomorphic_to(&img, &ker)?
        }
        ModProp::Morphic => {
            let h = hom_at("phi")?;
            !ctx.quotient_isomorphic_to(h.image().set(), h.kernel().set())?
        }
        ModProp::WeaklyEndoregular => {
            let a = ring_at("a");
            let img = image_of(a);
            let meet = img.iter().filter(|&&x| x != 0 && act(x, a) == 0).count();
            let ker = m.elements().filter(|&x| act(x, a) == 0).count();
            meet > 0 || img.len() * ker != m.order()
        }
        ModProp::Endoregular => {
            let h = hom_at("phi")?;
            !all_endos()?.iter().any(|psi| h.compose(&psi.compose(&h)) == h)
        }
        ModProp::AbelianEndoregular => {
            let h = hom_at("phi")?;
            let h2 = h.compose(&h);
            !all_endos()?.iter().any(|psi| h2.compose(psi) == h)
        }
        ModProp::Duo => {
            let (h, x) = (hom_at("phi")?, mod_at("m"));
            !r.elements().any(|a| act(x, a) == h.apply(x))
        }
        ModProp::Multiplication => {
            let Some(super::WitnessValue::Elements(n)) = w.get("n") else {
                return Ok(false);
            };
            let nset = ElemSet::from_indices(m.order(), n.iter().copied());
            let colon: Vec<RingElem> = r
                .elements()
                .filter(|&a| m.elements().all(|x| nset.contains(act(x, a))))
                .collect();
            let gens: Vec<ModElem> = colon
                .iter()
                .flat_map(|&a| m.elements().map(move |x| (x, a)))
                .map(|(x, a)| act(x, a))
                .collect();
            m.is_submodule(&nset) && m.radix().span(&gens) != nset
        }
        ModProp::JtRegular => {
            let x = mod_at("m");
            let c = span_r(x);
            !r.elements().any(|a| image_of(a) == c && image_of(r.mul(a, a)) == c)
        }
        ModProp::FRegular => {
            let (x, a) = (mod_at("m"), ring_at("a"));
            let c = span_r(x);
            let times = |b: RingElem| {
                let mut v: Vec<ModElem> = c.iter().map(|&y| act(y, b)).collect();
                v.sort_unstable();
                v.dedup();
                v
            };
            times(a) != times(r.mul(a, a))
        }
        ModProp::StronglyFRegular => {
            let x = mod_at("m");
            !m.is_direct_summand(&m.cyclic_submodule(x), limits)?.holds
        }
        ModProp::AlmostLocallySimple => {
            let e = w.ring_elem("e").unwrap_or(0);
            let comp = image_of(e);
            r.mul(e, e) == e && comp.len() > 1 && comp.iter().any(|&x| x != 0 && span_r(x).len() != comp.len())
        }
        ModProp::ZRegular => {
            let x = mod_at("m");
            let regular = FiniteModule::regular(r, limits)?;
            !hom_module_exhaustive(m, &regular, limits)?
                .iter()
                .any(|h| act(x, h.apply(x)) == x)
        }
        ModProp::KLocalRetractable => {
            let (h, x) = (hom_at("phi")?, mod_at("x"));
            let ker = h.kernel();
            ker.contains(x)
                && x != 0
                && !all_endos()?
                    .iter()
                    .any(|psi| psi.image().contains(x) && psi.image().is_subset(&ker))
        }
        ModProp::PInjectiveOverS => {
            let (h, x) = (hom_at("phi")?, mod_at("x"));
            let endos = all_endos()?;
            let killed = endos.iter().filter(|psi| psi.compose(&h).is_zero());
            let in_rl = killed.into_iter().all(|psi| psi.apply(x) == 0);
            in_rl && !h.image().contains(x)
        }
        ModProp::Simple => {
            let Some(super::WitnessValue::Elements(n)) = w.get("n") else {
                return Ok(false);
            };
            let nset = ElemSet::from_indices(m.order(), n.iter().copied());
            m.is_submodule(&nset) && nset.len() > 1 && nset.len() < m.order()
        }
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::limits::Limits;
    use crate::module::{build_module, ModuleDescription};
    use crate::ring::{build_ring, FiniteRing, RingDescription};

    fn zmod(n: u64) -> Arc<FiniteRing> {
        Arc::new(build_ring(&RingDescription::zmod(n)).unwrap())
    }

    fn analysis(m: FiniteModule) -> ModuleAnalysis {
        ModuleAnalysis::new(m, Limits::default())
    }

    fn z2_z4() -> FiniteModule {
        build_module(
            &zmod(8),
            &ModuleDescription::ActionMatrices {
                invariant_factors: vec![2, 4],
                action: vec![vec![vec![1, 0], vec![0, 1]]],
            },
        )
        .unwrap()
    }

    fn vspace2() -> FiniteModule {
        let r = zmod(2);
        let reg = FiniteModule::regular(&r, &Limits::default()).unwrap();
        FiniteModule::direct_sum(&r, &[reg.clone(), reg], &Limits::default()).unwrap()
    }

    #[test]
    fn z2_z4_reduced_witness() {
        let m = z2_z4();
        let ctx = analysis(m.clone());
        let v = ctx.evaluate(ModProp::Reduced).unwrap();
        assert!(!v.holds);
        let w = v.witness.clone().unwrap();
        assert_eq!(w.module_elem("m"), Some(m.from_coeffs(&[0, 1]).unwrap()));
        assert_eq!(w.ring_elem("a"), Some(2));
        assert!(revalidate_module(&ctx, ModProp::Reduced, &v).unwrap());
        assert!(ctx.holds(ModProp::WeaklyMorphic).unwrap());
    }

    #[test]
    fn z4_not_co_reduced() {
        let r = zmod(4);
        let ctx = analysis(FiniteModule::regular(&r, &Limits::default()).unwrap());
        let v = ctx.evaluate(ModProp::CoReduced).unwrap();
        assert!(!v.holds);
        assert_eq!(v.witness.unwrap().ring_elem("a"), Some(2));
    }

    #[test]
    fn z6_facts() {
        let r = zmod(6);
        let ctx = analysis(FiniteModule::regular(&r, &Limits::default()).unwrap());
        assert!(ctx.holds(ModProp::WeaklyEndoregular).unwrap());
        assert!(ctx.holds(ModProp::AlmostLocallySimple).unwrap());
    }

    #[test]
    fn vector_space_facts() {
        let m = vspace2();
        let ctx = analysis(m.clone());
        let v = ctx.evaluate(ModProp::JtRegular).unwrap();
        assert!(!v.holds);
        assert_eq!(v.witness.unwrap().module_elem("m"), Some(m.from_coeffs(&[0, 1]).unwrap()));
        assert!(ctx.holds(ModProp::StronglyFRegular).unwrap());
        assert!(ctx.holds(ModProp::Reduced).unwrap());
        assert!(!ctx.holds(ModProp::AlmostLocallySimple).unwrap());
        assert!(ctx.holds(ModProp::Morphic).unwrap());
        assert!(!ctx.holds(ModProp::AbelianEndoregular).unwrap());
        assert!(ctx.holds(ModProp::Endoregular).unwrap());
    }

    #[test]
    fn trivial_module_satisfies_everything() {
        let ctx = analysis(FiniteModule::zero(&zmod(4)));
        for p in ModProp::ALL {
            assert!(ctx.holds(p).unwrap(), "{p}");
        }
    }

    #[test]
    fn commutative_only_properties_rejected() {
        let r = Arc::new(build_ring(&RingDescription::upper_triangular(2, 2)).unwrap());
        let ctx = analysis(FiniteModule::regular(&r, &Limits::default()).unwrap());
        for p in ModProp::ALL {
            let res = ctx.evaluate(p);
            if p.requires_commutative() {
                assert_eq!(res.unwrap_err(), Error::NotCommutative);
            } else {
                let v = res.unwrap();
                assert!(revalidate_module(&ctx, p, &v).unwrap(), "{p}");
            }
        }
    }

    #[test]
    fn witnesses_revalidate_on_small_modules() {
        for m in [z2_z4(), vspace2(), FiniteModule::regular(&zmod(4), &Limits::default()).unwrap()] {
            let ctx = analysis(m);
            for p in ModProp::ALL {
                let v = ctx.evaluate(p).unwrap();
                assert!(revalidate_module(&ctx, p, &v).unwrap(), "{p}");
            }
        }
    }
}
