use super::{Evaluation, Hypothesis, Instance, Relation, Scope, Theorem};
use crate::bitset::ElemSet;
use crate::error::Result;
use crate::hom::{cogenerates, ModuleHom};
use crate::module::{is_isomorphic, FiniteModule};
use crate::props::{
    evaluate_ring_property, left_annihilators_stable, nilpotent_witness, principal_split_failure,
    right_annihilators_stable, s_module_reduced_witness, ModProp, ModuleAnalysis, RingProp,
};

use Hypothesis::{Commutative as C, Duo as D, Multiplication as X, Nontrivial as N, StronglyFRegular as F};

const fn ring_thm(id: &'static str, hyps: &'static [Hypothesis], eval: fn(&Instance) -> Result<Evaluation>) -> Theorem {
    Theorem {
        id,
        scope: Scope::Ring,
        hypotheses: hyps,
        finiteness: false,
        eval,
    }
}

const fn mod_thm(
    id: &'static str,
    hyps: &'static [Hypothesis],
    finiteness: bool,
    eval: fn(&Instance) -> Result<Evaluation>,
) -> Theorem {
    Theorem {
        id,
        scope: Scope::Module,
        hypotheses: hyps,
        finiteness,
        eval,
    }
}

/// Every registered statement, in report order.
pub static THEOREMS: [Theorem; 25] = [
    mod_thm("LEM-REDUCED-CHAR", &[N], false, lem_reduced_char),
    ring_thm("COR-REDUCED-RING", &[], cor_reduced_ring),
    mod_thm("PROP-IDEMPOTENT-MAP", &[N], false, prop_idempotent_map),
    mod_thm("THM-WE", &[C, N], false, thm_we),
    mod_thm("COR-FG-WE", &[C, N], true, cor_fg_we),
    ring_thm("COR-RING-REG", &[C], cor_ring_reg),
    mod_thm("LEM-PINJ", &[N], false, lem_pinj),
    mod_thm("THM-ABELIAN", &[N], false, thm_abelian),
    mod_thm("COR-SMOD-RED", &[N], false, cor_smod_red),
    ring_thm("COR-STRONGLY-REG-RING", &[], cor_strongly_reg_ring),
    mod_thm("LEM-DUO-RED", &[C, N, D], false, lem_duo_red),
    mod_thm("COR-CYCLIC-MORPHIC", &[C, N, X], true, cor_cyclic_morphic),
    mod_thm("PROP-MULT-WE-AE", &[C, N, X], true, prop_mult_we_ae),
    mod_thm("COR-DUO-SREG", &[C, N, D], false, cor_duo_sreg),
    mod_thm("THM-SFR-DUO", &[N, F], false, thm_sfr_duo),
    mod_thm("LEM-SFR-KLR", &[N], false, lem_sfr_klr),
    mod_thm("LEM-SFR-ISO-EQ", &[N, D, F], false, lem_sfr_iso_eq),
    mod_thm("LEM-FREG-WE", &[C, N], false, lem_freg_we),
    mod_thm("THM-FREG-CHAR", &[C, N], false, thm_freg_char),
    mod_thm("THM-FG-COINCIDE", &[C, N], true, thm_fg_coincide),
    mod_thm("PROP-FP-COINCIDE", &[C, N], true, prop_fp_coincide),
    mod_thm("COR-MULT-CHAIN", &[C, N, X], false, cor_mult_chain),
    mod_thm("PROP-MULT-ALL", &[C, N, X], true, prop_mult_all),
    mod_thm("REM-HIERARCHY", &[C, N], false, rem_hierarchy),
    mod_thm("COR-TRASH", &[C], false, cor_trash),
];

/// Looks up a theorem by id, ignoring ASCII case.
pub fn theorem(id: &str) -> Option<&'static Theorem> {
    THEOREMS.iter().find(|t| t.id.eq_ignore_ascii_case(id.trim()))
}

pub fn theorem_ids() -> Vec<&'static str> {
    THEOREMS.iter().map(|t| t.id).collect()
}

fn holds(ctx: &ModuleAnalysis, props: &[ModProp]) -> Result<bool> {
    for &p in props {
        if !ctx.holds(p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn label(props: &[ModProp]) -> String {
    props.iter().map(|p| p.name()).collect::<Vec<_>>().join(" & ")
}

fn s_holds(ctx: &ModuleAnalysis, p: RingProp) -> Result<bool> {
    Ok(ctx.end_ring_property(p)?.holds)
}

fn ring_holds(inst: &Instance, p: RingProp) -> Result<bool> {
    Ok(evaluate_ring_property(&inst.ring, p, &inst.limits)?.holds)
}

fn every(subs: &[ModuleAnalysis], props: &[ModProp]) -> Result<bool> {
    for s in subs {
        if !holds(s, props)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Adds one equivalence clause per conjunction of module properties.
fn add_props(e: &mut Evaluation, ctx: &ModuleAnalysis, groups: &[&[ModProp]]) -> Result<Vec<usize>> {
    groups
        .iter()
        .map(|g| Ok(e.clause(label(g), holds(ctx, g)?)))
        .collect()
}

/// One clause per conjunction, quantified over the cyclic submodules.
fn add_cyclic(e: &mut Evaluation, ctx: &ModuleAnalysis, groups: &[&[ModProp]]) -> Result<Vec<usize>> {
    let subs = ctx.cyclic_submodules()?;
    groups
        .iter()
        .map(|g| Ok(e.clause(format!("every cyclic submodule: {}", label(g)), every(subs, g)?)))
        .collect()
}

use ModProp::*;

fn lem_reduced_char(inst: &Instance) -> Result<Evaluation> {
    let ctx = inst.analysis()?;
    let mut e = Evaluation::new();
    let ix = add_props(
        &mut e,
        ctx,
        &[&[Reduced], &[Symmetric, AnnihilatorStable], &[Ifp, AnnihilatorStable]],
    )?;
    e.relate(Relation::Equiv(ix));
    Ok(e)
}

fn cor_reduced_ring(inst: &Instance) -> Result<Evaluation> {
    let r = inst.ring.as_ref();
    Ok(Evaluation::equivalent(vec![
        ("no nonzero nilpotent".into(), nilpotent_witness(r).is_none()),
        ("left annihilators of powers stable".into(), left_annihilators_stable(r)),
        ("right annihilators of powers stable".into(), right_annihilators_stable(r)),
    ]))
}

fn prop_idempotent_map(inst: &Instance) -> Result<Evaluation> {
    let ctx = inst.analysis()?;
    let m = ctx.module();
    let idempotent_maps = inst.ring.idempotents().into_iter().all(|e| {
        ModuleHom::scalar(m, e).is_some_and(|h| h.compose(&h) == h)
    });
    let mut e = Evaluation::new();
    let a = e.clause("reduced", ctx.holds(Reduced)?);
    let b = e.clause("m -> me is an idempotent endomorphism for every idempotent e", idempotent_maps);
    e.relate(Relation::Implies(a, b));
    Ok(e)
}

fn thm_we(inst: &Instance) -> Result<Evaluation> {
    let ctx = inst.analysis()?;
    let mut e = Evaluation::new();
    let ix = add_props(
        &mut e,
        ctx,
        &[
            &[WeaklyMorphic, Reduced],
            &[WeaklyMorphic, CoReduced],
            &[CoReduced, Reduced],
            &[WeaklyEndoregular],
        ],
    )?;
    e.relate(Relation::Equiv(ix));
    Ok(e)
}

fn cor_fg_we(inst: &Instance) -> Result<Evaluation> {
    let ctx = inst.analysis()?;
    let mut e = Evaluation::new();
    let mut ix = add_props(&mut e, ctx, &[&[WeaklyMorphic, Reduced], &[CoReduced]])?;
    ix.push(e.clause("R/Ann(M) regular", ctx.annihilator_quotient_regular()?));
    ix.extend(add_props(&mut e, ctx, &[&[WeaklyEndoregular]])?);
    e.relate(Relation::Equiv(ix));
    Ok(e)
}

fn cor_ring_reg(inst: &Instance) -> Result<Evaluation> {
    let regular = FiniteModule::regular(&inst.ring, &inst.limits)?;
    let ctx = ModuleAnalysis::new(regular, inst.limits);
    Ok(Evaluation::equivalent(vec![
        (
            "morphic_right & reduced".into(),
            ring_holds(inst, RingProp::MorphicRight)? && ring_holds(inst, RingProp::Reduced)?,
        ),
        ("R_R co_reduced".into(), ctx.holds(CoReduced)?),
        ("regular".into(), ring_holds(inst, RingProp::Regular)?),
        (
            "R = (a) + r(a) = (a) + l(a) directly for all a".into(),
            principal_split_failure(&inst.ring, true).is_none(),
        ),
    ]))
}

/// `φ(M) = r_M(l_S(φ))` for every `φ` via the membership criterion on
/// single elements: `l_S(φM) ⊆ l_S(m)` forces `m ∈ φM`.
fn pinj_element_criterion(ctx: &ModuleAnalysis) -> Result<bool> {
    let (m, s) = (ctx.module(), ctx.end_ring()?);
    let point_anns: Vec<ElemSet> = m
        .elements()
        .map(|x| s.left_annihilator_in_s(&ElemSet::from_indices(m.order(), [x])))
        .collect();
    let mut seen = std::collections::HashSet::new();
    for h in s.homs() {
        let img = h.image();
        if !seen.insert(img.set().clone()) {
            continue;
        }
        let l_img = s.left_annihilator_in_s(img.set());
        if m.elements().any(|x| l_img.is_subset(&point_anns[x]) && !img.contains(x)) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn cogenerates_all_cokernels(ctx: &ModuleAnalysis) -> Result<bool> {
    let (m, s) = (ctx.module(), ctx.end_ring()?);
    let mut seen = std::collections::HashSet::new();
    for h in s.homs() {
        let img = h.image();
        if !seen.insert(img.set().clone()) {
            continue;
        }
        let q = m.quotient(&img, ctx.limits())?.module;
        if !cogenerates(m, &q, ctx.limits())? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn lem_pinj(inst: &Instance) -> Result<Evaluation> {
    let ctx = inst.analysis()?;
    let mut e = Evaluation::new();
    let morphic = e.clause("morphic", ctx.holds(Morphic)?);
    let pinj = e.clause("p_injective_over_s", ctx.holds(PInjectiveOverS)?);
    let crit = e.clause("l_S(phi M) in l_S(m) forces m in phi M", pinj_element_criterion(ctx)?);
    let cogen = e.clause("M cogenerates M/phi(M) for every phi", cogenerates_all_cokernels(ctx)?);
    e.relate(Relation::Implies(morphic, pinj));
    e.relate(Relation::Equiv(vec![pinj, crit, cogen]));
    Ok(e)
}

fn thm_abelian(inst: &Instance) -> Result<Evaluation> {
    let ctx = inst.analysis()?;
    Ok(Evaluation::equivalent(vec![
        ("morphic & End(M) reduced".into(), ctx.holds(Morphic)? && s_holds(ctx, RingProp::Reduced)?),
        ("abelian_endoregular".into(), ctx.holds(AbelianEndoregular)?),
    ]))
}

fn cor_smod_red(inst: &Instance) -> Result<Evaluation> {
    let ctx = inst.analysis()?;
    Ok(Evaluation::equivalent(vec![
        (
            "morphic & M reduced over End(M)".into(),
            ctx.holds(Morphic)? && s_module_reduced_witness(ctx)?.is_none(),
        ),
        ("abelian_endoregular".into(), ctx.holds(AbelianEndoregular)?),
    ]))
}

fn cor_strongly_reg_ring(inst: &Instance) -> Result<Evaluation> {
    let reduced = ring_holds(inst, RingProp::Reduced)?;
    Ok(Evaluation::equivalent(vec![
        ("morphic_right & reduced".into(), ring_holds(inst, RingProp::MorphicRight)? && reduced),
        ("left_p_injective & reduced".into(), ring_holds(inst, RingProp::LeftPInjective)? && reduced),
        ("R = aR + r(a) for all a".into(), principal_split_failure(&inst.ring, false).is_none()),
        ("strongly_regular".into(), ring_holds(inst, RingProp::StronglyRegular)?),
    ]))
}

fn lem_duo_red(inst: &Instance) -> Result<Evaluation> {
    let ctx = inst.analysis()?;
    let mut e = Evaluation::new();
    let red = e.clause("reduced", ctx.holds(Reduced)?);
    let s_red = e.clause("M reduced over End(M)", s_module_reduced_witness(ctx)?.is_none());
    let ring_red = e.clause("End(M) reduced", s_holds(ctx, RingProp::Reduced)?);
    e.relate(Relation::Equiv(vec![red, s_red]));
    e.relate(Relation::Implies(s_red, ring_red));
    Ok(e)
}

fn cor_cyclic_morphic(inst: &Instance) -> Result<Evaluation> {
    let ctx = inst.analysis()?;
    let mut e = Evaluation::new();
    let ix = add_props(&mut e, ctx, &[&[WeaklyMorphic], &[Morphic]])?;
    e.relate(Relation::Equiv(ix));
    Ok(e)
}

fn prop_mult_we_ae(inst: &Instance) -> Result<Evaluation> {
    let ctx = inst.analysis()?;
    let mut e = Evaluation::new();
    let ix = add_props(&mut e, ctx, &[&[WeaklyEndoregular], &[AbelianEndoregular]])?;
    e.relate(Relation::Equiv(ix));
    Ok(e)
}

fn cor_duo_sreg(inst: &Instance) -> Result<Evaluation> {
    let ctx = inst.analysis()?;
    Ok(Evaluation::equivalent(vec![
        ("morphic & reduced".into(), holds(ctx, &[Morphic, Reduced])?),
        ("End(M) strongly_regular".into(), s_holds(ctx, RingProp::StronglyRegular)?),
    ]))
}

fn thm_sfr_duo(inst: &Instance) -> Result<Evaluation> {
    let ctx = inst.analysis()?;
    Ok(Evaluation::equivalent(vec![
        ("morphic & End(M) reduced".into(), ctx.holds(Morphic)? && s_holds(ctx, RingProp::Reduced)?),
        ("duo".into(), ctx.holds(Duo)?),
        ("abelian_endoregular".into(), ctx.holds(AbelianEndoregular)?),
    ]))
}

fn lem_sfr_klr(inst: &Instance) -> Result<Evaluation> {
    let ctx = inst.analysis()?;
    let mut e = Evaluation::new();
    let a = e.clause("strongly_f_regular", ctx.holds(StronglyFRegular)?);
    let b = e.clause("k_local_retractable", ctx.holds(KLocalRetractable)?);
    e.relate(Relation::Implies(a, b));
    Ok(e)
}

fn lem_sfr_iso_eq(inst: &Instance) -> Result<Evaluation> {
    let ctx = inst.analysis()?;
    let subs = ctx.all_submodules()?;
    let mut distinct_isomorphic = false;
    'outer: for (i, a) in subs.iter().enumerate() {
        for b in &subs[i + 1..] {
            if a.module().order() == b.module().order()
                && is_isomorphic(a.module(), b.module(), ctx.limits())?.holds
            {
                distinct_isomorphic = true;
                break 'outer;
            }
        }
    }
    let mut e = Evaluation::new();
    let c = e.clause("isomorphic submodules are equal", !distinct_isomorphic);
    e.relate(Relation::Holds(c));
    Ok(e)
}

fn lem_freg_we(inst: &Instance) -> Result<Evaluation> {
    let ctx = inst.analysis()?;
    let mut e = Evaluation::new();
    let ix = add_props(
        &mut e,
        ctx,
        &[&[FRegular], &[WeaklyEndoregular], &[WeaklyMorphic], &[Reduced], &[CoReduced]],
    )?;
    for &j in &ix[1..] {
        e.relate(Relation::Implies(ix[0], j));
    }
    Ok(e)
}

fn every_submodule_rd_pure(ctx: &ModuleAnalysis) -> Result<bool> {
    let m = ctx.module();
    for n in ctx.lattice()? {
        if !m.is_rd_pure(n)?.holds {
            return Ok(false);
        }
    }
    Ok(true)
}

fn thm_freg_char(inst: &Instance) -> Result<Evaluation> {
    let ctx = inst.analysis()?;
    let all = ctx.all_submodules()?;
    let mut e = Evaluation::new();
    let mut ix = vec![e.clause("every submodule RD-pure", every_submodule_rd_pure(ctx)?)];
    ix.push(e.clause("every submodule: weakly_endoregular", every(all, &[WeaklyEndoregular])?));
    ix.push(e.clause(
        "every submodule: weakly_morphic & reduced",
        every(all, &[WeaklyMorphic, Reduced])?,
    ));
    ix.extend(add_cyclic(
        &mut e,
        ctx,
        &[&[Morphic, Reduced], &[WeaklyMorphic, Reduced], &[CoReduced]],
    )?);
    ix.extend(add_props(&mut e, ctx, &[&[FRegular]])?);
    ix.extend(add_cyclic(&mut e, ctx, &[&[AbelianEndoregular], &[FRegular]])?);
    e.relate(Relation::Equiv(ix));
    Ok(e)
}

fn thm_fg_coincide(inst: &Instance) -> Result<Evaluation> {
    let ctx = inst.analysis()?;
    let mut e = Evaluation::new();
    let mut ix = add_props(&mut e, ctx, &[&[WeaklyMorphic, Reduced]])?;
    ix.push(e.clause("R/Ann(M) regular", ctx.annihilator_quotient_regular()?));
    ix.extend(add_props(&mut e, ctx, &[&[WeaklyEndoregular], &[CoReduced], &[FRegular]])?);
    ix.extend(add_cyclic(
        &mut e,
        ctx,
        &[
            &[WeaklyMorphic, Reduced],
            &[Morphic, Reduced],
            &[WeaklyEndoregular],
            &[AbelianEndoregular],
            &[CoReduced],
            &[FRegular],
        ],
    )?);
    e.relate(Relation::Equiv(ix));
    Ok(e)
}

fn prop_fp_coincide(inst: &Instance) -> Result<Evaluation> {
    let ctx = inst.analysis()?;
    let mut e = Evaluation::new();
    let mut ix = add_props(&mut e, ctx, &[&[WeaklyMorphic, Reduced]])?;
    ix.push(e.clause("R/Ann(M) regular", ctx.annihilator_quotient_regular()?));
    ix.extend(add_props(
        &mut e,
        ctx,
        &[
            &[WeaklyEndoregular],
            &[Endoregular],
            &[CoReduced],
            &[FRegular],
            &[StronglyFRegular],
        ],
    )?);
    ix.extend(add_cyclic(
        &mut e,
        ctx,
        &[
            &[WeaklyMorphic, Reduced],
            &[Morphic, Reduced],
            &[WeaklyEndoregular],
            &[Endoregular],
            &[AbelianEndoregular],
            &[CoReduced],
            &[FRegular],
        ],
    )?);
    e.relate(Relation::Equiv(ix));
    Ok(e)
}

fn cor_mult_chain(inst: &Instance) -> Result<Evaluation> {
    let ctx = inst.analysis()?;
    let mut e = Evaluation::new();
    let ix = add_props(
        &mut e,
        ctx,
        &[&[JtRegular], &[AlmostLocallySimple], &[StronglyFRegular], &[FRegular], &[CoReduced]],
    )?;
    e.relate(Relation::Equiv(ix));
    Ok(e)
}

fn prop_mult_all(inst: &Instance) -> Result<Evaluation> {
    let ctx = inst.analysis()?;
    let mut e = Evaluation::new();
    let mut ix = add_props(&mut e, ctx, &[&[WeaklyMorphic, Reduced], &[Morphic, Reduced]])?;
    ix.push(e.clause("R/Ann(M) regular", ctx.annihilator_quotient_regular()?));
    ix.extend(add_props(
        &mut e,
        ctx,
        &[
            &[WeaklyEndoregular],
            &[Endoregular],
            &[AbelianEndoregular],
            &[JtRegular],
            &[CoReduced],
            &[AlmostLocallySimple],
            &[FRegular],
            &[StronglyFRegular],
        ],
    )?);
    ix.extend(add_cyclic(
        &mut e,
        ctx,
        &[
            &[WeaklyMorphic, Reduced],
            &[Morphic, Reduced],
            &[WeaklyEndoregular],
            &[Endoregular],
            &[AbelianEndoregular],
            &[CoReduced],
            &[JtRegular],
            &[FRegular],
            &[StronglyFRegular],
            &[AlmostLocallySimple],
        ],
    )?);
    e.relate(Relation::Equiv(ix));
    Ok(e)
}

fn rem_hierarchy(inst: &Instance) -> Result<Evaluation> {
    let ctx = inst.analysis()?;
    let mut e = Evaluation::new();
    let ix = add_props(
        &mut e,
        ctx,
        &[&[JtRegular], &[AlmostLocallySimple], &[StronglyFRegular], &[FRegular], &[CoReduced]],
    )?;
    e.relate(Relation::Chain(ix));
    Ok(e)
}

fn cor_trash(inst: &Instance) -> Result<Evaluation> {
    let ctx = inst.analysis()?;
    let mut e = Evaluation::new();
    let ix = add_props(
        &mut e,
        ctx,
        &[&[WeaklyEndoregular], &[CoReduced, WeaklyMorphic], &[WeaklyMorphic, Reduced]],
    )?;
    e.relate(Relation::Equiv(ix));
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::super::{verify_theorem, Outcome};
    use super::*;
    use crate::limits::Limits;
    use crate::module::ModuleDescription;
    use crate::ring::RingDescription;

    fn module_instance(r: RingDescription, m: ModuleDescription) -> Instance {
        Instance::with_module(&r, &m, &Limits::default()).unwrap()
    }

    #[test]
    fn ids_are_unique() {
        let mut ids = theorem_ids();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), THEOREMS.len());
    }

    #[test]
    fn thm_we_on_z4_has_all_false_clauses() {
        let inst = module_instance(RingDescription::zmod(4), ModuleDescription::Regular);
        let v = verify_theorem("THM-WE", &inst).unwrap();
        assert_eq!(v.outcome, Outcome::Pass);
        assert!(v.clauses.iter().all(|c| !c.value));
    }

    #[test]
    fn cor_ring_reg_on_z6_all_true() {
        let inst = Instance::ring(&RingDescription::zmod(6), &Limits::default()).unwrap();
        let v = verify_theorem("COR-RING-REG", &inst).unwrap();
        assert_eq!(v.outcome, Outcome::Pass);
        assert!(v.clauses.iter().all(|c| c.value));
    }

    #[test]
    fn thm_abelian_on_plane_over_z2() {
        let two = ModuleDescription::DirectSum {
            summands: vec![ModuleDescription::Regular, ModuleDescription::Regular],
        };
        let inst = module_instance(RingDescription::zmod(2), two);
        let v = verify_theorem("THM-ABELIAN", &inst).unwrap();
        assert_eq!(v.outcome, Outcome::Pass);
        assert!(v.clauses.iter().all(|c| !c.value));
        assert!(inst.analysis().unwrap().holds(Morphic).unwrap());
    }

    #[test]
    fn noncommutative_skips_commutative_theorems() {
        let inst = module_instance(RingDescription::upper_triangular(2, 2), ModuleDescription::Regular);
        let v = verify_theorem("THM-WE", &inst).unwrap();
        assert!(matches!(v.outcome, Outcome::Skipped(_)));
        for id in ["LEM-REDUCED-CHAR", "COR-REDUCED-RING", "COR-STRONGLY-REG-RING", "LEM-PINJ"] {
            assert_eq!(verify_theorem(id, &inst).unwrap().outcome, Outcome::Pass, "{id}");
        }
    }
}
