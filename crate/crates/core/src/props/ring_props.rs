use std::collections::HashSet;
use std::sync::Arc;
use std::time::Instant;

use super::{RingProp, Verdict, Witness};
use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::module::{is_isomorphic, FiniteModule, Submodule};
use crate::ring::{FiniteRing, RingElem};

/// Decides a ring property by exhaustive evaluation.
pub fn evaluate_ring_property(ring: &Arc<FiniteRing>, prop: RingProp, limits: &Limits) -> Result<Verdict> {
    let start = Instant::now();
    let r = ring.as_ref();
    let counterexample = match prop {
        RingProp::Reduced => reduced(r)?,
        RingProp::Reversible => first_pair(r, |a, b| r.mul(a, b) == 0 && r.mul(b, a) != 0)
            .map(|(a, b)| Witness::new().ring("a", a).ring("b", b)),
        RingProp::Ifp => ifp(r),
        RingProp::Regular => r
            .elements()
            .find(|&a| !in_span(r, a, |j| r.mul(r.mul(a, r.basis_element(j)), a)))
            .map(|a| Witness::new().ring("a", a)),
        RingProp::UnitRegular => {
            let units = r.units();
            r.elements()
                .find(|&a| !units.iter().any(|&u| r.mul(r.mul(a, u), a) == a))
                .map(|a| Witness::new().ring("a", a))
        }
        RingProp::StronglyRegular => r
            .elements()
            .find(|&a| {
                let a2 = r.mul(a, a);
                !in_span(r, a, |j| r.mul(a2, r.basis_element(j)))
            })
            .map(|a| Witness::new().ring("a", a)),
        RingProp::MorphicRight => morphic_right(ring, limits)?,
        RingProp::LeftPInjective => r
            .elements()
            .find(|&a| {
                let (l, ar) = (r.annihilators(a).0, r.right_ideal_generated(&[a]));
                r.right_annihilator_of(&l) != ar.elements
            })
            .map(|a| Witness::new().ring("a", a)),
        RingProp::Abelian => r.idempotents().into_iter().find_map(|e| {
            (0..r.basis_len())
                .map(|i| r.basis_element(i))
                .find(|&b| r.mul(e, b) != r.mul(b, e))
                .map(|b| Witness::new().ring("e", e).ring("r", b))
        }),
    };
    let mut v = Verdict::decided(prop.name(), counterexample);
    v.elapsed = start.elapsed();
    Ok(v)
}

/// `x ∈ span{f(0), .., f(k-1)}` in the additive group of `r`.
fn in_span(r: &FiniteRing, x: RingElem, f: impl Fn(usize) -> RingElem) -> bool {
    let gens: Vec<RingElem> = (0..r.basis_len()).map(f).collect();
    r.additive_span(&gens).contains(x)
}

fn first_pair(r: &FiniteRing, bad: impl Fn(RingElem, RingElem) -> bool) -> Option<(RingElem, RingElem)> {
    r.elements()
        .flat_map(|a| r.elements().map(move |b| (a, b)))
        .find(|&(a, b)| bad(a, b))
}

fn ifp(r: &FiniteRing) -> Option<Witness> {
    for a in r.elements() {
        for b in r.elements() {
            if r.mul(a, b) != 0 {
                continue;
            }
            if let Some(x) = r.elements().find(|&x| r.mul(r.mul(a, x), b) != 0) {
                return Some(Witness::new().ring("a", a).ring("b", b).ring("r", x));
            }
        }
    }
    None
}

/// First nonzero nilpotent element, if any.
pub fn nilpotent_witness(r: &FiniteRing) -> Option<RingElem> {
    r.elements().skip(1).find(|&a| {
        let mut p = a;
        for _ in 0..=r.order() {
            if p == 0 {
                return true;
            }
            p = r.mul(p, a);
        }
        false
    })
}

/// Walks `A(a) ⊆ A(a²) ⊆ ...` until it stabilizes and reports the first `a`
/// whose chain grows, with the exponent where it first differs.
fn annihilator_chain_failure(
    r: &FiniteRing,
    ann: impl Fn(RingElem) -> ElemSet,
) -> Option<(RingElem, u64)> {
    for a in r.elements() {
        let base = ann(a);
        let mut prev = base.clone();
        let mut power = a;
        let mut n = 1u64;
        loop {
            power = r.mul(power, a);
            n += 1;
            let next = ann(power);
            if next != base {
                return Some((a, n));
            }
            if next == prev {
                break;
            }
            prev = next;
        }
    }
    None
}

/// `l_R(a^n) = l_R(a)` for all `a` and `n`.
pub fn left_annihilators_stable(r: &FiniteRing) -> bool {
    annihilator_chain_failure(r, |x| r.annihilators(x).0).is_none()
}

/// `r_R(a^n) = r_R(a)` for all `a` and `n`.
pub fn right_annihilators_stable(r: &FiniteRing) -> bool {
    annihilator_chain_failure(r, |x| r.annihilators(x).1.elements).is_none()
}

fn reduced(r: &FiniteRing) -> Result<Option<Witness>> {
    let chain = annihilator_chain_failure(r, |x| r.annihilators(x).1.elements);
    let nil = nilpotent_witness(r);
    if chain.is_some() != nil.is_some() {
        return Err(Error::Inconsistent(
            "annihilator chain and nilpotent scan disagree on reducedness".into(),
        ));
    }
    Ok(nil.map(|a| Witness::new().ring("a", a)))
}

/// First `a` for which `R = aR ⊕ r_R(a)` fails. With `two_sided`, checks
/// `R = (a) ⊕ r_R(a) = (a) ⊕ l_R(a)` for the two-sided ideal `(a)` instead.
pub fn principal_split_failure(r: &FiniteRing, two_sided: bool) -> Option<RingElem> {
    let n = r.order();
    let splits = |x: &ElemSet, y: &ElemSet| x.intersection_len(y) == 1 && x.len() * y.len() == n;
    r.elements().find(|&a| {
        let (l, rt) = r.annihilators(a);
        if two_sided {
            let ideal = r.two_sided_ideal_generated(&[a]);
            !(splits(&ideal, &rt.elements) && splits(&ideal, &l))
        } else {
            !splits(&r.right_ideal_generated(&[a]).elements, &rt.elements)
        }
    })
}

fn morphic_right(ring: &Arc<FiniteRing>, limits: &Limits) -> Result<Option<Witness>> {
    let reg = FiniteModule::regular(ring, limits)?;
    let mut seen = HashSet::new();
    for a in ring.elements() {
        let ar = reg.cyclic_submodule(a);
        let ann = ring.annihilators(a).1;
        if !seen.insert((ar.set().clone(), ann.elements.clone())) {
            continue;
        }
        if !right_morphic_at(&reg, &ar, &Submodule::new(ann.elements, ann.generators), limits)? {
            return Ok(Some(Witness::new().ring("a", a)));
        }
    }
    Ok(None)
}

fn right_morphic_at(reg: &FiniteModule, ar: &Submodule, ann: &Submodule, limits: &Limits) -> Result<bool> {
    if ar.len() * ann.len() != reg.order() {
        return Ok(false);
    }
    let q = reg.quotient(ar, limits)?.module;
    let k = reg.present_submodule(ann, limits)?.module;
    Ok(is_isomorphic(&q, &k, limits)?.holds)
}

/// Re-checks a verdict's witness directly against the defining formula.
pub fn revalidate_ring(ring: &Arc<FiniteRing>, prop: RingProp, verdict: &Verdict, limits: &Limits) -> Result<bool> {
    let r = ring.as_ref();
    let w = match (&verdict.witness, verdict.holds) {
        (None, true) => return Ok(true),
        (Some(w), false) => w,
        _ => return Ok(false),
    };
    let a = w.ring_elem(if prop == RingProp::Abelian { "e" } else { "a" });
    let Some(a) = a else { return Ok(false) };
    Ok(match prop {
        RingProp::Reduced => a != 0 && {
            let mut p = a;
            (0..=r.order()).any(|_| {
                p = r.mul(p, a);
                p == 0
            })
        },
        RingProp::Reversible => {
            let b = w.ring_elem("b").unwrap_or(0);
            r.mul(a, b) == 0 && r.mul(b, a) != 0
        }
        RingProp::Ifp => {
            let (b, x) = (w.ring_elem("b").unwrap_or(0), w.ring_elem("r").unwrap_or(0));
            r.mul(a, b) == 0 && r.mul(r.mul(a, x), b) != 0
        }
        RingProp::Regular => !r.elements().any(|y| r.mul(r.mul(a, y), a) == a),
        RingProp::UnitRegular => !r
            .elements()
            .any(|u| r.inverse(u).is_some() && r.mul(r.mul(a, u), a) == a),
        RingProp::StronglyRegular => !r.elements().any(|y| r.mul(r.mul(a, a), y) == a),
        RingProp::MorphicRight => {
            let reg = FiniteModule::regular(ring, limits)?;
            let ann = r.annihilators(a).1;
            !right_morphic_at(&reg, &reg.cyclic_submodule(a), &Submodule::new(ann.elements, vec![]), limits)?
        }
        RingProp::LeftPInjective => {
            let l: Vec<RingElem> = r.elements().filter(|&x| r.mul(x, a) == 0).collect();
            let rl: Vec<RingElem> = r
                .elements()
                .filter(|&y| l.iter().all(|&x| r.mul(x, y) == 0))
                .collect();
            let mut ar: Vec<RingElem> = r.elements().map(|y| r.mul(a, y)).collect();
            ar.sort_unstable();
            ar.dedup();
            rl != ar
        }
        RingProp::Abelian => {
            let x = w.ring_elem("r").unwrap_or(0);
            r.mul(a, a) == a && r.mul(a, x) != r.mul(x, a)
        }
    })
}
