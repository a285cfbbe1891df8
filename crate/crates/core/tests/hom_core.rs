mod common;

use common::naive::{rings_isomorphic, NModule, NRing};
use common::{f2_plane, module, z2_plus_z4, zmod};
use modreg::bitset::ElemSet;
use modreg::hom::{cogenerates, end_ring, hom_module, hom_module_exhaustive, reject, trace, ModuleHom};
use modreg::limits::Limits;
use modreg::props::ModuleAnalysis;
use modreg::{FiniteModule, ModProp, ModuleDescription, RingProp};
use proptest::prelude::*;

fn lim() -> Limits {
    Limits::default()
}

fn catalog_modules(max: usize) -> Vec<(String, FiniteModule)> {
    common::default_catalog()
        .rings
        .into_iter()
        .flat_map(|r| {
            let label = r.description.label();
            r.modules
                .into_iter()
                .map(move |(d, m)| (format!("{label} :: {}", d.label()), m))
        })
        .filter(|(_, m)| m.order() <= max)
        .collect()
}

#[test]
fn hom_counts() {
    let m = z2_plus_z4();
    assert_eq!(hom_module(&m, &m, &lim()).unwrap().len(), 32);
    assert_eq!(end_ring(&m, &lim()).unwrap().order(), 32);

    let z4 = zmod(4);
    let z2 = module(&z4, &ModuleDescription::CyclicQuotient { ideal_generators: vec![vec![2]] });
    assert_eq!(hom_module(&z2, &z2, &lim()).unwrap().len(), 2);
    let zero = FiniteModule::zero(m.ring());
    let to_zero = hom_module(&m, &zero, &lim()).unwrap();
    assert_eq!(to_zero.len(), 1);
    assert!(to_zero[0].is_zero());
}

#[test]
fn endomorphism_ring_examples() {
    let z4 = zmod(4);
    let reg = module(&z4, &ModuleDescription::Regular);
    let s = end_ring(&reg, &lim()).unwrap();
    assert!(rings_isomorphic(&NRing::from_ring(s.ring()), &NRing::from_ring(&z4)));

    let p = f2_plane();
    let s = end_ring(&p, &lim()).unwrap();
    assert_eq!(s.order(), 16);
    assert!(!s.ring().is_commutative());

    let z2 = module(&z4, &ModuleDescription::CyclicQuotient { ideal_generators: vec![vec![2]] });
    assert_eq!(end_ring(&z2, &lim()).unwrap().order(), 2);
}

#[test]
fn kernel_and_image_examples() {
    let p = f2_plane();
    let id = ModuleHom::identity(&p);
    assert!(id.kernel().is_zero());
    assert_eq!(id.image(), p.whole());
    let z = ModuleHom::zero(&p, &p);
    assert_eq!(z.kernel(), p.whole());
    assert!(z.image().is_zero());
    // (x, y) -> (y, 0)
    let swap = ModuleHom::from_matrix(&p, &p, vec![vec![0, 0], vec![1, 0]]).unwrap();
    let axis = p.cyclic_submodule(p.from_coeffs(&[1, 0]).unwrap());
    assert_eq!(swap.kernel(), axis);
    assert_eq!(swap.image(), axis);
}

#[test]
fn annihilator_examples() {
    for (_, m) in catalog_modules(16) {
        let s = end_ring(&m, &lim()).unwrap();
        let all = ElemSet::full(m.order());
        assert_eq!(s.left_annihilator_in_s(&all).to_vec(), vec![s.element_of(&ModuleHom::zero(&m, &m)).unwrap()]);
        let id = s.element_of(&ModuleHom::identity(&m)).unwrap();
        assert_eq!(s.r_m_of_set(&ElemSet::from_indices(s.order(), [id])).to_vec(), vec![0]);
    }
}

#[test]
fn trace_reject_examples() {
    for (_, m) in catalog_modules(16) {
        assert!(trace(&m, &m.zero_submodule(), &lim()).unwrap().is_zero());
        assert!(reject(&m, &m, &lim()).unwrap().is_zero());
        assert!(cogenerates(&m, &m, &lim()).unwrap());
    }
}

#[test]
fn morphic_modules_satisfy_the_annihilator_identities() {
    let mut seen = 0;
    for (label, m) in catalog_modules(32) {
        let ctx = ModuleAnalysis::new(m.clone(), lim());
        if m.is_trivial() || !ctx.holds(ModProp::Morphic).unwrap() {
            continue;
        }
        seen += 1;
        let s = end_ring(&m, &lim()).unwrap();
        let end_reduced = ctx.end_ring_property(RingProp::Reduced).unwrap().holds;
        for (i, phi) in s.homs().iter().enumerate() {
            let img = phi.image();
            let l = s.left_annihilator_in_s(img.set());
            assert_eq!(&s.r_m_of_set(&l), img.set(), "{label}");
            let q = m.quotient(&img, &lim()).unwrap().module;
            assert!(cogenerates(&m, &q, &lim()).unwrap(), "{label}");
            if end_reduced {
                let sq = s.ring().mul(i, i);
                assert_eq!(s.hom(sq).kernel(), phi.kernel(), "{label}");
            }
        }
    }
    assert!(seen > 20);
}

#[test]
fn end_of_regular_module_is_the_ring() {
    let catalog = common::default_catalog();
    for r in &catalog.rings {
        if !r.ring.is_commutative() || r.ring.order() > 12 {
            continue;
        }
        let reg = FiniteModule::regular(&r.ring, &lim()).unwrap();
        let s = end_ring(&reg, &lim()).unwrap();
        assert!(
            rings_isomorphic(&NRing::from_ring(s.ring()), &NRing::from_ring(&r.ring)),
            "{}",
            r.description.label()
        );
    }
}

#[test]
fn scalar_maps_form_a_commutative_subring_with_kernel_the_annihilator() {
    for (label, m) in catalog_modules(32) {
        let r = m.ring().clone();
        if !r.is_commutative() {
            continue;
        }
        let s = end_ring(&m, &lim()).unwrap();
        let scal: Vec<usize> = r
            .elements()
            .map(|a| s.element_of(&ModuleHom::scalar(&m, a).unwrap()).unwrap())
            .collect();
        for a in r.elements() {
            for b in r.elements() {
                assert_eq!(s.ring().mul(scal[a], scal[b]), scal[r.mul(a, b)], "{label}");
                assert_eq!(s.ring().add(scal[a], scal[b]), scal[r.add(a, b)], "{label}");
                assert_eq!(s.ring().mul(scal[a], scal[b]), s.ring().mul(scal[b], scal[a]));
            }
        }
        let zero = s.element_of(&ModuleHom::zero(&m, &m)).unwrap();
        let kernel: Vec<usize> = r.elements().filter(|&a| scal[a] == zero).collect();
        assert_eq!(kernel, m.annihilator().to_vec(), "{label}");
    }
}

#[test]
fn idempotent_scalars_of_reduced_modules_are_idempotent_endomorphisms() {
    for (label, m) in catalog_modules(32) {
        let ctx = ModuleAnalysis::new(m.clone(), lim());
        if !ctx.holds(ModProp::Reduced).unwrap() {
            continue;
        }
        for e in m.ring().idempotents() {
            let h = ModuleHom::scalar(&m, e).unwrap_or_else(|| panic!("{label}: e={e}"));
            assert_eq!(h.compose(&h), h, "{label}");
        }
    }
}

#[test]
fn structural_and_exhaustive_hom_routes_agree() {
    let mods = catalog_modules(16);
    for (la, a) in &mods {
        for (lb, b) in &mods {
            if !std::sync::Arc::ptr_eq(a.ring(), b.ring()) {
                continue;
            }
            let mut x = hom_module(a, b, &lim()).unwrap();
            let mut y = hom_module_exhaustive(a, b, &lim()).unwrap();
            x.sort_by(|p, q| p.matrix().cmp(q.matrix()));
            y.sort_by(|p, q| p.matrix().cmp(q.matrix()));
            assert_eq!(x, y, "{la} -> {lb}");
            assert_eq!(x.len(), NModule::from_module(a).homs_to(&NModule::from_module(b)).len());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn end_ring_arithmetic_is_faithful(which in 0usize..4, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let m = [z2_plus_z4(), f2_plane(), module(&zmod(6), &ModuleDescription::Regular), {
            let r = zmod(4);
            modreg::build_module(&r, &ModuleDescription::DirectSum {
                summands: vec![ModuleDescription::Regular, ModuleDescription::CyclicQuotient { ideal_generators: vec![vec![2]] }],
            }).unwrap()
        }][which].clone();
        let s = end_ring(&m, &lim()).unwrap();
        let (x, y) = (i.index(s.order()), j.index(s.order()));
        let (f, g) = (s.hom(x), s.hom(y));
        let prod = s.hom(s.ring().mul(x, y));
        let sum = s.hom(s.ring().add(x, y));
        for v in m.elements() {
            prop_assert_eq!(prod.apply(v), f.apply(g.apply(v)));
            prop_assert_eq!(sum.apply(v), m.add(f.apply(v), g.apply(v)));
        }
        prop_assert_eq!(s.hom(s.ring().one()), &ModuleHom::identity(&m));
    }
}
