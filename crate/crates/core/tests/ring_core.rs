mod common;

use common::naive::{rings_isomorphic, NRing};
use common::{ring, zmod};
use modreg::limits::Limits;
use modreg::{build_ring, build_ring_with, Error, RingDescription};
use proptest::prelude::*;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn small_ring() -> impl Strategy<Value = RingDescription> {
    prop_oneof![
        (2u64..=24).prop_map(RingDescription::zmod),
        (2u64..=6, 2u64..=6).prop_map(|(a, b)| RingDescription::product(vec![
            RingDescription::zmod(a),
            RingDescription::zmod(b)
        ])),
        (prop::sample::select(vec![2u64, 3, 4]), prop::collection::vec(0u64..4, 1..=2)).prop_map(|(n, mut c)| {
            c.iter_mut().for_each(|x| *x %= n);
            c.push(1);
            RingDescription::poly_quotient(n, c)
        }),
        prop::sample::select(vec![(2u64, 1u64), (2, 2), (3, 2), (4, 2), (2, 3)])
            .prop_map(|(q, s)| RingDescription::upper_triangular(q, s)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms_hold_exhaustively(d in small_ring()) {
        let r = build_ring(&d).unwrap();
        let n = r.order();
        prop_assert!(n <= 256);
        for x in r.elements() {
            prop_assert_eq!(r.mul(r.one(), x), x);
            prop_assert_eq!(r.mul(x, r.one()), x);
            prop_assert_eq!(r.add(x, r.neg(x)), r.zero());
            for y in r.elements() {
                prop_assert_eq!(r.add(x, y), r.add(y, x));
                for z in r.elements() {
                    prop_assert_eq!(r.mul(r.mul(x, y), z), r.mul(x, r.mul(y, z)));
                    prop_assert_eq!(r.mul(x, r.add(y, z)), r.add(r.mul(x, y), r.mul(x, z)));
                    prop_assert_eq!(r.mul(r.add(x, y), z), r.add(r.mul(x, z), r.mul(y, z)));
                }
            }
        }
    }

    #[test]
    fn enumeration_is_lexicographic(d in small_ring()) {
        let r = build_ring(&d).unwrap();
        let coeffs: Vec<Vec<u64>> = r.elements().map(|x| r.coeffs(x)).collect();
        prop_assert!(coeffs.windows(2).all(|w| w[0] < w[1]));
        for x in r.elements() {
            prop_assert_eq!(r.from_coeffs(&r.coeffs(x)).unwrap(), x);
        }
        let size: u64 = r.additive_orders().iter().product();
        prop_assert_eq!(size as usize, r.order());
    }

    #[test]
    fn commutative_rings_have_equal_annihilators(d in small_ring()) {
        let r = build_ring(&d).unwrap();
        if r.is_commutative() {
            for a in r.elements() {
                let (l, rr) = r.annihilators(a);
                prop_assert_eq!(&l, &rr.elements);
            }
        }
    }

    #[test]
    fn idempotents_and_units_are_exact(d in small_ring()) {
        let r = build_ring(&d).unwrap();
        let ids: Vec<_> = r.elements().filter(|&e| r.mul(e, e) == e).collect();
        prop_assert_eq!(r.idempotents(), ids);
        let units: Vec<_> = r
            .elements()
            .filter(|&u| r.elements().any(|v| r.mul(u, v) == r.one() && r.mul(v, u) == r.one()))
            .collect();
        prop_assert_eq!(r.units(), units);
    }

    #[test]
    fn local_decomposition_invariants(d in small_ring()) {
        let r = build_ring(&d).unwrap();
        match r.local_decomposition(&Limits::default()) {
            Err(e) => prop_assert!(!r.is_commutative() && e == Error::NotCommutative),
            Ok(dec) => {
                let es = &dec.idempotents;
                let sum = es.iter().fold(r.zero(), |acc, &e| r.add(acc, e));
                prop_assert_eq!(sum, r.one());
                for (i, &e) in es.iter().enumerate() {
                    prop_assert_eq!(r.mul(e, e), e);
                    for &f in &es[i + 1..] {
                        prop_assert_eq!(r.mul(e, f), r.zero());
                    }
                    // Primitive: e is not a sum of two nonzero orthogonal idempotents.
                    for f in r.idempotents() {
                        let g = r.sub(e, f);
                        let split = f != r.zero() && g != r.zero() && r.mul(f, e) == f && r.mul(f, g) == r.zero();
                        prop_assert!(!split);
                    }
                }
                let orders: usize = dec.factors.iter().map(|f| f.order()).product();
                prop_assert_eq!(orders, r.order());
                for f in &dec.factors {
                    // Local: the non-units form an additive subgroup closed under multiplication.
                    let units = f.units();
                    let non: Vec<_> = f.elements().filter(|x| !units.contains(x)).collect();
                    for &x in &non {
                        for &y in &non {
                            prop_assert!(non.contains(&f.add(x, y)));
                        }
                        for y in f.elements() {
                            prop_assert!(non.contains(&f.mul(x, y)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn coprime_products_are_cyclic(m in 2u64..=7, n in 2u64..=7) {
        let p = NRing::from_ring(&ring(&RingDescription::product(vec![
            RingDescription::zmod(m),
            RingDescription::zmod(n),
        ])));
        let z = NRing::from_ring(&zmod(m * n));
        prop_assert_eq!(rings_isomorphic(&p, &z), gcd(m, n) == 1);
    }
}

#[test]
fn worked_examples() {
    let z4 = zmod(4);
    assert_eq!(z4.additive_orders(), &[4]);
    assert_eq!(z4.coeffs(z4.one()), vec![1]);
    assert_eq!(z4.mul(2, 2), 0);
    assert_eq!(z4.elements().collect::<Vec<_>>(), vec![0, 1, 2, 3]);
    assert_eq!(z4.annihilators(2).1.elements.to_vec(), vec![0, 2]);
    assert_eq!(z4.units(), vec![1, 3]);
    assert_eq!(z4.idempotents(), vec![0, 1]);

    let z6 = zmod(6);
    assert_eq!(z6.mul(2, 5), 4);
    assert_eq!(z6.annihilators(3).1.elements.to_vec(), vec![0, 2, 4]);
    assert_eq!(z6.annihilators(1).1.elements.to_vec(), vec![0]);
    assert_eq!(z6.idempotents(), vec![0, 1, 3, 4]);
    let d = z6.local_decomposition(&Limits::default()).unwrap();
    assert_eq!(d.idempotents, vec![3, 4]);

    let ut = ring(&RingDescription::upper_triangular(2, 2));
    assert_eq!(ut.order(), 8);
    assert!(!ut.is_commutative());
    assert!(!NRing::from_ring(&ut).is_commutative());

    let f4 = ring(&RingDescription::poly_quotient(2, vec![1, 1, 1]));
    assert_eq!(f4.units().len(), 3);
    let f4d = f4.local_decomposition(&Limits::default()).unwrap();
    assert_eq!(f4d.idempotents, vec![f4.one()]);
}

#[test]
fn invalid_descriptions_are_rejected() {
    assert!(matches!(build_ring(&RingDescription::zmod(0)), Err(Error::InvalidParameter(_))));
    assert!(matches!(
        build_ring(&RingDescription::poly_quotient(2, vec![1, 1, 0])),
        Err(Error::InvalidParameter(_))
    ));
    assert!(matches!(
        build_ring(&RingDescription::upper_triangular(6, 2)),
        Err(Error::InvalidParameter(_))
    ));
    // The declared unit x fails 1_R * b_0 = b_0.
    let broken = RingDescription::StructureConstants {
        additive_orders: vec![2, 2],
        mul_table: vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![0, 0]]],
        one: vec![0, 1],
    };
    assert!(matches!(build_ring(&broken), Err(Error::InvalidStructure(_))));
    // (b2 b1) b1 = b2 but b2 (b1 b1) = 0.
    let nonassoc = RingDescription::StructureConstants {
        additive_orders: vec![2, 2, 2],
        mul_table: vec![
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
            vec![vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]],
            vec![vec![0, 0, 1], vec![0, 1, 0], vec![0, 0, 0]],
        ],
        one: vec![1, 0, 0],
    };
    assert!(matches!(build_ring(&nonassoc), Err(Error::InvalidStructure(_))));
}

#[test]
fn size_cap_is_a_clean_error() {
    let tiny = Limits {
        max_elements: 10,
        ..Limits::default()
    };
    assert!(matches!(
        build_ring_with(&RingDescription::zmod(11), &tiny),
        Err(Error::ResourceLimit(_))
    ));
    assert!(build_ring_with(&RingDescription::zmod(10), &tiny).is_ok());
}
