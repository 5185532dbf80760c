mod common;

use common::*;
use proptest::prelude::*;
use restricted_lie::extension::{cohomology_classes, AbelianExtension, CocycleData};
use restricted_lie::module::BeckModule;
use restricted_lie::twofold::{is_equivalent_2, TwoFoldEquivalence, TwoFoldExtension};
use restricted_lie::{CheckConfig, RestrictedLieAlgebra};

fn plane() -> (RestrictedLieAlgebra, BeckModule) {
    let l = RestrictedLieAlgebra::abelian(field(2), 2);
    let b = BeckModule::trivial(&l, 1, None).unwrap();
    (l, b)
}

fn all_extensions(l: &RestrictedLieAlgebra, b: &BeckModule, cfg: &CheckConfig) -> Vec<AbelianExtension> {
    let len = CocycleData::flat_len(l.dim(), b.dim());
    l.field()
        .all_vectors(len)
        .map(|v| AbelianExtension::build(l, b, CocycleData::from_flat(l.dim(), b.dim(), &v).unwrap(), cfg).unwrap())
        .collect()
}

#[test]
fn group_laws_on_the_plane() {
    let cfg = CheckConfig::default();
    let (l, b) = plane();
    let f = l.field();
    let es = all_extensions(&l, &b, &cfg);
    assert_eq!(es.len(), 8);
    let split = AbelianExtension::split(&l, &b, &cfg).unwrap();
    for e in &es {
        assert!(e.baer_sum(&split, &cfg).unwrap().is_equivalent(e, &cfg).unwrap());
        let inv = AbelianExtension::build(&l, &b, e.data().neg(f), &cfg).unwrap();
        assert!(e.baer_sum(&inv, &cfg).unwrap().is_split(&cfg).unwrap());
        for e2 in &es {
            let s12 = e.baer_sum(e2, &cfg).unwrap();
            assert!(s12.is_equivalent(&e2.baer_sum(e, &cfg).unwrap(), &cfg).unwrap());
            for e3 in &es {
                let left = s12.baer_sum(e3, &cfg).unwrap();
                let right = e.baer_sum(&e2.baer_sum(e3, &cfg).unwrap(), &cfg).unwrap();
                assert!(left.is_equivalent(&right, &cfg).unwrap());
            }
        }
    }
}

#[test]
fn distinct_data_on_the_plane_are_inequivalent() {
    // Coboundaries vanish for a trivial module with f = 0 on an abelian algebra
    // with zero p-map, so the 8 data points are 8 distinct classes.
    let cfg = CheckConfig::default();
    let (l, b) = plane();
    let es = all_extensions(&l, &b, &cfg);
    for (i, e) in es.iter().enumerate() {
        for (j, e2) in es.iter().enumerate() {
            assert_eq!(e.is_equivalent(e2, &cfg).unwrap(), i == j);
        }
    }
    assert_eq!(cohomology_classes(&l, &b, &cfg).unwrap().dim(), 3);
}

#[test]
fn trivial_two_fold_is_neutral() {
    let cfg = CheckConfig::default();
    let xs = two_fold_examples(&cfg);
    assert!(xs.len() >= 2);
    for x in &xs {
        assert!(x.verify(&cfg).passed(), "{}", x.verify(&cfg));
        let triv = TwoFoldExtension::trivial(&x.module);
        for sum in [x.baer_sum(&triv, &cfg).unwrap(), triv.baer_sum(x, &cfg).unwrap()] {
            assert!(sum.verify(&cfg).passed());
            let eq = is_equivalent_2(&sum, x, 1, &cfg).unwrap();
            assert!(matches!(eq, TwoFoldEquivalence::Morphism { .. }), "{eq:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn baer_sum_adds_data_over_f3(a in proptest::collection::vec(0u32..3, 3), b in proptest::collection::vec(0u32..3, 3)) {
        let cfg = CheckConfig::default();
        let f = field(3);
        let l = RestrictedLieAlgebra::abelian(f, 2);
        let m = BeckModule::trivial(&l, 1, None).unwrap();
        let e1 = AbelianExtension::build(&l, &m, CocycleData::from_flat(2, 1, &a).unwrap(), &cfg).unwrap();
        let e2 = AbelianExtension::build(&l, &m, CocycleData::from_flat(2, 1, &b).unwrap(), &cfg).unwrap();
        let s = e1.baer_sum(&e2, &cfg).unwrap();
        prop_assert!(s.is_equivalent(&AbelianExtension::build(&l, &m, e1.data().add(e2.data(), f), &cfg).unwrap(), &cfg).unwrap());
        prop_assert!(s.is_equivalent(&e2.baer_sum(&e1, &cfg).unwrap(), &cfg).unwrap());
    }
}
