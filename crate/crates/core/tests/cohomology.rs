mod common;

use common::*;
use proptest::prelude::*;
use restricted_lie::extension::{coboundary, cocycle_space, cohomology_classes, is_cocycle, AbelianExtension, CocycleData};
use restricted_lie::module::BeckModule;
use restricted_lie::{CheckConfig, FpMatrix, RestrictedLieAlgebra};

fn small_pairs() -> Vec<(String, RestrictedLieAlgebra, BeckModule)> {
    let mut out = Vec::new();
    for c in sequence_cases() {
        let bg = c.module.pullback(&c.seq.projection_morphism()).unwrap();
        out.push((format!("{} (base)", c.name), c.seq.base().clone(), c.module.clone()));
        out.push((format!("{} (total)", c.name), c.seq.total().clone(), bg));
    }
    out
}

#[test]
fn linear_cocycles_match_full_verification() {
    let cfg = CheckConfig::default();
    let mut checked = 0;
    for (name, l, b) in small_pairs() {
        let len = CocycleData::flat_len(l.dim(), b.dim());
        if l.field().space_size(len) > 1 << 12 {
            continue;
        }
        let z = cocycle_space(&l, &b).unwrap();
        for v in l.field().all_vectors(len) {
            let data = CocycleData::from_flat(l.dim(), b.dim(), &v).unwrap();
            assert_eq!(is_cocycle(&l, &b, &data, &cfg), z.contains(&v), "{name} at {v:?}");
        }
        checked += 1;
    }
    assert!(checked >= 4);
}

#[test]
fn class_enumeration_is_consistent() {
    let cfg = CheckConfig::default();
    for (name, l, b) in small_pairs() {
        let h = cohomology_classes(&l, &b, &cfg).unwrap();
        assert!(h.is_consistent(), "{name}");
        assert_eq!(h.basis_representatives().len(), h.dim(), "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn coboundaries_are_split_cocycles(case in 0usize..16, seed in any::<u64>()) {
        let cfg = CheckConfig::default();
        let pairs = small_pairs();
        let (_, l, b) = &pairs[case % pairs.len()];
        let f = l.field();
        let mut rng = rng(seed);
        let map = FpMatrix::from_data(f, b.dim(), l.dim(), rand_vec(&mut rng, f, b.dim() * l.dim())).unwrap();
        let data = coboundary(l, b, &map);
        let e = AbelianExtension::build(l, b, data, &cfg).unwrap();
        prop_assert!(e.is_split(&cfg).unwrap());
    }

    #[test]
    fn cocycles_are_closed_under_addition(case in 0usize..16, seed in any::<u64>()) {
        let cfg = CheckConfig::default();
        let pairs = small_pairs();
        let (_, l, b) = &pairs[case % pairs.len()];
        let f = l.field();
        let z = cocycle_space(l, b).unwrap();
        let mut rng = rng(seed);
        let u = z.combine(&rand_vec(&mut rng, f, z.dim()));
        let v = z.combine(&rand_vec(&mut rng, f, z.dim()));
        let sum = CocycleData::from_flat(l.dim(), b.dim(), &f.add_vec(&u, &v)).unwrap();
        prop_assert!(is_cocycle(l, b, &sum, &cfg));
    }
}
