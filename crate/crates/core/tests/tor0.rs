mod common;

use common::*;
use restricted_lie::module::{hom_w, BeckModule};
use restricted_lie::sequence::{n_ab, tor0_direct, tor0_iso, AbelianizedKernel};
use restricted_lie::{CheckConfig, FpMatrix};

/// Counts linear maps N_ab -> A commuting with the actions and the p-maps by
/// enumerating all matrices.
fn brute_force_hom_count(nab: &AbelianizedKernel, a: &BeckModule) -> u64 {
    let src = &nab.module;
    let f = a.field();
    let (rows, cols) = (a.dim(), src.dim());
    let mut count = 0;
    for flat in f.all_vectors(rows * cols) {
        let phi = FpMatrix::from_data(f, rows, cols, flat).unwrap();
        let commutes = (0..src.algebra().dim()).all(|x| phi.mul(&src.action()[x]) == a.action()[x].mul(&phi));
        if commutes && phi.mul(src.f()) == a.f().mul(&phi) {
            count += 1;
        }
    }
    count
}

#[test]
fn tor0_equals_hom_w_on_the_abelianised_kernel() {
    let cfg = CheckConfig::default();
    let cs = sequence_cases();
    assert!(cs.len() >= 6);
    assert!(cs.iter().any(|c| c.split) && cs.iter().any(|c| !c.split));
    for p in [2, 3] {
        assert!(cs.iter().any(|c| c.seq.field().p() == p));
    }
    for c in &cs {
        assert!(c.seq.verify(&cfg).passed(), "{}", c.name);
        let nab = n_ab(&c.seq, &cfg).unwrap();
        let tor = tor0_direct(&c.seq, &c.module, &cfg).unwrap();
        let hom = hom_w(&nab.module, &c.module).unwrap();
        assert_eq!(tor.dim(), hom.dim(), "{}", c.name);
        let p = c.seq.field().p() as u64;
        assert_eq!(brute_force_hom_count(&nab, &c.module), p.pow(hom.dim() as u32), "{}", c.name);
        let iso = tor0_iso(&c.seq, &nab, &tor, &hom).unwrap();
        assert!(iso.round_trips(), "{}", c.name);
    }
}

#[test]
fn heisenberg_centre_values() {
    // The centre is abelian with zero p-map, so N_ab is the centre itself and
    // Hom_w into a trivial line is one-dimensional.
    let cfg = CheckConfig::default();
    let c = &sequence_cases()[0];
    let nab = n_ab(&c.seq, &cfg).unwrap();
    assert_eq!(nab.dim(), 1);
    assert_eq!(nab.ideal.dim(), 0);
    assert_eq!(tor0_direct(&c.seq, &c.module, &cfg).unwrap().dim(), 1);
}

#[test]
fn n_ab_does_not_depend_on_the_section() {
    let cfg = CheckConfig::default();
    for c in sequence_cases() {
        let base = n_ab(&c.seq, &cfg).unwrap();
        let f = c.seq.field();
        let mut rng = rng(7);
        for _ in 0..5 {
            // Shift the section by a random map into N.
            let (g, b) = (c.seq.total().dim(), c.seq.base().dim());
            let shift = FpMatrix::from_data(f, c.seq.kernel().dim(), b, rand_vec(&mut rng, f, c.seq.kernel().dim() * b)).unwrap();
            let section = c.seq.section().add(&c.seq.inclusion().mul(&shift));
            assert_eq!(section.rows(), g);
            let other = c.seq.with_section(section).unwrap();
            let nab = n_ab(&other, &cfg).unwrap();
            assert_eq!(nab.module, base.module, "{}", c.name);
        }
    }
}
