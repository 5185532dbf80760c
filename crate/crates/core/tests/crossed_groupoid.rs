mod common;

use common::*;
use restricted_lie::crossed::{check_crossed_isomorphism, round_trip_isomorphism, CrossedModule};
use restricted_lie::standard::heisenberg;
use restricted_lie::{CheckConfig, FpMatrix};

#[test]
fn round_trip_recovers_every_example() {
    let cfg = CheckConfig::default();
    let xs = crossed_examples();
    assert!(xs.len() >= 5);
    for (name, x) in &xs {
        assert!(x.verify(&cfg).passed(), "{name}: {}", x.verify(&cfg));
        let g = x.to_groupoid(&cfg).unwrap();
        let r = g.verify(&cfg);
        assert!(r.passed(), "{name}: {r}");
        let back = g.to_crossed_module(&cfg).unwrap();
        let (phi_m, phi_n) = round_trip_isomorphism(x, &back).unwrap();
        let iso = check_crossed_isomorphism(x, &back, &phi_m, &phi_n, &cfg).unwrap();
        assert!(iso.passed(), "{name}: {iso}");
        // The recovered boundary is the target map restricted to ker s, read in matching bases.
        assert_eq!(back.mu().matrix().mul(&phi_m), phi_n.mul(x.mu().matrix()), "{name}");
    }
}

#[test]
fn perturbed_composition_is_rejected() {
    let cfg = CheckConfig::default();
    for (name, x) in crossed_examples() {
        let g = x.to_groupoid(&cfg).unwrap();
        let comp = g.composition();
        let mut flipped = false;
        'search: for r in 0..comp.rows() {
            for c in 0..comp.cols() {
                if !g.with_perturbed_composition(r, c, 1).verify(&cfg).passed() {
                    flipped = true;
                    break 'search;
                }
            }
        }
        assert!(flipped, "{name}: no perturbation of the composition was caught");
    }
}

#[test]
fn perturbed_action_is_rejected() {
    let cfg = CheckConfig::default();
    let h2 = heisenberg(field(2));
    let x = CrossedModule::from_ideal(&h2, &h2.center()).unwrap();
    let mut eta = x.eta().to_vec();
    eta[0] = FpMatrix::identity(field(2), 1);
    let bad = CrossedModule::new(x.m().clone(), x.n().clone(), x.mu().matrix().clone(), eta).unwrap();
    assert!(!bad.verify(&cfg).passed());
    assert!(bad.to_groupoid(&cfg).is_err());
}

#[test]
fn discrete_groupoid_gives_zero_crossed_module() {
    let cfg = CheckConfig::default();
    let h2 = heisenberg(field(2));
    let d = restricted_lie::crossed::InternalGroupoid::discrete(&h2);
    assert!(d.verify(&cfg).passed());
    let back = d.to_crossed_module(&cfg).unwrap();
    assert_eq!(back.m().dim(), 0);
}
