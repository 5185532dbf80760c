mod common;

use common::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use restricted_lie::standard::{abelian_semilinear, heisenberg, matrix_algebra};
use restricted_lie::{CheckConfig, FpMatrix, RestrictedLieAlgebra};

/// Coefficient of λ^i in (λX + Y)^p, summed over all words in X and Y.
fn word_expansion(x: &FpMatrix, y: &FpMatrix, p: u32) -> Vec<FpMatrix> {
    let f = x.field();
    let m = x.rows();
    let mut out = vec![FpMatrix::zeros(f, m, m); p as usize + 1];
    for word in 0u32..(1 << p) {
        let mut acc = FpMatrix::identity(f, m);
        for bit in 0..p {
            acc = acc.mul(if word >> bit & 1 == 1 { x } else { y });
        }
        let k = word.count_ones() as usize;
        out[k] = out[k].add(&acc);
    }
    out
}

fn oracle_algebras() -> Vec<Linear> {
    vec![
        gl_linear(2, 2),
        gl_linear(3, 2),
        gl_linear(2, 3),
        sl_linear(3, 2),
        sl_linear(5, 2),
        heisenberg_linear(2),
        heisenberg_linear(3),
        heisenberg_linear(5),
        borel_linear(5),
        borel_linear(7),
    ]
}

#[test]
fn heisenberg_matches_its_matrix_model() {
    for p in [2, 3, 5] {
        let f = field(p);
        let model = matrix_algebra(f, vec!["x".into(), "y".into(), "z".into()], &heisenberg_matrices(f)).unwrap();
        assert_eq!(model, heisenberg(f));
    }
}

#[test]
fn s_coefficients_match_word_expansion() {
    for (t, lin) in oracle_algebras().iter().enumerate() {
        let l = &lin.algebra;
        let (f, n, p) = (l.field(), l.dim(), l.p());
        let mut rng = rng(t as u64);
        for _ in 0..100 {
            let (x, y) = (rand_vec(&mut rng, f, n), rand_vec(&mut rng, f, n));
            let s = l.s_coefficients_vec(&x, &y);
            let words = word_expansion(&lin.to_matrix(&x), &lin.to_matrix(&y), p);
            assert_eq!(s.len(), p as usize - 1);
            for (i, si) in s.iter().enumerate() {
                assert_eq!(lin.to_matrix(si), words[i + 1], "{}: s_{} at x={x:?} y={y:?}", lin.name, i + 1);
            }
        }
    }
}

#[test]
fn p_power_is_split_order_independent() {
    let mut algebras: Vec<RestrictedLieAlgebra> = oracle_algebras().into_iter().map(|l| l.algebra).collect();
    let f3 = field(3);
    let twist = FpMatrix::from_rows(f3, 2, &[vec![0, 1], vec![2, 1]]).unwrap();
    algebras.push(abelian_semilinear(f3, &twist).unwrap());
    for (t, l) in algebras.iter().enumerate() {
        let (f, n) = (l.field(), l.dim());
        let mut rng = rng(100 + t as u64);
        for _ in 0..100 {
            let v = rand_vec(&mut rng, f, n);
            let expected = l.p_power_vec(&v);
            // Two-part split at a random point.
            let x = rand_vec(&mut rng, f, n);
            let y = f.sub_vec(&v, &x);
            assert_eq!(l.p_power_split(&x, &y), expected);
            // Coordinate-by-coordinate accumulation in a random order.
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            let mut acc = vec![0; n];
            let mut acc_p = vec![0; n];
            for &i in &order {
                let mut e = vec![0; n];
                e[i] = v[i];
                acc_p = l.p_power_split(&acc, &e);
                acc = f.add_vec(&acc, &e);
                assert_eq!(acc_p, l.p_power_vec(&acc));
            }
            assert_eq!(acc_p, expected);
        }
    }
}

#[test]
fn gl_p_power_is_matrix_power_exhaustively() {
    for (p, n) in [(2, 2), (3, 2), (5, 2), (7, 2), (2, 3), (2, 4)] {
        let lin = gl_linear(p, n);
        let l = &lin.algebra;
        assert!(l.field().space_size(l.dim()) <= 1 << 16);
        for v in l.field().all_vectors(l.dim()) {
            assert_eq!(
                lin.to_matrix(&l.p_power_vec(&v)),
                lin.to_matrix(&v).pow(p as u64),
                "{} at {v:?}",
                lin.name
            );
        }
    }
}

#[test]
fn axiom_suite_and_fault_injection() {
    let cfg = CheckConfig::default();
    let f2 = field(2);
    let mut good: Vec<RestrictedLieAlgebra> = Vec::new();
    good.push(abelian_semilinear(f2, &FpMatrix::from_rows(f2, 2, &[vec![0, 1], vec![1, 1]]).unwrap()).unwrap());
    good.push(abelian_semilinear(field(5), &FpMatrix::identity(field(5), 3)).unwrap());
    for p in [2, 3, 5] {
        good.push(heisenberg(field(p)));
    }
    for (n, p) in [(2, 2), (2, 3), (3, 2)] {
        good.push(gl_linear(p, n).algebra);
        good.push(sl_linear(p, n).algebra);
    }
    for l in &good {
        let r = l.verify_restricted(&cfg);
        assert!(r.passed(), "{:?}\n{r}", l.labels());
        // Any linear p-map is valid on an abelian algebra; otherwise some shifted image must be rejected.
        let mut caught = false;
        for i in 0..l.dim() {
            let mut pmap = l.pmap_images().to_vec();
            let j = (i + 1) % l.dim();
            pmap[i][j] = l.field().add(pmap[i][j], 1);
            if let Ok(bad) = l.with_pmap(pmap) {
                if !bad.verify_restricted(&cfg).passed() {
                    caught = true;
                    break;
                }
            } else {
                caught = true;
                break;
            }
        }
        let abelian = l.is_abelian();
        assert!(caught || abelian, "no perturbation of {:?} was rejected", l.labels());
    }
}

proptest! {
    #[test]
    fn additivity_on_center_of_heisenberg(a in 0u32..5, b in 0u32..5, c in 0u32..5, d in 0u32..5) {
        let l = heisenberg(field(5));
        let u = vec![a, b, 0];
        let w = vec![0, 0, c + d];
        let lhs = l.p_power_vec(&field(5).add_vec(&u, &w));
        let rhs = field(5).add_vec(&l.p_power_vec(&u), &l.p_power_vec(&w));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn p_power_is_p_homogeneous(p_idx in 0usize..3, seed in any::<u64>(), c in 1u32..7) {
        let p = [2u32, 3, 5][p_idx];
        let lin = gl_linear(p, 2);
        let l = &lin.algebra;
        let f = l.field();
        let mut rng = rng(seed);
        let v = rand_vec(&mut rng, f, l.dim());
        let c = c % p;
        let lhs = l.p_power_vec(&f.scale_vec(c, &v));
        let rhs = f.scale_vec(f.pow(c, p as u64), &l.p_power_vec(&v));
        prop_assert_eq!(lhs, rhs);
    }
}
