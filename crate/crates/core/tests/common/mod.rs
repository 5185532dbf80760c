#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use restricted_lie::algebra::direct_product;
use restricted_lie::check::{random_vector, CheckConfig};
use restricted_lie::crossed::CrossedModule;
use restricted_lie::extension::{cohomology_classes, AbelianExtension};
use restricted_lie::linalg::Subspace;
use restricted_lie::module::{BeckModule, RestrictedModule};
use restricted_lie::sequence::{extension_to_two_fold, forget_augmentation, ShortExactSequence};
use restricted_lie::standard::{gl_basis, heisenberg, matrix_algebra, sl_basis};
use restricted_lie::twofold::TwoFoldExtension;
use restricted_lie::{FpMatrix, PrimeField, RestrictedLieAlgebra};

pub fn field(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

pub fn rng(tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x7e57_0000 + tag)
}

pub fn rand_vec(rng: &mut ChaCha8Rng, f: PrimeField, n: usize) -> Vec<u32> {
    random_vector(rng, f, n)
}

fn unit(f: PrimeField, n: usize, a: usize, b: usize) -> FpMatrix {
    let mut m = FpMatrix::zeros(f, n, n);
    m.set(a, b, 1);
    m
}

/// Strictly upper triangular 3x3 matrices: x = E12, y = E23, z = E13.
pub fn heisenberg_matrices(f: PrimeField) -> Vec<FpMatrix> {
    vec![unit(f, 3, 0, 1), unit(f, 3, 1, 2), unit(f, 3, 0, 2)]
}

/// A restricted algebra given by basis matrices, with the matrices kept so
/// tests can compute in the ambient associative algebra.
pub struct Linear {
    pub name: String,
    pub algebra: RestrictedLieAlgebra,
    pub mats: Vec<FpMatrix>,
}

impl Linear {
    pub fn to_matrix(&self, v: &[u32]) -> FpMatrix {
        let f = self.algebra.field();
        let m = self.mats[0].rows();
        let mut acc = FpMatrix::zeros(f, m, m);
        for (c, b) in v.iter().zip(&self.mats) {
            acc = acc.add(&b.scale(*c));
        }
        acc
    }
}

pub fn gl_linear(p: u32, n: usize) -> Linear {
    let f = field(p);
    let (labels, mats) = gl_basis(f, n);
    Linear { name: format!("gl{n} over F_{p}"), algebra: matrix_algebra(f, labels, &mats).unwrap(), mats }
}

pub fn sl_linear(p: u32, n: usize) -> Linear {
    let f = field(p);
    let (labels, mats) = sl_basis(f, n);
    Linear { name: format!("sl{n} over F_{p}"), algebra: matrix_algebra(f, labels, &mats).unwrap(), mats }
}

pub fn heisenberg_linear(p: u32) -> Linear {
    let f = field(p);
    Linear { name: format!("heisenberg over F_{p}"), algebra: heisenberg(f), mats: heisenberg_matrices(f) }
}

/// Borel subalgebra of gl_2: E11, E12, E22.
pub fn borel_linear(p: u32) -> Linear {
    let f = field(p);
    let mats = vec![unit(f, 2, 0, 0), unit(f, 2, 0, 1), unit(f, 2, 1, 1)];
    let labels = vec!["a".into(), "e".into(), "d".into()];
    Linear { name: format!("borel over F_{p}"), algebra: matrix_algebra(f, labels, &mats).unwrap(), mats }
}

pub struct Case {
    pub name: &'static str,
    pub seq: ShortExactSequence,
    pub module: BeckModule,
    pub split: bool,
}

fn ideal_seq(l: &RestrictedLieAlgebra, gens: &[Vec<u32>]) -> ShortExactSequence {
    let s = Subspace::from_generators(l.field(), l.dim(), gens.iter().cloned());
    ShortExactSequence::from_ideal(l, &s).unwrap()
}

/// Short exact sequences with a module over the base, over F_2 and F_3.
pub fn sequence_cases() -> Vec<Case> {
    let f2 = field(2);
    let f3 = field(3);
    let mut out = Vec::new();

    let h2 = heisenberg(f2);
    let seq = ShortExactSequence::from_ideal(&h2, &h2.center()).unwrap();
    let triv = BeckModule::trivial(seq.base(), 1, None).unwrap();
    out.push(Case { name: "heisenberg/F2 over its centre, trivial A", seq: seq.clone(), module: triv, split: false });
    let nil = FpMatrix::from_rows(f2, 2, &[vec![0, 1], vec![0, 0]]).unwrap();
    let rm = RestrictedModule::new(seq.base().clone(), 2, vec![nil, FpMatrix::zeros(f2, 2, 2)]).unwrap();
    let twisted = BeckModule::new(rm, FpMatrix::zeros(f2, 2, 2)).unwrap();
    out.push(Case { name: "heisenberg/F2 over its centre, nilpotent A", seq, module: twisted, split: false });

    let h3 = heisenberg(f3);
    let seq = ShortExactSequence::from_ideal(&h3, &h3.center()).unwrap();
    let m = BeckModule::trivial(seq.base(), 2, None).unwrap();
    out.push(Case { name: "heisenberg/F3 over its centre, trivial A^2", seq, module: m, split: false });

    let ab1 = RestrictedLieAlgebra::abelian(f2, 1);
    let seq = ShortExactSequence::product(&ab1, &h2).unwrap();
    let m = BeckModule::trivial(&ab1, 1, Some(FpMatrix::identity(f2, 1))).unwrap();
    out.push(Case { name: "F2 x heisenberg/F2, A with f = id", seq, module: m, split: true });

    let gl2 = gl_linear(3, 2).algebra;
    let seq = ideal_seq(&gl2, &[vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![1, 0, 0, 2]]);
    let m = BeckModule::trivial(seq.base(), 1, Some(FpMatrix::identity(f3, 1))).unwrap();
    out.push(Case { name: "sl2 -> gl2 -> F over F3", seq, module: m, split: true });

    let gl2_2 = gl_linear(2, 2).algebra;
    let seq = ShortExactSequence::from_ideal(&gl2_2, &gl2_2.center()).unwrap();
    let m = BeckModule::trivial(seq.base(), 1, None).unwrap();
    out.push(Case { name: "scalars -> gl2 -> pgl2 over F2", seq, module: m, split: false });

    let borel = borel_linear(3).algebra;
    let seq = ideal_seq(&borel, &[vec![0, 1, 0]]);
    let m = BeckModule::trivial(seq.base(), 1, None).unwrap();
    out.push(Case { name: "nilradical -> borel -> torus over F3", seq, module: m, split: true });

    let ab2 = RestrictedLieAlgebra::abelian(f3, 2);
    let seq = ShortExactSequence::product(&ab2, &h3).unwrap();
    let m = BeckModule::trivial(&ab2, 1, None).unwrap();
    out.push(Case { name: "F3^2 x heisenberg/F3", seq, module: m, split: true });
    out
}


pub fn ideal(l: &RestrictedLieAlgebra, gens: &[Vec<u32>]) -> Subspace {
    Subspace::from_generators(l.field(), l.dim(), gens.iter().cloned())
}

/// A Beck module viewed as a crossed module `A -> L` with zero boundary.
pub fn module_crossed(b: &BeckModule) -> CrossedModule {
    let f = b.field();
    let a = RestrictedLieAlgebra::abelian(f, b.dim()).with_pmap(b.f().columns()).unwrap();
    let mu = FpMatrix::zeros(f, b.algebra().dim(), b.dim());
    CrossedModule::new(a, b.algebra().clone(), mu, b.action().to_vec()).unwrap()
}

/// Crossed modules over F_2 and F_3: ideal inclusions and Beck modules with zero boundary.
pub fn crossed_examples() -> Vec<(String, CrossedModule)> {
    let f2 = field(2);
    let h2 = heisenberg(f2);
    let h3 = heisenberg(field(3));
    let gl2_3 = gl_linear(3, 2).algebra;
    let gl2_2 = gl_linear(2, 2).algebra;
    let gl3_2 = gl_linear(2, 3).algebra;
    let borel = borel_linear(3).algebra;
    let mut out = vec![
        ("centre of heisenberg/F2".to_string(), CrossedModule::from_ideal(&h2, &h2.center()).unwrap()),
        ("heisenberg/F3 in itself".into(), CrossedModule::from_ideal(&h3, &Subspace::full(h3.field(), 3)).unwrap()),
        // sl_2 inside gl_2: the off-diagonal units and H = E11 - E22.
        (
            "sl2 in gl2/F3".into(),
            CrossedModule::from_ideal(&gl2_3, &ideal(&gl2_3, &[vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![1, 0, 0, 2]])).unwrap(),
        ),
        ("scalars in gl2/F2".into(), CrossedModule::from_ideal(&gl2_2, &gl2_2.center()).unwrap()),
        ("scalars in gl3/F2".into(), CrossedModule::from_ideal(&gl3_2, &gl3_2.center()).unwrap()),
        ("nilradical of borel/F3".into(), CrossedModule::from_ideal(&borel, &ideal(&borel, &[vec![0, 1, 0]])).unwrap()),
    ];
    let b = BeckModule::trivial(&h2, 2, Some(FpMatrix::from_rows(f2, 2, &[vec![0, 1], vec![0, 0]]).unwrap())).unwrap();
    out.push(("trivial module over heisenberg/F2".into(), module_crossed(&b)));
    let ab = RestrictedLieAlgebra::abelian(f2, 2);
    let nil = FpMatrix::from_rows(f2, 2, &[vec![0, 1], vec![0, 0]]).unwrap();
    let rm = RestrictedModule::new(ab.clone(), 2, vec![nil, FpMatrix::zeros(f2, 2, 2)]).unwrap();
    out.push(("nilpotent module over F2^2".into(), module_crossed(&BeckModule::new(rm, FpMatrix::zeros(f2, 2, 2)).unwrap())));
    out
}


/// `0 -> span{z} -> H -> F_2^2 × R -> R -> 0`, `μ` the quotient map into the
/// first factor, `N -> R` the second projection.
pub fn heisenberg_two_fold() -> TwoFoldExtension {
    let f = field(2);
    let h = heisenberg(f);
    let q = h.quotient_algebra(&h.center()).unwrap();
    let r = RestrictedLieAlgebra::abelian(f, 1);
    let n = direct_product(&q.algebra, &r).unwrap();
    let mut eta: Vec<FpMatrix> = (0..2).map(|i| h.left_matrix(&q.quotient.section().column(i))).collect();
    eta.push(FpMatrix::zeros(f, 3, 3));
    TwoFoldExtension {
        module: BeckModule::trivial(&r, 1, None).unwrap(),
        m: h.clone(),
        n,
        incl: FpMatrix::from_rows(f, 1, &[vec![0], vec![0], vec![1]]).unwrap(),
        mu: q.quotient.projection().vstack(&FpMatrix::zeros(f, 1, 3)),
        proj: FpMatrix::from_rows(f, 3, &[vec![0, 0, 1]]).unwrap(),
        eta,
        r,
        fixed_augmentation: false,
    }
}

/// Two-fold extensions with their augmentation forgotten.
pub fn two_fold_examples(cfg: &CheckConfig) -> Vec<TwoFoldExtension> {
    let mut out = vec![heisenberg_two_fold()];
    let cases = sequence_cases();
    for c in &cases[..2] {
        let bg = c.module.pullback(&c.seq.projection_morphism()).unwrap();
        let classes = cohomology_classes(c.seq.total(), &bg, cfg).unwrap();
        let r = classes.basis_representatives().into_iter().next().unwrap();
        let e = AbelianExtension::build(c.seq.total(), &bg, classes.data(&r), cfg).unwrap();
        out.push(forget_augmentation(&extension_to_two_fold(&c.seq, &c.module, &e).unwrap().extension));
    }
    out
}

