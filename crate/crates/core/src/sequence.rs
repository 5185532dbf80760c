//! Short exact sequences `0 -> N -> g -> b -> 0`, the Beck `b`-module
//! `N_ab = N / <[N, N]>_p`, and the maps between the terms of the low-degree
//! exact sequences attached to a Beck module `A` over `b`.

use crate::algebra::{direct_product, pullback, semidirect, Pullback, RestrictedLieAlgebra, RestrictedMorphism};
use crate::check::{Check, CheckConfig, Mode, Report};
use crate::derivation::{add_map_constraint, beck_der, DerivationSpace};
use crate::error::{dim_err, Error, Result};
use crate::extension::{AbelianExtension, CocycleData};
use crate::field::PrimeField;
use crate::linalg::{ConstraintSystem, FpMatrix, QuotientWithSection, Subspace};
use crate::module::{beck_semidirect, pair_index, BeckModule, RestrictedModule, WHomSpace};
use crate::twofold::{eta_of, TwoFoldExtension};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortExactSequence {
    n: RestrictedLieAlgebra,
    g: RestrictedLieAlgebra,
    b: RestrictedLieAlgebra,
    incl: FpMatrix,
    proj: FpMatrix,
    /// A linear splitting of `proj`; not required to be a morphism.
    section: FpMatrix,
    incl_left: FpMatrix,
}

impl ShortExactSequence {
    /// Without a section, the canonical right inverse of `proj` is used.
    pub fn new(
        n: RestrictedLieAlgebra,
        g: RestrictedLieAlgebra,
        b: RestrictedLieAlgebra,
        incl: FpMatrix,
        proj: FpMatrix,
        section: Option<FpMatrix>,
    ) -> Result<Self> {
        let f = g.field();
        if n.field() != f || b.field() != f {
            return Err(Error::ModulusMismatch(n.p().max(b.p()), g.p()));
        }
        let (nn, ng, nb) = (n.dim(), g.dim(), b.dim());
        if incl.rows() != ng || incl.cols() != nn {
            return dim_err(format!("inclusion must be {ng}x{nn}"));
        }
        if proj.rows() != nb || proj.cols() != ng {
            return dim_err(format!("projection must be {nb}x{ng}"));
        }
        let incl_left = if nn == 0 {
            FpMatrix::zeros(f, 0, ng)
        } else {
            incl.left_inverse()
                .ok_or_else(|| Error::Invalid("N -> g is not injective".into()))?
        };
        let section = match section {
            Some(s) => s,
            None if nb == 0 => FpMatrix::zeros(f, ng, 0),
            None => proj
                .right_inverse()
                .ok_or_else(|| Error::Invalid("g -> b is not surjective".into()))?,
        };
        if section.rows() != ng || section.cols() != nb {
            return dim_err(format!("section must be {ng}x{nb}"));
        }
        if proj.mul(&section) != FpMatrix::identity(f, nb) {
            return Err(Error::SectionMismatch("the section does not split the projection".into()));
        }
        Ok(ShortExactSequence {
            n,
            g,
            b,
            incl,
            proj,
            section,
            incl_left,
        })
    }

    /// `0 -> I -> g -> g/I -> 0` for a p-ideal `I`.
    pub fn from_ideal(g: &RestrictedLieAlgebra, ideal: &Subspace) -> Result<Self> {
        let q = g.quotient_algebra(ideal)?;
        let (n, incl) = g.subalgebra(ideal)?;
        let proj = q.quotient.projection().clone();
        let section = q.quotient.section().clone();
        Self::new(n, g.clone(), q.algebra, incl, proj, Some(section))
    }

    /// `0 -> N -> b × N -> b -> 0`.
    pub fn product(b: &RestrictedLieAlgebra, n: &RestrictedLieAlgebra) -> Result<Self> {
        let f = b.field();
        let g = direct_product(b, n)?;
        let (nb, nn) = (b.dim(), n.dim());
        let incl = FpMatrix::zeros(f, nb, nn).vstack(&FpMatrix::identity(f, nn));
        let proj = FpMatrix::identity(f, nb).hstack(&FpMatrix::zeros(f, nb, nn));
        Self::new(n.clone(), g, b.clone(), incl, proj, None)
    }

    pub fn with_section(&self, section: FpMatrix) -> Result<Self> {
        Self::new(
            self.n.clone(),
            self.g.clone(),
            self.b.clone(),
            self.incl.clone(),
            self.proj.clone(),
            Some(section),
        )
    }

    pub fn field(&self) -> PrimeField {
        self.g.field()
    }

    pub fn kernel(&self) -> &RestrictedLieAlgebra {
        &self.n
    }

    pub fn total(&self) -> &RestrictedLieAlgebra {
        &self.g
    }

    pub fn base(&self) -> &RestrictedLieAlgebra {
        &self.b
    }

    pub fn inclusion(&self) -> &FpMatrix {
        &self.incl
    }

    pub fn projection(&self) -> &FpMatrix {
        &self.proj
    }

    pub fn section(&self) -> &FpMatrix {
        &self.section
    }

    pub fn projection_morphism(&self) -> RestrictedMorphism {
        RestrictedMorphism::new(self.g.clone(), self.b.clone(), self.proj.clone()).expect("shapes checked")
    }

    pub fn inclusion_morphism(&self) -> RestrictedMorphism {
        RestrictedMorphism::new(self.n.clone(), self.g.clone(), self.incl.clone()).expect("shapes checked")
    }

    /// Coordinates in `N` of a vector of `g` lying in its image.
    pub fn kernel_coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        let c = self.incl_left.mul_vec(v);
        (self.incl.mul_vec(&c) == v).then_some(c)
    }

    /// `[s e_i, s e_j] - s[e_i, e_j]` in `N`-coordinates.
    pub fn bracket_defect(&self, i: usize, j: usize) -> Vec<u32> {
        let f = self.field();
        let (si, sj) = (self.section.column(i), self.section.column(j));
        let v = f.sub_vec(&self.g.bracket_vec(&si, &sj), &self.section.mul_vec(self.b.structure(i, j)));
        self.kernel_coords(&v).expect("bracket defect of a section lies in N")
    }

    /// `(s e_i)^[p] - s(e_i^[p])` in `N`-coordinates.
    pub fn p_defect(&self, i: usize) -> Vec<u32> {
        let f = self.field();
        let si = self.section.column(i);
        let v = f.sub_vec(&self.g.p_power_vec(&si), &self.section.mul_vec(self.b.pmap_basis(i)));
        self.kernel_coords(&v).expect("p-map defect of a section lies in N")
    }

    pub fn verify(&self, cfg: &CheckConfig) -> Report {
        let mut report = Report::new();
        report.absorb("N", self.n.verify_restricted(cfg));
        report.absorb("g", self.g.verify_restricted(cfg));
        report.absorb("b", self.b.verify_restricted(cfg));
        report.absorb("N -> g", self.inclusion_morphism().check(cfg));
        report.absorb("g -> b", self.projection_morphism().check(cfg));
        let exact = self.incl.image() == self.proj.kernel();
        report.push(Check::from_result(
            "image = kernel",
            Mode::Basis,
            (!exact).then(|| "image of N differs from the kernel of g -> b".to_string()),
        ));
        report
    }
}

/// `N_ab` with its Beck structure over `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianizedKernel {
    pub module: BeckModule,
    /// `<[N, N]>_p` inside `N`.
    pub ideal: Subspace,
    pub quotient: QuotientWithSection,
}

impl AbelianizedKernel {
    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// `N -> N_ab`
    pub fn projection(&self) -> &FpMatrix {
        self.quotient.projection()
    }

    /// A linear section `N_ab -> N`.
    pub fn section(&self) -> &FpMatrix {
        self.quotient.section()
    }
}

fn nab_action(seq: &ShortExactSequence, q: &QuotientWithSection, section: &FpMatrix) -> Result<Vec<FpMatrix>> {
    let f = seq.field();
    (0..seq.b.dim())
        .map(|i| {
            let x = section.column(i);
            let cols = (0..q.dim())
                .map(|k| {
                    let n = q.section().column(k);
                    let v = seq.g.bracket_vec(&x, &seq.incl.mul_vec(&n));
                    let c = seq
                        .kernel_coords(&v)
                        .ok_or_else(|| Error::Invalid("N is not an ideal of g".into()))?;
                    Ok(q.project(&c))
                })
                .collect::<Result<Vec<_>>>()?;
            FpMatrix::from_columns(f, q.dim(), &cols)
        })
        .collect()
}

/// `N_ab` with `x.n̄ = [s x, n]‾` and `f(n̄) = (n^[p])‾`.
///
/// The action is recomputed with a second section and compared; a mismatch
/// is reported as [`Error::SectionMismatch`].
pub fn n_ab(seq: &ShortExactSequence, cfg: &CheckConfig) -> Result<AbelianizedKernel> {
    let f = seq.field();
    let n = &seq.n;
    let nn = n.dim();
    let mut gens = Vec::new();
    for i in 0..nn {
        for j in i + 1..nn {
            gens.push(n.bracket_vec(&n.basis_vec(i), &n.basis_vec(j)));
        }
    }
    let ideal = n.p_ideal_generated(&gens);
    let q = QuotientWithSection::new(nn, ideal.clone())?;
    let action = nab_action(seq, &q, &seq.section)?;
    let nb = seq.b.dim();
    if nn > 0 && nb > 0 {
        let mut shift = FpMatrix::zeros(f, nn, nb);
        for i in 0..nb {
            shift.set(i % nn, i, 1);
        }
        let other = seq.section.add(&seq.incl.mul(&shift));
        if nab_action(seq, &q, &other)? != action {
            return Err(Error::SectionMismatch("the action on N_ab depends on the section".into()));
        }
    }
    let fcols: Vec<Vec<u32>> = (0..q.dim())
        .map(|k| q.project(&n.p_power_vec(&q.section().column(k))))
        .collect();
    let module = BeckModule::new(
        RestrictedModule::new(seq.b.clone(), q.dim(), action)?,
        FpMatrix::from_columns(f, q.dim(), &fcols)?,
    )?;
    let report = module.verify(cfg);
    if !report.passed() {
        return Err(Error::VerificationFailed(format!("N_ab is not a Beck module:\n{report}")));
    }
    Ok(AbelianizedKernel {
        module,
        ideal,
        quotient: q,
    })
}

/// Beck derivations `d: g ⋊ N -> A` (over `(x, n) ↦ p x`) with
/// `d(x, n) - d(x, n') + d(x + n, n' - n) = 0`.
#[derive(Clone, Debug)]
pub struct Tor0Space {
    /// `g ⋊ N`, coordinates `(x, n)`.
    pub algebra: RestrictedLieAlgebra,
    pub basis: Vec<FpMatrix>,
    /// Flattened `dim A x (dim g + dim N)` matrices.
    pub space: Subspace,
    pub mode: Mode,
    pub beck_derivations: DerivationSpace,
}

impl Tor0Space {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// `g` acting on `N` by brackets.
fn conjugation(seq: &ShortExactSequence) -> Vec<FpMatrix> {
    let f = seq.field();
    (0..seq.g.dim())
        .map(|i| {
            let cols: Vec<Vec<u32>> = (0..seq.n.dim())
                .map(|k| {
                    let v = seq.g.bracket_vec(&seq.g.basis_vec(i), &seq.incl.column(k));
                    seq.kernel_coords(&v).expect("N is an ideal")
                })
                .collect();
            FpMatrix::from_columns(f, seq.n.dim(), &cols).expect("square")
        })
        .collect()
}

pub fn tor0_direct(seq: &ShortExactSequence, b: &BeckModule, cfg: &CheckConfig) -> Result<Tor0Space> {
    if b.algebra() != &seq.b {
        return Err(Error::ParentMismatch);
    }
    let f = seq.field();
    let (ng, nn, m) = (seq.g.dim(), seq.n.dim(), b.dim());
    let gn = semidirect(&seq.g, &seq.n, &conjugation(seq), cfg)?;
    let pi = RestrictedMorphism::new(gn.clone(), seq.b.clone(), seq.proj.hstack(&FpMatrix::zeros(f, seq.b.dim(), nn)))?;
    let der = beck_der(&pi, b, cfg)?;

    let width = ng + nn;
    let mut sys = ConstraintSystem::new(f, m * width);
    let sample = cfg.elements(f, ng + 2 * nn);
    let id = FpMatrix::identity(f, m);
    for t in &sample.elements {
        let (x, n, n2) = (&t[..ng], &t[ng..ng + nn], &t[ng + nn..]);
        let cat = |a: &[u32], c: &[u32]| -> Vec<u32> { a.iter().chain(c).copied().collect() };
        let u1 = cat(x, n);
        let u2 = cat(x, n2);
        let u3 = cat(&f.add_vec(x, &seq.incl.mul_vec(n)), &f.sub_vec(n2, n));
        let w = f.add_vec(&f.sub_vec(&u1, &u2), &u3);
        add_map_constraint(&mut sys, f, m, width, &[(id.clone(), w)]);
    }
    let faces = sys.solve().expect("homogeneous systems are consistent").kernel;
    let space = faces.intersect(der.space());
    let basis = space
        .basis()
        .iter()
        .map(|v| FpMatrix::from_flat(f, m, width, v))
        .collect();
    Ok(Tor0Space {
        algebra: gn,
        basis,
        space,
        mode: der.mode().meet(sample.mode),
        beck_derivations: der,
    })
}

/// `d ↦ (n̄ ↦ d(0, n))`
pub fn tor0_to_hom(seq: &ShortExactSequence, nab: &AbelianizedKernel, d: &FpMatrix) -> FpMatrix {
    let (ng, nn) = (seq.g.dim(), seq.n.dim());
    d.submatrix(0, d.rows(), ng, nn).mul(nab.section())
}

/// `φ ↦ ((x, n) ↦ φ(n̄))`
pub fn hom_to_tor0(seq: &ShortExactSequence, nab: &AbelianizedKernel, phi: &FpMatrix) -> FpMatrix {
    FpMatrix::zeros(seq.field(), phi.rows(), seq.g.dim()).hstack(&phi.mul(nab.projection()))
}

/// The two maps between `tor0_direct` and `Hom_w(N_ab, A)`, in coordinates
/// of the respective bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tor0Iso {
    /// `dim Hom x dim Tor0`
    pub forward: FpMatrix,
    /// `dim Tor0 x dim Hom`
    pub backward: FpMatrix,
}

impl Tor0Iso {
    pub fn round_trips(&self) -> bool {
        let f = self.forward.field();
        self.forward.mul(&self.backward) == FpMatrix::identity(f, self.forward.rows())
            && self.backward.mul(&self.forward) == FpMatrix::identity(f, self.backward.rows())
    }
}

pub fn tor0_iso(
    seq: &ShortExactSequence,
    nab: &AbelianizedKernel,
    tor: &Tor0Space,
    hom: &WHomSpace,
) -> Result<Tor0Iso> {
    let f = seq.field();
    let fwd = tor
        .basis
        .iter()
        .map(|d| {
            hom.space()
                .coords(tor0_to_hom(seq, nab, d).as_slice())
                .ok_or_else(|| Error::VerificationFailed("d(0, -) is not a w-homomorphism".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let bwd = hom
        .basis()
        .iter()
        .map(|phi| {
            tor.space
                .coords(hom_to_tor0(seq, nab, phi).as_slice())
                .ok_or_else(|| Error::VerificationFailed("lifted map is not in the Tor0 space".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Tor0Iso {
        forward: FpMatrix::from_columns(f, hom.dim(), &fwd)?,
        backward: FpMatrix::from_columns(f, tor.dim(), &bwd)?,
    })
}

// ---- maps of the exact sequences -----------------------------------------

/// `Der_p(b, A) -> Der_p(g, A)`, `d ↦ d ∘ p`.
pub fn inflate_derivation(seq: &ShortExactSequence, d: &FpMatrix) -> FpMatrix {
    d.mul(&seq.proj)
}

/// `Der_p(g, A) -> Hom_w(N_ab, A)`, `d ↦ d|_N`.
pub fn restrict_derivation(seq: &ShortExactSequence, nab: &AbelianizedKernel, d: &FpMatrix) -> FpMatrix {
    d.mul(&seq.incl).mul(nab.section())
}

/// Cocycle data over `b` of the class attached to `φ: N_ab -> A`:
/// `c(e_i, e_j) = φ([s e_i, s e_j] - s[e_i, e_j])‾` and
/// `ω(e_i) = φ((s e_i)^[p] - s(e_i^[p]))‾`.
pub fn transgression(seq: &ShortExactSequence, nab: &AbelianizedKernel, phi: &FpMatrix) -> CocycleData {
    let nb = seq.b.dim();
    let m = phi.rows();
    let mut data = CocycleData::zero(nb, m);
    let apply = |v: Vec<u32>| phi.mul_vec(&nab.quotient.project(&v));
    for i in 0..nb {
        for j in i + 1..nb {
            data.c[pair_index(nb, i, j)] = apply(seq.bracket_defect(i, j));
        }
        data.omega[i] = apply(seq.p_defect(i));
    }
    data
}

/// The same class built as `(g ⋉ A) / {(n, -φ n̄)}` and read off in the basis
/// `{(s e_i, 0)} ∪ {(0, a_k)}`.
pub fn transgression_pushout(
    seq: &ShortExactSequence,
    nab: &AbelianizedKernel,
    b: &BeckModule,
    phi: &FpMatrix,
    cfg: &CheckConfig,
) -> Result<AbelianExtension> {
    let f = seq.field();
    let (ng, nb, m) = (seq.g.dim(), seq.b.dim(), b.dim());
    let bg = b.pullback(&seq.projection_morphism())?;
    let sd = beck_semidirect(&seq.g, &bg, cfg)?;
    let neg_phi = phi.mul(nab.projection()).neg();
    let d = Subspace::from_generators(
        f,
        ng + m,
        (0..seq.n.dim()).map(|k| {
            let mut v = seq.incl.column(k);
            v.extend(neg_phi.column(k));
            v
        }),
    );
    let q = sd.quotient_algebra(&d)?;
    let lift = |v: Vec<u32>, a: Vec<u32>| -> Vec<u32> { q.quotient.project(&v.into_iter().chain(a).collect::<Vec<_>>()) };
    let mut cols: Vec<Vec<u32>> = (0..nb).map(|i| lift(seq.section.column(i), f.zero_vec(m))).collect();
    cols.extend((0..m).map(|k| lift(f.zero_vec(ng), f.unit_vec(m, k))));
    let t = FpMatrix::from_columns(f, q.algebra.dim(), &cols)?;
    let t_inv = t
        .inverse()
        .ok_or_else(|| Error::Invalid("pushout does not have dimension dim b + dim A".into()))?;
    let p_alg = &q.algebra;
    let mut data = CocycleData::zero(nb, m);
    let split = |v: Vec<u32>, base: &[u32], what: &str| -> Result<Vec<u32>> {
        let w = t_inv.mul_vec(&v);
        if w[..nb] != *base {
            return Err(Error::VerificationFailed(format!("pushout: {what} has the wrong image in b")));
        }
        Ok(w[nb..].to_vec())
    };
    for i in 0..nb {
        for j in i + 1..nb {
            data.c[pair_index(nb, i, j)] = split(p_alg.bracket_vec(&cols[i], &cols[j]), seq.b.structure(i, j), "a bracket")?;
        }
        data.omega[i] = split(p_alg.p_power_vec(&cols[i]), seq.b.pmap_basis(i), "a p-th power")?;
        for k in 0..m {
            let a = split(p_alg.bracket_vec(&cols[i], &cols[nb + k]), &f.zero_vec(nb), "an action")?;
            if a != b.action()[i].column(k) {
                return Err(Error::VerificationFailed("pushout induces a different action".into()));
            }
        }
    }
    AbelianExtension::build(&seq.b, b, data, cfg)
}

/// `H^1(b, A) -> H^1(g, A)` by pulling `E` back along `p`.
pub fn inflate_extension(seq: &ShortExactSequence, e: &AbelianExtension) -> CocycleData {
    let (ng, nb, m) = (seq.g.dim(), seq.b.dim(), e.module().dim());
    let alg = e.algebra();
    let lifts: Vec<Vec<u32>> = (0..ng)
        .map(|i| {
            let mut v = seq.proj.column(i);
            v.extend(std::iter::repeat(0).take(m));
            v
        })
        .collect();
    let mut data = CocycleData::zero(ng, m);
    for i in 0..ng {
        for j in i + 1..ng {
            data.c[pair_index(ng, i, j)] = alg.bracket_vec(&lifts[i], &lifts[j])[nb..].to_vec();
        }
        data.omega[i] = alg.p_power_vec(&lifts[i])[nb..].to_vec();
    }
    data
}

/// A two-fold extension together with the embedding of its `M` into the
/// abelian extension it came from.
#[derive(Clone, Debug)]
pub struct FixedTwoFold {
    pub extension: TwoFoldExtension,
    /// `M -> E`
    pub embedding: FpMatrix,
}

/// `H^1(g, A) -> ℰ^1(p, A)`: `0 -> A -> E_N -> g -> b -> 0` with
/// `E_N` the preimage of `N` in `E` and `g` acting through `x ↦ ad (x, 0)`.
pub fn extension_to_two_fold(seq: &ShortExactSequence, b: &BeckModule, e: &AbelianExtension) -> Result<FixedTwoFold> {
    if e.base() != &seq.g {
        return Err(Error::ParentMismatch);
    }
    let f = seq.field();
    let (ng, nn, m) = (seq.g.dim(), seq.n.dim(), b.dim());
    let alg = e.algebra();
    let mut basis: Vec<Vec<u32>> = (0..nn)
        .map(|k| {
            let mut v = seq.incl.column(k);
            v.extend(std::iter::repeat(0).take(m));
            v
        })
        .collect();
    basis.extend((0..m).map(|k| f.unit_vec(ng + m, ng + k)));
    let (m_alg, emb) = alg.subalgebra_with_basis(&basis, None)?;
    let left = if basis.is_empty() {
        FpMatrix::zeros(f, 0, ng + m)
    } else {
        emb.left_inverse().expect("independent basis")
    };
    let eta = (0..ng)
        .map(|i| left.mul(&alg.left_matrix(&alg.basis_vec(i))).mul(&emb))
        .collect();
    Ok(FixedTwoFold {
        extension: TwoFoldExtension {
            r: seq.b.clone(),
            module: b.clone(),
            m: m_alg,
            n: seq.g.clone(),
            incl: left.mul(&e.inclusion()),
            mu: e.projection().mul(&emb),
            proj: seq.proj.clone(),
            eta,
            fixed_augmentation: true,
        },
        embedding: emb,
    })
}

/// `ℰ^1(p, A) -> ℰ^2(b, A)`
pub fn forget_augmentation(x: &TwoFoldExtension) -> TwoFoldExtension {
    TwoFoldExtension {
        fixed_augmentation: false,
        ..x.clone()
    }
}

/// `ℰ^2(b, A) -> ℰ^2(g, A)`: `N' = N ×_b g`, `M' = M`, `μ' m = (μ m, 0)`.
pub fn pull_back_two_fold(
    seq: &ShortExactSequence,
    x: &TwoFoldExtension,
    b_over_g: &BeckModule,
) -> Result<(TwoFoldExtension, Pullback)> {
    if x.r != seq.b || b_over_g.algebra() != &seq.g {
        return Err(Error::ParentMismatch);
    }
    let f = seq.field();
    let aug = RestrictedMorphism::new(x.n.clone(), seq.b.clone(), x.proj.clone())?;
    let pb = pullback(&aug, &seq.projection_morphism())?;
    let nx = x.n.dim();
    let mdim = x.m.dim();
    let left = pb
        .inclusion
        .left_inverse()
        .unwrap_or_else(|| FpMatrix::zeros(f, 0, nx + seq.g.dim()));
    let target = x.mu.vstack(&FpMatrix::zeros(f, seq.g.dim(), mdim));
    let mu = left.mul(&target);
    if pb.inclusion.mul(&mu) != target {
        return Err(Error::Invalid("μ × 0 does not land in the pullback".into()));
    }
    let eta = (0..pb.algebra.dim())
        .map(|u| eta_of(&x.eta, &pb.inclusion.column(u)[..nx], mdim, f))
        .collect();
    let pulled = TwoFoldExtension {
        r: seq.g.clone(),
        module: b_over_g.clone(),
        m: x.m.clone(),
        n: pb.algebra.clone(),
        incl: x.incl.clone(),
        mu,
        proj: pb.proj2.matrix().clone(),
        eta,
        fixed_augmentation: false,
    };
    Ok((pulled, pb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::{coboundary_subspace, cohomology_classes};
    use crate::module::hom_w;
    use crate::standard::heisenberg;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    fn heis_seq() -> ShortExactSequence {
        let h = heisenberg(f2());
        ShortExactSequence::from_ideal(&h, &h.center()).unwrap()
    }

    #[test]
    fn heisenberg_sequence_shape() {
        let cfg = CheckConfig::default();
        let seq = heis_seq();
        assert!(seq.verify(&cfg).passed());
        assert_eq!((seq.kernel().dim(), seq.base().dim()), (1, 2));
        assert_eq!(seq.bracket_defect(0, 1), vec![1]);
    }

    #[test]
    fn nab_of_heisenberg_center() {
        let cfg = CheckConfig::default();
        let seq = heis_seq();
        let nab = n_ab(&seq, &cfg).unwrap();
        assert_eq!(nab.dim(), 1);
        assert!(nab.module.action().iter().all(FpMatrix::is_zero));
        assert!(nab.module.f().is_zero());
    }

    #[test]
    fn nab_of_heisenberg_inside_product() {
        let cfg = CheckConfig::default();
        let h = heisenberg(f2());
        let b = RestrictedLieAlgebra::abelian(f2(), 1);
        let seq = ShortExactSequence::product(&b, &h).unwrap();
        let nab = n_ab(&seq, &cfg).unwrap();
        assert_eq!(nab.dim(), 2);
        assert_eq!(nab.ideal.dim(), 1);
    }

    #[test]
    fn tor0_matches_hom_on_heisenberg() {
        let cfg = CheckConfig::default();
        let seq = heis_seq();
        let b = BeckModule::trivial(seq.base(), 1, None).unwrap();
        let nab = n_ab(&seq, &cfg).unwrap();
        let hom = hom_w(&nab.module, &b).unwrap();
        let tor = tor0_direct(&seq, &b, &cfg).unwrap();
        assert_eq!(hom.dim(), 1);
        assert_eq!(tor.dim(), 1);
        let iso = tor0_iso(&seq, &nab, &tor, &hom).unwrap();
        assert!(iso.round_trips());
    }

    #[test]
    fn transgression_of_heisenberg_is_nonsplit() {
        let cfg = CheckConfig::default();
        let seq = heis_seq();
        let b = BeckModule::trivial(seq.base(), 1, None).unwrap();
        let nab = n_ab(&seq, &cfg).unwrap();
        let phi = FpMatrix::identity(f2(), 1);
        let data = transgression(&seq, &nab, &phi);
        assert_eq!(data.c, vec![vec![1]]);
        let pushed = transgression_pushout(&seq, &nab, &b, &phi, &cfg).unwrap();
        assert_eq!(pushed.data(), &data);
        assert!(!pushed.is_split(&cfg).unwrap());
    }

    #[test]
    fn inflation_kills_the_transgressed_class() {
        let cfg = CheckConfig::default();
        let seq = heis_seq();
        let b = BeckModule::trivial(seq.base(), 1, None).unwrap();
        let bg = b.pullback(&seq.projection_morphism()).unwrap();
        let nab = n_ab(&seq, &cfg).unwrap();
        let e = AbelianExtension::build(seq.base(), &b, transgression(&seq, &nab, &FpMatrix::identity(f2(), 1)), &cfg).unwrap();
        let inflated = inflate_extension(&seq, &e);
        assert!(coboundary_subspace(seq.total(), &bg).contains(&inflated.to_flat()));
        let classes = cohomology_classes(seq.total(), &bg, &cfg).unwrap();
        assert!(classes.is_consistent());
    }

    #[test]
    fn two_fold_from_split_extension_is_valid() {
        let cfg = CheckConfig::default();
        let seq = heis_seq();
        let b = BeckModule::trivial(seq.base(), 1, None).unwrap();
        let bg = b.pullback(&seq.projection_morphism()).unwrap();
        let e = AbelianExtension::split(seq.total(), &bg, &cfg).unwrap();
        let x = extension_to_two_fold(&seq, &b, &e).unwrap();
        let report = x.extension.verify(&cfg);
        assert!(report.passed(), "{report}");
        let (pulled, _) = pull_back_two_fold(&seq, &forget_augmentation(&x.extension), &bg).unwrap();
        assert!(pulled.verify(&cfg).passed());
    }
}
