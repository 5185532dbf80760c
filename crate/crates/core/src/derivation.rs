//! Spaces of derivations: ordinary, restricted, and Beck derivations.
//!
//! A derivation `d: g -> A` is stored as a `dim A x dim g` matrix and the
//! spaces are kernels of linear systems in its entries. The p-condition
//! `d(x^[p]) = x^(p-1).d(x) + f(d(x))` is linear in `d` but not in `x`, so it
//! is imposed once per element of `g` (all elements, or a seeded sample for
//! large `g`; the space records which).

use crate::algebra::{RestrictedLieAlgebra, RestrictedMorphism};
use crate::check::{CheckConfig, Mode};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::{ConstraintSystem, FpMatrix, Subspace};
use crate::module::{beck_semidirect, BeckModule, RestrictedModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivationKind {
    Ordinary,
    Restricted,
    Beck,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationSpace {
    kind: DerivationKind,
    mode: Mode,
    domain: RestrictedLieAlgebra,
    codim: usize,
    basis: Vec<FpMatrix>,
    space: Subspace,
}

impl DerivationSpace {
    fn from_system(
        kind: DerivationKind,
        mode: Mode,
        domain: &RestrictedLieAlgebra,
        codim: usize,
        sys: &ConstraintSystem,
    ) -> Self {
        let f = domain.field();
        let space = sys.solve().expect("homogeneous systems are consistent").kernel;
        let basis = space
            .basis()
            .iter()
            .map(|v| FpMatrix::from_flat(f, codim, domain.dim(), v))
            .collect();
        DerivationSpace {
            kind,
            mode,
            domain: domain.clone(),
            codim,
            basis,
            space,
        }
    }

    pub fn kind(&self) -> DerivationKind {
        self.kind
    }

    /// How the element-quantified condition was imposed.
    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn domain(&self) -> &RestrictedLieAlgebra {
        &self.domain
    }

    pub fn codomain_dim(&self) -> usize {
        self.codim
    }

    pub fn basis(&self) -> &[FpMatrix] {
        &self.basis
    }

    /// Derivations as flattened (row-major) matrices.
    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn contains(&self, d: &FpMatrix) -> bool {
        d.rows() == self.codim && d.cols() == self.domain.dim() && self.space.contains(d.as_slice())
    }

    pub fn combine(&self, coords: &[u32]) -> FpMatrix {
        FpMatrix::from_flat(self.domain.field(), self.codim, self.domain.dim(), &self.space.combine(coords))
    }
}

/// Adds the equations `sum_t P_t D u_t = 0` for an unknown `m x n` matrix `D`.
pub(crate) fn add_map_constraint(
    sys: &mut ConstraintSystem,
    field: PrimeField,
    m: usize,
    n: usize,
    terms: &[(FpMatrix, Vec<u32>)],
) {
    for r in 0..m {
        let mut row = vec![0; m * n];
        for (pm, u) in terms {
            for s in 0..m {
                let c = pm.get(r, s);
                if c == 0 {
                    continue;
                }
                for (k, &uk) in u.iter().enumerate() {
                    if uk != 0 {
                        let idx = s * n + k;
                        row[idx] = field.add(row[idx], field.mul(c, uk));
                    }
                }
            }
        }
        sys.add_equation(&row, 0);
    }
}

/// Leibniz rule `d[e_i, e_j] = e_i.d(e_j) - e_j.d(e_i)` on basis pairs, for
/// the module `a` over the domain of `d`.
fn leibniz_system(g: &RestrictedLieAlgebra, a: &RestrictedModule) -> ConstraintSystem {
    let f = g.field();
    let (n, m) = (g.dim(), a.dim());
    let id = FpMatrix::identity(f, m);
    let mut sys = ConstraintSystem::new(f, m * n);
    for i in 0..n {
        for j in i + 1..n {
            let terms = [
                (id.clone(), g.structure(i, j).to_vec()),
                (a.action()[i].neg(), g.basis_vec(j)),
                (a.action()[j].clone(), g.basis_vec(i)),
            ];
            add_map_constraint(&mut sys, f, m, n, &terms);
        }
    }
    sys
}

/// Imposes `d(x^[p]) = x^(p-1).d(x) + f(d(x))` for the configured elements.
fn impose_p_condition(
    sys: &mut ConstraintSystem,
    g: &RestrictedLieAlgebra,
    a: &RestrictedModule,
    fmap: &FpMatrix,
    cfg: &CheckConfig,
) -> Mode {
    let fld = g.field();
    let (n, m) = (g.dim(), a.dim());
    let id = FpMatrix::identity(fld, m);
    let p = g.p() as u64;
    let sample = cfg.elements(fld, n);
    for x in &sample.elements {
        if sys.is_saturated() {
            break;
        }
        let coeff = a.rho(x).pow(p - 1).add(fmap).neg();
        add_map_constraint(sys, fld, m, n, &[(id.clone(), g.p_power_vec(x)), (coeff, x.clone())]);
    }
    sample.mode
}

/// Ordinary derivations `L -> A` for an `L`-module `A`.
pub fn der(l: &RestrictedLieAlgebra, a: &RestrictedModule) -> Result<DerivationSpace> {
    if a.algebra() != l {
        return Err(Error::ParentMismatch);
    }
    let sys = leibniz_system(l, a);
    Ok(DerivationSpace::from_system(DerivationKind::Ordinary, Mode::Basis, l, a.dim(), &sys))
}

/// Restricted derivations of `L`: derivations `D` of `L` with
/// `D(x^[p]) = ad_x^(p-1)(D x)` for every `x`.
pub fn restricted_der(l: &RestrictedLieAlgebra, cfg: &CheckConfig) -> DerivationSpace {
    let ad = RestrictedModule::adjoint(l);
    let mut sys = leibniz_system(l, &ad);
    let zero = FpMatrix::zeros(l.field(), l.dim(), l.dim());
    let mode = impose_p_condition(&mut sys, l, &ad, &zero, cfg);
    DerivationSpace::from_system(DerivationKind::Restricted, mode, l, l.dim(), &sys)
}

/// Beck derivations `g -> A` where `g` acts on `B` through `π: g -> L`.
pub fn beck_der(pi: &RestrictedMorphism, b: &BeckModule, cfg: &CheckConfig) -> Result<DerivationSpace> {
    if pi.target() != b.algebra() {
        return Err(Error::ParentMismatch);
    }
    let check = pi.check(cfg);
    if !check.passed() {
        return Err(Error::NotMorphism(check.to_string()));
    }
    let g = pi.source();
    let a = b.module().pullback(pi)?;
    let mut sys = leibniz_system(g, &a);
    let mode = impose_p_condition(&mut sys, g, &a, b.f(), cfg);
    Ok(DerivationSpace::from_system(DerivationKind::Beck, mode, g, b.dim(), &sys))
}

/// Is `d` a Beck derivation? Checked directly against the definition.
pub fn is_beck_derivation(pi: &RestrictedMorphism, b: &BeckModule, d: &FpMatrix, cfg: &CheckConfig) -> bool {
    let g = pi.source();
    let fld = g.field();
    if d.rows() != b.dim() || d.cols() != g.dim() {
        return false;
    }
    let act = |x: &[u32], a: &[u32]| b.rho(&pi.apply(x)).mul_vec(a);
    for i in 0..g.dim() {
        for j in i + 1..g.dim() {
            let (ei, ej) = (g.basis_vec(i), g.basis_vec(j));
            let lhs = d.mul_vec(g.structure(i, j));
            let rhs = fld.sub_vec(&act(&ei, &d.mul_vec(&ej)), &act(&ej, &d.mul_vec(&ei)));
            if lhs != rhs {
                return false;
            }
        }
    }
    let p = g.p() as usize;
    cfg.elements(fld, g.dim()).elements.iter().all(|x| {
        let dx = d.mul_vec(x);
        let mut iter = dx.clone();
        for _ in 0..p - 1 {
            iter = act(x, &iter);
        }
        d.mul_vec(&g.p_power_vec(x)) == fld.add_vec(&iter, &b.f().mul_vec(&dx))
    })
}

/// The bijection between Beck derivations `g -> A` and restricted morphisms
/// `g -> L ×_f A` over `L`: `d ↦ (x ↦ (π x, d x))`, inverted by taking the
/// `A`-component.
#[derive(Clone, Debug)]
pub struct DerivationSections {
    pi: RestrictedMorphism,
    module: BeckModule,
    semidirect: RestrictedLieAlgebra,
}

impl DerivationSections {
    pub fn new(pi: &RestrictedMorphism, b: &BeckModule, cfg: &CheckConfig) -> Result<Self> {
        if pi.target() != b.algebra() {
            return Err(Error::ParentMismatch);
        }
        Ok(DerivationSections {
            pi: pi.clone(),
            module: b.clone(),
            semidirect: beck_semidirect(b.algebra(), b, cfg)?,
        })
    }

    pub fn semidirect(&self) -> &RestrictedLieAlgebra {
        &self.semidirect
    }

    /// `d ↦ (π, d)`
    pub fn to_section(&self, d: &FpMatrix) -> Result<RestrictedMorphism> {
        RestrictedMorphism::new(self.pi.source().clone(), self.semidirect.clone(), self.pi.matrix().vstack(d))
    }

    /// `A`-component of a morphism over `L`.
    pub fn to_derivation(&self, phi: &RestrictedMorphism) -> Result<FpMatrix> {
        if phi.source() != self.pi.source() || phi.target() != &self.semidirect {
            return Err(Error::NotMorphism("wrong source or target".into()));
        }
        let nl = self.pi.target().dim();
        let ng = self.pi.source().dim();
        let m = phi.matrix();
        if m.submatrix(0, nl, 0, ng) != *self.pi.matrix() {
            return Err(Error::NotMorphism("morphism does not lie over the base".into()));
        }
        Ok(m.submatrix(nl, self.module.dim(), 0, ng))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::is_restricted_morphism;
    use crate::standard::heisenberg;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn ordinary_derivations() {
        let a1 = RestrictedLieAlgebra::abelian(f(2), 1);
        assert_eq!(der(&a1, &RestrictedModule::adjoint(&a1)).unwrap().dim(), 1);
        let a2 = RestrictedLieAlgebra::abelian(f(2), 2);
        assert_eq!(der(&a2, &RestrictedModule::adjoint(&a2)).unwrap().dim(), 4);
    }

    #[test]
    fn restricted_derivations() {
        let cfg = CheckConfig::default();
        let a = RestrictedLieAlgebra::abelian(f(2), 2);
        assert_eq!(restricted_der(&a, &cfg).dim(), 4);
        for p in [2, 3] {
            let toral = RestrictedLieAlgebra::abelian(f(p), 1).with_pmap(vec![vec![1]]).unwrap();
            assert_eq!(restricted_der(&toral, &cfg).dim(), 0);
        }
    }

    #[test]
    fn beck_derivation_examples() {
        let cfg = CheckConfig::default();
        let l = RestrictedLieAlgebra::abelian(f(2), 1);
        let id = RestrictedMorphism::identity(&l);
        let b0 = BeckModule::trivial(&l, 1, None).unwrap();
        assert_eq!(beck_der(&id, &b0, &cfg).unwrap().dim(), 1);
        let b1 = BeckModule::trivial(&l, 1, Some(FpMatrix::identity(f(2), 1))).unwrap();
        assert_eq!(beck_der(&id, &b1, &cfg).unwrap().dim(), 0);

        let h = heisenberg(f(2));
        let q = h.quotient_algebra(&h.center()).unwrap();
        let pi = q.projection(&h);
        let b = BeckModule::trivial(&q.algebra, 1, None).unwrap();
        let ders = beck_der(&pi, &b, &cfg).unwrap();
        assert_eq!(ders.dim(), 2);
        for d in ders.basis() {
            assert_eq!(d.get(0, 2), 0);
            assert!(is_beck_derivation(&pi, &b, d, &cfg));
        }
    }

    #[test]
    fn sections_round_trip() {
        let cfg = CheckConfig::default();
        let h = heisenberg(f(2));
        let q = h.quotient_algebra(&h.center()).unwrap();
        let pi = q.projection(&h);
        let b = BeckModule::trivial(&q.algebra, 1, None).unwrap();
        let ders = beck_der(&pi, &b, &cfg).unwrap();
        let iso = DerivationSections::new(&pi, &b, &cfg).unwrap();
        let zero = FpMatrix::zeros(f(2), 1, 3);
        assert_eq!(iso.to_section(&zero).unwrap().matrix(), &pi.matrix().vstack(&zero));
        for d in ders.basis() {
            let s = iso.to_section(d).unwrap();
            assert!(is_restricted_morphism(&s, &cfg));
            assert_eq!(&iso.to_derivation(&s).unwrap(), d);
        }
    }
}
