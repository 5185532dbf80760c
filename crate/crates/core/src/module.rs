//! Restricted modules and Beck modules.
//!
//! A Beck module over `L` is a restricted `L`-module `A` together with a map
//! `f: A -> A^L` into the invariants. Over F_p the semilinearity of `f` is
//! plain linearity, so `f` is stored as a matrix. The pair `(ρ, f)` is used
//! directly in place of a module over the ring `R_f ⊗ u(L)`; that ring is
//! never built.

use crate::algebra::{RestrictedLieAlgebra, RestrictedMorphism};
use crate::check::{Check, CheckConfig, Mode, Report};
use crate::error::{dim_err, Error, Result};
use crate::field::PrimeField;
use crate::linalg::{ConstraintSystem, FpMatrix, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedModule {
    algebra: RestrictedLieAlgebra,
    dim: usize,
    /// `action[i]` is the matrix of `e_i`.
    action: Vec<FpMatrix>,
}

impl RestrictedModule {
    pub fn new(algebra: RestrictedLieAlgebra, dim: usize, action: Vec<FpMatrix>) -> Result<Self> {
        if action.len() != algebra.dim() {
            return dim_err(format!(
                "{} action matrices for an algebra of dimension {}",
                action.len(),
                algebra.dim()
            ));
        }
        for m in &action {
            if m.rows() != dim || m.cols() != dim {
                return dim_err(format!("action matrix is {}x{}, expected {dim}x{dim}", m.rows(), m.cols()));
            }
            if m.field() != algebra.field() {
                return Err(Error::ModulusMismatch(m.field().p(), algebra.p()));
            }
        }
        Ok(RestrictedModule { algebra, dim, action })
    }

    pub fn trivial(algebra: &RestrictedLieAlgebra, dim: usize) -> Self {
        let f = algebra.field();
        RestrictedModule {
            algebra: algebra.clone(),
            dim,
            action: vec![FpMatrix::zeros(f, dim, dim); algebra.dim()],
        }
    }

    /// `L` acting on itself by `x.y = [x, y]`.
    pub fn adjoint(algebra: &RestrictedLieAlgebra) -> Self {
        let action = (0..algebra.dim())
            .map(|i| algebra.left_matrix(&algebra.basis_vec(i)))
            .collect();
        RestrictedModule {
            algebra: algebra.clone(),
            dim: algebra.dim(),
            action,
        }
    }

    pub fn algebra(&self) -> &RestrictedLieAlgebra {
        &self.algebra
    }

    pub fn field(&self) -> PrimeField {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[FpMatrix] {
        &self.action
    }

    /// Matrix of the element `x` of `L`.
    pub fn rho(&self, x: &[u32]) -> FpMatrix {
        let mut m = FpMatrix::zeros(self.field(), self.dim, self.dim);
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                m = m.add(&self.action[i].scale(c));
            }
        }
        m
    }

    pub fn act(&self, x: &[u32], a: &[u32]) -> Vec<u32> {
        self.rho(x).mul_vec(a)
    }

    /// `ρ([e_i, e_j]) = [ρ_i, ρ_j]` on basis pairs and `ρ(v^[p]) = ρ(v)^p`.
    pub fn verify(&self, cfg: &CheckConfig) -> Report {
        let l = &self.algebra;
        let n = l.dim();
        let p = l.p() as u64;
        let mut report = Report::new();
        let mut fail = None;
        'hom: for i in 0..n {
            for j in i + 1..n {
                if self.rho(l.structure(i, j)) != self.action[i].commutator(&self.action[j]) {
                    fail = Some(format!("ρ([{0}, {1}]) != [ρ({0}), ρ({1})]", l.labels()[i], l.labels()[j]));
                    break 'hom;
                }
            }
        }
        report.push(Check::from_result("lie action", Mode::Basis, fail));
        let fail = (0..n)
            .find(|&i| self.rho(l.pmap_basis(i)) != self.action[i].pow(p))
            .map(|i| format!("ρ({0}^[p]) != ρ({0})^p", l.labels()[i]));
        report.push(Check::from_result("restricted action (basis)", Mode::Basis, fail));
        let sample = cfg.elements(l.field(), n);
        let fail = sample
            .elements
            .iter()
            .find(|v| self.rho(&l.p_power_vec(v)) != self.rho(v).pow(p))
            .map(|v| format!("ρ(v^[p]) != ρ(v)^p at v = {v:?}"));
        report.push(Check::from_result("restricted action (elements)", sample.mode, fail));
        report
    }

    /// `A^L`: vectors killed by every basis element.
    pub fn invariants(&self) -> Subspace {
        let f = self.field();
        let mut stacked = FpMatrix::zeros(f, 0, self.dim);
        for m in &self.action {
            stacked = stacked.vstack(m);
        }
        stacked.kernel()
    }

    /// The module over `g` obtained by restricting along `π: g -> L`.
    pub fn pullback(&self, pi: &RestrictedMorphism) -> Result<RestrictedModule> {
        if pi.target() != &self.algebra {
            return Err(Error::Invalid("pullback along a morphism into a different algebra".into()));
        }
        let action = (0..pi.source().dim())
            .map(|i| self.rho(&pi.matrix().column(i)))
            .collect();
        RestrictedModule::new(pi.source().clone(), self.dim, action)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BeckModule {
    module: RestrictedModule,
    f: FpMatrix,
}

impl BeckModule {
    pub fn new(module: RestrictedModule, f: FpMatrix) -> Result<Self> {
        let m = module.dim();
        if f.rows() != m || f.cols() != m {
            return dim_err(format!("f is {}x{}, expected {m}x{m}", f.rows(), f.cols()));
        }
        Ok(BeckModule { module, f })
    }

    /// Trivial action with the given `f`; `f = 0` when omitted.
    pub fn trivial(algebra: &RestrictedLieAlgebra, dim: usize, f: Option<FpMatrix>) -> Result<Self> {
        let f = f.unwrap_or_else(|| FpMatrix::zeros(algebra.field(), dim, dim));
        BeckModule::new(RestrictedModule::trivial(algebra, dim), f)
    }

    pub fn zero(algebra: &RestrictedLieAlgebra) -> Self {
        BeckModule::trivial(algebra, 0, None).expect("empty module")
    }

    pub fn module(&self) -> &RestrictedModule {
        &self.module
    }

    pub fn algebra(&self) -> &RestrictedLieAlgebra {
        self.module.algebra()
    }

    pub fn field(&self) -> PrimeField {
        self.module.field()
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn f(&self) -> &FpMatrix {
        &self.f
    }

    pub fn rho(&self, x: &[u32]) -> FpMatrix {
        self.module.rho(x)
    }

    pub fn action(&self) -> &[FpMatrix] {
        self.module.action()
    }

    pub fn verify(&self, cfg: &CheckConfig) -> Report {
        let mut report = self.module.verify(cfg);
        let inv = self.module.invariants();
        let fail = (0..self.dim())
            .find(|&k| !inv.contains(&self.f.column(k)))
            .map(|k| format!("f(a{k}) is not invariant"));
        report.push(Check::from_result("f lands in invariants", Mode::Basis, fail));
        report
    }

    pub fn pullback(&self, pi: &RestrictedMorphism) -> Result<BeckModule> {
        BeckModule::new(self.module.pullback(pi)?, self.f.clone())
    }
}

/// Basis of all `α: A_1 -> A_2` commuting with the actions and with `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WHomSpace {
    source: BeckModule,
    target: BeckModule,
    basis: Vec<FpMatrix>,
    space: Subspace,
}

impl WHomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[FpMatrix] {
        &self.basis
    }

    pub fn source(&self) -> &BeckModule {
        &self.source
    }

    pub fn target(&self) -> &BeckModule {
        &self.target
    }

    /// The space of flattened (row-major) matrices.
    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn contains(&self, alpha: &FpMatrix) -> bool {
        is_w_hom(&self.source, &self.target, alpha)
    }

    pub fn combine(&self, coords: &[u32]) -> FpMatrix {
        let flat = self.space.combine(coords);
        FpMatrix::from_flat(self.source.field(), self.target.dim(), self.source.dim(), &flat)
    }
}

pub fn is_w_hom(b1: &BeckModule, b2: &BeckModule, alpha: &FpMatrix) -> bool {
    alpha.rows() == b2.dim()
        && alpha.cols() == b1.dim()
        && alpha.mul(b1.f()) == b2.f().mul(alpha)
        && b1
            .action()
            .iter()
            .zip(b2.action())
            .all(|(r1, r2)| alpha.mul(r1) == r2.mul(alpha))
}

/// `Hom_{w(L)}(B_1, B_2)`.
pub fn hom_w(b1: &BeckModule, b2: &BeckModule) -> Result<WHomSpace> {
    if b1.algebra() != b2.algebra() {
        return Err(Error::ParentMismatch);
    }
    let f = b1.field();
    let (m1, m2) = (b1.dim(), b2.dim());
    let (i1, i2) = (FpMatrix::identity(f, m1), FpMatrix::identity(f, m2));
    let mut sys = ConstraintSystem::new(f, m1 * m2);
    let mut constrain = |r1: &FpMatrix, r2: &FpMatrix| {
        let eq = FpMatrix::sandwich(&i2, r1).sub(&FpMatrix::sandwich(r2, &i1));
        sys.add_homogeneous(&eq);
    };
    constrain(b1.f(), b2.f());
    for (r1, r2) in b1.action().iter().zip(b2.action()) {
        constrain(r1, r2);
    }
    let space = sys.solve().expect("homogeneous systems are consistent").kernel;
    let basis = space
        .basis()
        .iter()
        .map(|v| FpMatrix::from_flat(f, m2, m1, v))
        .collect();
    Ok(WHomSpace {
        source: b1.clone(),
        target: b2.clone(),
        basis,
        space,
    })
}

/// Index of the unordered pair `i < j` among all pairs of `0..n`.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// The algebra on `L ⊕ A` with
/// `[(e_i,0),(e_j,0)] = ([e_i,e_j], c(e_i,e_j))`, `[(x,0),(0,a)] = (0, x.a)`,
/// `(e_i,0)^[p] = (e_i^[p], ω(e_i))` and `(0,a)^[p] = (0, f a)`.
///
/// `c` lists `c(e_i, e_j)` for `i < j` in [`pair_index`] order. No axiom is
/// checked here.
pub fn extension_algebra(
    l: &RestrictedLieAlgebra,
    b: &BeckModule,
    c: &[Vec<u32>],
    omega: &[Vec<u32>],
) -> Result<RestrictedLieAlgebra> {
    if b.algebra() != l {
        return Err(Error::ParentMismatch);
    }
    let nl = l.dim();
    let m = b.dim();
    if c.len() != pair_count(nl) || omega.len() != nl {
        return dim_err("cocycle data has the wrong number of entries");
    }
    if c.iter().chain(omega).any(|v| v.len() != m) {
        return dim_err("cocycle values must lie in the module");
    }
    let f = l.field();
    let n = nl + m;
    let mut table = vec![vec![0; n]; n * n];
    for i in 0..nl {
        for j in 0..nl {
            let mut v = l.structure(i, j).to_vec();
            let cv = match i.cmp(&j) {
                std::cmp::Ordering::Less => c[pair_index(nl, i, j)].clone(),
                std::cmp::Ordering::Greater => f.neg_vec(&c[pair_index(nl, j, i)]),
                std::cmp::Ordering::Equal => vec![0; m],
            };
            v.extend(cv);
            table[i * n + j] = v;
        }
        for k in 0..m {
            let mut v = vec![0; nl];
            v.extend(b.action()[i].column(k));
            table[(nl + k) * n + i] = f.neg_vec(&v);
            table[i * n + nl + k] = v;
        }
    }
    let mut pmap = Vec::with_capacity(n);
    for i in 0..nl {
        let mut v = l.pmap_basis(i).to_vec();
        v.extend_from_slice(&omega[i]);
        pmap.push(v);
    }
    for k in 0..m {
        let mut v = vec![0; nl];
        v.extend(b.f().column(k));
        pmap.push(v);
    }
    let mut labels = l.labels().to_vec();
    labels.extend((0..m).map(|k| format!("a{}", k + 1)));
    RestrictedLieAlgebra::from_table(f, labels, table, pmap)
}

/// `L ×_f A`, the split extension attached to a Beck module.
pub fn beck_semidirect(l: &RestrictedLieAlgebra, b: &BeckModule, cfg: &CheckConfig) -> Result<RestrictedLieAlgebra> {
    let m = b.dim();
    let c = vec![vec![0; m]; pair_count(l.dim())];
    let omega = vec![vec![0; m]; l.dim()];
    let e = extension_algebra(l, b, &c, &omega)?;
    let report = e.verify_restricted(cfg);
    if !report.passed() {
        return Err(Error::VerificationFailed(format!("L ×_f A is not restricted:\n{report}")));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard::heisenberg;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    #[test]
    fn module_examples() {
        let cfg = CheckConfig::default();
        let h = heisenberg(f2());
        assert!(RestrictedModule::trivial(&h, 2).verify(&cfg).passed());
        let ad = RestrictedModule::adjoint(&h);
        assert!(ad.verify(&cfg).passed());
        assert_eq!(ad.invariants(), h.center());

        let l = RestrictedLieAlgebra::abelian(f2(), 1);
        let bad = RestrictedModule::new(l.clone(), 1, vec![FpMatrix::identity(f2(), 1)]).unwrap();
        assert!(!bad.verify(&cfg).passed());
        assert_eq!(bad.invariants().dim(), 0);
        assert_eq!(RestrictedModule::trivial(&l, 3).invariants().dim(), 3);
    }

    #[test]
    fn beck_examples() {
        let cfg = CheckConfig::default();
        let h = heisenberg(f2());
        let ad = RestrictedModule::adjoint(&h);
        let mut proj_x = FpMatrix::zeros(f2(), 3, 3);
        proj_x.set(0, 0, 1);
        assert!(!BeckModule::new(ad.clone(), proj_x).unwrap().verify(&cfg).passed());
        assert!(BeckModule::new(ad, FpMatrix::zeros(f2(), 3, 3)).unwrap().verify(&cfg).passed());
        let t = BeckModule::trivial(&h, 2, Some(FpMatrix::identity(f2(), 2))).unwrap();
        assert!(t.verify(&cfg).passed());
    }

    #[test]
    fn semidirect_examples() {
        let cfg = CheckConfig::default();
        let l = RestrictedLieAlgebra::abelian(f2(), 1);
        let b0 = BeckModule::trivial(&l, 1, None).unwrap();
        let e = beck_semidirect(&l, &b0, &cfg).unwrap();
        assert!(e.is_abelian());
        assert!(e.pmap_images().iter().all(|v| v.iter().all(|&x| x == 0)));

        let b1 = BeckModule::trivial(&l, 1, Some(FpMatrix::identity(f2(), 1))).unwrap();
        let e = beck_semidirect(&l, &b1, &cfg).unwrap();
        assert_eq!(e.p_power_vec(&[1, 1]), vec![0, 1]);

        let h = heisenberg(f2());
        let bh = BeckModule::trivial(&h, 1, None).unwrap();
        let e = beck_semidirect(&h, &bh, &cfg).unwrap();
        assert_eq!(e.dim(), 4);
        assert!(e.center().contains(&[0, 0, 0, 1]));
    }

    #[test]
    fn hom_w_examples() {
        let l = RestrictedLieAlgebra::abelian(f2(), 1);
        let t0 = BeckModule::trivial(&l, 1, None).unwrap();
        let t1 = BeckModule::trivial(&l, 1, Some(FpMatrix::identity(f2(), 1))).unwrap();
        assert_eq!(hom_w(&t0, &t0).unwrap().dim(), 1);
        assert_eq!(hom_w(&t1, &t0).unwrap().dim(), 0);
        let t2 = BeckModule::trivial(&l, 2, None).unwrap();
        assert_eq!(hom_w(&t2, &t2).unwrap().dim(), 4);
        let other = BeckModule::trivial(&heisenberg(f2()), 1, None).unwrap();
        assert_eq!(hom_w(&t0, &other), Err(Error::ParentMismatch));
    }

    #[test]
    fn pair_indices_are_dense() {
        let n = 5;
        let mut seen = vec![false; pair_count(n)];
        for i in 0..n {
            for j in i + 1..n {
                seen[pair_index(n, i, j)] = true;
            }
        }
        assert!(seen.into_iter().all(|x| x));
    }
}
