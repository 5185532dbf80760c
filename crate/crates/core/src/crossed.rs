//! Crossed modules of restricted Lie algebras and internal groupoids, with the
//! constructions passing between them.
//!
//! A crossed module `μ: M -> N` becomes the groupoid with arrows
//! `C = N ⋉ M` (coordinates `(n, m)`), objects `N`, `s(n, m) = n`,
//! `t(n, m) = n + μ(m)`, `e(n) = (n, 0)` and composition
//! `θ((n, m), (n + μ m, m')) = (n, m + m')`. Conversely a groupoid gives
//! `M = ker s`, `μ = t|_M` and `n.m = [e(n), m]`.

use crate::algebra::{pullback, semidirect, Pullback, RestrictedLieAlgebra, RestrictedMorphism};
use crate::check::{Check, CheckConfig, Mode, Report};
use crate::error::{dim_err, Error, Result};
use crate::linalg::{FpMatrix, Subspace};
use crate::module::RestrictedModule;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedModule {
    m: RestrictedLieAlgebra,
    n: RestrictedLieAlgebra,
    mu: RestrictedMorphism,
    /// `eta[i]` is the action of the `i`-th basis vector of `N` on `M`.
    eta: Vec<FpMatrix>,
}

impl CrossedModule {
    pub fn new(m: RestrictedLieAlgebra, n: RestrictedLieAlgebra, mu: FpMatrix, eta: Vec<FpMatrix>) -> Result<Self> {
        let mu = RestrictedMorphism::new(m.clone(), n.clone(), mu)?;
        if eta.len() != n.dim() {
            return dim_err(format!("{} action matrices for N of dimension {}", eta.len(), n.dim()));
        }
        if eta.iter().any(|a| a.rows() != m.dim() || a.cols() != m.dim()) {
            return dim_err("action matrices must be dim M x dim M");
        }
        Ok(CrossedModule { m, n, mu, eta })
    }

    /// `(I, L, inclusion)` with the adjoint action, for a p-ideal `I`.
    pub fn from_ideal(l: &RestrictedLieAlgebra, ideal: &Subspace) -> Result<Self> {
        if let Some(v) = l.p_ideal_violation(ideal) {
            return Err(Error::NotPIdeal(v));
        }
        let (m, incl) = l.subalgebra(ideal)?;
        let left = if m.dim() == 0 {
            FpMatrix::zeros(l.field(), 0, l.dim())
        } else {
            incl.left_inverse().expect("independent basis")
        };
        let eta = (0..l.dim())
            .map(|i| left.mul(&l.left_matrix(&l.basis_vec(i))).mul(&incl))
            .collect();
        CrossedModule::new(m, l.clone(), incl, eta)
    }

    pub fn m(&self) -> &RestrictedLieAlgebra {
        &self.m
    }

    pub fn n(&self) -> &RestrictedLieAlgebra {
        &self.n
    }

    pub fn mu(&self) -> &RestrictedMorphism {
        &self.mu
    }

    pub fn eta(&self) -> &[FpMatrix] {
        &self.eta
    }

    /// Action matrix of an arbitrary element of `N`.
    pub fn eta_of(&self, n: &[u32]) -> FpMatrix {
        let f = self.m.field();
        let mut acc = FpMatrix::zeros(f, self.m.dim(), self.m.dim());
        for (i, &c) in n.iter().enumerate() {
            if c != 0 {
                acc = acc.add(&self.eta[i].scale(c));
            }
        }
        acc
    }

    pub fn verify(&self, cfg: &CheckConfig) -> Report {
        let (m, n) = (&self.m, &self.n);
        let f = m.field();
        let p = m.p() as usize;
        let mut report = Report::new();
        report.absorb("M", m.verify_restricted(cfg));
        report.absorb("N", n.verify_restricted(cfg));
        report.absorb("μ", self.mu.check(cfg));
        let action = RestrictedModule::new(n.clone(), m.dim(), self.eta.clone()).expect("checked shapes");
        report.absorb("action", action.verify(cfg));

        let mut fail = None;
        'der: for (i, d) in self.eta.iter().enumerate() {
            for a in 0..m.dim() {
                for b in a + 1..m.dim() {
                    let (ea, eb) = (m.basis_vec(a), m.basis_vec(b));
                    let lhs = d.mul_vec(m.structure(a, b));
                    let rhs = f.add_vec(&m.bracket_vec(&d.mul_vec(&ea), &eb), &m.bracket_vec(&ea, &d.mul_vec(&eb)));
                    if lhs != rhs {
                        fail = Some(format!("action of {} is not a derivation", n.labels()[i]));
                        break 'der;
                    }
                }
            }
        }
        report.push(Check::from_result("action by derivations", Mode::Basis, fail));

        let sample = cfg.elements(f, m.dim());
        let fail = self.eta.iter().enumerate().find_map(|(i, d)| {
            sample.elements.iter().find_map(|x| {
                let lhs = d.mul_vec(&m.p_power_vec(x));
                let rhs = m.ad_power_vec(x, p - 1, &d.mul_vec(x));
                (lhs != rhs).then(|| format!("action of {} is not restricted at {x:?}", n.labels()[i]))
            })
        });
        report.push(Check::from_result("action by restricted derivations", sample.mode, fail));

        let mut fail = None;
        'equi: for i in 0..n.dim() {
            for a in 0..m.dim() {
                let lhs = self.mu.apply(&self.eta[i].column(a));
                let rhs = n.bracket_vec(&n.basis_vec(i), &self.mu.matrix().column(a));
                if lhs != rhs {
                    fail = Some(format!("μ({0}.{1}) != [{0}, μ({1})]", n.labels()[i], m.labels()[a]));
                    break 'equi;
                }
            }
        }
        report.push(Check::from_result("equivariance", Mode::Basis, fail));

        let mut fail = None;
        'peiffer: for a in 0..m.dim() {
            let act = self.eta_of(&self.mu.matrix().column(a));
            for b in 0..m.dim() {
                if act.column(b) != m.structure(a, b) {
                    fail = Some(format!("μ({0}).{1} != [{0}, {1}]", m.labels()[a], m.labels()[b]));
                    break 'peiffer;
                }
            }
        }
        report.push(Check::from_result("peiffer identity", Mode::Basis, fail));
        report
    }

    pub fn to_groupoid(&self, cfg: &CheckConfig) -> Result<InternalGroupoid> {
        let report = self.verify(cfg);
        if !report.passed() {
            return Err(Error::VerificationFailed(format!("crossed module axioms fail:\n{report}")));
        }
        let (n, m) = (&self.n, &self.m);
        let f = n.field();
        let (nn, nm) = (n.dim(), m.dim());
        let c = semidirect(n, m, &self.eta, cfg)?;
        let id_n = FpMatrix::identity(f, nn);
        let s = id_n.hstack(&FpMatrix::zeros(f, nn, nm));
        let t = id_n.hstack(self.mu.matrix());
        let e = id_n.vstack(&FpMatrix::zeros(f, nm, nn));
        // (n1, m1, n2, m2) -> (n1, m1 + m2)
        let mut compose = FpMatrix::zeros(f, nn + nm, 2 * (nn + nm));
        for i in 0..nn {
            compose.set(i, i, 1);
        }
        for k in 0..nm {
            compose.set(nn + k, nn + k, 1);
            compose.set(nn + k, 2 * nn + nm + k, 1);
        }
        InternalGroupoid::new(c, n.clone(), s, t, e, compose)
    }
}

/// Checks that `(φ_M, φ_N)` is an isomorphism of crossed modules.
pub fn check_crossed_isomorphism(
    x: &CrossedModule,
    y: &CrossedModule,
    phi_m: &FpMatrix,
    phi_n: &FpMatrix,
    cfg: &CheckConfig,
) -> Result<Report> {
    let fm = RestrictedMorphism::new(x.m.clone(), y.m.clone(), phi_m.clone())?;
    let fn_ = RestrictedMorphism::new(x.n.clone(), y.n.clone(), phi_n.clone())?;
    let mut report = Report::new();
    report.absorb("M-component", fm.check(cfg));
    report.absorb("N-component", fn_.check(cfg));
    let inv = phi_m.inverse().is_some() && phi_n.inverse().is_some();
    report.push(Check::from_result(
        "invertible",
        Mode::Basis,
        (!inv).then(|| "a component is not invertible".to_string()),
    ));
    let commutes = y.mu.matrix().mul(phi_m) == phi_n.mul(x.mu.matrix());
    report.push(Check::from_result(
        "commutes with μ",
        Mode::Basis,
        (!commutes).then(|| "μ' φ_M != φ_N μ".to_string()),
    ));
    let fail = (0..x.n.dim()).find_map(|i| {
        let lhs = phi_m.mul(&x.eta[i]);
        let rhs = y.eta_of(&phi_n.column(i)).mul(phi_m);
        (lhs != rhs).then(|| format!("action of {} not preserved", x.n.labels()[i]))
    });
    report.push(Check::from_result("respects actions", Mode::Basis, fail));
    Ok(report)
}

/// An internal groupoid `(C, C_0, s, t, e, θ)`.
///
/// The composition θ is stored as a matrix on all of `C × C`; only its
/// restriction to composable pairs `{(c_1, c_2) : t c_1 = s c_2}` matters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InternalGroupoid {
    c: RestrictedLieAlgebra,
    c0: RestrictedLieAlgebra,
    s: RestrictedMorphism,
    t: RestrictedMorphism,
    e: RestrictedMorphism,
    compose: FpMatrix,
}

impl InternalGroupoid {
    pub fn new(
        c: RestrictedLieAlgebra,
        c0: RestrictedLieAlgebra,
        s: FpMatrix,
        t: FpMatrix,
        e: FpMatrix,
        compose: FpMatrix,
    ) -> Result<Self> {
        let s = RestrictedMorphism::new(c.clone(), c0.clone(), s)?;
        let t = RestrictedMorphism::new(c.clone(), c0.clone(), t)?;
        let e = RestrictedMorphism::new(c0.clone(), c.clone(), e)?;
        if compose.rows() != c.dim() || compose.cols() != 2 * c.dim() {
            return dim_err("composition must be a dim C x 2 dim C matrix");
        }
        Ok(InternalGroupoid { c, c0, s, t, e, compose })
    }

    /// Every structure map the identity on `C = C_0`.
    pub fn discrete(c0: &RestrictedLieAlgebra) -> Self {
        let f = c0.field();
        let n = c0.dim();
        let id = FpMatrix::identity(f, n);
        let compose = id.hstack(&FpMatrix::zeros(f, n, n));
        InternalGroupoid::new(c0.clone(), c0.clone(), id.clone(), id.clone(), id, compose).expect("square shapes")
    }

    pub fn arrows(&self) -> &RestrictedLieAlgebra {
        &self.c
    }

    pub fn objects(&self) -> &RestrictedLieAlgebra {
        &self.c0
    }

    pub fn source(&self) -> &RestrictedMorphism {
        &self.s
    }

    pub fn target(&self) -> &RestrictedMorphism {
        &self.t
    }

    pub fn unit(&self) -> &RestrictedMorphism {
        &self.e
    }

    pub fn composition(&self) -> &FpMatrix {
        &self.compose
    }

    /// A copy with one composition entry shifted by `delta`; for fault injection.
    pub fn with_perturbed_composition(&self, row: usize, col: usize, delta: u32) -> Self {
        let mut g = self.clone();
        let f = g.c.field();
        let v = f.add(g.compose.get(row, col), delta % f.p());
        g.compose.set(row, col, v);
        g
    }

    pub fn composable_pairs(&self) -> Result<Pullback> {
        pullback(&self.t, &self.s)
    }

    /// θ as a morphism out of the pullback.
    pub fn theta(&self) -> Result<RestrictedMorphism> {
        let pb = self.composable_pairs()?;
        RestrictedMorphism::new(pb.algebra.clone(), self.c.clone(), self.compose.mul(&pb.inclusion))
    }

    pub fn compose_pair(&self, c1: &[u32], c2: &[u32]) -> Vec<u32> {
        let mut v = c1.to_vec();
        v.extend_from_slice(c2);
        self.compose.mul_vec(&v)
    }

    /// The inverse candidate `e s c - c + e t c`.
    pub fn inverse_candidate(&self, c: &[u32]) -> Vec<u32> {
        let f = self.c.field();
        let a = self.e.apply(&self.s.apply(c));
        let b = self.e.apply(&self.t.apply(c));
        f.add_vec(&f.sub_vec(&a, c), &b)
    }

    pub fn verify(&self, cfg: &CheckConfig) -> Report {
        let f = self.c.field();
        let nc = self.c.dim();
        let mut report = Report::new();
        report.absorb("C", self.c.verify_restricted(cfg));
        report.absorb("C0", self.c0.verify_restricted(cfg));
        report.absorb("s", self.s.check(cfg));
        report.absorb("t", self.t.check(cfg));
        report.absorb("e", self.e.check(cfg));

        let id0 = FpMatrix::identity(f, self.c0.dim());
        let ok = self.s.matrix().mul(self.e.matrix()) == id0 && self.t.matrix().mul(self.e.matrix()) == id0;
        report.push(Check::from_result(
            "se = te = id",
            Mode::Basis,
            (!ok).then(|| "unit is not a section of s and t".to_string()),
        ));

        let pb = match self.composable_pairs() {
            Ok(pb) => pb,
            Err(e) => {
                report.push(Check::fail("composable pairs", Mode::Basis, e.to_string()));
                return report;
            }
        };
        let theta = RestrictedMorphism::new(pb.algebra.clone(), self.c.clone(), self.compose.mul(&pb.inclusion))
            .expect("shapes agree");
        report.absorb("θ", theta.check(cfg));

        let (p1, p2) = (pb.proj1.matrix(), pb.proj2.matrix());
        let ok = self.s.matrix().mul(theta.matrix()) == self.s.matrix().mul(p1)
            && self.t.matrix().mul(theta.matrix()) == self.t.matrix().mul(p2);
        report.push(Check::from_result(
            "source and target of composites",
            Mode::Basis,
            (!ok).then(|| "s θ != s p1 or t θ != t p2".to_string()),
        ));

        let fail = (0..nc).find_map(|i| {
            let c = self.c.basis_vec(i);
            let left = self.e.apply(&self.s.apply(&c));
            let right = self.e.apply(&self.t.apply(&c));
            (self.compose_pair(&left, &c) != c || self.compose_pair(&c, &right) != c)
                .then(|| format!("unit law fails at {}", self.c.labels()[i]))
        });
        report.push(Check::from_result("unit laws", Mode::Basis, fail));

        // Composable triples form the kernel of (c1, c2, c3) -> (t c1 - s c2, t c2 - s c3).
        let (s, t) = (self.s.matrix(), self.t.matrix());
        let z = FpMatrix::zeros(f, self.c0.dim(), nc);
        let row1 = t.hstack(&s.neg()).hstack(&z);
        let row2 = z.hstack(t).hstack(&s.neg());
        let triples = row1.vstack(&row2).kernel();
        let fail = triples.basis().iter().find_map(|v| {
            let (c1, rest) = v.split_at(nc);
            let (c2, c3) = rest.split_at(nc);
            let lhs = self.compose_pair(&self.compose_pair(c1, c2), c3);
            let rhs = self.compose_pair(c1, &self.compose_pair(c2, c3));
            (lhs != rhs).then(|| format!("associativity fails at {v:?}"))
        });
        report.push(Check::from_result("associativity", Mode::Basis, fail));

        let fail = (0..nc).find_map(|i| {
            let c = self.c.basis_vec(i);
            let inv = self.inverse_candidate(&c);
            let ok = self.t.apply(&c) == self.s.apply(&inv)
                && self.t.apply(&inv) == self.s.apply(&c)
                && self.compose_pair(&c, &inv) == self.e.apply(&self.s.apply(&c))
                && self.compose_pair(&inv, &c) == self.e.apply(&self.t.apply(&c));
            (!ok).then(|| format!("inverse candidate fails at {}", self.c.labels()[i]))
        });
        report.push(Check::from_result("inverses", Mode::Basis, fail));
        report
    }

    /// `ker s ∩ ker t` commutes with all of `C`.
    pub fn kernel_intersection_is_central(&self) -> bool {
        let k = self.s.matrix().kernel().intersect(&self.t.matrix().kernel());
        k.is_subspace_of(&self.c.center())
    }

    pub fn to_crossed_module(&self, cfg: &CheckConfig) -> Result<CrossedModule> {
        let report = self.verify(cfg);
        if !report.passed() {
            return Err(Error::VerificationFailed(format!("groupoid axioms fail:\n{report}")));
        }
        let (m, incl) = self.c.subalgebra(&self.s.matrix().kernel())?;
        let f = self.c.field();
        let left = if m.dim() == 0 {
            FpMatrix::zeros(f, 0, self.c.dim())
        } else {
            incl.left_inverse().expect("independent basis")
        };
        let mu = self.t.matrix().mul(&incl);
        let eta = (0..self.c0.dim())
            .map(|i| {
                let en = self.e.matrix().column(i);
                left.mul(&self.c.left_matrix(&en)).mul(&incl)
            })
            .collect();
        CrossedModule::new(m, self.c0.clone(), mu, eta)
    }
}

/// The isomorphism `m ↦ (0, m)` from `X` to the crossed module recovered from
/// its groupoid, as `(φ_M, φ_N)`.
pub fn round_trip_isomorphism(x: &CrossedModule, back: &CrossedModule) -> Result<(FpMatrix, FpMatrix)> {
    let f = x.m.field();
    let (nn, nm) = (x.n.dim(), x.m.dim());
    if back.m.dim() != nm || back.n.dim() != nn {
        return dim_err("recovered crossed module has different dimensions");
    }
    // The recovered M sits in C = N ⋉ M as ker s, on its rref basis.
    let embed = FpMatrix::zeros(f, nn, nm).vstack(&FpMatrix::identity(f, nm));
    let ker_s = Subspace::from_generators(f, nn + nm, embed.columns());
    let basis = ker_s.basis_matrix();
    let left = if nm == 0 {
        FpMatrix::zeros(f, 0, nn + nm)
    } else {
        basis.left_inverse().expect("independent basis")
    };
    Ok((left.mul(&embed), FpMatrix::identity(f, nn)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::standard::heisenberg;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    #[test]
    fn center_of_heisenberg() {
        let cfg = CheckConfig::default();
        let h = heisenberg(f2());
        let x = CrossedModule::from_ideal(&h, &h.center()).unwrap();
        assert!(x.verify(&cfg).passed());
        let g = x.to_groupoid(&cfg).unwrap();
        assert_eq!(g.arrows().dim(), 4);
        assert!(g.verify(&cfg).passed());
        assert!(g.kernel_intersection_is_central());
        let back = g.to_crossed_module(&cfg).unwrap();
        let (pm, pn) = round_trip_isomorphism(&x, &back).unwrap();
        assert!(check_crossed_isomorphism(&x, &back, &pm, &pn, &cfg).unwrap().passed());
        assert_eq!(back.mu().matrix(), x.mu().matrix());
    }

    #[test]
    fn zero_mu_with_adjoint_action_fails() {
        let h = heisenberg(f2());
        let eta = (0..3).map(|i| h.left_matrix(&h.basis_vec(i))).collect();
        let x = CrossedModule::new(h.clone(), h.clone(), FpMatrix::zeros(f2(), 3, 3), eta).unwrap();
        let r = x.verify(&CheckConfig::default());
        assert!(!r.find("peiffer identity").unwrap().passed);
    }

    #[test]
    fn discrete_groupoid() {
        let cfg = CheckConfig::default();
        let h = heisenberg(f2());
        let g = InternalGroupoid::discrete(&h);
        assert!(g.verify(&cfg).passed());
        assert_eq!(g.to_crossed_module(&cfg).unwrap().m().dim(), 0);
    }

    #[test]
    fn zero_crossed_module() {
        let cfg = CheckConfig::default();
        let h = heisenberg(f2());
        let x = CrossedModule::from_ideal(&h, &Subspace::zero(f2(), 3)).unwrap();
        let g = x.to_groupoid(&cfg).unwrap();
        assert_eq!(g.arrows(), &h);
        assert_eq!(g.source(), &RestrictedMorphism::identity(&h));
    }

    #[test]
    fn theta_preserves_pmap_on_generator_pairs() {
        let cfg = CheckConfig::default();
        let h = heisenberg(f2());
        let x = CrossedModule::from_ideal(&h, &Subspace::full(f2(), 3)).unwrap();
        let g = x.to_groupoid(&cfg).unwrap();
        let pb = g.composable_pairs().unwrap();
        let theta = g.theta().unwrap();
        let left = pb.inclusion.left_inverse().unwrap();
        let (nn, nm) = (3, 3);
        for k in 0..nm {
            // ((0, m), (μ m, 0))
            let mut pair = vec![0; 2 * (nn + nm)];
            pair[nn + k] = 1;
            for (i, v) in x.mu().matrix().column(k).into_iter().enumerate() {
                pair[nn + nm + i] = v;
            }
            let coords = left.mul_vec(&pair);
            let lhs = theta.apply(&pb.algebra.p_power_vec(&coords));
            let rhs = g.arrows().p_power_vec(&theta.apply(&coords));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn perturbed_composition_fails() {
        let cfg = CheckConfig::default();
        let h = heisenberg(f2());
        let x = CrossedModule::from_ideal(&h, &h.center()).unwrap();
        let g = x.to_groupoid(&cfg).unwrap();
        let bad = g.with_perturbed_composition(0, 0, 1);
        assert!(!bad.verify(&cfg).passed());
    }
}
