//! Two-fold extensions `0 -> A -> M -> N -> R -> 0` whose middle map is a
//! crossed module, their Baer sum, and morphism search.
//!
//! A morphism `X -> X'` is the identity on `A` and `R` together with
//! restricted morphisms `f: M -> M'`, `g: N -> N'` making every square
//! commute and satisfying `f(n.m) = g(n).f(m)`. When the augmentation
//! `N -> R` is held fixed, `g` must be the identity; by the five lemma `f` is
//! then an isomorphism, so a single morphism in either direction decides
//! equivalence.

use crate::algebra::{direct_product, pullback, RestrictedLieAlgebra, RestrictedMorphism};
use crate::check::{Check, CheckConfig, Mode, Report};
use crate::crossed::CrossedModule;
use crate::error::{dim_err, Error, Result};
use crate::field::PrimeField;
use crate::linalg::{ConstraintSystem, FpMatrix, Subspace};
use crate::module::{BeckModule, RestrictedModule};

/// Candidate morphisms beyond this count are not enumerated.
pub const MORPHISM_SEARCH_LIMIT: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoFoldExtension {
    pub r: RestrictedLieAlgebra,
    /// The Beck `R`-module `A`.
    pub module: BeckModule,
    pub m: RestrictedLieAlgebra,
    pub n: RestrictedLieAlgebra,
    /// `A -> M`
    pub incl: FpMatrix,
    /// `M -> N`
    pub mu: FpMatrix,
    /// `N -> R`
    pub proj: FpMatrix,
    /// Action of each basis vector of `N` on `M`.
    pub eta: Vec<FpMatrix>,
    /// Whether `N -> R` is a fixed epimorphism (the morphisms then fix `N`).
    pub fixed_augmentation: bool,
}

impl TwoFoldExtension {
    pub fn field(&self) -> PrimeField {
        self.r.field()
    }

    fn check_shapes(&self) -> Result<()> {
        let (a, m, n, r) = (self.module.dim(), self.m.dim(), self.n.dim(), self.r.dim());
        let shape = |x: &FpMatrix, rows, cols, what: &str| -> Result<()> {
            if x.rows() != rows || x.cols() != cols {
                return dim_err(format!("{what} is {}x{}, expected {rows}x{cols}", x.rows(), x.cols()));
            }
            Ok(())
        };
        shape(&self.incl, m, a, "A -> M")?;
        shape(&self.mu, n, m, "M -> N")?;
        shape(&self.proj, r, n, "N -> R")?;
        if self.eta.len() != n {
            return dim_err("one action matrix per basis vector of N");
        }
        for e in &self.eta {
            shape(e, m, m, "action matrix")?;
        }
        if self.module.algebra() != &self.r {
            return Err(Error::ParentMismatch);
        }
        Ok(())
    }

    pub fn validate_shapes(&self) -> Result<()> {
        self.check_shapes()
    }

    /// `0 -> A -id-> A -0-> R -id-> R -> 0` with `R` acting on `A` through the module.
    pub fn trivial(b: &BeckModule) -> Self {
        let r = b.algebra().clone();
        let f = r.field();
        let a = b.dim();
        let a_alg = abelian_with_pmap(f, b.f());
        TwoFoldExtension {
            r: r.clone(),
            module: b.clone(),
            m: a_alg,
            n: r.clone(),
            incl: FpMatrix::identity(f, a),
            mu: FpMatrix::zeros(f, r.dim(), a),
            proj: FpMatrix::identity(f, r.dim()),
            eta: b.action().to_vec(),
            fixed_augmentation: false,
        }
    }

    pub fn crossed_module(&self) -> Result<CrossedModule> {
        CrossedModule::new(self.m.clone(), self.n.clone(), self.mu.clone(), self.eta.clone())
    }

    /// The Beck `R`-module that the sequence induces on `A`.
    pub fn induced_beck_structure(&self) -> Result<BeckModule> {
        self.check_shapes()?;
        let f = self.field();
        let (a, r) = (self.module.dim(), self.r.dim());
        let m = &self.m;
        let incl_left = if a == 0 {
            FpMatrix::zeros(f, 0, m.dim())
        } else {
            self.incl
                .left_inverse()
                .ok_or_else(|| Error::Invalid("A -> M is not injective".into()))?
        };
        let in_a = |v: &[u32], what: &str| -> Result<Vec<u32>> {
            let c = incl_left.mul_vec(v);
            if self.incl.mul_vec(&c) != v {
                return Err(Error::Invalid(format!("{what} leaves the image of A")));
            }
            Ok(c)
        };
        for k in 0..a {
            let ak = self.incl.column(k);
            for j in 0..m.dim() {
                if m.bracket_vec(&m.basis_vec(j), &ak).iter().any(|&x| x != 0) {
                    return Err(Error::NotCentral(format!("[{}, a{}] != 0", m.labels()[j], k + 1)));
                }
            }
        }
        let lift = if r == 0 {
            FpMatrix::zeros(f, self.n.dim(), 0)
        } else {
            self.proj
                .right_inverse()
                .ok_or_else(|| Error::Invalid("N -> R is not surjective".into()))?
        };
        let cross = self.crossed_module()?;
        let action = (0..r)
            .map(|i| {
                let act = cross.eta_of(&lift.column(i));
                let cols = (0..a)
                    .map(|k| in_a(&act.mul_vec(&self.incl.column(k)), "the action"))
                    .collect::<Result<Vec<_>>>()?;
                FpMatrix::from_columns(f, a, &cols)
            })
            .collect::<Result<Vec<_>>>()?;
        let fcols = (0..a)
            .map(|k| in_a(&m.p_power_vec(&self.incl.column(k)), "the p-map"))
            .collect::<Result<Vec<_>>>()?;
        BeckModule::new(
            RestrictedModule::new(self.r.clone(), a, action)?,
            FpMatrix::from_columns(f, a, &fcols)?,
        )
    }

    pub fn verify(&self, cfg: &CheckConfig) -> Report {
        let mut report = Report::new();
        if let Err(e) = self.check_shapes() {
            report.push(Check::fail("shapes", Mode::Basis, e.to_string()));
            return report;
        }
        let f = self.field();
        match self.crossed_module() {
            Ok(x) => report.absorb("crossed module", x.verify(cfg)),
            Err(e) => report.push(Check::fail("crossed module", Mode::Basis, e.to_string())),
        }
        report.absorb("R", self.r.verify_restricted(cfg));
        report.absorb("A", self.module.verify(cfg));
        let a_alg = abelian_with_pmap(f, self.module.f());
        let morphisms = [
            ("A -> M", a_alg, self.m.clone(), self.incl.clone()),
            ("N -> R", self.n.clone(), self.r.clone(), self.proj.clone()),
        ];
        for (name, s, t, mat) in morphisms {
            let phi = RestrictedMorphism::new(s, t, mat).expect("checked shapes");
            report.absorb(name, phi.check(cfg));
        }
        let a = self.module.dim();
        let exact = [
            ("exact at A", self.incl.rank() == a),
            ("exact at M", self.incl.image() == self.mu.kernel()),
            ("exact at N", self.mu.image() == self.proj.kernel()),
            ("exact at R", self.proj.rank() == self.r.dim()),
        ];
        for (name, ok) in exact {
            report.push(Check::from_result(name, Mode::Basis, (!ok).then(|| "image != kernel".to_string())));
        }
        let induced = self.induced_beck_structure();
        let fail = match induced {
            Ok(b) if b == self.module => None,
            Ok(_) => Some("the induced Beck structure differs from the declared one".to_string()),
            Err(e) => Some(e.to_string()),
        };
        report.push(Check::from_result("induced Beck structure", Mode::Basis, fail));
        report
    }

    fn compatible(&self, other: &TwoFoldExtension) -> Result<()> {
        if self.r != other.r || self.module != other.module {
            return Err(Error::Invalid("two-fold extensions over different R or A".into()));
        }
        Ok(())
    }

    /// `(M × M')/K -> N ×_R N'` with `K = {(a, -a)}`.
    pub fn baer_sum(&self, other: &TwoFoldExtension, cfg: &CheckConfig) -> Result<TwoFoldExtension> {
        self.compatible(other)?;
        self.check_shapes()?;
        other.check_shapes()?;
        let f = self.field();
        let a = self.module.dim();
        let (m1, m2) = (self.m.dim(), other.m.dim());
        let (n1, n2) = (self.n.dim(), other.n.dim());

        let p1 = RestrictedMorphism::new(self.n.clone(), self.r.clone(), self.proj.clone())?;
        let p2 = RestrictedMorphism::new(other.n.clone(), other.r.clone(), other.proj.clone())?;
        let nb = pullback(&p1, &p2)?;
        let n_left = nb.inclusion.left_inverse().unwrap_or_else(|| FpMatrix::zeros(f, 0, n1 + n2));

        let mm = direct_product(&self.m, &other.m)?;
        let k = Subspace::from_generators(
            f,
            m1 + m2,
            (0..a).map(|i| {
                let mut v = self.incl.column(i);
                v.extend(f.neg_vec(&other.incl.column(i)));
                v
            }),
        );
        if let Some(v) = mm.p_ideal_violation(&k) {
            return Err(Error::NotPIdeal(format!("antidiagonal of A: {v}")));
        }
        let q = mm.quotient_algebra(&k)?;
        let (pi, sigma) = (q.quotient.projection().clone(), q.quotient.section().clone());

        let incl = pi.mul(&self.incl.vstack(&FpMatrix::zeros(f, m2, a)));
        let mu_prod = self.mu.block_diag(&other.mu);
        let mu = n_left.mul(&mu_prod).mul(&sigma);
        if nb.inclusion.mul(&mu) != mu_prod.mul(&sigma) {
            return Err(Error::Invalid("μ × μ' does not land in the pullback".into()));
        }
        let proj = self.proj.mul(nb.proj1.matrix());
        let eta = (0..nb.algebra.dim())
            .map(|u| {
                let pair = nb.inclusion.column(u);
                let act1 = eta_of(&self.eta, &pair[..n1], m1, f);
                let act2 = eta_of(&other.eta, &pair[n1..], m2, f);
                pi.mul(&act1.block_diag(&act2)).mul(&sigma)
            })
            .collect();
        let sum = TwoFoldExtension {
            r: self.r.clone(),
            module: self.module.clone(),
            m: q.algebra,
            n: nb.algebra,
            incl,
            mu,
            proj,
            eta,
            fixed_augmentation: false,
        };
        let report = sum.verify(cfg);
        if !report.passed() {
            return Err(Error::VerificationFailed(format!("Baer sum is invalid:\n{report}")));
        }
        Ok(sum)
    }
}

fn abelian_with_pmap(f: PrimeField, pmap: &FpMatrix) -> RestrictedLieAlgebra {
    RestrictedLieAlgebra::abelian(f, pmap.rows())
        .with_pmap(pmap.columns())
        .expect("square p-map")
}

pub(crate) fn eta_of(eta: &[FpMatrix], n: &[u32], m: usize, f: PrimeField) -> FpMatrix {
    let mut acc = FpMatrix::zeros(f, m, m);
    for (e, &c) in eta.iter().zip(n) {
        if c != 0 {
            acc = acc.add(&e.scale(c));
        }
    }
    acc
}

/// Checks that `(f, g)` is a morphism `X -> Y`.
pub fn check_two_fold_morphism(
    x: &TwoFoldExtension,
    y: &TwoFoldExtension,
    fm: &FpMatrix,
    gm: &FpMatrix,
    cfg: &CheckConfig,
) -> Result<Report> {
    x.compatible(y)?;
    let fld = x.field();
    let f_mor = RestrictedMorphism::new(x.m.clone(), y.m.clone(), fm.clone())?;
    let g_mor = RestrictedMorphism::new(x.n.clone(), y.n.clone(), gm.clone())?;
    let mut report = Report::new();
    report.absorb("f", f_mor.check(cfg));
    report.absorb("g", g_mor.check(cfg));
    let squares = [
        ("A square", fm.mul(&x.incl) == y.incl),
        ("μ square", y.mu.mul(fm) == gm.mul(&x.mu)),
        ("R square", y.proj.mul(gm) == x.proj),
    ];
    for (name, ok) in squares {
        report.push(Check::from_result(name, Mode::Basis, (!ok).then(|| "square does not commute".to_string())));
    }
    let fail = (0..x.n.dim()).find_map(|i| {
        let lhs = fm.mul(&x.eta[i]);
        let rhs = eta_of(&y.eta, &gm.column(i), y.m.dim(), fld).mul(fm);
        (lhs != rhs).then(|| format!("action of {} not respected", x.n.labels()[i]))
    });
    report.push(Check::from_result("respects actions", Mode::Basis, fail));
    if x.fixed_augmentation || y.fixed_augmentation {
        let ok = x.n == y.n && x.proj == y.proj && *gm == FpMatrix::identity(fld, x.n.dim());
        report.push(Check::from_result(
            "fixed augmentation",
            Mode::Basis,
            (!ok).then(|| "N-component must be the identity".to_string()),
        ));
    }
    Ok(report)
}

/// Necessary conditions on basis vectors only: brackets and p-maps preserved,
/// actions respected. Cheap enough to run on every search candidate.
fn basis_plausible(x: &TwoFoldExtension, y: &TwoFoldExtension, fm: &FpMatrix, gm: &FpMatrix) -> bool {
    let fld = x.field();
    let preserves = |s: &RestrictedLieAlgebra, t: &RestrictedLieAlgebra, m: &FpMatrix| {
        (0..s.dim()).all(|i| {
            let ci = m.column(i);
            m.mul_vec(s.pmap_basis(i)) == t.p_power_vec(&ci)
                && (i + 1..s.dim()).all(|j| m.mul_vec(s.structure(i, j)) == t.bracket_vec(&ci, &m.column(j)))
        })
    };
    preserves(&x.m, &y.m, fm)
        && preserves(&x.n, &y.n, gm)
        && (0..x.n.dim()).all(|i| fm.mul(&x.eta[i]) == eta_of(&y.eta, &gm.column(i), y.m.dim(), fld).mul(fm))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwoFoldEquivalence {
    /// A morphism `X -> X'` (forward) or `X' -> X` (backward).
    Morphism { direction: Direction, f: FpMatrix, g: FpMatrix },
    /// The whole candidate space was searched in both directions.
    NotFound,
    /// No single morphism exists or the search was cut off, and a zig-zag
    /// could still relate the two.
    Undetermined(String),
}

impl TwoFoldEquivalence {
    pub fn is_equivalent(&self) -> Option<bool> {
        match self {
            TwoFoldEquivalence::Morphism { .. } => Some(true),
            TwoFoldEquivalence::NotFound => Some(false),
            TwoFoldEquivalence::Undetermined(_) => None,
        }
    }
}

enum Search {
    Found(FpMatrix, FpMatrix),
    Exhausted,
    TooLarge(u64),
}

fn search_morphism(x: &TwoFoldExtension, y: &TwoFoldExtension, cfg: &CheckConfig) -> Result<Search> {
    let fld = x.field();
    let (mx, my, nx, ny) = (x.m.dim(), y.m.dim(), x.n.dim(), y.n.dim());
    let nf = my * mx;
    let ng = ny * nx;
    let mut sys = ConstraintSystem::new(fld, nf + ng);
    let pad_f = |eq: &FpMatrix| eq.hstack(&FpMatrix::zeros(fld, eq.rows(), ng));
    let pad_g = |eq: &FpMatrix| FpMatrix::zeros(fld, eq.rows(), nf).hstack(eq);
    // f incl = incl'
    sys.add_equations(&pad_f(&FpMatrix::sandwich(&FpMatrix::identity(fld, my), &x.incl)), y.incl.as_slice());
    // μ' f - g μ = 0
    let eq = FpMatrix::sandwich(&y.mu, &FpMatrix::identity(fld, mx))
        .hstack(&FpMatrix::sandwich(&FpMatrix::identity(fld, ny), &x.mu).neg());
    sys.add_homogeneous(&eq);
    // proj' g = proj
    sys.add_equations(&pad_g(&FpMatrix::sandwich(&y.proj, &FpMatrix::identity(fld, nx))), x.proj.as_slice());
    if x.fixed_augmentation || y.fixed_augmentation {
        if x.n != y.n || x.proj != y.proj {
            return Ok(Search::Exhausted);
        }
        let id = FpMatrix::identity(fld, ng);
        sys.add_equations(&pad_g(&id), FpMatrix::identity(fld, nx).as_slice());
    }
    let Some(sol) = sys.solve() else {
        return Ok(Search::Exhausted);
    };
    let Some(all) = sol.enumerate(MORPHISM_SEARCH_LIMIT) else {
        return Ok(Search::TooLarge(fld.space_size(sol.kernel.dim())));
    };
    for v in all {
        let fm = FpMatrix::from_flat(fld, my, mx, &v[..nf]);
        let gm = FpMatrix::from_flat(fld, ny, nx, &v[nf..]);
        if !basis_plausible(x, y, &fm, &gm) {
            continue;
        }
        if check_two_fold_morphism(x, y, &fm, &gm, cfg)?.passed() {
            return Ok(Search::Found(fm, gm));
        }
    }
    Ok(Search::Exhausted)
}

/// Looks for a single morphism between `x` and `y` in either direction.
///
/// Without one, the answer is [`TwoFoldEquivalence::NotFound`] when a single
/// morphism is decisive (fixed augmentation, or `max_zigzag <= 1`) and
/// [`TwoFoldEquivalence::Undetermined`] otherwise; longer zig-zags are not
/// searched.
pub fn is_equivalent_2(
    x: &TwoFoldExtension,
    y: &TwoFoldExtension,
    max_zigzag: usize,
    cfg: &CheckConfig,
) -> Result<TwoFoldEquivalence> {
    x.compatible(y)?;
    x.check_shapes()?;
    y.check_shapes()?;
    let mut cut_off = None;
    for (dir, a, b) in [(Direction::Forward, x, y), (Direction::Backward, y, x)] {
        match search_morphism(a, b, cfg)? {
            Search::Found(f, g) => return Ok(TwoFoldEquivalence::Morphism { direction: dir, f, g }),
            Search::Exhausted => {}
            Search::TooLarge(n) => cut_off = Some(n),
        }
    }
    if let Some(n) = cut_off {
        return Ok(TwoFoldEquivalence::Undetermined(format!("{n} candidate morphisms exceed the search limit")));
    }
    let fixed = x.fixed_augmentation && y.fixed_augmentation;
    if fixed || max_zigzag <= 1 {
        Ok(TwoFoldEquivalence::NotFound)
    } else {
        Ok(TwoFoldEquivalence::Undetermined(
            "no single morphism; longer zig-zags are not searched".into(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard::heisenberg;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    /// `0 -> span{z} -> H -> F_2^2 × R -> R -> 0` with `R` one-dimensional,
    /// `μ` the quotient map into the first factor and `N -> R` the second
    /// projection.
    fn heisenberg_two_fold() -> TwoFoldExtension {
        let f = f2();
        let h = heisenberg(f);
        let q = h.quotient_algebra(&h.center()).unwrap();
        let r = RestrictedLieAlgebra::abelian(f, 1);
        let n = direct_product(&q.algebra, &r).unwrap();
        let mut eta: Vec<FpMatrix> = (0..2)
            .map(|i| h.left_matrix(&q.quotient.section().column(i)))
            .collect();
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

    #[test]
    fn trivial_is_valid() {
        let cfg = CheckConfig::default();
        let r = RestrictedLieAlgebra::abelian(f2(), 2);
        let b = BeckModule::trivial(&r, 1, None).unwrap();
        let t = TwoFoldExtension::trivial(&b);
        assert!(t.verify(&cfg).passed());
        let mut bad = t.clone();
        bad.mu = FpMatrix::from_rows(f2(), 1, &[vec![1], vec![0]]).unwrap();
        assert!(!bad.verify(&cfg).find("exact at M").unwrap().passed);
    }

    #[test]
    fn heisenberg_two_fold_is_valid() {
        let cfg = CheckConfig::default();
        let x = heisenberg_two_fold();
        assert!(x.verify(&cfg).passed(), "{}", x.verify(&cfg));
        let b = x.induced_beck_structure().unwrap();
        assert!(b.action().iter().all(FpMatrix::is_zero));
    }

    #[test]
    fn non_central_kernel_is_rejected() {
        let mut x = heisenberg_two_fold();
        x.incl = FpMatrix::from_rows(f2(), 1, &[vec![1], vec![0], vec![0]]).unwrap();
        assert!(matches!(x.induced_beck_structure(), Err(Error::NotCentral(_))));
    }

    #[test]
    fn trivial_is_neutral() {
        let cfg = CheckConfig::default();
        let x = heisenberg_two_fold();
        let t = TwoFoldExtension::trivial(&x.module);
        let s = x.baer_sum(&t, &cfg).unwrap();
        let eq = is_equivalent_2(&s, &x, 1, &cfg).unwrap();
        assert_eq!(eq.is_equivalent(), Some(true));
        let eq = is_equivalent_2(&x, &x, 1, &cfg).unwrap();
        assert!(matches!(eq, TwoFoldEquivalence::Morphism { .. }));
    }
}
