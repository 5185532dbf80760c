//! Abelian extensions `0 -> A -> E -> L -> 0` of restricted Lie algebras by a
//! Beck module, described by cocycle data on a basis of `L`.
//!
//! On the space `L ⊕ A` the data `(c, ω)` define
//!
//! ```text
//! [(e_i, 0), (e_j, 0)] = ([e_i, e_j], c(e_i, e_j))
//! (e_i, 0)^[p]         = (e_i^[p], ω(e_i))
//! ```
//!
//! with `A` an abelian ideal on which `L` acts through the module and
//! `(0, a)^[p] = (0, f a)`. The data are a cocycle exactly when the result
//! is a restricted Lie algebra; that is the definition used here. Two data
//! give equivalent extensions iff they differ by a coboundary
//! `(δb, νb)` for a linear `b: L -> A`, where
//!
//! ```text
//! δb(x, y) = x.b(y) - y.b(x) - b([x, y])
//! νb(x)    = x^(p-1).b(x) + f(b(x)) - b(x^[p])
//! ```

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::algebra::{direct_product, RestrictedLieAlgebra, RestrictedMorphism};
use crate::check::{random_vector, Check, CheckConfig, Mode, Report};
use crate::error::{dim_err, Error, Result};
use crate::field::PrimeField;
use crate::linalg::{ConstraintSystem, FpMatrix, QuotientWithSection, Subspace};
use crate::module::{extension_algebra, pair_count, pair_index, BeckModule};

/// Search spaces and class sets larger than this are never enumerated.
pub const ENUMERATION_LIMIT: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CocycleData {
    /// `c(e_i, e_j)` for `i < j`, in lexicographic pair order.
    pub c: Vec<Vec<u32>>,
    /// `ω(e_i)`
    pub omega: Vec<Vec<u32>>,
}

impl CocycleData {
    pub fn zero(n: usize, m: usize) -> Self {
        CocycleData {
            c: vec![vec![0; m]; pair_count(n)],
            omega: vec![vec![0; m]; n],
        }
    }

    /// Dimension of the data space for `dim L = n`, `dim A = m`.
    pub fn flat_len(n: usize, m: usize) -> usize {
        m * (pair_count(n) + n)
    }

    pub fn to_flat(&self) -> Vec<u32> {
        self.c.iter().chain(&self.omega).flatten().copied().collect()
    }

    pub fn from_flat(n: usize, m: usize, flat: &[u32]) -> Result<Self> {
        if flat.len() != Self::flat_len(n, m) {
            return dim_err(format!("flat cocycle data of length {}, expected {}", flat.len(), Self::flat_len(n, m)));
        }
        let chunks: Vec<Vec<u32>> = if m == 0 {
            vec![Vec::new(); pair_count(n) + n]
        } else {
            flat.chunks(m).map(<[u32]>::to_vec).collect()
        };
        let (c, omega) = chunks.split_at(pair_count(n));
        Ok(CocycleData {
            c: c.to_vec(),
            omega: omega.to_vec(),
        })
    }

    /// `c(e_i, e_j)` for any `i, j`.
    pub fn c_at(&self, field: PrimeField, n: usize, i: usize, j: usize) -> Vec<u32> {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.c[pair_index(n, i, j)].clone(),
            std::cmp::Ordering::Greater => field.neg_vec(&self.c[pair_index(n, j, i)]),
            std::cmp::Ordering::Equal => vec![0; self.omega.first().map_or(0, Vec::len)],
        }
    }

    pub fn add(&self, other: &CocycleData, field: PrimeField) -> CocycleData {
        let add = |a: &[Vec<u32>], b: &[Vec<u32>]| a.iter().zip(b).map(|(x, y)| field.add_vec(x, y)).collect();
        CocycleData {
            c: add(&self.c, &other.c),
            omega: add(&self.omega, &other.omega),
        }
    }

    pub fn neg(&self, field: PrimeField) -> CocycleData {
        CocycleData {
            c: self.c.iter().map(|v| field.neg_vec(v)).collect(),
            omega: self.omega.iter().map(|v| field.neg_vec(v)).collect(),
        }
    }

    fn check_shape(&self, n: usize, m: usize) -> Result<()> {
        if self.c.len() != pair_count(n) || self.omega.len() != n {
            return dim_err(format!(
                "cocycle data needs {} bracket values and {n} p-map values",
                pair_count(n)
            ));
        }
        if self.c.iter().chain(&self.omega).any(|v| v.len() != m) {
            return dim_err(format!("cocycle values must have length {m}"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianExtension {
    base: RestrictedLieAlgebra,
    module: BeckModule,
    data: CocycleData,
    algebra: RestrictedLieAlgebra,
}

fn first_failure(report: &Report) -> String {
    report
        .failures()
        .next()
        .map(|c| format!("{}: {}", c.name, c.detail.clone().unwrap_or_default()))
        .unwrap_or_default()
}

impl AbelianExtension {
    /// Realises `(c, ω)`; fails unless they form a cocycle.
    pub fn build(l: &RestrictedLieAlgebra, b: &BeckModule, data: CocycleData, cfg: &CheckConfig) -> Result<Self> {
        if b.algebra() != l {
            return Err(Error::ParentMismatch);
        }
        data.check_shape(l.dim(), b.dim())?;
        let data = CocycleData {
            c: data.c.iter().map(|v| v.iter().map(|x| x % l.p()).collect()).collect(),
            omega: data.omega.iter().map(|v| v.iter().map(|x| x % l.p()).collect()).collect(),
        };
        let algebra = extension_algebra(l, b, &data.c, &data.omega)?;
        let report = algebra.verify_restricted(cfg);
        if !report.passed() {
            return Err(Error::VerificationFailed(format!("not a cocycle ({})", first_failure(&report))));
        }
        Ok(AbelianExtension {
            base: l.clone(),
            module: b.clone(),
            data,
            algebra,
        })
    }

    pub fn split(l: &RestrictedLieAlgebra, b: &BeckModule, cfg: &CheckConfig) -> Result<Self> {
        Self::build(l, b, CocycleData::zero(l.dim(), b.dim()), cfg)
    }

    pub fn base(&self) -> &RestrictedLieAlgebra {
        &self.base
    }

    pub fn module(&self) -> &BeckModule {
        &self.module
    }

    pub fn data(&self) -> &CocycleData {
        &self.data
    }

    pub fn algebra(&self) -> &RestrictedLieAlgebra {
        &self.algebra
    }

    pub fn field(&self) -> PrimeField {
        self.base.field()
    }

    /// `A -> E`, `a ↦ (0, a)`.
    pub fn inclusion(&self) -> FpMatrix {
        let f = self.field();
        FpMatrix::zeros(f, self.base.dim(), self.module.dim()).vstack(&FpMatrix::identity(f, self.module.dim()))
    }

    /// `E -> L`, `(x, a) ↦ x`.
    pub fn projection(&self) -> FpMatrix {
        let f = self.field();
        FpMatrix::identity(f, self.base.dim()).hstack(&FpMatrix::zeros(f, self.base.dim(), self.module.dim()))
    }

    /// Reads `(c, ω)` back off the realised algebra.
    pub fn extract_data(&self) -> CocycleData {
        extract_data(&self.algebra, self.base.dim(), self.module.dim())
    }

    /// The Beck structure that `E` induces on `A`: `x.a` is the `A`-part of
    /// `[(x, 0), (0, a)]` and `f(a)` the `A`-part of `(0, a)^[p]`.
    pub fn induced_module(&self) -> Result<BeckModule> {
        let (n, m) = (self.base.dim(), self.module.dim());
        let f = self.field();
        let e = &self.algebra;
        let a_part = |v: Vec<u32>| v[n..].to_vec();
        let action = (0..n)
            .map(|i| {
                let cols: Vec<Vec<u32>> = (0..m).map(|k| a_part(e.bracket_vec(&e.basis_vec(i), &e.basis_vec(n + k)))).collect();
                FpMatrix::from_columns(f, m, &cols)
            })
            .collect::<Result<Vec<_>>>()?;
        let fcols: Vec<Vec<u32>> = (0..m).map(|k| a_part(e.p_power_vec(&e.basis_vec(n + k)))).collect();
        BeckModule::new(
            crate::module::RestrictedModule::new(self.base.clone(), m, action)?,
            FpMatrix::from_columns(f, m, &fcols)?,
        )
    }

    pub fn verify(&self, cfg: &CheckConfig) -> Report {
        let mut report = Report::new();
        report.absorb("E", self.algebra.verify_restricted(cfg));
        let a_alg = RestrictedLieAlgebra::abelian(self.field(), self.module.dim())
            .with_pmap(self.module.f().columns())
            .expect("square f");
        match RestrictedMorphism::new(a_alg, self.algebra.clone(), self.inclusion()) {
            Ok(inc) => report.absorb("inclusion", inc.check(cfg)),
            Err(e) => report.push(Check::fail("inclusion", Mode::Basis, e.to_string())),
        }
        match RestrictedMorphism::new(self.algebra.clone(), self.base.clone(), self.projection()) {
            Ok(pr) => report.absorb("projection", pr.check(cfg)),
            Err(e) => report.push(Check::fail("projection", Mode::Basis, e.to_string())),
        }
        let a = self.inclusion().image();
        let ideal = self.algebra.is_p_ideal(&a)
            && a.basis().iter().all(|u| a.basis().iter().all(|v| self.algebra.bracket_vec(u, v).iter().all(|&x| x == 0)));
        report.push(Check::from_result(
            "A is an abelian p-ideal",
            Mode::Basis,
            (!ideal).then(|| "A is not an abelian p-ideal".to_string()),
        ));
        let same = self.induced_module().map(|b| b == self.module).unwrap_or(false);
        report.push(Check::from_result(
            "induced Beck structure",
            Mode::Basis,
            (!same).then(|| "E induces a different Beck structure on A".to_string()),
        ));
        report
    }

    fn compatible(&self, other: &AbelianExtension) -> Result<()> {
        if self.base != other.base || self.module != other.module {
            return Err(Error::Invalid("extensions of different algebras or modules".into()));
        }
        Ok(())
    }

    /// A linear `b: L -> A` with `(x, a) ↦ (x, a + b x)` an isomorphism onto
    /// `other`, if one exists.
    pub fn equivalence_to(&self, other: &AbelianExtension, cfg: &CheckConfig) -> Result<Option<FpMatrix>> {
        self.compatible(other)?;
        let l = &self.base;
        let bm = &self.module;
        let fld = l.field();
        let (n, m) = (l.dim(), bm.dim());
        let p = l.p() as u64;
        let mut sys = ConstraintSystem::new(fld, m * n);
        // c - c' = δb
        for i in 0..n {
            for j in i + 1..n {
                let rhs = fld.sub_vec(&self.data.c[pair_index(n, i, j)], &other.data.c[pair_index(n, i, j)]);
                let terms = [
                    (bm.action()[i].clone(), l.basis_vec(j)),
                    (bm.action()[j].neg(), l.basis_vec(i)),
                    (FpMatrix::identity(fld, m).neg(), l.structure(i, j).to_vec()),
                ];
                add_affine_map_constraint(&mut sys, fld, m, n, &terms, &rhs);
            }
        }
        // ω(x) - ω'(x) = x^(p-1).b(x) + f(b(x)) - b(x^[p]). Once the bracket
        // constraints hold the map is a Lie morphism, whose p-map defect is
        // p-semilinear, so basis vectors suffice.
        for i in 0..n {
            let x = l.basis_vec(i);
            let mut xe = x.clone();
            xe.resize(n + m, 0);
            let w = self.algebra.p_power_vec(&xe)[n..].to_vec();
            let w2 = other.algebra.p_power_vec(&xe)[n..].to_vec();
            let coeff = bm.rho(&x).pow(p - 1).add(bm.f());
            let terms = [
                (coeff, x.clone()),
                (FpMatrix::identity(fld, m).neg(), l.p_power_vec(&x)),
            ];
            add_affine_map_constraint(&mut sys, fld, m, n, &terms, &fld.sub_vec(&w, &w2));
        }
        let Some(sol) = sys.solve() else {
            return Ok(None);
        };
        let b = FpMatrix::from_flat(fld, m, n, &sol.particular);
        let psi = self.equivalence_map(&b);
        let phi = RestrictedMorphism::new(self.algebra.clone(), other.algebra.clone(), psi)?;
        let check = phi.check(cfg);
        if !check.passed() {
            return Err(Error::VerificationFailed(format!("equivalence witness rejected:\n{check}")));
        }
        Ok(Some(b))
    }

    /// Matrix of `(x, a) ↦ (x, a + b x)`.
    pub fn equivalence_map(&self, b: &FpMatrix) -> FpMatrix {
        let fld = self.field();
        let (n, m) = (self.base.dim(), self.module.dim());
        let mut psi = FpMatrix::identity(fld, n + m);
        psi.paste(n, 0, b);
        psi
    }

    pub fn is_equivalent(&self, other: &AbelianExtension, cfg: &CheckConfig) -> Result<bool> {
        Ok(self.equivalence_to(other, cfg)?.is_some())
    }

    pub fn is_split(&self, cfg: &CheckConfig) -> Result<bool> {
        let split = AbelianExtension::split(&self.base, &self.module, cfg)?;
        self.is_equivalent(&split, cfg)
    }

    /// Baer sum: the pullback `E ×_L E'` modulo the antidiagonal copy of `A`.
    pub fn baer_sum(&self, other: &AbelianExtension, cfg: &CheckConfig) -> Result<AbelianExtension> {
        self.compatible(other)?;
        let (n, m) = (self.base.dim(), self.module.dim());
        let f = self.field();
        let d = direct_product(&self.algebra, &other.algebra)?;
        let w = n + m;
        // Pullback over L and the antidiagonal K inside it.
        let diag_cond = self.projection().hstack(&other.projection().neg());
        let pb = diag_cond.kernel();
        let k = Subspace::from_generators(
            f,
            2 * w,
            (0..m).map(|a| {
                let mut v = vec![0; 2 * w];
                v[n + a] = 1;
                v[w + n + a] = f.neg(1);
                v
            }),
        );
        let (pb_alg, pb_incl) = d.subalgebra(&pb)?;
        let pb_left = pb_incl.left_inverse().expect("independent basis");
        let k_in_pb = Subspace::from_generators(f, pb_alg.dim(), k.basis().iter().map(|v| pb_left.mul_vec(v)));
        if let Some(v) = pb_alg.p_ideal_violation(&k_in_pb) {
            return Err(Error::NotPIdeal(format!("antidiagonal: {v}")));
        }
        // Section (x, a) ↦ ((x, a), (x, 0)); reading off (x, a + a') kills K.
        let lift = |i: usize| {
            let mut v = vec![0; 2 * w];
            v[i] = 1;
            v[w + i] = 1;
            v
        };
        let read = |v: &[u32]| f.add_vec(&v[n..w], &v[w + n..]);
        let mut data = CocycleData::zero(n, m);
        for i in 0..n {
            for j in i + 1..n {
                data.c[pair_index(n, i, j)] = read(&d.bracket_vec(&lift(i), &lift(j)));
            }
            data.omega[i] = read(&d.p_power_vec(&lift(i)));
        }
        AbelianExtension::build(&self.base, &self.module, data, cfg)
    }
}

/// Adds `sum_t P_t B u_t = rhs` for an unknown `m x n` matrix `B`.
fn add_affine_map_constraint(
    sys: &mut ConstraintSystem,
    field: PrimeField,
    m: usize,
    n: usize,
    terms: &[(FpMatrix, Vec<u32>)],
    rhs: &[u32],
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
                        row[s * n + k] = field.add(row[s * n + k], field.mul(c, uk));
                    }
                }
            }
        }
        sys.add_equation(&row, rhs[r]);
    }
}

/// `(c, ω)` of an algebra laid out on `L ⊕ A` (first `n` coordinates `L`).
pub fn extract_data(e: &RestrictedLieAlgebra, n: usize, m: usize) -> CocycleData {
    let mut data = CocycleData::zero(n, m);
    for i in 0..n {
        for j in i + 1..n {
            data.c[pair_index(n, i, j)] = e.structure(i, j)[n..].to_vec();
        }
        data.omega[i] = e.pmap_basis(i)[n..].to_vec();
    }
    data
}

/// The coboundary `(δb, νb)` of a linear `b: L -> A`.
pub fn coboundary(l: &RestrictedLieAlgebra, b: &BeckModule, map: &FpMatrix) -> CocycleData {
    let f = l.field();
    let n = l.dim();
    let p = l.p() as u64;
    let mut data = CocycleData::zero(n, b.dim());
    for i in 0..n {
        let (ei, bi) = (l.basis_vec(i), map.column(i));
        for j in i + 1..n {
            let bj = map.column(j);
            let v = f.sub_vec(&b.action()[i].mul_vec(&bj), &b.action()[j].mul_vec(&bi));
            data.c[pair_index(n, i, j)] = f.sub_vec(&v, &map.mul_vec(l.structure(i, j)));
        }
        let v = b.rho(&ei).pow(p - 1).add(b.f()).mul_vec(&bi);
        data.omega[i] = f.sub_vec(&v, &map.mul_vec(l.pmap_basis(i)));
    }
    data
}

/// Coboundaries as a subspace of the flat data space.
pub fn coboundary_subspace(l: &RestrictedLieAlgebra, b: &BeckModule) -> Subspace {
    let f = l.field();
    let (n, m) = (l.dim(), b.dim());
    let gens = (0..m * n).map(|k| {
        let map = FpMatrix::from_flat(f, m, n, &f.unit_vec(m * n, k));
        coboundary(l, b, &map).to_flat()
    });
    Subspace::from_generators(f, CocycleData::flat_len(n, m), gens)
}

pub fn is_cocycle(l: &RestrictedLieAlgebra, b: &BeckModule, data: &CocycleData, cfg: &CheckConfig) -> bool {
    AbelianExtension::build(l, b, data.clone(), cfg).is_ok()
}

/// Jacobi and Jacobson-on-basis defects of the algebra built from `data`.
///
/// `A` is abelian, so every defect is linear in `(c, ω)`, and by Jacobson's
/// extension theorem the data are a cocycle exactly when all defects vanish.
pub fn cocycle_defects(l: &RestrictedLieAlgebra, b: &BeckModule, data: &CocycleData) -> Result<Vec<u32>> {
    let e = extension_algebra(l, b, &data.c, &data.omega)?;
    let f = e.field();
    let (ne, nl, p) = (e.dim(), l.dim(), e.p() as usize);
    let mut out = Vec::new();
    for i in 0..ne {
        for j in i + 1..ne {
            for k in j + 1..ne {
                let (x, y, z) = (e.basis_vec(i), e.basis_vec(j), e.basis_vec(k));
                let mut acc = e.bracket_vec(&e.bracket_vec(&x, &y), &z);
                acc = f.add_vec(&acc, &e.bracket_vec(&e.bracket_vec(&y, &z), &x));
                acc = f.add_vec(&acc, &e.bracket_vec(&e.bracket_vec(&z, &x), &y));
                out.extend(acc);
            }
        }
    }
    for j in 0..nl {
        let y = e.basis_vec(j);
        for i in 0..ne {
            let x = e.basis_vec(i);
            let lhs = e.bracket_vec(&x, e.pmap_basis(j));
            out.extend(f.sub_vec(&lhs, &e.ad_power_vec(&y, p, &x)));
        }
    }
    Ok(out)
}

/// The cocycles, as the kernel of the linear defect map.
pub fn cocycle_space(l: &RestrictedLieAlgebra, b: &BeckModule) -> Result<Subspace> {
    let f = l.field();
    let (n, m) = (l.dim(), b.dim());
    let len = CocycleData::flat_len(n, m);
    let zero = cocycle_defects(l, b, &CocycleData::zero(n, m))?;
    if zero.iter().any(|&v| v != 0) {
        return Err(Error::VerificationFailed("the split extension L ×_f A is not restricted".into()));
    }
    let cols = (0..len)
        .map(|k| cocycle_defects(l, b, &CocycleData::from_flat(n, m, &f.unit_vec(len, k))?))
        .collect::<Result<Vec<_>>>()?;
    Ok(FpMatrix::from_columns(f, zero.len(), &cols)?.kernel())
}

/// Compares the linear description of the cocycles with full verification of
/// the extension algebra, on a basis of `Z` and on seeded random points inside
/// and outside it.
pub fn check_cocycle_space(l: &RestrictedLieAlgebra, b: &BeckModule, z: &Subspace, cfg: &CheckConfig) -> Report {
    let f = l.field();
    let (n, m) = (l.dim(), b.dim());
    let len = z.ambient();
    let agrees = |flat: &[u32]| {
        let data = CocycleData::from_flat(n, m, flat).expect("flat data of the right length");
        is_cocycle(l, b, &data, cfg) == z.contains(flat)
    };
    let mut report = Report::new();
    let fail = z.basis().iter().find(|v| !agrees(v)).map(|v| format!("basis cocycle {v:?} is rejected"));
    report.push(Check::from_result("cocycle basis builds", Mode::Basis, fail));
    let mut rng = cfg.rng();
    let mut fail = None;
    for _ in 0..16 {
        let inside = z.combine(&random_vector(&mut rng, f, z.dim()));
        let anywhere = random_vector(&mut rng, f, len);
        if let Some(v) = [inside, anywhere].into_iter().find(|v| !agrees(v)) {
            fail = Some(format!("membership disagrees at {v:?}"));
            break;
        }
    }
    report.push(Check::from_result("cocycle membership", Mode::Sampled, fail));
    report
}

/// `Z / B` with one canonical representative per class.
#[derive(Clone, Debug)]
pub struct CohomologyClasses {
    pub n: usize,
    pub m: usize,
    pub cocycle_space: Subspace,
    pub coboundaries: Subspace,
    /// One canonical representative per class (cleared coboundary pivots).
    pub representatives: Vec<Vec<u32>>,
}

impl CohomologyClasses {
    pub fn dim(&self) -> usize {
        self.cocycle_space.dim() - self.coboundaries.dim()
    }

    pub fn cocycle_count(&self) -> u64 {
        self.cocycle_space.field().space_size(self.cocycle_space.dim())
    }

    pub fn is_consistent(&self) -> bool {
        let f = self.coboundaries.field();
        self.coboundaries.is_subspace_of(&self.cocycle_space)
            && self.representatives.len() as u64 == f.space_size(self.dim())
    }

    pub fn class_of(&self, data: &CocycleData) -> Vec<u32> {
        self.coboundaries.reduce(&data.to_flat())
    }

    pub fn data(&self, flat: &[u32]) -> CocycleData {
        CocycleData::from_flat(self.n, self.m, flat).expect("flat data of the right length")
    }

    /// Representatives of a basis of `Z / B`.
    pub fn basis_representatives(&self) -> Vec<Vec<u32>> {
        let mut span = self.coboundaries.clone();
        let mut out = Vec::new();
        for v in self.cocycle_space.basis() {
            if !span.contains(v) {
                span = span.with(v);
                out.push(self.coboundaries.reduce(v));
            }
        }
        out
    }
}

/// Enumerates `H^1(L, A)`; fails when it has more than [`ENUMERATION_LIMIT`]
/// classes or when the linear description of `Z` disagrees with verification.
pub fn cohomology_classes(l: &RestrictedLieAlgebra, b: &BeckModule, cfg: &CheckConfig) -> Result<CohomologyClasses> {
    let f = l.field();
    let (n, m) = (l.dim(), b.dim());
    let len = CocycleData::flat_len(n, m);
    let z = cocycle_space(l, b)?;
    let report = check_cocycle_space(l, b, &z, cfg);
    if !report.passed() {
        return Err(Error::VerificationFailed(format!("cocycle space:\n{report}")));
    }
    let coboundaries = coboundary_subspace(l, b);
    let h_dim = z.dim() - coboundaries.dim();
    let size = f.space_size(h_dim);
    if size > ENUMERATION_LIMIT {
        return Err(Error::TooLarge(format!("{size} cohomology classes")));
    }
    let quotient = QuotientWithSection::new(len, coboundaries.clone())?;
    let reps: BTreeSet<Vec<u32>> = Subspace::from_generators(f, quotient.dim(), z.basis().iter().map(|v| quotient.project(v)))
        .elements()
        .map(|q| coboundaries.reduce(&quotient.lift(&q)))
        .collect();
    Ok(CohomologyClasses {
        n,
        m,
        cocycle_space: z,
        coboundaries,
        representatives: reps.into_iter().collect(),
    })
}
