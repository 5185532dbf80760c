//! Restricted Lie algebras given by structure constants and the p-map on a basis.
//!
//! The p-map of an arbitrary element is never stored. It is computed from the
//! basis images by Jacobson's formula
//!
//! ```text
//! (x + y)^[p] = x^[p] + y^[p] + sum_{i=1}^{p-1} s_i(x, y)
//! ```
//!
//! where `i * s_i(x, y)` is the coefficient of `λ^(i-1)` in
//! `ad_{λx+y}^{p-1}(x)` and `ad_x(y) = [y, x]`. Together with
//! `(a x)^[p] = a^p x^[p] = a x^[p]` (since `a^p = a` in F_p) this determines
//! the p-map on every element.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::check::{random_vector, Check, CheckConfig, Mode, Report};
use crate::error::{dim_err, Error, Result};
use crate::field::PrimeField;
use crate::linalg::{FpMatrix, QuotientWithSection, RowReducer, Subspace};

#[derive(Clone, PartialEq, Eq)]
struct AlgebraData {
    field: PrimeField,
    labels: Vec<String>,
    /// `table[i * n + j] = [e_i, e_j]`
    table: Vec<Vec<u32>>,
    pmap: Vec<Vec<u32>>,
}

/// A finite-dimensional restricted Lie algebra over F_p. Cloning is cheap.
#[derive(Clone)]
pub struct RestrictedLieAlgebra(Arc<AlgebraData>);

impl PartialEq for RestrictedLieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for RestrictedLieAlgebra {}

impl fmt::Debug for RestrictedLieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RestrictedLieAlgebra(dim {} over {}, basis {:?})",
            self.dim(),
            self.field(),
            self.0.labels
        )
    }
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("e{i}")).collect()
}

impl RestrictedLieAlgebra {
    /// Builds an algebra from a dense bracket table (`n*n` entries, row-major
    /// in `(i, j)`) without checking any axiom.
    pub fn from_table(
        field: PrimeField,
        labels: Vec<String>,
        table: Vec<Vec<u32>>,
        pmap: Vec<Vec<u32>>,
    ) -> Result<Self> {
        let n = labels.len();
        if table.len() != n * n {
            return dim_err(format!("bracket table has {} entries, expected {}", table.len(), n * n));
        }
        if pmap.len() != n {
            return dim_err(format!("{} p-map images for dimension {n}", pmap.len()));
        }
        for v in table.iter().chain(&pmap) {
            if v.len() != n {
                return dim_err(format!("coefficient vector of length {}, expected {n}", v.len()));
            }
        }
        let reduce = |v: Vec<u32>| v.into_iter().map(|x| x % field.p()).collect::<Vec<_>>();
        Ok(RestrictedLieAlgebra(Arc::new(AlgebraData {
            field,
            labels,
            table: table.into_iter().map(reduce).collect(),
            pmap: pmap.into_iter().map(reduce).collect(),
        })))
    }

    /// Builds an algebra from sparse brackets `[e_i, e_j] = coeffs`.
    ///
    /// Missing entries are zero, `[e_j, e_i]` is filled in as `-[e_i, e_j]`,
    /// and entries given in both orders must agree.
    pub fn new(
        field: PrimeField,
        labels: Vec<String>,
        brackets: &[(usize, usize, Vec<u32>)],
        pmap: Vec<Vec<u32>>,
    ) -> Result<Self> {
        let n = labels.len();
        let mut table: Vec<Option<Vec<u32>>> = vec![None; n * n];
        for (i, j, coeffs) in brackets {
            let (i, j) = (*i, *j);
            if i >= n || j >= n {
                return dim_err(format!("bracket index ({i}, {j}) out of range for dimension {n}"));
            }
            if coeffs.len() != n {
                return dim_err(format!("bracket ({i}, {j}) has {} coefficients, expected {n}", coeffs.len()));
            }
            let c: Vec<u32> = coeffs.iter().map(|x| x % field.p()).collect();
            if i == j {
                if c.iter().any(|&x| x != 0) {
                    return Err(Error::Invalid(format!("[e{i}, e{i}] must be zero")));
                }
                continue;
            }
            let neg = field.neg_vec(&c);
            for (slot, val) in [(i * n + j, c), (j * n + i, neg)] {
                match &table[slot] {
                    Some(prev) if *prev != val => {
                        return Err(Error::Invalid(format!(
                            "brackets ({i}, {j}) and ({j}, {i}) are not negatives of each other"
                        )))
                    }
                    _ => table[slot] = Some(val),
                }
            }
        }
        let table = table.into_iter().map(|e| e.unwrap_or_else(|| vec![0; n])).collect();
        Self::from_table(field, labels, table, pmap)
    }

    /// Abelian algebra with zero p-map.
    pub fn abelian(field: PrimeField, n: usize) -> Self {
        Self::from_table(field, default_labels(n), vec![vec![0; n]; n * n], vec![vec![0; n]; n])
            .expect("consistent dimensions")
    }

    pub fn zero(field: PrimeField) -> Self {
        Self::abelian(field, 0)
    }

    /// Same brackets, different p-map images.
    pub fn with_pmap(&self, pmap: Vec<Vec<u32>>) -> Result<Self> {
        Self::from_table(self.field(), self.0.labels.clone(), self.0.table.clone(), pmap)
    }

    pub fn with_labels(&self, labels: Vec<String>) -> Result<Self> {
        Self::from_table(self.field(), labels, self.0.table.clone(), self.0.pmap.clone())
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.0.field
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.field.p()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    /// `[e_i, e_j]`
    pub fn structure(&self, i: usize, j: usize) -> &[u32] {
        &self.0.table[i * self.dim() + j]
    }

    /// `e_i^[p]`
    pub fn pmap_basis(&self, i: usize) -> &[u32] {
        &self.0.pmap[i]
    }

    pub fn pmap_images(&self) -> &[Vec<u32>] {
        &self.0.pmap
    }

    /// Nonzero brackets `[e_i, e_j]` with `i < j`.
    pub fn sparse_brackets(&self) -> Vec<(usize, usize, Vec<u32>)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let c = self.structure(i, j);
                if c.iter().any(|&x| x != 0) {
                    out.push((i, j, c.to_vec()));
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.0.table.iter().all(|v| v.iter().all(|&x| x == 0))
    }

    pub fn basis_vec(&self, i: usize) -> Vec<u32> {
        self.field().unit_vec(self.dim(), i)
    }

    pub fn zero_vec(&self) -> Vec<u32> {
        vec![0; self.dim()]
    }

    // ---- vector-level calculus --------------------------------------------

    pub fn bracket_vec(&self, u: &[u32], v: &[u32]) -> Vec<u32> {
        let n = self.dim();
        debug_assert_eq!(u.len(), n);
        debug_assert_eq!(v.len(), n);
        let f = self.field();
        let mut out = vec![0; n];
        for (i, &a) in u.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in v.iter().enumerate() {
                if b != 0 {
                    f.axpy(&mut out, f.mul(a, b), &self.0.table[i * n + j]);
                }
            }
        }
        out
    }

    /// Matrix of `ad_v = [-, v]`.
    pub fn ad_matrix(&self, v: &[u32]) -> FpMatrix {
        let n = self.dim();
        let cols: Vec<Vec<u32>> = (0..n).map(|j| self.bracket_vec(&self.basis_vec(j), v)).collect();
        FpMatrix::from_columns(self.field(), n, &cols).expect("square")
    }

    /// Matrix of `[v, -]`, i.e. left multiplication.
    pub fn left_matrix(&self, v: &[u32]) -> FpMatrix {
        self.ad_matrix(v).neg()
    }

    /// `ad_y^k(x) = [..[[x, y], y].., y]`
    pub fn ad_power_vec(&self, y: &[u32], k: usize, x: &[u32]) -> Vec<u32> {
        let mut acc = x.to_vec();
        for _ in 0..k {
            if acc.iter().all(|&a| a == 0) {
                break;
            }
            acc = self.bracket_vec(&acc, y);
        }
        acc
    }

    /// `ad_{λx+y}^{p-1}(x)` as a polynomial in λ with coefficients in the algebra.
    pub fn lambda_expansion(&self, x: &[u32], y: &[u32]) -> LambdaPolynomial {
        let f = self.field();
        let mut poly = vec![x.to_vec()];
        for _ in 1..self.p() {
            // [P(λ), λx + y] = [P, y] + λ [P, x]
            let mut next = vec![vec![0; self.dim()]; poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                let cy = self.bracket_vec(c, y);
                let cx = self.bracket_vec(c, x);
                next[k] = f.add_vec(&next[k], &cy);
                next[k + 1] = f.add_vec(&next[k + 1], &cx);
            }
            poly = next;
        }
        LambdaPolynomial::new(poly)
    }

    /// `[s_1(x, y), ..., s_{p-1}(x, y)]`
    pub fn s_coefficients_vec(&self, x: &[u32], y: &[u32]) -> Vec<Vec<u32>> {
        let f = self.field();
        let poly = self.lambda_expansion(x, y);
        (1..self.p())
            .map(|i| f.scale_vec(f.inv(i), &poly.coefficient(i as usize - 1, self.dim())))
            .collect()
    }

    /// Relation (x+y)^[p] evaluated through the given split.
    pub fn p_power_split(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = self.field();
        let mut out = f.add_vec(&self.p_power_vec(x), &self.p_power_vec(y));
        for s in self.s_coefficients_vec(x, y) {
            out = f.add_vec(&out, &s);
        }
        out
    }

    /// The p-map, by recursion on the number of nonzero coordinates.
    pub fn p_power_vec(&self, v: &[u32]) -> Vec<u32> {
        let n = self.dim();
        let f = self.field();
        let support: Vec<usize> = (0..n).filter(|&i| v[i] != 0).collect();
        match support.as_slice() {
            [] => vec![0; n],
            [i] => f.scale_vec(v[*i], &self.0.pmap[*i]),
            [first, ..] => {
                let mut x = vec![0; n];
                x[*first] = v[*first];
                let mut y = v.to_vec();
                y[*first] = 0;
                self.p_power_split(&x, &y)
            }
        }
    }

    /// Subspace of elements commuting with everything.
    pub fn center(&self) -> Subspace {
        let n = self.dim();
        let f = self.field();
        let mut stacked = FpMatrix::zeros(f, 0, n);
        for i in 0..n {
            stacked = stacked.vstack(&self.left_matrix(&self.basis_vec(i)));
        }
        stacked.kernel()
    }

    /// Ordinary Lie subalgebra generated by `gens`.
    pub fn generated_subalgebra(&self, gens: &[Vec<u32>]) -> Subspace {
        let mut red = RowReducer::new(self.field(), self.dim());
        let mut basis: Vec<Vec<u32>> = Vec::new();
        let mut queue: Vec<Vec<u32>> = gens.to_vec();
        while let Some(v) = queue.pop() {
            if !red.insert(&v) {
                continue;
            }
            for b in &basis {
                queue.push(self.bracket_vec(b, &v));
            }
            basis.push(v);
        }
        Subspace::from_reducer(red)
    }

    /// Smallest subspace containing `gens`, stable under `ad` and the p-map.
    pub fn p_ideal_generated(&self, gens: &[Vec<u32>]) -> Subspace {
        let n = self.dim();
        let mut red = RowReducer::new(self.field(), n);
        let mut queue: Vec<Vec<u32>> = gens.to_vec();
        while let Some(v) = queue.pop() {
            if !red.insert(&v) {
                continue;
            }
            for i in 0..n {
                queue.push(self.bracket_vec(&v, &self.basis_vec(i)));
            }
            queue.push(self.p_power_vec(&v));
        }
        Subspace::from_reducer(red)
    }

    /// `None` if `s` is a p-ideal, else a description of the first violation.
    pub fn p_ideal_violation(&self, s: &Subspace) -> Option<String> {
        for b in s.basis() {
            for i in 0..self.dim() {
                if !s.contains(&self.bracket_vec(b, &self.basis_vec(i))) {
                    return Some(format!("[{b:?}, {}] leaves the subspace", self.0.labels[i]));
                }
            }
            if !s.contains(&self.p_power_vec(b)) {
                return Some(format!("{b:?}^[p] leaves the subspace"));
            }
        }
        None
    }

    pub fn is_p_ideal(&self, s: &Subspace) -> bool {
        s.ambient() == self.dim() && self.p_ideal_violation(s).is_none()
    }

    // ---- verification -----------------------------------------------------

    /// Checks the alternating law, Jacobi, and Jacobson's identity
    /// `[u, v^[p]] = ad_v^p(u)`, and cross-checks that the computed p-map does
    /// not depend on how an element is split into summands.
    pub fn verify_restricted(&self, cfg: &CheckConfig) -> Report {
        let n = self.dim();
        let f = self.field();
        let p = self.p() as usize;
        let mut report = Report::new();

        let mut alt = None;
        'alt: for i in 0..n {
            if self.structure(i, i).iter().any(|&x| x != 0) {
                alt = Some(format!("[{0}, {0}] != 0", self.0.labels[i]));
                break;
            }
            for j in i + 1..n {
                if f.add_vec(self.structure(i, j), self.structure(j, i)).iter().any(|&x| x != 0) {
                    alt = Some(format!(
                        "[{}, {}] != -[{1}, {0}]",
                        self.0.labels[i], self.0.labels[j]
                    ));
                    break 'alt;
                }
            }
        }
        report.push(Check::from_result("alternating", Mode::Basis, alt));

        let mut jac = None;
        'jac: for i in 0..n {
            for j in i + 1..n {
                let ij = self.structure(i, j).to_vec();
                for k in j + 1..n {
                    let a = self.bracket_vec(&ij, &self.basis_vec(k));
                    let b = self.bracket_vec(self.structure(j, k), &self.basis_vec(i));
                    let c = self.bracket_vec(self.structure(k, i), &self.basis_vec(j));
                    let sum = f.add_vec(&f.add_vec(&a, &b), &c);
                    if sum.iter().any(|&x| x != 0) {
                        jac = Some(format!(
                            "Jacobi fails on ({}, {}, {})",
                            self.0.labels[i], self.0.labels[j], self.0.labels[k]
                        ));
                        break 'jac;
                    }
                }
            }
        }
        report.push(Check::from_result("jacobi", Mode::Basis, jac));

        let mut rel = None;
        'rel: for j in 0..n {
            let ej = self.basis_vec(j);
            for i in 0..n {
                let ei = self.basis_vec(i);
                if self.bracket_vec(&ei, &self.0.pmap[j]) != self.ad_power_vec(&ej, p, &ei) {
                    rel = Some(format!(
                        "[{0}, {1}^[p]] != ad_{1}^p({0})",
                        self.0.labels[i], self.0.labels[j]
                    ));
                    break 'rel;
                }
            }
        }
        report.push(Check::from_result("jacobson identity (basis)", Mode::Basis, rel));

        let sample = cfg.elements(f, n);
        let mut rel = None;
        for v in &sample.elements {
            let lhs = self.ad_matrix(&self.p_power_vec(v));
            if lhs != self.ad_matrix(v).pow(p as u64) {
                rel = Some(format!("ad(v^[p]) != ad(v)^p at v = {v:?}"));
                break;
            }
        }
        report.push(Check::from_result("jacobson identity (elements)", sample.mode, rel));

        let mut rng = cfg.rng();
        let mut split = None;
        if n > 0 {
            for _ in 0..cfg.samples {
                let v = random_vector(&mut rng, f, n);
                let a = random_vector(&mut rng, f, n);
                let b = f.sub_vec(&v, &a);
                if self.p_power_split(&a, &b) != self.p_power_vec(&v) {
                    split = Some(format!("p-map of {v:?} depends on the split {a:?} + {b:?}"));
                    break;
                }
            }
        }
        report.push(Check::from_result("split-order independence", Mode::Sampled, split));
        report
    }

    pub fn is_restricted(&self, cfg: &CheckConfig) -> bool {
        self.verify_restricted(cfg).passed()
    }

    // ---- constructions ----------------------------------------------------

    /// Realises the subspace spanned by the independent vectors `basis` as an
    /// algebra, returning it with its inclusion matrix.
    pub fn subalgebra_with_basis(
        &self,
        basis: &[Vec<u32>],
        labels: Option<Vec<String>>,
    ) -> Result<(RestrictedLieAlgebra, FpMatrix)> {
        let n = self.dim();
        let f = self.field();
        let k = basis.len();
        let incl = FpMatrix::from_columns(f, n, basis)?;
        if incl.rank() != k {
            return Err(Error::Invalid("subalgebra basis is linearly dependent".into()));
        }
        let left = if k == 0 {
            FpMatrix::zeros(f, 0, n)
        } else {
            incl.left_inverse().expect("independent columns")
        };
        let coords = |v: &[u32], what: &str| -> Result<Vec<u32>> {
            let c = left.mul_vec(v);
            if incl.mul_vec(&c) != v {
                return Err(Error::NotSubalgebra(format!("{what} leaves the subspace")));
            }
            Ok(c)
        };
        let mut table = Vec::with_capacity(k * k);
        for a in 0..k {
            for b in 0..k {
                table.push(coords(&self.bracket_vec(&basis[a], &basis[b]), "a bracket")?);
            }
        }
        let mut pmap = Vec::with_capacity(k);
        for b in basis {
            pmap.push(coords(&self.p_power_vec(b), "a p-th power")?);
        }
        let labels = labels.unwrap_or_else(|| {
            basis
                .iter()
                .enumerate()
                .map(|(a, v)| {
                    let support: Vec<usize> = (0..n).filter(|&i| v[i] != 0).collect();
                    match support.as_slice() {
                        [i] if v[*i] == 1 => self.0.labels[*i].clone(),
                        _ => format!("v{a}"),
                    }
                })
                .collect()
        });
        Ok((RestrictedLieAlgebra::from_table(f, labels, table, pmap)?, incl))
    }

    /// Subalgebra on the rref basis of `s`.
    pub fn subalgebra(&self, s: &Subspace) -> Result<(RestrictedLieAlgebra, FpMatrix)> {
        if s.ambient() != self.dim() {
            return dim_err("subspace ambient dimension differs from algebra dimension");
        }
        self.subalgebra_with_basis(s.basis(), None)
    }

    /// `L / I` for a p-ideal `I`.
    pub fn quotient_algebra(&self, ideal: &Subspace) -> Result<QuotientAlgebra> {
        if ideal.ambient() != self.dim() {
            return dim_err("ideal ambient dimension differs from algebra dimension");
        }
        if let Some(v) = self.p_ideal_violation(ideal) {
            return Err(Error::NotPIdeal(v));
        }
        let q = QuotientWithSection::new(self.dim(), ideal.clone())?;
        let k = q.dim();
        let lift = |a: usize| q.section().column(a);
        let mut table = Vec::with_capacity(k * k);
        for a in 0..k {
            for b in 0..k {
                table.push(q.project(&self.bracket_vec(&lift(a), &lift(b))));
            }
        }
        let pmap = (0..k).map(|a| q.project(&self.p_power_vec(&lift(a)))).collect();
        let labels = (0..k)
            .map(|a| {
                let col = lift(a);
                let i = col.iter().position(|&x| x != 0).expect("unit section column");
                self.0.labels[i].clone()
            })
            .collect();
        let algebra = RestrictedLieAlgebra::from_table(self.field(), labels, table, pmap)?;
        Ok(QuotientAlgebra { algebra, quotient: q })
    }
}

/// A quotient algebra together with its projection and linear section.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    pub algebra: RestrictedLieAlgebra,
    pub quotient: QuotientWithSection,
}

impl QuotientAlgebra {
    pub fn projection(&self, source: &RestrictedLieAlgebra) -> RestrictedMorphism {
        RestrictedMorphism::new(
            source.clone(),
            self.algebra.clone(),
            self.quotient.projection().clone(),
        )
        .expect("projection has quotient shape")
    }
}

fn merged_labels(a: &[String], b: &[String]) -> Vec<String> {
    let clash = a.iter().any(|x| b.contains(x));
    if !clash {
        return a.iter().chain(b).cloned().collect();
    }
    a.iter()
        .map(|x| format!("{x}_1"))
        .chain(b.iter().map(|x| format!("{x}_2")))
        .collect()
}

/// `L x L'` with componentwise bracket and p-map.
pub fn direct_product(l: &RestrictedLieAlgebra, r: &RestrictedLieAlgebra) -> Result<RestrictedLieAlgebra> {
    if l.field() != r.field() {
        return Err(Error::ModulusMismatch(l.p(), r.p()));
    }
    let (n1, n2) = (l.dim(), r.dim());
    let n = n1 + n2;
    let embed_l = |v: &[u32]| {
        let mut w = v.to_vec();
        w.resize(n, 0);
        w
    };
    let embed_r = |v: &[u32]| {
        let mut w = vec![0; n1];
        w.extend_from_slice(v);
        w
    };
    let mut table = vec![vec![0; n]; n * n];
    for i in 0..n1 {
        for j in 0..n1 {
            table[i * n + j] = embed_l(l.structure(i, j));
        }
    }
    for i in 0..n2 {
        for j in 0..n2 {
            table[(n1 + i) * n + n1 + j] = embed_r(r.structure(i, j));
        }
    }
    let pmap = l
        .pmap_images()
        .iter()
        .map(|v| embed_l(v))
        .chain(r.pmap_images().iter().map(|v| embed_r(v)))
        .collect();
    RestrictedLieAlgebra::from_table(l.field(), merged_labels(l.labels(), r.labels()), table, pmap)
}

/// Projections `L x L' -> L` and `L x L' -> L'` as matrices.
pub fn product_projections(field: PrimeField, n1: usize, n2: usize) -> (FpMatrix, FpMatrix) {
    let mut p1 = FpMatrix::zeros(field, n1, n1 + n2);
    let mut p2 = FpMatrix::zeros(field, n2, n1 + n2);
    for i in 0..n1 {
        p1.set(i, i, 1);
    }
    for i in 0..n2 {
        p2.set(i, n1 + i, 1);
    }
    (p1, p2)
}

#[derive(Clone, Debug)]
pub struct Pullback {
    pub algebra: RestrictedLieAlgebra,
    /// Inclusion into `L x L'`.
    pub inclusion: FpMatrix,
    pub proj1: RestrictedMorphism,
    pub proj2: RestrictedMorphism,
}

/// `L x_R L' = {(x, y) : f(x) = f'(y)}`.
pub fn pullback(f: &RestrictedMorphism, g: &RestrictedMorphism) -> Result<Pullback> {
    if f.target() != g.target() {
        return Err(Error::Invalid("pullback of morphisms with different targets".into()));
    }
    let fld = f.source().field();
    let prod = direct_product(f.source(), g.source())?;
    let diff = f.matrix().hstack(&g.matrix().neg());
    let (algebra, inclusion) = prod.subalgebra(&diff.kernel())?;
    let (p1, p2) = product_projections(fld, f.source().dim(), g.source().dim());
    let proj1 = RestrictedMorphism::new(algebra.clone(), f.source().clone(), p1.mul(&inclusion))?;
    let proj2 = RestrictedMorphism::new(algebra.clone(), g.source().clone(), p2.mul(&inclusion))?;
    Ok(Pullback {
        algebra,
        inclusion,
        proj1,
        proj2,
    })
}

/// `L ⋉ N` for an action `η` given by one `dim N x dim N` matrix per basis
/// vector of `L`. Fails unless the result is a restricted Lie algebra, which
/// happens exactly when `η` is a restricted morphism into restricted
/// derivations of `N`.
pub fn semidirect(
    l: &RestrictedLieAlgebra,
    n_alg: &RestrictedLieAlgebra,
    eta: &[FpMatrix],
    cfg: &CheckConfig,
) -> Result<RestrictedLieAlgebra> {
    let e = semidirect_unchecked(l, n_alg, eta)?;
    let report = e.verify_restricted(cfg);
    if !report.passed() {
        let first = report.failures().next().expect("a failure");
        return Err(Error::VerificationFailed(format!(
            "semi-direct product: {} ({})",
            first.name,
            first.detail.clone().unwrap_or_default()
        )));
    }
    Ok(e)
}

/// [`semidirect`] without the final verification.
pub fn semidirect_unchecked(
    l: &RestrictedLieAlgebra,
    n_alg: &RestrictedLieAlgebra,
    eta: &[FpMatrix],
) -> Result<RestrictedLieAlgebra> {
    if l.field() != n_alg.field() {
        return Err(Error::ModulusMismatch(l.p(), n_alg.p()));
    }
    let (n1, n2) = (l.dim(), n_alg.dim());
    if eta.len() != n1 {
        return dim_err(format!("{} action matrices for an algebra of dimension {n1}", eta.len()));
    }
    for m in eta {
        if m.rows() != n2 || m.cols() != n2 {
            return dim_err(format!("action matrix is {}x{}, expected {n2}x{n2}", m.rows(), m.cols()));
        }
    }
    let f = l.field();
    let n = n1 + n2;
    let mut table = direct_product(l, n_alg)?.0.table.clone();
    for i in 0..n1 {
        for k in 0..n2 {
            let mut v = vec![0; n];
            for (r, x) in eta[i].column(k).into_iter().enumerate() {
                v[n1 + r] = x;
            }
            table[(n1 + k) * n + i] = f.neg_vec(&v);
            table[i * n + n1 + k] = v;
        }
    }
    let pmap = direct_product(l, n_alg)?.0.pmap.clone();
    RestrictedLieAlgebra::from_table(f, merged_labels(l.labels(), n_alg.labels()), table, pmap)
}

/// A coefficient-vector polynomial `sum_k c_k λ^k`, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaPolynomial {
    coeffs: Vec<Vec<u32>>,
}

impl LambdaPolynomial {
    pub fn new(mut coeffs: Vec<Vec<u32>>) -> Self {
        while coeffs.last().is_some_and(|c| c.iter().all(|&x| x == 0)) {
            coeffs.pop();
        }
        LambdaPolynomial { coeffs }
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coefficients(&self) -> &[Vec<u32>] {
        &self.coeffs
    }

    pub fn coefficient(&self, k: usize, dim: usize) -> Vec<u32> {
        self.coeffs.get(k).cloned().unwrap_or_else(|| vec![0; dim])
    }

    pub fn evaluate(&self, field: PrimeField, lambda: u32, dim: usize) -> Vec<u32> {
        let mut acc = vec![0; dim];
        for c in self.coeffs.iter().rev() {
            acc = field.scale_vec(lambda, &acc);
            acc = field.add_vec(&acc, c);
        }
        acc
    }
}

/// An element of a specific algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    parent: RestrictedLieAlgebra,
    coeffs: Vec<u32>,
}

impl Element {
    pub fn new(parent: &RestrictedLieAlgebra, coeffs: Vec<u32>) -> Result<Self> {
        if coeffs.len() != parent.dim() {
            return dim_err(format!("element of length {} in dimension {}", coeffs.len(), parent.dim()));
        }
        let coeffs = coeffs.into_iter().map(|x| x % parent.p()).collect();
        Ok(Element {
            parent: parent.clone(),
            coeffs,
        })
    }

    pub fn basis(parent: &RestrictedLieAlgebra, i: usize) -> Self {
        Element {
            parent: parent.clone(),
            coeffs: parent.basis_vec(i),
        }
    }

    pub fn zero(parent: &RestrictedLieAlgebra) -> Self {
        Element {
            parent: parent.clone(),
            coeffs: parent.zero_vec(),
        }
    }

    pub fn parent(&self) -> &RestrictedLieAlgebra {
        &self.parent
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&x| x == 0)
    }

    fn same_parent(&self, other: &Element) -> Result<()> {
        if self.parent != other.parent {
            return Err(Error::ParentMismatch);
        }
        Ok(())
    }

    fn wrap(&self, coeffs: Vec<u32>) -> Element {
        Element {
            parent: self.parent.clone(),
            coeffs,
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.same_parent(other)?;
        Ok(self.wrap(self.parent.field().add_vec(&self.coeffs, &other.coeffs)))
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.same_parent(other)?;
        Ok(self.wrap(self.parent.field().sub_vec(&self.coeffs, &other.coeffs)))
    }

    pub fn scale(&self, c: u32) -> Element {
        self.wrap(self.parent.field().scale_vec(c % self.parent.p(), &self.coeffs))
    }

    pub fn bracket(&self, other: &Element) -> Result<Element> {
        self.same_parent(other)?;
        Ok(self.wrap(self.parent.bracket_vec(&self.coeffs, &other.coeffs)))
    }

    /// `ad_self^k(x)`
    pub fn ad_power(&self, k: usize, x: &Element) -> Result<Element> {
        self.same_parent(x)?;
        Ok(self.wrap(self.parent.ad_power_vec(&self.coeffs, k, &x.coeffs)))
    }

    /// `s_1(self, y), ..., s_{p-1}(self, y)`
    pub fn s_coefficients(&self, y: &Element) -> Result<Vec<Element>> {
        self.same_parent(y)?;
        Ok(self
            .parent
            .s_coefficients_vec(&self.coeffs, &y.coeffs)
            .into_iter()
            .map(|c| self.wrap(c))
            .collect())
    }

    pub fn p_power(&self) -> Element {
        self.wrap(self.parent.p_power_vec(&self.coeffs))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, l) in self.coeffs.iter().zip(self.parent.labels()) {
            if *c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *c == 1 {
                write!(f, "{l}")?;
            } else {
                write!(f, "{c}*{l}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A linear map between algebras, claimed to be a restricted morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedMorphism {
    source: RestrictedLieAlgebra,
    target: RestrictedLieAlgebra,
    matrix: FpMatrix,
}

impl RestrictedMorphism {
    pub fn new(source: RestrictedLieAlgebra, target: RestrictedLieAlgebra, matrix: FpMatrix) -> Result<Self> {
        if source.field() != target.field() {
            return Err(Error::ModulusMismatch(source.p(), target.p()));
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return dim_err(format!(
                "{}x{} matrix for a map from dimension {} to {}",
                matrix.rows(),
                matrix.cols(),
                source.dim(),
                target.dim()
            ));
        }
        if matrix.field() != source.field() {
            return Err(Error::ModulusMismatch(matrix.field().p(), source.p()));
        }
        Ok(RestrictedMorphism {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(l: &RestrictedLieAlgebra) -> Self {
        RestrictedMorphism {
            source: l.clone(),
            target: l.clone(),
            matrix: FpMatrix::identity(l.field(), l.dim()),
        }
    }

    pub fn zero(source: &RestrictedLieAlgebra, target: &RestrictedLieAlgebra) -> Self {
        RestrictedMorphism {
            source: source.clone(),
            target: target.clone(),
            matrix: FpMatrix::zeros(source.field(), target.dim(), source.dim()),
        }
    }

    pub fn source(&self) -> &RestrictedLieAlgebra {
        &self.source
    }

    pub fn target(&self) -> &RestrictedLieAlgebra {
        &self.target
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        self.matrix.mul_vec(v)
    }

    /// `other ∘ self`
    pub fn then(&self, other: &RestrictedMorphism) -> Result<RestrictedMorphism> {
        if self.target != other.source {
            return Err(Error::Invalid("composition of non-composable morphisms".into()));
        }
        RestrictedMorphism::new(self.source.clone(), other.target.clone(), other.matrix.mul(&self.matrix))
    }

    /// Brackets on basis pairs, p-maps on all (or sampled) source elements.
    pub fn check(&self, cfg: &CheckConfig) -> Report {
        let s = &self.source;
        let t = &self.target;
        let n = s.dim();
        let mut report = Report::new();
        let mut fail = None;
        'br: for i in 0..n {
            for j in i + 1..n {
                let lhs = self.apply(s.structure(i, j));
                let rhs = t.bracket_vec(&self.matrix.column(i), &self.matrix.column(j));
                if lhs != rhs {
                    fail = Some(format!(
                        "image of [{}, {}] is not the bracket of the images",
                        s.labels()[i],
                        s.labels()[j]
                    ));
                    break 'br;
                }
            }
        }
        report.push(Check::from_result("brackets", Mode::Basis, fail));
        let sample = cfg.elements(s.field(), n);
        let mut fail = None;
        for v in &sample.elements {
            if self.apply(&s.p_power_vec(v)) != t.p_power_vec(&self.apply(v)) {
                fail = Some(format!("p-map not preserved at {v:?}"));
                break;
            }
        }
        report.push(Check::from_result("p-map", sample.mode, fail));
        report
    }
}

pub fn is_restricted_morphism(phi: &RestrictedMorphism, cfg: &CheckConfig) -> bool {
    phi.check(cfg).passed()
}

/// A random element; used by property tests and sampled checks.
pub fn random_element<R: Rng>(rng: &mut R, l: &RestrictedLieAlgebra) -> Vec<u32> {
    random_vector(rng, l.field(), l.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard::{gl, heisenberg};

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    #[test]
    fn heisenberg_brackets() {
        let h = heisenberg(f2());
        let x = Element::basis(&h, 0);
        let y = Element::basis(&h, 1);
        let z = Element::basis(&h, 2);
        assert_eq!(x.bracket(&y).unwrap(), z);
        assert!(x.bracket(&x).unwrap().is_zero());
        assert_eq!(y.ad_power(1, &x).unwrap(), z);
        assert!(y.ad_power(2, &x).unwrap().is_zero());
        assert_eq!(y.ad_power(0, &x).unwrap(), x);
    }

    #[test]
    fn heisenberg_s_coefficients() {
        let h = heisenberg(f2());
        let x = Element::basis(&h, 0);
        let y = Element::basis(&h, 1);
        let s = x.s_coefficients(&y).unwrap();
        assert_eq!(s, vec![Element::basis(&h, 2)]);
        assert_eq!(x.add(&y).unwrap().p_power(), Element::basis(&h, 2));

        let h3 = heisenberg(PrimeField::new(3).unwrap());
        let x = Element::basis(&h3, 0);
        let y = Element::basis(&h3, 1);
        assert!(x.s_coefficients(&y).unwrap().iter().all(Element::is_zero));
    }

    #[test]
    fn parent_mismatch_is_an_error() {
        let h = heisenberg(f2());
        let a = RestrictedLieAlgebra::abelian(f2(), 3);
        let x = Element::basis(&h, 0);
        let y = Element::basis(&a, 0);
        assert_eq!(x.bracket(&y), Err(Error::ParentMismatch));
    }

    #[test]
    fn non_central_pmap_image_fails() {
        let h = heisenberg(f2());
        let bad = h.with_pmap(vec![vec![1, 0, 0], vec![0, 0, 0], vec![0, 0, 0]]).unwrap();
        let r = bad.verify_restricted(&CheckConfig::default());
        assert!(!r.find("jacobson identity (basis)").unwrap().passed);
    }

    #[test]
    fn gl2_frobenius() {
        let g = gl(f2(), 2);
        assert!(g.is_restricted(&CheckConfig::default()));
        assert_eq!(g.p_power_vec(&[1, 0, 0, 0]), vec![1, 0, 0, 0]);
    }

    #[test]
    fn products_and_pullbacks() {
        let h = heisenberg(f2());
        let k = RestrictedLieAlgebra::abelian(f2(), 1);
        let prod = direct_product(&h, &k).unwrap();
        assert_eq!(prod.dim(), 4);
        assert_eq!(prod.center().dim(), 2);
        assert!(prod.is_restricted(&CheckConfig::default()));

        let center = h.center();
        let q = h.quotient_algebra(&center).unwrap();
        assert_eq!(q.algebra.dim(), 2);
        assert!(q.algebra.is_abelian());
        assert!(q.algebra.pmap_images().iter().all(|v| v.iter().all(|&x| x == 0)));
        let pi = q.projection(&h);
        let pb = pullback(&pi, &pi).unwrap();
        assert_eq!(pb.algebra.dim(), 4);
        assert!(is_restricted_morphism(&pb.proj1, &CheckConfig::default()));
    }

    #[test]
    fn p_ideals() {
        let h = heisenberg(f2());
        assert_eq!(h.p_ideal_generated(&[]).dim(), 0);
        assert_eq!(h.p_ideal_generated(&[vec![0, 0, 1]]).dim(), 1);
        let s = h.p_ideal_generated(&[vec![1, 0, 0]]);
        assert_eq!(s, Subspace::from_generators(f2(), 3, [vec![1, 0, 0], vec![0, 0, 1]]));
        let not_ideal = Subspace::from_generators(f2(), 3, [vec![1, 0, 0]]);
        assert!(matches!(h.quotient_algebra(&not_ideal), Err(Error::NotPIdeal(_))));
        assert_eq!(h.quotient_algebra(&Subspace::full(f2(), 3)).unwrap().algebra.dim(), 0);
        assert_eq!(h.quotient_algebra(&Subspace::zero(f2(), 3)).unwrap().algebra, h);
    }

    #[test]
    fn semidirect_with_nilpotent_action() {
        let l = RestrictedLieAlgebra::abelian(f2(), 1);
        let n = RestrictedLieAlgebra::abelian(f2(), 2);
        let eta = FpMatrix::from_rows(f2(), 2, &[vec![0, 1], vec![0, 0]]).unwrap();
        let e = semidirect(&l, &n, &[eta], &CheckConfig::default()).unwrap();
        assert_eq!(e.dim(), 3);
        let incl = FpMatrix::from_rows(f2(), 2, &[vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
        let inc = RestrictedMorphism::new(n.clone(), e.clone(), incl).unwrap();
        assert!(is_restricted_morphism(&inc, &CheckConfig::default()));

        let zero = FpMatrix::zeros(f2(), 2, 2);
        assert_eq!(
            semidirect(&l, &n, &[zero], &CheckConfig::default()).unwrap(),
            direct_product(&l, &n).unwrap()
        );

        let bad = FpMatrix::identity(f2(), 2);
        assert!(semidirect(&l, &n, &[bad], &CheckConfig::default()).is_err());
    }

    #[test]
    fn morphism_examples() {
        let h = heisenberg(f2());
        let cfg = CheckConfig::default();
        assert!(is_restricted_morphism(&RestrictedMorphism::identity(&h), &cfg));
        assert!(is_restricted_morphism(&RestrictedMorphism::zero(&h, &h), &cfg));
        // x, y -> 1, z -> 0 respects brackets; it is restricted exactly when
        // the target p-map vanishes.
        let m = FpMatrix::from_rows(f2(), 3, &[vec![1, 1, 0]]).unwrap();
        let a0 = RestrictedLieAlgebra::abelian(f2(), 1);
        let phi = RestrictedMorphism::new(h.clone(), a0, m.clone()).unwrap();
        assert!(phi.check(&cfg).passed());
        let a1 = RestrictedLieAlgebra::abelian(f2(), 1).with_pmap(vec![vec![1]]).unwrap();
        let phi = RestrictedMorphism::new(h, a1, m).unwrap();
        let r = phi.check(&cfg);
        assert!(r.find("brackets").unwrap().passed);
        assert!(!r.find("p-map").unwrap().passed);
    }

    #[test]
    fn sparse_constructor_rejects_conflicts() {
        let labels = default_labels(2);
        let r = RestrictedLieAlgebra::new(f2(), labels.clone(), &[(0, 0, vec![1, 0])], vec![vec![0, 0]; 2]);
        assert!(r.is_err());
        let r = RestrictedLieAlgebra::new(
            PrimeField::new(3).unwrap(),
            labels,
            &[(0, 1, vec![1, 0]), (1, 0, vec![1, 0])],
            vec![vec![0, 0]; 2],
        );
        assert!(r.is_err());
    }
}
