//! Dense exact linear algebra over F_p.
//!
//! Matrices act on column vectors: a linear map `F_p^n -> F_p^m` is an
//! `m x n` [`FpMatrix`]. Subspaces are stored by their reduced row-echelon
//! basis, which is canonical, so `==` on [`Subspace`] is equality of
//! subspaces.

use std::fmt;

use crate::error::{dim_err, Result};
use crate::field::PrimeField;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpMatrix[{}x{} over {}](", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{:?}", self.row(r))?;
        }
        write!(f, ")")
    }
}

impl FpMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FpMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from row-major data, reducing every entry mod p.
    pub fn from_data(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return dim_err(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            ));
        }
        let data = data.into_iter().map(|x| x % field.p()).collect();
        Ok(FpMatrix {
            field,
            rows,
            cols,
            data,
        })
    }

    /// `cols` must be given explicitly so that empty row lists are unambiguous.
    pub fn from_rows(field: PrimeField, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return dim_err(format!("row {i} has {} entries, expected {cols}", r.len()));
            }
            data.extend(r.iter().map(|x| x % field.p()));
        }
        Ok(FpMatrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<u32>]) -> Result<Self> {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return dim_err(format!("column {j} has {} entries, expected {rows}", c.len()));
            }
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x % field.p());
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.field.p();
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Row-major flattening, the coordinate convention used for spaces of maps.
    pub fn as_slice(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        let f = self.field;
        (0..self.rows).map(|r| f.dot(self.row(r), v)).collect()
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(
            self.cols, other.rows,
            "matrix product {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let f = self.field;
        let mut out = FpMatrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            let acc = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a != 0 {
                    f.axpy(acc, a, other.row(k));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        FpMatrix {
            data: f.add_vec(&self.data, &other.data),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        FpMatrix {
            data: f.sub_vec(&self.data, &other.data),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: u32) -> FpMatrix {
        FpMatrix {
            data: self.field.scale_vec(c, &self.data),
            ..self.clone()
        }
    }

    pub fn neg(&self) -> FpMatrix {
        FpMatrix {
            data: self.field.neg_vec(&self.data),
            ..self.clone()
        }
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn pow(&self, k: u64) -> FpMatrix {
        assert!(self.is_square());
        let mut acc = FpMatrix::identity(self.field, self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `ab - ba`
    pub fn commutator(&self, other: &FpMatrix) -> FpMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn hstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.rows, other.rows);
        let mut m = FpMatrix::zeros(self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c));
            }
            for c in 0..other.cols {
                m.set(r, self.cols + c, other.get(r, c));
            }
        }
        m
    }

    pub fn vstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FpMatrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn block_diag(&self, other: &FpMatrix) -> FpMatrix {
        let mut m = FpMatrix::zeros(
            self.field,
            self.rows + other.rows,
            self.cols + other.cols,
        );
        m.paste(0, 0, self);
        m.paste(self.rows, self.cols, other);
        m
    }

    pub fn paste(&mut self, r0: usize, c0: usize, block: &FpMatrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c));
            }
        }
    }

    pub fn submatrix(&self, r0: usize, rows: usize, c0: usize, cols: usize) -> FpMatrix {
        let mut m = FpMatrix::zeros(self.field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, self.get(r0 + r, c0 + c));
            }
        }
        m
    }

    /// Reduced row-echelon form together with the pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if pr != row {
                for c in 0..m.cols {
                    m.data.swap(pr * m.cols + c, row * m.cols + c);
                }
            }
            let inv = f.inv(m.get(row, col));
            for c in 0..m.cols {
                let v = f.mul(m.get(row, c), inv);
                m.set(row, c, v);
            }
            let pivot_row = m.row(row).to_vec();
            for r in 0..m.rows {
                if r != row {
                    let factor = m.get(r, col);
                    if factor != 0 {
                        let neg = f.neg(factor);
                        f.axpy(&mut m.data[r * m.cols..(r + 1) * m.cols], neg, &pivot_row);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Null space as a subspace of F_p^cols.
    pub fn kernel(&self) -> Subspace {
        let f = self.field;
        let (r, pivots) = self.rref();
        let mut gens = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(i, free));
            }
            gens.push(v);
        }
        Subspace::from_generators(f, self.cols, gens)
    }

    /// Column space as a subspace of F_p^rows.
    pub fn image(&self) -> Subspace {
        Subspace::from_generators(self.field, self.rows, self.columns())
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&FpMatrix::identity(self.field, n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.submatrix(0, n, n, n))
    }

    /// Some `L` with `L * self = I`, when `self` is injective.
    pub fn left_inverse(&self) -> Option<FpMatrix> {
        let t = self.transpose();
        let rinv = t.right_inverse()?;
        Some(rinv.transpose())
    }

    /// Some `R` with `self * R = I`, when `self` is surjective.
    pub fn right_inverse(&self) -> Option<FpMatrix> {
        let mut cols = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let e = self.field.unit_vec(self.rows, i);
            let sol = solve_linear(self, &e).ok()??;
            cols.push(sol.particular);
        }
        FpMatrix::from_columns(self.field, self.cols, &cols).ok()
    }

    /// Coefficient matrix of the linear map `X -> Q X R` under row-major
    /// flattening of `X` (shape `q.cols x r.rows`) and of the result.
    pub fn sandwich(q: &FpMatrix, r: &FpMatrix) -> FpMatrix {
        let f = q.field;
        let (xr, xc) = (q.cols, r.rows);
        let mut out = FpMatrix::zeros(f, q.rows * r.cols, xr * xc);
        for a in 0..q.rows {
            for b in 0..r.cols {
                let row = a * r.cols + b;
                for k in 0..xr {
                    let qa = q.get(a, k);
                    if qa == 0 {
                        continue;
                    }
                    for l in 0..xc {
                        let rb = r.get(l, b);
                        if rb != 0 {
                            let idx = row * out.cols + k * xc + l;
                            out.data[idx] = f.add(out.data[idx], f.mul(qa, rb));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn from_flat(field: PrimeField, rows: usize, cols: usize, flat: &[u32]) -> FpMatrix {
        assert_eq!(flat.len(), rows * cols);
        FpMatrix {
            field,
            rows,
            cols,
            data: flat.to_vec(),
        }
    }
}

/// Incrementally maintained reduced row-echelon basis.
#[derive(Clone, Debug)]
pub struct RowReducer {
    field: PrimeField,
    ncols: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl RowReducer {
    pub fn new(field: PrimeField, ncols: usize) -> Self {
        RowReducer {
            field,
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Eliminates every pivot column of `v` in place.
    pub fn reduce(&self, v: &mut [u32]) {
        let f = self.field;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c != 0 {
                f.axpy(v, f.neg(c), row);
            }
        }
    }

    /// Adds a row; returns `false` if it was already in the span.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ncols);
        let f = self.field;
        let mut v = v.to_vec();
        self.reduce(&mut v);
        let Some(pc) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[pc]);
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                f.axpy(row, f.neg(c), &v);
            }
        }
        let pos = self.pivots.partition_point(|&p| p < pc);
        self.rows.insert(pos, v);
        self.pivots.insert(pos, pc);
        true
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
}

/// A subspace of F_p^n held in reduced row-echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: PrimeField,
    ambient: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        Self::from_generators(field, ambient, (0..ambient).map(|i| field.unit_vec(ambient, i)))
    }

    pub fn from_generators<I>(field: PrimeField, ambient: usize, gens: I) -> Self
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        let mut red = RowReducer::new(field, ambient);
        for g in gens {
            if red.rank() == ambient {
                break;
            }
            red.insert(&g);
        }
        Self::from_reducer(red)
    }

    pub fn from_reducer(red: RowReducer) -> Self {
        Subspace {
            field: red.field,
            ambient: red.ncols,
            basis: red.rows,
            pivots: red.pivots,
        }
    }

    fn reducer(&self) -> RowReducer {
        RowReducer {
            field: self.field,
            ncols: self.ambient,
            rows: self.basis.clone(),
            pivots: self.pivots.clone(),
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as the columns of an `ambient x dim` matrix.
    pub fn basis_matrix(&self) -> FpMatrix {
        FpMatrix::from_columns(self.field, self.ambient, &self.basis)
            .expect("basis vectors have ambient length")
    }

    /// Canonical representative of `v + self`: all pivot entries cleared.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let mut v = v.to_vec();
        let f = self.field;
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let c = v[pc];
            if c != 0 {
                f.axpy(&mut v, f.neg(c), row);
            }
        }
        v
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        v.len() == self.ambient && self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` in the rref basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p]).collect())
    }

    pub fn combine(&self, coords: &[u32]) -> Vec<u32> {
        assert_eq!(coords.len(), self.dim());
        let mut v = vec![0; self.ambient];
        for (c, b) in coords.iter().zip(&self.basis) {
            self.field.axpy(&mut v, *c, b);
        }
        v
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut red = self.reducer();
        for b in &other.basis {
            red.insert(b);
        }
        Subspace::from_reducer(red)
    }

    pub fn with(&self, v: &[u32]) -> Subspace {
        let mut red = self.reducer();
        red.insert(v);
        Subspace::from_reducer(red)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let f = self.field;
        // Annihilator of `other`, then the combinations of our basis it kills.
        let other_rows = FpMatrix::from_rows(f, self.ambient, &other.basis).unwrap();
        let ann = other_rows.kernel();
        if self.dim() == 0 {
            return self.clone();
        }
        let ann_rows = FpMatrix::from_rows(f, self.ambient, ann.basis()).unwrap();
        let m = ann_rows.mul(&self.basis_matrix());
        let combos = m.kernel();
        Subspace::from_generators(
            f,
            self.ambient,
            combos.basis().iter().map(|c| self.combine(c)),
        )
    }

    /// Image under a linear map.
    pub fn map(&self, m: &FpMatrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient);
        Subspace::from_generators(self.field, m.rows(), self.basis.iter().map(|b| m.mul_vec(b)))
    }

    /// Enumerates every vector of the subspace (`p^dim` of them).
    pub fn elements(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        self.field
            .all_vectors(self.dim())
            .map(move |c| self.combine(&c))
    }
}

/// One solution of `A x = b` plus the solution space of `A x = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    pub particular: Vec<u32>,
    pub kernel: Subspace,
}

impl LinearSolution {
    /// All solutions, if there are at most `limit` of them.
    pub fn enumerate(&self, limit: u64) -> Option<Vec<Vec<u32>>> {
        let f = self.kernel.field();
        if f.space_size(self.kernel.dim()) > limit {
            return None;
        }
        Some(
            self.kernel
                .elements()
                .map(|k| f.add_vec(&self.particular, &k))
                .collect(),
        )
    }
}

/// Solves `A x = b`. `Ok(None)` means the system is inconsistent.
pub fn solve_linear(a: &FpMatrix, b: &[u32]) -> Result<Option<LinearSolution>> {
    if b.len() != a.rows() {
        return dim_err(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            a.rows()
        ));
    }
    let mut sys = ConstraintSystem::new(a.field(), a.cols());
    for r in 0..a.rows() {
        sys.add_equation(a.row(r), b[r]);
    }
    Ok(sys.solve())
}

/// `(kernel, image)` of a matrix; dimensions always satisfy rank-nullity.
pub fn kernel_image(a: &FpMatrix) -> (Subspace, Subspace) {
    (a.kernel(), a.image())
}

/// An affine linear system built one equation at a time.
#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    nvars: usize,
    red: RowReducer,
    inconsistent: bool,
}

impl ConstraintSystem {
    pub fn new(field: PrimeField, nvars: usize) -> Self {
        ConstraintSystem {
            nvars,
            red: RowReducer::new(field, nvars + 1),
            inconsistent: false,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> PrimeField {
        self.red.field
    }

    /// Adds `coeffs . x = rhs`.
    pub fn add_equation(&mut self, coeffs: &[u32], rhs: u32) {
        assert_eq!(coeffs.len(), self.nvars);
        if self.inconsistent {
            return;
        }
        let mut row = coeffs.to_vec();
        row.push(rhs % self.red.field.p());
        self.red.reduce(&mut row);
        match row.iter().position(|&x| x != 0) {
            None => {}
            Some(pc) if pc == self.nvars => self.inconsistent = true,
            Some(_) => {
                self.red.insert(&row);
            }
        }
    }

    /// Adds every row of `coeffs . x = rhs`.
    pub fn add_equations(&mut self, coeffs: &FpMatrix, rhs: &[u32]) {
        assert_eq!(coeffs.rows(), rhs.len());
        for r in 0..coeffs.rows() {
            self.add_equation(coeffs.row(r), rhs[r]);
        }
    }

    pub fn add_homogeneous(&mut self, coeffs: &FpMatrix) {
        for r in 0..coeffs.rows() {
            self.add_equation(coeffs.row(r), 0);
        }
    }

    pub fn is_saturated(&self) -> bool {
        self.inconsistent || self.red.rank() == self.nvars
    }

    pub fn solve(&self) -> Option<LinearSolution> {
        if self.inconsistent {
            return None;
        }
        let f = self.red.field;
        let n = self.nvars;
        let mut particular = vec![0; n];
        let mut is_pivot = vec![false; n];
        for (row, &pc) in self.red.rows().iter().zip(self.red.pivots()) {
            is_pivot[pc] = true;
            particular[pc] = row[n];
        }
        let mut gens = Vec::new();
        for free in (0..n).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; n];
            v[free] = 1;
            for (row, &pc) in self.red.rows().iter().zip(self.red.pivots()) {
                v[pc] = f.neg(row[free]);
            }
            gens.push(v);
        }
        Some(LinearSolution {
            particular,
            kernel: Subspace::from_generators(f, n, gens),
        })
    }
}

/// A quotient `F_p^n / K` realised by a projection and a linear section.
///
/// Quotient coordinates are the non-pivot coordinates of `K`'s rref basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientWithSection {
    ambient: usize,
    kernel: Subspace,
    projection: FpMatrix,
    section: FpMatrix,
}

impl QuotientWithSection {
    pub fn new(ambient: usize, kernel: Subspace) -> Result<Self> {
        if kernel.ambient() != ambient {
            return dim_err(format!(
                "kernel lives in dimension {}, ambient is {ambient}",
                kernel.ambient()
            ));
        }
        let f = kernel.field();
        let mut is_pivot = vec![false; ambient];
        for &p in kernel.pivots() {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..ambient).filter(|&c| !is_pivot[c]).collect();
        let q = free.len();
        let mut projection = FpMatrix::zeros(f, q, ambient);
        for i in 0..ambient {
            let r = kernel.reduce(&f.unit_vec(ambient, i));
            for (j, &fc) in free.iter().enumerate() {
                projection.set(j, i, r[fc]);
            }
        }
        let mut section = FpMatrix::zeros(f, ambient, q);
        for (j, &fc) in free.iter().enumerate() {
            section.set(fc, j, 1);
        }
        Ok(QuotientWithSection {
            ambient,
            kernel,
            projection,
            section,
        })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.projection.rows()
    }

    pub fn kernel(&self) -> &Subspace {
        &self.kernel
    }

    pub fn projection(&self) -> &FpMatrix {
        &self.projection
    }

    pub fn section(&self) -> &FpMatrix {
        &self.section
    }

    pub fn project(&self, v: &[u32]) -> Vec<u32> {
        self.projection.mul_vec(v)
    }

    pub fn lift(&self, q: &[u32]) -> Vec<u32> {
        self.section.mul_vec(q)
    }
}

/// `quotient_with_section(n, K)`.
pub fn quotient_with_section(ambient: usize, kernel: Subspace) -> Result<QuotientWithSection> {
    QuotientWithSection::new(ambient, kernel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn mat(p: u32, rows: &[&[u32]]) -> FpMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        FpMatrix::from_rows(f(p), cols, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
            .unwrap()
    }

    #[test]
    fn solve_identity() {
        let a = FpMatrix::identity(f(2), 2);
        let s = solve_linear(&a, &[1, 0]).unwrap().unwrap();
        assert_eq!(s.particular, vec![1, 0]);
        assert_eq!(s.kernel.dim(), 0);
    }

    #[test]
    fn solve_rank_one() {
        let a = mat(2, &[&[1, 1], &[0, 0]]);
        let s = solve_linear(&a, &[0, 0]).unwrap().unwrap();
        assert_eq!(s.kernel, Subspace::from_generators(f(2), 2, [vec![1, 1]]));
    }

    #[test]
    fn solve_inconsistent() {
        let a = FpMatrix::zeros(f(3), 2, 2);
        assert!(solve_linear(&a, &[1, 0]).unwrap().is_none());
    }

    #[test]
    fn solve_dimension_mismatch() {
        let a = FpMatrix::zeros(f(3), 2, 2);
        assert!(solve_linear(&a, &[1, 0, 0]).is_err());
    }

    #[test]
    fn kernel_image_examples() {
        let (k, i) = kernel_image(&FpMatrix::identity(f(5), 3));
        assert_eq!((k.dim(), i.dim()), (0, 3));
        let (k, i) = kernel_image(&FpMatrix::zeros(f(2), 2, 2));
        assert_eq!((k.dim(), i.dim()), (2, 0));
        let (k, i) = kernel_image(&mat(2, &[&[1, 1], &[1, 1]]));
        assert_eq!(k, Subspace::from_generators(f(2), 2, [vec![1, 1]]));
        assert_eq!(i.dim(), 1);
    }

    #[test]
    fn quotient_examples() {
        let fld = f(3);
        let k = Subspace::from_generators(fld, 3, [fld.unit_vec(3, 2)]);
        let q = quotient_with_section(3, k).unwrap();
        assert_eq!(q.dim(), 2);
        assert_eq!(
            q.section().image(),
            Subspace::from_generators(fld, 3, [fld.unit_vec(3, 0), fld.unit_vec(3, 1)])
        );

        let q = quotient_with_section(2, Subspace::full(f(2), 2)).unwrap();
        assert_eq!(q.dim(), 0);

        let k = Subspace::from_generators(f(2), 2, [vec![1, 1]]);
        let q = quotient_with_section(2, k).unwrap();
        assert_eq!(q.dim(), 1);
        assert_eq!(q.project(&[1, 0]), q.project(&[0, 1]));
    }

    #[test]
    fn inverse_and_one_sided_inverses() {
        let a = mat(5, &[&[1, 2], &[3, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), FpMatrix::identity(f(5), 2));
        let inj = mat(3, &[&[1, 0], &[2, 1], &[0, 1]]);
        let l = inj.left_inverse().unwrap();
        assert_eq!(l.mul(&inj), FpMatrix::identity(f(3), 2));
        assert!(mat(2, &[&[1, 1], &[1, 1]]).inverse().is_none());
    }

    #[test]
    fn sandwich_matches_direct_product() {
        let fld = f(3);
        let q = mat(3, &[&[1, 2], &[0, 1], &[2, 2]]);
        let r = mat(3, &[&[1, 0, 2, 1], &[2, 1, 1, 0]]);
        let x = mat(3, &[&[2, 1], &[1, 1]]);
        let coeffs = FpMatrix::sandwich(&q, &r);
        let direct = q.mul(&x).mul(&r);
        assert_eq!(coeffs.mul_vec(x.as_slice()), direct.as_slice().to_vec());
        let _ = fld;
    }

    #[test]
    fn intersection_of_planes() {
        let fld = f(2);
        let u = Subspace::from_generators(fld, 3, [vec![1, 0, 0], vec![0, 1, 0]]);
        let w = Subspace::from_generators(fld, 3, [vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(
            u.intersect(&w),
            Subspace::from_generators(fld, 3, [vec![0, 1, 0]])
        );
    }

    fn arb_matrix() -> impl Strategy<Value = (u32, usize, usize, Vec<u32>)> {
        (prop::sample::select(vec![2u32, 3, 5]), 1usize..5, 1usize..5).prop_flat_map(
            |(p, r, c)| (Just(p), Just(r), Just(c), prop::collection::vec(0..p, r * c)),
        )
    }

    proptest! {
        #[test]
        fn rank_nullity((p, r, c, data) in arb_matrix()) {
            let a = FpMatrix::from_data(f(p), r, c, data).unwrap();
            let (k, i) = kernel_image(&a);
            prop_assert_eq!(k.dim() + i.dim(), c);
            for v in k.basis() {
                prop_assert!(a.mul_vec(v).iter().all(|&x| x == 0));
            }
        }

        #[test]
        fn rref_is_canonical((p, r, c, data) in arb_matrix(), seed in 0u64..1000) {
            let fld = f(p);
            let a = FpMatrix::from_data(fld, r, c, data).unwrap();
            let rows = a.to_rows();
            // A second generating set: the rows mixed by an invertible upper
            // triangular transform, plus a redundant sum row.
            let mut mixed = Vec::new();
            for i in 0..rows.len() {
                let mut v = rows[i].clone();
                for j in i + 1..rows.len() {
                    fld.axpy(&mut v, ((seed as usize + i * 7 + j) % p as usize) as u32, &rows[j]);
                }
                mixed.push(v);
            }
            let total = rows.iter().fold(vec![0; c], |acc, v| fld.add_vec(&acc, v));
            mixed.push(total);
            mixed.reverse();
            let s1 = Subspace::from_generators(fld, c, rows);
            let s2 = Subspace::from_generators(fld, c, mixed);
            prop_assert_eq!(s1, s2);
        }

        #[test]
        fn projection_section_identity((p, r, c, data) in arb_matrix()) {
            let fld = f(p);
            let a = FpMatrix::from_data(fld, r, c, data).unwrap();
            let k = a.kernel();
            let q = quotient_with_section(c, k.clone()).unwrap();
            prop_assert_eq!(q.projection().mul(q.section()), FpMatrix::identity(fld, q.dim()));
            prop_assert_eq!(q.projection().kernel(), k.clone());
            prop_assert_eq!(q.dim(), c - k.dim());
        }
    }
}
