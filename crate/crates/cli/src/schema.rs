//! JSON input documents and their conversion to library values.
//!
//! Matrices are lists of rows and may hold negative integers, which are
//! reduced mod p. Wherever an algebra or module is expected, a string is
//! read as a path relative to the referencing file.

use std::fs;
use std::path::{Path, PathBuf};

use restricted_lie::crossed::CrossedModule;
use restricted_lie::extension::{AbelianExtension, CocycleData};
use restricted_lie::module::{BeckModule, RestrictedModule};
use restricted_lie::sequence::ShortExactSequence;
use restricted_lie::standard::{standard_algebra, StandardParams};
use restricted_lie::twofold::TwoFoldExtension;
use restricted_lie::{CheckConfig, FpMatrix, PrimeField, RestrictedLieAlgebra};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

pub type Rows = Vec<Vec<i64>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Ref<T> {
    Path(String),
    Inline(T),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub p: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    /// `[i, j, coefficients of [e_i, e_j]]`; antisymmetry fills in `[e_j, e_i]`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub brackets: Vec<(usize, usize, Vec<i64>)>,
    /// `e_i^[p]` for each basis vector; zero when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pmap: Option<Rows>,
    /// One of `gl`, `sl`, `heisenberg`, `abelian_semilinear`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub standard: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Rows>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub algebra: Ref<AlgebraDoc>,
    pub dim: usize,
    /// One matrix per basis vector of the algebra; zero when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<Rows>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Rows>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossedDoc {
    #[serde(rename = "M")]
    pub m: Ref<AlgebraDoc>,
    #[serde(rename = "N")]
    pub n: Ref<AlgebraDoc>,
    pub mu: Rows,
    pub eta: Vec<Rows>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceDoc {
    #[serde(rename = "N")]
    pub n: Ref<AlgebraDoc>,
    pub g: Ref<AlgebraDoc>,
    pub b: Ref<AlgebraDoc>,
    pub incl: Rows,
    pub proj: Rows,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub section: Option<Rows>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionDoc {
    /// Optional; must agree with the module's algebra when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<Ref<AlgebraDoc>>,
    pub module: Ref<ModuleDoc>,
    /// Values on pairs `i < j` in lexicographic order.
    pub c: Rows,
    pub omega: Rows,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoFoldDoc {
    #[serde(rename = "R")]
    pub r: Ref<AlgebraDoc>,
    pub module: Ref<ModuleDoc>,
    #[serde(rename = "M")]
    pub m: Ref<AlgebraDoc>,
    #[serde(rename = "N")]
    pub n: Ref<AlgebraDoc>,
    pub incl: Rows,
    pub mu: Rows,
    pub proj: Rows,
    pub eta: Vec<Rows>,
    #[serde(default)]
    pub fixed_augmentation: bool,
}

/// Which document a file holds, guessed from its keys.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DocKind {
    Algebra,
    Module,
    Crossed,
    Sequence,
    Extension,
    TwoFold,
}

pub fn detect_kind(value: &serde_json::Value) -> DocKind {
    let has = |k: &str| value.get(k).is_some();
    if has("R") {
        DocKind::TwoFold
    } else if has("omega") {
        DocKind::Extension
    } else if has("g") {
        DocKind::Sequence
    } else if has("mu") {
        DocKind::Crossed
    } else if has("algebra") {
        DocKind::Module
    } else {
        DocKind::Algebra
    }
}

/// Resolves path references relative to the file being read.
pub struct Loader {
    dir: PathBuf,
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn matrix(field: PrimeField, rows: &Rows, r: usize, c: usize, what: &str) -> Result<FpMatrix, String> {
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        return Err(format!("{what} must be a {r}x{c} matrix (list of {r} rows)"));
    }
    let data = rows.iter().flat_map(|row| field.reduce_vec(row)).collect();
    FpMatrix::from_data(field, r, c, data).map_err(|e| format!("{what}: {e}"))
}

fn vector(field: PrimeField, v: &[i64], n: usize, what: &str) -> Result<Vec<u32>, String> {
    if v.len() != n {
        return Err(format!("{what} must have {n} coefficients"));
    }
    Ok(field.reduce_vec(v))
}

fn field_of(p: u64) -> Result<PrimeField, String> {
    let small = u32::try_from(p).map_err(|_| format!("p: {p} is not a prime below 65536"))?;
    PrimeField::new(small).map_err(|e| format!("p: {e}"))
}

impl Loader {
    pub fn for_file(path: &Path) -> Self {
        Loader {
            dir: path.parent().map(Path::to_path_buf).unwrap_or_default(),
        }
    }

    fn deref<T: DeserializeOwned + Clone>(&self, r: &Ref<T>) -> Result<(T, Loader), String> {
        match r {
            Ref::Inline(t) => Ok((t.clone(), Loader { dir: self.dir.clone() })),
            Ref::Path(p) => {
                let path = self.dir.join(p);
                Ok((read_json(&path)?, Loader::for_file(&path)))
            }
        }
    }

    pub fn algebra(&self, r: &Ref<AlgebraDoc>) -> Result<RestrictedLieAlgebra, String> {
        let (doc, _) = self.deref(r)?;
        algebra_from_doc(&doc)
    }

    pub fn module(&self, r: &Ref<ModuleDoc>) -> Result<BeckModule, String> {
        let (doc, loader) = self.deref(r)?;
        let alg = loader.algebra(&doc.algebra)?;
        let f = alg.field();
        let (n, m) = (alg.dim(), doc.dim);
        let action = match &doc.action {
            None => vec![FpMatrix::zeros(f, m, m); n],
            Some(mats) if mats.len() == n => mats
                .iter()
                .enumerate()
                .map(|(i, rows)| matrix(f, rows, m, m, &format!("action[{i}]")))
                .collect::<Result<Vec<_>, _>>()?,
            Some(mats) => return Err(format!("action has {} matrices, expected {n}", mats.len())),
        };
        let fm = match &doc.f {
            None => FpMatrix::zeros(f, m, m),
            Some(rows) => matrix(f, rows, m, m, "f")?,
        };
        let module = RestrictedModule::new(alg, m, action).map_err(|e| e.to_string())?;
        BeckModule::new(module, fm).map_err(|e| e.to_string())
    }

    pub fn crossed(&self, doc: &CrossedDoc) -> Result<CrossedModule, String> {
        let m = self.algebra(&doc.m)?;
        let n = self.algebra(&doc.n)?;
        let f = n.field();
        let mu = matrix(f, &doc.mu, n.dim(), m.dim(), "mu")?;
        if doc.eta.len() != n.dim() {
            return Err(format!("eta needs one matrix per basis vector of N ({})", n.dim()));
        }
        let eta = doc
            .eta
            .iter()
            .enumerate()
            .map(|(i, rows)| matrix(f, rows, m.dim(), m.dim(), &format!("eta[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        CrossedModule::new(m, n, mu, eta).map_err(|e| e.to_string())
    }

    pub fn sequence(&self, doc: &SequenceDoc) -> Result<ShortExactSequence, String> {
        let n = self.algebra(&doc.n)?;
        let g = self.algebra(&doc.g)?;
        let b = self.algebra(&doc.b)?;
        let f = g.field();
        let incl = matrix(f, &doc.incl, g.dim(), n.dim(), "incl")?;
        let proj = matrix(f, &doc.proj, b.dim(), g.dim(), "proj")?;
        let section = doc
            .section
            .as_ref()
            .map(|rows| matrix(f, rows, g.dim(), b.dim(), "section"))
            .transpose()?;
        ShortExactSequence::new(n, g, b, incl, proj, section).map_err(|e| e.to_string())
    }

    pub fn extension_data(&self, doc: &ExtensionDoc) -> Result<(BeckModule, CocycleData), String> {
        let module = self.module(&doc.module)?;
        let l = module.algebra();
        if let Some(base) = &doc.base {
            if &self.algebra(base)? != l {
                return Err("base differs from the module's algebra".into());
            }
        }
        let f = l.field();
        let (n, m) = (l.dim(), module.dim());
        let pairs = n * n.saturating_sub(1) / 2;
        if doc.c.len() != pairs {
            return Err(format!("c needs {pairs} values, one per pair i < j"));
        }
        if doc.omega.len() != n {
            return Err(format!("omega needs {n} values, one per basis vector"));
        }
        let c = doc
            .c
            .iter()
            .enumerate()
            .map(|(k, v)| vector(f, v, m, &format!("c[{k}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let omega = doc
            .omega
            .iter()
            .enumerate()
            .map(|(k, v)| vector(f, v, m, &format!("omega[{k}]")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((module, CocycleData { c, omega }))
    }

    pub fn two_fold(&self, doc: &TwoFoldDoc) -> Result<TwoFoldExtension, String> {
        let r = self.algebra(&doc.r)?;
        let module = self.module(&doc.module)?;
        let m = self.algebra(&doc.m)?;
        let n = self.algebra(&doc.n)?;
        let f = r.field();
        let a = module.dim();
        if doc.eta.len() != n.dim() {
            return Err(format!("eta needs one matrix per basis vector of N ({})", n.dim()));
        }
        let x = TwoFoldExtension {
            incl: matrix(f, &doc.incl, m.dim(), a, "incl")?,
            mu: matrix(f, &doc.mu, n.dim(), m.dim(), "mu")?,
            proj: matrix(f, &doc.proj, r.dim(), n.dim(), "proj")?,
            eta: doc
                .eta
                .iter()
                .enumerate()
                .map(|(i, rows)| matrix(f, rows, m.dim(), m.dim(), &format!("eta[{i}]")))
                .collect::<Result<Vec<_>, _>>()?,
            r,
            module,
            m,
            n,
            fixed_augmentation: doc.fixed_augmentation,
        };
        x.validate_shapes().map_err(|e| e.to_string())?;
        Ok(x)
    }
}

pub fn algebra_from_doc(doc: &AlgebraDoc) -> Result<RestrictedLieAlgebra, String> {
    let field = field_of(doc.p)?;
    if let Some(name) = &doc.standard {
        let n = doc.n.or(doc.dim);
        let f = match (&doc.f, n) {
            (Some(rows), Some(n)) => Some(matrix(field, rows, n, n, "f")?),
            (Some(rows), None) => Some(matrix(field, rows, rows.len(), rows.len(), "f")?),
            (None, _) => None,
        };
        let std = standard_algebra(name, field, &StandardParams { n, f }).map_err(|e| e.to_string())?;
        return Ok(std.algebra);
    }
    let n = match (doc.dim, &doc.basis) {
        (Some(d), Some(b)) if b.len() != d => return Err(format!("basis has {} labels but dim is {d}", b.len())),
        (Some(d), _) => d,
        (None, Some(b)) => b.len(),
        (None, None) => return Err("an explicit algebra needs `dim` or `basis`".into()),
    };
    let labels = doc
        .basis
        .clone()
        .unwrap_or_else(|| (0..n).map(|i| format!("e{i}")).collect());
    let brackets = doc
        .brackets
        .iter()
        .map(|(i, j, v)| {
            if *i >= n || *j >= n {
                return Err(format!("bracket [{i}, {j}] refers to a basis vector beyond dim {n}"));
            }
            Ok((*i, *j, vector(field, v, n, &format!("bracket [{i}, {j}]"))?))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let pmap = match &doc.pmap {
        None => vec![vec![0; n]; n],
        Some(rows) if rows.len() == n => rows
            .iter()
            .enumerate()
            .map(|(i, v)| vector(field, v, n, &format!("pmap[{i}]")))
            .collect::<Result<Vec<_>, _>>()?,
        Some(rows) => return Err(format!("pmap has {} entries, expected {n}", rows.len())),
    };
    RestrictedLieAlgebra::new(field, labels, &brackets, pmap).map_err(|e| e.to_string())
}

fn to_rows(m: &FpMatrix) -> Rows {
    m.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(i64::from).collect())
        .collect()
}

fn to_i64(v: &[u32]) -> Vec<i64> {
    v.iter().copied().map(i64::from).collect()
}

pub fn algebra_doc(l: &RestrictedLieAlgebra) -> AlgebraDoc {
    AlgebraDoc {
        p: l.p() as u64,
        dim: Some(l.dim()),
        basis: Some(l.labels().to_vec()),
        brackets: l
            .sparse_brackets()
            .into_iter()
            .map(|(i, j, v)| (i, j, to_i64(&v)))
            .collect(),
        pmap: Some(l.pmap_images().iter().map(|v| to_i64(v)).collect()),
        standard: None,
        n: None,
        f: None,
    }
}

pub fn module_doc(b: &BeckModule) -> ModuleDoc {
    ModuleDoc {
        algebra: Ref::Inline(algebra_doc(b.algebra())),
        dim: b.dim(),
        action: Some(b.action().iter().map(to_rows).collect()),
        f: Some(to_rows(b.f())),
    }
}

pub fn extension_doc(e: &AbelianExtension) -> ExtensionDoc {
    let data = e.data();
    ExtensionDoc {
        base: None,
        module: Ref::Inline(module_doc(e.module())),
        c: data.c.iter().map(|v| to_i64(v)).collect(),
        omega: data.omega.iter().map(|v| to_i64(v)).collect(),
    }
}

pub fn matrix_json(m: &FpMatrix) -> serde_json::Value {
    serde_json::to_value(to_rows(m)).expect("integers serialise")
}

pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T, String> {
    read_json(path)
}

pub fn load_value(path: &Path) -> Result<serde_json::Value, String> {
    read_json(path)
}

/// Builds an abelian extension, reporting invalid cocycle data as a
/// mathematical rather than an input failure.
pub fn build_extension(
    module: &BeckModule,
    data: CocycleData,
    cfg: &CheckConfig,
) -> restricted_lie::Result<AbelianExtension> {
    AbelianExtension::build(module.algebra(), module, data, cfg)
}
