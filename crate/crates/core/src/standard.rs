//! Named example algebras: gl_n, sl_n, the Heisenberg algebra and abelian
//! algebras with an arbitrary linear p-map.

use crate::algebra::RestrictedLieAlgebra;
use crate::error::{dim_err, Error, Result};
use crate::field::PrimeField;
use crate::linalg::FpMatrix;

/// The restricted subalgebra of `gl_m` spanned by `mats`, with bracket the
/// commutator and p-map the p-th matrix power.
pub fn matrix_algebra(
    field: PrimeField,
    labels: Vec<String>,
    mats: &[FpMatrix],
) -> Result<RestrictedLieAlgebra> {
    if labels.len() != mats.len() {
        return dim_err("one label per basis matrix");
    }
    let k = mats.len();
    if k == 0 {
        return Ok(RestrictedLieAlgebra::zero(field));
    }
    let m = mats[0].rows();
    if mats.iter().any(|a| a.rows() != m || a.cols() != m) {
        return dim_err("basis matrices must be square of one size");
    }
    let flat: Vec<Vec<u32>> = mats.iter().map(|a| a.as_slice().to_vec()).collect();
    let span = FpMatrix::from_columns(field, m * m, &flat)?;
    let left = span
        .left_inverse()
        .ok_or_else(|| Error::Invalid("basis matrices are linearly dependent".into()))?;
    let coords = |a: &FpMatrix| -> Result<Vec<u32>> {
        let c = left.mul_vec(a.as_slice());
        if span.mul_vec(&c) != a.as_slice() {
            return Err(Error::NotSubalgebra("matrix span is not closed".into()));
        }
        Ok(c)
    };
    let mut table = Vec::with_capacity(k * k);
    for a in mats {
        for b in mats {
            table.push(coords(&a.commutator(b))?);
        }
    }
    let pmap = mats
        .iter()
        .map(|a| coords(&a.pow(field.p() as u64)))
        .collect::<Result<Vec<_>>>()?;
    RestrictedLieAlgebra::from_table(field, labels, table, pmap)
}

fn unit_matrix(field: PrimeField, n: usize, a: usize, b: usize) -> FpMatrix {
    let mut m = FpMatrix::zeros(field, n, n);
    m.set(a, b, 1);
    m
}

/// Basis matrices of gl_n in the order `E_11, E_12, ..., E_nn`.
pub fn gl_basis(field: PrimeField, n: usize) -> (Vec<String>, Vec<FpMatrix>) {
    let mut labels = Vec::new();
    let mut mats = Vec::new();
    for a in 0..n {
        for b in 0..n {
            labels.push(format!("E{}{}", a + 1, b + 1));
            mats.push(unit_matrix(field, n, a, b));
        }
    }
    (labels, mats)
}

/// Basis matrices of sl_n: the off-diagonal `E_ab`, then `H_a = E_aa - E_(a+1)(a+1)`.
pub fn sl_basis(field: PrimeField, n: usize) -> (Vec<String>, Vec<FpMatrix>) {
    let mut labels = Vec::new();
    let mut mats = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b {
                labels.push(format!("E{}{}", a + 1, b + 1));
                mats.push(unit_matrix(field, n, a, b));
            }
        }
    }
    for a in 0..n.saturating_sub(1) {
        labels.push(format!("H{}", a + 1));
        let mut h = unit_matrix(field, n, a, a);
        h.set(a + 1, a + 1, field.neg(1));
        mats.push(h);
    }
    (labels, mats)
}

pub fn gl(field: PrimeField, n: usize) -> RestrictedLieAlgebra {
    let (labels, mats) = gl_basis(field, n);
    matrix_algebra(field, labels, &mats).expect("gl_n is closed")
}

pub fn sl(field: PrimeField, n: usize) -> RestrictedLieAlgebra {
    let (labels, mats) = sl_basis(field, n);
    matrix_algebra(field, labels, &mats).expect("sl_n is closed")
}

/// Basis `x, y, z` with `[x, y] = z` and zero p-map.
pub fn heisenberg(field: PrimeField) -> RestrictedLieAlgebra {
    RestrictedLieAlgebra::new(
        field,
        vec!["x".into(), "y".into(), "z".into()],
        &[(0, 1, vec![0, 0, 1])],
        vec![vec![0; 3]; 3],
    )
    .expect("valid Heisenberg data")
}

/// Abelian algebra on F_p^n with p-map `v -> f v`.
pub fn abelian_semilinear(field: PrimeField, f: &FpMatrix) -> Result<RestrictedLieAlgebra> {
    if !f.is_square() {
        return dim_err("p-map matrix must be square");
    }
    let n = f.rows();
    RestrictedLieAlgebra::abelian(field, n).with_pmap(f.columns())
}

#[derive(Clone, Debug)]
pub struct StandardAlgebra {
    pub algebra: RestrictedLieAlgebra,
    /// Non-fatal remarks, e.g. the centre of sl_n when p divides n.
    pub caveat: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct StandardParams {
    pub n: Option<usize>,
    /// p-map matrix for `abelian_semilinear`.
    pub f: Option<FpMatrix>,
}

pub fn standard_algebra(name: &str, field: PrimeField, params: &StandardParams) -> Result<StandardAlgebra> {
    let need_n = || {
        params
            .n
            .ok_or_else(|| Error::Invalid(format!("`{name}` needs a size parameter")))
    };
    let (algebra, caveat) = match name {
        "gl" => (gl(field, need_n()?), None),
        "sl" => {
            let n = need_n()?;
            let caveat = (n > 0 && n as u32 % field.p() == 0).then(|| {
                format!("p = {} divides n = {n}: the identity matrix lies in sl_{n} and is central", field.p())
            });
            (sl(field, n), caveat)
        }
        "heisenberg" => (heisenberg(field), None),
        "abelian_semilinear" => {
            let f = match (&params.f, params.n) {
                (Some(f), _) => f.clone(),
                (None, Some(n)) => FpMatrix::zeros(field, n, n),
                (None, None) => return Err(Error::Invalid("`abelian_semilinear` needs f or n".into())),
            };
            (abelian_semilinear(field, &f)?, None)
        }
        other => return Err(Error::UnknownAlgebra(other.to_string())),
    };
    Ok(StandardAlgebra { algebra, caveat })
}
