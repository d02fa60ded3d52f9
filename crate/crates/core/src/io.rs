//! JSON interchange formats.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, CMatrix, RMatrix};
use crate::nullifier::NullifierBasis;

/// Entries smaller than this are written as exact zeros.
pub const JSON_ZERO_EPS: f64 = 1e-14;

/// `{"n": n, "entries": [[re, im], ...]}` in row-major order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub entries: Vec<Entry>,
}

/// A matrix entry: `[re, im]` or a bare real number on input.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Complex([f64; 2]),
    Real(f64),
}

impl Entry {
    fn parts(self) -> (f64, f64) {
        match self {
            Entry::Complex([re, im]) => (re, im),
            Entry::Real(re) => (re, 0.0),
        }
    }
}

fn clean(x: f64) -> f64 {
    if x.abs() < JSON_ZERO_EPS {
        0.0
    } else {
        x
    }
}

impl MatrixJson {
    pub fn from_matrix(m: &CMatrix) -> Self {
        let n = m.nrows();
        let entries = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| Entry::Complex([clean(m[(i, j)].re), clean(m[(i, j)].im)]))
            .collect();
        Self { n, entries }
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        if self.entries.len() != self.n * self.n {
            return Err(Error::Parse(format!(
                "expected {} entries for n = {}, found {}",
                self.n * self.n,
                self.n,
                self.entries.len()
            )));
        }
        Ok(CMatrix::from_fn(self.n, self.n, |i, j| {
            let (re, im) = self.entries[i * self.n + j].parts();
            c(re, im)
        }))
    }

    /// Real matrix; fails if any imaginary part is nonzero.
    pub fn to_real_matrix(&self) -> Result<RMatrix> {
        let m = self.to_matrix()?;
        if let Some(z) = m.iter().find(|z| z.im != 0.0) {
            return Err(Error::Parse(format!("expected a real matrix, found entry {z}")));
        }
        Ok(m.map(|z| z.re))
    }
}

pub fn parse_matrix(text: &str) -> Result<CMatrix> {
    let raw: MatrixJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    raw.to_matrix()
}

pub fn parse_real_matrix(text: &str) -> Result<RMatrix> {
    let raw: MatrixJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    raw.to_real_matrix()
}

pub fn matrix_to_json(m: &CMatrix) -> String {
    serde_json::to_string_pretty(&MatrixJson::from_matrix(m)).expect("matrix serializes")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NullifierBasisJson {
    pub dimension: usize,
    pub generators: Vec<MatrixJson>,
    pub expressions: Vec<String>,
    pub singular_value_tail: Vec<f64>,
    pub threshold: f64,
    pub borderline: bool,
}

impl NullifierBasisJson {
    pub fn new(basis: &NullifierBasis, label: impl Fn(usize) -> String) -> Self {
        Self {
            dimension: basis.dimension,
            generators: basis.generators.iter().map(|g| MatrixJson::from_matrix(g.entries())).collect(),
            expressions: basis.expressions().iter().map(|e| e.display_with(&label)).collect(),
            singular_value_tail: basis.singular_value_tail().to_vec(),
            threshold: basis.threshold,
            borderline: basis.borderline,
        }
    }
}
