//! The JSON input document.
//!
//! ```json
//! {
//!   "kind": "single",
//!   "dims": [2],
//!   "matrices": { "H": [[[0.5, 0], [0, 0]], [[0, 0], [-0.5, 0]]], "rho": ... },
//!   "options": { "clip": 1e-12, "tol": 1e-10 }
//! }
//! ```
//!
//! `single` needs `H` and `rho`; `bipartite` needs `dims: [d_S, d_B]` and
//! `H_S`, `H_B`, `H_I`, `rho_SB`; `model` needs `model_params`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use qtemp_core::models::TwoQubitXYParams;
use qtemp_core::{BipartiteSystem, CMatrix, Clip, DensityMatrix, HermitianOperator, Tolerances};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Single,
    Bipartite,
    Model,
}

/// Rows of `[re, im]` pairs.
pub type MatrixEntries = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clip: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub kind: Kind,
    #[serde(default)]
    pub dims: Vec<usize>,
    #[serde(default)]
    pub matrices: BTreeMap<String, MatrixEntries>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model_params: Option<TwoQubitXYParams>,
    #[serde(default)]
    pub options: Options,
}

pub fn to_entries(m: &CMatrix) -> MatrixEntries {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect()
}

fn to_matrix(name: &str, rows: &MatrixEntries, dim: usize) -> Result<CMatrix, CliError> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(CliError::Input(format!("matrix {name} must be {dim}x{dim}")));
    }
    Ok(CMatrix::from_fn(dim, dim, |i, j| {
        let [re, im] = rows[i][j];
        Complex64::new(re, im)
    }))
}

/// Validated settings shared by every command.
#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub clip: Clip,
    pub tol: Tolerances,
    pub strict: bool,
}

impl Settings {
    /// Command-line flags win over document options.
    pub fn resolve(doc: &Options, clip: Option<f64>, tol: Option<f64>, strict: bool) -> Result<Self, CliError> {
        let clip = match clip.or(doc.clip) {
            Some(c) => Clip::new(c)?,
            None => Clip::default(),
        };
        let tol = match tol.or(doc.tol) {
            Some(t) => Tolerances::uniform(t)?,
            None => Tolerances::default(),
        };
        Ok(Settings { clip, tol, strict })
    }
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        Ok(serde_json::from_str(text)?)
    }

    fn matrix(&self, name: &str, dim: usize) -> Result<CMatrix, CliError> {
        let rows = self
            .matrices
            .get(name)
            .ok_or_else(|| CliError::Input(format!("missing matrix {name}")))?;
        to_matrix(name, rows, dim)
    }

    fn expect_kind(&self, kind: Kind) -> Result<(), CliError> {
        if self.kind != kind {
            return Err(CliError::Input(format!("expected kind {kind:?}, got {:?}", self.kind)));
        }
        Ok(())
    }

    pub fn single(&self, tol: &Tolerances) -> Result<(HermitianOperator, DensityMatrix), CliError> {
        self.expect_kind(Kind::Single)?;
        let d = match self.dims.as_slice() {
            [d] if *d >= 1 => *d,
            other => return Err(CliError::Input(format!("single input needs dims [d], got {other:?}"))),
        };
        let h = HermitianOperator::with_tolerance(self.matrix("H", d)?, tol)?;
        let rho = DensityMatrix::with_tolerance(self.matrix("rho", d)?, tol)?;
        Ok((h, rho))
    }

    pub fn bipartite(&self, tol: &Tolerances) -> Result<BipartiteSystem, CliError> {
        match self.kind {
            Kind::Model => {
                let p = self
                    .model_params
                    .ok_or_else(|| CliError::Input("model input needs model_params".into()))?;
                Ok(qtemp_core::models::build_two_qubit_xy(&p)?)
            }
            Kind::Bipartite => {
                let (ds, db) = match self.dims.as_slice() {
                    [ds, db] if *ds >= 1 && *db >= 1 => (*ds, *db),
                    other => return Err(CliError::Input(format!("bipartite input needs dims [d_S, d_B], got {other:?}"))),
                };
                let h_s = HermitianOperator::with_tolerance(self.matrix("H_S", ds)?, tol)?;
                let h_b = HermitianOperator::with_tolerance(self.matrix("H_B", db)?, tol)?;
                let h_i = HermitianOperator::with_tolerance(self.matrix("H_I", ds * db)?, tol)?;
                let rho = DensityMatrix::with_tolerance(self.matrix("rho_SB", ds * db)?, tol)?;
                Ok(BipartiteSystem::new(h_s, h_b, h_i, rho)?)
            }
            Kind::Single => Err(CliError::Input("expected kind bipartite or model, got Single".into())),
        }
    }
}
