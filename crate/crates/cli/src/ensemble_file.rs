//! JSON ensemble files.
//!
//! ```json
//! {
//!   "dim": 2,
//!   "members": [
//!     { "p": 0.5, "bloch": [1.0, 0.0, 0.0] },
//!     { "p": 0.25, "psi": [[1.0, 0.0], [0.0, 0.0]] },
//!     { "p": 0.25, "rho": [[[0.5, 0.0], [0.5, 0.0]], [[0.5, 0.0], [0.5, 0.0]]] }
//!   ]
//! }
//! ```
//!
//! Complex numbers are `[re, im]` pairs. Each member carries exactly one of
//! `rho`, `psi` or `bloch`; `bloch` is only valid when `dim` is 2.

use std::fs;
use std::path::Path;

use quantumness::{density_from_bloch, BlochVector, ComplexMatrix, DensityMatrix, Ensemble, PureState, C64};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleFile {
    pub dim: usize,
    pub members: Vec<MemberRecord>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MemberRecord {
    pub p: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bloch: Option<[f64; 3]>,
}

fn complex(pair: &[f64; 2]) -> C64 {
    C64::new(pair[0], pair[1])
}

impl MemberRecord {
    fn state(&self, dim: usize) -> Result<DensityMatrix, String> {
        match (&self.rho, &self.psi, &self.bloch) {
            (Some(rows), None, None) => {
                if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                    return Err(format!("field `rho` must be a {dim}x{dim} matrix"));
                }
                let rows: Vec<Vec<C64>> = rows.iter().map(|r| r.iter().map(complex).collect()).collect();
                let m = ComplexMatrix::from_rows(&rows).map_err(|e| format!("field `rho`: {e}"))?;
                DensityMatrix::new(m).map_err(|e| format!("field `rho`: {e}"))
            }
            (None, Some(amps), None) => {
                if amps.len() != dim {
                    return Err(format!("field `psi` must have {dim} amplitudes, found {}", amps.len()));
                }
                let psi = PureState::new(amps.iter().map(complex).collect()).map_err(|e| format!("field `psi`: {e}"))?;
                Ok(psi.projector())
            }
            (None, None, Some([x, y, z])) => {
                if dim != 2 {
                    return Err(format!("field `bloch` requires dim 2, file has dim {dim}"));
                }
                let r = BlochVector::new(*x, *y, *z).map_err(|e| format!("field `bloch`: {e}"))?;
                Ok(density_from_bloch(&r))
            }
            (None, None, None) => Err("needs one of `rho`, `psi`, `bloch`".into()),
            _ => Err("has more than one of `rho`, `psi`, `bloch`".into()),
        }
    }
}

impl EnsembleFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("invalid ensemble file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Validates every member and builds the ensemble.
    pub fn to_ensemble(&self) -> Result<Ensemble, CliError> {
        if self.dim == 0 {
            return Err(CliError::Usage("field `dim` must be positive".into()));
        }
        if self.members.is_empty() {
            return Err(CliError::Usage("field `members` is empty".into()));
        }
        let mut members = Vec::with_capacity(self.members.len());
        for (i, record) in self.members.iter().enumerate() {
            if record.p < 0.0 || !record.p.is_finite() {
                return Err(CliError::Usage(format!("member {i}: field `p` must be a nonnegative number")));
            }
            let state = record.state(self.dim).map_err(|msg| CliError::Usage(format!("member {i}: {msg}")))?;
            members.push((record.p, state));
        }
        Ensemble::new(members).map_err(|e| CliError::Usage(format!("ensemble: {e}")))
    }

    /// Stores every member as an explicit `rho`.
    pub fn from_ensemble(ensemble: &Ensemble) -> Self {
        let members = ensemble
            .members()
            .iter()
            .map(|m| MemberRecord {
                p: m.probability,
                rho: Some(
                    m.state
                        .matrix()
                        .rows()
                        .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
                        .collect(),
                ),
                ..MemberRecord::default()
            })
            .collect();
        Self {
            dim: ensemble.dim(),
            members,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn save(&self, path: &Path) -> Result<(), CliError> {
        fs::write(path, self.to_json()).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    }
}
