//! JSON state files.
//!
//! ```json
//! { "dims": [2, 2],
//!   "matrix_re": [[0.5, 0, 0, 0.5], [0, 0, 0, 0], [0, 0, 0, 0], [0.5, 0, 0, 0.5]] }
//! ```
//!
//! `matrix_im` is optional. Pure states may instead give `amplitudes_re` and
//! optionally `amplitudes_im`. Indices are row-major, `i·n + j`. When
//! `dims[0] > dims[1]` the factors are swapped on load.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{CMatrix, CVector, DensityMatrix, PureState};
use crate::{Error, Result};

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub dims: [usize; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix_re: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix_im: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitudes_re: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitudes_im: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LoadedState {
    Mixed(DensityMatrix),
    Pure(PureState),
}

impl LoadedState {
    pub fn into_density(self) -> DensityMatrix {
        match self {
            LoadedState::Mixed(rho) => rho,
            LoadedState::Pure(psi) => DensityMatrix::from_pure(&psi),
        }
    }
}

pub fn parse_state(text: &str) -> Result<LoadedState> {
    let file: StateFile =
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    file.into_state()
}

impl StateFile {
    pub fn into_state(self) -> Result<LoadedState> {
        let [a, b] = self.dims;
        let d = a * b;
        match (self.matrix_re, self.amplitudes_re) {
            (Some(_), Some(_)) => Err(Error::Format(
                "give either matrix_re or amplitudes_re, not both".into(),
            )),
            (None, None) => Err(Error::Format("missing matrix_re or amplitudes_re".into())),
            (Some(re), None) => {
                if self.amplitudes_im.is_some() {
                    return Err(Error::Format("amplitudes_im given with matrix_re".into()));
                }
                check_rows(&re, d, "matrix_re")?;
                if let Some(im) = &self.matrix_im {
                    check_rows(im, d, "matrix_im")?;
                }
                let m = CMatrix::from_fn(d, d, |r, c| {
                    let im = self.matrix_im.as_ref().map_or(0.0, |im| im[r][c]);
                    Complex64::new(re[r][c], im)
                });
                Ok(LoadedState::Mixed(DensityMatrix::from_subsystems(a, b, m)?))
            }
            (None, Some(re)) => {
                if self.matrix_im.is_some() {
                    return Err(Error::Format("matrix_im given with amplitudes_re".into()));
                }
                check_len(re.len(), d, "amplitudes_re")?;
                if let Some(im) = &self.amplitudes_im {
                    check_len(im.len(), d, "amplitudes_im")?;
                }
                let v = CVector::from_fn(d, |r, _| {
                    let im = self.amplitudes_im.as_ref().map_or(0.0, |im| im[r]);
                    Complex64::new(re[r], im)
                });
                Ok(LoadedState::Pure(PureState::from_subsystems(a, b, v)?))
            }
        }
    }

    pub fn from_density(rho: &DensityMatrix) -> Self {
        let e = rho.entries();
        let rows = |f: fn(&Complex64) -> f64| -> Vec<Vec<f64>> {
            e.row_iter().map(|r| r.iter().map(f).collect()).collect()
        };
        let im = rows(|z| z.im);
        let has_im = im.iter().flatten().any(|&x| x != 0.0);
        StateFile {
            dims: [rho.dims().m(), rho.dims().n()],
            matrix_re: Some(rows(|z| z.re)),
            matrix_im: has_im.then_some(im),
            ..Default::default()
        }
    }

    pub fn from_pure(psi: &PureState) -> Self {
        let a = psi.amplitudes();
        let has_im = a.iter().any(|z| z.im != 0.0);
        StateFile {
            dims: [psi.dims().m(), psi.dims().n()],
            amplitudes_re: Some(a.iter().map(|z| z.re).collect()),
            amplitudes_im: has_im.then(|| a.iter().map(|z| z.im).collect()),
            ..Default::default()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("state file serializes")
    }
}

fn check_len(actual: usize, expected: usize, field: &str) -> Result<()> {
    if actual != expected {
        return Err(Error::Format(format!(
            "{field}: expected length {expected}, found {actual}"
        )));
    }
    Ok(())
}

fn check_rows(rows: &[Vec<f64>], d: usize, field: &str) -> Result<()> {
    check_len(rows.len(), d, field)?;
    for (i, r) in rows.iter().enumerate() {
        check_len(r.len(), d, &format!("{field}[{i}]"))?;
    }
    Ok(())
}
