//! Problem files for `hypfl solve`.
//!
//! ```json
//! {
//!   "order": 2,
//!   "coefficients": [{"j": 2, "kind": "const", "data": -1}],
//!   "grid": {"d": 1, "n": 64},
//!   "T": 1.0,
//!   "data_files": ["f0.gfn", "f1.gfn"],
//!   "steps_per_unit": 8
//! }
//! ```
//!
//! Coefficient `j` contributes `p_j = a(x) |2πk|^j` to
//! `τ^m + Σ_j p_j τ^{m-j}`; `data` is a number, an `[re, im]` pair, or a
//! trigonometric polynomial for `kind = "trigpoly"`. Data paths are relative to
//! the problem file.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use hypfl_core::hyperbolic::{CoefficientSymbol, HomogeneousCoefficient, HyperbolicProblem, RootTolerances};
use hypfl_core::{Error, GridFunction, GridSpec};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::descriptors::{ComplexJson, TrigPolyJson};
use crate::error::{CliError, CliResult};
use crate::gfn::read_gfn;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoefficientKind {
    Const,
    Trigpoly,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientJson {
    pub j: usize,
    pub kind: CoefficientKind,
    pub data: Value,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridJson {
    pub d: usize,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemJson {
    pub order: usize,
    pub coefficients: Vec<CoefficientJson>,
    pub grid: GridJson,
    #[serde(rename = "T")]
    pub horizon: f64,
    pub data_files: Vec<String>,
    pub steps_per_unit: usize,
}

impl CoefficientJson {
    pub fn build(&self, dim: usize) -> CliResult<HomogeneousCoefficient> {
        let bad = |e: serde_json::Error| {
            CliError::Core(Error::InvalidArgument(format!("coefficient p_{}: {e}", self.j)))
        };
        Ok(match self.kind {
            CoefficientKind::Const => {
                let c: ComplexJson = serde_json::from_value(self.data.clone()).map_err(bad)?;
                HomogeneousCoefficient::constant(self.j, c.into())
            }
            CoefficientKind::Trigpoly => {
                let p: TrigPolyJson = serde_json::from_value(self.data.clone()).map_err(bad)?;
                HomogeneousCoefficient::trig(self.j, p.to_trig_poly(dim)?)
            }
        })
    }
}

pub struct LoadedProblem {
    pub path: PathBuf,
    pub json: ProblemJson,
    pub problem: HyperbolicProblem,
}

impl ProblemJson {
    pub fn from_file(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path.display(), e))?;
        serde_json::from_str(&text).map_err(|e| CliError::json(path.display(), e))
    }

    /// Reads the data files and certifies the problem.
    pub fn load(self, base: &Path, tol: RootTolerances) -> CliResult<HyperbolicProblem> {
        let grid = GridSpec::new(self.grid.d, self.grid.n)?;
        if self.order != self.data_files.len() {
            return Err(Error::InvalidArgument(format!(
                "order {} needs {} data files, got {}",
                self.order,
                self.order,
                self.data_files.len()
            ))
            .into());
        }
        let data: Vec<GridFunction> = self
            .data_files
            .iter()
            .map(|f| {
                let g = read_gfn(base.join(f))?;
                grid.ensure_same(g.grid())?;
                Ok(g)
            })
            .collect::<CliResult<_>>()?;
        let coeffs = self
            .coefficients
            .iter()
            .map(|c| Ok(Arc::new(c.build(grid.dim())?) as Arc<dyn CoefficientSymbol>))
            .collect::<CliResult<Vec<_>>>()?;
        Ok(HyperbolicProblem::with_tolerances(
            coeffs,
            data,
            self.horizon,
            self.steps_per_unit,
            tol,
        )?)
    }
}

pub fn load_problem(path: &Path, tol: RootTolerances) -> CliResult<LoadedProblem> {
    let json = ProblemJson::from_file(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    let problem = json.clone().load(base, tol)?;
    Ok(LoadedProblem {
        path: path.to_path_buf(),
        json,
        problem,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_layout() {
        let text = r#"{
            "order": 2,
            "coefficients": [{"j": 2, "kind": "const", "data": -1},
                             {"j": 1, "kind": "trigpoly", "data": {"constant": [0, 0.1]}}],
            "grid": {"d": 1, "n": 64},
            "T": 1.0,
            "data_files": ["f0.gfn", "f1.gfn"],
            "steps_per_unit": 8
        }"#;
        let p: ProblemJson = serde_json::from_str(text).unwrap();
        assert_eq!(p.order, 2);
        assert_eq!(p.horizon, 1.0);
        assert_eq!(p.coefficients[1].build(1).unwrap().degree, 1);
    }

    #[test]
    fn unknown_keys_rejected() {
        let text = r#"{"order": 1, "coefficients": [], "grid": {"d": 1, "n": 8}, "T": 1,
                       "data_files": ["a.gfn"], "steps_per_unit": 1, "dt": 0.1}"#;
        assert!(serde_json::from_str::<ProblemJson>(text).is_err());
    }
}
