//! JSON reports. Every report carries the resolved [`RunConfig`].

use hypfl_core::embedding::{Decision, Verdict};
use hypfl_core::function_spaces::Space;
use hypfl_core::hyperbolic::{NormComparison, SolveReport};
use hypfl_core::phases::PhaseReport;
use hypfl_core::probe::{Fit, ScanReport, ScanRow, Trend};
use hypfl_core::GridSpec;
use serde::Serialize;

use crate::config::RunConfig;
use crate::problem::ProblemJson;

/// Non-finite values become `null`.
pub fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

#[derive(Debug, Serialize)]
pub struct NormReport {
    pub space: Space,
    pub p: String,
    pub q: Option<String>,
    pub s: f64,
    pub grid: GridSpec,
    pub value: f64,
    pub config: RunConfig,
}

#[derive(Debug, Serialize)]
pub struct BlockEntry {
    pub j: usize,
    pub file: String,
    /// `Σ_k |(Δ_j f)^(k)|²`.
    pub l2_mass: f64,
}

#[derive(Debug, Serialize)]
pub struct LpManifest {
    pub grid: GridSpec,
    pub j_max: usize,
    pub partition_residual: f64,
    pub total_l2_mass: f64,
    pub blocks: Vec<BlockEntry>,
    pub config: RunConfig,
}

#[derive(Debug, Serialize)]
pub struct PhaseReportJson {
    pub name: String,
    pub rank: usize,
    pub tau: f64,
    pub samples: usize,
    pub min_imag: f64,
    pub max_homogeneity_residual: f64,
    pub min_gradient: f64,
    pub min_det: f64,
    pub max_periodicity_defect: f64,
}

impl From<&PhaseReport> for PhaseReportJson {
    fn from(r: &PhaseReport) -> Self {
        Self {
            name: r.name.clone(),
            rank: r.rank,
            tau: r.tau,
            samples: r.samples,
            min_imag: r.min_imag,
            max_homogeneity_residual: r.max_homogeneity_residual,
            min_gradient: r.min_gradient,
            min_det: r.min_det,
            max_periodicity_defect: r.max_periodicity_defect,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct FioReport {
    pub phase: PhaseReportJson,
    pub order: f64,
    pub grid: GridSpec,
    pub input_fl2: f64,
    pub output_fl2: f64,
    pub config: RunConfig,
}

#[derive(Debug, Serialize)]
pub struct PredicateReport {
    pub which: String,
    pub holds: bool,
    pub decided_by: String,
    /// Enumerated clauses that hold, 1-based.
    pub clauses: Vec<u8>,
    /// `d(1/r + 1/p - 1)`, exact.
    pub critical_smoothness: String,
    /// `-κ|1/r - 1/2|`, exact; only for the operator predicates.
    pub order_threshold: Option<String>,
    pub config: RunConfig,
}

impl PredicateReport {
    pub fn new(
        config: RunConfig,
        which: &str,
        v: &Verdict,
        critical: String,
        order_threshold: Option<String>,
    ) -> Self {
        let clauses = match &v.decision {
            Decision::Clauses(c) => c.clone(),
            _ => Vec::new(),
        };
        Self {
            config,
            which: which.to_string(),
            holds: v.holds,
            decided_by: v.decision.to_string(),
            clauses,
            critical_smoothness: critical,
            order_threshold,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct NormComparisonJson {
    pub p: String,
    pub alpha: f64,
    pub alpha_p: f64,
    pub solution_norm: f64,
    pub data_norm_sum: f64,
    pub ratio: f64,
}

impl From<&NormComparison> for NormComparisonJson {
    fn from(n: &NormComparison) -> Self {
        Self {
            p: n.p.to_string(),
            alpha: n.alpha,
            alpha_p: n.alpha_p,
            solution_norm: n.solution_norm,
            data_norm_sum: n.data_norm_sum,
            ratio: n.ratio,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SolveReportJson {
    pub problem: ProblemJson,
    pub t: f64,
    pub steps: usize,
    pub order: usize,
    pub loss: String,
    pub norms: Vec<NormComparisonJson>,
    pub factor_growth: Vec<f64>,
    /// `null` for a single root.
    pub min_relative_root_gap: Option<f64>,
    pub min_root_imag: Option<f64>,
    pub excised_modes: usize,
    pub x_independent: bool,
    pub autonomous: bool,
    pub config: RunConfig,
}

impl SolveReportJson {
    pub fn new(config: RunConfig, problem: ProblemJson, loss: String, r: &SolveReport) -> Self {
        Self {
            config,
            problem,
            t: r.t,
            steps: r.steps,
            order: r.order,
            loss,
            norms: r.norms.iter().map(Into::into).collect(),
            factor_growth: r.factor_growth.clone(),
            min_relative_root_gap: finite(r.min_relative_root_gap),
            min_root_imag: finite(r.min_root_imag),
            excised_modes: r.excised_modes,
            x_independent: r.x_independent,
            autonomous: r.autonomous,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ScanReportJson {
    #[serde(flatten)]
    pub scan: ScanReport,
    pub config: RunConfig,
}

#[derive(Debug, Serialize)]
pub struct OpNormReport {
    pub phase: PhaseReportJson,
    pub order: f64,
    pub p: String,
    pub q: String,
    pub generator: String,
    pub ladder: Vec<usize>,
    pub seed: u64,
    pub ratios: Vec<f64>,
    pub value: f64,
    pub fit: Fit,
    pub verdict: Trend,
    pub config: RunConfig,
}

/// One CSV line per `(parameter, scale)`.
#[derive(Debug, Serialize)]
pub struct CsvRow<'a> {
    pub label: &'a str,
    pub parameter: f64,
    pub scale: usize,
    pub ratio: f64,
    pub exponent: f64,
    pub rms_residual: f64,
    pub verdict: String,
    pub expected: String,
}

pub fn csv_rows(row: &ScanRow) -> impl Iterator<Item = CsvRow<'_>> {
    row.scales.iter().zip(&row.ratios).map(move |(&scale, &ratio)| CsvRow {
        label: &row.label,
        parameter: row.parameter,
        scale,
        ratio,
        exponent: row.fit.exponent,
        rms_residual: row.fit.rms_residual,
        verdict: row.verdict.to_string(),
        expected: row.expected.map(|e| e.to_string()).unwrap_or_default(),
    })
}
