//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hypfl_core::embedding::{
    besov_embeds_fl, fio_besov_to_fl_admissible, fio_triebel_to_fl_admissible, required_order_fl_exact,
    triebel_embeds_fl, IndexTuple,
};
use hypfl_core::fio::{apply_fio, FioSpec};
use hypfl_core::function_spaces::{besov_norm, fl_norm, triebel_norm, Space};
use hypfl_core::hyperbolic::{solve_cauchy, LossConvention};
use hypfl_core::index::{parse_rational, Exponent, Rational};
use hypfl_core::littlewood_paley::{lp_decompose, DyadicFamily};
use hypfl_core::phases::{validate_phase, Phase};
use hypfl_core::probe::{
    classify, default_ladder, embedding_ratio_sweep, estimate_operator_norm, fit_growth, threshold_scan, Generator,
    TestFamily,
};
use hypfl_core::spectral::{forward_transform, spectral_l2};
use hypfl_core::{Complex64, Error, GridFunction, GridSpec};
use serde::{Deserialize, Serialize};

use crate::config::{RunConfig, ToleranceProfile};
use crate::descriptors::PhaseParams;
use crate::error::{CliError, CliResult};
use crate::gfn::{read_gfn, write_gfn};
use crate::parallel::RayonExecutor;
use crate::problem::load_problem;
use crate::reports::{
    csv_rows, BlockEntry, FioReport, LpManifest, NormReport, OpNormReport, PredicateReport, ScanReportJson,
    SolveReportJson,
};

#[derive(Debug, Parser)]
#[command(name = "hypfl", version, about = "Fourier-Lebesgue analysis of hyperbolic problems on the torus")]
pub struct Cli {
    /// Tolerance set used for phase, root and trend checks.
    #[arg(long, global = true, default_value = "default")]
    pub tolerance_profile: ToleranceProfile,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a catalogue test function to a GFN1 file.
    Gen(GenArgs),
    /// Evaluate an FL, Besov or Triebel-Lizorkin norm.
    Norm(NormArgs),
    /// Split a field into Littlewood-Paley blocks.
    Lp(LpArgs),
    /// Apply a catalogue Fourier integral operator.
    Fio(FioArgs),
    /// Decide an embedding or boundedness predicate.
    Predicate(PredicateArgs),
    /// Solve a Cauchy problem from a problem file.
    Solve(SolveArgs),
    /// Growth scans over test families.
    #[command(subcommand)]
    Probe(ProbeCommand),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub kind: Generator,
    /// Frequency (single-mode) or scale N (other families).
    #[arg(long)]
    pub k: i64,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SpaceArg {
    Fl,
    Besov,
    Triebel,
}

impl From<SpaceArg> for Space {
    fn from(s: SpaceArg) -> Self {
        match s {
            SpaceArg::Fl => Space::Fl,
            SpaceArg::Besov => Space::Besov,
            SpaceArg::Triebel => Space::Triebel,
        }
    }
}

fn exponent(s: &str) -> Result<Exponent, String> {
    s.parse::<Exponent>().map_err(|e| e.to_string())
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct NormArgs {
    #[arg(long, value_enum)]
    pub space: SpaceArg,
    #[arg(long, value_parser = exponent)]
    pub p: Exponent,
    /// Fine index; required for besov and triebel.
    #[arg(long, value_parser = exponent)]
    pub q: Option<Exponent>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub s: f64,
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct LpArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct FioArgs {
    /// identity | torus-diffeo | half-wave | dissipative
    #[arg(long)]
    pub phase: String,
    /// JSON phase parameters.
    #[arg(long)]
    pub params: Option<PathBuf>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub symbol_order: f64,
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    B24,
    T25,
    Main2,
    Main3,
}

#[derive(Debug, Args)]
pub struct PredicateArgs {
    #[arg(long, value_enum)]
    pub which: Which,
    #[arg(long)]
    pub p: String,
    #[arg(long)]
    pub q: String,
    #[arg(long)]
    pub r: String,
    #[arg(long, allow_hyphen_values = true)]
    pub s: String,
    #[arg(long)]
    pub d: u32,
    /// Operator order; main2 and main3 only.
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub m: Option<Rational>,
    /// SSFC rank; main2 and main3 only.
    #[arg(long)]
    pub kappa: Option<u32>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long)]
    pub t: f64,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub report: PathBuf,
    /// Comma-separated `p:alpha` pairs.
    #[arg(long, default_value = "2:0")]
    pub norms: String,
    /// `dimension` or `rank:K`.
    #[arg(long, default_value = "dimension")]
    pub loss: String,
}

#[derive(Debug, Subcommand)]
pub enum ProbeCommand {
    /// Ratios across operator orders around the FL^p threshold.
    Threshold(ThresholdArgs),
    /// FL^r over Besov or Triebel-Lizorkin norm ratios for index tuples.
    Embedding(EmbeddingArgs),
    /// Operator-norm lower bound over one family.
    Opnorm(OpnormArgs),
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long)]
    pub family: Generator,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    /// Comma-separated scales; defaults to the standard ladder for `d`.
    #[arg(long)]
    pub ladder: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub csv: PathBuf,
    #[arg(long)]
    pub report: PathBuf,
}

#[derive(Debug, Args)]
pub struct ThresholdArgs {
    #[arg(long)]
    pub phase: String,
    #[arg(long)]
    pub params: Option<PathBuf>,
    #[arg(long, value_parser = exponent)]
    pub p: Exponent,
    /// Comma-separated operator orders.
    #[arg(long, allow_hyphen_values = true)]
    pub m: String,
    #[command(flatten)]
    pub family: FamilyArgs,
}

#[derive(Debug, Args)]
pub struct EmbeddingArgs {
    #[arg(long, value_enum)]
    pub space: SpaceArg,
    /// JSON list of `{"p", "q", "r", "s"}` string tuples.
    #[arg(long)]
    pub tuples: PathBuf,
    #[command(flatten)]
    pub family: FamilyArgs,
}

#[derive(Debug, Args)]
pub struct OpnormArgs {
    #[arg(long)]
    pub phase: String,
    #[arg(long)]
    pub params: Option<PathBuf>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub symbol_order: f64,
    #[arg(long, value_parser = exponent)]
    pub p: Exponent,
    #[arg(long, value_parser = exponent)]
    pub q: Exponent,
    #[command(flatten)]
    pub family: FamilyArgs,
}

/// Index tuple as written in an embedding-sweep file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TupleJson {
    pub p: String,
    pub q: String,
    pub r: String,
    pub s: String,
}

struct Ctx<'a> {
    profile: ToleranceProfile,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn config(&self, command: &str) -> RunConfig {
        RunConfig::new(command, self.profile)
    }
}

fn executor() -> CliResult<RayonExecutor> {
    RayonExecutor::from_env().map_err(CliError::Usage)
}

fn write_json(path: &Path, value: &impl Serialize) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::json(path.display(), e))?;
    text.push('\n');
    fs::write(path, text).map_err(|e| CliError::io(path.display(), e))
}

fn print_json(out: &mut dyn Write, value: &impl Serialize) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::json("<stdout>", e))?;
    writeln!(out, "{text}").map_err(|e| CliError::io("<stdout>", e))
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path.display(), e))?;
    serde_json::from_str(&text).map_err(|e| CliError::json(path.display(), e))
}

fn phase_params(path: &Option<PathBuf>) -> CliResult<PhaseParams> {
    match path {
        Some(p) => read_json(p),
        None => Ok(PhaseParams::default()),
    }
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> CliResult<Vec<T>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<T>()
                .map_err(|_| CliError::Usage(format!("bad {what} entry `{s}` in `{text}`")))
        })
        .collect()
}

/// `"1:0.5,2:0,inf:1"` into `(p, α)` pairs.
pub fn parse_norms(text: &str) -> CliResult<Vec<(Exponent, f64)>> {
    text.split(',')
        .map(|item| {
            let (p, a) = item
                .split_once(':')
                .ok_or_else(|| CliError::Usage(format!("norm entry `{item}` is not `p:alpha`")))?;
            let p: Exponent = p.trim().parse()?;
            let a: f64 = a
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad alpha `{a}` in `{item}`")))?;
            Ok((p, a))
        })
        .collect()
}

pub fn parse_loss(text: &str) -> CliResult<LossConvention> {
    match text {
        "dimension" | "d" => Ok(LossConvention::Dimension),
        other => other
            .strip_prefix("rank:")
            .and_then(|k| k.parse::<u32>().ok())
            .map(LossConvention::Rank)
            .ok_or_else(|| CliError::Usage(format!("loss `{other}` is neither `dimension` nor `rank:K`"))),
    }
}

fn loss_label(l: LossConvention) -> String {
    match l {
        LossConvention::Dimension => "dimension".into(),
        LossConvention::Rank(k) => format!("rank:{k}"),
    }
}

fn gen(ctx: &mut Ctx<'_>, a: &GenArgs) -> CliResult<()> {
    let grid = GridSpec::new(a.d, a.n)?;
    let f = if a.kind == Generator::SingleMode {
        let half = (a.n / 2) as i64;
        if a.k < -half || a.k >= half {
            return Err(Error::InvalidArgument(format!("frequency {} outside [-{half}, {half})", a.k)).into());
        }
        let k = a.k as f64;
        GridFunction::from_fn(grid, |x| {
            Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k * x[0])
        })?
    } else {
        let scale = usize::try_from(a.k).map_err(|_| CliError::Usage(format!("scale {} must be positive", a.k)))?;
        TestFamily::new(a.kind, vec![scale], a.seed, grid)?.member_at(scale)?
    };
    write_gfn(&a.out, &f)?;
    let cfg = ctx
        .config("gen")
        .param("kind", a.kind)
        .param("k", a.k)
        .param("n", a.n)
        .param("d", a.d)
        .seed(a.seed)
        .output(a.out.display());
    print_json(ctx.out, &cfg)
}

fn norm(ctx: &mut Ctx<'_>, a: &NormArgs) -> CliResult<()> {
    let f = read_gfn(&a.input)?;
    let space: Space = a.space.into();
    let value = match space {
        Space::Fl => {
            if a.q.is_some() {
                return Err(CliError::Usage("--q is not used by --space fl".into()));
            }
            fl_norm(&f, a.p, a.s).value
        }
        Space::Besov | Space::Triebel => {
            let q = a.q.ok_or_else(|| CliError::Usage("--q is required for besov and triebel".into()))?;
            let fam = DyadicFamily::new(*f.grid())?;
            if space == Space::Besov {
                besov_norm(&f, a.p, q, a.s, &fam)?.value
            } else {
                triebel_norm(&f, a.p, q, a.s, &fam)?.value
            }
        }
    };
    let mut cfg = ctx
        .config("norm")
        .param("space", space)
        .param("p", a.p.to_string())
        .param("s", a.s)
        .input(a.input.display());
    if let Some(q) = a.q {
        cfg = cfg.param("q", q.to_string());
    }
    let report = NormReport {
        config: cfg,
        space,
        p: a.p.to_string(),
        q: a.q.map(|q| q.to_string()),
        s: a.s,
        grid: *f.grid(),
        value,
    };
    print_json(ctx.out, &report)
}

fn lp(ctx: &mut Ctx<'_>, a: &LpArgs) -> CliResult<()> {
    let f = read_gfn(&a.input)?;
    let fam = DyadicFamily::new(*f.grid())?;
    fs::create_dir_all(&a.out_dir).map_err(|e| CliError::io(a.out_dir.display(), e))?;
    let mut blocks = Vec::new();
    let mut cfg = ctx.config("lp").input(a.input.display());
    for (j, b) in lp_decompose(&f, &fam)?.iter().enumerate() {
        let name = format!("block_{j}.gfn");
        write_gfn(a.out_dir.join(&name), b)?;
        let l2 = spectral_l2(&forward_transform(b));
        cfg = cfg.output(a.out_dir.join(&name).display());
        blocks.push(BlockEntry {
            j,
            file: name,
            l2_mass: l2 * l2,
        });
    }
    let manifest_path = a.out_dir.join("manifest.json");
    cfg = cfg.output(manifest_path.display());
    let total = spectral_l2(&forward_transform(&f));
    let manifest = LpManifest {
        config: cfg,
        grid: *f.grid(),
        j_max: fam.j_max(),
        partition_residual: fam.residual(),
        total_l2_mass: total * total,
        blocks,
    };
    write_json(&manifest_path, &manifest)?;
    print_json(ctx.out, &manifest)
}

fn validated_spec(ctx: &Ctx<'_>, phase: &str, params: &PhaseParams, order: f64) -> CliResult<FioSpec> {
    let (ph, sym) = params.build(phase, order)?;
    let tol = ctx.config("").tolerances;
    Ok(FioSpec::with_tolerances(ph, sym, tol.phase.budget, &tol.phase_tolerances())?)
}

fn fio(ctx: &mut Ctx<'_>, a: &FioArgs) -> CliResult<()> {
    let params = phase_params(&a.params)?;
    let spec = validated_spec(ctx, &a.phase, &params, a.symbol_order)?;
    let f = read_gfn(&a.input)?;
    let exec = executor()?;
    let g = apply_fio(&spec, &f, &exec)?;
    write_gfn(&a.out, &g)?;
    let mut cfg = ctx
        .config("fio")
        .param("phase", &a.phase)
        .param("phase_params", &params)
        .param("symbol_order", a.symbol_order)
        .input(a.input.display())
        .output(a.out.display());
    if let Some(p) = &a.params {
        cfg = cfg.input(p.display());
    }
    if let Some(r) = &a.report {
        cfg = cfg.output(r.display());
    }
    let two = Exponent::from_int(2)?;
    let report = FioReport {
        config: cfg,
        phase: spec.phase_report().into(),
        order: spec.order(),
        grid: *f.grid(),
        input_fl2: fl_norm(&f, two, 0.0).value,
        output_fl2: fl_norm(&g, two, 0.0).value,
    };
    if let Some(r) = &a.report {
        write_json(r, &report)?;
    }
    print_json(ctx.out, &report)
}

fn predicate(ctx: &mut Ctx<'_>, a: &PredicateArgs) -> CliResult<()> {
    let t = IndexTuple::parse(&a.p, &a.q, &a.r, &a.s, a.d)?;
    let (which, verdict, threshold) = match a.which {
        Which::B24 | Which::T25 => {
            if a.m.is_some() || a.kappa.is_some() {
                return Err(CliError::Usage("--m and --kappa only apply to main2 and main3".into()));
            }
            if a.which == Which::B24 {
                ("b24", besov_embeds_fl(&t), None)
            } else {
                ("t25", triebel_embeds_fl(&t)?, None)
            }
        }
        Which::Main2 | Which::Main3 => {
            let m = a.m.ok_or_else(|| CliError::Usage("--m is required for main2 and main3".into()))?;
            let kappa = a
                .kappa
                .ok_or_else(|| CliError::Usage("--kappa is required for main2 and main3".into()))?;
            let threshold = required_order_fl_exact(t.r, kappa)?.to_string();
            if a.which == Which::Main2 {
                ("main2", fio_besov_to_fl_admissible(&t, m, kappa)?, Some(threshold))
            } else {
                ("main3", fio_triebel_to_fl_admissible(&t, m, kappa)?, Some(threshold))
            }
        }
    };
    let mut cfg = ctx
        .config("predicate")
        .param("which", which)
        .param("p", t.p.to_string())
        .param("q", t.q.to_string())
        .param("r", t.r.to_string())
        .param("s", t.s.to_string())
        .param("d", t.d);
    if let Some(m) = a.m {
        cfg = cfg.param("m", m.to_string());
    }
    if let Some(k) = a.kappa {
        cfg = cfg.param("kappa", k);
    }
    let report = PredicateReport::new(cfg, which, &verdict, t.critical_smoothness().to_string(), threshold);
    print_json(ctx.out, &report)
}

fn solve(ctx: &mut Ctx<'_>, a: &SolveArgs) -> CliResult<()> {
    let norms = parse_norms(&a.norms)?;
    let loss = parse_loss(&a.loss)?;
    let cfg = ctx.config("solve");
    let loaded = load_problem(&a.config, cfg.tolerances.root_tolerances())?;
    if !(a.t >= 0.0 && a.t <= loaded.problem.horizon()) {
        return Err(Error::InvalidArgument(format!(
            "t = {} outside [0, T = {}]",
            a.t,
            loaded.problem.horizon()
        ))
        .into());
    }
    let exec = executor()?;
    let (v, rep) = solve_cauchy(&loaded.problem, a.t, &norms, loss, &exec)?;
    write_gfn(&a.out, &v)?;
    let mut cfg = cfg
        .param("t", a.t)
        .param("norms", &a.norms)
        .param("loss", loss_label(loss))
        .input(a.config.display());
    let base = a.config.parent().unwrap_or(Path::new(""));
    for f in &loaded.json.data_files {
        cfg = cfg.input(base.join(f).display());
    }
    cfg = cfg.output(a.out.display()).output(a.report.display());
    let report = SolveReportJson::new(cfg, loaded.json, loss_label(loss), &rep);
    write_json(&a.report, &report)?;
    print_json(ctx.out, &report)
}

fn family(f: &FamilyArgs) -> CliResult<TestFamily> {
    let grid = GridSpec::new(f.d, f.n)?;
    let ladder = match &f.ladder {
        Some(text) => parse_list::<usize>(text, "ladder")?,
        None => default_ladder(f.d),
    };
    Ok(TestFamily::new(f.family, ladder, f.seed, grid)?)
}

fn family_config(mut cfg: RunConfig, f: &FamilyArgs, fam: &TestFamily) -> RunConfig {
    cfg = cfg
        .param("family", f.family)
        .param("n", f.n)
        .param("d", f.d)
        .param("ladder", fam.ladder())
        .seed(f.seed)
        .output(f.csv.display())
        .output(f.report.display());
    cfg
}

fn write_scan(f: &FamilyArgs, report: &ScanReportJson) -> CliResult<()> {
    let mut w = csv::Writer::from_path(&f.csv)?;
    for row in &report.scan.rows {
        for line in csv_rows(row) {
            w.serialize(line)?;
        }
    }
    w.flush().map_err(|e| CliError::io(f.csv.display(), e))?;
    write_json(&f.report, report)
}

fn probe_threshold(ctx: &mut Ctx<'_>, a: &ThresholdArgs) -> CliResult<()> {
    let params = phase_params(&a.params)?;
    let phase: Arc<dyn Phase> = Arc::new(params.build_phase(&a.phase)?);
    let tol = ctx.config("").tolerances;
    validate_phase(phase.as_ref(), tol.phase.budget, &tol.phase_tolerances())?;
    let m_grid = parse_list::<f64>(&a.m, "order")?;
    let fam = family(&a.family)?;
    let exec = executor()?;
    let scan = threshold_scan(phase, a.p, &m_grid, &fam, &tol.trend, &exec)?;
    let mut cfg = ctx
        .config("probe threshold")
        .param("phase", &a.phase)
        .param("phase_params", &params)
        .param("p", a.p.to_string())
        .param("m", &m_grid);
    if let Some(p) = &a.params {
        cfg = cfg.input(p.display());
    }
    let report = ScanReportJson {
        config: family_config(cfg, &a.family, &fam),
        scan,
    };
    write_scan(&a.family, &report)?;
    print_json(ctx.out, &report)
}

fn probe_embedding(ctx: &mut Ctx<'_>, a: &EmbeddingArgs) -> CliResult<()> {
    let tuples: Vec<TupleJson> = read_json(&a.tuples)?;
    let d = a.family.d as u32;
    let parsed = tuples
        .iter()
        .map(|t| IndexTuple::parse(&t.p, &t.q, &t.r, &t.s, d))
        .collect::<Result<Vec<_>, _>>()?;
    let fam = family(&a.family)?;
    let space: Space = a.space.into();
    let rule = ctx.config("").tolerances.trend;
    let scan = embedding_ratio_sweep(space, &parsed, &fam, &rule)?;
    let cfg = ctx
        .config("probe embedding")
        .param("space", space)
        .param("tuples", &tuples)
        .input(a.tuples.display());
    let report = ScanReportJson {
        config: family_config(cfg, &a.family, &fam),
        scan,
    };
    write_scan(&a.family, &report)?;
    print_json(ctx.out, &report)
}

fn probe_opnorm(ctx: &mut Ctx<'_>, a: &OpnormArgs) -> CliResult<()> {
    let params = phase_params(&a.params)?;
    let spec = validated_spec(ctx, &a.phase, &params, a.symbol_order)?;
    let fam = family(&a.family)?;
    let exec = executor()?;
    let est = estimate_operator_norm(&spec, a.p, a.q, &fam, &exec)?;
    let fit = fit_growth(&est.scales, &est.ratios)?;
    let rule = ctx.config("").tolerances.trend;
    let verdict = classify(&fit, &rule);
    let mut cfg = ctx
        .config("probe opnorm")
        .param("phase", &a.phase)
        .param("phase_params", &params)
        .param("symbol_order", a.symbol_order)
        .param("p", a.p.to_string())
        .param("q", a.q.to_string());
    if let Some(p) = &a.params {
        cfg = cfg.input(p.display());
    }
    let report = OpNormReport {
        config: family_config(cfg, &a.family, &fam),
        phase: spec.phase_report().into(),
        order: spec.order(),
        p: a.p.to_string(),
        q: a.q.to_string(),
        generator: fam.generator().to_string(),
        ladder: fam.ladder().to_vec(),
        seed: fam.seed(),
        ratios: est.ratios.clone(),
        value: est.value,
        fit,
        verdict,
    };
    let mut w = csv::Writer::from_path(&a.family.csv)?;
    w.write_record(["scale", "ratio"])?;
    for (s, r) in est.scales.iter().zip(&est.ratios) {
        w.write_record([s.to_string(), r.to_string()])?;
    }
    w.flush().map_err(|e| CliError::io(a.family.csv.display(), e))?;
    write_json(&a.family.report, &report)?;
    print_json(ctx.out, &report)
}

pub fn dispatch(cli: &Cli, out: &mut dyn Write) -> CliResult<()> {
    let mut ctx = Ctx {
        profile: cli.tolerance_profile,
        out,
    };
    match &cli.command {
        Command::Gen(a) => gen(&mut ctx, a),
        Command::Norm(a) => norm(&mut ctx, a),
        Command::Lp(a) => lp(&mut ctx, a),
        Command::Fio(a) => fio(&mut ctx, a),
        Command::Predicate(a) => predicate(&mut ctx, a),
        Command::Solve(a) => solve(&mut ctx, a),
        Command::Probe(ProbeCommand::Threshold(a)) => probe_threshold(&mut ctx, a),
        Command::Probe(ProbeCommand::Embedding(a)) => probe_embedding(&mut ctx, a),
        Command::Probe(ProbeCommand::Opnorm(a)) => probe_opnorm(&mut ctx, a),
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let report = CliError::Usage(e.to_string().trim_end().to_string()).report();
            let _ = writeln!(err, "{}", serde_json::to_string(&report).unwrap_or_default());
            return 2;
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let code = e.exit_code();
            let _ = writeln!(err, "{}", serde_json::to_string(&e.report()).unwrap_or_default());
            code
        }
    }
}
