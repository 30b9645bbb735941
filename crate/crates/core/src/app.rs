//! Command-line front end: `generate`, `filter`, `evaluate` and `compare`.
//!
//! Settings are layered: command-line flags win over the TOML file given
//! with `--config`, which wins over `DQFILTER_SEED` (seed only), which wins
//! over the built-in defaults.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::{write_atomic, TrajectoryFile};
use crate::lab::{
    evaluate as evaluate_errors, kalman_baseline, AxisNoise, ErrorReport, KalmanTuning, NoiseSpec, OutlierMode,
    SplineSamples, SplineSpec, Summary, RNG_ALGORITHM,
};
use crate::regression::{filter_trajectory, FilterConfig, Method, PriorMode, Space, DEFAULT_DELTA, DEFAULT_IRLS_ITERATIONS};
use crate::trajectory::PoseTrajectory;

pub const SEED_ENV: &str = "DQFILTER_SEED";
pub const REPORT_FORMAT: &str = "dqfilter-report/1";
const KALMAN_NOTE: &str = "approximate reproduction: per-component random-walk linear Kalman filter";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum FilterMethod {
    Pca,
    Wpca,
    Irls,
    Kalman,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SpaceArg {
    Dq,
    Qt,
}

impl From<SpaceArg> for Space {
    fn from(s: SpaceArg) -> Self {
        match s {
            SpaceArg::Dq => Space::Dual,
            SpaceArg::Qt => Space::Split,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum PriorKind {
    Index,
    Tangent,
}

/// Bandwidth of the tangent-distance prior when none is given.
pub const DEFAULT_TANGENT_BANDWIDTH: f64 = 0.1;

/// Effective settings of one run; echoed into every report and header.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct RunConfig {
    pub method: FilterMethod,
    pub space: SpaceArg,
    pub window: usize,
    pub irls_iters: usize,
    pub delta: f64,
    pub prior: PriorKind,
    pub bandwidth: Option<f64>,
    pub sigma: f64,
    pub outlier_frac: f64,
    pub outlier_sigma: f64,
    pub outlier_mode: OutlierMode,
    pub axis_noise: AxisNoise,
    pub samples: usize,
    pub seed: u64,
    pub rng: &'static str,
    pub kalman_rotation: [f64; 2],
    pub kalman_translation: [f64; 2],
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            method: FilterMethod::Irls,
            space: SpaceArg::Dq,
            window: 19,
            irls_iters: DEFAULT_IRLS_ITERATIONS,
            delta: DEFAULT_DELTA,
            prior: PriorKind::Index,
            bandwidth: None,
            sigma: 0.02,
            outlier_frac: 0.05,
            outlier_sigma: 0.2,
            outlier_mode: OutlierMode::Additive,
            axis_noise: AxisNoise::Normalized,
            samples: 500,
            seed: 0,
            rng: RNG_ALGORITHM,
            kalman_rotation: [KalmanTuning::ROTATION.process, KalmanTuning::ROTATION.measurement],
            kalman_translation: [KalmanTuning::TRANSLATION.process, KalmanTuning::TRANSLATION.measurement],
        }
    }
}

/// Optional settings, filled either from flags or from a config file.
#[derive(Debug, Clone, Default, PartialEq, clap::Args, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct Settings {
    #[arg(long, value_enum)]
    pub method: Option<FilterMethod>,
    #[arg(long, value_enum)]
    pub space: Option<SpaceArg>,
    /// Odd window size.
    #[arg(long)]
    pub window: Option<usize>,
    #[arg(long = "irls-iters")]
    pub irls_iters: Option<usize>,
    /// Residual floor of the IRLS weights.
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long, value_enum)]
    pub prior: Option<PriorKind>,
    #[arg(long)]
    pub bandwidth: Option<f64>,
    /// Half-width of the uniform noise.
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long = "outlier-frac")]
    pub outlier_frac: Option<f64>,
    #[arg(long = "outlier-sigma")]
    pub outlier_sigma: Option<f64>,
    #[arg(skip)]
    pub outlier_mode: Option<OutlierMode>,
    #[arg(skip)]
    pub axis_noise: Option<AxisNoise>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(skip)]
    pub kalman_rotation: Option<[f64; 2]>,
    #[arg(skip)]
    pub kalman_translation: Option<[f64; 2]>,
}

impl Settings {
    pub fn from_toml(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {}", path.display(), e.message())))
    }

    fn or(self, other: Settings) -> Settings {
        Settings {
            method: self.method.or(other.method),
            space: self.space.or(other.space),
            window: self.window.or(other.window),
            irls_iters: self.irls_iters.or(other.irls_iters),
            delta: self.delta.or(other.delta),
            prior: self.prior.or(other.prior),
            bandwidth: self.bandwidth.or(other.bandwidth),
            sigma: self.sigma.or(other.sigma),
            outlier_frac: self.outlier_frac.or(other.outlier_frac),
            outlier_sigma: self.outlier_sigma.or(other.outlier_sigma),
            outlier_mode: self.outlier_mode.or(other.outlier_mode),
            axis_noise: self.axis_noise.or(other.axis_noise),
            samples: self.samples.or(other.samples),
            seed: self.seed.or(other.seed),
            kalman_rotation: self.kalman_rotation.or(other.kalman_rotation),
            kalman_translation: self.kalman_translation.or(other.kalman_translation),
        }
    }
}

impl RunConfig {
    /// Layers `flags` over the optional config file, the seed environment
    /// variable and the defaults, then validates.
    pub fn resolve(flags: Settings, config: Option<&Path>, env_seed: Option<&str>) -> Result<Self> {
        let file = match config {
            Some(p) => Settings::from_toml(p)?,
            None => Settings::default(),
        };
        let mut s = flags.or(file);
        if s.seed.is_none() {
            if let Some(v) = env_seed {
                let seed = v
                    .trim()
                    .parse()
                    .map_err(|_| Error::Config(format!("{SEED_ENV} must be an unsigned integer, got `{v}`")))?;
                s.seed = Some(seed);
            }
        }
        let d = RunConfig::default();
        let cfg = RunConfig {
            method: s.method.unwrap_or(d.method),
            space: s.space.unwrap_or(d.space),
            window: s.window.unwrap_or(d.window),
            irls_iters: s.irls_iters.unwrap_or(d.irls_iters),
            delta: s.delta.unwrap_or(d.delta),
            prior: s.prior.unwrap_or(d.prior),
            bandwidth: s.bandwidth.or(d.bandwidth),
            sigma: s.sigma.unwrap_or(d.sigma),
            outlier_frac: s.outlier_frac.unwrap_or(d.outlier_frac),
            outlier_sigma: s.outlier_sigma.unwrap_or(d.outlier_sigma),
            outlier_mode: s.outlier_mode.unwrap_or(d.outlier_mode),
            axis_noise: s.axis_noise.unwrap_or(d.axis_noise),
            samples: s.samples.unwrap_or(d.samples),
            seed: s.seed.unwrap_or(d.seed),
            rng: d.rng,
            kalman_rotation: s.kalman_rotation.unwrap_or(d.kalman_rotation),
            kalman_translation: s.kalman_translation.unwrap_or(d.kalman_translation),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let config = |e: Error| match e {
            Error::InvalidArgument(m) => Error::Config(m),
            other => other,
        };
        self.filter_config().validate().map_err(config)?;
        self.noise_spec().validate()?;
        if self.samples < 2 {
            return Err(Error::Config(format!("need at least 2 samples, got {}", self.samples)));
        }
        for (p, m) in [self.kalman_rotation, self.kalman_translation].map(|[a, b]| (a, b)) {
            if !(p > 0.0 && m > 0.0) {
                return Err(Error::Config(format!("Kalman covariances must be positive, got [{p}, {m}]")));
            }
        }
        Ok(())
    }

    pub fn filter_config(&self) -> FilterConfig {
        let method = match self.method {
            FilterMethod::Pca => Method::Pca,
            FilterMethod::Wpca => Method::Wpca,
            FilterMethod::Irls | FilterMethod::Kalman => Method::Irls,
        };
        self.filter_config_for(method)
    }

    fn filter_config_for(&self, method: Method) -> FilterConfig {
        let prior = match self.prior {
            PriorKind::Index => PriorMode::Index {
                bandwidth: self.bandwidth,
            },
            PriorKind::Tangent => PriorMode::Tangent {
                bandwidth: self.bandwidth.unwrap_or(DEFAULT_TANGENT_BANDWIDTH),
            },
        };
        FilterConfig {
            window: self.window,
            method,
            irls_iterations: self.irls_iters,
            delta: self.delta,
            prior,
        }
    }

    pub fn noise_spec(&self) -> NoiseSpec {
        NoiseSpec {
            sigma: self.sigma,
            outlier_fraction: self.outlier_frac,
            outlier_sigma: self.outlier_sigma,
            seed: self.seed,
            outlier_mode: self.outlier_mode,
            axis_noise: self.axis_noise,
        }
    }

    pub fn spline_spec(&self) -> SplineSpec {
        SplineSpec::random(self.seed, self.samples)
    }

    fn kalman(&self) -> (KalmanTuning, KalmanTuning) {
        let t = |[process, measurement]: [f64; 2]| KalmanTuning { process, measurement };
        (t(self.kalman_rotation), t(self.kalman_translation))
    }

    /// Runs the configured method.
    pub fn smooth(&self, traj: &PoseTrajectory) -> Result<PoseTrajectory> {
        match self.method {
            FilterMethod::Kalman => {
                let (r, t) = self.kalman();
                kalman_baseline(traj, r, t)
            }
            _ => filter_trajectory(traj, self.space.into(), &self.filter_config()),
        }
    }
}

/// Ground truth and its noisy copy.
#[derive(Debug, Clone, PartialEq)]
pub struct Generated {
    pub ground_truth: TrajectoryFile,
    pub noisy: TrajectoryFile,
}

pub fn generate(cfg: &RunConfig) -> Result<Generated> {
    let samples = SplineSamples::from_spec(&cfg.spline_spec())?;
    let noisy = crate::lab::perturb_samples(&samples, &cfg.noise_spec())?;
    let space: Space = cfg.space.into();
    let common = |f: TrajectoryFile, kind: &str| {
        f.with_meta("kind", kind)
            .with_meta("seed", cfg.seed)
            .with_meta("rng", cfg.rng)
            .with_meta("samples", cfg.samples)
    };
    let ground_truth = common(TrajectoryFile::new(space, samples.to_trajectory()), "ground-truth");
    let list: Vec<String> = noisy.outliers.iter().map(usize::to_string).collect();
    let noisy = common(TrajectoryFile::new(space, noisy.trajectory), "noisy")
        .with_meta("sigma", cfg.sigma)
        .with_meta("outlier-frac", cfg.outlier_frac)
        .with_meta("outlier-sigma", cfg.outlier_sigma)
        .with_meta("outlier-mode", enum_tag(&cfg.outlier_mode))
        .with_meta("axis-noise", enum_tag(&cfg.axis_noise))
        .with_meta("outlier-count", list.len())
        .with_meta("outliers", list.join(" "));
    Ok(Generated { ground_truth, noisy })
}

/// Filters a trajectory file; the output keeps the input's record layout.
pub fn filter(cfg: &RunConfig, input: &TrajectoryFile) -> Result<TrajectoryFile> {
    let out = cfg.smooth(&input.trajectory)?;
    let mut file = TrajectoryFile::new(input.space, out)
        .with_meta("kind", "filtered")
        .with_meta("method", enum_tag(&cfg.method));
    if cfg.method == FilterMethod::Kalman {
        let (r, t) = cfg.kalman();
        file = file
            .with_meta("kalman-rotation", format!("{} {}", r.process, r.measurement))
            .with_meta("kalman-translation", format!("{} {}", t.process, t.measurement))
            .with_meta("note", KALMAN_NOTE);
    } else {
        let fc = cfg.filter_config();
        file = file
            .with_meta("space", enum_tag(&cfg.space))
            .with_meta("window", fc.window)
            .with_meta("irls-iters", fc.irls_iterations)
            .with_meta("delta", fc.delta)
            .with_meta("prior", enum_tag(&cfg.prior));
        if let Some(h) = cfg.bandwidth {
            file = file.with_meta("bandwidth", h);
        }
    }
    Ok(file)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluationReport {
    pub format: &'static str,
    pub estimate: String,
    pub ground_truth: String,
    pub estimate_header: BTreeMap<String, String>,
    pub samples: usize,
    pub errors: ErrorReport,
}

pub fn evaluate(estimate: &TrajectoryFile, estimate_name: &str, gt: &TrajectoryFile, gt_name: &str) -> Result<EvaluationReport> {
    let errors = evaluate_errors(&estimate.trajectory, &gt.trajectory)?;
    Ok(EvaluationReport {
        format: REPORT_FORMAT,
        estimate: estimate_name.to_string(),
        ground_truth: gt_name.to_string(),
        estimate_header: estimate.metadata.iter().cloned().collect(),
        samples: errors.len(),
        errors,
    })
}

impl EvaluationReport {
    /// `index,angle_deg,axis_deg,trans` rows.
    pub fn to_csv(&self) -> String {
        let e = &self.errors;
        let mut out = String::from("index,angle_deg,axis_deg,trans\n");
        for i in 0..e.len() {
            let _ = writeln!(out, "{i},{},{},{}", e.angle_deg.values[i], e.axis_deg.values[i], e.trans.values[i]);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChannelSummaries {
    pub angle_deg: Summary,
    pub axis_deg: Summary,
    pub trans: Summary,
}

impl From<&ErrorReport> for ChannelSummaries {
    fn from(r: &ErrorReport) -> Self {
        Self {
            angle_deg: r.angle_deg.summary,
            axis_deg: r.axis_deg.summary,
            trans: r.trans.summary,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareRow {
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
    pub errors: ChannelSummaries,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareReport {
    pub format: &'static str,
    pub config: RunConfig,
    pub samples: usize,
    pub outliers: Vec<usize>,
    pub input: ChannelSummaries,
    pub methods: Vec<CompareRow>,
}

/// Method labels of the comparison table, in output order.
pub const COMPARE_METHODS: [&str; 7] = ["pca", "wpca", "irls", "dual-pca", "dual-wpca", "dual-irls", "kalman"];

/// Runs all seven methods on one noisy trajectory.
pub fn compare(cfg: &RunConfig, noisy: &TrajectoryFile, gt: &TrajectoryFile) -> Result<CompareReport> {
    let input = evaluate_errors(&noisy.trajectory, &gt.trajectory)?;
    let mut methods = Vec::with_capacity(COMPARE_METHODS.len());
    for label in COMPARE_METHODS {
        let (space, name) = match label.strip_prefix("dual-") {
            Some(m) => (Space::Dual, m),
            None => (Space::Split, label),
        };
        let (out, note) = match name {
            "kalman" => {
                let (r, t) = cfg.kalman();
                (kalman_baseline(&noisy.trajectory, r, t)?, Some(KALMAN_NOTE))
            }
            _ => {
                let method = match name {
                    "pca" => Method::Pca,
                    "wpca" => Method::Wpca,
                    _ => Method::Irls,
                };
                (filter_trajectory(&noisy.trajectory, space, &cfg.filter_config_for(method))?, None)
            }
        };
        let report = evaluate_errors(&out, &gt.trajectory)?;
        methods.push(CompareRow {
            method: label.to_string(),
            note,
            errors: (&report).into(),
        });
    }
    let outliers = noisy
        .meta("outliers")
        .map(|s| s.split_whitespace().filter_map(|t| t.parse().ok()).collect())
        .unwrap_or_default();
    Ok(CompareReport {
        format: REPORT_FORMAT,
        config: cfg.clone(),
        samples: gt.trajectory.len(),
        outliers,
        input: (&input).into(),
        methods,
    })
}

impl CompareReport {
    pub fn row(&self, method: &str) -> Option<&CompareRow> {
        self.methods.iter().find(|r| r.method == method)
    }

    /// `method,channel,median,mean,std,q1,q3` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("method,channel,median,mean,std,q1,q3\n");
        let rows = std::iter::once(("input", &self.input)).chain(self.methods.iter().map(|r| (r.method.as_str(), &r.errors)));
        for (name, e) in rows {
            for (channel, s) in [("angle_deg", &e.angle_deg), ("axis_deg", &e.axis_deg), ("trans", &e.trans)] {
                let _ = writeln!(out, "{name},{channel},{},{},{},{},{}", s.median, s.mean, s.std, s.q1, s.q3);
            }
        }
        out
    }
}

fn enum_tag<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn file_name(p: &Path) -> String {
    p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default()
}

fn csv_path(report: &Path, explicit: Option<&PathBuf>) -> PathBuf {
    explicit.cloned().unwrap_or_else(|| report.with_extension("csv"))
}

#[derive(Debug, Parser)]
#[command(name = "dqfilter", version, about = "Pose trajectory smoothing on unit dual quaternions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a spline ground truth (--gt) and a noisy copy (--out).
    Generate(Args),
    /// Smooth the trajectory in --in and write it to --out.
    Filter(Args),
    /// Compare --in against --gt; JSON to --report, error series CSV to --out.
    Evaluate(Args),
    /// Run all seven methods; JSON table to --report, CSV to --out. Uses
    /// --in/--gt when both are given and generates data otherwise.
    Compare(Args),
}

#[derive(Debug, Clone, clap::Args)]
pub struct Args {
    /// Input trajectory file.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Ground truth trajectory file.
    #[arg(long)]
    pub gt: Option<PathBuf>,
    /// Output trajectory, or the CSV table for evaluate/compare.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON report path.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// TOML file with defaults for any of the settings below.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub settings: Settings,
}

impl Args {
    fn run_config(&self) -> Result<RunConfig> {
        let env = std::env::var(SEED_ENV).ok();
        RunConfig::resolve(self.settings.clone(), self.config.as_deref(), env.as_deref())
    }
}

fn required<'a>(p: &'a Option<PathBuf>, flag: &str) -> Result<&'a Path> {
    p.as_deref().ok_or_else(|| Error::Config(format!("missing required flag --{flag}")))
}

/// Executes one command; the returned text is a short human-readable note.
pub fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Generate(a) => {
            let cfg = a.run_config()?;
            let (gt_path, out_path) = (required(&a.gt, "gt")?, required(&a.out, "out")?);
            let g = generate(&cfg)?;
            g.ground_truth.write(gt_path)?;
            g.noisy.write(out_path)?;
            Ok(format!(
                "wrote {} poses to {} and {} ({} outliers)",
                cfg.samples,
                gt_path.display(),
                out_path.display(),
                g.noisy.meta("outlier-count").unwrap_or("0")
            ))
        }
        Command::Filter(a) => {
            let cfg = a.run_config()?;
            let (in_path, out_path) = (required(&a.input, "in")?, required(&a.out, "out")?);
            let input = TrajectoryFile::read(in_path)?;
            filter(&cfg, &input)?.write(out_path)?;
            Ok(format!("filtered {} poses into {}", input.trajectory.len(), out_path.display()))
        }
        Command::Evaluate(a) => {
            let (in_path, gt_path) = (required(&a.input, "in")?, required(&a.gt, "gt")?);
            let report_path = required(&a.report, "report")?;
            let est = TrajectoryFile::read(in_path)?;
            let gt = TrajectoryFile::read(gt_path)?;
            let report = evaluate(&est, &file_name(in_path), &gt, &file_name(gt_path))?;
            write_atomic(report_path, to_json(&report).as_bytes())?;
            write_atomic(&csv_path(report_path, a.out.as_ref()), report.to_csv().as_bytes())?;
            let s = &report.errors;
            Ok(format!(
                "median errors: angle {:.4} deg, axis {:.4} deg, translation {:.4e}",
                s.angle_deg.summary.median, s.axis_deg.summary.median, s.trans.summary.median
            ))
        }
        Command::Compare(a) => {
            let cfg = a.run_config()?;
            let report_path = required(&a.report, "report")?;
            let (noisy, gt) = match (&a.input, &a.gt) {
                (Some(i), Some(g)) => (TrajectoryFile::read(i)?, TrajectoryFile::read(g)?),
                (None, None) => {
                    let g = generate(&cfg)?;
                    (g.noisy, g.ground_truth)
                }
                _ => return Err(Error::Config("compare needs both --in and --gt, or neither".into())),
            };
            let report = compare(&cfg, &noisy, &gt)?;
            write_atomic(report_path, to_json(&report).as_bytes())?;
            write_atomic(&csv_path(report_path, a.out.as_ref()), report.to_csv().as_bytes())?;
            let mut table = format!("{:<10} {:>12} {:>12} {:>12}\n", "method", "trans", "angle_deg", "axis_deg");
            for r in &report.methods {
                let _ = writeln!(
                    table,
                    "{:<10} {:>12.4e} {:>12.4} {:>12.4}",
                    r.method, r.errors.trans.median, r.errors.angle_deg.median, r.errors.axis_deg.median
                );
            }
            Ok(table)
        }
    }
}
