//! Batch front end: a JSON run configuration in, CSV or JSON tables out.
//!
//! Exit codes: 0 success, 2 configuration or validation error, 3 numerical
//! error (pole, degeneracy, non-convergence, or a failed `check` suite).

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::kernel::modes::MAX_MODES;
use crate::kernel::{
    fredholm_det, mode_matrix_a, mode_matrix_d, modes_by_quadrature_with, rank_one_residual, AKernel, ContinuousKernel,
    DKernel, ModeMatrices, SqrtBranch,
};
use crate::monodromy::{check_relations, MonodromyParams};
use crate::nekrasov::{dual_series, maya_series, SeriesTruncation};
use crate::tau_engine::{cross_validate, ode_residual, tau, tau_raw, zeta_jet, Differentiation, Method, Truncation};

type C64 = Complex64;

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

pub const TAU_CSV_HEADER: [&str; 12] = [
    "t_re",
    "t_im",
    "tau_fred_re",
    "tau_fred_im",
    "tau_maya_re",
    "tau_maya_im",
    "tau_nek_re",
    "tau_nek_im",
    "zeta_re",
    "zeta_im",
    "ode_residual",
    "est_error",
];

const AFTER_HELP: &str = "\
The configuration is one JSON document read from --config or standard input:
  {\"sigma\": [re, im], \"eta\": [re, im],
   \"t_grid\": {\"start\": 0.05, \"stop\": 0.05, \"count\": 1, \"spacing\": \"linear\"|\"log\"},
   \"method\": \"fredholm\"|\"maya\"|\"nekrasov\"|\"all\", \"N_modes\": 12,
   \"weight_cutoff\": 6, \"charge_cutoff\": 2, \"fd_step\": 0.001, \"tolerance\": 1e-8,
   \"output\": \"path\", \"format\": \"csv\"|\"json\"}
Missing fields take defaults: sigma [-0.13, 0], eta [0.11, 0], a single point t = 0.05,
method all, N_modes 12, weight_cutoff 6, charge_cutoff 2, format csv.

CSV columns of `tau` (empty when a method is not selected):
  t_re,t_im,tau_fred_re,tau_fred_im,tau_maya_re,tau_maya_im,tau_nek_re,tau_nek_im,
  zeta_re,zeta_im,ode_residual,est_error
tau is normalized as t^(-nu^2) tau_III with leading coefficient 1, nu = sigma + 1/2.
zeta = t d/dt ln tau_III comes from the Maya series (analytic) when a series method
is selected, otherwise from a nine-point stencil on the determinant with step fd_step.
est_error is the largest |tau(trunc) - tau(next trunc)| over the selected methods.

Other tables:
  check        suite,t,value,threshold,pass
  series       route,sector,weight,exponent_re,exponent_im,coeff_re,coeff_im
  modes        block,row,col,closed_re,closed_im,quadrature_re,quadrature_im,abs_diff
  convergence  t,study,level,value_re,value_im,delta
JSON output is {\"schema\": 1, \"command\": ..., \"records\": [...]}.

Exit codes: 0 success, 2 configuration error, 3 numerical error or failed check.";

#[derive(Debug, Parser)]
#[command(name = "piii-tau", version, about = "Painleve III (D8) tau functions and their cross-checks", after_help = AFTER_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate tau, zeta and the sigma-form residual over the t grid
    Tau(IoArgs),
    /// Run the invariant and identity suite with a pass/fail summary
    Check(IoArgs),
    /// Emit Maya and dual series coefficients as (exponent, coefficient)
    Series(IoArgs),
    /// Emit closed-form mode matrices next to their quadrature values
    Modes(IoArgs),
    /// Truncation study in N and W with plot-ready columns
    Convergence(IoArgs),
}

#[derive(Debug, Clone, Args)]
pub struct IoArgs {
    /// JSON configuration file; standard input when absent or "-"
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output file; overrides the configuration's "output"; standard output when neither is set
    #[arg(long)]
    pub output: Option<PathBuf>,
}

impl Command {
    fn parts(&self) -> (&'static str, &IoArgs) {
        match self {
            Command::Tau(a) => ("tau", a),
            Command::Check(a) => ("check", a),
            Command::Series(a) => ("series", a),
            Command::Modes(a) => ("modes", a),
            Command::Convergence(a) => ("convergence", a),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TGrid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    #[serde(default = "default_spacing")]
    pub spacing: Spacing,
}

fn default_spacing() -> Spacing {
    Spacing::Linear
}

impl TGrid {
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|k| {
                let f = k as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.start + f * (self.stop - self.start),
                    Spacing::Log => (self.start.ln() + f * (self.stop.ln() - self.start.ln())).exp(),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodChoice {
    Fredholm,
    Maya,
    Nekrasov,
    All,
}

impl MethodChoice {
    pub fn methods(self) -> Vec<Method> {
        match self {
            MethodChoice::Fredholm => vec![Method::Fredholm],
            MethodChoice::Maya => vec![Method::Maya],
            MethodChoice::Nekrasov => vec![Method::Nekrasov],
            MethodChoice::All => Method::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub sigma: [f64; 2],
    pub eta: [f64; 2],
    pub t_grid: TGrid,
    pub method: MethodChoice,
    #[serde(rename = "N_modes")]
    pub n_modes: usize,
    pub weight_cutoff: u32,
    pub charge_cutoff: u32,
    pub fd_step: f64,
    pub tolerance: f64,
    pub output: Option<PathBuf>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            sigma: [-0.13, 0.0],
            eta: [0.11, 0.0],
            t_grid: TGrid { start: 0.05, stop: 0.05, count: 1, spacing: Spacing::Linear },
            method: MethodChoice::All,
            n_modes: 12,
            weight_cutoff: 6,
            charge_cutoff: 2,
            fd_step: 1e-3,
            tolerance: 1e-8,
            output: None,
            format: Format::Csv,
        }
    }
}

/// Failure of a run, carrying its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn validation(message: impl Into<String>) -> Self {
        Self { code: EXIT_VALIDATION, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = if e.is_validation() { EXIT_VALIDATION } else { EXIT_NUMERICAL };
        Self { code, message: e.to_string() }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        Self { code: EXIT_VALIDATION, message: format!("i/o: {e}") }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        Self { code: EXIT_VALIDATION, message: format!("csv: {e}") }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::validation(format!("config: {e}")))
    }

    /// Checks every field and builds the monodromy parameters. Any failure
    /// here, including σ on the half-integer lattice, is a validation error.
    pub fn validate(&self) -> Result<MonodromyParams, CliError> {
        let g = &self.t_grid;
        if g.count < 1 {
            return Err(CliError::validation("t_grid.count must be at least 1"));
        }
        if !(g.start.is_finite() && g.stop.is_finite()) || g.start < 0.0 || g.stop < g.start {
            return Err(CliError::validation(format!(
                "t_grid must satisfy 0 <= start <= stop, got {} .. {}",
                g.start, g.stop
            )));
        }
        if g.spacing == Spacing::Log && g.start <= 0.0 {
            return Err(CliError::validation("t_grid.start must be positive for log spacing"));
        }
        if self.n_modes < 1 || self.n_modes > MAX_MODES {
            return Err(CliError::validation(format!("N_modes must lie in 1..={MAX_MODES}, got {}", self.n_modes)));
        }
        if !(self.fd_step > 0.0) {
            return Err(CliError::validation(format!("fd_step must be positive, got {}", self.fd_step)));
        }
        if !(self.tolerance > 0.0) {
            return Err(CliError::validation(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        MonodromyParams::new(C64::new(self.sigma[0], self.sigma[1]), C64::new(self.eta[0], self.eta[1]))
            .map_err(|e| CliError::validation(e.to_string()))
    }

    pub fn truncation(&self) -> Truncation {
        Truncation::new(self.n_modes, self.weight_cutoff, self.charge_cutoff)
    }
}

/// Fixed 17-significant-digit formatting shared by all tables; −0 prints as 0.
pub fn fmt_num(x: f64) -> String {
    format!("{:.16e}", x + 0.0)
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_num).unwrap_or_default()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationMeta {
    #[serde(rename = "N_modes")]
    pub n_modes: usize,
    pub weight_cutoff: u32,
    pub charge_cutoff: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TauRecord {
    pub t: [f64; 2],
    pub tau_fred: Option<[f64; 2]>,
    pub tau_maya: Option<[f64; 2]>,
    pub tau_nek: Option<[f64; 2]>,
    pub zeta: Option<[f64; 2]>,
    pub ode_residual: Option<f64>,
    pub est_error: f64,
    pub outside_region: bool,
    pub truncation: TruncationMeta,
}

impl TauRecord {
    fn csv_row(&self) -> Vec<String> {
        let pair = |v: Option<[f64; 2]>| [fmt_opt(v.map(|x| x[0])), fmt_opt(v.map(|x| x[1]))];
        let mut row = vec![fmt_num(self.t[0]), fmt_num(self.t[1])];
        for v in [self.tau_fred, self.tau_maya, self.tau_nek, self.zeta] {
            row.extend(pair(v));
        }
        row.push(fmt_opt(self.ode_residual));
        row.push(fmt_num(self.est_error));
        row
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub suite: String,
    pub t: Option<f64>,
    pub value: f64,
    pub threshold: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub route: String,
    pub sector: i32,
    pub weight: u32,
    pub exponent: [f64; 2],
    pub coefficient: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeRecord {
    pub block: String,
    pub row: usize,
    pub col: usize,
    pub closed: [f64; 2],
    pub quadrature: [f64; 2],
    pub abs_diff: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRecord {
    pub t: f64,
    pub study: String,
    pub level: usize,
    pub value: [f64; 2],
    pub delta: Option<f64>,
}

/// The JSON document written by every subcommand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Output<R> {
    pub schema: u32,
    pub command: String,
    pub records: Vec<R>,
}

fn pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

/// One `tau` record per grid point, computed in parallel and kept in order.
pub fn tau_records(config: &RunConfig, params: &MonodromyParams) -> Result<Vec<TauRecord>, Error> {
    let trunc = config.truncation();
    let methods = config.method.methods();
    let series_method = methods.iter().copied().find(|m| *m != Method::Fredholm);
    config
        .t_grid
        .points()
        .par_iter()
        .map(|&t| {
            let tc = C64::new(t, 0.0);
            let mut rec = TauRecord {
                t: [t, 0.0],
                tau_fred: None,
                tau_maya: None,
                tau_nek: None,
                zeta: None,
                ode_residual: None,
                est_error: 0.0,
                outside_region: false,
                truncation: TruncationMeta {
                    n_modes: config.n_modes,
                    weight_cutoff: config.weight_cutoff,
                    charge_cutoff: config.charge_cutoff,
                },
            };
            for &m in &methods {
                let v = tau(tc, params, m, &trunc)?;
                rec.est_error = rec.est_error.max(v.est_error);
                rec.outside_region |= v.outside_region;
                let slot = match m {
                    Method::Fredholm => &mut rec.tau_fred,
                    Method::Maya => &mut rec.tau_maya,
                    Method::Nekrasov => &mut rec.tau_nek,
                };
                *slot = Some(pair(v.tau));
            }
            if t == 0.0 {
                rec.zeta = Some(pair(params.nu() * params.nu()));
            } else {
                let (method, diff) = match series_method {
                    Some(m) => (m, Differentiation::Analytic),
                    None => (Method::Fredholm, Differentiation::Stencil { h: config.fd_step, points: 9 }),
                };
                let jet = zeta_jet(t, params, method, &trunc, diff)?;
                rec.zeta = Some(pair(jet.zeta));
                rec.ode_residual = Some(jet.sigma_form_residual());
            }
            Ok(rec)
        })
        .collect()
}

fn check(suite: &str, t: Option<f64>, value: f64, threshold: f64) -> CheckRecord {
    CheckRecord { suite: suite.into(), t, value, threshold, pass: value.is_finite() && value < threshold }
}

/// The invariant suite: identities once, then per-t agreement and ODE checks.
pub fn check_records(config: &RunConfig, params: &MonodromyParams) -> Result<Vec<CheckRecord>, Error> {
    let trunc = config.truncation();
    let mut out = vec![check("monodromy_relations", None, check_relations(params)?.max(), 1e-12)];
    let flip = SqrtBranch { flip_plus: true, flip_minus: false };
    let t0 = C64::new(config.t_grid.start, 0.0);
    let base = fredholm_det(&ModeMatrices::new(params, t0, trunc.n_modes)?);
    let flipped = fredholm_det(&ModeMatrices::with_branch(params, t0, trunc.n_modes, flip)?);
    out.push(check("branch_flip", Some(t0.re), (base - flipped).norm() / base.norm(), 1e-12));
    out.push(check("rank_one", None, rank_one_residual(params, trunc.n_modes)?, 1e-10));

    let per_t: Vec<Vec<CheckRecord>> = config
        .t_grid
        .points()
        .par_iter()
        .map(|&t| {
            let r = cross_validate(C64::new(t, 0.0), params, &trunc)?;
            let mut v = vec![
                check("rank_one_d", Some(t), r.rank_one_d, 1e-10),
                check("quadrature_a", Some(t), r.quadrature_a, 1e-10),
                check("quadrature_d", Some(t), r.quadrature_d, 1e-10),
                check("factorization_identities", Some(t), r.identities, 1e-10),
                check("maya_vs_dual", Some(t), r.maya_vs_dual, 1e-11),
                check("quasi_periodicity_reindexing", Some(t), r.quasi_periodicity, 1e-11),
                check("method_agreement", Some(t), r.max_pairwise(), config.tolerance.max(10.0 * r.max_est_error)),
            ];
            if t > 0.0 {
                v.push(check("quasi_periodicity_ratio", Some(t), r.quasi_periodicity_ratio, 1e-6));
                let res = ode_residual(t, params, Method::Maya, &trunc, Differentiation::Analytic)?;
                v.push(check("sigma_form_residual", Some(t), res, 1e-6));
            }
            if r.near_resonance {
                // Reported, not asserted.
                v.push(CheckRecord {
                    suite: "near_resonance".into(),
                    t: Some(t),
                    value: 1.0,
                    threshold: 0.0,
                    pass: true,
                });
            }
            Ok(v)
        })
        .collect::<Result<_, Error>>()?;
    out.extend(per_t.into_iter().flatten());
    Ok(out)
}

/// Maya and dual coefficients, each summed over equal exponents.
pub fn series_records(config: &RunConfig, params: &MonodromyParams) -> Result<Vec<SeriesRecord>, Error> {
    let st = SeriesTruncation::new(config.weight_cutoff, config.charge_cutoff);
    let (nu, eta) = (params.nu(), params.eta());
    let mut out = Vec::new();
    for (route, series) in [("maya", maya_series(nu, eta, st)?), ("nekrasov", dual_series(nu, eta, st)?)] {
        out.extend(series.collect_by_exponent().into_iter().map(|term| SeriesRecord {
            route: route.into(),
            sector: term.sector,
            weight: term.weight,
            exponent: pair(term.exponent),
            coefficient: pair(term.coefficient),
        }));
    }
    Ok(out)
}

/// Closed-form a and d matrices at the first grid point next to quadrature.
pub fn mode_records(config: &RunConfig, params: &MonodromyParams) -> Result<Vec<ModeRecord>, Error> {
    let n = config.n_modes;
    let t = C64::new(config.t_grid.start, 0.0);
    let samples = (4 * n + 8).max(64);
    let ak = AKernel { params: *params };
    let dk = DKernel { params: *params, t };
    let blocks = [
        ("a", mode_matrix_a(params, n)?, modes_by_quadrature_with(&ak, n, ak.default_radius(), samples)?),
        ("d", mode_matrix_d(params, t, n)?, modes_by_quadrature_with(&dk, n, dk.default_radius(), samples)?),
    ];
    let mut out = Vec::new();
    for (name, closed, quad) in &blocks {
        for i in 0..closed.rows() {
            for j in 0..closed.cols() {
                out.push(ModeRecord {
                    block: (*name).into(),
                    row: i,
                    col: j,
                    closed: pair(closed[(i, j)]),
                    quadrature: pair(quad[(i, j)]),
                    abs_diff: (closed[(i, j)] - quad[(i, j)]).norm(),
                });
            }
        }
    }
    Ok(out)
}

/// det at N = 1..=N_modes and the Maya sum at W = 0..=weight_cutoff.
pub fn convergence_records(config: &RunConfig, params: &MonodromyParams) -> Result<Vec<ConvergenceRecord>, Error> {
    let per_t: Vec<Vec<ConvergenceRecord>> = config
        .t_grid
        .points()
        .par_iter()
        .map(|&t| {
            let tc = C64::new(t, 0.0);
            let mut rows = Vec::new();
            let mut prev: Option<C64> = None;
            for n in 1..=config.n_modes {
                let v = tau_raw(tc, params, Method::Fredholm, &Truncation::new(n, 0, 0))?;
                rows.push(ConvergenceRecord {
                    t,
                    study: "N".into(),
                    level: n,
                    value: pair(v),
                    delta: prev.map(|p| (v - p).norm()),
                });
                prev = Some(v);
            }
            prev = None;
            for w in 0..=config.weight_cutoff {
                let v = tau_raw(tc, params, Method::Maya, &Truncation::new(1, w, config.charge_cutoff))?;
                rows.push(ConvergenceRecord {
                    t,
                    study: "W".into(),
                    level: w as usize,
                    value: pair(v),
                    delta: prev.map(|p| (v - p).norm()),
                });
                prev = Some(v);
            }
            Ok(rows)
        })
        .collect::<Result<_, Error>>()?;
    Ok(per_t.into_iter().flatten().collect())
}

fn write_csv(header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    w.into_inner().map_err(|e| CliError::validation(format!("csv: {e}")))
}

fn write_json<R: Serialize>(command: &str, records: Vec<R>) -> Result<Vec<u8>, CliError> {
    let doc = Output { schema: SCHEMA_VERSION, command: command.into(), records };
    let mut bytes = serde_json::to_vec_pretty(&doc).map_err(|e| CliError::validation(format!("json: {e}")))?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// Renders the subcommand's table in the configured format.
pub fn render(command: &str, config: &RunConfig, params: &MonodromyParams) -> Result<(Vec<u8>, bool), CliError> {
    let json = config.format == Format::Json;
    let bool_s = |b: bool| if b { "true".to_string() } else { "false".to_string() };
    match command {
        "tau" => {
            let recs = tau_records(config, params)?;
            let bytes = if json {
                write_json(command, recs)?
            } else {
                write_csv(&TAU_CSV_HEADER, recs.iter().map(TauRecord::csv_row))?
            };
            Ok((bytes, true))
        }
        "check" => {
            let recs = check_records(config, params)?;
            let ok = recs.iter().all(|r| r.pass);
            let bytes = if json {
                write_json(command, recs)?
            } else {
                write_csv(
                    &["suite", "t", "value", "threshold", "pass"],
                    recs.iter().map(|r| {
                        vec![r.suite.clone(), fmt_opt(r.t), fmt_num(r.value), fmt_num(r.threshold), bool_s(r.pass)]
                    }),
                )?
            };
            Ok((bytes, ok))
        }
        "series" => {
            let recs = series_records(config, params)?;
            let bytes = if json {
                write_json(command, recs)?
            } else {
                write_csv(
                    &["route", "sector", "weight", "exponent_re", "exponent_im", "coeff_re", "coeff_im"],
                    recs.iter().map(|r| {
                        vec![
                            r.route.clone(),
                            r.sector.to_string(),
                            r.weight.to_string(),
                            fmt_num(r.exponent[0]),
                            fmt_num(r.exponent[1]),
                            fmt_num(r.coefficient[0]),
                            fmt_num(r.coefficient[1]),
                        ]
                    }),
                )?
            };
            Ok((bytes, true))
        }
        "modes" => {
            let recs = mode_records(config, params)?;
            let bytes = if json {
                write_json(command, recs)?
            } else {
                write_csv(
                    &["block", "row", "col", "closed_re", "closed_im", "quadrature_re", "quadrature_im", "abs_diff"],
                    recs.iter().map(|r| {
                        vec![
                            r.block.clone(),
                            r.row.to_string(),
                            r.col.to_string(),
                            fmt_num(r.closed[0]),
                            fmt_num(r.closed[1]),
                            fmt_num(r.quadrature[0]),
                            fmt_num(r.quadrature[1]),
                            fmt_num(r.abs_diff),
                        ]
                    }),
                )?
            };
            Ok((bytes, true))
        }
        "convergence" => {
            let recs = convergence_records(config, params)?;
            let bytes = if json {
                write_json(command, recs)?
            } else {
                write_csv(
                    &["t", "study", "level", "value_re", "value_im", "delta"],
                    recs.iter().map(|r| {
                        vec![
                            fmt_num(r.t),
                            r.study.clone(),
                            r.level.to_string(),
                            fmt_num(r.value[0]),
                            fmt_num(r.value[1]),
                            fmt_opt(r.delta),
                        ]
                    }),
                )?
            };
            Ok((bytes, true))
        }
        other => Err(CliError::validation(format!("unknown command {other}"))),
    }
}

fn read_config(path: &Option<PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| CliError::validation(format!("cannot read {}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

/// Parses the configuration, runs the subcommand and writes its output.
pub fn execute(command: &Command) -> Result<(), CliError> {
    let (name, io_args) = command.parts();
    let config = RunConfig::from_json(&read_config(&io_args.config)?)?;
    let params = config.validate()?;
    let (bytes, ok) = render(name, &config, &params)?;
    match io_args.output.as_ref().or(config.output.as_ref()) {
        Some(path) => fs::write(path, &bytes)
            .map_err(|e| CliError::validation(format!("cannot write {}: {e}", path.display())))?,
        None => io::stdout().write_all(&bytes)?,
    }
    if ok {
        Ok(())
    } else {
        Err(CliError { code: EXIT_NUMERICAL, message: "check: at least one suite failed".into() })
    }
}

/// Entry point for the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
        }
    };
    match execute(&cli.command) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}
