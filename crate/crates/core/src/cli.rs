// Copyright 2026 The tomoinfo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! The `tomoinfo` command line.
//!
//! [`run`] parses an argument vector, writes results to `out` and diagnostics
//! to `err`, and returns the process exit code:
//!
//! * `0` on success;
//! * `1` on any usage or validation error, reported as a single line
//!   `error[<kind>]: <message>` on `err`;
//! * `2` when `--strict` is set and a result carries a reliability warning
//!   (ill-conditioned Fisher matrix, non-converged ML trials). The result is
//!   still written to `out`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::parser::ValueSource;
use clap::{ArgMatches, Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::estimators::{
    direct_inversion, linear_start, log_likelihood, ml_estimate, ortho_inversion, project_to_physical,
    MlOptions,
};
use crate::fisher::{
    crb_trace, eigenbasis_error, error_ellipsoid, fisher, fisher_p3_closed_form, ortho_quorum_error,
    FisherForm,
};
use crate::io::{format_f64, read_json, to_json_string, MatrixJson};
use crate::measurement::{
    ortho_quorum, simulate_eigen, simulate_mub, simulate_ortho, MeasurementRecord, Quorum, Scheme,
};
use crate::montecarlo::{
    crb_saturation_sweep, invariance_scan, run_trials_detailed, EstimatorKind, ExperimentConfig,
    ScanQuantity, StateSpec, SweepRow, TrialRow,
};
use crate::mub::{build_mub, bz_total_error, invariant_information, verify_complementarity};
use crate::quantum::{gell_mann_basis, purity, DensityMatrix, Operator, StateKind};

#[derive(Debug, Parser)]
#[command(
    name = "tomoinfo",
    version,
    about = "Estimation error of qudit state tomography with mutually unbiased bases"
)]
pub struct Cli {
    /// Seed for every random quantity
    #[arg(long, global = true, env = "TOMOINFO_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Json)]
    pub out: OutFormat,
    /// Worker threads for Monte Carlo trials; 0 uses every core. Results do not depend on it
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Exit with status 2 when a result carries a reliability warning
    #[arg(long, global = true)]
    pub strict: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mutually unbiased bases
    #[command(subcommand)]
    Mub(MubCommand),
    /// Total lack of information E = Σ p(1-p) of the MUB set
    BzError(BzErrorArgs),
    /// Reconstruct a state from a counts file
    Estimate(EstimateArgs),
    /// Fisher matrix, Cramér–Rao optimum and error ellipsoid
    Fisher(FisherArgs),
    /// Scans over unitary rotations of a state
    #[command(subcommand)]
    Scan(ScanCommand),
    /// Monte Carlo experiments
    #[command(subcommand)]
    Mc(McCommand),
    /// Simulate a counts file
    Sample(SampleArgs),
}

#[derive(Debug, Subcommand)]
pub enum MubCommand {
    /// Verify |<e|f>|² = 1/p across every pair of bases
    Check(DimArgs),
    /// Print the projectors of the MUB set
    Export(DimArgs),
}

#[derive(Debug, Subcommand)]
pub enum ScanCommand {
    /// Evaluate a quantity on U ρ U† for random unitaries U
    Invariance(ScanArgs),
}

#[derive(Debug, Subcommand)]
pub enum McCommand {
    /// Repeated simulate-then-estimate trials
    Run(McRunArgs),
    /// ML and direct inversion against the multinomial bound over a list of N
    Sweep(McSweepArgs),
}

#[derive(Debug, Args)]
pub struct DimArgs {
    /// Prime dimension (2, 3, 5 or 7 for MUB sets)
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
}

/// True state: a JSON density matrix, or `λ|ψ><ψ| + (1-λ)I/p` with a Haar
/// random `ψ` drawn from `--seed`. Without either, `I/p`.
#[derive(Debug, Args)]
#[group(multiple = false)]
pub struct StateArgs {
    /// Density matrix JSON file {"dim", "re", "im"}
    #[arg(long, value_name = "FILE")]
    pub state: Option<PathBuf>,
    /// Pure-state weight λ of a random state (purity (1 + (p-1)λ²)/p) [default: maximally mixed state]
    #[arg(long, value_name = "LAMBDA")]
    pub purity: Option<f64>,
}

impl StateArgs {
    fn spec(&self, seed: u64) -> Result<Option<StateSpec>> {
        Ok(match (&self.state, self.purity) {
            (Some(path), _) => Some(StateSpec::Fixed(read_json(path, "state")?)),
            (None, Some(lambda)) => Some(StateSpec::Random {
                kind: StateKind::PurityTarget(lambda),
                seed,
            }),
            (None, None) => None,
        })
    }

    fn resolve(&self, dim: usize, seed: u64) -> Result<DensityMatrix> {
        self.spec(seed)?.unwrap_or(StateSpec::MaximallyMixed).resolve(dim)
    }
}

#[derive(Debug, Args)]
pub struct BzErrorArgs {
    #[command(flatten)]
    pub dim: DimArgs,
    #[command(flatten)]
    pub state: StateArgs,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub dim: DimArgs,
    /// direct, direct-projected or ml
    #[arg(long, default_value = "direct", value_parser = EstimatorKind::from_str)]
    pub method: EstimatorKind,
    /// Measurement scheme of the counts: mub or ortho
    #[arg(long, default_value = "mub", value_parser = Scheme::from_str)]
    pub scheme: Scheme,
    /// Counts JSON file {"dim", "scheme", "N", "counts"}
    #[arg(long, value_name = "FILE")]
    pub counts: PathBuf,
}

#[derive(Debug, Args)]
pub struct FisherArgs {
    #[command(flatten)]
    pub dim: DimArgs,
    #[command(flatten)]
    pub state: StateArgs,
    /// gaussian or multinomial
    #[arg(long, default_value = "gaussian", value_parser = FisherForm::from_str)]
    pub form: FisherForm,
    /// Quorum: mub or ortho
    #[arg(long, default_value = "mub", value_parser = Scheme::from_str)]
    pub scheme: Scheme,
    /// Particles per observable
    #[arg(long, default_value_t = 1)]
    pub shots: u64,
    /// Also report the closed-form optimum (qutrit MUB or orthogonal quorum)
    #[arg(long)]
    pub closed_form: bool,
    /// Also report the error ellipsoid
    #[arg(long)]
    pub ellipsoid: bool,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub dim: DimArgs,
    /// Pure-state weight λ of the base state
    #[arg(long, value_name = "LAMBDA", default_value_t = 0.9)]
    pub purity: f64,
    /// Number of Haar random unitaries
    #[arg(long, default_value_t = 100)]
    pub unitaries: usize,
    /// bz_error, crb_gauss, crb_multinomial or ortho_error
    #[arg(long, default_value = "bz_error", value_parser = ScanQuantity::from_str)]
    pub quantity: ScanQuantity,
    /// Particles per observable
    #[arg(long, default_value_t = 1)]
    pub shots: u64,
}

#[derive(Debug, Args)]
pub struct McRunArgs {
    /// Experiment JSON file; flags given on the command line take precedence
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub dim: DimArgs,
    #[command(flatten)]
    pub state: StateArgs,
    /// mub, ortho or eigen
    #[arg(long, default_value = "mub", value_parser = Scheme::from_str)]
    pub scheme: Scheme,
    /// direct, direct-projected, ml or ortho-inv
    #[arg(long, default_value = "direct", value_parser = EstimatorKind::from_str)]
    pub method: EstimatorKind,
    /// Particles per observable
    #[arg(long, default_value_t = 100)]
    pub shots: u64,
    /// Number of trials
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    /// Leave non-converged ML trials out of the aggregates
    #[arg(long)]
    pub exclude_nonconverged: bool,
    /// Print E/N, Tr F⁻¹ and N·⟨d⟩ side by side
    #[arg(long)]
    pub paper_table: bool,
}

#[derive(Debug, Args)]
pub struct McSweepArgs {
    #[command(flatten)]
    pub dim: DimArgs,
    #[command(flatten)]
    pub state: StateArgs,
    /// Ascending, comma-separated particle counts
    #[arg(long, value_delimiter = ',', default_value = "100,1000,10000")]
    pub shots_list: Vec<u64>,
    /// Trials per particle count
    #[arg(long, default_value_t = 2000)]
    pub trials: usize,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub dim: DimArgs,
    #[command(flatten)]
    pub state: StateArgs,
    /// mub, ortho or eigen
    #[arg(long, default_value = "mub", value_parser = Scheme::from_str)]
    pub scheme: Scheme,
    /// Particles per observable
    #[arg(long, default_value_t = 100)]
    pub shots: u64,
}

/// Partial experiment description accepted by `mc run --config`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    dim: Option<usize>,
    scheme: Option<Scheme>,
    estimator: Option<EstimatorKind>,
    shots: Option<u64>,
    trials: Option<usize>,
    state: Option<StateSpec>,
    base_seed: Option<u64>,
    exclude_nonconverged: Option<bool>,
    ml: Option<MlOptions>,
}

struct Ctx<'a> {
    seed: u64,
    out_format: OutFormat,
    jobs: Option<usize>,
    out: &'a mut dyn Write,
    warnings: Vec<String>,
}

impl Ctx<'_> {
    fn json<T: Serialize + ?Sized>(&mut self, value: &T) -> Result<()> {
        let text = to_json_string(value)?;
        writeln!(self.out, "{text}").map_err(|e| Error::Io(e.to_string()))
    }

    fn lines(&mut self, header: &str, rows: impl IntoIterator<Item = String>) -> Result<()> {
        let io = |e: std::io::Error| Error::Io(e.to_string());
        writeln!(self.out, "{header}").map_err(io)?;
        for row in rows {
            writeln!(self.out, "{row}").map_err(io)?;
        }
        Ok(())
    }

    fn json_only(&self, command: &str) -> Result<()> {
        if self.out_format == OutFormat::Csv {
            return Err(Error::InvalidParameter(format!("{command} has no csv output")));
        }
        Ok(())
    }
}

/// Parse `args` (including the program name) and execute the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let matches = match Cli::command().try_get_matches_from(args) {
        Ok(m) => m,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e.render());
                return 0;
            }
            let text = e.render().to_string();
            let first = text
                .lines()
                .next()
                .unwrap_or("invalid arguments")
                .trim_start_matches("error: ");
            let _ = writeln!(err, "error[usage]: {first}");
            return 1;
        }
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error[usage]: {}", e.to_string().trim());
            return 1;
        }
    };
    let mut ctx = Ctx {
        seed: cli.seed,
        out_format: cli.out,
        jobs: (cli.jobs > 0).then_some(cli.jobs),
        out,
        warnings: Vec::new(),
    };
    match dispatch(&cli.command, &matches, &mut ctx) {
        Ok(()) => {
            let warned = !ctx.warnings.is_empty();
            for w in &ctx.warnings {
                let _ = writeln!(err, "warning[reliability]: {w}");
            }
            if warned && cli.strict {
                2
            } else {
                0
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error[{}]: {}", e.kind(), e.to_string().replace('\n', " "));
            1
        }
    }
}

fn dispatch(command: &Command, matches: &ArgMatches, ctx: &mut Ctx<'_>) -> Result<()> {
    match command {
        Command::Mub(MubCommand::Check(a)) => {
            ctx.json_only("mub check")?;
            let report = verify_complementarity(&build_mub(a.dim)?);
            ctx.json(&json!({ "dim": a.dim, "pass": report.pass, "max_deviation": report.max_deviation }))
        }
        Command::Mub(MubCommand::Export(a)) => {
            ctx.json_only("mub export")?;
            ctx.json(&build_mub(a.dim)?)
        }
        Command::BzError(a) => bz_error(a, ctx),
        Command::Estimate(a) => estimate(a, ctx),
        Command::Fisher(a) => fisher_cmd(a, ctx),
        Command::Scan(ScanCommand::Invariance(a)) => scan(a, ctx),
        Command::Mc(McCommand::Run(a)) => {
            let sub = matches
                .subcommand_matches("mc")
                .and_then(|m| m.subcommand_matches("run"))
                .expect("mc run matches");
            mc_run(a, sub, ctx)
        }
        Command::Mc(McCommand::Sweep(a)) => sweep(a, ctx),
        Command::Sample(a) => sample(a, ctx),
    }
}

fn bz_error(a: &BzErrorArgs, ctx: &mut Ctx<'_>) -> Result<()> {
    ctx.json_only("bz-error")?;
    let p = a.dim.dim;
    let rho = a.state.resolve(p, ctx.seed)?;
    let e = bz_total_error(&rho, &build_mub(p)?)?;
    ctx.json(&json!({
        "dim": p,
        "E": e.sum_form,
        "closed_form": e.closed_form,
        "purity": purity(&rho),
        "invariant_information": invariant_information(&rho),
    }))
}

fn estimate(a: &EstimateArgs, ctx: &mut Ctx<'_>) -> Result<()> {
    ctx.json_only("estimate")?;
    let p = a.dim.dim;
    if a.scheme == Scheme::Eigen || a.method == EstimatorKind::OrthoInv && a.scheme != Scheme::Ortho {
        return Err(Error::IncompatibleConfig(format!(
            "method {} cannot be used with the {} scheme",
            a.method, a.scheme
        )));
    }
    let record: MeasurementRecord = read_json(&a.counts, "counts")?;
    record.expect_scheme(a.scheme)?;
    crate::error::check_dim(p, record.dim())?;
    let basis = gell_mann_basis(p)?;
    let set;
    let oq;
    let (raw, quorum) = match a.scheme {
        Scheme::Mub => {
            set = build_mub(p)?;
            (direct_inversion(&record, &set)?, Quorum::Mub(&set))
        }
        _ => {
            oq = ortho_quorum(&basis);
            (ortho_inversion(&record, &basis)?, Quorum::Ortho(&oq))
        }
    };
    let (matrix, iterations, converged) = match a.method {
        EstimatorKind::Direct | EstimatorKind::OrthoInv => (raw.matrix().clone(), 0, true),
        EstimatorKind::DirectProjected => (project_to_physical(&raw).into_matrix(), 0, true),
        EstimatorKind::Ml => {
            let opts = MlOptions {
                initial: Some(linear_start(&raw)),
                ..MlOptions::default()
            };
            let res = ml_estimate(&record, quorum, &opts)?;
            if !res.converged {
                ctx.warnings
                    .push(format!("ML stopped after {} iterations", res.iterations));
            }
            (res.state.into_matrix(), res.iterations, res.converged)
        }
    };
    let est = crate::quantum::RawState::new(matrix)?;
    let ll = log_likelihood(&record, quorum, &est)?;
    ctx.json(&json!({
        "method": a.method.to_string(),
        "scheme": a.scheme.to_string(),
        "state": serde_json::to_value(MatrixJson(est.matrix().clone())).map_err(|e| Error::Parse(e.to_string()))?,
        "iterations": iterations,
        "converged": converged,
        "log_likelihood": ll,
        "min_eigenvalue": est.min_eigenvalue(),
    }))
}

fn fisher_cmd(a: &FisherArgs, ctx: &mut Ctx<'_>) -> Result<()> {
    ctx.json_only("fisher")?;
    let p = a.dim.dim;
    let rho = a.state.resolve(p, ctx.seed)?;
    let basis = gell_mann_basis(p)?;
    let set;
    let oq;
    let quorum = match a.scheme {
        Scheme::Mub => {
            set = build_mub(p)?;
            Quorum::Mub(&set)
        }
        Scheme::Ortho => {
            oq = ortho_quorum(&basis);
            Quorum::Ortho(&oq)
        }
        Scheme::Eigen => {
            return Err(Error::IncompatibleConfig(
                "fisher needs the mub or ortho scheme".into(),
            ));
        }
    };
    let closed = if a.closed_form {
        Some(match quorum {
            Quorum::Mub(set) if p == 3 => fisher_p3_closed_form(&rho, set, a.shots)?,
            Quorum::Ortho(_) => ortho_quorum_error(&rho, &basis, a.shots)?.closed_form,
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "no closed form for the {} scheme at dim {p}",
                    a.scheme
                )))
            }
        })
    } else {
        None
    };
    let f = fisher(&rho, quorum, &basis, a.shots, a.form)?;
    let crb = crb_trace(&f)?;
    if !crb.reliable {
        ctx.warnings.push(format!(
            "condition number {:.3e} exceeds the reliability limit",
            crb.condition_number
        ));
    }
    let ell = error_ellipsoid(&f)?;
    let mut body = json!({
        "dim": p,
        "form": a.form.to_string(),
        "scheme": a.scheme.to_string(),
        "shots": a.shots,
        "trace_inverse": crb.trace_inverse,
        "eigenvalues": ell.eigenvalues,
        "condition_number": crb.condition_number,
        "reliable": crb.reliable,
    });
    if let Some(c) = closed {
        body["closed_form"] = json!(c);
    }
    if a.ellipsoid {
        body["ellipsoid"] = serde_json::to_value(&ell).map_err(|e| Error::Parse(e.to_string()))?;
    }
    ctx.json(&body)
}

fn scan(a: &ScanArgs, ctx: &mut Ctx<'_>) -> Result<()> {
    let r = invariance_scan(a.dim.dim, a.purity, a.unitaries, a.quantity, ctx.seed, a.shots)?;
    match ctx.out_format {
        OutFormat::Json => ctx.json(&r),
        OutFormat::Csv => ctx.lines(
            "unitary,value",
            r.rows.iter().map(|(i, v)| format!("{i},{}", format_f64(*v))),
        ),
    }
}

fn explicit(m: &ArgMatches, id: &str) -> bool {
    m.value_source(id) == Some(ValueSource::CommandLine)
}

/// Merge `--config` with the flags: a flag typed on the command line wins,
/// then the file, then the flag's default.
fn build_config(a: &McRunArgs, m: &ArgMatches, seed: u64) -> Result<ExperimentConfig> {
    let file: ConfigFile = match &a.config {
        Some(path) => read_json(path, "config")?,
        None => ConfigFile::default(),
    };
    fn pick<T>(flag_given: bool, flag: T, file: Option<T>) -> T {
        if flag_given {
            flag
        } else {
            file.unwrap_or(flag)
        }
    }
    let base_seed = pick(explicit(m, "seed"), seed, file.base_seed);
    let state_flag = explicit(m, "state") || explicit(m, "purity");
    let state = if state_flag {
        a.state.spec(base_seed)?.expect("state flag given")
    } else {
        file.state.unwrap_or(StateSpec::MaximallyMixed)
    };
    let config = ExperimentConfig {
        dim: pick(explicit(m, "dim"), a.dim.dim, file.dim),
        scheme: pick(explicit(m, "scheme"), a.scheme, file.scheme),
        estimator: pick(explicit(m, "method"), a.method, file.estimator),
        shots: pick(explicit(m, "shots"), a.shots, file.shots),
        trials: pick(explicit(m, "trials"), a.trials, file.trials),
        state,
        base_seed,
        exclude_nonconverged: pick(
            explicit(m, "exclude_nonconverged"),
            a.exclude_nonconverged,
            file.exclude_nonconverged,
        ),
        ml: file.ml.unwrap_or_default(),
    };
    config.validate()?;
    Ok(config)
}

#[derive(Serialize)]
struct PaperTable {
    dim: usize,
    scheme: Scheme,
    estimator: EstimatorKind,
    shots: u64,
    trials_used: usize,
    /// Closed-form error of the scheme divided by N.
    e_over_n: f64,
    trace_inverse_gaussian: Option<f64>,
    trace_inverse_multinomial: Option<f64>,
    mean_d: f64,
    std_error_of_mean: f64,
    n_mean_d: f64,
}

fn mc_run(a: &McRunArgs, m: &ArgMatches, ctx: &mut Ctx<'_>) -> Result<()> {
    let config = build_config(a, m, ctx.seed)?;
    let run = run_trials_detailed(&config, ctx.jobs)?;
    if run.summary.nonconverged_count > 0 {
        ctx.warnings.push(format!(
            "{} of {} ML trials did not converge",
            run.summary.nonconverged_count, config.trials
        ));
    }
    if a.paper_table {
        let p = config.dim;
        let n = config.shots as f64;
        let rho = config.state.resolve(p)?;
        let basis = gell_mann_basis(p)?;
        let set;
        let oq;
        let (e, quorum) = match config.scheme {
            Scheme::Mub => {
                set = build_mub(p)?;
                (bz_total_error(&rho, &set)?.closed_form, Some(Quorum::Mub(&set)))
            }
            Scheme::Ortho => {
                oq = ortho_quorum(&basis);
                (
                    ortho_quorum_error(&rho, &basis, 1)?.closed_form,
                    Some(Quorum::Ortho(&oq)),
                )
            }
            Scheme::Eigen => (eigenbasis_error(&rho), None),
        };
        let mut crb = |form| -> Result<Option<f64>> {
            let Some(q) = quorum else { return Ok(None) };
            let c = crb_trace(&fisher(&rho, q, &basis, config.shots, form)?)?;
            if !c.reliable {
                ctx.warnings
                    .push(format!("{form} Fisher matrix is ill-conditioned"));
            }
            Ok(Some(c.trace_inverse))
        };
        let table = PaperTable {
            dim: p,
            scheme: config.scheme,
            estimator: config.estimator,
            shots: config.shots,
            trials_used: run.summary.trials_used,
            e_over_n: e / n,
            trace_inverse_gaussian: crb(FisherForm::Gaussian)?,
            trace_inverse_multinomial: crb(FisherForm::Multinomial)?,
            mean_d: run.summary.mean_d,
            std_error_of_mean: run.summary.std_error_of_mean,
            n_mean_d: n * run.summary.mean_d,
        };
        return match ctx.out_format {
            OutFormat::Json => ctx.json(&table),
            OutFormat::Csv => {
                let opt = |v: Option<f64>| v.map(format_f64).unwrap_or_default();
                let row = format!(
                    "{},{},{},{},{},{},{},{},{},{},{}",
                    table.dim,
                    table.scheme,
                    table.estimator,
                    table.shots,
                    table.trials_used,
                    format_f64(table.e_over_n),
                    opt(table.trace_inverse_gaussian),
                    opt(table.trace_inverse_multinomial),
                    format_f64(table.mean_d),
                    format_f64(table.std_error_of_mean),
                    format_f64(table.n_mean_d)
                );
                ctx.lines(
                    "dim,scheme,estimator,N,trials_used,e_over_n,trace_inverse_gaussian,trace_inverse_multinomial,mean_d,std_error_of_mean,n_mean_d",
                    [row],
                )
            }
        };
    }
    match ctx.out_format {
        OutFormat::Json => ctx.json(&json!({
            "config": serde_json::to_value(&config).map_err(|e| Error::Parse(e.to_string()))?,
            "summary": serde_json::to_value(&run.summary).map_err(|e| Error::Parse(e.to_string()))?,
        })),
        OutFormat::Csv => ctx.lines(TrialRow::CSV_HEADER, run.rows.iter().map(TrialRow::to_csv)),
    }
}

fn sweep(a: &McSweepArgs, ctx: &mut Ctx<'_>) -> Result<()> {
    let p = a.dim.dim;
    let rho = a.state.resolve(p, ctx.seed)?;
    let rows = crb_saturation_sweep(p, &rho, &a.shots_list, a.trials, ctx.seed, ctx.jobs)?;
    let stuck: usize = rows.iter().map(|r| r.ml_nonconverged).sum();
    if stuck > 0 {
        ctx.warnings.push(format!("{stuck} ML trials did not converge"));
    }
    match ctx.out_format {
        OutFormat::Json => ctx.json(&rows),
        OutFormat::Csv => ctx.lines(SweepRow::CSV_HEADER, rows.iter().map(SweepRow::to_csv)),
    }
}

fn sample(a: &SampleArgs, ctx: &mut Ctx<'_>) -> Result<()> {
    let p = a.dim.dim;
    let rho = a.state.resolve(p, ctx.seed)?;
    let record = match a.scheme {
        Scheme::Mub => simulate_mub(&rho, &build_mub(p)?, a.shots, ctx.seed)?,
        Scheme::Ortho => simulate_ortho(&rho, &gell_mann_basis(p)?, a.shots, ctx.seed)?,
        Scheme::Eigen => simulate_eigen(&rho, a.shots, ctx.seed)?,
    };
    match ctx.out_format {
        OutFormat::Json => ctx.json(&record),
        OutFormat::Csv => {
            let rows: Vec<String> = record
                .counts()
                .iter()
                .enumerate()
                .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, n)| format!("{i},{j},{n}")))
                .collect();
            ctx.lines("observable,outcome,count", rows)
        }
    }
}
