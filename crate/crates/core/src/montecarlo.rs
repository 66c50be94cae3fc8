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

//! Experiment harness: repeated simulate-then-estimate trials, unitary
//! invariance scans and Cramér–Rao saturation sweeps.
//!
//! Trial `t` draws its counts from `rng::derive_seed(base_seed, t)`. Trials
//! run on a rayon pool, results are collected in trial order and reduced by
//! pairwise summation, so a run is bitwise identical for any thread count.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators::{
    direct_inversion, linear_start, ml_estimate, ortho_inversion, project_to_physical, MlOptions,
};
use crate::fisher::{crb_trace, fisher_gaussian, fisher_multinomial, ortho_quorum_error};
use crate::measurement::{
    ortho_quorum, ortho_quorum_probabilities, simulate_eigen, simulate_mub, simulate_ortho, OrthoQuorum,
    Povm, Quorum, Scheme,
};
use crate::mub::{build_mub, bz_total_error, MubSet};
use crate::quantum::{
    bloch_coords, gell_mann_basis, hs_distance, random_state, random_unitary, CMatrix, DensityMatrix,
    HermitianBasis, Operator, RawState, StateKind,
};
use crate::rng::derive_seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EstimatorKind {
    /// Linear inversion: MUB weights, orthogonal-quorum Bloch inversion, or
    /// the eigenbasis frequencies.
    Direct,
    /// Linear inversion followed by [`project_to_physical`].
    DirectProjected,
    /// Maximum likelihood started from the projected linear estimate.
    Ml,
    /// Orthogonal-quorum inversion; same as `Direct` on the `ortho` scheme.
    OrthoInv,
}

impl fmt::Display for EstimatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EstimatorKind::Direct => "direct",
            EstimatorKind::DirectProjected => "direct-projected",
            EstimatorKind::Ml => "ml",
            EstimatorKind::OrthoInv => "ortho-inv",
        })
    }
}

impl FromStr for EstimatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(EstimatorKind::Direct),
            "direct-projected" => Ok(EstimatorKind::DirectProjected),
            "ml" => Ok(EstimatorKind::Ml),
            "ortho-inv" => Ok(EstimatorKind::OrthoInv),
            other => Err(Error::InvalidParameter(format!("unknown estimator '{other}'"))),
        }
    }
}

/// Which true state an experiment uses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StateSpec {
    Fixed(DensityMatrix),
    MaximallyMixed,
    Random { kind: StateKind, seed: u64 },
}

impl StateSpec {
    pub fn resolve(&self, dim: usize) -> Result<DensityMatrix> {
        match self {
            StateSpec::Fixed(rho) => {
                crate::error::check_dim(dim, rho.dim())?;
                Ok(rho.clone())
            }
            StateSpec::MaximallyMixed => DensityMatrix::maximally_mixed(dim),
            StateSpec::Random { kind, seed } => random_state(dim, *kind, *seed),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub dim: usize,
    pub scheme: Scheme,
    pub estimator: EstimatorKind,
    pub shots: u64,
    pub trials: usize,
    pub state: StateSpec,
    pub base_seed: u64,
    /// Drop ML trials that hit `max_iter` from the aggregates.
    #[serde(default)]
    pub exclude_nonconverged: bool,
    #[serde(default)]
    pub ml: MlOptions,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials < 1 {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        if self.shots < 1 {
            return Err(Error::InvalidParameter("shots must be at least 1".into()));
        }
        if self.dim < 2 {
            return Err(Error::InvalidDimension(self.dim));
        }
        use EstimatorKind::*;
        let ok = match self.scheme {
            Scheme::Mub => matches!(self.estimator, Direct | DirectProjected | Ml),
            Scheme::Ortho => true,
            Scheme::Eigen => matches!(self.estimator, Direct | DirectProjected),
        };
        if !ok {
            return Err(Error::IncompatibleConfig(format!(
                "estimator {} cannot be used with the {} scheme",
                self.estimator, self.scheme
            )));
        }
        Ok(())
    }
}

/// One simulate-then-estimate trial.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRow {
    pub trial: usize,
    pub seed: u64,
    /// `Tr{(ρ_est - ρ)²}`.
    pub d: f64,
    pub converged: bool,
    /// Estimate has no eigenvalue below -1e-10.
    pub physical: bool,
    pub iterations: usize,
    pub floored: bool,
    #[serde(skip)]
    pub coord_error: Vec<f64>,
}

impl TrialRow {
    pub const CSV_HEADER: &'static str = "trial,seed,d,converged,physical,iterations,floored";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.trial,
            self.seed,
            crate::io::format_f64(self.d),
            self.converged,
            self.physical,
            self.iterations,
            self.floored
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryStats {
    /// Mean Hilbert–Schmidt error `⟨d⟩`.
    pub mean_d: f64,
    /// Sample standard deviation of `d` over `√T`.
    pub std_error_of_mean: f64,
    /// `⟨(Δa_k)²⟩` per Gell-Mann coordinate; sums to `mean_d`.
    pub coord_variance: Vec<f64>,
    pub trials_used: usize,
    pub nonphysical_count: usize,
    pub nonconverged_count: usize,
    pub floored_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRun {
    pub summary: SummaryStats,
    pub rows: Vec<TrialRow>,
}

/// Sum in a fixed binary-tree order.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        2..=8 => xs.iter().sum(),
        n => pairwise_sum(&xs[..n / 2]) + pairwise_sum(&xs[n / 2..]),
    }
}

enum Setup {
    Mub(MubSet),
    Ortho(OrthoQuorum),
    Eigen(Povm),
}

struct Experiment<'a> {
    config: &'a ExperimentConfig,
    truth: DensityMatrix,
    truth_coords: Vec<f64>,
    basis: HermitianBasis,
    setup: Setup,
}

impl Experiment<'_> {
    fn trial(&self, t: usize) -> Result<TrialRow> {
        let cfg = self.config;
        let seed = derive_seed(cfg.base_seed, t as u64);
        let mut converged = true;
        let mut iterations = 0;
        let mut floored = false;
        let estimate: RawState = match &self.setup {
            Setup::Mub(set) => {
                let rec = simulate_mub(&self.truth, set, cfg.shots, seed)?;
                let raw = direct_inversion(&rec, set)?;
                match cfg.estimator {
                    EstimatorKind::DirectProjected => project_to_physical(&raw).into(),
                    EstimatorKind::Ml => {
                        let opts = MlOptions {
                            initial: Some(linear_start(&raw)),
                            ..cfg.ml.clone()
                        };
                        let res = ml_estimate(&rec, Quorum::Mub(set), &opts)?;
                        converged = res.converged;
                        iterations = res.iterations;
                        floored = res.floored;
                        res.state.into()
                    }
                    _ => raw,
                }
            }
            Setup::Ortho(q) => {
                let rec = simulate_ortho(&self.truth, &self.basis, cfg.shots, seed)?;
                let raw = ortho_inversion(&rec, &self.basis)?;
                match cfg.estimator {
                    EstimatorKind::DirectProjected => project_to_physical(&raw).into(),
                    EstimatorKind::Ml => {
                        let opts = MlOptions {
                            initial: Some(linear_start(&raw)),
                            ..cfg.ml.clone()
                        };
                        let res = ml_estimate(&rec, Quorum::Ortho(q), &opts)?;
                        converged = res.converged;
                        iterations = res.iterations;
                        floored = res.floored;
                        res.state.into()
                    }
                    _ => raw,
                }
            }
            Setup::Eigen(povm) => {
                let rec = simulate_eigen(&self.truth, cfg.shots, seed)?;
                let p = cfg.dim;
                let mut m = CMatrix::zeros(p, p);
                for (f, e) in rec.frequencies()[0].iter().zip(&povm.observables()[0]) {
                    m += e.scale(*f);
                }
                RawState::new(m)?
            }
        };
        let coords = bloch_coords(&estimate, &self.basis)?.coords;
        let coord_error = coords
            .iter()
            .zip(&self.truth_coords)
            .map(|(a, b)| (a - b) * (a - b))
            .collect();
        Ok(TrialRow {
            trial: t,
            seed,
            d: hs_distance(&estimate, &self.truth)?,
            converged,
            physical: estimate.is_physical(),
            iterations,
            floored,
            coord_error,
        })
    }
}

fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k.max(1))
                .build()
                .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

fn summarize(rows: &[TrialRow], exclude_nonconverged: bool, n_coords: usize) -> Result<SummaryStats> {
    let used: Vec<&TrialRow> = rows
        .iter()
        .filter(|r| r.converged || !exclude_nonconverged)
        .collect();
    if used.is_empty() {
        return Err(Error::InvalidParameter("no trials left after exclusions".into()));
    }
    let t = used.len() as f64;
    let ds: Vec<f64> = used.iter().map(|r| r.d).collect();
    let mean_d = pairwise_sum(&ds) / t;
    let sq: Vec<f64> = ds.iter().map(|d| (d - mean_d) * (d - mean_d)).collect();
    let var = if used.len() > 1 {
        pairwise_sum(&sq) / (t - 1.0)
    } else {
        0.0
    };
    let coord_variance = (0..n_coords)
        .map(|k| {
            let col: Vec<f64> = used.iter().map(|r| r.coord_error[k]).collect();
            pairwise_sum(&col) / t
        })
        .collect();
    Ok(SummaryStats {
        mean_d,
        std_error_of_mean: (var / t).sqrt(),
        coord_variance,
        trials_used: used.len(),
        nonphysical_count: rows.iter().filter(|r| !r.physical).count(),
        nonconverged_count: rows.iter().filter(|r| !r.converged).count(),
        floored_count: rows.iter().filter(|r| r.floored).count(),
    })
}

/// Run every trial and keep the per-trial rows. `jobs = None` uses the global
/// rayon pool; results do not depend on it.
pub fn run_trials_detailed(config: &ExperimentConfig, jobs: Option<usize>) -> Result<TrialRun> {
    config.validate()?;
    let truth = config.state.resolve(config.dim)?;
    let basis = gell_mann_basis(config.dim)?;
    let setup = match config.scheme {
        Scheme::Mub => Setup::Mub(build_mub(config.dim)?),
        Scheme::Ortho => {
            ortho_quorum_probabilities(&truth, &basis)?;
            Setup::Ortho(ortho_quorum(&basis))
        }
        Scheme::Eigen => Setup::Eigen(Povm::eigenbasis(&truth)),
    };
    let exp = Experiment {
        config,
        truth_coords: bloch_coords(&truth, &basis)?.coords,
        truth,
        setup,
        basis,
    };
    let rows = with_pool(jobs, || {
        (0..config.trials)
            .into_par_iter()
            .map(|t| exp.trial(t))
            .collect::<Result<Vec<_>>>()
    })??;
    let summary = summarize(&rows, config.exclude_nonconverged, exp.basis.len())?;
    Ok(TrialRun { summary, rows })
}

pub fn run_trials(config: &ExperimentConfig) -> Result<SummaryStats> {
    Ok(run_trials_detailed(config, None)?.summary)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanQuantity {
    /// Total error `Σ p(1-p)` over the MUB set.
    BzError,
    /// `Tr F⁻¹` of the Gaussian MUB Fisher matrix.
    CrbGauss,
    /// `Tr F⁻¹` of the multinomial MUB Fisher matrix.
    CrbMultinomial,
    /// Orthogonal-quorum optimal error, sum form.
    OrthoError,
}

impl fmt::Display for ScanQuantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScanQuantity::BzError => "bz_error",
            ScanQuantity::CrbGauss => "crb_gauss",
            ScanQuantity::CrbMultinomial => "crb_multinomial",
            ScanQuantity::OrthoError => "ortho_error",
        })
    }
}

impl FromStr for ScanQuantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "bz_error" => Ok(ScanQuantity::BzError),
            "crb_gauss" => Ok(ScanQuantity::CrbGauss),
            "crb_multinomial" => Ok(ScanQuantity::CrbMultinomial),
            "ortho_error" => Ok(ScanQuantity::OrthoError),
            other => Err(Error::InvalidParameter(format!(
                "unknown scan quantity '{other}'"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanResult {
    pub quantity: ScanQuantity,
    pub dim: usize,
    pub purity_weight: f64,
    /// `(unitary index, value)` for every evaluated rotation.
    pub rows: Vec<(usize, f64)>,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    /// `(max - min) / mean`.
    pub relative_spread: f64,
    /// Rotations whose state fell outside the quantity's domain.
    pub skipped: usize,
}

/// Evaluate `quantity` on `U ρ U†` for `n_unitaries` Haar unitaries, where
/// `ρ = λ|ψ⟩⟨ψ| + (1-λ)I/p` is fixed by `base_seed`. The MUB set and
/// Gell-Mann basis stay fixed. Values are per `shots` particles.
pub fn invariance_scan(
    dim: usize,
    purity_weight: f64,
    n_unitaries: usize,
    quantity: ScanQuantity,
    base_seed: u64,
    shots: u64,
) -> Result<ScanResult> {
    if n_unitaries < 2 {
        return Err(Error::InvalidParameter("at least 2 unitaries are needed".into()));
    }
    let base = random_state(dim, StateKind::PurityTarget(purity_weight), base_seed)?;
    let set = build_mub(dim)?;
    let basis = gell_mann_basis(dim)?;
    let mut rows = Vec::with_capacity(n_unitaries);
    let mut skipped = 0;
    for i in 0..n_unitaries {
        let u = random_unitary(dim, derive_seed(base_seed, i as u64))?;
        let rho = base.conjugate_by(&u)?;
        let value = match quantity {
            ScanQuantity::BzError => bz_total_error(&rho, &set).map(|e| e.sum_form / shots as f64),
            ScanQuantity::CrbGauss => fisher_gaussian(&rho, Quorum::Mub(&set), &basis, shots)
                .and_then(|f| crb_trace(&f))
                .map(|c| c.trace_inverse),
            ScanQuantity::CrbMultinomial => fisher_multinomial(&rho, Quorum::Mub(&set), &basis, shots)
                .and_then(|f| crb_trace(&f))
                .map(|c| c.trace_inverse),
            ScanQuantity::OrthoError => ortho_quorum_error(&rho, &basis, shots).map(|e| e.sum_form),
        };
        match value {
            Ok(v) => rows.push((i, v)),
            Err(Error::OutsideQuorumDomain { .. }) | Err(Error::BoundaryState { .. }) => skipped += 1,
            Err(e) => return Err(e),
        }
    }
    if rows.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "every rotated state was outside the domain of {quantity}"
        )));
    }
    let values: Vec<f64> = rows.iter().map(|r| r.1).collect();
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mean = pairwise_sum(&values) / values.len() as f64;
    Ok(ScanResult {
        quantity,
        dim,
        purity_weight,
        rows,
        min,
        max,
        mean,
        relative_spread: (max - min) / mean,
        skipped,
    })
}

/// One shot count of a saturation sweep. All error columns are scaled by `N`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub shots: u64,
    pub n_mean_d_ml: f64,
    pub n_std_error_ml: f64,
    pub n_crb_multinomial: f64,
    /// `n_mean_d_ml / n_crb_multinomial`.
    pub ratio: f64,
    pub n_mean_d_direct: f64,
    pub n_std_error_direct: f64,
    /// Total error `p - Tr ρ²`, which the direct row should match.
    pub bz_error: f64,
    pub ml_nonconverged: usize,
}

impl SweepRow {
    pub const CSV_HEADER: &'static str =
        "N,n_mean_d_ml,n_std_error_ml,n_crb_multinomial,ratio,n_mean_d_direct,n_std_error_direct,bz_error,ml_nonconverged";

    pub fn to_csv(&self) -> String {
        use crate::io::format_f64 as f;
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.shots,
            f(self.n_mean_d_ml),
            f(self.n_std_error_ml),
            f(self.n_crb_multinomial),
            f(self.ratio),
            f(self.n_mean_d_direct),
            f(self.n_std_error_direct),
            f(self.bz_error),
            self.ml_nonconverged
        )
    }
}

/// ML and direct-inversion MUB trials at every `N` in `shot_list`, against the
/// multinomial Cramér–Rao bound. Both estimators see the same simulated
/// records at a given `N`.
pub fn crb_saturation_sweep(
    dim: usize,
    state: &DensityMatrix,
    shot_list: &[u64],
    trials: usize,
    base_seed: u64,
    jobs: Option<usize>,
) -> Result<Vec<SweepRow>> {
    if shot_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter(
            "shot list must be strictly ascending".into(),
        ));
    }
    let set = build_mub(dim)?;
    let basis = gell_mann_basis(dim)?;
    let bz = bz_total_error(state, &set)?.closed_form;
    shot_list
        .iter()
        .enumerate()
        .map(|(i, &shots)| {
            let crb = crb_trace(&fisher_multinomial(state, Quorum::Mub(&set), &basis, shots)?)?;
            let mut config = ExperimentConfig {
                dim,
                scheme: Scheme::Mub,
                estimator: EstimatorKind::Ml,
                shots,
                trials,
                state: StateSpec::Fixed(state.clone()),
                base_seed: derive_seed(base_seed, i as u64),
                exclude_nonconverged: false,
                ml: MlOptions::default(),
            };
            let ml = run_trials_detailed(&config, jobs)?.summary;
            config.estimator = EstimatorKind::Direct;
            let direct = run_trials_detailed(&config, jobs)?.summary;
            let n = shots as f64;
            Ok(SweepRow {
                shots,
                n_mean_d_ml: n * ml.mean_d,
                n_std_error_ml: n * ml.std_error_of_mean,
                n_crb_multinomial: n * crb.trace_inverse,
                ratio: ml.mean_d / crb.trace_inverse,
                n_mean_d_direct: n * direct.mean_d,
                n_std_error_direct: n * direct.std_error_of_mean,
                bz_error: bz,
                ml_nonconverged: ml.nonconverged_count,
            })
        })
        .collect()
}
