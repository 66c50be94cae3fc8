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

//! Quantum state estimation error laboratory.
//!
//! `tomoinfo` reconstructs qudit density matrices from simulated measurements of
//! complete sets of mutually unbiased bases (MUB) and of an "orthogonal quorum"
//! of two-outcome tests, and compares the resulting Hilbert–Schmidt errors with
//! closed-form predictions:
//!
//! * the total lack of information `E = Σ p(1-p) = p - Tr ρ²` of a complete MUB
//!   set, which equals `N` times the mean error of direct linear inversion;
//! * the Cramér–Rao optimum `Tr F⁻¹` from the Fisher information matrix, in the
//!   Gaussian approximation and exactly for the multinomial model;
//! * the closed forms for the orthogonal quorum and for measuring in the
//!   eigenbasis of the state.
//!
//! The modules map onto the pipeline:
//!
//! | module          | contents                                                  |
//! |-----------------|-----------------------------------------------------------|
//! | [`quantum`]     | density matrices, Gell-Mann basis, Bloch coordinates      |
//! | [`mub`]         | MUB construction, MUB weights, total error                |
//! | [`measurement`] | outcome probabilities and seeded count sampling           |
//! | [`estimators`]  | direct inversion, physical projection, maximum likelihood |
//! | [`fisher`]      | Fisher matrices, `Tr F⁻¹`, error ellipsoid, closed forms  |
//! | [`montecarlo`]  | trial harness, invariance scans, saturation sweeps        |
//! | [`cli`]         | the `tomoinfo` command line                               |
//!
//! Every random quantity is derived from a `u64` seed through [`rng`], so runs
//! are reproducible bit for bit, independent of thread count.

pub mod cli;
pub mod error;
pub mod estimators;
pub mod fisher;
pub mod io;
pub mod measurement;
pub mod montecarlo;
pub mod mub;
pub mod quantum;
pub mod rng;

pub use error::{Error, Result};
pub use estimators::{
    direct_inversion, linear_start, log_likelihood, ml_estimate, ortho_inversion, project_to_physical,
    MlOptions, MlResult,
};
pub use fisher::{
    crb_trace, eigenbasis_error, error_ellipsoid, fisher_gaussian, fisher_multinomial, fisher_p3_closed_form,
    log_likelihood_gaussian, ortho_quorum_error, CrbTrace, ErrorEllipsoid, FisherForm, FisherMatrix,
};
pub use measurement::{
    eigenbasis_probabilities, mub_probabilities, ortho_quorum, ortho_quorum_probabilities, sample_counts,
    MeasurementRecord, OrthoQuorum, Povm, Quorum, Scheme,
};
pub use montecarlo::{
    crb_saturation_sweep, invariance_scan, run_trials, run_trials_detailed, EstimatorKind, ExperimentConfig,
    ScanQuantity, ScanResult, StateSpec, SummaryStats, SweepRow, TrialRow,
};
pub use mub::{
    build_mub, bz_total_error, invariant_information, mco_weights, state_from_weights,
    verify_complementarity, BzError, McoWeights, MubSet,
};
pub use quantum::{
    bloch_coords, gell_mann_basis, hs_distance, purity, random_state, random_unitary, state_from_bloch,
    BlochVector, CMatrix, DensityMatrix, HermitianBasis, Operator, RawState, StateKind, C64,
};
