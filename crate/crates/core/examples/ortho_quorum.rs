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

//! The orthogonal quorum: one yes/no test per Gell-Mann generator. Its
//! optimal error depends only on purity, and Monte Carlo inversion reaches it.
//!
//!     cargo run --release --example ortho_quorum

use tomoinfo::{
    gell_mann_basis, ortho_quorum, ortho_quorum_error, purity, random_state, run_trials, EstimatorKind,
    ExperimentConfig, MlOptions, Scheme, StateKind, StateSpec,
};

fn main() -> tomoinfo::Result<()> {
    for p in [2, 3, 5] {
        let q = ortho_quorum(&gell_mann_basis(p)?);
        let negative = q.positivity().iter().filter(|ok| !**ok).count();
        println!(
            "p = {p}: {} elements, {negative} not positive semidefinite",
            q.elements().len()
        );
    }

    let basis = gell_mann_basis(2)?;
    let rho = random_state(2, StateKind::PurityTarget(0.5), 41)?;
    let n = 100;
    let e = ortho_quorum_error(&rho, &basis, n)?;
    println!(
        "Tr ρ² = {}, N·<d>_opt = {:.6} (sum form {:.6})",
        purity(&rho),
        n as f64 * e.closed_form,
        n as f64 * e.sum_form
    );

    let config = ExperimentConfig {
        dim: 2,
        scheme: Scheme::Ortho,
        estimator: EstimatorKind::OrthoInv,
        shots: n,
        trials: 100_000,
        state: StateSpec::Fixed(rho),
        base_seed: 99,
        exclude_nonconverged: false,
        ml: MlOptions::default(),
    };
    let s = run_trials(&config)?;
    println!(
        "Monte Carlo N·<d> = {:.4} ± {:.4} over {} trials",
        n as f64 * s.mean_d,
        n as f64 * s.std_error_of_mean,
        s.trials_used
    );
    Ok(())
}
