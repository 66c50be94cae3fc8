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

//! The central comparison in one table: predicted total error `E/N`, the
//! Cramér–Rao optimum `Tr F⁻¹`, and the simulated mean error of direct inversion.
//!
//!     cargo run --release --example error_table

use tomoinfo::{
    build_mub, bz_total_error, crb_trace, fisher_gaussian, fisher_multinomial, gell_mann_basis, run_trials,
    EstimatorKind, ExperimentConfig, MlOptions, Quorum, Scheme, StateKind, StateSpec,
};

fn main() -> tomoinfo::Result<()> {
    let n = 100;
    println!(
        "{:>3} {:>8} {:>10} {:>12} {:>12} {:>14}",
        "p", "λ", "E/N", "Tr F⁻¹ gauss", "Tr F⁻¹ multi", "<d> (± s.e.)"
    );
    for p in [2, 3, 5] {
        let set = build_mub(p)?;
        let basis = gell_mann_basis(p)?;
        for lambda in [0.0, 0.5] {
            let state = StateSpec::Random {
                kind: StateKind::PurityTarget(lambda),
                seed: 1,
            };
            let rho = state.resolve(p)?;
            let config = ExperimentConfig {
                dim: p,
                scheme: Scheme::Mub,
                estimator: EstimatorKind::Direct,
                shots: n,
                trials: 20_000,
                state,
                base_seed: 7,
                exclude_nonconverged: false,
                ml: MlOptions::default(),
            };
            let s = run_trials(&config)?;
            println!(
                "{p:>3} {lambda:>8.2} {:>10.6} {:>12.6} {:>12.6} {:>9.6} ± {:.6}",
                bz_total_error(&rho, &set)?.closed_form / n as f64,
                crb_trace(&fisher_gaussian(&rho, Quorum::Mub(&set), &basis, n)?)?.trace_inverse,
                crb_trace(&fisher_multinomial(&rho, Quorum::Mub(&set), &basis, n)?)?.trace_inverse,
                s.mean_d,
                s.std_error_of_mean
            );
        }
    }
    Ok(())
}
