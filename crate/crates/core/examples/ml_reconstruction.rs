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

//! Maximum-likelihood reconstruction by the diluted fixed-point iteration,
//! compared with direct inversion near the boundary of the state space.
//!
//!     cargo run --example ml_reconstruction

use tomoinfo::measurement::simulate_mub;
use tomoinfo::{
    build_mub, direct_inversion, hs_distance, linear_start, ml_estimate, random_state, MlOptions, Quorum,
    StateKind,
};

fn main() -> tomoinfo::Result<()> {
    let p = 3;
    let set = build_mub(p)?;
    let rho = random_state(p, StateKind::PurityTarget(0.97), 6)?;

    let rec = simulate_mub(&rho, &set, 50, 12)?;
    let raw = direct_inversion(&rec, &set)?;
    let opts = MlOptions {
        record_trace: true,
        ..MlOptions::default()
    };
    let from_mixed = ml_estimate(&rec, Quorum::Mub(&set), &opts)?;
    println!(
        "from I/3: {} iterations, converged = {}, log L = {:.6}",
        from_mixed.iterations, from_mixed.converged, from_mixed.log_likelihood
    );
    println!(
        "first log L values {:.4?}",
        &from_mixed.trace[..5.min(from_mixed.trace.len())]
    );

    let warm = MlOptions {
        initial: Some(linear_start(&raw)),
        ..MlOptions::default()
    };
    let from_linear = ml_estimate(&rec, Quorum::Mub(&set), &warm)?;
    println!("from the linear estimate: {} iterations", from_linear.iterations);

    println!("raw estimate min eigenvalue {:+.4}", raw.min_eigenvalue());
    println!("d(direct) = {:.5}", hs_distance(&raw, &rho)?);
    println!("d(ML)     = {:.5}", hs_distance(&from_linear.state, &rho)?);
    Ok(())
}
