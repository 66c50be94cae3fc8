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

//! Direct inversion of MUB frequencies. The raw estimate is unbiased but can
//! leave the state space; projection puts it back.
//!
//!     cargo run --example direct_inversion

use tomoinfo::measurement::simulate_mub;
use tomoinfo::{build_mub, direct_inversion, hs_distance, project_to_physical, random_state, StateKind};

fn main() -> tomoinfo::Result<()> {
    let p = 3;
    let set = build_mub(p)?;
    let rho = random_state(p, StateKind::PurityTarget(0.95), 3)?;
    for shots in [20, 200, 2000] {
        let rec = simulate_mub(&rho, &set, shots, 1)?;
        let raw = direct_inversion(&rec, &set)?;
        let proj = project_to_physical(&raw);
        println!(
            "N = {shots:>5}: min eigenvalue {:+.4}, d(raw) = {:.5}, d(projected) = {:.5}",
            raw.min_eigenvalue(),
            hs_distance(&raw, &rho)?,
            hs_distance(&proj, &rho)?
        );
    }
    Ok(())
}
