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

//! Complete sets of mutually unbiased bases in prime dimensions, and the MUB
//! weights `w = p - 1/(p+1)` that parametrize a state.
//!
//!     cargo run --example mub_complementarity

use tomoinfo::{
    build_mub, mco_weights, random_state, state_from_weights, verify_complementarity, Operator, StateKind,
};

fn main() -> tomoinfo::Result<()> {
    for p in [2, 3, 5, 7] {
        let set = build_mub(p)?;
        let report = verify_complementarity(&set);
        println!(
            "p = {p}: {} bases, {} projectors, max deviation {:.2e}, pass = {}",
            set.bases().len(),
            set.bases().len() * p,
            report.max_deviation,
            report.pass
        );
    }

    let set = build_mub(3)?;
    let rho = random_state(3, StateKind::HaarPure, 1)?;
    let w = mco_weights(&rho, &set)?;
    for (alpha, row) in w.weights.iter().enumerate() {
        let sum: f64 = row.iter().sum();
        println!("basis {alpha}: w = {row:+.4?} (Σ = {sum:.4})");
    }
    let back = state_from_weights(&w, &set)?;
    println!(
        "reconstruction error {:.2e}",
        (back.matrix() - rho.matrix()).camax()
    );

    // Composite dimensions have no construction here.
    println!("p = 4: {}", build_mub(4).unwrap_err());
    Ok(())
}
