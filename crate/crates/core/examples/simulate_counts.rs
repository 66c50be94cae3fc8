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

//! Seeded measurement simulation for the three schemes, and the JSON record
//! the command line reads.
//!
//!     cargo run --example simulate_counts

use tomoinfo::io::to_json_string;
use tomoinfo::measurement::{simulate_eigen, simulate_mub, simulate_ortho};
use tomoinfo::{
    build_mub, gell_mann_basis, mub_probabilities, ortho_quorum_probabilities, random_state, StateKind,
};

fn main() -> tomoinfo::Result<()> {
    let p = 3;
    let rho = random_state(p, StateKind::PurityTarget(0.5), 11)?;
    let set = build_mub(p)?;
    let basis = gell_mann_basis(p)?;

    println!("MUB probabilities:");
    for row in mub_probabilities(&rho, &set)? {
        println!("  {row:.4?}");
    }
    let rec = simulate_mub(&rho, &set, 1000, 5)?;
    println!("{}", to_json_string(&rec)?);
    // Same seed, same counts.
    assert_eq!(rec, simulate_mub(&rho, &set, 1000, 5)?);

    println!(
        "orthogonal-quorum yes probabilities {:.4?}",
        ortho_quorum_probabilities(&rho, &basis)?
    );
    println!("{}", to_json_string(&simulate_ortho(&rho, &basis, 1000, 5)?)?);
    println!("{}", to_json_string(&simulate_eigen(&rho, 1000, 5)?)?);
    Ok(())
}
