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

//! The total error `E = Σ p(1-p)` of a complete MUB set depends on the state
//! only through its purity: rotating the state or the bases leaves it fixed.
//!
//!     cargo run --example total_error

use tomoinfo::{
    build_mub, bz_total_error, invariant_information, purity, random_state, random_unitary, StateKind,
};

fn main() -> tomoinfo::Result<()> {
    let p = 5;
    let set = build_mub(p)?;
    let rho = random_state(p, StateKind::PurityTarget(0.8), 2)?;
    let e = bz_total_error(&rho, &set)?;
    println!("Tr ρ² = {:.6}", purity(&rho));
    println!("E (sum)    = {:.15}", e.sum_form);
    println!("p - Tr ρ²  = {:.15}", e.closed_form);
    println!(
        "normalized invariant information = {:.6}",
        invariant_information(&rho)
    );

    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..50 {
        let u = random_unitary(p, 100 + i)?;
        for value in [
            bz_total_error(&rho.conjugate_by(&u)?, &set)?.sum_form,
            bz_total_error(&rho, &set.rotated(&u)?)?.sum_form,
        ] {
            lo = lo.min(value);
            hi = hi.max(value);
        }
    }
    println!("spread over 100 rotations: {:.2e}", hi - lo);
    Ok(())
}
