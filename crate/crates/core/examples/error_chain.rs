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

//! Three qutrit error levels side by side: measuring in the eigenbasis of the
//! state, the Cramér–Rao optimum of a MUB set, and direct MUB inversion.
//!
//!     cargo run --example error_chain

use tomoinfo::{
    build_mub, bz_total_error, eigenbasis_error, fisher_p3_closed_form, purity, random_state, StateKind,
};

fn main() -> tomoinfo::Result<()> {
    let set = build_mub(3)?;
    println!("{:>8} {:>10} {:>10} {:>10}", "Tr ρ²", "eigen", "optimum", "E");
    for (i, lambda) in [0.0, 0.3, 0.6, 0.9].into_iter().enumerate() {
        let rho = random_state(3, StateKind::PurityTarget(lambda), i as u64)?;
        println!(
            "{:>8.4} {:>10.5} {:>10.5} {:>10.5}",
            purity(&rho),
            eigenbasis_error(&rho),
            fisher_p3_closed_form(&rho, &set, 1)?,
            bz_total_error(&rho, &set)?.closed_form
        );
    }
    Ok(())
}
