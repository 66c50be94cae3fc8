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

//! ML and direct inversion against the multinomial Cramér–Rao bound as the
//! number of particles grows.
//!
//!     cargo run --release --example crb_sweep

use tomoinfo::{crb_saturation_sweep, random_state, StateKind, SweepRow};

fn main() -> tomoinfo::Result<()> {
    let rho = random_state(2, StateKind::PurityTarget(0.5), 123)?;
    let rows = crb_saturation_sweep(2, &rho, &[30, 100, 1_000, 10_000], 2000, 321, None)?;
    println!("{}", SweepRow::CSV_HEADER);
    for r in &rows {
        println!("{}", r.to_csv());
    }
    Ok(())
}
