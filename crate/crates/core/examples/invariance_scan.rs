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

//! Which error measures are unitarily invariant? Rotate a fixed state with
//! Haar unitaries and watch the spread.
//!
//!     cargo run --example invariance_scan

use tomoinfo::{invariance_scan, ScanQuantity};

fn main() -> tomoinfo::Result<()> {
    println!(
        "{:>16} {:>3} {:>12} {:>12} {:>12} {:>8}",
        "quantity", "p", "min", "max", "spread", "skipped"
    );
    for (quantity, p) in [
        (ScanQuantity::BzError, 3),
        (ScanQuantity::CrbGauss, 2),
        (ScanQuantity::CrbGauss, 3),
        (ScanQuantity::CrbMultinomial, 3),
        (ScanQuantity::OrthoError, 2),
        (ScanQuantity::OrthoError, 3),
    ] {
        let r = invariance_scan(p, 0.9, 100, quantity, 17, 1)?;
        println!(
            "{:>16} {p:>3} {:>12.6} {:>12.6} {:>12.3e} {:>8}",
            quantity.to_string(),
            r.min,
            r.max,
            r.relative_spread,
            r.skipped
        );
    }
    Ok(())
}
