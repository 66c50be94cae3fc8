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

//! Fisher information of a MUB measurement and the Cramér–Rao optimum
//! `Tr F⁻¹`, against the total error `E/N` of direct inversion.
//!
//!     cargo run --example fisher_bound

use tomoinfo::{
    build_mub, bz_total_error, crb_trace, fisher_gaussian, fisher_multinomial, fisher_p3_closed_form,
    gell_mann_basis, random_state, DensityMatrix, Quorum, StateKind,
};

fn main() -> tomoinfo::Result<()> {
    let n = 1000;
    let set = build_mub(3)?;
    let basis = gell_mann_basis(3)?;
    let states = [
        ("I/3", DensityMatrix::maximally_mixed(3)?),
        ("mixed", random_state(3, StateKind::HsMixed, 4)?),
        ("λ = 0.9", random_state(3, StateKind::PurityTarget(0.9), 4)?),
    ];
    println!(
        "{:>8} {:>12} {:>12} {:>12} {:>12}",
        "state", "E/N", "Gaussian", "closed form", "multinomial"
    );
    for (name, rho) in &states {
        let gauss = crb_trace(&fisher_gaussian(rho, Quorum::Mub(&set), &basis, n)?)?;
        let multi = crb_trace(&fisher_multinomial(rho, Quorum::Mub(&set), &basis, n)?)?;
        println!(
            "{name:>8} {:>12.6e} {:>12.6e} {:>12.6e} {:>12.6e}",
            bz_total_error(rho, &set)?.closed_form / n as f64,
            gauss.trace_inverse,
            fisher_p3_closed_form(rho, &set, n)?,
            multi.trace_inverse
        );
    }
    // The exact multinomial bound of a complete MUB set coincides with E/N:
    // the frequencies determine the state one to one.
    Ok(())
}
