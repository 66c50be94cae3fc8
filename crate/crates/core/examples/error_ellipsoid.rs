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

//! Principal axes of the likelihood ellipsoid and the observables they define.
//!
//!     cargo run --example error_ellipsoid

use tomoinfo::{
    build_mub, error_ellipsoid, fisher_gaussian, gell_mann_basis, random_state, Quorum, StateKind,
};

fn main() -> tomoinfo::Result<()> {
    let set = build_mub(3)?;
    let basis = gell_mann_basis(3)?;
    let rho = random_state(3, StateKind::PurityTarget(0.85), 21)?;
    let f = fisher_gaussian(&rho, Quorum::Mub(&set), &basis, 500)?;
    let ell = error_ellipsoid(&f)?;
    println!("{:>4} {:>14} {:>14} {:>14}", "k", "λ_k", "1/λ_k", "1/√λ_k");
    for k in 0..ell.eigenvalues.len() {
        println!(
            "{k:>4} {:>14.6e} {:>14.6e} {:>14.6e}",
            ell.eigenvalues[k], ell.half_axis_scales[k], ell.geometric_half_axes[k]
        );
    }
    println!("Σ 1/λ_k = {:.6e}", ell.half_axis_scales.iter().sum::<f64>());
    println!("anisotropy λ_max/λ_min = {:.3}", ell.anisotropy());

    let best = &ell.principal_observables(&basis)?[0];
    println!("best-determined observable:\n{best:.3}");
    Ok(())
}
