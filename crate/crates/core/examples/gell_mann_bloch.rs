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

//! Generalized Gell-Mann basis, Bloch coordinates and the Hilbert–Schmidt
//! distance as a sum of squared coordinate errors.
//!
//!     cargo run --example gell_mann_bloch

use tomoinfo::{
    bloch_coords, gell_mann_basis, hs_distance, random_state, state_from_bloch, Operator, StateKind,
};

fn main() -> tomoinfo::Result<()> {
    let p = 3;
    let basis = gell_mann_basis(p)?;
    println!("p = {p}: {} traceless Hermitian generators", basis.len());
    let gram = basis.gram();
    println!(
        "max |Tr Γ_k Γ_l - δ_kl| = {:.2e}",
        (gram - nalgebra::DMatrix::identity(basis.len(), basis.len())).amax()
    );

    let rho = random_state(p, StateKind::PurityTarget(0.6), 7)?;
    let sigma = random_state(p, StateKind::HsMixed, 8)?;
    let a = bloch_coords(&rho, &basis)?;
    let b = bloch_coords(&sigma, &basis)?;
    println!(
        "a(ρ) = {:?}",
        a.coords.iter().map(|x| format!("{x:+.4}")).collect::<Vec<_>>()
    );

    let gap: f64 = a.coords.iter().zip(&b.coords).map(|(x, y)| (x - y).powi(2)).sum();
    println!("Tr(ρ-σ)² = {:.12}", hs_distance(&rho, &sigma)?);
    println!("Σ Δa²    = {gap:.12}");

    let back = state_from_bloch(&a, &basis)?;
    println!("round trip error {:.2e}", (back.matrix() - rho.matrix()).camax());
    Ok(())
}
