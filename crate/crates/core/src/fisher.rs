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

//! Fisher information of a measurement quorum in the Bloch coordinates `a_k`,
//! the Cramér–Rao optimum `Tr F⁻¹`, the error ellipsoid, and the closed-form
//! errors of the qutrit MUB, orthogonal-quorum and eigenbasis measurements.
//!
//! Two Fisher matrices are provided. The Gaussian form sums
//! `N² Tr{Γ_k E} Tr{Γ_l E} / σ²_E` over the registered effects `E` with
//! `σ²_E = N p_E (1 - p_E)`; for a MUB set that is every projector, for the
//! orthogonal quorum only the "yes" elements. The multinomial form is the
//! exact Fisher information of independent multinomial observables,
//! `N Σ ∂p ∂p / p` over every outcome. For two-outcome observables the two
//! agree when only one outcome is registered; a qubit MUB set registers both
//! outcomes of each basis, so there the Gaussian form is twice the multinomial.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::measurement::{ortho_quorum_probabilities, Quorum};
use crate::mub::MubSet;
use crate::quantum::{purity, trace_product, CMatrix, DensityMatrix, HermitianBasis, Operator};

/// Probabilities must lie in `(δ, 1-δ)` for the Fisher matrix to be formed.
pub const INTERIOR_DELTA: f64 = 1e-9;
/// Condition numbers above this mark `Tr F⁻¹` as unreliable.
pub const MAX_RELIABLE_CONDITION: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FisherForm {
    Gaussian,
    Multinomial,
}

impl fmt::Display for FisherForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FisherForm::Gaussian => "gaussian",
            FisherForm::Multinomial => "multinomial",
        })
    }
}

impl FromStr for FisherForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gaussian" => Ok(FisherForm::Gaussian),
            "multinomial" => Ok(FisherForm::Multinomial),
            other => Err(Error::InvalidParameter(format!("unknown Fisher form '{other}'"))),
        }
    }
}

/// Real symmetric `(p²-1) × (p²-1)` Fisher matrix in Gell-Mann coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct FisherMatrix {
    pub dim: usize,
    pub shots: u64,
    pub form: FisherForm,
    pub entries: DMatrix<f64>,
}

/// `-N² Σ (f - p)² / σ²` with `σ² = N p (1-p)`, over matching layouts.
pub fn log_likelihood_gaussian(
    frequencies: &[Vec<f64>],
    probabilities: &[Vec<f64>],
    shots: u64,
) -> Result<f64> {
    check_dim(probabilities.len(), frequencies.len())?;
    let n = shots as f64;
    let mut acc = 0.0;
    for (obs, (fs, ps)) in frequencies.iter().zip(probabilities).enumerate() {
        check_dim(ps.len(), fs.len())?;
        for (outcome, (&f, &q)) in fs.iter().zip(ps).enumerate() {
            if !(q > 0.0 && q < 1.0) {
                return Err(Error::BoundaryState {
                    observable: obs,
                    outcome,
                    probability: q,
                });
            }
            let var = n * q * (1.0 - q);
            acc += (f - q).powi(2) / var;
        }
    }
    Ok(-n * n * acc)
}

fn interior(q: f64, observable: usize, outcome: usize) -> Result<f64> {
    if q > INTERIOR_DELTA && q < 1.0 - INTERIOR_DELTA {
        Ok(q)
    } else {
        Err(Error::BoundaryState {
            observable,
            outcome,
            probability: q,
        })
    }
}

fn gradient(effect: &CMatrix, basis: &HermitianBasis) -> DVector<f64> {
    DVector::from_iterator(
        basis.len(),
        basis.elements().iter().map(|g| trace_product(g, effect).re),
    )
}

/// Gaussian-approximation Fisher matrix
/// `F_kl = N² Σ Tr{Γ_k E} Tr{Γ_l E} / σ²_E` over the registered effects.
pub fn fisher_gaussian(
    rho: &DensityMatrix,
    quorum: Quorum<'_>,
    basis: &HermitianBasis,
    shots: u64,
) -> Result<FisherMatrix> {
    check_dim(quorum.dim(), rho.dim())?;
    check_dim(quorum.dim(), basis.dim())?;
    let n = shots as f64;
    let mut f = DMatrix::zeros(basis.len(), basis.len());
    for (obs, outcome, effect) in quorum.registered_effects() {
        let q = interior(trace_product(rho.matrix(), effect).re, obs, outcome)?;
        let var = n * q * (1.0 - q);
        let g = gradient(effect, basis);
        f += (&g * g.transpose()).scale(n * n / var);
    }
    Ok(FisherMatrix {
        dim: basis.dim(),
        shots,
        form: FisherForm::Gaussian,
        entries: f,
    })
}

/// Exact Fisher matrix of independent multinomial observables,
/// `F_kl = N Σ_obs Σ_outcomes ∂_k p ∂_l p / p` with `∂_k p = Tr{Γ_k E}`.
pub fn fisher_multinomial(
    rho: &DensityMatrix,
    quorum: Quorum<'_>,
    basis: &HermitianBasis,
    shots: u64,
) -> Result<FisherMatrix> {
    check_dim(quorum.dim(), rho.dim())?;
    check_dim(quorum.dim(), basis.dim())?;
    let n = shots as f64;
    let povm = quorum.povm();
    let mut f = DMatrix::zeros(basis.len(), basis.len());
    for (obs, effects) in povm.observables().iter().enumerate() {
        for (outcome, effect) in effects.iter().enumerate() {
            let q = interior(trace_product(rho.matrix(), effect).re, obs, outcome)?;
            let g = gradient(effect, basis);
            f += (&g * g.transpose()).scale(n / q);
        }
    }
    Ok(FisherMatrix {
        dim: basis.dim(),
        shots,
        form: FisherForm::Multinomial,
        entries: f,
    })
}

/// Either form, by name.
pub fn fisher(
    rho: &DensityMatrix,
    quorum: Quorum<'_>,
    basis: &HermitianBasis,
    shots: u64,
    form: FisherForm,
) -> Result<FisherMatrix> {
    match form {
        FisherForm::Gaussian => fisher_gaussian(rho, quorum, basis, shots),
        FisherForm::Multinomial => fisher_multinomial(rho, quorum, basis, shots),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrbTrace {
    /// `Tr F⁻¹`, the optimal mean Hilbert–Schmidt error.
    pub trace_inverse: f64,
    /// `λ_max / λ_min` of `F`.
    pub condition_number: f64,
    /// `condition_number <= MAX_RELIABLE_CONDITION`.
    pub reliable: bool,
}

/// `Tr F⁻¹ = ‖L⁻¹‖²_F` from the Cholesky factor `F = L Lᵀ`.
pub fn crb_trace(f: &FisherMatrix) -> Result<CrbTrace> {
    let n = f.entries.nrows();
    let chol = f.entries.clone().cholesky().ok_or(Error::NotPositiveDefinite)?;
    let l_inv = chol
        .l()
        .solve_lower_triangular(&DMatrix::identity(n, n))
        .ok_or(Error::NotPositiveDefinite)?;
    let trace_inverse = l_inv.iter().map(|x| x * x).sum();
    let eig = f.entries.clone().symmetric_eigenvalues();
    let condition_number = eig.max() / eig.min();
    Ok(CrbTrace {
        trace_inverse,
        condition_number,
        reliable: condition_number.is_finite() && condition_number <= MAX_RELIABLE_CONDITION,
    })
}

/// Principal axes of the likelihood ellipsoid `Σ Δa_k Δa_l F_kl = const`.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorEllipsoid {
    /// Eigenvalues of `F`, descending.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors of `F` as columns, same order.
    pub axes: DMatrix<f64>,
    /// `1/λ_k`; these sum to `Tr F⁻¹`.
    pub half_axis_scales: Vec<f64>,
    /// `1/√λ_k`, the geometric half-axis lengths of the unit level set.
    pub geometric_half_axes: Vec<f64>,
}

impl Serialize for ErrorEllipsoid {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        // Axes go out as a list of unit vectors, one per eigenvalue.
        let axes: Vec<Vec<f64>> = self
            .axes
            .column_iter()
            .map(|c| c.iter().copied().collect())
            .collect();
        let mut st = s.serialize_struct("ErrorEllipsoid", 4)?;
        st.serialize_field("eigenvalues", &self.eigenvalues)?;
        st.serialize_field("axes", &axes)?;
        st.serialize_field("half_axis_scales", &self.half_axis_scales)?;
        st.serialize_field("geometric_half_axes", &self.geometric_half_axes)?;
        st.end()
    }
}

impl ErrorEllipsoid {
    /// `Γ'_k = Σ_l axes[l][k] Γ_l`: the observables whose estimates fluctuate
    /// independently.
    pub fn principal_observables(&self, basis: &HermitianBasis) -> Result<Vec<CMatrix>> {
        check_dim(self.axes.nrows(), basis.len())?;
        let p = basis.dim();
        Ok((0..self.axes.ncols())
            .map(|k| {
                let mut m = CMatrix::zeros(p, p);
                for (l, g) in basis.elements().iter().enumerate() {
                    m += g.scale(self.axes[(l, k)]);
                }
                m
            })
            .collect())
    }

    /// `max/min` of the half-axis scales.
    pub fn anisotropy(&self) -> f64 {
        let max = self.half_axis_scales.iter().cloned().fold(f64::MIN, f64::max);
        let min = self.half_axis_scales.iter().cloned().fold(f64::MAX, f64::min);
        max / min
    }
}

pub fn error_ellipsoid(f: &FisherMatrix) -> Result<ErrorEllipsoid> {
    let eig = f.entries.clone().symmetric_eigen();
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    if eigenvalues.last().is_none_or(|&l| l <= 0.0) {
        return Err(Error::NotPositiveDefinite);
    }
    let axes = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(ErrorEllipsoid {
        half_axis_scales: eigenvalues.iter().map(|l| 1.0 / l).collect(),
        geometric_half_axes: eigenvalues.iter().map(|l| 1.0 / l.sqrt()).collect(),
        eigenvalues,
        axes,
    })
}

/// Closed form of `Tr F⁻¹` for the Gaussian Fisher matrix of a qutrit MUB set:
/// `(1/N²) Σ σ²_{αj} - (1/N²) Σ_α (Σ_j σ⁴_{αj}) / (Σ_j σ²_{αj})`.
pub fn fisher_p3_closed_form(rho: &DensityMatrix, set: &MubSet, shots: u64) -> Result<f64> {
    check_dim(3, set.dim())?;
    check_dim(3, rho.dim())?;
    let n = shots as f64;
    let mut total = 0.0;
    let mut improvement = 0.0;
    for (alpha, row) in set.overlaps(rho)?.iter().enumerate() {
        let mut s2 = 0.0;
        let mut s4 = 0.0;
        for (j, &q) in row.iter().enumerate() {
            let q = interior(q, alpha, j)?;
            let var = n * q * (1.0 - q);
            s2 += var;
            s4 += var * var;
        }
        total += s2;
        improvement += s4 / s2;
    }
    Ok((total - improvement) / (n * n))
}

/// Mean error of optimal estimation from the orthogonal quorum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrthoError {
    /// `(2/N²) Σ σ²_j`, `σ²_j = N p_j (1-p_j)`.
    pub sum_form: f64,
    /// `[(p²-1)/2 + 1/p - Tr ρ²] / N`.
    pub closed_form: f64,
}

pub fn ortho_quorum_error(rho: &DensityMatrix, basis: &HermitianBasis, shots: u64) -> Result<OrthoError> {
    let probs = ortho_quorum_probabilities(rho, basis)?;
    let n = shots as f64;
    let p = rho.dim() as f64;
    let sum_form = 2.0 / (n * n) * probs.iter().map(|q| n * q * (1.0 - q)).sum::<f64>();
    let closed_form = ((p * p - 1.0) / 2.0 + 1.0 / p - purity(rho)) / n;
    Ok(OrthoError {
        sum_form,
        closed_form,
    })
}

/// `N·E_opt = Σ λ_j (1 - λ_j) = 1 - Tr ρ²` for the eigenbasis measurement.
pub fn eigenbasis_error(rho: &DensityMatrix) -> f64 {
    let closed = 1.0 - purity(rho);
    debug_assert!({
        let spectral: f64 = rho.eigenvalues().iter().map(|l| l * (1.0 - l)).sum();
        (spectral - closed).abs() <= 1e-10
    });
    closed
}
