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

//! Complete sets of mutually unbiased bases (mutually complementary
//! observables), the weight decomposition of a state over their projectors,
//! and the total-error / invariant-information pair.

use std::f64::consts::PI;

use nalgebra::DVector;

use crate::error::{check_dim, Error, Result};
use crate::quantum::{hermitize, purity, trace_product, CMatrix, DensityMatrix, Operator, RawState, C64};

/// Dimensions for which [`build_mub`] is implemented.
pub const SUPPORTED_PRIMES: [usize; 4] = [2, 3, 5, 7];

/// Threshold used by [`verify_complementarity`].
pub const COMPLEMENTARITY_TOL: f64 = 1e-10;

/// `p+1` orthonormal bases of a `p`-dimensional space, stored as rank-1
/// projectors `Π_{αj}` indexed `[α][j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MubSet {
    dim: usize,
    bases: Vec<Vec<CMatrix>>,
}

impl MubSet {
    /// Accepts any `(p+1) × p` array of `p × p` matrices. Complementarity is
    /// not checked here; see [`verify_complementarity`].
    pub fn from_projectors(bases: Vec<Vec<CMatrix>>) -> Result<Self> {
        let p = bases.len().checked_sub(1).ok_or(Error::InvalidDimension(0))?;
        if p < 2 {
            return Err(Error::InvalidDimension(p));
        }
        for (alpha, basis) in bases.iter().enumerate() {
            if basis.len() != p {
                return Err(Error::InvalidParameter(format!(
                    "basis {alpha} has {} projectors, expected {p}",
                    basis.len()
                )));
            }
            for proj in basis {
                if proj.nrows() != p || proj.ncols() != p {
                    return Err(Error::DimensionMismatch {
                        expected: p,
                        found: proj.nrows(),
                    });
                }
            }
        }
        Ok(Self { dim: p, bases })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bases(&self) -> &[Vec<CMatrix>] {
        &self.bases
    }

    pub fn projector(&self, alpha: usize, j: usize) -> &CMatrix {
        &self.bases[alpha][j]
    }

    /// Every projector conjugated: `Π → U Π U†`.
    pub fn rotated(&self, u: &CMatrix) -> Result<Self> {
        check_dim(self.dim, u.nrows())?;
        let ud = u.adjoint();
        let bases = self
            .bases
            .iter()
            .map(|b| b.iter().map(|pi| hermitize(&(u * pi * &ud))).collect())
            .collect();
        Ok(Self { dim: self.dim, bases })
    }

    /// Raw `Tr{ρ Π_{αj}}`, unclamped.
    pub fn overlaps(&self, rho: &impl Operator) -> Result<Vec<Vec<f64>>> {
        check_dim(self.dim, rho.dim())?;
        Ok(self
            .bases
            .iter()
            .map(|b| b.iter().map(|pi| trace_product(rho.matrix(), pi).re).collect())
            .collect())
    }
}

/// Computational basis followed by the eigenbases of `X Z^a`, `a = 0..p-1`.
///
/// With `X|k⟩ = |k+1⟩` and `Z|k⟩ = ω^k|k⟩`, the eigenvector of `X Z^a` with
/// eigenvalue `λ` has components `ψ_k = λ^{-k} ω^{a k(k-1)/2} / √p`, where
/// `λ^p = ω^{a p(p-1)/2}`. For `p = 2` the bases are those of `Z`, `X`, `Y`.
pub fn build_mub(p: usize) -> Result<MubSet> {
    if !SUPPORTED_PRIMES.contains(&p) {
        return Err(Error::UnsupportedDimension(p));
    }
    let pf = p as f64;
    let norm = 1.0 / pf.sqrt();
    let mut bases = Vec::with_capacity(p + 1);
    bases.push(
        (0..p)
            .map(|j| {
                let mut m = CMatrix::zeros(p, p);
                m[(j, j)] = C64::new(1.0, 0.0);
                m
            })
            .collect(),
    );
    for a in 0..p {
        let af = a as f64;
        let basis = (0..p)
            .map(|m| {
                let lambda_phase = PI * af * (pf - 1.0) / pf - 2.0 * PI * m as f64 / pf;
                let psi = DVector::from_fn(p, |k, _| {
                    let kf = k as f64;
                    let phase = -kf * lambda_phase + PI * af * kf * (kf - 1.0) / pf;
                    C64::from_polar(norm, phase)
                });
                hermitize(&(&psi * psi.adjoint()))
            })
            .collect();
        bases.push(basis);
    }
    MubSet::from_projectors(bases)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplementarityReport {
    pub max_deviation: f64,
    pub pass: bool,
}

/// Largest deviation of `Tr{Π_{αj} Π_{βk}}` from `δ_αβ δ_jk + (1-δ_αβ)/p`.
pub fn verify_complementarity(set: &MubSet) -> ComplementarityReport {
    let p = set.dim;
    let inv_p = 1.0 / p as f64;
    let mut max_deviation: f64 = 0.0;
    for (alpha, ba) in set.bases.iter().enumerate() {
        for (j, pa) in ba.iter().enumerate() {
            for (beta, bb) in set.bases.iter().enumerate().skip(alpha) {
                for (k, pb) in bb.iter().enumerate() {
                    if alpha == beta && k < j {
                        continue;
                    }
                    let want = match (alpha == beta, j == k) {
                        (true, true) => 1.0,
                        (true, false) => 0.0,
                        (false, _) => inv_p,
                    };
                    let got = trace_product(pa, pb);
                    max_deviation = max_deviation.max((got - C64::new(want, 0.0)).norm());
                }
            }
        }
    }
    ComplementarityReport {
        max_deviation,
        pass: max_deviation <= COMPLEMENTARITY_TOL,
    }
}

/// Coefficients `w_{αj}` of `ρ = Σ w_{αj} Π_{αj}`.
#[derive(Debug, Clone, PartialEq)]
pub struct McoWeights {
    pub dim: usize,
    pub weights: Vec<Vec<f64>>,
}

/// `w_{αj} = Tr{ρ Π_{αj}} - 1/(p+1)`.
pub fn mco_weights(rho: &impl Operator, set: &MubSet) -> Result<McoWeights> {
    let shift = 1.0 / (set.dim as f64 + 1.0);
    let weights = set
        .overlaps(rho)?
        .into_iter()
        .map(|row| row.into_iter().map(|x| x - shift).collect())
        .collect();
    Ok(McoWeights {
        dim: set.dim,
        weights,
    })
}

/// `Σ w_{αj} Π_{αj}`. Unit trace holds when each row of weights sums to
/// `1/(p+1)`; positivity is not enforced.
pub fn state_from_weights(w: &McoWeights, set: &MubSet) -> Result<RawState> {
    check_dim(set.dim, w.dim)?;
    check_dim(set.bases.len(), w.weights.len())?;
    let p = set.dim;
    let mut mat = CMatrix::zeros(p, p);
    for (row, basis) in w.weights.iter().zip(&set.bases) {
        check_dim(p, row.len())?;
        for (wj, pi) in row.iter().zip(basis) {
            mat += pi.scale(*wj);
        }
    }
    Ok(RawState::from_parts(mat))
}

/// Total lack of information of a complete MUB measurement, per particle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BzError {
    /// `Σ_{αj} p_{αj}(1 - p_{αj})`.
    pub sum_form: f64,
    /// `p - Tr ρ²`.
    pub closed_form: f64,
}

pub fn bz_total_error(rho: &DensityMatrix, set: &MubSet) -> Result<BzError> {
    let sum_form = set.overlaps(rho)?.iter().flatten().map(|q| q * (1.0 - q)).sum();
    Ok(BzError {
        sum_form,
        closed_form: set.dim as f64 - purity(rho),
    })
}

/// `(Tr ρ² - 1/p)/(1 - 1/p)`: 0 for `I/p`, 1 for pure states.
pub fn invariant_information(rho: &DensityMatrix) -> f64 {
    let inv_p = 1.0 / rho.dim() as f64;
    (purity(rho) - inv_p) / (1.0 - inv_p)
}
