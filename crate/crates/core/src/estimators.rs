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

//! State reconstruction from count records: direct linear inversion, the
//! nearest physical state, and maximum likelihood.

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::measurement::{MeasurementRecord, Quorum, Scheme};
use crate::mub::{state_from_weights, McoWeights, MubSet};
use crate::quantum::{
    hermitian_eigen, hermitize, state_from_bloch, trace_product, BlochVector, CMatrix, DensityMatrix,
    HermitianBasis, Operator, RawState,
};

/// Smallest probability used inside `log` and `n/p` during likelihood
/// maximization.
pub const PROBABILITY_FLOOR: f64 = 1e-12;

/// `ρ = Σ (f_{αj} - 1/(p+1)) Π_{αj}`. The result may have negative eigenvalues.
pub fn direct_inversion(record: &MeasurementRecord, set: &MubSet) -> Result<RawState> {
    record.expect_scheme(Scheme::Mub)?;
    check_dim(set.dim(), record.dim())?;
    let shift = 1.0 / (set.dim() as f64 + 1.0);
    let weights = record
        .frequencies()
        .into_iter()
        .map(|row| row.into_iter().map(|f| f - shift).collect())
        .collect();
    state_from_weights(
        &McoWeights {
            dim: set.dim(),
            weights,
        },
        set,
    )
}

/// `a_j = √2 (f_j - 1/2)` from the "yes" frequencies, then `I/p + Σ a_j Γ_j`.
pub fn ortho_inversion(record: &MeasurementRecord, basis: &HermitianBasis) -> Result<RawState> {
    record.expect_scheme(Scheme::Ortho)?;
    check_dim(basis.dim(), record.dim())?;
    let coords = record
        .frequencies()
        .iter()
        .map(|f| std::f64::consts::SQRT_2 * (f[0] - 0.5))
        .collect();
    state_from_bloch(
        &BlochVector {
            dim: basis.dim(),
            coords,
        },
        basis,
    )
}

/// Euclidean projection of `values` onto the probability simplex.
fn simplex_projection(values: &[f64]) -> Vec<f64> {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumsum = 0.0;
    let mut theta = 0.0;
    for (k, &v) in sorted.iter().enumerate() {
        cumsum += v;
        let t = (cumsum - 1.0) / (k + 1) as f64;
        if v - t > 0.0 {
            theta = t;
        }
    }
    values.iter().map(|v| (v - theta).max(0.0)).collect()
}

/// Nearest density matrix in Hilbert–Schmidt norm: the spectrum is projected
/// onto the simplex (shift, then clip at zero), eigenvectors are kept.
pub fn project_to_physical(raw: &RawState) -> DensityMatrix {
    let (vals, vecs) = hermitian_eigen(raw.matrix());
    if *vals.last().unwrap() >= 0.0 {
        if let Ok(rho) = DensityMatrix::new(raw.matrix().clone()) {
            return rho;
        }
    }
    let clipped = simplex_projection(&vals);
    let p = raw.dim();
    let mut mat = CMatrix::zeros(p, p);
    for (c, &l) in clipped.iter().enumerate() {
        if l > 0.0 {
            let v = vecs.column(c);
            mat += (v * v.adjoint()).scale(l);
        }
    }
    let tr = mat.trace().re;
    DensityMatrix::new(hermitize(&mat.unscale(tr))).expect("simplex projection yields a state")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MlOptions {
    pub max_iter: usize,
    /// Stop once the relative log-likelihood gain of an accepted step drops below this.
    pub tol: f64,
    /// Initial mixing weight `ε` of the fixed-point update, halved whenever a
    /// step would lower the likelihood.
    pub dilution: f64,
    /// Keep the log-likelihood of every accepted iterate in the result.
    pub record_trace: bool,
    /// Starting point; `I/p` when absent.
    #[serde(skip)]
    pub initial: Option<DensityMatrix>,
}

impl Default for MlOptions {
    fn default() -> Self {
        Self {
            max_iter: 10_000,
            tol: 1e-10,
            dilution: 0.5,
            record_trace: false,
            initial: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MlResult {
    pub state: DensityMatrix,
    pub log_likelihood: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Some outcome with a nonzero count had probability below
    /// [`PROBABILITY_FLOOR`] at some point.
    pub floored: bool,
    /// Log-likelihood after each accepted step (first entry is the start),
    /// filled only with `record_trace`.
    pub trace: Vec<f64>,
}

struct Likelihood<'a> {
    effects: Vec<&'a CMatrix>,
    counts: Vec<f64>,
}

impl Likelihood<'_> {
    fn probabilities(&self, rho: &CMatrix) -> Vec<f64> {
        self.effects.iter().map(|e| trace_product(rho, e).re).collect()
    }

    /// `(Σ n log p, floored)`
    fn eval(&self, probs: &[f64]) -> (f64, bool) {
        let mut floored = false;
        let mut ll = 0.0;
        for (&n, &q) in self.counts.iter().zip(probs) {
            if n > 0.0 {
                if q < PROBABILITY_FLOOR {
                    floored = true;
                }
                ll += n * q.max(PROBABILITY_FLOOR).ln();
            }
        }
        (ll, floored)
    }

    fn r_operator(&self, probs: &[f64], p: usize) -> CMatrix {
        let mut r = CMatrix::zeros(p, p);
        for ((&n, &q), e) in self.counts.iter().zip(probs).zip(&self.effects) {
            if n > 0.0 {
                r += e.scale(n / q.max(PROBABILITY_FLOOR));
            }
        }
        r
    }
}

/// Maximum-likelihood state for a `mub` or `ortho` record.
///
/// Each observable contributes an independent multinomial (binomial for the
/// orthogonal quorum) likelihood. The maximizer is found by the diluted
/// fixed-point iteration `ρ ← (1-ε)ρ + ε RρR / Tr{RρR}` with
/// `R = Σ (n / p(ρ)) E` over every effect `E`; steps that lower the likelihood
/// are rejected and `ε` is halved, so the accepted log-likelihoods never decrease.
pub fn ml_estimate(record: &MeasurementRecord, quorum: Quorum<'_>, options: &MlOptions) -> Result<MlResult> {
    record.expect_scheme(quorum.scheme())?;
    check_dim(quorum.dim(), record.dim())?;
    if !(options.dilution > 0.0 && options.dilution <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "dilution {} outside (0, 1]",
            options.dilution
        )));
    }
    let p = quorum.dim();
    let povm = quorum.povm();
    let lik = Likelihood {
        effects: povm.observables().iter().flatten().collect(),
        counts: record.counts().iter().flatten().map(|&n| n as f64).collect(),
    };

    let mut rho = match &options.initial {
        Some(init) => {
            check_dim(p, init.dim())?;
            init.matrix().clone()
        }
        None => CMatrix::identity(p, p).scale(1.0 / p as f64),
    };
    let mut probs = lik.probabilities(&rho);
    let (mut ll, mut floored) = lik.eval(&probs);
    let mut trace = Vec::new();
    if options.record_trace {
        trace.push(ll);
    }
    let mut eps = options.dilution;
    let mut converged = false;
    let mut iterations = 0;

    while iterations < options.max_iter {
        iterations += 1;
        let r = lik.r_operator(&probs, p);
        let rrr = &r * &rho * &r;
        let target = rrr.unscale(rrr.trace().re);
        let mut cand = rho.scale(1.0 - eps) + target.scale(eps);
        cand = hermitize(&cand.unscale(cand.trace().re));
        let cand_probs = lik.probabilities(&cand);
        let (cand_ll, cand_floored) = lik.eval(&cand_probs);
        if cand_ll < ll {
            eps *= 0.5;
            if eps < 1e-12 {
                // No ascent left along the fixed-point direction.
                converged = true;
                break;
            }
            continue;
        }
        let gain = (cand_ll - ll) / ll.abs().max(f64::MIN_POSITIVE);
        rho = cand;
        probs = cand_probs;
        ll = cand_ll;
        floored |= cand_floored;
        if options.record_trace {
            trace.push(ll);
        }
        if gain < options.tol {
            converged = true;
            break;
        }
    }

    let state =
        DensityMatrix::new(rho.clone()).unwrap_or_else(|_| project_to_physical(&RawState::from_parts(rho)));
    Ok(MlResult {
        state,
        log_likelihood: ll,
        iterations,
        converged,
        floored,
        trace,
    })
}

/// `Σ n log p` of `state` against `record` under `quorum`, without flooring.
/// `None` when an outcome with nonzero count has `p <= 0`, which happens for
/// unphysical linear estimates.
pub fn log_likelihood(
    record: &MeasurementRecord,
    quorum: Quorum<'_>,
    state: &impl Operator,
) -> Result<Option<f64>> {
    record.expect_scheme(quorum.scheme())?;
    check_dim(quorum.dim(), record.dim())?;
    check_dim(quorum.dim(), state.dim())?;
    let povm = quorum.povm();
    let mut ll = 0.0;
    for (effects, counts) in povm.observables().iter().zip(record.counts()) {
        for (e, &n) in effects.iter().zip(counts) {
            if n == 0 {
                continue;
            }
            let q = trace_product(state.matrix(), e).re;
            if q <= 0.0 {
                return Ok(None);
            }
            ll += n as f64 * q.ln();
        }
    }
    Ok(Some(ll))
}

/// Linear-inversion estimate moved onto the state space, as an ML starting
/// point. Rank-deficient projections are mixed with 1% of `I/p` so the
/// fixed-point iteration can reach every eigen-direction.
pub fn linear_start(raw: &RawState) -> DensityMatrix {
    let proj = project_to_physical(raw);
    if proj.min_eigenvalue() >= 1e-6 {
        proj
    } else {
        proj.depolarized(0.99).expect("weight in range")
    }
}
