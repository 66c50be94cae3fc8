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

//! Outcome probabilities for the three measurement schemes and seeded
//! finite-shot sampling of count records.
//!
//! Every observable is measured on its own ensemble of `N` particles. Counts
//! for observable `k` are drawn from the stream `rng::substream(seed, k)`, so a
//! record does not depend on the order in which observables are sampled.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::mub::MubSet;
use crate::quantum::{
    bloch_coords, hermitian_eigen, hermitian_eigenvalues, CMatrix, DensityMatrix, HermitianBasis, Operator,
};
use crate::rng;

/// Slack allowed on a probability before it counts as out of range.
pub const PROBABILITY_TOL: f64 = 1e-10;
/// Slack allowed on the sum of a probability vector passed to [`sample_counts`].
pub const NORMALIZATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    /// `p+1` mutually unbiased bases, `p` outcomes each.
    Mub,
    /// `p²-1` two-outcome tests `{Π_j, I-Π_j}`.
    Ortho,
    /// One projective measurement in the eigenbasis of the true state.
    Eigen,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Mub => "mub",
            Scheme::Ortho => "ortho",
            Scheme::Eigen => "eigen",
        })
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mub" => Ok(Scheme::Mub),
            "ortho" => Ok(Scheme::Ortho),
            "eigen" => Ok(Scheme::Eigen),
            other => Err(Error::InvalidParameter(format!("unknown scheme '{other}'"))),
        }
    }
}

impl Scheme {
    /// `(observables, outcomes per observable)` for dimension `p`.
    pub fn layout(self, p: usize) -> (usize, usize) {
        match self {
            Scheme::Mub => (p + 1, p),
            Scheme::Ortho => (p * p - 1, 2),
            Scheme::Eigen => (1, p),
        }
    }
}

/// Integer outcome counts, one array per observable.
///
/// Layout by scheme:
/// * `mub`: `p+1` arrays of `p` counts, basis order of the [`MubSet`];
/// * `ortho`: `p²-1` pairs `[n_yes, n_no]`, Gell-Mann order;
/// * `eigen`: one array of `p` counts, eigenvalues descending.
///
/// Each array sums to `N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RecordJson", into = "RecordJson")]
pub struct MeasurementRecord {
    dim: usize,
    scheme: Scheme,
    shots: u64,
    counts: Vec<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
struct RecordJson {
    dim: usize,
    scheme: Scheme,
    #[serde(rename = "N")]
    shots: u64,
    counts: Vec<Vec<u64>>,
}

impl TryFrom<RecordJson> for MeasurementRecord {
    type Error = Error;

    fn try_from(r: RecordJson) -> Result<Self> {
        MeasurementRecord::new(r.dim, r.scheme, r.shots, r.counts)
    }
}

impl From<MeasurementRecord> for RecordJson {
    fn from(r: MeasurementRecord) -> Self {
        RecordJson {
            dim: r.dim,
            scheme: r.scheme,
            shots: r.shots,
            counts: r.counts,
        }
    }
}

impl MeasurementRecord {
    pub fn new(dim: usize, scheme: Scheme, shots: u64, counts: Vec<Vec<u64>>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidDimension(dim));
        }
        if shots < 1 {
            return Err(Error::InvalidRecord("N must be at least 1".into()));
        }
        let (n_obs, n_out) = scheme.layout(dim);
        if counts.len() != n_obs {
            return Err(Error::InvalidRecord(format!(
                "{scheme} scheme in dimension {dim} needs {n_obs} count arrays, got {}",
                counts.len()
            )));
        }
        for (k, row) in counts.iter().enumerate() {
            if row.len() != n_out {
                return Err(Error::InvalidRecord(format!(
                    "observable {k} has {} outcomes, expected {n_out}",
                    row.len()
                )));
            }
            let total: u64 = row.iter().sum();
            if total != shots {
                return Err(Error::InvalidRecord(format!(
                    "observable {k} counts sum to {total}, expected N = {shots}"
                )));
            }
        }
        Ok(Self {
            dim,
            scheme,
            shots,
            counts,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }

    /// `n / N` per outcome.
    pub fn frequencies(&self) -> Vec<Vec<f64>> {
        let n = self.shots as f64;
        self.counts
            .iter()
            .map(|row| row.iter().map(|&c| c as f64 / n).collect())
            .collect()
    }

    pub(crate) fn expect_scheme(&self, scheme: Scheme) -> Result<()> {
        if self.scheme == scheme {
            Ok(())
        } else {
            Err(Error::SchemeMismatch {
                expected: scheme.to_string(),
                found: self.scheme.to_string(),
            })
        }
    }
}

fn clamp_probability(q: f64, observable: usize) -> Result<f64> {
    if !q.is_finite() || !(-PROBABILITY_TOL..=1.0 + PROBABILITY_TOL).contains(&q) {
        return Err(Error::InvalidProbabilities {
            observable,
            reason: format!("probability {q} outside [0, 1]"),
        });
    }
    Ok(q.clamp(0.0, 1.0))
}

/// `p_{αj} = Tr{ρ Π_{αj}}`, clamped to `[0, 1]` after a range check.
pub fn mub_probabilities(rho: &DensityMatrix, set: &MubSet) -> Result<Vec<Vec<f64>>> {
    set.overlaps(rho)?
        .into_iter()
        .enumerate()
        .map(|(alpha, row)| row.into_iter().map(|q| clamp_probability(q, alpha)).collect())
        .collect()
}

/// Multinomial draw by sequential conditional binomials.
pub fn multinomial(n: u64, probabilities: &[f64], rng: &mut impl Rng) -> Vec<u64> {
    let mut out = vec![0; probabilities.len()];
    let mut remaining = n;
    let mut mass: f64 = probabilities.iter().sum();
    let last = probabilities.len() - 1;
    for (k, &q) in probabilities.iter().enumerate() {
        if remaining == 0 {
            break;
        }
        if k == last {
            out[k] = remaining;
            break;
        }
        let cond = if mass > 0.0 {
            (q / mass).clamp(0.0, 1.0)
        } else {
            0.0
        };
        let x = if cond == 0.0 {
            0
        } else if cond == 1.0 {
            remaining
        } else {
            Binomial::new(remaining, cond)
                .expect("valid binomial")
                .sample(rng)
        };
        out[k] = x;
        remaining -= x;
        mass -= q;
    }
    out
}

/// Independent `multinomial(N, probabilities[k])` draw for every observable `k`.
pub fn sample_counts(
    scheme: Scheme,
    dim: usize,
    probabilities: &[Vec<f64>],
    shots: u64,
    seed: u64,
) -> Result<MeasurementRecord> {
    if shots < 1 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    let mut counts = Vec::with_capacity(probabilities.len());
    for (k, row) in probabilities.iter().enumerate() {
        if row.is_empty() {
            return Err(Error::InvalidProbabilities {
                observable: k,
                reason: "empty probability vector".into(),
            });
        }
        let clean: Vec<f64> = row
            .iter()
            .map(|&q| clamp_probability(q, k))
            .collect::<Result<_>>()?;
        let total: f64 = clean.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::InvalidProbabilities {
                observable: k,
                reason: format!("sums to {total}"),
            });
        }
        let mut rng = rng::substream(seed, k as u64);
        counts.push(multinomial(shots, &clean, &mut rng));
    }
    MeasurementRecord::new(dim, scheme, shots, counts)
}

/// The two-outcome tests `Π_j = I/2 + (√2/2) Γ_j`, `j = 1..p²-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthoQuorum {
    dim: usize,
    elements: Vec<CMatrix>,
    positive: Vec<bool>,
}

impl OrthoQuorum {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[CMatrix] {
        &self.elements
    }

    /// Per element: whether its spectrum lies in `[0, 1]`, i.e. whether
    /// `{Π_j, I-Π_j}` is a genuine two-outcome POVM.
    pub fn positivity(&self) -> &[bool] {
        &self.positive
    }

    pub fn all_positive(&self) -> bool {
        self.positive.iter().all(|&b| b)
    }
}

/// Tolerance on the `[0, 1]` spectrum check of quorum elements.
const SPECTRUM_TOL: f64 = 1e-12;

pub fn ortho_quorum(basis: &HermitianBasis) -> OrthoQuorum {
    let p = basis.dim();
    let c = std::f64::consts::SQRT_2 / 2.0;
    let half = CMatrix::identity(p, p).scale(0.5);
    let elements: Vec<CMatrix> = basis.elements().iter().map(|g| &half + g.scale(c)).collect();
    let positive = elements
        .iter()
        .map(|e| {
            let ev = hermitian_eigenvalues(e);
            ev[0] <= 1.0 + SPECTRUM_TOL && ev[ev.len() - 1] >= -SPECTRUM_TOL
        })
        .collect();
    OrthoQuorum {
        dim: p,
        elements,
        positive,
    }
}

/// `p_j = 1/2 + (√2/2) a_j`. Values outside `[0, 1]` are an error, never clamped.
pub fn ortho_quorum_probabilities(rho: &DensityMatrix, basis: &HermitianBasis) -> Result<Vec<f64>> {
    let c = std::f64::consts::SQRT_2 / 2.0;
    bloch_coords(rho, basis)?
        .coords
        .iter()
        .enumerate()
        .map(|(j, a)| {
            let q = 0.5 + c * a;
            if !(-PROBABILITY_TOL..=1.0 + PROBABILITY_TOL).contains(&q) {
                Err(Error::OutsideQuorumDomain {
                    element: j,
                    probability: q,
                })
            } else {
                Ok(q.clamp(0.0, 1.0))
            }
        })
        .collect()
}

/// Outcome probabilities of measuring in the eigenbasis of `ρ`: its
/// eigenvalues, descending.
pub fn eigenbasis_probabilities(rho: &DensityMatrix) -> Vec<f64> {
    rho.eigenvalues().into_iter().map(|l| l.clamp(0.0, 1.0)).collect()
}

/// A list of complete measurements, each a list of effects summing to `I`.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    dim: usize,
    observables: Vec<Vec<CMatrix>>,
}

impl Povm {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn observables(&self) -> &[Vec<CMatrix>] {
        &self.observables
    }

    /// Each basis of the set, `p` outcomes.
    pub fn from_mub(set: &MubSet) -> Self {
        Self {
            dim: set.dim(),
            observables: set.bases().to_vec(),
        }
    }

    /// `{Π_j, I-Π_j}` for every quorum element.
    pub fn from_ortho(q: &OrthoQuorum) -> Self {
        let id = CMatrix::identity(q.dim, q.dim);
        Self {
            dim: q.dim,
            observables: q.elements.iter().map(|e| vec![e.clone(), &id - e]).collect(),
        }
    }

    /// Projective measurement onto the columns of `vectors`.
    pub fn projective(vectors: &CMatrix) -> Self {
        let p = vectors.nrows();
        let effects = (0..p)
            .map(|c| {
                let v = vectors.column(c);
                v * v.adjoint()
            })
            .collect();
        Self {
            dim: p,
            observables: vec![effects],
        }
    }

    /// Measurement in the eigenbasis of `rho`, outcomes ordered by descending
    /// eigenvalue.
    pub fn eigenbasis(rho: &DensityMatrix) -> Self {
        let (_, vecs) = hermitian_eigen(rho.matrix());
        Self::projective(&vecs)
    }

    /// Raw `Tr{ρ E}` for every effect.
    pub fn probabilities(&self, rho: &impl Operator) -> Result<Vec<Vec<f64>>> {
        check_dim(self.dim, rho.dim())?;
        Ok(self
            .observables
            .iter()
            .map(|obs| {
                obs.iter()
                    .map(|e| crate::quantum::trace_product(rho.matrix(), e).re)
                    .collect()
            })
            .collect())
    }

    pub fn num_effects(&self) -> usize {
        self.observables.iter().map(Vec::len).sum()
    }

    /// `Σ E`, the sum over every effect of every observable.
    pub fn effect_sum(&self) -> CMatrix {
        let mut s = CMatrix::zeros(self.dim, self.dim);
        for e in self.observables.iter().flatten() {
            s += e;
        }
        s
    }
}

/// An informationally complete quorum of measured observables.
#[derive(Debug, Clone, Copy)]
pub enum Quorum<'a> {
    Mub(&'a MubSet),
    Ortho(&'a OrthoQuorum),
}

impl Quorum<'_> {
    pub fn dim(&self) -> usize {
        match self {
            Quorum::Mub(s) => s.dim(),
            Quorum::Ortho(q) => q.dim(),
        }
    }

    pub fn scheme(&self) -> Scheme {
        match self {
            Quorum::Mub(_) => Scheme::Mub,
            Quorum::Ortho(_) => Scheme::Ortho,
        }
    }

    /// Full POVM including two-outcome complements.
    pub fn povm(&self) -> Povm {
        match self {
            Quorum::Mub(s) => Povm::from_mub(s),
            Quorum::Ortho(q) => Povm::from_ortho(q),
        }
    }

    /// The registered effects `(observable, outcome, effect)`: every MUB
    /// projector, but only `Π_j` (not `I-Π_j`) for the orthogonal quorum.
    pub fn registered_effects(&self) -> Vec<(usize, usize, &CMatrix)> {
        match self {
            Quorum::Mub(s) => s
                .bases()
                .iter()
                .enumerate()
                .flat_map(|(a, b)| b.iter().enumerate().map(move |(j, e)| (a, j, e)))
                .collect(),
            Quorum::Ortho(q) => q.elements().iter().enumerate().map(|(j, e)| (j, 0, e)).collect(),
        }
    }
}

/// Sample a `mub` record from the true state.
pub fn simulate_mub(rho: &DensityMatrix, set: &MubSet, shots: u64, seed: u64) -> Result<MeasurementRecord> {
    let probs = mub_probabilities(rho, set)?;
    sample_counts(Scheme::Mub, set.dim(), &probs, shots, seed)
}

/// Sample an `ortho` record; fails for states outside the quorum's domain.
pub fn simulate_ortho(
    rho: &DensityMatrix,
    basis: &HermitianBasis,
    shots: u64,
    seed: u64,
) -> Result<MeasurementRecord> {
    let probs: Vec<Vec<f64>> = ortho_quorum_probabilities(rho, basis)?
        .into_iter()
        .map(|q| vec![q, 1.0 - q])
        .collect();
    sample_counts(Scheme::Ortho, basis.dim(), &probs, shots, seed)
}

/// Sample an `eigen` record.
pub fn simulate_eigen(rho: &DensityMatrix, shots: u64, seed: u64) -> Result<MeasurementRecord> {
    let mut probs = eigenbasis_probabilities(rho);
    let total: f64 = probs.iter().sum();
    probs.iter_mut().for_each(|q| *q /= total);
    sample_counts(Scheme::Eigen, rho.dim(), &[probs], shots, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mub::build_mub;
    use crate::quantum::{gell_mann_basis, random_state, StateKind};

    #[test]
    fn mub_probabilities_examples() {
        let set = build_mub(3).unwrap();
        let mm = mub_probabilities(&DensityMatrix::maximally_mixed(3).unwrap(), &set).unwrap();
        assert!(mm.iter().flatten().all(|q| (q - 1.0 / 3.0).abs() < 1e-15));

        let rho = DensityMatrix::new(set.projector(1, 0).clone()).unwrap();
        let probs = mub_probabilities(&rho, &set).unwrap();
        assert!((probs[1][0] - 1.0).abs() < 1e-12);
        assert!(probs[1][1].abs() < 1e-12 && probs[1][2].abs() < 1e-12);
        for (alpha, row) in probs.iter().enumerate() {
            if alpha != 1 {
                assert!(row.iter().all(|q| (q - 1.0 / 3.0).abs() < 1e-12));
            }
        }

        let set7 = build_mub(7).unwrap();
        let rho = random_state(7, StateKind::HsMixed, 3).unwrap();
        for row in mub_probabilities(&rho, &set7).unwrap() {
            assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        }
        assert!(mub_probabilities(&DensityMatrix::maximally_mixed(2).unwrap(), &set7).is_err());
    }

    #[test]
    fn degenerate_multinomial() {
        for n in [1, 7, 1000] {
            let rec = sample_counts(Scheme::Eigen, 3, &[vec![1.0, 0.0, 0.0]], n, 5).unwrap();
            assert_eq!(rec.counts()[0], vec![n, 0, 0]);
            let rec = sample_counts(Scheme::Eigen, 3, &[vec![0.0, 0.0, 1.0]], n, 5).unwrap();
            assert_eq!(rec.counts()[0], vec![0, 0, n]);
        }
    }

    #[test]
    fn sampling_is_seeded() {
        let probs = vec![vec![0.2, 0.3, 0.5]; 4];
        let a = sample_counts(Scheme::Mub, 3, &probs, 500, 9).unwrap();
        let b = sample_counts(Scheme::Mub, 3, &probs, 500, 9).unwrap();
        let c = sample_counts(Scheme::Mub, 3, &probs, 500, 10).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn fair_coin_frequency() {
        let rec = sample_counts(Scheme::Ortho, 2, &vec![vec![0.5, 0.5]; 3], 1_000_000, 2024).unwrap();
        for f in rec.frequencies() {
            assert!((f[0] - 0.5).abs() < 0.002);
        }
    }

    #[test]
    fn sampling_rejects_bad_input() {
        assert!(sample_counts(Scheme::Eigen, 2, &[vec![0.5, 0.6]], 10, 0).is_err());
        assert!(sample_counts(Scheme::Eigen, 2, &[vec![1.2, -0.2]], 10, 0).is_err());
        assert!(sample_counts(Scheme::Eigen, 2, &[vec![0.5, 0.5]], 0, 0).is_err());
        assert!(sample_counts(Scheme::Eigen, 2, &[vec![f64::NAN, 0.5]], 10, 0).is_err());
    }

    #[test]
    fn record_layout_validation() {
        assert!(MeasurementRecord::new(2, Scheme::Mub, 4, vec![vec![3, 1], vec![2, 2], vec![2, 2]]).is_ok());
        assert!(MeasurementRecord::new(2, Scheme::Mub, 4, vec![vec![3, 1], vec![2, 2]]).is_err());
        assert!(MeasurementRecord::new(2, Scheme::Mub, 4, vec![vec![3, 2], vec![2, 2], vec![2, 2]]).is_err());
        assert!(MeasurementRecord::new(2, Scheme::Ortho, 4, vec![vec![1, 3]; 3]).is_ok());
        assert!(MeasurementRecord::new(3, Scheme::Ortho, 4, vec![vec![1, 3]; 3]).is_err());
        assert!(MeasurementRecord::new(3, Scheme::Eigen, 4, vec![vec![1, 1, 2]]).is_ok());
        assert!(MeasurementRecord::new(3, Scheme::Eigen, 0, vec![vec![0, 0, 0]]).is_err());
    }

    #[test]
    fn record_json_shape() {
        let rec =
            MeasurementRecord::new(2, Scheme::Mub, 4, vec![vec![3, 1], vec![2, 2], vec![2, 2]]).unwrap();
        let v = serde_json::to_value(&rec).unwrap();
        assert_eq!(v["N"], 4);
        assert_eq!(v["scheme"], "mub");
        assert_eq!(v["counts"][0][0], 3);
        let back: MeasurementRecord = serde_json::from_value(v).unwrap();
        assert_eq!(back, rec);
        let bad = serde_json::json!({"dim": 2, "scheme": "mub", "N": 4, "counts": [[1, 1]]});
        assert!(serde_json::from_value::<MeasurementRecord>(bad).is_err());
    }

    #[test]
    fn qubit_quorum_is_projective() {
        let q = ortho_quorum(&gell_mann_basis(2).unwrap());
        assert_eq!(q.elements().len(), 3);
        assert!(q.all_positive());
        for e in q.elements() {
            let ev = hermitian_eigenvalues(e);
            assert!((ev[0] - 1.0).abs() < 1e-15 && ev[1].abs() < 1e-15);
        }
    }

    #[test]
    fn qutrit_quorum_not_positive() {
        let basis = gell_mann_basis(3).unwrap();
        let q = ortho_quorum(&basis);
        // Last element is built from the diag(1,1,-2) Gell-Mann matrix.
        assert!(!q.positivity()[7]);
        assert!(!q.all_positive());
        for e in q.elements() {
            assert!((e.trace().re - 1.5).abs() < 1e-15);
            assert!((e - e.adjoint()).camax() == 0.0);
        }
        // Tr{Π_j Γ_k} = (√2/2) δ_jk
        for (j, e) in q.elements().iter().enumerate() {
            for (k, g) in basis.elements().iter().enumerate() {
                let want = if j == k {
                    std::f64::consts::SQRT_2 / 2.0
                } else {
                    0.0
                };
                assert!((crate::quantum::trace_product(e, g).re - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn quorum_probabilities() {
        let basis = gell_mann_basis(3).unwrap();
        let probs = ortho_quorum_probabilities(&DensityMatrix::maximally_mixed(3).unwrap(), &basis).unwrap();
        assert!(probs.iter().all(|q| (q - 0.5).abs() < 1e-15));

        let b2 = gell_mann_basis(2).unwrap();
        let probs = ortho_quorum_probabilities(&DensityMatrix::basis_state(2, 0).unwrap(), &b2).unwrap();
        assert!((probs[0] - 0.5).abs() < 1e-15);
        assert!((probs[1] - 0.5).abs() < 1e-15);
        assert!((probs[2] - 1.0).abs() < 1e-15);

        let err = ortho_quorum_probabilities(&DensityMatrix::basis_state(3, 2).unwrap(), &basis).unwrap_err();
        match err {
            Error::OutsideQuorumDomain { element, probability } => {
                assert_eq!(element, 7);
                assert!((probability - (0.5 - 1.0 / 3f64.sqrt())).abs() < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn eigenbasis_probabilities_examples() {
        let pure = random_state(4, StateKind::HaarPure, 1).unwrap();
        let probs = eigenbasis_probabilities(&pure);
        assert!((probs[0] - 1.0).abs() < 1e-12);
        assert!(probs[1..].iter().all(|q| q.abs() < 1e-12));
        let mm = eigenbasis_probabilities(&DensityMatrix::maximally_mixed(5).unwrap());
        assert!(mm.iter().all(|q| (q - 0.2).abs() < 1e-15));
        let rho = random_state(5, StateKind::HsMixed, 2).unwrap();
        let probs = eigenbasis_probabilities(&rho);
        assert!((probs.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(probs.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn povm_effects_complete() {
        let set = build_mub(3).unwrap();
        let q = ortho_quorum(&gell_mann_basis(3).unwrap());
        let rho = random_state(3, StateKind::HsMixed, 0).unwrap();
        for (povm, copies) in [
            (Povm::from_mub(&set), 4.0),
            (Povm::from_ortho(&q), 8.0),
            (Povm::eigenbasis(&rho), 1.0),
        ] {
            let dev = (povm.effect_sum() - CMatrix::identity(3, 3).scale(copies)).camax();
            assert!(dev < 1e-12);
        }
    }
}
