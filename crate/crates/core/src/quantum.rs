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

//! Complex-matrix foundations: density matrices, the orthonormal Gell-Mann
//! basis, Bloch coordinates, Hilbert–Schmidt distance and random states.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::rng;

pub type C64 = nalgebra::Complex<f64>;
pub type CMatrix = DMatrix<C64>;

/// Hermiticity and unit-trace tolerance for [`DensityMatrix`] and [`RawState`].
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Smallest eigenvalue accepted as positive semidefinite.
pub const POSITIVITY_TOL: f64 = -1e-10;

/// Anything backed by a square complex matrix.
pub trait Operator {
    fn matrix(&self) -> &CMatrix;

    fn dim(&self) -> usize {
        self.matrix().nrows()
    }
}

impl Operator for CMatrix {
    fn matrix(&self) -> &CMatrix {
        self
    }
}

/// `Tr{A B}` without forming the product.
pub fn trace_product(a: &CMatrix, b: &CMatrix) -> C64 {
    let n = a.nrows();
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

/// `(M + M†)/2`.
pub fn hermitize(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).scale(0.5)
}

fn hermitian_deviation(m: &CMatrix) -> f64 {
    (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Eigenvalues of a Hermitian matrix, sorted descending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let mut vals: Vec<f64> = hermitize(m).symmetric_eigenvalues().iter().copied().collect();
    vals.sort_by(|a, b| b.total_cmp(a));
    vals
}

/// Eigen-decomposition of a Hermitian matrix, eigenpairs sorted by descending
/// eigenvalue. Eigenvectors are the columns of the returned matrix.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let eig = hermitize(m).symmetric_eigen();
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let vals = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = CMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (vals, vecs)
}

fn check_square(m: &CMatrix) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::InvalidState(format!(
            "matrix is {}x{}, not square",
            m.nrows(),
            m.ncols()
        )));
    }
    if m.nrows() < 2 {
        return Err(Error::InvalidDimension(m.nrows()));
    }
    Ok(m.nrows())
}

fn check_hermitian_unit_trace(m: &CMatrix) -> Result<()> {
    let dev = hermitian_deviation(m);
    if dev > HERMITIAN_TOL {
        return Err(Error::InvalidState(format!("not Hermitian (deviation {dev:e})")));
    }
    let tr = m.trace().re;
    if (tr - 1.0).abs() > HERMITIAN_TOL {
        return Err(Error::InvalidState(format!("trace is {tr}, expected 1")));
    }
    Ok(())
}

/// A valid quantum state: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: CMatrix,
}

impl DensityMatrix {
    pub fn new(mat: CMatrix) -> Result<Self> {
        check_square(&mat)?;
        check_hermitian_unit_trace(&mat)?;
        let min = *hermitian_eigenvalues(&mat).last().unwrap();
        if min < POSITIVITY_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
        }
        Ok(Self { mat: hermitize(&mat) })
    }

    /// `I/p`.
    pub fn maximally_mixed(p: usize) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidDimension(p));
        }
        Ok(Self {
            mat: CMatrix::identity(p, p).scale(1.0 / p as f64),
        })
    }

    /// `|ψ⟩⟨ψ|` for a (not necessarily normalized) nonzero vector.
    pub fn pure(psi: &DVector<C64>) -> Result<Self> {
        if psi.len() < 2 {
            return Err(Error::InvalidDimension(psi.len()));
        }
        let norm = psi.norm();
        if norm == 0.0 {
            return Err(Error::InvalidState("zero state vector".into()));
        }
        let v = psi.unscale(norm);
        Ok(Self {
            mat: hermitize(&(&v * v.adjoint())),
        })
    }

    /// Computational basis state `|k⟩⟨k|`.
    pub fn basis_state(p: usize, k: usize) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidDimension(p));
        }
        if k >= p {
            return Err(Error::InvalidParameter(format!(
                "basis index {k} out of range for dimension {p}"
            )));
        }
        let mut mat = CMatrix::zeros(p, p);
        mat[(k, k)] = C64::new(1.0, 0.0);
        Ok(Self { mat })
    }

    /// `λρ + (1-λ)I/p`.
    pub fn depolarized(&self, lambda: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidParameter(format!(
                "mixing weight {lambda} outside [0, 1]"
            )));
        }
        let p = self.dim();
        let mixed = CMatrix::identity(p, p).scale((1.0 - lambda) / p as f64);
        Ok(Self {
            mat: self.mat.scale(lambda) + mixed,
        })
    }

    /// `U ρ U†`.
    pub fn conjugate_by(&self, u: &CMatrix) -> Result<Self> {
        check_dim(self.dim(), u.nrows())?;
        Ok(Self {
            mat: hermitize(&(u * &self.mat * u.adjoint())),
        })
    }

    pub fn into_matrix(self) -> CMatrix {
        self.mat
    }

    /// Eigenvalues, descending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.mat)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        *self.eigenvalues().last().unwrap()
    }
}

impl Operator for DensityMatrix {
    fn matrix(&self) -> &CMatrix {
        &self.mat
    }
}

/// Hermitian, unit-trace matrix whose positivity is not enforced.
///
/// Linear reconstructions (direct inversion, Bloch-vector synthesis) land
/// here; they may have negative eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct RawState {
    mat: CMatrix,
}

impl RawState {
    pub fn new(mat: CMatrix) -> Result<Self> {
        check_square(&mat)?;
        check_hermitian_unit_trace(&mat)?;
        Ok(Self { mat: hermitize(&mat) })
    }

    /// Skips validation; the caller guarantees Hermiticity and unit trace.
    pub(crate) fn from_parts(mat: CMatrix) -> Self {
        Self { mat: hermitize(&mat) }
    }

    pub fn into_matrix(self) -> CMatrix {
        self.mat
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.mat)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        *self.eigenvalues().last().unwrap()
    }

    pub fn is_physical(&self) -> bool {
        self.min_eigenvalue() >= POSITIVITY_TOL
    }

    /// Reinterpret as a density matrix if positive semidefinite.
    pub fn into_density(self) -> Result<DensityMatrix> {
        DensityMatrix::new(self.mat)
    }
}

impl Operator for RawState {
    fn matrix(&self) -> &CMatrix {
        &self.mat
    }
}

impl From<DensityMatrix> for RawState {
    fn from(rho: DensityMatrix) -> Self {
        Self { mat: rho.mat }
    }
}

/// `p²-1` traceless Hermitian matrices with `Tr{Γ_j Γ_k} = δ_jk`.
///
/// Ordering for dimension `p` (0-based levels `j < k`):
/// 1. symmetric `(|j⟩⟨k| + |k⟩⟨j|)/√2` for pairs `(j, k)` in lexicographic order,
/// 2. antisymmetric `(-i|j⟩⟨k| + i|k⟩⟨j|)/√2` in the same pair order,
/// 3. diagonal `(Σ_{m<l} |m⟩⟨m| - l|l⟩⟨l|)/√(l(l+1))` for `l = 1..p-1`.
///
/// For `p = 2` this is `(σx, σy, σz)/√2`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianBasis {
    dim: usize,
    gammas: Vec<CMatrix>,
}

impl HermitianBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }

    pub fn elements(&self) -> &[CMatrix] {
        &self.gammas
    }

    /// Matrix of pairwise `Tr{Γ_j Γ_k}`.
    pub fn gram(&self) -> DMatrix<f64> {
        let n = self.gammas.len();
        DMatrix::from_fn(n, n, |j, k| trace_product(&self.gammas[j], &self.gammas[k]).re)
    }
}

pub fn gell_mann_basis(p: usize) -> Result<HermitianBasis> {
    if p < 2 {
        return Err(Error::InvalidDimension(p));
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let pairs: Vec<(usize, usize)> = (0..p).flat_map(|j| ((j + 1)..p).map(move |k| (j, k))).collect();
    let mut gammas = Vec::with_capacity(p * p - 1);
    for &(j, k) in &pairs {
        let mut g = CMatrix::zeros(p, p);
        g[(j, k)] = C64::new(s, 0.0);
        g[(k, j)] = C64::new(s, 0.0);
        gammas.push(g);
    }
    for &(j, k) in &pairs {
        let mut g = CMatrix::zeros(p, p);
        g[(j, k)] = C64::new(0.0, -s);
        g[(k, j)] = C64::new(0.0, s);
        gammas.push(g);
    }
    for l in 1..p {
        let norm = 1.0 / ((l * (l + 1)) as f64).sqrt();
        let mut g = CMatrix::zeros(p, p);
        for m in 0..l {
            g[(m, m)] = C64::new(norm, 0.0);
        }
        g[(l, l)] = C64::new(-(l as f64) * norm, 0.0);
        gammas.push(g);
    }
    Ok(HermitianBasis { dim: p, gammas })
}

/// Real coordinates `a_k` of `ρ = I/p + Σ a_k Γ_k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlochVector {
    pub dim: usize,
    pub coords: Vec<f64>,
}

impl BlochVector {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            coords: vec![0.0; dim * dim - 1],
        }
    }

    pub fn norm_squared(&self) -> f64 {
        self.coords.iter().map(|a| a * a).sum()
    }
}

/// `a_k = Tr{ρ Γ_k}`. Accepts raw reconstructions as well as valid states.
pub fn bloch_coords(rho: &impl Operator, basis: &HermitianBasis) -> Result<BlochVector> {
    check_dim(basis.dim, rho.dim())?;
    let coords = basis
        .gammas
        .iter()
        .map(|g| trace_product(rho.matrix(), g).re)
        .collect();
    Ok(BlochVector {
        dim: basis.dim,
        coords,
    })
}

/// `I/p + Σ a_k Γ_k`; positivity is not enforced.
pub fn state_from_bloch(a: &BlochVector, basis: &HermitianBasis) -> Result<RawState> {
    check_dim(basis.len(), a.coords.len())?;
    let p = basis.dim;
    let mut mat = CMatrix::identity(p, p).scale(1.0 / p as f64);
    for (ak, g) in a.coords.iter().zip(&basis.gammas) {
        mat += g.scale(*ak);
    }
    Ok(RawState::from_parts(mat))
}

/// `Tr{(ρ-σ)²}`, the squared Hilbert–Schmidt norm of the difference.
pub fn hs_distance(rho: &impl Operator, sigma: &impl Operator) -> Result<f64> {
    check_dim(rho.dim(), sigma.dim())?;
    Ok(rho
        .matrix()
        .iter()
        .zip(sigma.matrix().iter())
        .map(|(a, b)| (a - b).norm_sqr())
        .sum())
}

/// `Tr ρ²`.
pub fn purity(rho: &impl Operator) -> f64 {
    rho.matrix().iter().map(|z| z.norm_sqr()).sum()
}

/// Random-state ensembles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StateKind {
    /// Haar-random pure state.
    HaarPure,
    /// Hilbert–Schmidt measure: `GG†/Tr(GG†)` for complex Ginibre `G`.
    HsMixed,
    /// `λ|ψ⟩⟨ψ| + (1-λ)I/p` with Haar `|ψ⟩`.
    PurityTarget(f64),
}

fn complex_gaussian(rng: &mut impl Rng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn ginibre(p: usize, rng: &mut impl Rng) -> CMatrix {
    CMatrix::from_fn(p, p, |_, _| complex_gaussian(rng))
}

pub fn random_state(p: usize, kind: StateKind, seed: u64) -> Result<DensityMatrix> {
    if p < 2 {
        return Err(Error::InvalidDimension(p));
    }
    let mut rng = rng::stream(seed);
    match kind {
        StateKind::HaarPure => {
            let psi = DVector::from_fn(p, |_, _| complex_gaussian(&mut rng));
            DensityMatrix::pure(&psi)
        }
        StateKind::HsMixed => {
            let g = ginibre(p, &mut rng);
            let w = &g * g.adjoint();
            let tr = w.trace().re;
            Ok(DensityMatrix {
                mat: hermitize(&w.unscale(tr)),
            })
        }
        StateKind::PurityTarget(lambda) => {
            if !(0.0..=1.0).contains(&lambda) {
                return Err(Error::InvalidParameter(format!(
                    "purity-target weight {lambda} outside [0, 1]"
                )));
            }
            let psi = DVector::from_fn(p, |_, _| complex_gaussian(&mut rng));
            DensityMatrix::pure(&psi)?.depolarized(lambda)
        }
    }
}

/// Haar-random unitary from the QR decomposition of a Ginibre matrix, with the
/// phases of `R`'s diagonal folded back into `Q`.
pub fn random_unitary(p: usize, seed: u64) -> Result<CMatrix> {
    if p < 2 {
        return Err(Error::InvalidDimension(p));
    }
    let mut rng = rng::stream(seed);
    let qr = ginibre(p, &mut rng).qr();
    let r = qr.r();
    let mut q = qr.q();
    for c in 0..p {
        let d = r[(c, c)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        for row in 0..p {
            q[(row, c)] *= phase;
        }
    }
    Ok(q)
}
