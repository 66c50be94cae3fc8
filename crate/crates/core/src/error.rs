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

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported dimension {0}: only the primes 2, 3, 5 and 7 are supported")]
    UnsupportedDimension(usize),

    #[error("invalid dimension {0}: must be at least 2")]
    InvalidDimension(usize),

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid probability vector for observable {observable}: {reason}")]
    InvalidProbabilities { observable: usize, reason: String },

    #[error("state outside the quorum's valid domain: element {element} has probability {probability}")]
    OutsideQuorumDomain { element: usize, probability: f64 },

    #[error("boundary state: outcome ({observable}, {outcome}) has probability {probability}")]
    BoundaryState {
        observable: usize,
        outcome: usize,
        probability: f64,
    },

    #[error("scheme mismatch: expected {expected}, got {found}")]
    SchemeMismatch { expected: String, found: String },

    #[error("invalid measurement record: {0}")]
    InvalidRecord(String),

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("incompatible configuration: {0}")]
    IncompatibleConfig(String),

    #[error("{0}")]
    Io(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Short machine-readable tag, used by the CLI error line.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::UnsupportedDimension(_) => "unsupported_dimension",
            Error::InvalidDimension(_) => "invalid_dimension",
            Error::InvalidState(_) => "invalid_state",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::InvalidProbabilities { .. } => "invalid_probabilities",
            Error::OutsideQuorumDomain { .. } => "outside_quorum_domain",
            Error::BoundaryState { .. } => "boundary_state",
            Error::SchemeMismatch { .. } => "scheme_mismatch",
            Error::InvalidRecord(_) => "invalid_record",
            Error::NotPositiveDefinite => "not_positive_definite",
            Error::IncompatibleConfig(_) => "incompatible_config",
            Error::Io(_) => "io",
            Error::Parse(_) => "parse",
        }
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
