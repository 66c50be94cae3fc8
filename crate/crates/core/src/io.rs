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

//! JSON file formats.
//!
//! * Density matrix: `{"dim": p, "re": [[..]], "im": [[..]]}`, row-major.
//! * MUB set: `{"dim": p, "bases": [[{"re": [[..]], "im": [[..]]}, ..], ..]}`.
//! * Measurement record: see [`crate::measurement::MeasurementRecord`].
//!
//! Floats are written with 17 significant digits (`{:.16e}`), which
//! round-trips every `f64` exactly.

use std::io::Write;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::mub::MubSet;
use crate::quantum::{CMatrix, DensityMatrix, Operator, C64};

/// serde_json formatter emitting floats as 17 significant digits.
#[derive(Debug, Clone, Copy, Default)]
pub struct SigDigits17;

impl serde_json::ser::Formatter for SigDigits17 {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()> {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            writer.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> std::io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

/// Compact JSON with 17-significant-digit floats.
pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SigDigits17);
    value
        .serialize(&mut ser)
        .map_err(|e| Error::Parse(e.to_string()))?;
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

/// 17-significant-digit rendering of a single float, as used in CSV output.
pub fn format_f64(value: f64) -> String {
    if value.is_finite() {
        format!("{value:.16e}")
    } else {
        "NaN".to_string()
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixParts {
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

impl MatrixParts {
    fn from_matrix(m: &CMatrix) -> Self {
        let rows = |f: fn(&C64) -> f64| {
            (0..m.nrows())
                .map(|r| (0..m.ncols()).map(|c| f(&m[(r, c)])).collect())
                .collect()
        };
        Self {
            re: rows(|z| z.re),
            im: rows(|z| z.im),
        }
    }

    fn into_matrix(self, dim: usize) -> Result<CMatrix> {
        let shape_ok = |rows: &Vec<Vec<f64>>| rows.len() == dim && rows.iter().all(|r| r.len() == dim);
        if !shape_ok(&self.re) || !shape_ok(&self.im) {
            return Err(Error::Parse(format!("matrix parts must be {dim}x{dim}")));
        }
        Ok(CMatrix::from_fn(dim, dim, |r, c| {
            C64::new(self.re[r][c], self.im[r][c])
        }))
    }
}

#[derive(Serialize, Deserialize)]
struct DensityJson {
    dim: usize,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

impl Serialize for DensityMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let parts = MatrixParts::from_matrix(self.matrix());
        DensityJson {
            dim: self.dim(),
            re: parts.re,
            im: parts.im,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DensityMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = DensityJson::deserialize(d)?;
        let m = MatrixParts { re: j.re, im: j.im }
            .into_matrix(j.dim)
            .map_err(serde::de::Error::custom)?;
        DensityMatrix::new(m).map_err(serde::de::Error::custom)
    }
}

/// Same layout as a density matrix, for matrices that need not be states.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixJson(pub CMatrix);

impl Serialize for MatrixJson {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let parts = MatrixParts::from_matrix(&self.0);
        DensityJson {
            dim: self.0.nrows(),
            re: parts.re,
            im: parts.im,
        }
        .serialize(s)
    }
}

#[derive(Serialize, Deserialize)]
struct MubJson {
    dim: usize,
    bases: Vec<Vec<MatrixParts>>,
}

impl Serialize for MubSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MubJson {
            dim: self.dim(),
            bases: self
                .bases()
                .iter()
                .map(|b| b.iter().map(MatrixParts::from_matrix).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MubSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MubJson::deserialize(d)?;
        let dim = j.dim;
        let bases = j
            .bases
            .into_iter()
            .map(|b| {
                b.into_iter()
                    .map(|m| m.into_matrix(dim))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        let set = MubSet::from_projectors(bases).map_err(serde::de::Error::custom)?;
        if set.dim() != dim {
            return Err(serde::de::Error::custom(format!(
                "declared dim {dim} but {} bases were given",
                set.bases().len()
            )));
        }
        Ok(set)
    }
}

/// Read and parse a JSON file. A missing file is reported as
/// `"<what> file not found: <path>"`.
pub fn read_json<T: DeserializeOwned>(path: &Path, what: &str) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::Io(format!("{what} file not found: {}", path.display())),
        _ => Error::Io(format!("cannot read {what} file {}: {e}", path.display())),
    })?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{what} file {}: {e}", path.display())))
}
