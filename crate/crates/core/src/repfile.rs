//! On-disk schema for linear representations: JSON with every number encoded
//! as a decimal string ("p/q" for non-integers), so entries of any magnitude
//! survive a round trip unchanged.

use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linrep::{LinRepError, LinearRepresentation, ReadingOrder};
use crate::mat::Mat;

#[derive(Debug, Error)]
pub enum RepFileError {
    #[error("cannot parse number {0:?}")]
    BadNumber(String),
    #[error("reading order must be \"msd\" or \"lsd\", got {0:?}")]
    BadOrder(String),
    #[error("rank field is {rank} but v has length {v_len}")]
    RankMismatch { rank: usize, v_len: usize },
    #[error(transparent)]
    Shape(#[from] LinRepError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Provenance block: where a representation came from. Optional and inert.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<[i64; 4]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimized: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tool_version: Option<String>,
}

/// Serialized form of a [`LinearRepresentation`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepFile {
    pub rank: usize,
    pub order: String,
    pub v: Vec<String>,
    pub gamma0: Vec<Vec<String>>,
    pub gamma1: Vec<Vec<String>>,
    pub w: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

fn encode(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn decode(s: &str) -> Result<BigRational, RepFileError> {
    let bad = || RepFileError::BadNumber(s.to_string());
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q == BigInt::ZERO {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(s.trim()).map_err(|_| bad())?,
        )),
    }
}

fn encode_matrix(m: &Mat) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(encode).collect())
        .collect()
}

fn decode_matrix(rows: &[Vec<String>]) -> Result<Mat, RepFileError> {
    let decoded = rows
        .iter()
        .map(|row| row.iter().map(|s| decode(s)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Mat::from_rows(decoded))
}

impl RepFile {
    pub fn from_rep(rep: &LinearRepresentation, provenance: Option<Provenance>) -> Self {
        RepFile {
            rank: rep.rank(),
            order: rep.order().as_str().to_string(),
            v: rep.v().iter().map(encode).collect(),
            gamma0: encode_matrix(rep.gamma0()),
            gamma1: encode_matrix(rep.gamma1()),
            w: rep.w().iter().map(encode).collect(),
            provenance,
        }
    }

    pub fn to_rep(&self) -> Result<LinearRepresentation, RepFileError> {
        let order = match self.order.as_str() {
            "msd" => ReadingOrder::Msd,
            "lsd" => ReadingOrder::Lsd,
            other => return Err(RepFileError::BadOrder(other.to_string())),
        };
        if self.rank != self.v.len() {
            return Err(RepFileError::RankMismatch {
                rank: self.rank,
                v_len: self.v.len(),
            });
        }
        let v = self.v.iter().map(|s| decode(s)).collect::<Result<Vec<_>, _>>()?;
        let w = self.w.iter().map(|s| decode(s)).collect::<Result<Vec<_>, _>>()?;
        Ok(LinearRepresentation::new(
            order,
            v,
            decode_matrix(&self.gamma0)?,
            decode_matrix(&self.gamma1)?,
            w,
        )?)
    }

    pub fn to_json_string(&self) -> Result<String, RepFileError> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json_str(s: &str) -> Result<Self, RepFileError> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn save(&self, path: &Path) -> Result<(), RepFileError> {
        let mut text = self.to_json_string()?;
        text.push('\n');
        std::fs::write(path, text)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, RepFileError> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json_str(&text)
    }
}
