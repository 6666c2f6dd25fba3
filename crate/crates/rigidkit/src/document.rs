//! JSON interchange format for frameworks.
//!
//! Coordinates travel as strings — rationals like `"21/20"` or decimals like
//! `"0.25"` — parsed exactly, so a document round-trips losslessly through
//! the exact layer.

use std::collections::BTreeSet;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Pow, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{
    Configuration, Framework, GeometryError, Graph, Point, Rational, VertexId,
};

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot parse `{text}` as a rational coordinate")]
    BadRational { text: String },
    #[error("duplicate vertex id {id}")]
    DuplicateId { id: VertexId },
    #[error("edge references unknown vertex id {id}")]
    UnknownEdgeEndpoint { id: VertexId },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Exact parse of a coordinate string: `"a"`, `"a/b"`, or a decimal like
/// `"-1.25"` (read as an exact decimal fraction).
pub fn parse_rational(text: &str) -> Result<Rational, DocumentError> {
    let bad = || DocumentError::BadRational {
        text: text.to_owned(),
    };
    let s = text.trim();
    if s.is_empty() {
        return Err(bad());
    }
    if s.contains('/') {
        return Rational::from_str(s).map_err(|_| bad());
    }
    if let Some(dot) = s.find('.') {
        let (negative, digits) = match s.as_bytes()[0] {
            b'-' => (true, &s[1..]),
            b'+' => (false, &s[1..]),
            _ => (false, s),
        };
        let dot = dot - (s.len() - digits.len());
        let (int_part, frac_part) = (&digits[..dot], &digits[dot + 1..]);
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.bytes().all(|b| b.is_ascii_digit())
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(bad());
        }
        let int_value = if int_part.is_empty() {
            BigInt::zero()
        } else {
            BigInt::from_str(int_part).map_err(|_| bad())?
        };
        let frac_value = if frac_part.is_empty() {
            BigInt::zero()
        } else {
            BigInt::from_str(frac_part).map_err(|_| bad())?
        };
        let scale = BigInt::from(10).pow(frac_part.len() as u32);
        let mut numer = int_value * &scale + frac_value;
        if negative {
            numer = -numer;
        }
        return Ok(Rational::new(numer, scale));
    }
    Rational::from_str(s).map_err(|_| bad())
}

/// Canonical string form: `"n"` for integers, `"n/d"` otherwise. Inverse of
/// [`parse_rational`] on its own output.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexEntry {
    pub id: VertexId,
    pub coords: Vec<String>,
}

/// The on-disk framework document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameworkDocument {
    pub dim: usize,
    pub vertices: Vec<VertexEntry>,
    pub edges: Vec<[VertexId; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<Vec<VertexId>>,
}

impl FrameworkDocument {
    pub fn from_framework(framework: &Framework, base: Option<&BTreeSet<VertexId>>) -> Self {
        let vertices = framework
            .config()
            .points()
            .iter()
            .map(|(&id, point)| VertexEntry {
                id,
                coords: point.iter().map(format_rational).collect(),
            })
            .collect();
        let edges = framework
            .graph()
            .edges()
            .iter()
            .map(|e| {
                let (u, v) = e.endpoints();
                [u, v]
            })
            .collect();
        FrameworkDocument {
            dim: framework.dim(),
            vertices,
            edges,
            base: base.map(|b| b.iter().copied().collect()),
        }
    }

    pub fn to_framework(&self) -> Result<Framework, DocumentError> {
        let mut ids = BTreeSet::new();
        let mut points: Vec<(VertexId, Point)> = Vec::with_capacity(self.vertices.len());
        for entry in &self.vertices {
            if !ids.insert(entry.id) {
                return Err(DocumentError::DuplicateId { id: entry.id });
            }
            let point = entry
                .coords
                .iter()
                .map(|c| parse_rational(c))
                .collect::<Result<Point, _>>()?;
            points.push((entry.id, point));
        }
        for &[u, v] in &self.edges {
            for id in [u, v] {
                if !ids.contains(&id) {
                    return Err(DocumentError::UnknownEdgeEndpoint { id });
                }
            }
        }
        let graph = Graph::new(ids, self.edges.iter().map(|&[u, v]| (u, v)))?;
        let config = Configuration::new(self.dim, points)?;
        Ok(Framework::new(graph, config)?)
    }

    pub fn base_set(&self) -> Option<BTreeSet<VertexId>> {
        self.base.as_ref().map(|b| b.iter().copied().collect())
    }

    pub fn to_json_string(&self) -> String {
        let mut text =
            serde_json::to_string_pretty(self).expect("document serialization cannot fail");
        text.push('\n');
        text
    }

    pub fn from_json_str(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }
}
