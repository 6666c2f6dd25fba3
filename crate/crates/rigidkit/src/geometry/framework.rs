use std::collections::BTreeMap;

use num_traits::Zero;

use super::{Edge, GeometryError, Graph, Rational, VertexId};

/// A point in ℚ^d.
pub type Point = Vec<Rational>;

/// Exact squared Euclidean distance Σ(aᵢ−bᵢ)².
pub fn squared_distance(a: &[Rational], b: &[Rational]) -> Result<Rational, GeometryError> {
    if a.len() != b.len() {
        return Err(GeometryError::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    let mut sum = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        let diff = x - y;
        sum += &diff * &diff;
    }
    Ok(sum)
}

/// An assignment of a point in ℚ^d to each vertex id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    dim: usize,
    points: BTreeMap<VertexId, Point>,
}

impl Configuration {
    pub fn new(
        dim: usize,
        points: impl IntoIterator<Item = (VertexId, Point)>,
    ) -> Result<Self, GeometryError> {
        let points: BTreeMap<VertexId, Point> = points.into_iter().collect();
        if points.contains_key(&0) {
            return Err(GeometryError::NonPositiveVertexId);
        }
        for point in points.values() {
            if point.len() != dim {
                return Err(GeometryError::DimensionMismatch {
                    expected: dim,
                    found: point.len(),
                });
            }
        }
        Ok(Configuration { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, v: VertexId) -> Option<&Point> {
        self.points.get(&v)
    }

    pub fn points(&self) -> &BTreeMap<VertexId, Point> {
        &self.points
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.points.keys().copied()
    }

    /// Copy of this configuration with one vertex moved.
    pub fn with_point(&self, v: VertexId, point: Point) -> Result<Self, GeometryError> {
        if point.len() != self.dim {
            return Err(GeometryError::DimensionMismatch {
                expected: self.dim,
                found: point.len(),
            });
        }
        let mut points = self.points.clone();
        points.insert(v, point);
        Configuration::new(self.dim, points)
    }
}

/// Map from edges to exact squared lengths; the object compared by
/// framework equivalence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeLengthProfile {
    dim: usize,
    lengths: BTreeMap<Edge, Rational>,
}

impl EdgeLengthProfile {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lengths(&self) -> &BTreeMap<Edge, Rational> {
        &self.lengths
    }

    pub fn get(&self, edge: &Edge) -> Option<&Rational> {
        self.lengths.get(edge)
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }
}

/// A bar-and-joint framework: a graph together with a configuration of its
/// vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Framework {
    graph: Graph,
    config: Configuration,
}

impl Framework {
    pub fn new(graph: Graph, config: Configuration) -> Result<Self, GeometryError> {
        let covered = config.vertex_ids().collect::<std::collections::BTreeSet<_>>();
        if &covered != graph.vertices() {
            return Err(GeometryError::VertexCoverMismatch);
        }
        Ok(Framework { graph, config })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn config(&self) -> &Configuration {
        &self.config
    }

    pub fn dim(&self) -> usize {
        self.config.dim()
    }

    /// Same graph, different configuration.
    pub fn with_config(&self, config: Configuration) -> Result<Self, GeometryError> {
        Framework::new(self.graph.clone(), config)
    }

    fn edge_squared_length(&self, edge: &Edge) -> Rational {
        let (u, v) = edge.endpoints();
        // Both endpoints exist by the cover invariant.
        squared_distance(&self.config.points()[&u], &self.config.points()[&v])
            .expect("points of one configuration share a dimension")
    }

    /// Squared length of every edge.
    pub fn edge_length_profile(&self) -> EdgeLengthProfile {
        let lengths = self
            .graph
            .edges()
            .iter()
            .map(|e| (*e, self.edge_squared_length(e)))
            .collect();
        EdgeLengthProfile {
            dim: self.config.dim(),
            lengths,
        }
    }

    /// True iff `self` and `other` have the same squared length on every
    /// edge. Requires the same graph and ambient dimension.
    pub fn is_equivalent(&self, other: &Framework) -> Result<bool, GeometryError> {
        if self.graph != other.graph {
            return Err(GeometryError::GraphMismatch);
        }
        if self.dim() != other.dim() {
            return Err(GeometryError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self
            .graph
            .edges()
            .iter()
            .all(|e| self.edge_squared_length(e) == other.edge_squared_length(e)))
    }

    /// True iff squared distances agree for all vertex pairs, not just
    /// edges. Requires the same vertex ids and ambient dimension; the edge
    /// sets may differ.
    pub fn is_congruent(&self, other: &Framework) -> Result<bool, GeometryError> {
        if self.graph.vertices() != other.graph.vertices() {
            return Err(GeometryError::VertexSetMismatch);
        }
        if self.dim() != other.dim() {
            return Err(GeometryError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        let ids: Vec<VertexId> = self.graph.vertices().iter().copied().collect();
        for (i, &u) in ids.iter().enumerate() {
            for &v in &ids[i + 1..] {
                let ours = squared_distance(&self.config.points()[&u], &self.config.points()[&v])?;
                let theirs =
                    squared_distance(&other.config.points()[&u], &other.config.points()[&v])?;
                if ours != theirs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
