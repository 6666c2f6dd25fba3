use std::collections::BTreeSet;

use super::GeometryError;

/// Identifier of a joint. Ids are arbitrary positive integers; nothing
/// assumes they are consecutive.
pub type VertexId = u32;

/// An unordered pair of distinct vertices, stored smaller id first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(VertexId, VertexId);

impl Edge {
    pub fn new(a: VertexId, b: VertexId) -> Result<Self, GeometryError> {
        if a == 0 || b == 0 {
            return Err(GeometryError::NonPositiveVertexId);
        }
        if a == b {
            return Err(GeometryError::SelfLoop { vertex: a });
        }
        Ok(if a < b { Edge(a, b) } else { Edge(b, a) })
    }

    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.0, self.1)
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint that is not `v`, if `v` is an endpoint at all.
    pub fn other(&self, v: VertexId) -> Option<VertexId> {
        match v {
            _ if v == self.0 => Some(self.1),
            _ if v == self.1 => Some(self.0),
            _ => None,
        }
    }
}

impl std::fmt::Display for Edge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{{},{}}}", self.0, self.1)
    }
}

/// A finite simple graph: an ordered vertex set and a deduplicated set of
/// unordered edges between distinct vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeSet<Edge>,
}

impl Graph {
    pub fn new(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, GeometryError> {
        let vertices: BTreeSet<VertexId> = vertices.into_iter().collect();
        if vertices.contains(&0) {
            return Err(GeometryError::NonPositiveVertexId);
        }
        let mut edge_set = BTreeSet::new();
        for (a, b) in edges {
            let edge = Edge::new(a, b)?;
            let (u, v) = edge.endpoints();
            for endpoint in [u, v] {
                if !vertices.contains(&endpoint) {
                    return Err(GeometryError::MissingEndpoint { vertex: endpoint });
                }
            }
            edge_set.insert(edge);
        }
        Ok(Graph {
            vertices,
            edges: edge_set,
        })
    }

    /// Complete graph on the given vertices.
    pub fn complete(vertices: impl IntoIterator<Item = VertexId>) -> Result<Self, GeometryError> {
        let vertices: Vec<VertexId> = vertices.into_iter().collect();
        let mut edges = Vec::new();
        for (i, &a) in vertices.iter().enumerate() {
            for &b in &vertices[i + 1..] {
                edges.push((a, b));
            }
        }
        Graph::new(vertices, edges)
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn contains_edge(&self, a: VertexId, b: VertexId) -> bool {
        Edge::new(a, b).is_ok_and(|e| self.edges.contains(&e))
    }

    pub fn neighbors(&self, v: VertexId) -> BTreeSet<VertexId> {
        self.edges.iter().filter_map(|e| e.other(v)).collect()
    }

    /// Same vertex set, with the given edges removed.
    pub fn without_edges(&self, removed: &BTreeSet<Edge>) -> Graph {
        Graph {
            vertices: self.vertices.clone(),
            edges: self.edges.difference(removed).copied().collect(),
        }
    }
}
