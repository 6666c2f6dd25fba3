//! Floating-point rigidity machinery: rigidity matrices, infinitesimal
//! rigidity, equilibrium stresses, a randomized generic-global-rigidity
//! test, and a least-squares realization solver.
//!
//! This layer is the numeric counterpart of the exact modules. It never
//! decides anything about the exact constructions by itself; it serves as
//! an independent oracle (the solver re-discovers the enumerated
//! realization classes from random starts) and as the standard machinery
//! for questions the exact layer does not answer, like generic global
//! rigidity of a graph.
//!
//! Numeric rank uses a relative singular-value threshold of 1e-9: the
//! frameworks handled here have coordinates of order one, which leaves
//! several orders of magnitude of headroom in double precision.

mod procrustes;
mod solver;

pub use procrustes::best_isometry_distance;
pub use solver::{
    multi_start_solve, solve_realization, NoConvergence, SolveOutcome, SolverParams,
};

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_traits::ToPrimitive;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use thiserror::Error;

use crate::geometry::{Configuration, Edge, Graph, VertexId};

/// Singular values below this fraction of the largest count as zero.
pub const RANK_RELATIVE_TOLERANCE: f64 = 1e-9;

/// Vertex coordinates as doubles, keyed by vertex id.
pub type RealCoords = BTreeMap<VertexId, Vec<f64>>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vertex {vertex} has no coordinates")]
    MissingVertex { vertex: VertexId },
    #[error("coordinates of vertex {vertex} are not finite")]
    NonFiniteCoordinate { vertex: VertexId },
    #[error("points lie in a proper affine subspace of dimension {span} < {dim}")]
    DegenerateSpan { span: usize, dim: usize },
    #[error("the generic rigidity test needs at least {needed} vertices, got {found}")]
    TooFewVertices { found: usize, needed: usize },
}

/// Exact configuration lowered to doubles.
pub fn real_coords(config: &Configuration) -> RealCoords {
    config
        .points()
        .iter()
        .map(|(&v, p)| {
            let coords = p
                .iter()
                .map(|x| x.to_f64().expect("rational coordinate fits in an f64"))
                .collect();
            (v, coords)
        })
        .collect()
}

struct CheckedCoords<'a> {
    vertices: Vec<VertexId>,
    points: Vec<&'a [f64]>,
    dim: usize,
}

fn checked_coords<'a>(
    graph: &Graph,
    coords: &'a RealCoords,
) -> Result<CheckedCoords<'a>, NumericError> {
    let vertices: Vec<VertexId> = graph.vertices().iter().copied().collect();
    let mut dim = None;
    let mut points = Vec::with_capacity(vertices.len());
    for &v in &vertices {
        let p = coords
            .get(&v)
            .ok_or(NumericError::MissingVertex { vertex: v })?;
        if p.iter().any(|x| !x.is_finite()) {
            return Err(NumericError::NonFiniteCoordinate { vertex: v });
        }
        match dim {
            None => dim = Some(p.len()),
            Some(d) if d != p.len() => {
                return Err(NumericError::DimensionMismatch {
                    expected: d,
                    found: p.len(),
                })
            }
            Some(_) => {}
        }
        points.push(p.as_slice());
    }
    Ok(CheckedCoords {
        vertices,
        points,
        dim: dim.unwrap_or(0),
    })
}

/// The |E| × d·n rigidity matrix of a framework.
///
/// Rows follow ascending edge order and columns are vertex-major (vertex id
/// ascending, then coordinate). The row of edge {i,j} is zero except for the
/// block pᵢ−pⱼ in i's columns and pⱼ−pᵢ in j's columns.
#[derive(Debug, Clone)]
pub struct RigidityMatrix {
    pub dim: usize,
    /// Ascending; column block k belongs to `vertices[k]`.
    pub vertices: Vec<VertexId>,
    /// Ascending; row r belongs to `edges[r]`.
    pub edges: Vec<Edge>,
    pub matrix: DMatrix<f64>,
}

pub fn rigidity_matrix(graph: &Graph, coords: &RealCoords) -> Result<RigidityMatrix, NumericError> {
    let CheckedCoords {
        vertices,
        points,
        dim,
    } = checked_coords(graph, coords)?;
    let index: BTreeMap<VertexId, usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let edges: Vec<Edge> = graph.edges().iter().copied().collect();
    let mut matrix = DMatrix::zeros(edges.len(), dim * vertices.len());
    for (row, edge) in edges.iter().enumerate() {
        let (u, v) = edge.endpoints();
        let (iu, iv) = (index[&u], index[&v]);
        for c in 0..dim {
            let diff = points[iu][c] - points[iv][c];
            matrix[(row, iu * dim + c)] = diff;
            matrix[(row, iv * dim + c)] = -diff;
        }
    }
    Ok(RigidityMatrix {
        dim,
        vertices,
        edges,
        matrix,
    })
}

/// Rank with singular values below `RANK_RELATIVE_TOLERANCE` × σ_max
/// counted as zero.
pub fn numeric_rank(matrix: &DMatrix<f64>) -> usize {
    if matrix.nrows() == 0 || matrix.ncols() == 0 {
        return 0;
    }
    let singular_values = matrix.clone().svd(false, false).singular_values;
    let max = singular_values.max();
    if max <= 0.0 {
        return 0;
    }
    let tol = RANK_RELATIVE_TOLERANCE * max;
    singular_values.iter().filter(|&&s| s > tol).count()
}

/// Orthonormal basis of the right kernel { v : M v = 0 }.
///
/// The matrix is padded with zero rows when it is wider than tall, so the
/// thin SVD carries the full right factor and no kernel vector is lost.
fn right_kernel(matrix: &DMatrix<f64>) -> Vec<DVector<f64>> {
    let (rows, cols) = matrix.shape();
    if cols == 0 {
        return Vec::new();
    }
    let padded = if rows < cols {
        let mut p = DMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (rows, cols)).copy_from(matrix);
        p
    } else {
        matrix.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("right factor was requested");
    let singular_values = svd.singular_values;
    let max = singular_values.max().max(0.0);
    let tol = RANK_RELATIVE_TOLERANCE * max;
    (0..cols)
        .filter(|&i| i >= singular_values.len() || singular_values[i] <= tol)
        .map(|i| v_t.row(i).transpose())
        .collect()
}

/// Affine span dimension of the points: rank of the centered coordinate
/// matrix.
fn real_affine_span(points: &[&[f64]], dim: usize) -> usize {
    let n = points.len();
    if n == 0 {
        return 0;
    }
    let mut centroid = vec![0.0; dim];
    for p in points {
        for (c, x) in centroid.iter_mut().zip(*p) {
            *c += x;
        }
    }
    for c in &mut centroid {
        *c /= n as f64;
    }
    let centered = DMatrix::from_fn(n, dim, |i, j| points[i][j] - centroid[j]);
    numeric_rank(&centered)
}

/// True iff the rigidity matrix has maximal rank d·n − d(d+1)/2.
///
/// Requires the points to affinely span the whole space (which forces
/// n ≥ d+1); otherwise the rank bound does not apply and `DegenerateSpan`
/// is returned.
pub fn is_infinitesimally_rigid(graph: &Graph, coords: &RealCoords) -> Result<bool, NumericError> {
    let CheckedCoords { points, dim, .. } = checked_coords(graph, coords)?;
    let span = real_affine_span(&points, dim);
    if span < dim {
        return Err(NumericError::DegenerateSpan { span, dim });
    }
    let rm = rigidity_matrix(graph, coords)?;
    let n = rm.vertices.len();
    let target = dim * n - dim * (dim + 1) / 2;
    Ok(numeric_rank(&rm.matrix) == target)
}

/// An orthonormal basis of equilibrium stresses: the left kernel of the
/// rigidity matrix, expressed as per-edge coefficient vectors.
#[derive(Debug, Clone)]
pub struct StressBasis {
    /// Ascending edge order shared by all vectors.
    pub edges: Vec<Edge>,
    pub vectors: Vec<DVector<f64>>,
}

impl StressBasis {
    pub fn dimension(&self) -> usize {
        self.vectors.len()
    }
}

pub fn equilibrium_stress_basis(
    graph: &Graph,
    coords: &RealCoords,
) -> Result<StressBasis, NumericError> {
    let rm = rigidity_matrix(graph, coords)?;
    let vectors = right_kernel(&rm.matrix.transpose());
    Ok(StressBasis {
        edges: rm.edges,
        vectors,
    })
}

/// The n×n stress matrix Ω of an equilibrium stress ω: Ω_{ij} = −ω_{ij} on
/// edges, diagonal entries make every row sum to zero, zero elsewhere.
pub fn stress_matrix(
    vertices: &[VertexId],
    edges: &[Edge],
    omega: &DVector<f64>,
) -> DMatrix<f64> {
    assert_eq!(edges.len(), omega.len(), "one coefficient per edge");
    let index: BTreeMap<VertexId, usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let n = vertices.len();
    let mut m = DMatrix::zeros(n, n);
    for (e, edge) in edges.iter().enumerate() {
        let (u, v) = edge.endpoints();
        let (iu, iv) = (index[&u], index[&v]);
        m[(iu, iv)] -= omega[e];
        m[(iv, iu)] -= omega[e];
        m[(iu, iu)] += omega[e];
        m[(iv, iv)] += omega[e];
    }
    m
}

/// Deterministic generator for the given seed and stream index.
///
/// A splitmix64 step keeps distinct (seed, index) pairs well separated, so
/// per-trial and per-start streams never overlap.
pub(crate) fn derive_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    ChaCha8Rng::seed_from_u64(z ^ (z >> 31))
}

/// Dyadic sample on the 2^-20 grid in [-1, 1); exactly representable, so
/// runs reproduce bit for bit.
pub(crate) fn dyadic_unit(rng: &mut ChaCha8Rng) -> f64 {
    let bits = rng.next_u32() >> 11;
    f64::from(bits) / f64::from(1u32 << 20) - 1.0
}

/// Outcome of the randomized generic-global-rigidity test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenericGlobalRigidity {
    /// Some trial produced an equilibrium stress whose stress matrix has
    /// rank n − d − 1: the graph is generically globally rigid.
    Certified { trial: usize },
    /// No trial produced a full-rank stress matrix. This is a probabilistic
    /// negative, not a proof.
    NotObserved { trials: usize },
}

impl GenericGlobalRigidity {
    pub fn certified(&self) -> bool {
        matches!(self, GenericGlobalRigidity::Certified { .. })
    }

    pub fn caveat(&self) -> &'static str {
        match self {
            GenericGlobalRigidity::Certified { .. } => "certified",
            GenericGlobalRigidity::NotObserved { .. } => "not-observed",
        }
    }
}

/// Randomized stress-matrix rank test for generic global rigidity in
/// dimension `d`.
///
/// Each trial samples a configuration with dyadic coordinates in [−1,1],
/// takes a random stress from the equilibrium basis and checks whether its
/// stress matrix reaches rank n − d − 1. The result is deterministic for a
/// fixed (graph, d, trials, seed).
pub fn generic_global_rigidity(
    graph: &Graph,
    d: usize,
    trials: usize,
    seed: u64,
) -> Result<GenericGlobalRigidity, NumericError> {
    let n = graph.vertex_count();
    if n < d + 2 {
        return Err(NumericError::TooFewVertices {
            found: n,
            needed: d + 2,
        });
    }
    let vertices: Vec<VertexId> = graph.vertices().iter().copied().collect();
    for trial in 0..trials {
        let mut rng = derive_rng(seed, trial as u64);
        let coords: RealCoords = vertices
            .iter()
            .map(|&v| (v, (0..d).map(|_| dyadic_unit(&mut rng)).collect()))
            .collect();
        let basis = equilibrium_stress_basis(graph, &coords)?;
        if basis.vectors.is_empty() {
            continue;
        }
        let mut omega = DVector::zeros(basis.edges.len());
        for vector in &basis.vectors {
            let coefficient = dyadic_unit(&mut rng);
            omega += vector * coefficient;
        }
        let m = stress_matrix(&vertices, &basis.edges, &omega);
        if numeric_rank(&m) == n - d - 1 {
            return Ok(GenericGlobalRigidity::Certified { trial });
        }
    }
    Ok(GenericGlobalRigidity::NotObserved { trials })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{family_framework, ConfigLabel};
    use crate::geometry::Graph;

    fn triangle() -> (Graph, RealCoords) {
        let graph = Graph::complete([1, 2, 3]).unwrap();
        let coords = RealCoords::from([
            (1, vec![0.0, 0.0]),
            (2, vec![1.0, 0.0]),
            (3, vec![0.0, 1.0]),
        ]);
        (graph, coords)
    }

    fn unit_square_cycle() -> (Graph, RealCoords) {
        let graph = Graph::new([1, 2, 3, 4], [(1, 2), (2, 3), (3, 4), (1, 4)]).unwrap();
        let coords = RealCoords::from([
            (1, vec![0.0, 0.0]),
            (2, vec![1.0, 0.0]),
            (3, vec![1.0, 1.0]),
            (4, vec![0.0, 1.0]),
        ]);
        (graph, coords)
    }

    fn planar_family() -> (Graph, RealCoords) {
        let f = family_framework(2, ConfigLabel::P, false).unwrap();
        let coords = real_coords(f.config());
        (f.graph().clone(), coords)
    }

    #[test]
    fn single_edge_row_in_one_dimension() {
        let graph = Graph::new([1, 2], [(1, 2)]).unwrap();
        let coords = RealCoords::from([(1, vec![0.0]), (2, vec![1.0])]);
        let rm = rigidity_matrix(&graph, &coords).unwrap();
        assert_eq!(rm.matrix.shape(), (1, 2));
        assert_eq!(rm.matrix[(0, 0)], -1.0);
        assert_eq!(rm.matrix[(0, 1)], 1.0);
    }

    #[test]
    fn triangle_reaches_full_rank() {
        let (graph, coords) = triangle();
        let rm = rigidity_matrix(&graph, &coords).unwrap();
        assert_eq!(rm.matrix.shape(), (3, 6));
        assert_eq!(numeric_rank(&rm.matrix), 3);
        assert!(is_infinitesimally_rigid(&graph, &coords).unwrap());
        assert_eq!(
            equilibrium_stress_basis(&graph, &coords).unwrap().dimension(),
            0
        );
    }

    #[test]
    fn square_cycle_is_not_rigid() {
        let (graph, coords) = unit_square_cycle();
        let rm = rigidity_matrix(&graph, &coords).unwrap();
        assert_eq!(numeric_rank(&rm.matrix), 4); // below 2·4−3 = 5
        assert!(!is_infinitesimally_rigid(&graph, &coords).unwrap());
    }

    #[test]
    fn planar_family_rank_and_stress_dimension() {
        let (graph, coords) = planar_family();
        let rm = rigidity_matrix(&graph, &coords).unwrap();
        assert_eq!(rm.matrix.shape(), (8, 10));
        assert_eq!(numeric_rank(&rm.matrix), 7);
        assert!(is_infinitesimally_rigid(&graph, &coords).unwrap());
        let basis = equilibrium_stress_basis(&graph, &coords).unwrap();
        assert_eq!(basis.dimension(), 1);
    }

    #[test]
    fn generic_complete_graph_stress_dimension() {
        let graph = Graph::complete([1, 2, 3, 4]).unwrap();
        let mut rng = derive_rng(7, 0);
        let coords: RealCoords = graph
            .vertices()
            .iter()
            .map(|&v| (v, vec![dyadic_unit(&mut rng), dyadic_unit(&mut rng)]))
            .collect();
        let basis = equilibrium_stress_basis(&graph, &coords).unwrap();
        assert_eq!(basis.dimension(), 1); // 6 − 5
    }

    #[test]
    fn collinear_points_are_a_degenerate_span() {
        let graph = Graph::complete([1, 2, 3]).unwrap();
        let coords = RealCoords::from([
            (1, vec![0.0, 0.0]),
            (2, vec![1.0, 0.0]),
            (3, vec![2.0, 0.0]),
        ]);
        assert_eq!(
            is_infinitesimally_rigid(&graph, &coords),
            Err(NumericError::DegenerateSpan { span: 1, dim: 2 })
        );
    }

    #[test]
    fn stress_vectors_balance_at_every_vertex() {
        let (graph, coords) = planar_family();
        let rm = rigidity_matrix(&graph, &coords).unwrap();
        let basis = equilibrium_stress_basis(&graph, &coords).unwrap();
        for vector in &basis.vectors {
            let residual = rm.matrix.transpose() * vector;
            assert!(residual.amax() <= 1e-9, "per-vertex balance residual");
        }
    }

    #[test]
    fn stress_matrix_annihilates_ones_and_coordinates() {
        let (graph, coords) = planar_family();
        let basis = equilibrium_stress_basis(&graph, &coords).unwrap();
        let vertices: Vec<VertexId> = graph.vertices().iter().copied().collect();
        let omega = basis.vectors[0].clone();
        let m = stress_matrix(&vertices, &basis.edges, &omega);
        let ones = DVector::from_element(vertices.len(), 1.0);
        assert!((&m * ones).amax() <= 1e-8);
        let p = DMatrix::from_fn(vertices.len(), 2, |i, j| coords[&vertices[i]][j]);
        assert!((&m * p).amax() <= 1e-8);
    }

    #[test]
    fn generic_test_on_the_planar_family_graph() {
        let (graph, _) = planar_family();
        let result = generic_global_rigidity(&graph, 2, 32, 7).unwrap();
        assert!(result.certified());
        // Deterministic for a fixed seed.
        assert_eq!(result, generic_global_rigidity(&graph, 2, 32, 7).unwrap());
    }

    #[test]
    fn generic_test_rejects_the_flexible_cycle() {
        let (graph, _) = unit_square_cycle();
        let result = generic_global_rigidity(&graph, 2, 16, 3).unwrap();
        assert!(!result.certified());
        assert_eq!(result.caveat(), "not-observed");
    }

    #[test]
    fn generic_test_accepts_complete_graphs() {
        let graph = Graph::complete([1, 2, 3, 4, 5]).unwrap();
        let result = generic_global_rigidity(&graph, 2, 8, 11).unwrap();
        assert!(result.certified());
    }

    #[test]
    fn generic_test_needs_enough_vertices() {
        let graph = Graph::complete([1, 2, 3]).unwrap();
        assert_eq!(
            generic_global_rigidity(&graph, 2, 4, 1),
            Err(NumericError::TooFewVertices {
                found: 3,
                needed: 4
            })
        );
    }
}
