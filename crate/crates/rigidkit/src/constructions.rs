//! Generators for the built-in counterexample family.
//!
//! For every dimension d ≥ 2 the family consists of a graph `G_d` on
//! 2^{d−1}+3 vertices, its reduced companion `G̃_d` (the same graph minus
//! the edge {2,3}), and five named rational configurations. Vertices
//! 1, 4, 5, … form a complete base; vertices 2 and 3 are pendants, each
//! attached to vertex 1 and to half of the remaining base joints. The base
//! joints other than 1 sit on the corners of a (d−2)-cube crossed with the
//! segment x₁ = ±1, so each pendant's attachment points span exactly a
//! hyperplane and admit one mirror position.
//!
//! The labeled configurations: `P` is the primary placement, `Q` replaces
//! both pendants by their mirror images (so `G_d(P)` and `G_d(Q)` are
//! equivalent but not congruent), and `R`, `S`, `T` are the three mirror
//! variants of the affine image `A·P`, where `A` halves the second
//! coordinate. The {2,3} distances of `A·P`, `R`, `S`, `T` are pairwise
//! distinct, which is what makes `G_d(A·P)` globally rigid while `G_d(P)`
//! is not.

use std::collections::BTreeSet;

use num_traits::One;
use thiserror::Error;

use crate::geometry::{
    hyperplane_through, int, rat, AffineMap, Configuration, GeometryError, Graph, Hyperplane,
    Point, Rational, VertexId,
};

/// Errors from the family generators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("family instances require dimension at least 2, got {dim}")]
    DimensionTooSmall { dim: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// The five named configurations of the family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConfigLabel {
    /// Primary placement.
    P,
    /// Both pendants mirrored; equivalent to `P` but not congruent.
    Q,
    /// Affine image with pendant 3 mirrored.
    R,
    /// Affine image with both pendants mirrored.
    S,
    /// Affine image with pendant 2 mirrored.
    T,
}

impl ConfigLabel {
    pub const ALL: [ConfigLabel; 5] = [
        ConfigLabel::P,
        ConfigLabel::Q,
        ConfigLabel::R,
        ConfigLabel::S,
        ConfigLabel::T,
    ];

    /// True for the labels expressed in the affine image frame.
    pub fn in_affine_frame(&self) -> bool {
        matches!(self, ConfigLabel::R | ConfigLabel::S | ConfigLabel::T)
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ConfigLabel::P => "p",
            ConfigLabel::Q => "q",
            ConfigLabel::R => "r",
            ConfigLabel::S => "s",
            ConfigLabel::T => "t",
        }
    }
}

impl std::str::FromStr for ConfigLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "p" => Ok(ConfigLabel::P),
            "q" => Ok(ConfigLabel::Q),
            "r" => Ok(ConfigLabel::R),
            "s" => Ok(ConfigLabel::S),
            "t" => Ok(ConfigLabel::T),
            other => Err(format!("unknown configuration label `{other}`")),
        }
    }
}

/// One member of the family: the full and reduced graphs plus the split of
/// the vertex set into complete base and pendant vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyInstance {
    dim: usize,
    graph_full: Graph,
    graph_reduced: Graph,
    base_vertices: BTreeSet<VertexId>,
    pendant_vertices: (VertexId, VertexId),
}

impl FamilyInstance {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `G_d`, including the pendant-pendant edge {2,3}.
    pub fn graph_full(&self) -> &Graph {
        &self.graph_full
    }

    /// `G̃_d`, the full graph minus {2,3}.
    pub fn graph_reduced(&self) -> &Graph {
        &self.graph_reduced
    }

    pub fn base_vertices(&self) -> &BTreeSet<VertexId> {
        &self.base_vertices
    }

    pub fn pendant_vertices(&self) -> (VertexId, VertexId) {
        self.pendant_vertices
    }

    /// Base joints adjacent to pendant 2: vertex 1 and the even base ids.
    pub fn even_attachments(&self) -> Vec<VertexId> {
        let mut ids = vec![1];
        ids.extend(self.base_vertices.iter().copied().filter(|v| v % 2 == 0));
        ids
    }

    /// Base joints adjacent to pendant 3: vertex 1 and the odd base ids
    /// above 3.
    pub fn odd_attachments(&self) -> Vec<VertexId> {
        let mut ids = vec![1];
        ids.extend(
            self.base_vertices
                .iter()
                .copied()
                .filter(|&v| v > 3 && v % 2 == 1),
        );
        ids
    }
}

fn check_dim(d: usize) -> Result<(), FamilyError> {
    if d < 2 {
        return Err(FamilyError::DimensionTooSmall { dim: d });
    }
    assert!(d <= 32, "vertex ids overflow above dimension 32");
    Ok(())
}

fn vertex_count(d: usize) -> u64 {
    (1u64 << (d - 1)) + 3
}

/// All 2^k sign vectors (±1, …, ±1) of length `k`, in binary-counting order:
/// +1 for bit 0, −1 for bit 1, most significant coordinate first. For k = 0
/// the single empty vector.
pub fn hypercube_vertices(k: usize) -> Vec<Point> {
    (0..1u64 << k)
        .map(|index| {
            (0..k)
                .map(|coord| {
                    if (index >> (k - 1 - coord)) & 1 == 0 {
                        int(1)
                    } else {
                        int(-1)
                    }
                })
                .collect()
        })
        .collect()
}

/// Builds the graphs `G_d` and `G̃_d` and the base/pendant split.
pub fn family_instance(d: usize) -> Result<FamilyInstance, FamilyError> {
    check_dim(d)?;
    let n = vertex_count(d) as VertexId;
    let base_vertices: BTreeSet<VertexId> =
        std::iter::once(1).chain(4..=n).collect();
    let vertices: Vec<VertexId> = (1..=n).collect();

    let base: Vec<VertexId> = base_vertices.iter().copied().collect();
    let mut edges = Vec::new();
    for (i, &a) in base.iter().enumerate() {
        for &b in &base[i + 1..] {
            edges.push((a, b));
        }
    }
    // Pendant 2 attaches to 1 and the even base joints, pendant 3 to 1 and
    // the odd base joints.
    edges.push((1, 2));
    edges.push((1, 3));
    for k in 2..=(1u64 << (d - 2)) + 1 {
        edges.push((2, (2 * k) as VertexId));
        edges.push((3, (2 * k + 1) as VertexId));
    }
    let graph_reduced = Graph::new(vertices.clone(), edges.clone())?;
    edges.push((2, 3));
    let graph_full = Graph::new(vertices, edges)?;

    Ok(FamilyInstance {
        dim: d,
        graph_full,
        graph_reduced,
        base_vertices,
        pendant_vertices: (2, 3),
    })
}

/// First two coordinates as given, zero-padded to dimension `d`.
fn planar_point(d: usize, x: Rational, y: Rational) -> Point {
    let mut p = Vec::with_capacity(d);
    p.push(x);
    p.push(y);
    p.resize(d, int(0));
    p
}

/// (x, 0, w) for a cube corner `w` of dimension d−2.
fn base_point(x: Rational, w: &[Rational]) -> Point {
    let mut p = Vec::with_capacity(w.len() + 2);
    p.push(x);
    p.push(int(0));
    p.extend(w.iter().cloned());
    p
}

fn primary_points(d: usize, cube: &[Point]) -> Vec<(VertexId, Point)> {
    let mut points = vec![
        (1, planar_point(d, int(0), int(2))),
        (2, planar_point(d, rat(-1, 4), rat(1, 2))),
        (3, planar_point(d, rat(21, 20), rat(9, 10))),
    ];
    for (j, w) in cube.iter().enumerate() {
        // Base joints come in pairs (−1, 0, w) and (1, 0, w); the paired
        // vertex ids are 2(j+2) and 2(j+2)+1.
        let even = 2 * (j as VertexId + 2);
        points.push((even, base_point(int(-1), w)));
        points.push((even + 1, base_point(int(1), w)));
    }
    points
}

/// The contraction halving the second coordinate: identity matrix except
/// entry (2,2) = 1/2, zero translation.
pub fn contraction_map(d: usize) -> Result<AffineMap, FamilyError> {
    check_dim(d)?;
    let mut matrix: Vec<Vec<Rational>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| if i == j { Rational::one() } else { int(0) })
                .collect()
        })
        .collect();
    matrix[1][1] = rat(1, 2);
    Ok(AffineMap::new(matrix, vec![int(0); d])?)
}

/// The labeled configuration of the family in dimension `d`.
///
/// `P` and `Q` are produced from their closed-form coordinates; `R`, `S`,
/// `T` are produced constructively from the affine image of `P` by
/// reflecting pendant points across the symmetry hyperplanes.
pub fn family_configuration(d: usize, label: ConfigLabel) -> Result<Configuration, FamilyError> {
    check_dim(d)?;
    let cube = hypercube_vertices(d - 2);
    let mut points = primary_points(d, &cube);
    match label {
        ConfigLabel::P => {}
        ConfigLabel::Q => {
            points[0].1 = planar_point(d, int(0), int(2));
            points[1].1 = planar_point(d, rat(-21, 20), rat(9, 10));
            points[2].1 = planar_point(d, rat(1, 4), rat(1, 2));
        }
        ConfigLabel::R | ConfigLabel::S | ConfigLabel::T => {
            let map = contraction_map(d)?;
            let primary = Configuration::new(d, points)?;
            let image = map.apply(&primary)?;
            let (pendant_two_mirror, pendant_three_mirror) = symmetry_hyperplanes(d, Some(&map))?;
            let mut image_points: Vec<(VertexId, Point)> = image
                .points()
                .iter()
                .map(|(&v, p)| (v, p.clone()))
                .collect();
            if matches!(label, ConfigLabel::S | ConfigLabel::T) {
                image_points[1].1 = pendant_two_mirror.reflect(&image_points[1].1);
                debug_assert_eq!(image_points[1].1, planar_point(d, rat(-3, 4), rat(3, 4)));
            }
            if matches!(label, ConfigLabel::R | ConfigLabel::S) {
                image_points[2].1 = pendant_three_mirror.reflect(&image_points[2].1);
                debug_assert_eq!(image_points[2].1, planar_point(d, rat(11, 20), rat(-1, 20)));
            }
            return Ok(Configuration::new(d, image_points)?);
        }
    }
    Ok(Configuration::new(d, points)?)
}

/// The framework `G_d(label)` (or `G̃_d(label)` with `reduced = true`).
pub fn family_framework(
    d: usize,
    label: ConfigLabel,
    reduced: bool,
) -> Result<crate::geometry::Framework, FamilyError> {
    let instance = family_instance(d)?;
    let graph = if reduced {
        instance.graph_reduced
    } else {
        instance.graph_full
    };
    let config = family_configuration(d, label)?;
    Ok(crate::geometry::Framework::new(graph, config)?)
}

/// The two symmetry hyperplanes of the primary configuration: the first
/// passes through joint 1 and all even-indexed base joints (pendant 2's
/// attachments), the second through joint 1 and all odd-indexed base joints
/// (pendant 3's attachments). With `image_of`, the hyperplanes through the
/// mapped points instead.
pub fn symmetry_hyperplanes(
    d: usize,
    image_of: Option<&AffineMap>,
) -> Result<(Hyperplane, Hyperplane), FamilyError> {
    check_dim(d)?;
    let instance = family_instance(d)?;
    let config = family_configuration(d, ConfigLabel::P)?;
    let config = match image_of {
        Some(map) => map.apply(&config)?,
        None => config,
    };
    let gather = |ids: &[VertexId]| -> Vec<Point> {
        ids.iter()
            .map(|v| config.point(*v).expect("family vertex has a point").clone())
            .collect()
    };
    let pendant_two = hyperplane_through(&gather(&instance.even_attachments()))?;
    let pendant_three = hyperplane_through(&gather(&instance.odd_attachments()))?;
    Ok((pendant_two, pendant_three))
}
