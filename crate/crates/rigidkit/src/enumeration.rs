//! Exact enumeration of realizations for pendant-structured frameworks, and
//! the global-rigidity decision built on it.
//!
//! The analysis applies to frameworks of a specific shape: a set of base
//! vertices inducing a complete subgraph, plus pendant vertices attached
//! only to the base (pendant-pendant edges are allowed, but act purely as
//! length filters). A complete base is globally rigid, so up to congruence
//! the base joints can be held fixed; each pendant whose attachment points
//! span a hyperplane then has exactly two possible positions, itself and its
//! mirror image, and a pendant whose attachments span the whole space has
//! one. Enumerating the reflection masks lists every equivalence class of
//! the reduced framework (all edges except the filters); keeping the masks
//! whose filter-edge lengths match the input decides global rigidity of the
//! full framework.
//!
//! Frameworks outside this shape are rejected rather than mis-analyzed;
//! the generic randomized test in [`crate::numeric`] covers arbitrary
//! graphs. If some pendant's attachments span less than a hyperplane the
//! framework is flexible and the continuum of realizations is not
//! parameterized.
//!
//! Mask evaluation is pure and the result list is in binary-counting mask
//! order (first pendant most significant), independent of evaluation order.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::geometry::{
    hyperplane_through, linalg, squared_distance, Configuration, Edge, Framework, GeometryError,
    Point, Rational, VertexId,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("base vertex {vertex} is not a vertex of the framework")]
    UnknownBaseVertex { vertex: VertexId },
    #[error("base must be nonempty")]
    EmptyBase,
    #[error("every vertex is in the base; there are no pendants to enumerate")]
    EmptyPendants,
    #[error("base is not complete: missing edge {{{0},{1}}}", missing.0, missing.1)]
    BaseNotComplete { missing: (VertexId, VertexId) },
    #[error(
        "pendant {pendant} is attached to {neighbors} other pendants; only a direct \
         pendant-pendant filter edge is supported"
    )]
    PendantAttachedOutsideBase { pendant: VertexId, neighbors: usize },
    #[error(
        "attachment points of pendant {pendant} affinely span dimension {span_dim}, below a \
         hyperplane; the framework admits a continuum of realizations"
    )]
    ContinuumOfRealizations { pendant: VertexId, span_dim: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// A framework validated to have the complete-base-plus-pendants shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PendantStructure {
    framework: Framework,
    base: BTreeSet<VertexId>,
    pendants: Vec<VertexId>,
    filter_edges: BTreeSet<Edge>,
}

impl PendantStructure {
    pub fn framework(&self) -> &Framework {
        &self.framework
    }

    pub fn base(&self) -> &BTreeSet<VertexId> {
        &self.base
    }

    /// Pendant vertices in ascending id order.
    pub fn pendants(&self) -> &[VertexId] {
        &self.pendants
    }

    /// Pendant-pendant edges, used as length filters rather than
    /// enumeration constraints.
    pub fn filter_edges(&self) -> &BTreeSet<Edge> {
        &self.filter_edges
    }

    /// The framework on the reduced graph (filter edges removed).
    pub fn reduced_framework(&self) -> Framework {
        let graph = self.framework.graph().without_edges(&self.filter_edges);
        Framework::new(graph, self.framework.config().clone())
            .expect("removing edges preserves the vertex cover")
    }
}

/// One realization class: the configuration obtained by applying the given
/// per-pendant reflection mask to the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationClass {
    pub config: Configuration,
    pub reflection_mask: Vec<bool>,
}

/// Outcome of the global-rigidity decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RigidityVerdict {
    GloballyRigid,
    /// The witness is equivalent to, but not congruent with, the input.
    NotGloballyRigid { witness: Configuration },
    Flexible,
}

impl RigidityVerdict {
    pub fn status_str(&self) -> &'static str {
        match self {
            RigidityVerdict::GloballyRigid => "globally-rigid",
            RigidityVerdict::NotGloballyRigid { .. } => "not-globally-rigid",
            RigidityVerdict::Flexible => "flexible",
        }
    }
}

/// Validates that `base` induces a complete subgraph and that the remaining
/// vertices are pendants attached to the base, with pendant-pendant edges
/// only as direct filter edges.
pub fn detect_pendant_structure(
    framework: &Framework,
    base: &BTreeSet<VertexId>,
) -> Result<PendantStructure, EnumerationError> {
    if base.is_empty() {
        return Err(EnumerationError::EmptyBase);
    }
    let graph = framework.graph();
    for &v in base {
        if !graph.contains_vertex(v) {
            return Err(EnumerationError::UnknownBaseVertex { vertex: v });
        }
    }
    let pendants: Vec<VertexId> = graph
        .vertices()
        .iter()
        .copied()
        .filter(|v| !base.contains(v))
        .collect();
    if pendants.is_empty() {
        return Err(EnumerationError::EmptyPendants);
    }
    let base_list: Vec<VertexId> = base.iter().copied().collect();
    for (i, &a) in base_list.iter().enumerate() {
        for &b in &base_list[i + 1..] {
            if !graph.contains_edge(a, b) {
                return Err(EnumerationError::BaseNotComplete { missing: (a, b) });
            }
        }
    }
    let pendant_set: BTreeSet<VertexId> = pendants.iter().copied().collect();
    let mut filter_edges = BTreeSet::new();
    for &p in &pendants {
        let pendant_neighbors: Vec<VertexId> = graph
            .neighbors(p)
            .into_iter()
            .filter(|v| pendant_set.contains(v))
            .collect();
        if pendant_neighbors.len() > 1 {
            return Err(EnumerationError::PendantAttachedOutsideBase {
                pendant: p,
                neighbors: pendant_neighbors.len(),
            });
        }
        for q in pendant_neighbors {
            filter_edges.insert(Edge::new(p, q).expect("distinct pendant ids"));
        }
    }
    Ok(PendantStructure {
        framework: framework.clone(),
        base: base.clone(),
        pendants,
        filter_edges,
    })
}

/// Per-pendant candidate positions: the original point, plus the mirror
/// image when the attachment points span exactly a hyperplane.
fn pendant_positions(
    ps: &PendantStructure,
    pendant: VertexId,
) -> Result<Vec<Point>, EnumerationError> {
    let dim = ps.framework.dim();
    let config = ps.framework.config();
    let attachments: Vec<Point> = ps
        .framework
        .graph()
        .neighbors(pendant)
        .into_iter()
        .filter(|v| ps.base.contains(v))
        .map(|v| config.point(v).expect("framework covers its vertices").clone())
        .collect();
    let span_dim = linalg::affine_span_dim(&attachments);
    let original = config
        .point(pendant)
        .expect("framework covers its vertices")
        .clone();
    if span_dim == dim {
        return Ok(vec![original]);
    }
    if span_dim + 1 == dim {
        let mirror = hyperplane_through(&attachments)?;
        let reflected = mirror.reflect(&original);
        return Ok(vec![original, reflected]);
    }
    Err(EnumerationError::ContinuumOfRealizations {
        pendant,
        span_dim,
    })
}

/// Enumerates every equivalence class of realizations of the reduced
/// framework, as reflection masks over the pendants.
///
/// The returned list is in binary-counting mask order with the first
/// pendant as the most significant digit; the all-false mask reproduces the
/// input configuration identically. Every returned configuration is exactly
/// equivalent to the input on the reduced graph.
pub fn enumerate_realizations(
    ps: &PendantStructure,
) -> Result<Vec<RealizationClass>, EnumerationError> {
    let mut choices: Vec<Vec<(bool, Point)>> = Vec::with_capacity(ps.pendants.len());
    for &pendant in &ps.pendants {
        let positions = pendant_positions(ps, pendant)?;
        choices.push(
            positions
                .into_iter()
                .enumerate()
                .map(|(i, p)| (i == 1, p))
                .collect(),
        );
    }

    let mut classes: Vec<RealizationClass> = vec![RealizationClass {
        config: ps.framework.config().clone(),
        reflection_mask: Vec::new(),
    }];
    for (&pendant, options) in ps.pendants.iter().zip(&choices) {
        let mut extended = Vec::with_capacity(classes.len() * options.len());
        for class in &classes {
            for (flag, position) in options {
                let mut mask = class.reflection_mask.clone();
                mask.push(*flag);
                let config = class.config.with_point(pendant, position.clone())?;
                extended.push(RealizationClass {
                    config,
                    reflection_mask: mask,
                });
            }
        }
        classes = extended;
    }

    // Reflections fix each pendant's attachment hyperplane pointwise, so
    // every class realizes the reduced edge lengths exactly.
    let reduced = ps.reduced_framework();
    for class in &classes {
        let candidate = reduced.with_config(class.config.clone())?;
        assert!(
            reduced.is_equivalent(&candidate)?,
            "enumerated class must be equivalent on the reduced graph"
        );
    }
    Ok(classes)
}

/// The enumerated classes whose filter-edge squared lengths match the input
/// exactly — the equivalence classes of the full framework.
pub fn surviving_realizations(
    ps: &PendantStructure,
) -> Result<Vec<RealizationClass>, EnumerationError> {
    let classes = enumerate_realizations(ps)?;
    let config = ps.framework.config();
    let target: BTreeMap<Edge, Rational> = ps
        .filter_edges
        .iter()
        .map(|e| {
            let (u, v) = e.endpoints();
            let len = squared_distance(
                config.point(u).expect("framework covers its vertices"),
                config.point(v).expect("framework covers its vertices"),
            )
            .expect("points share a dimension");
            (*e, len)
        })
        .collect();
    Ok(classes
        .into_iter()
        .filter(|class| {
            target.iter().all(|(e, len)| {
                let (u, v) = e.endpoints();
                let have = squared_distance(
                    class.config.point(u).expect("class covers the vertices"),
                    class.config.point(v).expect("class covers the vertices"),
                )
                .expect("points share a dimension");
                have == *len
            })
        })
        .collect())
}

/// Decides global rigidity of the full framework by filtering the
/// enumerated classes on the filter-edge lengths and comparing the
/// survivors with the input up to congruence.
///
/// A pendant whose attachments span less than a hyperplane yields
/// [`RigidityVerdict::Flexible`].
pub fn decide_global_rigidity(
    ps: &PendantStructure,
) -> Result<RigidityVerdict, EnumerationError> {
    let survivors = match surviving_realizations(ps) {
        Ok(list) => list,
        Err(EnumerationError::ContinuumOfRealizations { .. }) => {
            return Ok(RigidityVerdict::Flexible)
        }
        Err(other) => return Err(other),
    };
    for class in &survivors {
        let candidate = ps.framework.with_config(class.config.clone())?;
        if !ps.framework.is_congruent(&candidate)? {
            assert!(
                ps.framework.is_equivalent(&candidate)?,
                "witness must be equivalent to the input on the full graph"
            );
            return Ok(RigidityVerdict::NotGloballyRigid {
                witness: class.config.clone(),
            });
        }
    }
    Ok(RigidityVerdict::GloballyRigid)
}

/// The exact squared distance profile over all vertex pairs, the invariant
/// that separates congruence classes.
fn pairwise_profile(config: &Configuration) -> BTreeMap<(VertexId, VertexId), Rational> {
    let ids: Vec<VertexId> = config.vertex_ids().collect();
    let mut profile = BTreeMap::new();
    for (i, &u) in ids.iter().enumerate() {
        for &v in &ids[i + 1..] {
            let len = squared_distance(
                config.point(u).expect("id from this configuration"),
                config.point(v).expect("id from this configuration"),
            )
            .expect("points share a dimension");
            profile.insert((u, v), len);
        }
    }
    profile
}

/// Number of distinct congruence classes among the given realization
/// classes, collapsed by the full pairwise distance profile.
pub fn congruence_class_count(classes: &[RealizationClass]) -> usize {
    let mut seen: Vec<BTreeMap<(VertexId, VertexId), Rational>> = Vec::new();
    for class in classes {
        let profile = pairwise_profile(&class.config);
        if !seen.contains(&profile) {
            seen.push(profile);
        }
    }
    seen.len()
}
