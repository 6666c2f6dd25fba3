//! Damped least-squares realization solver.
//!
//! Minimizes Σ_e (‖pᵢ−pⱼ‖² − ℓ_e)² over configurations, where ℓ_e are the
//! target squared lengths. Working with squared lengths keeps the objective
//! smooth everywhere with an exact gradient, matching the exact layer's
//! squared-distance convention. The isometry gauge freedom makes the normal
//! equations singular, which is what the damping term absorbs.

use std::collections::BTreeMap;

use nalgebra::{Cholesky, DMatrix, DVector};
use rayon::prelude::*;
use thiserror::Error;

use super::{derive_rng, dyadic_unit, RealCoords};
use crate::geometry::{Edge, Graph, VertexId};

/// Tuning knobs for the solver. `seed` drives the multi-start inits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverParams {
    pub max_iterations: usize,
    pub residual_tolerance: f64,
    pub damping_initial: f64,
    pub seed: u64,
}

impl Default for SolverParams {
    fn default() -> Self {
        SolverParams {
            max_iterations: 200,
            residual_tolerance: 1e-10,
            damping_initial: 1e-3,
            seed: 1,
        }
    }
}

/// A solver run that reached the residual tolerance.
#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub coords: RealCoords,
    /// Final L2 norm of the squared-length residual vector.
    pub residual: f64,
    pub iterations: usize,
    /// Residual after each accepted step; non-increasing.
    pub accepted_residuals: Vec<f64>,
}

/// The iteration budget ran out before the tolerance was met. A signal, not
/// a contract failure: infeasible targets end up here.
#[derive(Debug, Clone, Error)]
#[error("no convergence after {iterations} iterations; best residual {best_residual:.3e}")]
pub struct NoConvergence {
    pub best_residual: f64,
    pub iterations: usize,
    pub best_coords: RealCoords,
}

fn stack(vertices: &[VertexId], coords: &RealCoords, dim: usize) -> DVector<f64> {
    let mut x = DVector::zeros(vertices.len() * dim);
    for (i, v) in vertices.iter().enumerate() {
        for c in 0..dim {
            x[i * dim + c] = coords[v][c];
        }
    }
    x
}

fn unstack(vertices: &[VertexId], x: &DVector<f64>, dim: usize) -> RealCoords {
    vertices
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, (0..dim).map(|c| x[i * dim + c]).collect()))
        .collect()
}

struct Objective {
    edges: Vec<(usize, usize)>,
    targets: Vec<f64>,
    dim: usize,
    n: usize,
}

impl Objective {
    fn residual(&self, x: &DVector<f64>) -> DVector<f64> {
        let mut r = DVector::zeros(self.edges.len());
        for (row, &(iu, iv)) in self.edges.iter().enumerate() {
            let mut sq = 0.0;
            for c in 0..self.dim {
                let diff = x[iu * self.dim + c] - x[iv * self.dim + c];
                sq += diff * diff;
            }
            r[row] = sq - self.targets[row];
        }
        r
    }

    fn jacobian(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let mut j = DMatrix::zeros(self.edges.len(), self.n * self.dim);
        for (row, &(iu, iv)) in self.edges.iter().enumerate() {
            for c in 0..self.dim {
                let diff = x[iu * self.dim + c] - x[iv * self.dim + c];
                j[(row, iu * self.dim + c)] = 2.0 * diff;
                j[(row, iv * self.dim + c)] = -2.0 * diff;
            }
        }
        j
    }
}

/// Runs the damped least-squares iteration from the given initial
/// configuration.
///
/// The target must assign a squared length to exactly the graph's edges.
/// Convergence means the L2 residual norm dropped to `residual_tolerance`.
pub fn solve_realization(
    graph: &Graph,
    target: &BTreeMap<Edge, f64>,
    init: &RealCoords,
    params: &SolverParams,
) -> Result<SolveOutcome, NoConvergence> {
    assert!(params.max_iterations >= 1, "need at least one iteration");
    assert!(params.residual_tolerance > 0.0, "tolerance must be positive");
    let edge_list: Vec<Edge> = graph.edges().iter().copied().collect();
    assert_eq!(
        target.len(),
        edge_list.len(),
        "target must cover exactly the graph's edges"
    );
    let vertices: Vec<VertexId> = graph.vertices().iter().copied().collect();
    let index: BTreeMap<VertexId, usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let dim = init
        .values()
        .next()
        .map(Vec::len)
        .expect("initial configuration is nonempty");

    let objective = Objective {
        edges: edge_list
            .iter()
            .map(|e| {
                let (u, v) = e.endpoints();
                (index[&u], index[&v])
            })
            .collect(),
        targets: edge_list
            .iter()
            .map(|e| *target.get(e).expect("target covers every edge"))
            .collect(),
        dim,
        n: vertices.len(),
    };

    let mut x = stack(&vertices, init, dim);
    let mut residual = objective.residual(&x).norm();
    let mut damping = params.damping_initial;
    let mut accepted = vec![residual];
    let mut iterations = 0;

    while iterations < params.max_iterations && residual > params.residual_tolerance {
        iterations += 1;
        let r = objective.residual(&x);
        let j = objective.jacobian(&x);
        let mut normal = j.transpose() * &j;
        for i in 0..normal.nrows() {
            normal[(i, i)] += damping;
        }
        let gradient = j.transpose() * &r;
        let step = match Cholesky::new(normal) {
            Some(chol) => chol.solve(&(-&gradient)),
            None => {
                damping *= 10.0;
                if damping > 1e15 {
                    break;
                }
                continue;
            }
        };
        let candidate = &x + step;
        let candidate_residual = objective.residual(&candidate).norm();
        if candidate_residual < residual {
            x = candidate;
            residual = candidate_residual;
            accepted.push(residual);
            damping = (damping / 10.0).max(1e-15);
        } else {
            damping *= 10.0;
            if damping > 1e15 {
                break;
            }
        }
    }

    let coords = unstack(&vertices, &x, dim);
    if residual <= params.residual_tolerance {
        Ok(SolveOutcome {
            coords,
            residual,
            iterations,
            accepted_residuals: accepted,
        })
    } else {
        Err(NoConvergence {
            best_residual: residual,
            iterations,
            best_coords: coords,
        })
    }
}

/// Runs `starts` independent solver runs from random dyadic initial
/// configurations in [−range, range]^d.
///
/// Start `i` draws from a stream derived from (params.seed, i), so the
/// result is deterministic and the list is ordered by start index
/// regardless of how the runs are scheduled.
pub fn multi_start_solve(
    graph: &Graph,
    target: &BTreeMap<Edge, f64>,
    dim: usize,
    starts: usize,
    range: f64,
    params: &SolverParams,
) -> Vec<Result<SolveOutcome, NoConvergence>> {
    let vertices: Vec<VertexId> = graph.vertices().iter().copied().collect();
    (0..starts)
        .into_par_iter()
        .map(|start| {
            let mut rng = derive_rng(params.seed, start as u64);
            let init: RealCoords = vertices
                .iter()
                .map(|&v| {
                    (
                        v,
                        (0..dim).map(|_| range * dyadic_unit(&mut rng)).collect(),
                    )
                })
                .collect();
            solve_realization(graph, target, &init, params)
        })
        .collect()
}
