//! Acceptance suite: one test per criterion, each printing a PASS line when
//! its assertions hold. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::process::Command;
use std::time::Instant;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use rigidkit::constructions::{
    contraction_map, family_configuration, family_framework, family_instance, ConfigLabel,
};
use rigidkit::enumeration::{
    decide_global_rigidity, detect_pendant_structure, enumerate_realizations, RigidityVerdict,
};
use rigidkit::geometry::{rat, squared_distance, Edge, Framework, Graph, Rational, VertexId};
use rigidkit::numeric::{
    best_isometry_distance, generic_global_rigidity, multi_start_solve, numeric_rank,
    real_coords, rigidity_matrix, RealCoords, SolverParams,
};

fn pendant_gap(label: Option<ConfigLabel>, dim: usize) -> Rational {
    let config = match label {
        Some(label) => family_configuration(dim, label).unwrap(),
        None => {
            let map = contraction_map(dim).unwrap();
            map.apply(&family_configuration(dim, ConfigLabel::P).unwrap())
                .unwrap()
        }
    };
    squared_distance(config.point(2).unwrap(), config.point(3).unwrap()).unwrap()
}

#[test]
fn criterion_1_exact_distance_table() {
    let p = family_configuration(2, ConfigLabel::P).unwrap();
    let q = family_configuration(2, ConfigLabel::Q).unwrap();
    assert_eq!(
        squared_distance(p.point(2).unwrap(), p.point(5).unwrap()).unwrap(),
        rat(29, 16)
    );
    assert_eq!(
        squared_distance(q.point(2).unwrap(), q.point(5).unwrap()).unwrap(),
        rat(2005, 400)
    );
    assert_eq!(pendant_gap(None, 2), rat(173, 100));
    assert_eq!(pendant_gap(Some(ConfigLabel::R), 2), rat(73, 100));
    assert_eq!(pendant_gap(Some(ConfigLabel::S), 2), rat(233, 100));
    assert_eq!(pendant_gap(Some(ConfigLabel::T), 2), rat(333, 100));
    println!("ACCEPTANCE 1: PASS — exact distance table (29/16, 2005/400, 173/100, 73/100, 233/100, 333/100)");
}

#[test]
fn criterion_2_verification_command_for_dims_2_through_8() {
    let binary = env!("CARGO_BIN_EXE_rigidkit");
    let mut elapsed_at_8 = 0.0;
    for dim in 2..=8 {
        let start = Instant::now();
        let output = Command::new(binary)
            .args(["paper-verify", "--dim", &dim.to_string()])
            .output()
            .expect("binary runs");
        let seconds = start.elapsed().as_secs_f64();
        if dim == 8 {
            elapsed_at_8 = seconds;
        }
        let stdout = String::from_utf8_lossy(&output.stdout);
        assert!(
            output.status.success(),
            "dimension {dim} exited with {:?}:\n{stdout}",
            output.status.code()
        );
        assert!(stdout.contains("decide(P) = not-globally-rigid"), "dim {dim}");
        assert!(stdout.contains("witness-congruent-to-Q = true"), "dim {dim}");
        assert!(stdout.contains("decide(AP) = globally-rigid"), "dim {dim}");
        assert!(stdout.contains("status: pass"), "dim {dim}");
    }

    // Same decision through the library, witness checked exactly.
    for dim in 2..=8 {
        let instance = family_instance(dim).unwrap();
        let primary = family_framework(dim, ConfigLabel::P, false).unwrap();
        let ps = detect_pendant_structure(&primary, instance.base_vertices()).unwrap();
        match decide_global_rigidity(&ps).unwrap() {
            RigidityVerdict::NotGloballyRigid { witness } => {
                let mirrored = family_framework(dim, ConfigLabel::Q, false).unwrap();
                let witness = primary.with_config(witness).unwrap();
                assert!(witness.is_congruent(&mirrored).unwrap());
            }
            other => panic!("dimension {dim}: expected a witness, got {other:?}"),
        }
    }
    assert!(
        elapsed_at_8 < 60.0,
        "dimension 8 took {elapsed_at_8:.1}s, budget is 60s"
    );
    println!(
        "ACCEPTANCE 2: PASS — paper-verify reproduces both verdicts for d=2..8 (d=8 in {elapsed_at_8:.1}s < 60s)"
    );
}

#[test]
fn criterion_3_equivalent_but_not_congruent_for_dims_2_through_8() {
    for dim in 2..=8 {
        let p = family_framework(dim, ConfigLabel::P, false).unwrap();
        let q = family_framework(dim, ConfigLabel::Q, false).unwrap();
        assert!(p.is_equivalent(&q).unwrap(), "dimension {dim}");
        assert!(!p.is_congruent(&q).unwrap(), "dimension {dim}");
    }
    println!("ACCEPTANCE 3: PASS — G_d(p) and G_d(q) equivalent but not congruent for d=2..8");
}

#[test]
fn criterion_4_mirror_points_match_closed_forms_for_dims_2_through_8() {
    for dim in 2..=8 {
        let r = family_configuration(dim, ConfigLabel::R).unwrap();
        let s = family_configuration(dim, ConfigLabel::S).unwrap();
        let mut expected_r3 = vec![rat(11, 20), rat(-1, 20)];
        expected_r3.resize(dim, rat(0, 1));
        let mut expected_s2 = vec![rat(-3, 4), rat(3, 4)];
        expected_s2.resize(dim, rat(0, 1));
        assert_eq!(r.point(3).unwrap(), &expected_r3, "dimension {dim}");
        assert_eq!(s.point(2).unwrap(), &expected_s2, "dimension {dim}");
    }
    println!(
        "ACCEPTANCE 4: PASS — reflection-generated r3 = (11/20, -1/20, 0, ...) and s2 = (-3/4, 3/4, 0, ...) for d=2..8"
    );
}

#[test]
fn criterion_5_enumeration_reproduces_the_four_planar_classes() {
    let map = contraction_map(2).unwrap();
    let image = map
        .apply(&family_configuration(2, ConfigLabel::P).unwrap())
        .unwrap();
    let reduced = family_framework(2, ConfigLabel::P, true)
        .unwrap()
        .with_config(image.clone())
        .unwrap();
    let base = family_instance(2).unwrap().base_vertices().clone();
    let ps = detect_pendant_structure(&reduced, &base).unwrap();
    let classes = enumerate_realizations(&ps).unwrap();
    assert_eq!(classes.len(), 4);

    let ap2 = vec![rat(-1, 4), rat(1, 4)];
    let ap3 = vec![rat(21, 20), rat(9, 20)];
    let x2 = vec![rat(-3, 4), rat(3, 4)];
    let x3 = vec![rat(11, 20), rat(-1, 20)];
    // The four mirror combinations, keyed by reflection mask.
    let expected: BTreeMap<Vec<bool>, (&Vec<Rational>, &Vec<Rational>)> = BTreeMap::from([
        (vec![false, false], (&ap2, &ap3)),
        (vec![false, true], (&ap2, &x3)),
        (vec![true, false], (&x2, &ap3)),
        (vec![true, true], (&x2, &x3)),
    ]);
    for class in &classes {
        let (two, three) = expected[&class.reflection_mask];
        assert_eq!(class.config.point(2).unwrap(), two);
        assert_eq!(class.config.point(3).unwrap(), three);
        for v in [1, 4, 5] {
            assert_eq!(class.config.point(v).unwrap(), image.point(v).unwrap());
        }
    }
    println!("ACCEPTANCE 5: PASS — exactly 4 realization classes at d=2 with the published mirror coordinates");
}

#[test]
fn criterion_6_solver_oracle_agrees_with_the_enumeration() {
    let started = Instant::now();
    for dim in [2usize, 3] {
        let instance = family_instance(dim).unwrap();
        let map = contraction_map(dim).unwrap();
        let image_config = map
            .apply(&family_configuration(dim, ConfigLabel::P).unwrap())
            .unwrap();
        let reduced = Framework::new(instance.graph_reduced().clone(), image_config).unwrap();

        // Enumerated classes, as real coordinates.
        let ps = detect_pendant_structure(&reduced, instance.base_vertices()).unwrap();
        let classes = enumerate_realizations(&ps).unwrap();
        assert_eq!(classes.len(), 4);
        let class_coords: Vec<RealCoords> =
            classes.iter().map(|c| real_coords(&c.config)).collect();

        // Target lengths from the exact profile.
        let target: BTreeMap<Edge, f64> = reduced
            .edge_length_profile()
            .lengths()
            .iter()
            .map(|(e, len)| {
                (*e, {
                    use num_traits::ToPrimitive;
                    len.to_f64().unwrap()
                })
            })
            .collect();

        let params = SolverParams {
            max_iterations: 500,
            residual_tolerance: 1e-10,
            damping_initial: 1e-3,
            seed: 2024,
        };
        let outcomes = multi_start_solve(reduced.graph(), &target, dim, 200, 2.0, &params);
        assert_eq!(outcomes.len(), 200);

        let mut hits = vec![0usize; classes.len()];
        let mut convergent = 0usize;
        for outcome in &outcomes {
            let (coords, residual) = match outcome {
                Ok(solved) => (&solved.coords, solved.residual),
                Err(stopped) => (&stopped.best_coords, stopped.best_residual),
            };
            if residual > 1e-8 {
                continue;
            }
            convergent += 1;
            let distances: Vec<f64> = class_coords
                .iter()
                .map(|c| best_isometry_distance(coords, c).unwrap())
                .collect();
            let (best_class, best_distance) = distances
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.total_cmp(b.1))
                .unwrap();
            assert!(
                *best_distance <= 1e-6,
                "dimension {dim}: convergent run sits {best_distance:.3e} away from every class"
            );
            hits[best_class] += 1;
        }
        assert!(convergent > 0, "dimension {dim}: no convergent runs");
        for (class, count) in hits.iter().enumerate() {
            assert!(
                *count > 0,
                "dimension {dim}: class {class} never hit in {convergent} convergent runs"
            );
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    assert!(elapsed < 30.0, "oracle run took {elapsed:.1}s, budget is 30s");
    println!(
        "ACCEPTANCE 6: PASS — 200 random starts at d=2 and d=3 land only on enumerated classes, all classes hit ({elapsed:.1}s < 30s)"
    );
}

#[test]
fn criterion_7_generic_graph_versus_non_generic_configuration() {
    let instance = family_instance(2).unwrap();
    let graph = instance.graph_full().clone();

    let first = generic_global_rigidity(&graph, 2, 32, 7).unwrap();
    assert!(first.certified(), "graph must certify as generically globally rigid");
    assert_eq!(first.caveat(), "certified");
    assert_eq!(first, generic_global_rigidity(&graph, 2, 32, 7).unwrap());

    let primary = family_framework(2, ConfigLabel::P, false).unwrap();
    let ps = detect_pendant_structure(&primary, instance.base_vertices()).unwrap();
    assert!(matches!(
        decide_global_rigidity(&ps).unwrap(),
        RigidityVerdict::NotGloballyRigid { .. }
    ));
    println!(
        "ACCEPTANCE 7: PASS — graph certified generically globally rigid while the primary configuration is not globally rigid"
    );
}

#[test]
fn criterion_8_infinitesimal_rigidity_sanity() {
    let primary = family_framework(2, ConfigLabel::P, false).unwrap();
    let coords = real_coords(primary.config());
    let rm = rigidity_matrix(primary.graph(), &coords).unwrap();
    assert_eq!(rm.matrix.shape(), (8, 10));
    assert_eq!(numeric_rank(&rm.matrix), 7); // 2·5 − 3

    let triangle = Graph::complete([1, 2, 3]).unwrap();
    let triangle_coords = RealCoords::from([
        (1, vec![0.0, 0.0]),
        (2, vec![1.0, 0.0]),
        (3, vec![0.0, 1.0]),
    ]);
    assert!(rigidkit::numeric::is_infinitesimally_rigid(&triangle, &triangle_coords).unwrap());

    let cycle = Graph::new([1, 2, 3, 4], [(1, 2), (2, 3), (3, 4), (1, 4)]).unwrap();
    let cycle_coords = RealCoords::from([
        (1, vec![0.0, 0.0]),
        (2, vec![1.0, 0.0]),
        (3, vec![1.0, 1.0]),
        (4, vec![0.0, 1.0]),
    ]);
    let cycle_rank = numeric_rank(&rigidity_matrix(&cycle, &cycle_coords).unwrap().matrix);
    assert_eq!(cycle_rank, 4); // below 2·4 − 3 = 5
    assert!(!rigidkit::numeric::is_infinitesimally_rigid(&cycle, &cycle_coords).unwrap());
    println!("ACCEPTANCE 8: PASS — rigidity-matrix ranks: family 7/7, triangle rigid, 4-cycle rank 4 < 5");
}

fn dyadic(rng: &mut ChaCha8Rng) -> f64 {
    f64::from(rng.next_u32() >> 11) / f64::from(1u32 << 20) - 1.0
}

#[test]
fn criterion_9_rigidity_rows_match_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(90);
    let mut checked_rows = 0usize;
    for case in 0..100 {
        let n = 2 + (rng.next_u32() as usize) % 7; // 2..=8 vertices
        let d = 1 + (rng.next_u32() as usize) % 4; // 1..=4 dimensions
        let vertices: Vec<VertexId> = (1..=n as VertexId).collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.next_u32() % 100 < 60 {
                    edges.push((vertices[i], vertices[j]));
                }
            }
        }
        if edges.is_empty() {
            edges.push((vertices[0], vertices[1]));
        }
        let graph = Graph::new(vertices.clone(), edges).unwrap();
        let coords: RealCoords = vertices
            .iter()
            .map(|&v| (v, (0..d).map(|_| dyadic(&mut rng)).collect()))
            .collect();
        let velocity: RealCoords = vertices
            .iter()
            .map(|&v| (v, (0..d).map(|_| dyadic(&mut rng)).collect()))
            .collect();

        let rm = rigidity_matrix(&graph, &coords).unwrap();
        let at = |t: f64, edge: &Edge| -> f64 {
            let (u, v) = edge.endpoints();
            let mut sq = 0.0;
            for c in 0..d {
                let diff = (coords[&u][c] + t * velocity[&u][c])
                    - (coords[&v][c] + t * velocity[&v][c]);
                sq += diff * diff;
            }
            sq
        };
        let h = 1e-5;
        for (row, edge) in rm.edges.iter().enumerate() {
            let mut analytic = 0.0;
            for (block, &v) in rm.vertices.iter().enumerate() {
                for c in 0..d {
                    analytic += rm.matrix[(row, block * d + c)] * velocity[&v][c];
                }
            }
            analytic *= 2.0;
            let finite = (at(h, edge) - at(-h, edge)) / (2.0 * h);
            let scale = analytic.abs().max(1.0);
            assert!(
                (analytic - finite).abs() <= 1e-6 * scale,
                "case {case}: row {row} analytic {analytic} vs finite {finite}"
            );
            checked_rows += 1;
        }
    }
    assert!(checked_rows > 100, "expected a meaningful number of rows");
    println!(
        "ACCEPTANCE 9: PASS — {checked_rows} rigidity-matrix rows across 100 random frameworks match finite differences at 1e-6 relative"
    );
}

// Report invariants that ride along with the acceptance of the reports
// themselves: byte-identical output for identical inputs.
#[test]
fn reports_and_documents_are_deterministic() {
    let binary = env!("CARGO_BIN_EXE_rigidkit");
    let first = Command::new(binary)
        .args(["paper-verify", "--dim", "3", "--json"])
        .output()
        .expect("binary runs");
    let second = Command::new(binary)
        .args(["paper-verify", "--dim", "3", "--json"])
        .output()
        .expect("binary runs");
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

// The base set must be valid for every family dimension the suite touches.
#[test]
fn family_bases_validate_for_the_whole_range() {
    for dim in 2..=8 {
        let instance = family_instance(dim).unwrap();
        let f = family_framework(dim, ConfigLabel::P, false).unwrap();
        let ps = detect_pendant_structure(&f, instance.base_vertices()).unwrap();
        assert_eq!(ps.pendants(), &[2, 3]);
        assert_eq!(ps.filter_edges().len(), 1);
        assert_eq!(
            instance.base_vertices(),
            &std::iter::once(1)
                .chain(4..=(instance.graph_full().vertex_count() as VertexId))
                .collect::<BTreeSet<_>>()
        );
    }
}
