//! Orthogonal Procrustes alignment for numeric congruence checks.

use nalgebra::DMatrix;

use super::{NumericError, RealCoords};

/// Root-mean-square point distance after the best rigid alignment of `a`
/// onto `b`: optimal translation plus an orthogonal map.
///
/// Reflections are allowed, matching the distance-based notion of
/// congruence, which is blind to orientation.
pub fn best_isometry_distance(a: &RealCoords, b: &RealCoords) -> Result<f64, NumericError> {
    if a.keys().ne(b.keys()) {
        let vertex = a
            .keys()
            .find(|v| !b.contains_key(v))
            .or_else(|| b.keys().find(|v| !a.contains_key(v)))
            .copied()
            .unwrap_or_default();
        return Err(NumericError::MissingVertex { vertex });
    }
    let n = a.len();
    if n == 0 {
        return Ok(0.0);
    }
    let dim = a.values().next().expect("nonempty").len();
    for (v, p) in a.iter().chain(b.iter()) {
        if p.len() != dim {
            return Err(NumericError::DimensionMismatch {
                expected: dim,
                found: p.len(),
            });
        }
        if p.iter().any(|x| !x.is_finite()) {
            return Err(NumericError::NonFiniteCoordinate { vertex: *v });
        }
    }

    let centered = |coords: &RealCoords| -> DMatrix<f64> {
        let mut centroid = vec![0.0; dim];
        for p in coords.values() {
            for (c, x) in centroid.iter_mut().zip(p) {
                *c += x / n as f64;
            }
        }
        let rows: Vec<&Vec<f64>> = coords.values().collect();
        DMatrix::from_fn(n, dim, |i, j| rows[i][j] - centroid[j])
    };
    let p = centered(a);
    let q = centered(b);

    // Maximize tr(R · PᵀQ) over orthogonal R: with PᵀQ = UΣVᵀ the optimum
    // is R = VUᵀ (no determinant correction, reflections permitted).
    let h = p.transpose() * &q;
    let svd = h.svd(true, true);
    let u = svd.u.expect("left factor requested");
    let v_t = svd.v_t.expect("right factor requested");
    let rotation = v_t.transpose() * u.transpose();

    let aligned = &p * rotation.transpose();
    let difference = aligned - q;
    Ok((difference.norm_squared() / n as f64).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{family_configuration, ConfigLabel};
    use crate::numeric::real_coords;

    fn square() -> RealCoords {
        RealCoords::from([
            (1, vec![0.0, 0.0]),
            (2, vec![1.0, 0.0]),
            (3, vec![1.0, 1.0]),
            (4, vec![0.0, 1.0]),
        ])
    }

    #[test]
    fn quarter_turn_aligns_to_zero() {
        let a = square();
        let rotated: RealCoords = a
            .iter()
            .map(|(&v, p)| (v, vec![-p[1], p[0]]))
            .collect();
        assert!(best_isometry_distance(&a, &rotated).unwrap() < 1e-12);
    }

    #[test]
    fn translation_aligns_to_zero() {
        let a = square();
        let moved: RealCoords = a
            .iter()
            .map(|(&v, p)| (v, vec![p[0] + 5.25, p[1] - 3.5]))
            .collect();
        assert!(best_isometry_distance(&a, &moved).unwrap() < 1e-12);
    }

    #[test]
    fn mirrored_point_sets_align_to_zero() {
        let a = square();
        let mirrored: RealCoords = a
            .iter()
            .map(|(&v, p)| (v, vec![-p[0], p[1]]))
            .collect();
        assert!(best_isometry_distance(&a, &mirrored).unwrap() < 1e-12);
    }

    #[test]
    fn non_congruent_family_configurations_stay_apart() {
        let p = real_coords(&family_configuration(2, ConfigLabel::P).unwrap());
        let q = real_coords(&family_configuration(2, ConfigLabel::Q).unwrap());
        assert!(best_isometry_distance(&p, &q).unwrap() > 0.1);
    }

    #[test]
    fn mismatched_vertex_sets_are_rejected() {
        let a = square();
        let mut b = square();
        b.remove(&4);
        b.insert(9, vec![0.0, 1.0]);
        assert!(matches!(
            best_isometry_distance(&a, &b),
            Err(NumericError::MissingVertex { .. })
        ));
    }
}
