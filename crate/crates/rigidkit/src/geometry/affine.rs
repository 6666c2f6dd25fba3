use num_traits::{One, Zero};

use super::{linalg, Configuration, GeometryError, Point, Rational};

/// An invertible affine transformation x ↦ Mx + t of ℚ^d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    matrix: Vec<Vec<Rational>>,
    translation: Vec<Rational>,
}

impl AffineMap {
    /// Builds the map from a row-major d×d matrix and a d-vector.
    /// Rejects non-square input and singular matrices.
    pub fn new(
        matrix: Vec<Vec<Rational>>,
        translation: Vec<Rational>,
    ) -> Result<Self, GeometryError> {
        let dim = matrix.len();
        for row in &matrix {
            if row.len() != dim {
                return Err(GeometryError::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
        }
        if translation.len() != dim {
            return Err(GeometryError::DimensionMismatch {
                expected: dim,
                found: translation.len(),
            });
        }
        if linalg::determinant(&matrix).is_zero() {
            return Err(GeometryError::SingularMatrix);
        }
        Ok(AffineMap {
            matrix,
            translation,
        })
    }

    pub fn identity(dim: usize) -> Self {
        let matrix = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        AffineMap {
            matrix,
            translation: vec![Rational::zero(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn translation(&self) -> &[Rational] {
        &self.translation
    }

    pub fn determinant(&self) -> Rational {
        linalg::determinant(&self.matrix)
    }

    /// Applies the map to a single point.
    pub fn apply_point(&self, p: &[Rational]) -> Result<Point, GeometryError> {
        if p.len() != self.dim() {
            return Err(GeometryError::DimensionMismatch {
                expected: self.dim(),
                found: p.len(),
            });
        }
        Ok(self
            .matrix
            .iter()
            .zip(&self.translation)
            .map(|(row, t)| {
                let mut acc = t.clone();
                for (m, x) in row.iter().zip(p) {
                    acc += m * x;
                }
                acc
            })
            .collect())
    }

    /// Applies the map to every point of a configuration.
    pub fn apply(&self, config: &Configuration) -> Result<Configuration, GeometryError> {
        if config.dim() != self.dim() {
            return Err(GeometryError::DimensionMismatch {
                expected: self.dim(),
                found: config.dim(),
            });
        }
        let points = config
            .points()
            .iter()
            .map(|(&v, p)| Ok((v, self.apply_point(p)?)))
            .collect::<Result<Vec<_>, GeometryError>>()?;
        Configuration::new(self.dim(), points)
    }

    /// The inverse map x ↦ M⁻¹(x − t). Always exists by the invertibility
    /// invariant.
    pub fn inverse(&self) -> AffineMap {
        let inv = linalg::invert(&self.matrix).expect("matrix is invertible by construction");
        let translation = inv
            .iter()
            .map(|row| {
                let mut acc = Rational::zero();
                for (m, t) in row.iter().zip(&self.translation) {
                    acc -= m * t;
                }
                acc
            })
            .collect();
        AffineMap {
            matrix: inv,
            translation,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{int, rat};

    fn y_halving() -> AffineMap {
        AffineMap::new(
            vec![vec![int(1), int(0)], vec![int(0), rat(1, 2)]],
            vec![int(0), int(0)],
        )
        .unwrap()
    }

    #[test]
    fn y_halving_moves_points_as_expected() {
        let m = y_halving();
        assert_eq!(
            m.apply_point(&[rat(21, 20), rat(9, 10)]).unwrap(),
            vec![rat(21, 20), rat(9, 20)]
        );
        assert_eq!(m.determinant(), rat(1, 2));
    }

    #[test]
    fn identity_fixes_configurations() {
        let config = Configuration::new(
            2,
            [(1, vec![rat(-1, 4), rat(1, 2)]), (2, vec![int(1), int(0)])],
        )
        .unwrap();
        let id = AffineMap::identity(2);
        assert_eq!(id.apply(&config).unwrap(), config);
    }

    #[test]
    fn inverse_undoes_the_map() {
        let m = AffineMap::new(
            vec![vec![int(2), int(1)], vec![int(1), int(1)]],
            vec![rat(1, 3), int(-2)],
        )
        .unwrap();
        let config = Configuration::new(
            2,
            [(1, vec![rat(7, 5), rat(-2, 9)]), (2, vec![int(4), int(11)])],
        )
        .unwrap();
        let roundtrip = m.inverse().apply(&m.apply(&config).unwrap()).unwrap();
        assert_eq!(roundtrip, config);
    }

    #[test]
    fn singular_matrix_is_rejected() {
        assert_eq!(
            AffineMap::new(
                vec![vec![int(1), int(2)], vec![int(2), int(4)]],
                vec![int(0), int(0)],
            ),
            Err(GeometryError::SingularMatrix)
        );
    }
}
