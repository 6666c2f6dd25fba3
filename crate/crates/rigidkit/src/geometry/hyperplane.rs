use num_traits::Zero;

use super::{linalg, GeometryError, Point, Rational};

/// A rational affine hyperplane, the locus ⟨normal, x⟩ = offset.
///
/// Stored in canonical form: the first nonzero coordinate of the normal is 1,
/// so equal hyperplanes are structurally equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperplane {
    normal: Vec<Rational>,
    offset: Rational,
}

impl Hyperplane {
    /// Builds a hyperplane from any nonzero normal and offset, canonicalizing
    /// the representation.
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Result<Self, GeometryError> {
        let Some(lead) = normal.iter().find(|c| !c.is_zero()).cloned() else {
            return Err(GeometryError::ZeroNormal);
        };
        let normal = normal.into_iter().map(|c| c / &lead).collect();
        Ok(Hyperplane {
            normal,
            offset: offset / lead,
        })
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn normal(&self) -> &[Rational] {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    /// ⟨normal, p⟩ − offset; zero exactly on the hyperplane.
    pub fn eval(&self, p: &[Rational]) -> Rational {
        assert_eq!(p.len(), self.dim(), "point and hyperplane dimensions differ");
        let mut acc = -self.offset.clone();
        for (n, x) in self.normal.iter().zip(p) {
            acc += n * x;
        }
        acc
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        self.eval(p).is_zero()
    }

    /// Mirror image of `p`: x − 2·(⟨n,x⟩−offset)/⟨n,n⟩ · n.
    ///
    /// The reflection is involutive and fixes the hyperplane pointwise, both
    /// exactly.
    pub fn reflect(&self, p: &[Rational]) -> Point {
        let value = self.eval(p);
        let mut norm_sq = Rational::zero();
        for n in &self.normal {
            norm_sq += n * n;
        }
        // norm_sq > 0 because the normal has a nonzero coordinate.
        let scale = (&value + &value) / norm_sq;
        p.iter()
            .zip(&self.normal)
            .map(|(x, n)| x - &scale * n)
            .collect()
    }
}

/// The unique hyperplane containing all given points.
///
/// Fails with `AffineSpanTooSmall` when the points' affine span has dimension
/// below d−1 and with `NotAHyperplane` when they span all of ℚ^d.
pub fn hyperplane_through(points: &[Point]) -> Result<Hyperplane, GeometryError> {
    let Some(first) = points.first() else {
        return Err(GeometryError::AffineSpanTooSmall {
            found: 0,
            needed: 0,
        });
    };
    let dim = first.len();
    for p in points {
        if p.len() != dim {
            return Err(GeometryError::DimensionMismatch {
                expected: dim,
                found: p.len(),
            });
        }
    }
    let differences: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    let kernel = linalg::kernel(differences, dim);
    match kernel.len() {
        0 => Err(GeometryError::NotAHyperplane),
        1 => {
            let normal = kernel.into_iter().next().expect("one kernel vector");
            let mut offset = Rational::zero();
            for (n, x) in normal.iter().zip(first) {
                offset += n * x;
            }
            Hyperplane::new(normal, offset)
        }
        excess => Err(GeometryError::AffineSpanTooSmall {
            found: dim - excess,
            needed: dim.saturating_sub(1),
        }),
    }
}
