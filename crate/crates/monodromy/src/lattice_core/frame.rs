use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix;
use super::vector::IntVector;

/// Affine lattice `base + (ℤⁿ ∩ L)` with an explicit lattice basis.
///
/// Internally keeps a unimodular matrix `W` whose first `dim` rows are the
/// coordinate functionals of the basis and whose remaining rows vanish on
/// `L`. Full-dimensional frames are always the standard one (origin base,
/// standard basis) so that frame and ambient coordinates coincide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineLatticeFrame {
    base_point: IntVector,
    basis: Vec<IntVector>,
    transform: Vec<Vec<BigInt>>,
    dim: usize,
}

impl AffineLatticeFrame {
    pub fn standard(n: usize) -> Self {
        let transform = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        AffineLatticeFrame {
            base_point: IntVector::zero(n),
            basis: (0..n).map(|i| IntVector::unit(n, i)).collect(),
            transform,
            dim: n,
        }
    }

    /// Frame of the affine lattice through `base` spanned by `directions`.
    pub fn spanned_by(base: &IntVector, directions: &[IntVector]) -> Self {
        let n = base.dim();
        let cols: Vec<Vec<BigInt>> = directions
            .iter()
            .filter(|d| !d.is_zero())
            .map(|d| d.coords().to_vec())
            .collect();
        let (w, k) = matrix::unimodular_row_reduction(&cols, n);
        if k == n {
            return Self::standard(n);
        }
        let inv = matrix::inverse(&w).expect("unimodular matrix is invertible");
        let basis = (0..k)
            .map(|j| {
                IntVector::new(
                    (0..n)
                        .map(|i| {
                            let x = &inv[i][j];
                            debug_assert!(x.is_integer());
                            x.to_integer()
                        })
                        .collect(),
                )
            })
            .collect();
        AffineLatticeFrame { base_point: base.clone(), basis, transform: w, dim: k }
    }

    /// Frame of the affine hull of `points`, based at the lexicographically
    /// smallest point. Returns `None` for an empty list.
    pub fn of_points(points: &[IntVector]) -> Option<Self> {
        let base = points.iter().min()?;
        let dirs: Vec<IntVector> = points.iter().map(|p| p - base).collect();
        Some(Self::spanned_by(base, &dirs))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.base_point.dim()
    }

    pub fn base_point(&self) -> &IntVector {
        &self.base_point
    }

    pub fn basis(&self) -> &[IntVector] {
        &self.basis
    }

    /// Frame coordinates of a direction vector, or `None` if it is not in `L`.
    pub fn direction_coordinates(&self, w: &IntVector) -> Option<Vec<BigInt>> {
        let image: Vec<BigInt> = self
            .transform
            .iter()
            .map(|row| row.iter().zip(w.coords()).map(|(a, b)| a * b).sum())
            .collect();
        if image[self.dim..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(image[..self.dim].to_vec())
    }

    /// Frame coordinates of a point, or `None` if it is off the affine span.
    pub fn coordinates(&self, x: &IntVector) -> Option<Vec<BigInt>> {
        self.direction_coordinates(&(x - &self.base_point))
    }

    pub fn contains(&self, x: &IntVector) -> bool {
        self.coordinates(x).is_some()
    }

    pub fn contains_direction(&self, w: &IntVector) -> bool {
        self.direction_coordinates(w).is_some()
    }

    /// The lattice vector `Σ zᵢ bᵢ`.
    pub fn direction(&self, z: &[BigInt]) -> IntVector {
        let mut v = IntVector::zero(self.ambient_dim()).into_coords();
        for (zi, b) in z.iter().zip(&self.basis) {
            for (x, y) in v.iter_mut().zip(b.coords()) {
                *x += zi * y;
            }
        }
        IntVector::new(v)
    }

    /// The point `base + Σ zᵢ bᵢ`.
    pub fn point(&self, z: &[BigInt]) -> IntVector {
        &self.base_point + &self.direction(z)
    }

    /// Integer ambient functional `a` with `⟨a, w⟩ = ⟨c, z(w)⟩` for every
    /// direction `w` in `L`.
    pub fn pullback(&self, c: &[BigInt]) -> IntVector {
        let n = self.ambient_dim();
        let mut a = vec![BigInt::zero(); n];
        for (ci, row) in c.iter().zip(&self.transform) {
            for (x, y) in a.iter_mut().zip(row) {
                *x += ci * y;
            }
        }
        IntVector::new(a)
    }

    /// Coefficients of the ambient functional `a` in frame coordinates:
    /// `⟨a, Σ zᵢ bᵢ⟩ = Σ zᵢ ⟨a, bᵢ⟩`.
    pub fn pushforward(&self, a: &IntVector) -> Vec<BigInt> {
        self.basis.iter().map(|b| a.dot(b)).collect()
    }
}
