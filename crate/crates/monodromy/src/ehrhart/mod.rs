//! Weighted Ehrhart theory on lattice polytopes and their subdivisions:
//! g-polynomials of face intervals, link and local h-polynomials,
//! regular subdivisions, λ-weighted Ehrhart counts and the h*/l*
//! polynomials built from them.

mod poly;
mod poset;
mod subdivision;
mod weights;

pub use poly::{LaurentBiPoly, UniPoly};
pub use poset::{g_poly, FacePoset, Orientation};
pub use subdivision::{h_link, h_link_in, local_h, regular_subdivision, Cell, Subdivision};
pub use weights::{
    hstar, hstar_mixed, lstar, lstar_mixed, phi_weighted, AffineFunction, PiecewiseAffine, WeightedCounts,
    WeightedEhrhart,
};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::lattice_core::{GeometryError, IntVector};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EhrhartError {
    #[error("interval of dimensions [{lower_dim}, {upper_dim}] is not Eulerian")]
    NotEulerian { lower_dim: i64, upper_dim: i64 },
    #[error("not a subdivision: {0}")]
    NotASubdivision(String),
    #[error("values are not affine on the cell")]
    NotAffine,
    #[error("weight not vertex-integral: value {value} at vertex {vertex}")]
    NotVertexIntegral { vertex: IntVector, value: BigRational },
    #[error("ν not vertex-integral / polynomiality violated: predicted {predicted} points at m = {m}, counted {counted}")]
    PolynomialityViolated { m: u64, predicted: BigInt, counted: u64 },
    #[error("point {0} of the dilate lies in no cell")]
    NotCovered(IntVector),
    #[error("negative degree survives in {0}")]
    NegativeDegree(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}
