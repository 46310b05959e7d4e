//! Exact integer linear algebra and polyhedral geometry.

mod frame;
mod hull;
pub mod matrix;
mod points;
mod vector;
mod volume;

pub use frame::AffineLatticeFrame;
pub use hull::{
    convex_hull, lattice_frame, minkowski_sum, support_value, supporting_face, Face, Facet, LatticePolyhedron,
    LatticePolytope, Polyhedron,
};
pub use points::{lattice_points, LatticeScanner};
pub use vector::IntVector;
pub use volume::{mixed_volume, mixed_volume_of_points, normalized_volume};


#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("recession rays given without any point")]
    RaysWithoutPoints,
    #[error("no supporting face: the direction is unbounded below")]
    NoSupportingFace,
    #[error("polytope is not contained in the affine span of the frame")]
    NotInFrame,
    #[error("operation requires a bounded polytope")]
    Unbounded,
    #[error("coordinates too large for lattice point enumeration")]
    Overflow,
}
