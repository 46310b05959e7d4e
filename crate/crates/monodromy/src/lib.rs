//! Exact combinatorial invariants of the Milnor monodromy of a rational
//! function `f = P/Q`, computed from Newton polyhedra.
//!
//! The crate is layered bottom-up:
//!
//! * [`lattice_core`]: integer vectors, lattice frames, convex hulls with
//!   face lattices, normalized and mixed volumes, lattice points.
//! * [`newton`]: sparse polynomials, Newton polyhedra, facet data.
//! * [`zeta`]: monodromy zeta functions, eigenvalue multiplicities,
//!   Lefschetz numbers, BKK Euler characteristics.
//! * [`ehrhart`]: g-, h- and local h-polynomials, weighted Ehrhart theory.
//! * [`spectrum`]: Cayley cells, Hodge-Deligne polynomials, Jordan
//!   blocks and the reduced Hodge spectrum.
//!
//! Everything is exact; no floating point is used anywhere.

pub mod ehrhart;
pub mod lattice_core;
pub mod newton;
pub mod spectrum;
pub mod zeta;
