//! Slow, independent reference computations used to certify the
//! `monodromy` engine.
//!
//! Nothing here depends on the engine. Arithmetic is on `i64`/`i128`
//! with `num-rational` fractions, polytopes are brute-force half-space
//! descriptions, and every quantity is computed by the most literal route
//! available: lattice-point counts of dilates, finite differences,
//! staircase walks and term-by-term series evaluation.

pub mod geometry;
mod report;
mod spectrum;
mod volume;
mod zeta;

pub use report::OracleReport;
pub use spectrum::{spectrum_by_definition, Spectrum};
pub use volume::{mixed_volume_by_interpolation, volume_by_dilation};
pub use zeta::{zeta_infinity_cover_1d, zeta_staircase_2d, Factors};
