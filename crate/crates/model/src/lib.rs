//! Domain types shared by the energy formulas, the field solvers and the CLI.
//!
//! Lengths are stored in blown-up units, where a unit physical disk has radius
//! 1/ε² and the field equation reads Δu = u.

mod boundary;
mod config;
mod geometry;
mod potential;

pub use boundary::{make_canonical, BoundaryData, DataKind};
pub use config::{ConfigFile, DataInput, ParticleSpec, ScalingSpec};
pub use geometry::{closest_boundary_points, neck_gap, ClosestPoints, Particle, ParticleConfiguration, Point, Scaling};
pub use num_complex::Complex64;
pub use potential::PotentialParameters;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("particles {i} and {j} overlap or touch (gap b = {gap})")]
    Overlap { i: usize, j: usize, gap: f64 },
    #[error("invalid radius {0}: radii must be positive")]
    InvalidRadius(f64),
    #[error("invalid epsilon {0}: must lie in (0, 1]")]
    InvalidEpsilon(f64),
    #[error("invalid boundary data: {0}")]
    InvalidData(String),
    #[error("invalid potential: k(T) = {0} must exceed 4/3")]
    InvalidPotential(f64),
    #[error("config error in {path}: {message}")]
    Config { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, ModelError>;
