//! Numerical solutions of Δu = u (and its nonlinear counterpart) outside a
//! finite union of disks with Dirichlet data, plus energy evaluation.
//!
//! The collocation solver expands the field in exact exterior solutions
//! K_m(ρ_j)e^{imθ_j} centred on each disk, so only the boundary misfit is
//! approximated. The finite-difference solvers serve as independent oracles.

mod collocation;
mod fd;
mod grid;
mod nonlinear;
mod tail;

pub use collocation::{energy_flux, energy_flux_with, flux_bilinear, solve_collocation, FieldSolution};
pub use fd::{solve_fd, solve_fd_with, FdOptions};
pub use grid::GridSolution;
pub use nonlinear::{solve_nonlinear, solve_nonlinear_with, BulkPotential, NonlinearOptions};
pub use tail::{radial_nonlinear_profile, tail_decay_rate, weighted_tail_difference, FieldSample, Ray};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FieldSolverError {
    #[error("normal equations are ill-conditioned (estimate {estimate:e}); use more collocation points or fewer modes")]
    IllConditioned { estimate: f64 },
    #[error("iteration did not converge after {iterations} steps (residual {residual:e})")]
    NonConverged { iterations: usize, residual: f64 },
    #[error("mesh too coarse: h = {h} exceeds {limit}")]
    MeshTooCoarse { h: f64, limit: f64 },
    #[error("insufficient decay along the ray: {0}")]
    InsufficientDecay(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Model(#[from] colloids_model::ModelError),
    #[error(transparent)]
    SpecFun(#[from] colloids_specfun::SpecFunError),
}

pub type Result<T> = std::result::Result<T, FieldSolverError>;
