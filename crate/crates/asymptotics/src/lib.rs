//! Asymptotic energies of disks carrying Dirichlet data in a screened medium.
//!
//! Energies are κ = ∫(|∇u|² + |u|²) over the exterior domain, i.e. twice the
//! quadratic functional F. Lengths are in blown-up units (disk radius 1/ε²).

mod energy;
mod pair_potential;

pub use energy::{
    multi_particle_energy, neck_o1, nonconstant_pair_energy, pair_energy, self_energy_blown_up,
    self_energy_mode, two_particle_large_b, two_particle_o1, EnergyBreakdown, MultiParticleOptions, NeckMethod,
};
pub use pair_potential::{mc_pair_potential, PairPotentialSpec};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AsymptoticsError {
    #[error(transparent)]
    SpecFun(#[from] colloids_specfun::SpecFunError),
    #[error(transparent)]
    Model(#[from] colloids_model::ModelError),
    #[error("invalid input: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, AsymptoticsError>;
