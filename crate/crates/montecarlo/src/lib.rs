//! Metropolis–Hastings simulated annealing of unit disks interacting
//! through the short-range screened pair potential, plus the neighbour
//! statistics used to read off orientational order.
//!
//! Each chain owns a `ChaCha8Rng`. Per trial move the draws are, in order:
//! x step, y step, angle step (standard normals), then one acceptance
//! uniform. Draws are consumed even when a move is rejected early.

mod anneal;
mod state;
mod stats;

pub use anneal::{accept_move, anneal, anneal_chains, sweep, DecileRate, Schedule, Snapshot, Trajectory};
pub use state::{total_energy, AnnealState, Point, Protocol, ANGLE_STEP, STEP_MAX, STEP_MIN};
pub use stats::{mean_relative_cos, neighbor_stats, neighbor_stats_with_bins, Histogram, NeighborStats, NN_DISTANCE};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MonteCarloError {
    #[error("particles {i} and {j} overlap (center distance {distance})")]
    Overlap { i: usize, j: usize, distance: f64 },
    #[error("particle {index} lies outside the box")]
    OutOfBox { index: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, MonteCarloError>;
