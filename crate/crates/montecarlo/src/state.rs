use std::f64::consts::TAU;

use colloids_asymptotics::{mc_pair_potential, PairPotentialSpec};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::{MonteCarloError, Result};

pub type Point = [f64; 2];

/// Cutoff gap in units of ε², matching the pair potential.
const CUTOFF_FACTOR: f64 = 30.0;

/// Lower and upper clamp of the positional step size.
pub const STEP_MIN: f64 = 0.025;
pub const STEP_MAX: f64 = 0.5;
/// Standard deviation of the angular step.
pub const ANGLE_STEP: f64 = TAU / 50.0;

/// Initial-lattice and potential parameters of an annealing run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Protocol {
    /// Particles per lattice row; N = side².
    pub side: usize,
    pub spacing: f64,
    /// Half-width of the uniform positional jitter.
    pub jitter: f64,
    pub epsilon_sq: f64,
    pub box_half_width: f64,
    pub degree: i32,
    /// Optional second species for mixed systems.
    pub second_degree: Option<i32>,
    /// Fraction of particles carrying `second_degree`.
    pub second_fraction: f64,
    /// Include the proposal-density ratio in the acceptance test.
    pub hastings: bool,
}

impl Default for Protocol {
    fn default() -> Self {
        Self {
            side: 16,
            spacing: 2.2,
            jitter: 0.05,
            epsilon_sq: PairPotentialSpec::DEFAULT_EPSILON_SQ,
            box_half_width: 23.0,
            degree: 2,
            second_degree: None,
            second_fraction: 0.5,
            hastings: true,
        }
    }
}

/// Positions, orientations and degrees of N unit disks plus the chain's RNG.
///
/// The pair-energy matrix is cached so that a trial move only evaluates the
/// moved particle's new interactions.
#[derive(Debug, Clone)]
pub struct AnnealState {
    positions: Vec<Point>,
    angles: Vec<f64>,
    degrees: Vec<i32>,
    epsilon_sq: f64,
    box_half_width: f64,
    pub hastings: bool,
    /// (cos, sin) of (d−1)ω per particle, for the equal-degree kernel.
    phase: Vec<Point>,
    pair: Vec<f64>,
    energy: f64,
    pub(crate) rng: ChaCha8Rng,
    pub(crate) sweep: usize,
}

impl AnnealState {
    pub fn new(
        positions: Vec<Point>,
        angles: Vec<f64>,
        degrees: Vec<i32>,
        epsilon_sq: f64,
        box_half_width: f64,
        seed: u64,
    ) -> Result<Self> {
        Self::with_rng(positions, angles, degrees, epsilon_sq, box_half_width, ChaCha8Rng::seed_from_u64(seed))
    }

    fn with_rng(
        positions: Vec<Point>,
        angles: Vec<f64>,
        degrees: Vec<i32>,
        epsilon_sq: f64,
        box_half_width: f64,
        rng: ChaCha8Rng,
    ) -> Result<Self> {
        let n = positions.len();
        if angles.len() != n || degrees.len() != n {
            return Err(MonteCarloError::InvalidInput("positions, angles and degrees differ in length".into()));
        }
        if !(epsilon_sq > 0.0) || !(box_half_width > 0.0) {
            return Err(MonteCarloError::InvalidInput("epsilon_sq and box_half_width must be positive".into()));
        }
        for (i, p) in positions.iter().enumerate() {
            if p[0].abs() > box_half_width || p[1].abs() > box_half_width {
                return Err(MonteCarloError::OutOfBox { index: i });
            }
        }
        let mut state = Self {
            positions,
            angles,
            degrees,
            epsilon_sq,
            box_half_width,
            hastings: true,
            phase: Vec::new(),
            pair: vec![0.0; n * n],
            energy: 0.0,
            rng,
            sweep: 0,
        };
        state.phase = (0..n).map(|i| state.phase_of(i, state.angles[i])).collect();
        for i in 0..n {
            for j in (i + 1)..n {
                let r = state.separation(i, j);
                let dist = r[0].hypot(r[1]);
                if dist <= 2.0 {
                    return Err(MonteCarloError::Overlap { i, j, distance: dist });
                }
                let v = state.interaction(i, state.positions[i], state.angles[i], j);
                state.pair[i * n + j] = v;
                state.pair[j * n + i] = v;
                state.energy += v;
            }
        }
        Ok(state)
    }

    /// Jittered square lattice centred on the origin with uniform angles.
    ///
    /// Draw order: for each site in row-major order the x jitter, the y
    /// jitter and the angle; then one shuffle that places the second species.
    pub fn lattice(protocol: &Protocol, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = protocol.side * protocol.side;
        let offset = 0.5 * (protocol.side as f64 - 1.0) * protocol.spacing;
        let mut positions = Vec::with_capacity(n);
        let mut angles = Vec::with_capacity(n);
        for row in 0..protocol.side {
            for col in 0..protocol.side {
                let jx = protocol.jitter * (2.0 * rng.random::<f64>() - 1.0);
                let jy = protocol.jitter * (2.0 * rng.random::<f64>() - 1.0);
                positions.push([col as f64 * protocol.spacing - offset + jx, row as f64 * protocol.spacing - offset + jy]);
                angles.push(rng.random::<f64>() * TAU);
            }
        }
        let mut degrees = vec![protocol.degree; n];
        if let Some(second) = protocol.second_degree {
            if !(0.0..=1.0).contains(&protocol.second_fraction) {
                return Err(MonteCarloError::InvalidInput(format!(
                    "second_fraction {} outside [0, 1]",
                    protocol.second_fraction
                )));
            }
            let count = (protocol.second_fraction * n as f64).round() as usize;
            degrees.iter_mut().take(count).for_each(|d| *d = second);
            degrees.shuffle(&mut rng);
        }
        let mut state = Self::with_rng(positions, angles, degrees, protocol.epsilon_sq, protocol.box_half_width, rng)?;
        state.hastings = protocol.hastings;
        Ok(state)
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn positions(&self) -> &[Point] {
        &self.positions
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn epsilon_sq(&self) -> f64 {
        self.epsilon_sq
    }

    pub fn box_half_width(&self) -> f64 {
        self.box_half_width
    }

    /// Cached total energy, updated incrementally by accepted moves.
    pub fn energy(&self) -> f64 {
        self.energy
    }

    /// Number of completed sweeps.
    pub fn sweep_index(&self) -> usize {
        self.sweep
    }

    /// x_j − x_i.
    pub fn separation(&self, i: usize, j: usize) -> Point {
        let (a, b) = (self.positions[i], self.positions[j]);
        [b[0] - a[0], b[1] - a[1]]
    }

    pub(crate) fn spec(&self, i: usize, j: usize) -> PairPotentialSpec {
        PairPotentialSpec::with_epsilon_sq(self.degrees[i], self.degrees[j], self.epsilon_sq)
    }

    pub(crate) fn phase_of(&self, i: usize, angle: f64) -> Point {
        let (s, c) = ((self.degrees[i] - 1) as f64 * angle).sin_cos();
        [c, s]
    }

    /// V between particle i placed at (pos, angle) and particle j.
    pub(crate) fn interaction(&self, i: usize, pos: Point, angle: f64, j: usize) -> f64 {
        let q = self.positions[j];
        mc_pair_potential(&self.spec(i, j), [q[0] - pos[0], q[1] - pos[1]], angle, self.angles[j])
    }

    /// Same value as [`Self::interaction`] for r = x_j − pos with |r|² =
    /// `dist_sq` > 4, using the cached phases when the degrees agree.
    #[inline]
    pub(crate) fn interaction_fast(&self, i: usize, phase_i: Point, angle: f64, j: usize, r: Point, dist_sq: f64) -> f64 {
        let d = self.degrees[i];
        if d != self.degrees[j] {
            return mc_pair_potential(&self.spec(i, j), r, angle, self.angles[j]);
        }
        let reach = 2.0 + CUTOFF_FACTOR * self.epsilon_sq;
        if dist_sq > reach * reach {
            return 0.0;
        }
        let pj = self.phase[j];
        let cos = phase_i[0] * pj[0] + phase_i[1] * pj[1];
        let sign = if d.rem_euclid(2) == 0 { -1.0 } else { 1.0 };
        sign * cos * (-(dist_sq.sqrt() - 2.0) / self.epsilon_sq).exp()
    }

    /// Σ_j V_ij from the cache.
    pub(crate) fn particle_energy(&self, i: usize) -> f64 {
        let n = self.len();
        self.pair[i * n..(i + 1) * n].iter().sum()
    }

    pub(crate) fn inside_box(&self, p: Point) -> bool {
        p[0].abs() <= self.box_half_width && p[1].abs() <= self.box_half_width
    }

    /// δ_i for particle i placed at `pos`: the smallest surface gap to another
    /// particle, with the box walls acting as virtual neighbours.
    pub fn contact_distance(&self, i: usize, pos: Point) -> f64 {
        let l = self.box_half_width;
        let wall = (l - pos[0].abs()).min(l - pos[1].abs());
        let mut nearest_sq = f64::INFINITY;
        for (j, q) in self.positions.iter().enumerate() {
            if j != i {
                let (dx, dy) = (q[0] - pos[0], q[1] - pos[1]);
                nearest_sq = nearest_sq.min(dx * dx + dy * dy);
            }
        }
        wall.min(nearest_sq.sqrt() - 2.0)
    }

    /// Positional step standard deviation clamp(δ_i, 0.025, 0.5).
    pub fn step_size(&self, i: usize, pos: Point) -> f64 {
        self.contact_distance(i, pos).clamp(STEP_MIN, STEP_MAX)
    }

    /// Trial position and angle for particle i. Consumes exactly three
    /// standard normal draws: x, y, angle.
    pub fn propose(&mut self, i: usize) -> (Point, f64) {
        let sigma = self.step_size(i, self.positions[i]);
        self.draw_move(i, sigma)
    }

    pub(crate) fn draw_move(&mut self, i: usize, sigma: f64) -> (Point, f64) {
        let zx: f64 = self.rng.sample(StandardNormal);
        let zy: f64 = self.rng.sample(StandardNormal);
        let za: f64 = self.rng.sample(StandardNormal);
        let p = self.positions[i];
        ([p[0] + sigma * zx, p[1] + sigma * zy], self.angles[i] + ANGLE_STEP * za)
    }

    /// Move particle i, refreshing its row of the pair cache.
    pub(crate) fn commit(&mut self, i: usize, pos: Point, angle: f64, row: &[f64], delta: f64) {
        let n = self.len();
        self.positions[i] = pos;
        self.angles[i] = angle;
        self.phase[i] = self.phase_of(i, angle);
        for (j, &v) in row.iter().enumerate() {
            self.pair[i * n + j] = v;
            self.pair[j * n + i] = v;
        }
        self.energy += delta;
    }
}

/// ½ Σ_{i≠j} V(x_j − x_i, ω_i, ω_j), recomputed from scratch. +∞ if any
/// pair overlaps.
pub fn total_energy(state: &AnnealState) -> f64 {
    let n = state.len();
    let mut total = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            total += state.interaction(i, state.positions[i], state.angles[i], j);
        }
    }
    total
}
