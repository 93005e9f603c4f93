use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::state::{AnnealState, Point, Protocol, STEP_MAX, STEP_MIN};
use crate::Result;

/// Linear temperature schedule. Sweep s (1-based) runs at
/// T_start + (T_end − T_start)·s/sweeps, so the last sweep runs at T_end.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Schedule {
    pub t_start: f64,
    pub t_end: f64,
    pub sweeps: usize,
}

impl Default for Schedule {
    fn default() -> Self {
        Self { t_start: 0.25, t_end: 0.0, sweeps: 25_000 }
    }
}

impl Schedule {
    pub fn temperature(&self, s: usize) -> f64 {
        if self.sweeps == 0 {
            return self.t_start;
        }
        self.t_start + (self.t_end - self.t_start) * s as f64 / self.sweeps as f64
    }
}

/// Acceptance test for an energy change `delta_e` at temperature `t`, given
/// the log proposal ratio ln q(new→old)/q(old→new) and a uniform `u`.
/// At t = 0 a move is accepted iff it does not raise the energy.
pub fn accept_move(delta_e: f64, t: f64, log_q: f64, u: f64) -> bool {
    if t <= 0.0 {
        return delta_e <= 0.0;
    }
    let log_ratio = -delta_e / t + log_q;
    log_ratio >= 0.0 || u < log_ratio.exp()
}

/// One Metropolis–Hastings pass over all particles in index order.
/// Returns the number of accepted moves.
pub fn sweep(state: &mut AnnealState, temperature: f64) -> usize {
    let n = state.len();
    let mut row = vec![0.0; n];
    let mut accepted = 0;
    for i in 0..n {
        let old = state.positions()[i];
        let sigma_old = state.step_size(i, old);
        let (pos, angle) = state.draw_move(i, sigma_old);
        let u: f64 = state.rng.random();
        if !state.inside_box(pos) {
            continue;
        }
        let Some(delta_new) = trial_row(state, i, pos, angle, &mut row) else {
            continue;
        };
        let delta_e = row.iter().sum::<f64>() - state.particle_energy(i);
        let log_q = if state.hastings {
            let sigma_new = delta_new.clamp(STEP_MIN, STEP_MAX);
            let jump = (pos[0] - old[0]).powi(2) + (pos[1] - old[1]).powi(2);
            2.0 * (sigma_old / sigma_new).ln() - jump / (2.0 * sigma_new * sigma_new) + jump / (2.0 * sigma_old * sigma_old)
        } else {
            0.0
        };
        if accept_move(delta_e, temperature, log_q, u) {
            state.commit(i, pos, angle, &row, delta_e);
            accepted += 1;
        }
    }
    state.sweep += 1;
    accepted
}

/// New interaction row of particle i at (pos, angle) and its contact
/// distance δ; None on a hard-core overlap.
fn trial_row(state: &AnnealState, i: usize, pos: Point, angle: f64, row: &mut [f64]) -> Option<f64> {
    let l = state.box_half_width();
    let wall = (l - pos[0].abs()).min(l - pos[1].abs());
    let mut nearest_sq = f64::INFINITY;
    let phase_i = state.phase_of(i, angle);
    for (j, q) in state.positions().iter().enumerate() {
        if j == i {
            row[j] = 0.0;
            continue;
        }
        let r = [q[0] - pos[0], q[1] - pos[1]];
        let dist_sq = r[0] * r[0] + r[1] * r[1];
        if dist_sq <= 4.0 {
            return None;
        }
        nearest_sq = nearest_sq.min(dist_sq);
        row[j] = state.interaction_fast(i, phase_i, angle, j, r, dist_sq);
    }
    Some(wall.min(nearest_sq.sqrt() - 2.0))
}

/// Serializable record of a chain at one sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub sweep: usize,
    pub temperature: f64,
    pub energy: f64,
    pub positions: Vec<Point>,
    pub angles: Vec<f64>,
    pub degrees: Vec<i32>,
}

impl Snapshot {
    pub fn of(state: &AnnealState, temperature: f64) -> Self {
        Self {
            sweep: state.sweep_index(),
            temperature,
            energy: state.energy(),
            positions: state.positions().to_vec(),
            angles: state.angles().to_vec(),
            degrees: state.degrees().to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecileRate {
    pub t_high: f64,
    pub t_low: f64,
    pub accepted: usize,
    pub trials: usize,
}

impl DecileRate {
    pub fn rate(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.accepted as f64 / self.trials as f64
        }
    }
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub schedule: Schedule,
    pub snapshots: Vec<Snapshot>,
    /// Accepted moves per sweep.
    pub accepted: Vec<usize>,
    pub final_state: AnnealState,
}

impl Trajectory {
    /// Acceptance rates over ten consecutive blocks of sweeps, from hot to cold.
    pub fn acceptance_by_decile(&self) -> Vec<DecileRate> {
        let sweeps = self.accepted.len();
        let n = self.final_state.len();
        (0..10)
            .filter_map(|k| {
                let (lo, hi) = (k * sweeps / 10, (k + 1) * sweeps / 10);
                (hi > lo).then(|| DecileRate {
                    t_high: self.schedule.temperature(lo + 1),
                    t_low: self.schedule.temperature(hi),
                    accepted: self.accepted[lo..hi].iter().sum(),
                    trials: (hi - lo) * n,
                })
            })
            .collect()
    }
}

/// Run the schedule, recording the initial state, every `snapshot_every`-th
/// sweep (0 disables periodic snapshots) and the final state.
pub fn anneal(initial: AnnealState, schedule: &Schedule, snapshot_every: usize) -> Trajectory {
    let mut state = initial;
    let mut snapshots = vec![Snapshot::of(&state, schedule.temperature(0))];
    let mut accepted = Vec::with_capacity(schedule.sweeps);
    for s in 1..=schedule.sweeps {
        let t = schedule.temperature(s);
        accepted.push(sweep(&mut state, t));
        if s == schedule.sweeps || (snapshot_every > 0 && s % snapshot_every == 0) {
            snapshots.push(Snapshot::of(&state, t));
        }
    }
    Trajectory { schedule: *schedule, snapshots, accepted, final_state: state }
}

/// Independent chains, one per seed, run in parallel. Results are in seed order.
pub fn anneal_chains(
    protocol: &Protocol,
    schedule: &Schedule,
    seeds: &[u64],
    snapshot_every: usize,
) -> Result<Vec<Trajectory>> {
    seeds
        .par_iter()
        .map(|&seed| Ok(anneal(AnnealState::lattice(protocol, seed)?, schedule, snapshot_every)))
        .collect()
}
