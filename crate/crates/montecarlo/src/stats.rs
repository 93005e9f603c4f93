use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::state::AnnealState;

/// Center distance below which two disks count as nearest neighbours.
pub const NN_DISTANCE: f64 = 2.05;

/// Equal-width histogram on [0, period).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub period: f64,
    pub counts: Vec<usize>,
}

impl Histogram {
    pub fn new(period: f64, bins: usize) -> Self {
        Self { period, counts: vec![0; bins] }
    }

    pub fn add(&mut self, value: f64) {
        let x = value.rem_euclid(self.period);
        let bins = self.counts.len();
        let k = ((x / self.period * bins as f64) as usize).min(bins - 1);
        self.counts[k] += 1;
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn bin_centers(&self) -> Vec<f64> {
        let w = self.period / self.counts.len() as f64;
        (0..self.counts.len()).map(|k| (k as f64 + 0.5) * w).collect()
    }
}

/// Period of the equal-degree relative angle, 2π/|d−1| (2π for d = 1).
fn angle_period(d: i32) -> f64 {
    match (d - 1).unsigned_abs() {
        0 => TAU,
        k => TAU / k as f64,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NeighborStats {
    /// Pairs (i, j), i < j, with center distance below [`NN_DISTANCE`].
    pub nn_pairs: Vec<(usize, usize)>,
    /// Pairs that are not nearest neighbours but share one.
    pub second_nn_pairs: Vec<(usize, usize)>,
    /// Equal-degree nearest neighbours: ω_i − ω_j mod 2π/|d−1|, keyed by d.
    pub nn: BTreeMap<i32, Histogram>,
    /// Equal-degree second-nearest neighbours, same reduction.
    pub second_nn: BTreeMap<i32, Histogram>,
    /// Mixed-degree nearest neighbours: relative director angle at the
    /// facing boundary points, mod π.
    pub mixed_contact: Histogram,
}

pub fn neighbor_stats(state: &AnnealState) -> NeighborStats {
    neighbor_stats_with_bins(state, 36)
}

pub fn neighbor_stats_with_bins(state: &AnnealState, bins: usize) -> NeighborStats {
    let n = state.len();
    let bins = bins.max(1);
    let mut adjacency = vec![Vec::new(); n];
    let mut nn_pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let r = state.separation(i, j);
            if r[0].hypot(r[1]) < NN_DISTANCE {
                nn_pairs.push((i, j));
                adjacency[i].push(j);
                adjacency[j].push(i);
            }
        }
    }
    let mut second_nn_pairs = Vec::new();
    for i in 0..n {
        for k in (i + 1)..n {
            if adjacency[i].contains(&k) {
                continue;
            }
            if adjacency[i].iter().any(|j| adjacency[k].contains(j)) {
                second_nn_pairs.push((i, k));
            }
        }
    }

    let (deg, ang) = (state.degrees(), state.angles());
    let mut nn = BTreeMap::new();
    let mut second_nn = BTreeMap::new();
    let mut mixed_contact = Histogram::new(PI, bins);
    for &(i, j) in &nn_pairs {
        if deg[i] == deg[j] {
            nn.entry(deg[i]).or_insert_with(|| Histogram::new(angle_period(deg[i]), bins)).add(ang[i] - ang[j]);
        } else {
            let r = state.separation(i, j);
            let alpha = r[1].atan2(r[0]);
            let phase_i = deg[i] as f64 * alpha - (deg[i] - 1) as f64 * ang[i];
            let phase_j = deg[j] as f64 * (alpha + PI) - (deg[j] - 1) as f64 * ang[j];
            mixed_contact.add(0.5 * (phase_i - phase_j));
        }
    }
    for &(i, k) in &second_nn_pairs {
        if deg[i] == deg[k] {
            second_nn
                .entry(deg[i])
                .or_insert_with(|| Histogram::new(angle_period(deg[i]), bins))
                .add(ang[i] - ang[k]);
        }
    }
    NeighborStats { nn_pairs, second_nn_pairs, nn, second_nn, mixed_contact }
}

/// Mean of cos(k(ω_i − ω_j)) over the equal-degree pairs in `pairs`.
pub fn mean_relative_cos(state: &AnnealState, pairs: &[(usize, usize)], k: f64) -> Option<f64> {
    let (deg, ang) = (state.degrees(), state.angles());
    let values: Vec<f64> =
        pairs.iter().filter(|(i, j)| deg[*i] == deg[*j]).map(|&(i, j)| (k * (ang[i] - ang[j])).cos()).collect();
    (!values.is_empty()).then(|| values.iter().sum::<f64>() / values.len() as f64)
}
