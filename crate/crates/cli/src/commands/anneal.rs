use colloids_montecarlo::{anneal, neighbor_stats, AnnealState, Histogram, Protocol, Schedule, Snapshot, Trajectory};
use serde::{Deserialize, Serialize};

use crate::manifest::SCHEMA_VERSION;
use crate::{CliError, Result};

/// `[protocol]` and `[schedule]` tables of an annealing config file.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct AnnealConfig {
    #[serde(default)]
    pub protocol: Protocol,
    #[serde(default)]
    pub schedule: Schedule,
}

impl AnnealConfig {
    pub fn from_toml_str(text: &str, path: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| CliError::Config(format!("{path}: {e}")))
    }
}

#[derive(Serialize)]
struct Record<'a> {
    schema_version: u32,
    #[serde(flatten)]
    snapshot: &'a Snapshot,
}

/// Sweep interval giving about `snapshots` evenly spaced snapshots.
pub fn snapshot_interval(schedule: &Schedule, snapshots: usize) -> usize {
    schedule.sweeps.checked_div(snapshots).map_or(0, |k| k.max(1))
}

pub fn run(config: &AnnealConfig, seed: u64, snapshots: usize) -> Result<Trajectory> {
    let initial = AnnealState::lattice(&config.protocol, seed)?;
    Ok(anneal(initial, &config.schedule, snapshot_interval(&config.schedule, snapshots)))
}

pub fn trajectory_jsonl(traj: &Trajectory) -> String {
    let mut out = String::new();
    for snapshot in &traj.snapshots {
        out += &serde_json::to_string(&Record { schema_version: SCHEMA_VERSION, snapshot }).expect("snapshot serializes");
        out.push('\n');
    }
    out
}

fn push_histogram(out: &mut String, h: &Histogram, class: &str, degree: Option<i32>) {
    let degree = degree.map(|d| d.to_string()).unwrap_or_default();
    for (center, count) in h.bin_centers().iter().zip(&h.counts) {
        out.push_str(&format!("{center},{count},{class},{degree}\n"));
    }
}

/// Angle histograms of the final state.
pub fn histograms_csv(traj: &Trajectory) -> String {
    let stats = neighbor_stats(&traj.final_state);
    let mut out = String::from("bin_center_rad,count,class,degree\n");
    for (d, h) in &stats.nn {
        push_histogram(&mut out, h, "nn", Some(*d));
    }
    for (d, h) in &stats.second_nn {
        push_histogram(&mut out, h, "second_nn", Some(*d));
    }
    push_histogram(&mut out, &stats.mixed_contact, "mixed_contact", None);
    out
}

pub fn summary_csv(traj: &Trajectory) -> String {
    let mut out = String::from("record,t_high,t_low,accepted,trials,value\n");
    let initial = traj.snapshots.first().map_or(f64::NAN, |s| s.energy);
    out += &format!("initial_energy,,,,,{initial}\n");
    out += &format!("final_energy,,,,,{}\n", traj.final_state.energy());
    for (k, d) in traj.acceptance_by_decile().iter().enumerate() {
        out += &format!("acceptance_decile_{},{},{},{},{},{}\n", k + 1, d.t_high, d.t_low, d.accepted, d.trials, d.rate());
    }
    out
}
