use clap::ValueEnum;
use colloids_asymptotics::{multi_particle_energy, MultiParticleOptions, NeckMethod};
use colloids_model::{ConfigFile, ParticleConfiguration};
use rayon::prelude::*;
use serde::Serialize;

use crate::manifest::parse_range;
use crate::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    LargeB,
    O1,
    Auto,
}

impl From<Method> for NeckMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::LargeB => NeckMethod::LargeB,
            Method::O1 => NeckMethod::O1,
            Method::Auto => NeckMethod::Auto,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnergyRow {
    /// Smallest gap, blown-up units.
    pub b: f64,
    pub self_energy: f64,
    pub neck_total: f64,
    pub remainder_bound: f64,
    pub total: f64,
}

/// Parse `b=min:max:step`.
pub fn parse_sweep(text: &str) -> Result<Vec<f64>> {
    let range = text
        .trim()
        .strip_prefix("b=")
        .ok_or_else(|| CliError::Config(format!("sweep '{text}' must look like b=min:max:step")))?;
    parse_range(range)
}

fn row(config: &ParticleConfiguration, method: Method) -> Result<EnergyRow> {
    let options = MultiParticleOptions { method: method.into(), ..MultiParticleOptions::default() };
    let e = multi_particle_energy(config, options)?;
    Ok(EnergyRow {
        b: config.min_gap().unwrap_or(f64::INFINITY),
        self_energy: e.self_energy,
        neck_total: e.neck_total(),
        remainder_bound: e.remainder_bound,
        total: e.total,
    })
}

/// Asymptotic energies of the configured particles, either as given or with
/// the configuration rescaled so that its smallest gap runs over `sweep`.
pub fn energy_table(config: &ConfigFile, method: Method, sweep: Option<&[f64]>) -> Result<Vec<EnergyRow>> {
    let base = config.to_configuration()?;
    match sweep {
        None => Ok(vec![row(&base, method)?]),
        Some(bs) => bs.par_iter().map(|&b| row(&base.with_min_gap(b)?, method)).collect(),
    }
}

pub fn to_csv(rows: &[EnergyRow], length_scale: f64, physical: bool) -> String {
    let unit = if physical { "physical" } else { "blownup" };
    let mut out = format!("b_{unit},self_kappa,neck_total_kappa,remainder_bound_kappa,total_kappa\n");
    for r in rows {
        out += &format!("{},{},{},{},{}\n", r.b * length_scale, r.self_energy, r.neck_total, r.remainder_bound, r.total);
    }
    out
}
