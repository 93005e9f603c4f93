use std::path::Path;

use num_complex::Complex64;
use serde::Deserialize;

use crate::{BoundaryData, ModelError, Particle, ParticleConfiguration, Result, Scaling};

/// Length units used in a configuration file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScalingSpec {
    #[default]
    BlownUp,
    Physical,
}

/// Boundary data as written in a file: either a short text form such as
/// `"constant(1)"` or `"degree(2, 0.785)"`, or a table.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum DataInput {
    Text(String),
    Table(DataTable),
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DataTable {
    Constant(f64),
    Degree { d: i32, omega: f64 },
    /// Rows `[m, re, im]`.
    Modes(Vec<(i32, f64, f64)>),
    /// Rows `[re, im]` at uniform angles 2πj/N.
    Samples(Vec<(f64, f64)>),
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct ParticleSpec {
    pub x: f64,
    pub y: f64,
    pub radius: Option<f64>,
    pub data: DataInput,
}

/// The particle section of a configuration file. Unknown top-level keys are
/// ignored so other tools can share the file.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct ConfigFile {
    pub epsilon: f64,
    #[serde(default)]
    pub mode_cutoff: Option<u32>,
    #[serde(default)]
    pub scaling: ScalingSpec,
    #[serde(default)]
    pub particles: Vec<ParticleSpec>,
}

fn parse_call(text: &str) -> Option<(&str, Vec<f64>)> {
    let text = text.trim();
    let open = text.find('(')?;
    let inner = text[open + 1..].strip_suffix(')')?;
    let args = inner
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<f64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .ok()?;
    Some((text[..open].trim(), args))
}

impl DataInput {
    pub fn to_boundary_data(&self, mode_cutoff: Option<u32>) -> Result<BoundaryData> {
        let bad = |msg: String| ModelError::InvalidData(msg);
        match self {
            DataInput::Text(text) => match parse_call(text) {
                Some(("constant", args)) if args.len() == 1 => Ok(BoundaryData::constant(args[0])),
                Some(("degree", args)) if args.len() == 2 && args[0].fract() == 0.0 => {
                    Ok(BoundaryData::canonical(args[0] as i32, args[1]))
                }
                _ => Err(bad(format!("cannot parse data '{text}'; expected constant(g) or degree(d, omega)"))),
            },
            DataInput::Table(DataTable::Constant(g)) => Ok(BoundaryData::constant(*g)),
            DataInput::Table(DataTable::Degree { d, omega }) => Ok(BoundaryData::canonical(*d, *omega)),
            DataInput::Table(DataTable::Modes(rows)) => {
                if let Some(cut) = mode_cutoff {
                    if let Some((m, _, _)) = rows.iter().find(|(m, _, _)| m.unsigned_abs() > cut) {
                        return Err(bad(format!("mode {m} exceeds mode_cutoff {cut}")));
                    }
                }
                Ok(BoundaryData::from_modes(rows.iter().map(|&(m, re, im)| (m, Complex64::new(re, im)))))
            }
            DataInput::Table(DataTable::Samples(rows)) => {
                let cut = mode_cutoff.ok_or_else(|| bad("sampled data requires mode_cutoff".into()))?;
                let samples: Vec<_> = rows.iter().map(|&(re, im)| Complex64::new(re, im)).collect();
                BoundaryData::from_samples(&samples, cut)
            }
        }
    }
}

impl ConfigFile {
    pub fn from_toml_str(text: &str, path: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| ModelError::Config { path: path.to_string(), message: e.to_string() })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let name = path.display().to_string();
        let text = std::fs::read_to_string(path)
            .map_err(|e| ModelError::Config { path: name.clone(), message: e.to_string() })?;
        Self::from_toml_str(&text, &name)
    }

    /// Build a validated blown-up configuration. Default radius is one
    /// physical unit (1/ε² blown up).
    pub fn to_configuration(&self) -> Result<ParticleConfiguration> {
        let eps = self.epsilon;
        if !(eps > 0.0 && eps <= 1.0) {
            return Err(ModelError::InvalidEpsilon(eps));
        }
        let scale = match self.scaling {
            ScalingSpec::BlownUp => 1.0,
            ScalingSpec::Physical => 1.0 / (eps * eps),
        };
        let particles = self
            .particles
            .iter()
            .map(|p| {
                let radius = match (p.radius, self.scaling) {
                    (Some(r), _) => r * scale,
                    (None, _) => 1.0 / (eps * eps),
                };
                Particle::new([p.x * scale, p.y * scale], radius, p.data.to_boundary_data(self.mode_cutoff)?)
            })
            .collect::<Result<Vec<_>>>()?;
        let config = ParticleConfiguration { particles, epsilon: eps, scaling: Scaling::BlownUp };
        config.validate()?;
        Ok(config)
    }
}
