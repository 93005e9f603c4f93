use colloids_fieldsolver::{solve_collocation, solve_fd, solve_nonlinear, FieldSolution};
use colloids_model::{Complex64, ParticleConfiguration, PotentialParameters};
use serde::{Deserialize, Serialize};

use crate::manifest::parse_range;
use crate::{CliError, Result};

/// Grid spacing and padding used for the nonlinear solve when `--fd` is absent.
pub const DEFAULT_GRID: (f64, f64) = (0.1, 10.0);

/// Keys read from the optional `[nonlinear]` table of a config file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NonlinearSection {
    pub kt_coefficient: f64,
}

impl Default for NonlinearSection {
    fn default() -> Self {
        Self { kt_coefficient: PotentialParameters::default().kt_coefficient }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
struct Extras {
    #[serde(default)]
    nonlinear: NonlinearSection,
}

pub fn nonlinear_section(text: &str, path: &str) -> Result<NonlinearSection> {
    toml::from_str::<Extras>(text)
        .map(|e| e.nonlinear)
        .map_err(|e| CliError::Config(format!("{path}: {e}")))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveOptions {
    pub modes: usize,
    pub points: usize,
    /// (h, padding) of the finite-difference oracle.
    pub fd: Option<(f64, f64)>,
    pub nonlinear: Option<NonlinearSection>,
    /// Sample points (x values, y values), blown-up units.
    pub grid: Option<(Vec<f64>, Vec<f64>)>,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    /// (method, quantity, value).
    pub summary: Vec<(&'static str, &'static str, f64)>,
    pub solution: FieldSolution,
    /// (x, y, u); u is None inside a disk.
    pub samples: Vec<(f64, f64, Option<Complex64>)>,
}

/// Parse `h,padding`.
pub fn parse_fd(text: &str) -> Result<(f64, f64)> {
    let parts: Vec<_> = text.split(',').map(|s| s.trim().parse::<f64>()).collect();
    match parts[..] {
        [Ok(h), Ok(p)] => Ok((h, p)),
        _ => Err(CliError::Config(format!("cannot parse '{text}'; expected h,padding"))),
    }
}

/// Parse `xmin:xmax:step,ymin:ymax:step`.
pub fn parse_grid(text: &str) -> Result<(Vec<f64>, Vec<f64>)> {
    let (x, y) = text
        .split_once(',')
        .ok_or_else(|| CliError::Config(format!("grid '{text}' must look like xmin:xmax:step,ymin:ymax:step")))?;
    Ok((parse_range(x)?, parse_range(y)?))
}

fn inside_any(config: &ParticleConfiguration, x: [f64; 2]) -> bool {
    config.particles.iter().any(|p| (x[0] - p.center[0]).hypot(x[1] - p.center[1]) < p.radius)
}

pub fn solve(config: &ParticleConfiguration, options: &SolveOptions) -> Result<SolveReport> {
    let config = config.to_blown_up();
    let solution = solve_collocation(&config, options.modes, options.points)?;
    let mut summary = vec![
        ("collocation", "energy_kappa", solution.energy),
        ("collocation", "boundary_residual", solution.boundary_residual),
        ("collocation", "condition_estimate", solution.condition_estimate),
    ];
    if let Some((h, padding)) = options.fd {
        let fd = solve_fd(&config, h, padding)?;
        summary.push(("fd", "energy_kappa", fd.energy));
        summary.push(("fd", "iterations", fd.iterations as f64));
        summary.push(("fd", "residual", fd.residual));
    }
    if let Some(section) = options.nonlinear {
        let (h, padding) = options.fd.unwrap_or(DEFAULT_GRID);
        let params = PotentialParameters::new(section.kt_coefficient)?;
        let nl = solve_nonlinear(&config, h, padding, params)?;
        summary.push(("nonlinear", "energy_e", nl.energy));
        summary.push(("nonlinear", "iterations", nl.iterations as f64));
        summary.push(("nonlinear", "gradient_norm", nl.residual));
    }
    let mut samples = Vec::new();
    if let Some((xs, ys)) = &options.grid {
        for &y in ys {
            for &x in xs {
                let u = if inside_any(&config, [x, y]) { None } else { Some(solution.value([x, y])?) };
                samples.push((x, y, u));
            }
        }
    }
    Ok(SolveReport { summary, solution, samples })
}

impl SolveReport {
    pub fn summary_csv(&self) -> String {
        let mut out = String::from("method,quantity,value\n");
        for (method, quantity, value) in &self.summary {
            out += &format!("{method},{quantity},{value}\n");
        }
        out
    }

    pub fn coefficients_csv(&self) -> String {
        let sol = &self.solution;
        let cut = sol.mode_cutoff() as i32;
        let mut out = String::from("particle,mode,re,im\n");
        for j in 0..sol.particle_count() {
            for m in -cut..=cut {
                let a = sol.coefficient(j, m);
                out += &format!("{j},{m},{},{}\n", a.re, a.im);
            }
        }
        out
    }

    /// Sample table; lengths multiplied by `length_scale` on output.
    pub fn field_csv(&self, length_scale: f64, physical: bool) -> String {
        let unit = if physical { "physical" } else { "blownup" };
        let mut out = format!("x_{unit},y_{unit},u_re,u_im\n");
        for (x, y, u) in &self.samples {
            let (re, im) = u.map_or((f64::NAN, f64::NAN), |u| (u.re, u.im));
            out += &format!("{},{},{re},{im}\n", x * length_scale, y * length_scale);
        }
        out
    }
}
