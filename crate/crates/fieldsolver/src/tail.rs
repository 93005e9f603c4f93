use colloids_model::{ParticleConfiguration, Point};
use num_complex::Complex64;

use crate::{FieldSolution, FieldSolverError, GridSolution, Result};

/// Anything that can report a field value at a point outside the disks.
pub trait FieldSample {
    fn sample(&self, x: Point) -> Option<Complex64>;
}

impl FieldSample for FieldSolution {
    fn sample(&self, x: Point) -> Option<Complex64> {
        self.value(x).ok()
    }
}

impl FieldSample for GridSolution {
    fn sample(&self, x: Point) -> Option<Complex64> {
        self.interpolate(x)
    }
}

/// A ray x(t) = origin + t·direction with |direction| = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ray {
    pub origin: Point,
    pub direction: Point,
}

impl Ray {
    pub fn new(origin: Point, direction: Point) -> Self {
        let n = direction[0].hypot(direction[1]);
        Self { origin, direction: [direction[0] / n, direction[1] / n] }
    }

    pub fn at(&self, t: f64) -> Point {
        [self.origin[0] + t * self.direction[0], self.origin[1] + t * self.direction[1]]
    }
}

/// Decay rate λ of |u| ≈ C t^{−1/2} e^{−λt} along a ray over t ∈ [t0, t1].
///
/// The t^{−1/2} factor is the two-dimensional spreading of screened fields;
/// it is divided out before the least-squares fit of the logarithm.
pub fn tail_decay_rate<F: FieldSample + ?Sized>(field: &F, ray: Ray, t0: f64, t1: f64, samples: usize) -> Result<f64> {
    if !(t1 > t0 && t0 > 0.0) || samples < 2 {
        return Err(FieldSolverError::InvalidInput("tail window must satisfy 0 < t0 < t1 with >= 2 samples".into()));
    }
    let mut ts = Vec::with_capacity(samples);
    let mut logs = Vec::with_capacity(samples);
    for k in 0..samples {
        let t = t0 + (t1 - t0) * k as f64 / (samples - 1) as f64;
        let u = field
            .sample(ray.at(t))
            .ok_or_else(|| FieldSolverError::InsufficientDecay(format!("no field value at t = {t}")))?;
        let a = u.norm();
        if !(a > 0.0 && a.is_finite()) {
            return Err(FieldSolverError::InsufficientDecay(format!("|u| = {a} at t = {t}")));
        }
        ts.push(t);
        logs.push(a.ln() + 0.5 * t.ln());
    }
    let n = ts.len() as f64;
    let mt = ts.iter().sum::<f64>() / n;
    let ml = logs.iter().sum::<f64>() / n;
    let sxy: f64 = ts.iter().zip(&logs).map(|(t, l)| (t - mt) * (l - ml)).sum();
    let sxx: f64 = ts.iter().map(|t| (t - mt).powi(2)).sum();
    let rate = -sxy / sxx;
    if rate <= 0.0 {
        return Err(FieldSolverError::InsufficientDecay(format!("fitted rate {rate} is not positive")));
    }
    Ok(rate)
}

/// u(s) = √2/√(1 + cosh 2s + √2 sinh 2s), the half-line solution of
/// u'' = u − 2u³ + (3/2)u⁵ with u(0) = 1 and u(∞) = 0.
pub fn radial_nonlinear_profile(s: f64) -> f64 {
    if s > 300.0 {
        let c = 2.0 / (1.0 + std::f64::consts::SQRT_2).sqrt();
        return c * (-s).exp();
    }
    let e2 = (2.0 * s).exp();
    let em2 = (-2.0 * s).exp();
    let denom = 1.0 + 0.5 * (e2 + em2) + std::f64::consts::SQRT_2 * 0.5 * (e2 - em2);
    std::f64::consts::SQRT_2 / denom.sqrt()
}

/// ε⁴ ∫_{H ≥ s0} e^{2αH}|u − v|² over the grid, where H is the blown-up
/// distance to the nearest disk. The ε⁴ factor converts the area element to
/// physical units. Both fields must live on the same grid.
pub fn weighted_tail_difference(
    u: &GridSolution,
    v: &GridSolution,
    config: &ParticleConfiguration,
    alpha: f64,
    s0: f64,
) -> Result<f64> {
    if u.h != v.h || u.origin != v.origin || u.nx != v.nx || u.ny != v.ny {
        return Err(FieldSolverError::InvalidInput("grid solutions live on different grids".into()));
    }
    let config = config.to_blown_up();
    let mut total = 0.0;
    for i in 0..u.nx {
        for j in 0..u.ny {
            if u.is_masked(i, j) || v.is_masked(i, j) {
                continue;
            }
            let x = u.node_position(i, j);
            let dist = config
                .particles
                .iter()
                .map(|p| (x[0] - p.center[0]).hypot(x[1] - p.center[1]) - p.radius)
                .fold(f64::INFINITY, f64::min);
            if dist >= s0 {
                total += (2.0 * alpha * dist).exp() * (u.node_value(i, j) - v.node_value(i, j)).norm_sqr();
            }
        }
    }
    Ok(config.epsilon.powi(4) * u.h * u.h * total)
}
