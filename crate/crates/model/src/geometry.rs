use std::f64::consts::{PI, TAU};

use crate::{BoundaryData, ModelError, Result};

pub type Point = [f64; 2];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scaling {
    #[default]
    BlownUp,
    Physical,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Particle {
    pub center: Point,
    pub radius: f64,
    pub data: BoundaryData,
}

impl Particle {
    pub fn new(center: Point, radius: f64, data: BoundaryData) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(ModelError::InvalidRadius(radius));
        }
        Ok(Self { center, radius, data })
    }

    /// Particle of physical radius 1, i.e. blown-up radius 1/ε².
    pub fn unit(center: Point, epsilon: f64, data: BoundaryData) -> Self {
        Self { center, radius: 1.0 / (epsilon * epsilon), data }
    }
}

fn distance(a: Point, b: Point) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// Half of the boundary-to-boundary distance: b = (|a_p − a_q| − r_p − r_q)/2.
pub fn neck_gap(p: &Particle, q: &Particle) -> Result<f64> {
    let b = 0.5 * (distance(p.center, q.center) - p.radius - q.radius);
    if b > 0.0 {
        Ok(b)
    } else {
        Err(ModelError::Overlap { i: 0, j: 1, gap: b })
    }
}

/// Mutually nearest boundary points of two disjoint disks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosestPoints {
    pub on_p: Point,
    pub on_q: Point,
    /// Polar angle of q's center seen from p's center, in [0, 2π).
    pub alpha: f64,
    /// Boundary angle of `on_p` on circle p (equals α).
    pub theta_p: f64,
    /// Boundary angle of `on_q` on circle q (equals α + π mod 2π).
    pub theta_q: f64,
}

pub fn closest_boundary_points(p: &Particle, q: &Particle) -> Result<ClosestPoints> {
    neck_gap(p, q)?;
    let dx = q.center[0] - p.center[0];
    let dy = q.center[1] - p.center[1];
    let alpha = dy.atan2(dx).rem_euclid(TAU);
    let (s, c) = alpha.sin_cos();
    let on_p = [p.center[0] + p.radius * c, p.center[1] + p.radius * s];
    let on_q = [q.center[0] - q.radius * c, q.center[1] - q.radius * s];
    Ok(ClosestPoints { on_p, on_q, alpha, theta_p: alpha, theta_q: (alpha + PI).rem_euclid(TAU) })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParticleConfiguration {
    pub particles: Vec<Particle>,
    pub epsilon: f64,
    pub scaling: Scaling,
}

impl ParticleConfiguration {
    /// A validated configuration in blown-up units.
    pub fn new(particles: Vec<Particle>, epsilon: f64) -> Result<Self> {
        let config = Self { particles, epsilon, scaling: Scaling::BlownUp };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon <= 1.0) {
            return Err(ModelError::InvalidEpsilon(self.epsilon));
        }
        for p in &self.particles {
            if !(p.radius > 0.0 && p.radius.is_finite()) {
                return Err(ModelError::InvalidRadius(p.radius));
            }
        }
        for (i, j) in self.pairs() {
            self.gap(i, j)?;
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.particles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.particles.is_empty()
    }

    /// Unordered index pairs (i, j) with i < j.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.particles.len();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
    }

    /// Gap b_ij in the configuration's own length units.
    pub fn gap(&self, i: usize, j: usize) -> Result<f64> {
        neck_gap(&self.particles[i], &self.particles[j]).map_err(|e| match e {
            ModelError::Overlap { gap, .. } => ModelError::Overlap { i, j, gap },
            other => other,
        })
    }

    pub fn min_gap(&self) -> Option<f64> {
        self.pairs().filter_map(|(i, j)| self.gap(i, j).ok()).reduce(f64::min)
    }

    fn rescaled(&self, factor: f64, scaling: Scaling) -> Self {
        let particles = self
            .particles
            .iter()
            .map(|p| Particle {
                center: [p.center[0] * factor, p.center[1] * factor],
                radius: p.radius * factor,
                data: p.data.clone(),
            })
            .collect();
        Self { particles, epsilon: self.epsilon, scaling }
    }

    /// Lengths multiplied by ε² (no-op if already physical).
    pub fn to_physical(&self) -> Self {
        match self.scaling {
            Scaling::Physical => self.clone(),
            Scaling::BlownUp => self.rescaled(self.epsilon * self.epsilon, Scaling::Physical),
        }
    }

    /// Lengths divided by ε² (no-op if already blown up).
    pub fn to_blown_up(&self) -> Self {
        match self.scaling {
            Scaling::BlownUp => self.clone(),
            Scaling::Physical => self.rescaled(1.0 / (self.epsilon * self.epsilon), Scaling::BlownUp),
        }
    }

    /// Rescale center positions about the centroid so that the smallest gap equals `b`.
    /// Radii are unchanged.
    pub fn with_min_gap(&self, b: f64) -> Result<Self> {
        if self.particles.len() < 2 {
            return Err(ModelError::InvalidData("need at least two particles".into()));
        }
        let n = self.particles.len() as f64;
        let cx = self.particles.iter().map(|p| p.center[0]).sum::<f64>() / n;
        let cy = self.particles.iter().map(|p| p.center[1]).sum::<f64>() / n;
        // Find the pair realising the minimum and solve for the scale that moves it to b.
        let (i, j) = self
            .pairs()
            .min_by(|a, c| self.gap(a.0, a.1).unwrap().total_cmp(&self.gap(c.0, c.1).unwrap()))
            .unwrap();
        let pi = &self.particles[i];
        let pj = &self.particles[j];
        let d = distance(pi.center, pj.center);
        let target = 2.0 * b + pi.radius + pj.radius;
        let scale = target / d;
        let mut out = self.clone();
        for p in &mut out.particles {
            p.center = [cx + scale * (p.center[0] - cx), cy + scale * (p.center[1] - cy)];
        }
        out.validate()?;
        Ok(out)
    }
}
