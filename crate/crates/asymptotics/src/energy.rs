use std::f64::consts::{PI, SQRT_2};

use colloids_model::{closest_boundary_points, BoundaryData, Particle, ParticleConfiguration};
use colloids_specfun::{bessel_k_scaled_all, polylog_half_capped, theta_k};

use crate::{AsymptoticsError, Result};

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// Self energy, pairwise neck terms and an order-of-magnitude remainder.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyBreakdown {
    pub self_energy: f64,
    pub neck_terms: Vec<((usize, usize), f64)>,
    pub remainder_bound: f64,
    pub total: f64,
}

impl EnergyBreakdown {
    fn assemble(self_energy: f64, neck_terms: Vec<((usize, usize), f64)>, remainder_bound: f64) -> Self {
        let total = self_energy + neck_terms.iter().map(|(_, v)| v).sum::<f64>();
        Self { self_energy, neck_terms, remainder_bound, total }
    }

    pub fn neck_total(&self) -> f64 {
        self.neck_terms.iter().map(|(_, v)| v).sum()
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(AsymptoticsError::Domain(format!("{name} = {v} must be positive")))
    }
}

/// Energy of the single-mode exterior field K_m(ρ)/K_m(r)e^{imθ} around a
/// disk of blown-up radius r: −2πr K_m′(r)/K_m(r).
pub fn self_energy_blown_up(m: i32, r: f64) -> Result<f64> {
    positive("radius", r)?;
    let order = m.unsigned_abs();
    if order > 64 {
        return Err(AsymptoticsError::Domain(format!("mode {m} exceeds the supported order 64")));
    }
    let k = bessel_k_scaled_all(order.max(1), r)?;
    let n = order as usize;
    let km = k[n];
    let below = if n == 0 { k[1] } else { k[n - 1] };
    let above = if n + 1 < k.len() { k[n + 1] } else { k[n - 1] + 2.0 * order as f64 / r * km };
    Ok(PI * r * (below + above) / km)
}

/// −(2π r₁/ε²) K_m′(r₁/ε²)/K_m(r₁/ε²) for a disk of physical radius r₁.
pub fn self_energy_mode(m: i32, r1: f64, eps: f64) -> Result<f64> {
    positive("r1", r1)?;
    positive("epsilon", eps)?;
    self_energy_blown_up(m, r1 / (eps * eps))
}

/// Two constant data at large separation.
pub fn two_particle_large_b(g1: f64, g2: f64, b: f64, eps: f64) -> EnergyBreakdown {
    let self_energy = 2.0 * PI / (eps * eps) * (g1 * g1 + g2 * g2);
    let neck = -4.0 * g1 * g2 * SQRT_PI * (-2.0 * b).exp() / eps;
    EnergyBreakdown::assemble(self_energy, vec![((0, 1), neck)], (-4.0 * b).exp() / eps)
}

/// The 1/ε part of the O(1)-separation expansion for one neck between
/// constant data g1, g2 (self-interaction corrections of both disks included).
/// Valid for b down to about 1e-11.
pub fn neck_o1(g1: f64, g2: f64, b: f64, eps: f64) -> Result<f64> {
    positive("b", b)?;
    positive("epsilon", eps)?;
    let x = (-2.0 * b).exp();
    let x2 = x * x;
    let li = polylog_half_capped(x2, 1.0 - 1e-12)?;
    let diag = (PI / 2.0).sqrt() / eps * (li + theta_k(4, x)? + x2) * (g1 * g1 + g2 * g2);
    let off = 4.0 * SQRT_PI / eps * (x + theta_k(3, x)? / SQRT_2) * g1 * g2;
    Ok(diag - off)
}

/// O(1)-separation expansion for two constant data. With `include_self_constant`
/// the O(1) self constant π(g1² + g2²) is added; it equals π for g1 = 1, g2 = 0.
pub fn two_particle_o1(g1: f64, g2: f64, b: f64, eps: f64, include_self_constant: bool) -> Result<EnergyBreakdown> {
    let mut self_energy = 2.0 * PI / (eps * eps) * (g1 * g1 + g2 * g2);
    if include_self_constant {
        self_energy += PI * (g1 * g1 + g2 * g2);
    }
    let neck = neck_o1(g1, g2, b, eps)?;
    Ok(EnergyBreakdown::assemble(self_energy, vec![((0, 1), neck)], (-4.0 * b).exp() / eps))
}

/// Pair energy for general Fourier data. `alpha` is the polar angle of the
/// second disk's center seen from the first.
pub fn nonconstant_pair_energy(data1: &BoundaryData, data2: &BoundaryData, b: f64, alpha: f64, eps: f64) -> EnergyBreakdown {
    if let (Some(g1), Some(g2)) = (data1.as_constant(), data2.as_constant()) {
        return two_particle_large_b(g1, g2, b, eps);
    }
    let self_energy = 2.0 * PI / (eps * eps) * (data1.mean_square() + data2.mean_square());
    let gp = data1.eval(alpha);
    let gq = data2.eval(alpha + PI);
    let re = (gp * gq.conj()).re;
    let neck = -2.0 * SQRT_PI * (-2.0 * b).exp() / eps * 2.0 * re;
    let remainder = (-4.0 * b).exp() * (data1.h1_norm_sq() + data2.h1_norm_sq()) / eps;
    EnergyBreakdown::assemble(self_energy, vec![((0, 1), neck)], remainder)
}

/// [`nonconstant_pair_energy`] with the gap and direction read off two particles.
pub fn pair_energy(p: &Particle, q: &Particle, eps: f64) -> Result<EnergyBreakdown> {
    let c = closest_boundary_points(p, q)?;
    let b = colloids_model::neck_gap(p, q)?;
    Ok(nonconstant_pair_energy(&p.data, &q.data, b, c.alpha, eps))
}

/// Which pair formula supplies the neck terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NeckMethod {
    /// Leading exponential term only.
    LargeB,
    /// O(1)-separation expansion for constant data; general pairs use the
    /// leading term.
    O1,
    #[default]
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiParticleOptions {
    pub method: NeckMethod,
    /// Pairs with b_ij above this value are dropped.
    pub gap_cutoff: f64,
}

impl Default for MultiParticleOptions {
    fn default() -> Self {
        Self { method: NeckMethod::Auto, gap_cutoff: 20.0 }
    }
}

/// Self energies of every disk plus one neck term per close pair.
pub fn multi_particle_energy(config: &ParticleConfiguration, options: MultiParticleOptions) -> Result<EnergyBreakdown> {
    config.validate()?;
    let blown = config.to_blown_up();
    let eps = blown.epsilon;
    let mut self_energy = 0.0;
    for p in &blown.particles {
        for (m, g) in p.data.modes() {
            if g.norm_sqr() > 0.0 {
                self_energy += g.norm_sqr() * self_energy_blown_up(*m, p.radius)?;
            }
        }
    }
    let mut necks = Vec::new();
    let mut remainder = 0.0;
    for (i, j) in blown.pairs() {
        let b = blown.gap(i, j)?;
        if b > options.gap_cutoff {
            continue;
        }
        let (p, q) = (&blown.particles[i], &blown.particles[j]);
        let pair = pair_energy(p, q, eps)?;
        let constants = p.data.as_constant().zip(q.data.as_constant());
        let neck = match (options.method, constants) {
            (NeckMethod::O1 | NeckMethod::Auto, Some((g1, g2))) => neck_o1(g1, g2, b, eps)?,
            _ => pair.neck_total(),
        };
        necks.push(((i, j), neck));
        remainder += pair.remainder_bound;
    }
    Ok(EnergyBreakdown::assemble(self_energy, necks, remainder))
}
