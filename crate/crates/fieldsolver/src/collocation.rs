use std::f64::consts::TAU;

use colloids_model::{BoundaryData, ParticleConfiguration, Point};
use colloids_specfun::bessel_k_scaled_all;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::{FieldSolverError, Result};

const CONDITION_LIMIT: f64 = 1e12;

/// Partial-wave representation u(x) = Σ_j Σ_{|m|≤M} α_m^{(j)} K_m(ρ_j)/K_m(r_j) e^{imθ_j}.
#[derive(Debug, Clone)]
pub struct FieldSolution {
    centers: Vec<Point>,
    radii: Vec<f64>,
    data: Vec<BoundaryData>,
    /// Scaled K_m(r_j) for m = 0..=M+1, per disk.
    k_at_radius: Vec<Vec<f64>>,
    coefficients: Vec<Vec<Complex64>>,
    mode_cutoff: usize,
    collocation_points: usize,
    pub boundary_residual: f64,
    pub energy: f64,
    pub condition_estimate: f64,
}

/// Scaled K_m(t) for m = 0..=max_order, extending past 64 by one recurrence step.
fn scaled_k_table(max_order: usize, t: f64) -> Result<Vec<f64>> {
    let core = max_order.min(64);
    let mut k = bessel_k_scaled_all(core as u32, t)?;
    while k.len() <= max_order {
        let m = k.len() - 1;
        k.push(k[m - 1] + 2.0 * m as f64 / t * k[m]);
    }
    Ok(k)
}

impl FieldSolution {
    fn width(&self) -> usize {
        2 * self.mode_cutoff + 1
    }

    pub fn mode_cutoff(&self) -> usize {
        self.mode_cutoff
    }

    pub fn collocation_points(&self) -> usize {
        self.collocation_points
    }

    pub fn particle_count(&self) -> usize {
        self.centers.len()
    }

    pub fn center(&self, j: usize) -> Point {
        self.centers[j]
    }

    pub fn radius(&self, j: usize) -> f64 {
        self.radii[j]
    }

    pub fn data(&self, j: usize) -> &BoundaryData {
        &self.data[j]
    }

    /// α_m^{(j)}.
    pub fn coefficient(&self, j: usize, m: i32) -> Complex64 {
        let idx = m + self.mode_cutoff as i32;
        if idx < 0 || idx as usize >= self.width() {
            return Complex64::new(0.0, 0.0);
        }
        self.coefficients[j][idx as usize]
    }

    /// f_m(ρ) = K_m(ρ)/K_m(r_j) and its ρ-derivative, for m = 0..=M.
    fn radial(&self, j: usize, rho: f64) -> Result<(Vec<f64>, Vec<f64>)> {
        let m_cut = self.mode_cutoff;
        let k = scaled_k_table(m_cut + 1, rho)?;
        let kr = &self.k_at_radius[j];
        let decay = (self.radii[j] - rho).exp();
        let mut f = Vec::with_capacity(m_cut + 1);
        let mut fp = Vec::with_capacity(m_cut + 1);
        for m in 0..=m_cut {
            let below = if m == 0 { k[1] } else { k[m - 1] };
            let scale = decay / kr[m];
            f.push(k[m] * scale);
            fp.push(-0.5 * (below + k[m + 1]) * scale);
        }
        Ok((f, fp))
    }

    /// Basis values of disk j at x, ordered m = −M..=M.
    fn basis_row(&self, j: usize, x: Point, out: &mut [Complex64]) -> Result<()> {
        let dx = x[0] - self.centers[j][0];
        let dy = x[1] - self.centers[j][1];
        let rho = dx.hypot(dy);
        let (f, _) = self.radial(j, rho)?;
        let e1 = Complex64::new(dx / rho, dy / rho);
        let m_cut = self.mode_cutoff;
        let mut pos = Complex64::new(1.0, 0.0);
        for m in 0..=m_cut {
            out[m_cut + m] = pos * f[m];
            out[m_cut - m] = pos.conj() * f[m];
            pos *= e1;
        }
        Ok(())
    }

    /// u(x) together with ∂u/∂x and ∂u/∂y.
    pub fn value_and_gradient(&self, x: Point) -> Result<(Complex64, Complex64, Complex64)> {
        let mut u = Complex64::new(0.0, 0.0);
        let mut ux = u;
        let mut uy = u;
        let m_cut = self.mode_cutoff as i32;
        for j in 0..self.centers.len() {
            let dx = x[0] - self.centers[j][0];
            let dy = x[1] - self.centers[j][1];
            let rho = dx.hypot(dy);
            let (c, s) = (dx / rho, dy / rho);
            let (f, fp) = self.radial(j, rho)?;
            let e1 = Complex64::new(c, s);
            let mut pos = Complex64::new(1.0, 0.0);
            for m in 0..=m_cut {
                let mu = m as usize;
                for (sign, phase) in [(1i32, pos), (-1, pos.conj())] {
                    if m == 0 && sign < 0 {
                        continue;
                    }
                    let mm = sign * m;
                    let a = self.coefficients[j][(mm + m_cut) as usize];
                    if a == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    let val = a * phase;
                    let d_rho = val * fp[mu];
                    let d_ang = val * Complex64::new(0.0, mm as f64) * (f[mu] / rho);
                    u += val * f[mu];
                    ux += d_rho * c - d_ang * s;
                    uy += d_rho * s + d_ang * c;
                }
                pos *= e1;
            }
        }
        Ok((u, ux, uy))
    }

    pub fn value(&self, x: Point) -> Result<Complex64> {
        let mut u = Complex64::new(0.0, 0.0);
        let mut row = vec![Complex64::new(0.0, 0.0); self.width()];
        for j in 0..self.centers.len() {
            self.basis_row(j, x, &mut row)?;
            u += row.iter().zip(&self.coefficients[j]).map(|(b, a)| b * a).sum::<Complex64>();
        }
        Ok(u)
    }

    fn boundary_point(&self, j: usize, theta: f64) -> Point {
        let c = self.centers[j];
        let r = self.radii[j];
        [c[0] + r * theta.cos(), c[1] + r * theta.sin()]
    }
}

/// Least-squares collocation with `modes` = M and `points` = P per circle.
pub fn solve_collocation(config: &ParticleConfiguration, modes: usize, points: usize) -> Result<FieldSolution> {
    config.validate()?;
    let config = config.to_blown_up();
    if modes > 64 {
        return Err(FieldSolverError::InvalidInput(format!("mode cutoff {modes} exceeds 64")));
    }
    let width = 2 * modes + 1;
    if points < 2 * width {
        return Err(FieldSolverError::InvalidInput(format!(
            "need at least {} collocation points for {modes} modes, got {points}",
            2 * width
        )));
    }
    let n = config.particles.len();
    let mut sol = FieldSolution {
        centers: config.particles.iter().map(|p| p.center).collect(),
        radii: config.particles.iter().map(|p| p.radius).collect(),
        data: config.particles.iter().map(|p| p.data.clone()).collect(),
        k_at_radius: config
            .particles
            .iter()
            .map(|p| scaled_k_table(modes + 1, p.radius))
            .collect::<Result<_>>()?,
        coefficients: vec![vec![Complex64::new(0.0, 0.0); width]; n],
        mode_cutoff: modes,
        collocation_points: points,
        boundary_residual: 0.0,
        energy: 0.0,
        condition_estimate: 1.0,
    };
    if n == 0 {
        return Ok(sol);
    }

    let rows = n * points;
    let cols = n * width;
    let mut a = DMatrix::<Complex64>::zeros(rows, cols);
    let mut rhs = DVector::<Complex64>::zeros(rows);
    let mut row = vec![Complex64::new(0.0, 0.0); width];
    for i in 0..n {
        for k in 0..points {
            let theta = (k as f64 + 0.5) * TAU / points as f64;
            let x = sol.boundary_point(i, theta);
            let r = i * points + k;
            for j in 0..n {
                sol.basis_row(j, x, &mut row)?;
                for (c, v) in row.iter().enumerate() {
                    a[(r, j * width + c)] = *v;
                }
            }
            rhs[r] = sol.data[i].eval(theta);
        }
    }

    let normal = a.adjoint() * &a;
    let proj = a.adjoint() * &rhs;
    let scale: Vec<f64> = (0..cols).map(|k| 1.0 / normal[(k, k)].re.sqrt()).collect();
    let scaled = DMatrix::from_fn(cols, cols, |r, c| normal[(r, c)] * (scale[r] * scale[c]));
    let eig = scaled.clone().symmetric_eigenvalues();
    let (lo, hi) = eig.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let estimate = if lo > 0.0 { hi / lo } else { f64::INFINITY };
    sol.condition_estimate = estimate;
    if estimate > CONDITION_LIMIT {
        return Err(FieldSolverError::IllConditioned { estimate });
    }
    let chol = scaled.cholesky().ok_or(FieldSolverError::IllConditioned { estimate })?;
    let scaled_rhs = DVector::from_fn(cols, |k, _| proj[k] * scale[k]);
    let y = chol.solve(&scaled_rhs);
    for j in 0..n {
        for c in 0..width {
            sol.coefficients[j][c] = y[j * width + c] * scale[j * width + c];
        }
    }

    let q = 8 * points + 1;
    let mut residual: f64 = 0.0;
    for i in 0..n {
        for k in 0..q {
            let theta = k as f64 * TAU / q as f64;
            let u = sol.value(sol.boundary_point(i, theta))?;
            residual = residual.max((u - sol.data[i].eval(theta)).norm());
        }
    }
    sol.boundary_residual = residual;
    sol.energy = energy_flux(&sol)?;
    Ok(sol)
}

/// Σ_j ∮_{∂B_j} u·conj(∂v/∂ν_j) ds with ν_j pointing into disk j, by the
/// q-point trapezoid rule. Both solutions must share their geometry.
pub fn flux_bilinear(u: &FieldSolution, v: &FieldSolution, q: usize) -> Result<Complex64> {
    if u.centers != v.centers || u.radii != v.radii {
        return Err(FieldSolverError::InvalidInput("solutions live on different geometries".into()));
    }
    let mut total = Complex64::new(0.0, 0.0);
    for j in 0..u.centers.len() {
        let r = u.radii[j];
        let mut sum = Complex64::new(0.0, 0.0);
        for k in 0..q {
            let theta = k as f64 * TAU / q as f64;
            let x = u.boundary_point(j, theta);
            let uu = u.value(x)?;
            let (_, vx, vy) = v.value_and_gradient(x)?;
            let dnu = -(vx * theta.cos() + vy * theta.sin());
            sum += uu * dnu.conj();
        }
        total += sum * (r * TAU / q as f64);
    }
    Ok(total)
}

/// κ = Re Σ_j ∮ u·conj(∂u/∂ν_j) = ∫(|∇u|² + |u|²) with q quadrature points per circle.
pub fn energy_flux_with(sol: &FieldSolution, q: usize) -> Result<f64> {
    Ok(flux_bilinear(sol, sol, q)?.re)
}

/// [`energy_flux_with`] using 8P + 1 points per circle.
pub fn energy_flux(sol: &FieldSolution) -> Result<f64> {
    energy_flux_with(sol, 8 * sol.collocation_points + 1)
}
