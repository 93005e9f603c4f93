use colloids_model::{ParticleConfiguration, PotentialParameters};
use num_complex::Complex64;

use crate::grid::Mesh;
use crate::{FieldSolverError, GridSolution, Result};

/// Bulk term P(|u|²) of the grid functional.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BulkPotential {
    /// ¼W(s) with W(s) = k s − 2s² + s³.
    Landau(PotentialParameters),
    /// ½s, which turns the functional into the linear energy F.
    Quadratic,
}

impl BulkPotential {
    fn value(&self, s: f64) -> f64 {
        match self {
            BulkPotential::Landau(p) => 0.25 * p.w(s),
            BulkPotential::Quadratic => 0.5 * s,
        }
    }

    fn d1(&self, s: f64) -> f64 {
        match self {
            BulkPotential::Landau(p) => 0.25 * (p.kt_coefficient - 4.0 * s + 3.0 * s * s),
            BulkPotential::Quadratic => 0.5,
        }
    }

    fn d2(&self, s: f64) -> f64 {
        match self {
            BulkPotential::Landau(_) => 0.25 * (6.0 * s - 4.0),
            BulkPotential::Quadratic => 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonlinearOptions {
    pub h: f64,
    pub padding: f64,
    pub potential: BulkPotential,
    /// Stop when the largest gradient component falls below this.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl NonlinearOptions {
    pub fn new(h: f64, padding: f64, potential: BulkPotential) -> Self {
        Self { h, padding, potential, tolerance: 1e-8, max_iterations: 100_000 }
    }
}

fn rdot(a: Complex64, b: Complex64) -> f64 {
    a.re * b.re + a.im * b.im
}

/// Discrete functional
///
///   Σ_edges ½|u_a − u_b|²  +  Σ_cuts ½|u_a − g|²/θ  +  Σ_nodes h² P(|u_a|²)
///
/// whose stationarity conditions are the Shortley–Weller equations for
/// Δu = 2P'(|u|²)u (up to the usual symmetrisation at cut edges).
struct Functional<'a> {
    mesh: &'a Mesh,
    potential: BulkPotential,
    diag: Vec<f64>,
}

impl<'a> Functional<'a> {
    fn new(mesh: &'a Mesh, potential: BulkPotential) -> Self {
        let h2 = mesh.h * mesh.h;
        let diag = (0..mesh.free.len())
            .map(|k| {
                let mut d = h2;
                for dir in 0..4 {
                    d += match mesh.cut_of[k][dir] {
                        usize::MAX => 1.0,
                        c => 1.0 / mesh.cuts[c].theta,
                    };
                }
                d
            })
            .collect();
        Self { mesh, potential, diag }
    }

    fn energy(&self, u: &[Complex64]) -> f64 {
        let m = self.mesh;
        let h2 = m.h * m.h;
        let mut e = 0.0;
        for k in 0..u.len() {
            e += h2 * self.potential.value(u[k].norm_sqr());
            for dir in 0..4 {
                let nb = m.neighbours[k][dir];
                let cut = m.cut_of[k][dir];
                if cut != usize::MAX {
                    let c = &m.cuts[cut];
                    e += 0.5 * (u[k] - c.g).norm_sqr() / c.theta;
                } else if nb == usize::MAX {
                    e += 0.5 * u[k].norm_sqr();
                } else if dir % 2 == 0 {
                    e += 0.5 * (u[k] - u[nb]).norm_sqr();
                }
            }
        }
        e
    }

    fn gradient(&self, u: &[Complex64], grad: &mut [Complex64]) {
        let m = self.mesh;
        let h2 = m.h * m.h;
        for k in 0..u.len() {
            let mut g = u[k] * (2.0 * h2 * self.potential.d1(u[k].norm_sqr()));
            for dir in 0..4 {
                let nb = m.neighbours[k][dir];
                let cut = m.cut_of[k][dir];
                if cut != usize::MAX {
                    let c = &m.cuts[cut];
                    g += (u[k] - c.g) / c.theta;
                } else if nb == usize::MAX {
                    g += u[k];
                } else {
                    g += u[k] - u[nb];
                }
            }
            grad[k] = g;
        }
    }

    /// Second derivative of α ↦ E(u + αd) at α = 0.
    fn curvature(&self, u: &[Complex64], d: &[Complex64]) -> f64 {
        let m = self.mesh;
        let h2 = m.h * m.h;
        let mut q = 0.0;
        for k in 0..u.len() {
            let s = u[k].norm_sqr();
            let ud = rdot(u[k], d[k]);
            q += h2 * (4.0 * self.potential.d2(s) * ud * ud + 2.0 * self.potential.d1(s) * d[k].norm_sqr());
            for dir in 0..4 {
                let nb = m.neighbours[k][dir];
                let cut = m.cut_of[k][dir];
                if cut != usize::MAX {
                    q += d[k].norm_sqr() / m.cuts[cut].theta;
                } else if nb == usize::MAX {
                    q += d[k].norm_sqr();
                } else if dir % 2 == 0 {
                    q += (d[k] - d[nb]).norm_sqr();
                }
            }
        }
        q
    }
}

/// Minimise the Landau functional with default tolerances.
pub fn solve_nonlinear(
    config: &ParticleConfiguration,
    h: f64,
    padding: f64,
    params: PotentialParameters,
) -> Result<GridSolution> {
    params.validate()?;
    solve_nonlinear_with(config, &NonlinearOptions::new(h, padding, BulkPotential::Landau(params)))
}

/// Minimise the grid functional by Jacobi-preconditioned nonlinear
/// conjugate gradients (Polak–Ribière+, Armijo backtracking from a Newton
/// step). The returned energy is the minimum value of the functional.
pub fn solve_nonlinear_with(config: &ParticleConfiguration, options: &NonlinearOptions) -> Result<GridSolution> {
    if let BulkPotential::Landau(p) = options.potential {
        p.validate()?;
    }
    let mesh = Mesh::build(config, options.h, options.padding)?;
    let f = Functional::new(&mesh, options.potential);
    let n = mesh.free.len();
    let zero = Complex64::new(0.0, 0.0);
    let mut u = vec![zero; n];
    let mut grad = vec![zero; n];
    let mut z = vec![zero; n];
    let mut dir = vec![zero; n];
    let mut trial = vec![zero; n];
    let mut grad_new = vec![zero; n];

    f.gradient(&u, &mut grad);
    for k in 0..n {
        z[k] = grad[k] / f.diag[k];
        dir[k] = -z[k];
    }
    let mut gz: f64 = (0..n).map(|k| rdot(grad[k], z[k])).sum();
    let mut energy = f.energy(&u);
    let max_norm = |g: &[Complex64]| g.iter().map(|c| c.re.abs().max(c.im.abs())).fold(0.0, f64::max);
    let mut gmax = max_norm(&grad);
    let mut last_alpha = 1.0;
    let mut iterations = 0;

    while gmax >= options.tolerance {
        if iterations >= options.max_iterations {
            return Err(FieldSolverError::NonConverged { iterations, residual: gmax });
        }
        iterations += 1;
        let mut slope: f64 = (0..n).map(|k| rdot(grad[k], dir[k])).sum();
        if slope >= 0.0 {
            for k in 0..n {
                dir[k] = -z[k];
            }
            slope = -gz;
        }
        let curv = f.curvature(&u, &dir);
        let mut alpha = if curv > 0.0 { -slope / curv } else { 2.0 * last_alpha };
        let mut accepted = false;
        for _ in 0..60 {
            for k in 0..n {
                trial[k] = u[k] + dir[k] * alpha;
            }
            let e_trial = f.energy(&trial);
            let drop = e_trial - energy;
            // near the minimum the decrease sinks below rounding in E
            if drop <= 1e-4 * alpha * slope || drop.abs() <= 1e-14 * energy.abs().max(1.0) {
                energy = e_trial;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if !accepted {
            return Err(FieldSolverError::NonConverged { iterations, residual: gmax });
        }
        last_alpha = alpha;
        std::mem::swap(&mut u, &mut trial);
        f.gradient(&u, &mut grad_new);
        let mut num = 0.0;
        let mut gz_new = 0.0;
        for k in 0..n {
            let z_new = grad_new[k] / f.diag[k];
            num += rdot(grad_new[k], z_new - z[k]);
            gz_new += rdot(grad_new[k], z_new);
            z[k] = z_new;
        }
        let beta = if iterations % 200 == 0 { 0.0 } else { (num / gz).max(0.0) };
        for k in 0..n {
            dir[k] = -z[k] + dir[k] * beta;
        }
        std::mem::swap(&mut grad, &mut grad_new);
        gz = gz_new;
        gmax = max_norm(&grad);
    }
    let energy = f.energy(&u);
    Ok(mesh.into_solution(&u, energy, iterations, gmax))
}
