use colloids_model::ParticleConfiguration;
use num_complex::Complex64;

use crate::grid::{Mesh, Node, DIRECTIONS};
use crate::{FieldSolverError, GridSolution, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdOptions {
    pub h: f64,
    pub padding: f64,
    /// Relative residual target of the Krylov solve.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl FdOptions {
    pub fn new(h: f64, padding: f64) -> Self {
        Self { h, padding, tolerance: 1e-10, max_iterations: 50_000 }
    }
}

/// Sparse operator with at most four off-diagonal entries per row.
struct Stencil {
    diag: Vec<f64>,
    off: Vec<[(usize, f64); 4]>,
}

impl Stencil {
    fn apply(&self, x: &[f64], y: &mut [f64]) {
        for (k, (d, row)) in self.diag.iter().zip(&self.off).enumerate() {
            let mut acc = d * x[k];
            for &(c, v) in row {
                if c != usize::MAX {
                    acc += v * x[c];
                }
            }
            y[k] = acc;
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Jacobi-preconditioned BiCGSTAB. Returns (iterations, relative residual).
fn bicgstab(op: &Stencil, b: &[f64], x: &mut [f64], tol: f64, max_iter: usize) -> (usize, f64) {
    let n = b.len();
    let bnorm = norm(b);
    if bnorm == 0.0 {
        x.iter_mut().for_each(|v| *v = 0.0);
        return (0, 0.0);
    }
    let inv: Vec<f64> = op.diag.iter().map(|d| 1.0 / d).collect();
    let mut r = vec![0.0; n];
    op.apply(x, &mut r);
    for k in 0..n {
        r[k] = b[k] - r[k];
    }
    let mut r_hat = r.clone();
    let (mut rho_old, mut alpha, mut omega) = (1.0, 1.0, 1.0);
    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];
    let mut p_hat = vec![0.0; n];
    let mut s_hat = vec![0.0; n];
    let mut t = vec![0.0; n];
    let mut rel = norm(&r) / bnorm;
    for it in 1..=max_iter {
        if rel < tol {
            return (it - 1, rel);
        }
        let rho = dot(&r_hat, &r);
        if rho.abs() < 1e-300 {
            r_hat.copy_from_slice(&r);
            rho_old = 1.0;
            alpha = 1.0;
            omega = 1.0;
            v.iter_mut().for_each(|z| *z = 0.0);
            p.iter_mut().for_each(|z| *z = 0.0);
            continue;
        }
        let beta = (rho / rho_old) * (alpha / omega);
        for k in 0..n {
            p[k] = r[k] + beta * (p[k] - omega * v[k]);
            p_hat[k] = inv[k] * p[k];
        }
        op.apply(&p_hat, &mut v);
        alpha = rho / dot(&r_hat, &v);
        for k in 0..n {
            r[k] -= alpha * v[k];
            x[k] += alpha * p_hat[k];
        }
        rel = norm(&r) / bnorm;
        if rel < tol {
            return (it, rel);
        }
        for k in 0..n {
            s_hat[k] = inv[k] * r[k];
        }
        op.apply(&s_hat, &mut t);
        let tt = dot(&t, &t);
        omega = if tt > 0.0 { dot(&t, &r) / tt } else { 0.0 };
        for k in 0..n {
            x[k] += omega * s_hat[k];
            r[k] -= omega * t[k];
        }
        rel = norm(&r) / bnorm;
        rho_old = rho;
        if omega == 0.0 {
            r_hat.copy_from_slice(&r);
            rho_old = 1.0;
            alpha = 1.0;
            omega = 1.0;
        }
    }
    // report the true residual
    op.apply(x, &mut t);
    let true_rel = b.iter().zip(&t).map(|(bi, ti)| (bi - ti).powi(2)).sum::<f64>().sqrt() / bnorm;
    (max_iter, true_rel)
}

/// Shortley–Weller discretisation of (−Δ + 1)u = 0 with Dirichlet data.
fn assemble(mesh: &Mesh) -> (Stencil, Vec<Complex64>) {
    let n = mesh.free.len();
    let h = mesh.h;
    let mut diag = vec![1.0; n];
    let mut off = vec![[(usize::MAX, 0.0); 4]; n];
    let mut rhs = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..n {
        for axis in 0..2 {
            let (dp, dm) = (2 * axis, 2 * axis + 1);
            let arm = |d: usize| match mesh.cut_of[k][d] {
                usize::MAX => h,
                c => mesh.cuts[c].theta * h,
            };
            let (hp, hm) = (arm(dp), arm(dm));
            let cp = 2.0 / (hp * (hp + hm));
            let cm = 2.0 / (hm * (hp + hm));
            diag[k] += cp + cm;
            for (d, c) in [(dp, cp), (dm, cm)] {
                if mesh.cut_of[k][d] != usize::MAX {
                    rhs[k] += mesh.cuts[mesh.cut_of[k][d]].g * c;
                } else if mesh.neighbours[k][d] != usize::MAX {
                    off[k][d] = (mesh.neighbours[k][d], -c);
                }
            }
        }
    }
    (Stencil { diag, off }, rhs)
}

/// Derivative at s = 0 of the interpolant through `pts`, whose first
/// abscissa is 0.
fn lagrange_derivative_at_zero(pts: &[(f64, Complex64)]) -> Complex64 {
    let mut d = pts[0].1 * -pts[1..].iter().map(|p| 1.0 / p.0).sum::<f64>();
    for (k, &(sk, vk)) in pts.iter().enumerate().skip(1) {
        let mut w = 1.0 / sk;
        for (j, &(sj, _)) in pts.iter().enumerate().skip(1) {
            if j != k {
                w *= -sj / (sk - sj);
            }
        }
        d += vk * w;
    }
    d
}

/// κ = −Re ∮ g·conj(∂u/∂n) ds from one-sided cubic differences at every cut edge.
///
/// The normal derivative is recovered from the derivative along the grid line
/// and the known tangential derivative of the data. Horizontal and vertical
/// crossings are blended with the partition of unity n_x⁴ + n_y⁴ so that
/// nearly tangent crossings carry no weight.
fn flux_energy(mesh: &Mesh, u: &[Complex64]) -> f64 {
    let h = mesh.h;
    let mut total = Complex64::new(0.0, 0.0);
    for cut in &mesh.cuts {
        let k = cut.node;
        let back_dir = cut.dir ^ 1;
        let (i, j) = mesh.free[k];
        let (di, dj) = DIRECTIONS[back_dir];
        // one-sided cubic through the crossing, the node and up to two nodes behind it
        let mut pts = [(0.0, cut.g), (cut.theta * h, u[k]), (0.0, cut.g), (0.0, cut.g)];
        let mut len = 2;
        for step in 1..=2i64 {
            let value = match mesh.node(i as i64 + step * di, j as i64 + step * dj) {
                Node::Free(b) => u[b],
                Node::Outer => Complex64::new(0.0, 0.0),
                Node::Inside(_) => break,
            };
            pts[len] = ((cut.theta + step as f64) * h, value);
            len += 1;
        }
        let d_along = lagrange_derivative_at_zero(&pts[..len]);
        // e points from the crossing back towards the node
        let (ci, cj) = DIRECTIONS[cut.dir];
        let e = [-(ci as f64), -(cj as f64)];
        let [nx, ny] = cut.normal;
        let n_dot_e = nx * e[0] + ny * e[1];
        let t_dot_e = -ny * e[0] + nx * e[1];
        if n_dot_e <= 1e-12 {
            continue;
        }
        let d_normal = (d_along - cut.g_tangential * t_dot_e) / n_dot_e;
        let (n4x, n4y) = (nx.powi(4), ny.powi(4));
        let weight = if cut.dir < 2 { n4x } else { n4y } / (n4x + n4y);
        total += cut.g * d_normal.conj() * (weight * h / n_dot_e);
    }
    -total.re
}

/// Finite-difference oracle with default tolerances.
pub fn solve_fd(config: &ParticleConfiguration, h: f64, padding: f64) -> Result<GridSolution> {
    solve_fd_with(config, &FdOptions::new(h, padding))
}

/// Shortley–Weller finite differences on a uniform grid, homogeneous
/// Dirichlet on the outer box, BiCGSTAB for the nonsymmetric system.
pub fn solve_fd_with(config: &ParticleConfiguration, options: &FdOptions) -> Result<GridSolution> {
    let mesh = Mesh::build(config, options.h, options.padding)?;
    let (op, rhs) = assemble(&mesh);
    let n = rhs.len();
    let mut values = vec![Complex64::new(0.0, 0.0); n];
    let mut iterations = 0;
    let mut residual: f64 = 0.0;
    for part in 0..2 {
        let b: Vec<f64> = rhs.iter().map(|z| if part == 0 { z.re } else { z.im }).collect();
        let mut x = vec![0.0; n];
        let (it, rel) = bicgstab(&op, &b, &mut x, options.tolerance, options.max_iterations);
        if rel > options.tolerance {
            return Err(FieldSolverError::NonConverged { iterations: it, residual: rel });
        }
        iterations += it;
        residual = residual.max(rel);
        for (v, xi) in values.iter_mut().zip(x) {
            if part == 0 {
                v.re = xi;
            } else {
                v.im = xi;
            }
        }
    }
    let energy = flux_energy(&mesh, &values);
    Ok(mesh.into_solution(&values, energy, iterations, residual))
}
