use colloids_asymptotics::self_energy_blown_up;
use colloids_fieldsolver::{
    radial_nonlinear_profile, solve_collocation, solve_fd, solve_nonlinear, solve_nonlinear_with, tail_decay_rate,
    weighted_tail_difference, BulkPotential, FieldSample, FieldSolverError, GridSolution, NonlinearOptions, Ray,
};
use colloids_model::{BoundaryData, Particle, ParticleConfiguration, PotentialParameters};

fn single(eps: f64, data: BoundaryData) -> ParticleConfiguration {
    ParticleConfiguration::new(vec![Particle::unit([0.0, 0.0], eps, data)], eps).unwrap()
}

fn pair(eps: f64, b: f64, g1: BoundaryData, g2: BoundaryData) -> ParticleConfiguration {
    let c = 1.0 / (eps * eps) + b;
    ParticleConfiguration::new(vec![Particle::unit([-c, 0.0], eps, g1), Particle::unit([c, 0.0], eps, g2)], eps)
        .unwrap()
}

fn landau() -> PotentialParameters {
    PotentialParameters::default()
}

/// Radial solution of u'' + u'/ρ = ½(k − 4u² + 3u⁴)u on [r, r + length]
/// with u(r) = 1, by RK4 shooting on the initial slope.
fn radial_shooting(r: f64, length: f64, step: f64) -> Vec<(f64, f64)> {
    let rhs = |rho: f64, u: f64, v: f64| (v, -v / rho + 0.5 * (2.0 - 4.0 * u * u + 3.0 * u.powi(4)) * u);
    let integrate = |slope: f64, keep: bool| {
        let (mut u, mut v) = (1.0, slope);
        let mut path = vec![(0.0, 1.0)];
        let n = (length / step).round() as usize;
        for i in 0..n {
            let rho = r + i as f64 * step;
            let (k1u, k1v) = rhs(rho, u, v);
            let (k2u, k2v) = rhs(rho + step / 2.0, u + step / 2.0 * k1u, v + step / 2.0 * k1v);
            let (k3u, k3v) = rhs(rho + step / 2.0, u + step / 2.0 * k2u, v + step / 2.0 * k2v);
            let (k4u, k4v) = rhs(rho + step, u + step * k3u, v + step * k3v);
            u += step / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
            v += step / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
            if keep {
                path.push(((i + 1) as f64 * step, u));
            }
            if u < 0.0 {
                return (-1, path);
            }
            if v > 0.0 {
                return (1, path);
            }
        }
        (0, path)
    };
    let (mut lo, mut hi) = (-3.0, 0.0);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        match integrate(mid, false).0 {
            -1 => lo = mid,
            _ => hi = mid,
        }
    }
    integrate(0.5 * (lo + hi), true).1
}

fn relative_error(sol: &GridSolution, exact: f64) -> f64 {
    (sol.energy / exact - 1.0).abs()
}

#[test]
fn fd_single_disk_converges_at_second_order() {
    let cfg = single(0.5, BoundaryData::constant(1.0));
    let exact = self_energy_blown_up(0, 4.0).unwrap();
    let coarse = solve_fd(&cfg, 0.1, 10.0).unwrap();
    let fine = solve_fd(&cfg, 0.05, 10.0).unwrap();
    assert!(relative_error(&fine, exact) < 0.01);
    let ratio = relative_error(&coarse, exact) / relative_error(&fine, exact);
    assert!((2.5..8.0).contains(&ratio), "refinement ratio {ratio}");
}

#[test]
fn fd_agrees_with_collocation_on_two_disks() {
    let cfg = pair(0.5, 2.0, BoundaryData::constant(1.0), BoundaryData::canonical(2, 0.3));
    let col = solve_collocation(&cfg, 32, 160).unwrap();
    let fd = solve_fd(&cfg, 0.1, 10.0).unwrap();
    let budget = 0.01f64.max((-10.0f64).exp());
    assert!(((fd.energy - col.energy) / col.energy).abs() < budget);
    // field values away from the boundary agree as well
    for x in [[0.0, 0.0], [0.0, 5.0], [12.0, 1.0]] {
        let a = fd.sample(x).unwrap();
        let b = col.sample(x).unwrap();
        assert!((a - b).norm() < 1e-3, "{x:?}: {a} vs {b}");
    }
}

#[test]
fn fd_rejects_coarse_meshes_and_thin_padding() {
    let cfg = pair(0.5, 0.2, BoundaryData::constant(1.0), BoundaryData::constant(1.0));
    assert!(matches!(solve_fd(&cfg, 0.1, 10.0), Err(FieldSolverError::MeshTooCoarse { .. })));
    let cfg = single(0.5, BoundaryData::constant(1.0));
    assert!(matches!(solve_fd(&cfg, 0.1, 4.0), Err(FieldSolverError::InvalidInput(_))));
}

#[test]
fn grid_masks_disk_interiors() {
    let sol = solve_fd(&single(0.5, BoundaryData::constant(1.0)), 0.2, 8.0).unwrap();
    let (i, j) = sol.nearest_node([0.0, 0.0]).unwrap();
    assert!(sol.is_masked(i, j));
    assert!(sol.interpolate([1.0, 1.0]).is_none());
    let (i, j) = sol.nearest_node([0.0, 11.0]).unwrap();
    assert!(!sol.is_masked(i, j));
    assert_eq!(sol.node_value(0, 0).norm(), 0.0);
}

#[test]
fn zero_data_gives_zero_field() {
    let cfg = pair(0.5, 1.0, BoundaryData::constant(0.0), BoundaryData::constant(0.0));
    let sol = solve_nonlinear(&cfg, 0.25, 8.0, landau()).unwrap();
    assert_eq!(sol.energy, 0.0);
    for i in 0..sol.nx {
        for j in 0..sol.ny {
            if !sol.is_masked(i, j) {
                assert_eq!(sol.node_value(i, j).norm(), 0.0);
            }
        }
    }
}

#[test]
fn explicit_profile_values() {
    assert_eq!(radial_nonlinear_profile(0.0), 1.0);
    assert!((radial_nonlinear_profile(1.0) - 0.44967).abs() < 1e-5);
    assert!((radial_nonlinear_profile(1.0) - 0.449_663_041_870_031).abs() < 1e-14);
    let tail = 2.0 / (1.0 + std::f64::consts::SQRT_2).sqrt() * (-10.0f64).exp();
    assert!((radial_nonlinear_profile(10.0) / tail - 1.0).abs() < 1e-8);
    let path = radial_shooting(1e8, 20.0, 1e-3);
    for &(s, u) in path.iter().step_by(500).take(13) {
        assert!((u - radial_nonlinear_profile(s)).abs() < 1e-6, "s = {s}: {u} vs {}", radial_nonlinear_profile(s));
    }
}

#[test]
fn nonlinear_single_disk_matches_radial_ode() {
    let eps = 0.4;
    let r = 1.0 / (eps * eps);
    let sol = solve_nonlinear(&single(eps, BoundaryData::constant(1.0)), 0.1, 10.0, landau()).unwrap();
    let path = radial_shooting(r, 20.0, 1e-3);
    let mut worst: f64 = 0.0;
    for &(s, u) in path.iter().step_by(100).skip(1).take(60) {
        let v = sol.sample([r + s, 0.0]).unwrap();
        worst = worst.max((v.re - u).abs() + v.im.abs());
    }
    assert!(worst < 5e-4, "max deviation {worst}");
}

#[test]
fn tail_rates_of_grid_solutions() {
    let eps = 0.4;
    let r = 1.0 / (eps * eps);
    let cfg = single(eps, BoundaryData::constant(1.0));
    let nonlinear = solve_nonlinear(&cfg, 0.1, 10.0, landau()).unwrap();
    let linear = solve_fd(&cfg, 0.1, 10.0).unwrap();
    let ray = Ray::new([0.0, 0.0], [1.0, 0.0]);
    for sol in [&nonlinear, &linear] {
        let rate = tail_decay_rate(sol, ray, r + 2.0, r + 8.0, 40).unwrap();
        assert!((rate - 1.0).abs() < 0.02, "{rate}");
    }
}

#[test]
fn quadratic_potential_reproduces_linear_energy() {
    let cfg = pair(0.5, 1.0, BoundaryData::constant(1.0), BoundaryData::constant(1.0));
    let options = NonlinearOptions::new(0.1, 10.0, BulkPotential::Quadratic);
    let f = solve_nonlinear_with(&cfg, &options).unwrap();
    let col = solve_collocation(&cfg, 32, 160).unwrap();
    assert!((2.0 * f.energy / col.energy - 1.0).abs() < 0.01);
}

#[test]
fn nonlinear_energy_is_positive_and_below_linear() {
    let cfg = single(0.5, BoundaryData::constant(1.0));
    let e = solve_nonlinear(&cfg, 0.1, 10.0, landau()).unwrap();
    let f = solve_nonlinear_with(&cfg, &NonlinearOptions::new(0.1, 10.0, BulkPotential::Quadratic)).unwrap();
    assert!(e.energy > 0.0);
    assert!(e.energy < f.energy);
}

#[test]
fn weighted_tail_difference_shrinks_with_epsilon() {
    let mut previous = f64::INFINITY;
    for eps in [0.5, 0.4, 0.3] {
        let cfg = single(eps, BoundaryData::constant(1.0));
        let u = solve_nonlinear(&cfg, 0.1, 10.0, landau()).unwrap();
        let v = solve_nonlinear_with(&cfg, &NonlinearOptions::new(0.1, 10.0, BulkPotential::Quadratic)).unwrap();
        let d = weighted_tail_difference(&u, &v, &cfg, 0.5, 2.0).unwrap();
        assert!(d < previous, "eps {eps}: {d} >= {previous}");
        previous = d;
    }
}

#[test]
fn nonlinear_rejects_bad_potential_and_reports_stalls() {
    let cfg = single(0.5, BoundaryData::constant(1.0));
    assert!(matches!(
        solve_nonlinear(&cfg, 0.1, 10.0, PotentialParameters { kt_coefficient: 1.0 }),
        Err(FieldSolverError::Model(_))
    ));
    let mut options = NonlinearOptions::new(0.2, 8.0, BulkPotential::Landau(landau()));
    options.max_iterations = 3;
    assert!(matches!(solve_nonlinear_with(&cfg, &options), Err(FieldSolverError::NonConverged { .. })));
}
