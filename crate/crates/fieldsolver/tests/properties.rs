use colloids_asymptotics::self_energy_mode;
use colloids_fieldsolver::solve_collocation;
use colloids_model::{BoundaryData, Particle, ParticleConfiguration};
use proptest::prelude::*;

fn rotated_pair(eps: f64, b: f64, phi: f64, shift: [f64; 2]) -> ParticleConfiguration {
    let c = 1.0 / (eps * eps) + b;
    let (s, co) = phi.sin_cos();
    let one = BoundaryData::constant(1.0);
    ParticleConfiguration::new(
        vec![
            Particle::unit([shift[0] - c * co, shift[1] - c * s], eps, one.clone()),
            Particle::unit([shift[0] + c * co, shift[1] + c * s], eps, one),
        ],
        eps,
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn constant_pair_energy_is_rigid_motion_invariant(
        b in 0.5f64..3.0,
        phi in 0.0f64..std::f64::consts::TAU,
        dx in -20.0f64..20.0,
        dy in -20.0f64..20.0,
    ) {
        let eps = 0.5;
        let reference = solve_collocation(&rotated_pair(eps, b, 0.0, [0.0, 0.0]), 24, 120).unwrap();
        let moved = solve_collocation(&rotated_pair(eps, b, phi, [dx, dy]), 24, 120).unwrap();
        prop_assert!(((moved.energy - reference.energy) / reference.energy).abs() < 1e-10);
    }

    #[test]
    fn single_disk_energy_ignores_orientation(d in 0i32..4, omega in 0.0f64..std::f64::consts::TAU) {
        let eps = 0.5;
        let cfg = ParticleConfiguration::new(
            vec![Particle::unit([0.0, 0.0], eps, BoundaryData::canonical(d, omega))],
            eps,
        )
        .unwrap();
        let sol = solve_collocation(&cfg, 6, 40).unwrap();
        let exact = self_energy_mode(d, 1.0, eps).unwrap();
        prop_assert!((sol.energy / exact - 1.0).abs() < 1e-10);
    }

    #[test]
    fn energy_is_quadratic_in_data(scale in 0.1f64..3.0, b in 0.5f64..3.0) {
        let eps = 0.5;
        let c = 1.0 / (eps * eps) + b;
        let build = |g: f64| {
            ParticleConfiguration::new(
                vec![
                    Particle::unit([-c, 0.0], eps, BoundaryData::constant(g)),
                    Particle::unit([c, 0.0], eps, BoundaryData::canonical(2, 0.3)),
                ],
                eps,
            )
            .unwrap()
        };
        let base = solve_collocation(&build(1.0), 20, 100).unwrap();
        let scaled_data = ParticleConfiguration::new(
            build(1.0)
                .particles
                .into_iter()
                .map(|p| {
                    let modes = p.data.modes().iter().map(|(m, g)| (*m, g * scale)).collect::<Vec<_>>();
                    Particle::new(p.center, p.radius, BoundaryData::from_modes(modes)).unwrap()
                })
                .collect(),
            eps,
        )
        .unwrap();
        let scaled = solve_collocation(&scaled_data, 20, 100).unwrap();
        prop_assert!((scaled.energy / (scale * scale * base.energy) - 1.0).abs() < 1e-10);
        prop_assert!(base.energy > 0.0);
    }
}
