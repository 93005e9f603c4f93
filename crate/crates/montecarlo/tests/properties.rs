use colloids_montecarlo::{sweep, total_energy, AnnealState};
use proptest::prelude::*;

fn rotate(p: [f64; 2], phi: f64) -> [f64; 2] {
    let (s, c) = phi.sin_cos();
    [c * p[0] - s * p[1], s * p[0] + c * p[1]]
}

fn config() -> impl Strategy<Value = (Vec<[f64; 2]>, Vec<f64>)> {
    // three particles on a loose triangle
    (
        prop::array::uniform3(0.01f64..3.0),
        prop::array::uniform3(0.0f64..std::f64::consts::TAU),
        0.4f64..2.0,
    )
        .prop_map(|(gaps, angles, turn)| {
            let a = [0.0, 0.0];
            let b = [2.0 + gaps[0], 0.0];
            let c = rotate([2.0 + gaps[1] + gaps[2], 0.0], turn);
            (vec![a, b, c], angles.to_vec())
        })
        .prop_filter("hard core", |(p, _)| {
            (0..3).all(|i| (i + 1..3).all(|j| (p[i][0] - p[j][0]).hypot(p[i][1] - p[j][1]) > 2.0))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn energy_is_invariant_under_rigid_motions(
        (positions, angles) in config(),
        phi in 0.0f64..std::f64::consts::TAU,
        shift in prop::array::uniform2(-5.0f64..5.0),
        degrees in prop::sample::select(vec![[2, 2, 2], [3, 3, 3], [1, 3, 3], [1, 3, 1]]),
    ) {
        let base = AnnealState::new(positions.clone(), angles.clone(), degrees.to_vec(), 0.4, 23.0, 0).unwrap();
        let moved_pos = positions.iter().map(|&p| { let q = rotate(p, phi); [q[0] + shift[0], q[1] + shift[1]] }).collect();
        let moved_ang = angles.iter().map(|a| a + phi).collect();
        let moved = AnnealState::new(moved_pos, moved_ang, degrees.to_vec(), 0.4, 23.0, 0).unwrap();
        let (e0, e1) = (total_energy(&base), total_energy(&moved));
        prop_assert!((e0 - e1).abs() <= 1e-12 * (1.0 + e0.abs()));
    }

    #[test]
    fn fast_kernel_matches_reference_potential(
        (positions, angles) in config(),
        degrees in prop::sample::select(vec![[2, 2, 2], [3, 3, 3], [4, 4, 4], [1, 1, 1]]),
        seed in 0u64..1000,
    ) {
        let mut s = AnnealState::new(positions, angles, degrees.to_vec(), 0.4, 23.0, seed).unwrap();
        for _ in 0..20 {
            sweep(&mut s, 0.5);
        }
        let full = total_energy(&s);
        prop_assert!((s.energy() - full).abs() <= 1e-12 * (1.0 + full.abs()));
    }
}
