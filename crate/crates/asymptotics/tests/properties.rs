use std::f64::consts::{PI, TAU};

use colloids_asymptotics::*;
use colloids_model::{BoundaryData, Complex64};
use proptest::prelude::*;

fn data(coeffs: &[(f64, f64)]) -> BoundaryData {
    BoundaryData::from_modes(coeffs.iter().enumerate().map(|(i, &(a, b))| (i as i32 - 2, Complex64::new(a, b))))
}

proptest! {
    #[test]
    fn pair_energy_swap_symmetric(c1 in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 5),
                                  c2 in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 5),
                                  b in 0.5f64..6.0, alpha in 0.0f64..TAU) {
        let (g1, g2) = (data(&c1), data(&c2));
        let a = nonconstant_pair_energy(&g1, &g2, b, alpha, 0.2);
        let s = nonconstant_pair_energy(&g2, &g1, b, alpha + PI, 0.2);
        prop_assert!((a.total - s.total).abs() <= 1e-10 * a.total.abs());
        prop_assert!((a.neck_total() - s.neck_total()).abs() <= 1e-12 * (1.0 + a.neck_total().abs()));
    }

    #[test]
    fn constant_pair_swap_symmetric(g1 in -2.0f64..2.0, g2 in -2.0f64..2.0, b in 0.1f64..6.0) {
        let a = two_particle_o1(g1, g2, b, 0.2, true).unwrap();
        let c = two_particle_o1(g2, g1, b, 0.2, true).unwrap();
        prop_assert!((a.total - c.total).abs() <= 1e-12 * a.total.abs().max(1.0));
    }

    #[test]
    fn equal_degree_potential_invariances(d in 1i32..6, x in -6.0f64..6.0, y in -6.0f64..6.0,
                                          w1 in 0.0f64..TAU, w2 in 0.0f64..TAU, shift in -3.0f64..3.0, rot in 0.0f64..TAU) {
        let spec = PairPotentialSpec::new(d, d);
        let v = mc_pair_potential(&spec, [x, y], w1, w2);
        let (s, c) = rot.sin_cos();
        let rotated = mc_pair_potential(&spec, [c * x - s * y, s * x + c * y], w1 + rot, w2 + rot);
        let shifted = mc_pair_potential(&spec, [x, y], w1 + shift, w2 + shift);
        let radial = mc_pair_potential(&spec, [f64::hypot(x, y), 0.0], w1, w2);
        if v.is_finite() {
            prop_assert!((v - rotated).abs() < 1e-12);
            prop_assert!((v - shifted).abs() < 1e-12);
            prop_assert!((v - radial).abs() < 1e-12);
        } else {
            prop_assert!(rotated.is_infinite() && radial.is_infinite());
        }
    }

    #[test]
    fn mixed_potential_invariances(d1 in 1i32..5, d2 in 1i32..5, x in -6.0f64..6.0, y in -6.0f64..6.0,
                                   w1 in 0.0f64..TAU, w2 in 0.0f64..TAU, rot in 0.0f64..TAU) {
        let spec = PairPotentialSpec::new(d1, d2);
        let v = mc_pair_potential(&spec, [x, y], w1, w2);
        let (s, c) = rot.sin_cos();
        let rotated = mc_pair_potential(&spec, [c * x - s * y, s * x + c * y], w1 + rot, w2 + rot);
        let swapped = mc_pair_potential(&PairPotentialSpec::new(d2, d1), [-x, -y], w2, w1);
        if v.is_finite() {
            prop_assert!((v - rotated).abs() < 1e-12);
            prop_assert!((v - swapped).abs() < 1e-12);
        }
    }

    #[test]
    fn potential_vanishes_past_cutoff(d in 1i32..5, extra in 0.0f64..50.0, w in 0.0f64..TAU) {
        let spec = PairPotentialSpec::new(d, d);
        let v = mc_pair_potential(&spec, [2.0 + spec.cutoff_gap + 1e-9 + extra, 0.0], w, 0.0);
        prop_assert_eq!(v, 0.0);
        let at_cut = mc_pair_potential(&spec, [2.0 + spec.cutoff_gap, 0.0], w, 0.0);
        prop_assert!(at_cut.abs() <= (-30.0f64).exp() * (1.0 + 1e-12));
    }
}

#[test]
fn argmin_structure_by_parity() {
    for d in 2..7 {
        let spec = PairPotentialSpec::new(d, d);
        let n = 7200;
        let values: Vec<(f64, f64)> = (0..n)
            .map(|i| {
                let dw = TAU * i as f64 / n as f64;
                (dw, mc_pair_potential(&spec, [2.3, 0.0], dw, 0.0))
            })
            .collect();
        let min = values.iter().map(|v| v.1).fold(f64::INFINITY, f64::min);
        let period = TAU / (d - 1) as f64;
        let target = if d % 2 == 0 { 0.0 } else { period / 2.0 };
        for &(dw, v) in &values {
            if v <= min + 1e-12 {
                let off = (dw - target).rem_euclid(period);
                assert!(off.min(period - off) < 1e-3, "d={d} dw={dw}");
            }
        }
    }
}
