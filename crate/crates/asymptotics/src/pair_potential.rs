use std::f64::consts::PI;

/// Prefactor-free pair potential used by the Monte Carlo module.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairPotentialSpec {
    pub d1: i32,
    pub d2: i32,
    pub epsilon_sq: f64,
    /// Cutoff on |r| − 2 beyond which the potential is exactly zero.
    pub cutoff_gap: f64,
}

impl PairPotentialSpec {
    pub const DEFAULT_EPSILON_SQ: f64 = 0.4;

    pub fn new(d1: i32, d2: i32) -> Self {
        Self::with_epsilon_sq(d1, d2, Self::DEFAULT_EPSILON_SQ)
    }

    pub fn with_epsilon_sq(d1: i32, d2: i32, epsilon_sq: f64) -> Self {
        Self { d1, d2, epsilon_sq, cutoff_gap: 30.0 * epsilon_sq }
    }
}

/// V(r, ω1, ω2) for unit disks whose centers differ by r = x₂ − x₁.
///
/// Equal to −Re(g₁(p)·conj g₂(q))·exp(−(|r|−2)/ε²) with p, q the facing
/// boundary points; for equal degrees this is (−1)^{d+1}cos((d−1)(ω1−ω2))
/// times the exponential. Returns +∞ for |r| ≤ 2 and 0 beyond the cutoff.
pub fn mc_pair_potential(spec: &PairPotentialSpec, r: [f64; 2], omega1: f64, omega2: f64) -> f64 {
    let dist_sq = r[0] * r[0] + r[1] * r[1];
    if dist_sq <= 4.0 {
        return f64::INFINITY;
    }
    let reach = 2.0 + spec.cutoff_gap;
    if dist_sq > reach * reach {
        return 0.0;
    }
    let dist = dist_sq.sqrt();
    let radial = (-(dist - 2.0) / spec.epsilon_sq).exp();
    let (d1, d2) = (spec.d1, spec.d2);
    let angular = if d1 == d2 {
        let sign = if d1.rem_euclid(2) == 0 { -1.0 } else { 1.0 };
        sign * ((d1 - 1) as f64 * (omega1 - omega2)).cos()
    } else {
        let alpha = r[1].atan2(r[0]);
        let phase = d1 as f64 * alpha - (d1 - 1) as f64 * omega1 - d2 as f64 * (alpha + PI) + (d2 - 1) as f64 * omega2;
        -phase.cos()
    };
    angular * radial
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let s2 = PairPotentialSpec::new(2, 2);
        let v = mc_pair_potential(&s2, [2.4, 0.0], 0.3, 0.3);
        assert!((v + (-1.0f64).exp()).abs() < 1e-15);
        let s3 = PairPotentialSpec::new(3, 3);
        let v = mc_pair_potential(&s3, [0.0, 2.4], PI / 2.0, 0.0);
        assert!((v + (-1.0f64).exp()).abs() < 1e-15);
        assert_eq!(mc_pair_potential(&s3, [1.9, 0.0], 0.0, 0.0), f64::INFINITY);
        assert_eq!(mc_pair_potential(&s3, [2.0, 0.0], 0.0, 0.0), f64::INFINITY);
        assert_eq!(mc_pair_potential(&s3, [2.0 + 12.0 + 1e-9, 0.0], 0.0, 0.0), 0.0);
    }

    #[test]
    fn mixed_formula_reduces_to_equal_degree() {
        for d in 1..5 {
            let s = PairPotentialSpec::new(d, d);
            for &(x, y, w1, w2) in &[(2.3, 0.4, 0.2, 1.3), (-1.0, 2.2, 2.0, -0.4)] {
                let alpha = f64::atan2(y, x);
                let phase = d as f64 * alpha - (d - 1) as f64 * w1 - d as f64 * (alpha + PI) + (d - 1) as f64 * w2;
                let dist = f64::hypot(x, y);
                let general = -phase.cos() * (-(dist - 2.0) / s.epsilon_sq).exp();
                assert!((general - mc_pair_potential(&s, [x, y], w1, w2)).abs() < 1e-14);
            }
        }
    }
}
