use crate::{erfc, Result, SpecFunError};

/// Default cap on the argument of [`polylog_half`].
pub const POLYLOG_X_MAX: f64 = 0.999;

const DIRECT_TERMS: usize = 64;

/// Θ_k(x) with bookkeeping about the series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaSeries {
    pub index: u32,
    pub argument: f64,
    pub value: f64,
    pub terms_used: usize,
}

/// Σ_{n≥0} x^{a+sn}/√(a+sn) for 0 < x < 1, a ≥ 1, s > 0.
///
/// Sums directly until the terms drop below the rounding level and closes
/// any remaining tail with Euler–Maclaurin, whose leading integral is an erfc.
fn power_over_sqrt_sum(x: f64, a: f64, s: f64) -> (f64, usize) {
    let lambda = -x.ln();
    let mut sum = 0.0;
    let mut comp = 0.0;
    for n in 0..DIRECT_TERMS {
        let u = a + s * n as f64;
        let term = (-lambda * u).exp() / u.sqrt();
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if term < 1e-18 * sum {
            return (sum, n + 1);
        }
    }
    (sum + euler_maclaurin_tail(lambda, a + s * DIRECT_TERMS as f64, s), DIRECT_TERMS)
}

/// Σ_{n≥0} G(u0 + s n) with G(u) = e^{−λu} u^{−1/2}.
fn euler_maclaurin_tail(lambda: f64, u0: f64, s: f64) -> f64 {
    let integral = (std::f64::consts::PI / lambda).sqrt() * erfc((lambda * u0).sqrt()) / s;
    // Derivatives of G up to order 7 via Leibniz on e^{−λu} · u^{−1/2}.
    let mut power_derivs = [0.0; 8];
    let mut coeff = 1.0;
    for (i, slot) in power_derivs.iter_mut().enumerate() {
        *slot = coeff * u0.powf(-0.5 - i as f64);
        coeff *= -0.5 - i as f64;
    }
    let exp_part = (-lambda * u0).exp();
    let deriv = |j: usize| -> f64 {
        let mut total = 0.0;
        let mut binom = 1.0;
        for i in 0..=j {
            total += binom * (-lambda).powi((j - i) as i32) * power_derivs[i];
            binom = binom * (j - i) as f64 / (i + 1) as f64;
        }
        exp_part * total * s.powi(j as i32)
    };
    integral + 0.5 * deriv(0) - deriv(1) / 12.0 + deriv(3) / 720.0 - deriv(5) / 30_240.0
        + deriv(7) / 1_209_600.0
}

/// Li_{1/2}(x) = Σ_{n≥1} xⁿ/√n on 0 ≤ x ≤ 0.999.
pub fn polylog_half(x: f64) -> Result<f64> {
    polylog_half_capped(x, POLYLOG_X_MAX)
}

/// Li_{1/2}(x) on 0 ≤ x ≤ x_max, with x_max < 1.
pub fn polylog_half_capped(x: f64, x_max: f64) -> Result<f64> {
    if !(0.0..=x_max).contains(&x) || x_max >= 1.0 {
        return Err(SpecFunError::Domain {
            function: "polylog_half",
            value: x,
            reason: "requires 0 <= x <= x_max < 1",
        });
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    Ok(power_over_sqrt_sum(x, 1.0, 1.0).0)
}

/// Θ_k(x) = √2 Σ_{n≥0} x^{k+2n}/√(k+2n), returned with the number of terms used.
pub fn theta_series(k: u32, x: f64) -> Result<ThetaSeries> {
    if k == 0 {
        return Err(SpecFunError::Domain { function: "theta_k", value: 0.0, reason: "index k must be >= 1" });
    }
    if !(x > 0.0 && x < 1.0) {
        return Err(SpecFunError::Domain { function: "theta_k", value: x, reason: "requires 0 < x < 1" });
    }
    let (sum, terms_used) = power_over_sqrt_sum(x, k as f64, 2.0);
    Ok(ThetaSeries { index: k, argument: x, value: std::f64::consts::SQRT_2 * sum, terms_used })
}

/// Θ_k(x) for k ≥ 1 and 0 < x < 1.
pub fn theta_k(k: u32, x: f64) -> Result<f64> {
    theta_series(k, x).map(|t| t.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Li_{1/2} evaluated at 30 significant digits, truncated to 20.
    const POLYLOG_REFERENCE: &[(f64, f64)] = &[
        (0.25, 0.30573493039929638017),
        (0.5, 0.80612672304285226132),
        (0.9, 4.0219504274733606849),
        (0.99, 16.221830753428111347),
        (0.999, 54.575749065445717342),
    ];

    #[test]
    fn polylog_reference_values() {
        for &(x, want) in POLYLOG_REFERENCE {
            let got = polylog_half(x).unwrap();
            assert!(((got - want) / want).abs() < 1e-12, "x={x}: {got} vs {want}");
        }
    }

    #[test]
    fn polylog_domain() {
        assert_eq!(polylog_half(0.0).unwrap(), 0.0);
        assert!(polylog_half(0.9991).is_err());
        assert!(polylog_half(-0.1).is_err());
        assert!(polylog_half_capped(0.9995, 0.9999).is_ok());
    }

    #[test]
    fn theta_small_argument_and_domain() {
        let v = theta_k(3, 0.1).unwrap();
        assert!((v - 8.228_8e-4).abs() < 1e-7);
        assert!(theta_k(3, 0.0).is_err());
        assert!(theta_k(3, 1.0).is_err());
        assert!(theta_k(0, 0.5).is_err());
        let t = theta_series(3, 0.1).unwrap();
        assert!(t.terms_used < DIRECT_TERMS);
    }
}
