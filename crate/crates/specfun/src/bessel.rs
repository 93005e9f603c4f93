use crate::{Result, SpecFunError};

/// Largest Bessel order supported by the public entry points.
pub const MAX_ORDER: u32 = 64;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const SERIES_LIMIT: f64 = 2.0;

/// A value of e^t K_m(t) together with its order and argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledBesselValue {
    pub order: u32,
    pub argument: f64,
    pub value: f64,
}

impl ScaledBesselValue {
    pub fn new(order: u32, argument: f64) -> Result<Self> {
        let value = bessel_k_scaled(order, argument)?;
        Ok(Self { order, argument, value })
    }
}

fn check_argument(function: &'static str, t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(SpecFunError::Domain { function, value: t, reason: "requires 0 < t < inf" })
    }
}

fn check_order(function: &'static str, m: u32) -> Result<()> {
    if m <= MAX_ORDER {
        Ok(())
    } else {
        Err(SpecFunError::Domain { function, value: m as f64, reason: "order must be at most 64" })
    }
}

/// Unscaled K_0 and K_1 from the logarithmic power series, 0 < t < 2.
fn k01_series(t: f64) -> (f64, f64) {
    let y = 0.25 * t * t;
    let log_half = (0.5 * t).ln();

    // K_0 = −(ln(t/2) + γ) I_0 + Σ_{k≥1} H_k y^k / (k!)^2
    let mut term = 1.0;
    let mut i0 = 1.0;
    let mut harmonic = 0.0;
    let mut tail0 = 0.0;
    // K_1 = 1/t + ln(t/2) I_1 − (t/4) Σ (ψ(k+1)+ψ(k+2)) y^k / (k!(k+1)!)
    let mut term1 = 1.0;
    let mut i1_sum = 1.0;
    let mut psi_sum = (-EULER_GAMMA) + (1.0 - EULER_GAMMA);
    let mut tail1 = psi_sum;
    for k in 1..60 {
        let kf = k as f64;
        term *= y / (kf * kf);
        harmonic += 1.0 / kf;
        i0 += term;
        tail0 += term * harmonic;

        term1 *= y / (kf * (kf + 1.0));
        i1_sum += term1;
        psi_sum = 2.0 * (harmonic - EULER_GAMMA) + 1.0 / (kf + 1.0);
        tail1 += term1 * psi_sum;
        if term < 1e-18 * i0 && term1 < 1e-18 * i1_sum {
            break;
        }
    }
    let k0 = -(log_half + EULER_GAMMA) * i0 + tail0;
    let i1 = 0.5 * t * i1_sum;
    let k1 = 1.0 / t + log_half * i1 - 0.25 * t * tail1;
    (k0, k1)
}

/// Scaled e^t K_0 and e^t K_1 from Steed's continued fraction, t ≥ 2.
fn k01_continued_fraction(t: f64) -> (f64, f64) {
    let a1 = 0.25;
    let mut b = 2.0 * (1.0 + t);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..20_000 {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            break;
        }
    }
    let h = a1 * h;
    let k0 = (std::f64::consts::PI / (2.0 * t)).sqrt() / s;
    let k1 = k0 * (t + 0.5 - h) / t;
    (k0, k1)
}

fn k01_scaled(t: f64) -> (f64, f64) {
    if t < SERIES_LIMIT {
        let (k0, k1) = k01_series(t);
        let e = t.exp();
        (k0 * e, k1 * e)
    } else {
        k01_continued_fraction(t)
    }
}

fn scaled_sequence(max_order: u32, t: f64) -> Result<Vec<f64>> {
    let (k0, k1) = k01_scaled(t);
    let mut out = Vec::with_capacity(max_order as usize + 1);
    out.push(k0);
    if max_order == 0 {
        return Ok(out);
    }
    out.push(k1);
    for m in 1..max_order {
        let next = out[m as usize - 1] + 2.0 * m as f64 / t * out[m as usize];
        if !next.is_finite() {
            return Err(SpecFunError::Overflow { function: "bessel_k_scaled", order: m + 1, t });
        }
        out.push(next);
    }
    Ok(out)
}

/// e^t K_m(t) for 0 ≤ m ≤ 64 and t > 0.
pub fn bessel_k_scaled(m: u32, t: f64) -> Result<f64> {
    check_argument("bessel_k_scaled", t)?;
    check_order("bessel_k_scaled", m)?;
    Ok(scaled_sequence(m, t)?[m as usize])
}

/// e^t K_m(t) for every order 0..=max_order, computed in one recurrence pass.
pub fn bessel_k_scaled_all(max_order: u32, t: f64) -> Result<Vec<f64>> {
    check_argument("bessel_k_scaled_all", t)?;
    check_order("bessel_k_scaled_all", max_order)?;
    scaled_sequence(max_order, t)
}

/// e^t K_m'(t) = −e^t (K_{m−1}(t) + K_{m+1}(t))/2, with K_{−1} = K_1.
pub fn bessel_k_derivative_scaled(m: u32, t: f64) -> Result<f64> {
    check_argument("bessel_k_derivative_scaled", t)?;
    check_order("bessel_k_derivative_scaled", m)?;
    let seq = scaled_sequence(m + 1, t)?;
    let below = if m == 0 { seq[1] } else { seq[m as usize - 1] };
    Ok(-0.5 * (below + seq[m as usize + 1]))
}

/// K_m(t)/K_m(r) for integer m with |m| ≤ 64, evaluated in scaled form.
///
/// Underflows gracefully to 0 when t − r is large.
pub fn bessel_ratio(m: i64, t: f64, r: f64) -> Result<f64> {
    check_argument("bessel_ratio", t)?;
    check_argument("bessel_ratio", r)?;
    let order = m.unsigned_abs();
    if order > MAX_ORDER as u64 {
        return Err(SpecFunError::Domain {
            function: "bessel_ratio",
            value: m as f64,
            reason: "order must satisfy |m| <= 64",
        });
    }
    if t == r {
        return Ok(1.0);
    }
    let order = order as u32;
    let num = bessel_k_scaled(order, t)?;
    let den = bessel_k_scaled(order, r)?;
    Ok(num / den * (r - t).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    // e^t K_m(t) at 40 significant digits, truncated to 20.
    const REFERENCE: &[(u32, f64, f64)] = &[
        (0, 0.05, 3.2739042225345419774),
        (0, 0.5, 1.52410938577390953),
        (0, 1.0, 1.1444630798068950147),
        (0, 1.999, 0.84176019018918335826),
        (0, 2.0, 0.84156821507077141792),
        (0, 2.001, 0.84137637287354025209),
        (0, 5.0, 0.54780756431351898687),
        (0, 10.0, 0.39163193443659866573),
        (0, 44.44444444444444, 0.18747491891472220163),
        (0, 100.0, 0.12517562165912657889),
        (0, 1000.0, 0.039628321600754217115),
        (0, 10000.0, 0.012532984717699285288),
        (1, 0.05, 20.930465157060079956),
        (1, 0.5, 2.7310097082117857054),
        (1, 1.0, 1.6361534862632582465),
        (1, 1.999, 1.0338018208600278609),
        (1, 2.0, 1.0334768470686885732),
        (1, 2.001, 1.0331521611403637097),
        (1, 5.0, 0.60027385878831258294),
        (1, 10.0, 0.41076657059578875113),
        (1, 44.44444444444444, 0.18957240606836284413),
        (1, 100.0, 0.12579995047957852933),
        (1, 1000.0, 0.03964813081296021048),
        (1, 10000.0, 0.012533611351270505734),
        (2, 0.05, 840.49251050493774021),
        (2, 0.5, 12.448148218621052351),
        (2, 1.0, 4.4167700523334115077),
        (2, 2.0, 1.8750450621394599911),
        (2, 5.0, 0.78791710782884402004),
        (2, 1000.0, 0.039707617862380137536),
        (5, 0.05, 1291600100.1995862646),
        (5, 1.0, 981.19261150291560166),
        (5, 1.999, 69.807451217987660915),
        (5, 2.001, 69.565939785281757202),
        (5, 44.44444444444444, 0.24752921279253938619),
        (5, 10000.0, 0.012548659959538732147),
        (10, 0.05, 1.9999425269916873002e+21),
        (10, 2.0, 1200591.5980940752814),
        (10, 10.0, 35.556339158140534522),
        (10, 100.0, 0.20578687173955779807),
        (30, 0.05, 5.3581384184970972817e+78),
        (30, 1.0, 1.2792629867539753925e+40),
        (30, 44.44444444444444, 3035.6938936162437411),
        (30, 10000.0, 0.013109821246264083004),
        (64, 0.05, 3.5461474381308305392e+189),
        (64, 1.999, 7.4366390872327126307e+87),
        (64, 2.0, 7.2094678656970536379e+87),
        (64, 44.44444444444444, 76714673548768492.916),
        (64, 1000.0, 0.30668619366338999316),
        (64, 10000.0, 0.01538130803945993308),
    ];

    #[test]
    fn matches_high_precision_table() {
        for &(m, t, want) in REFERENCE {
            let got = bessel_k_scaled(m, t).unwrap();
            let rel = ((got - want) / want).abs();
            assert!(rel < 1e-12, "m={m} t={t}: got {got}, want {want}, rel {rel:e}");
        }
    }

    #[test]
    fn derivative_of_k0_is_minus_k1() {
        for &t in &[0.3, 1.0, 2.5, 40.0] {
            let d = bessel_k_derivative_scaled(0, t).unwrap();
            let k1 = bessel_k_scaled(1, t).unwrap();
            assert!((d + k1).abs() < 1e-15 * k1);
        }
    }

    #[test]
    fn domain_errors() {
        assert!(bessel_k_scaled(0, 0.0).is_err());
        assert!(bessel_k_scaled(0, -1.0).is_err());
        assert!(bessel_k_scaled(65, 1.0).is_err());
        assert!(bessel_ratio(0, 1.0, 0.0).is_err());
        assert!(matches!(bessel_k_scaled(64, 1e-4), Err(SpecFunError::Overflow { .. })));
    }

    #[test]
    fn ratio_identity_and_underflow() {
        assert_eq!(bessel_ratio(0, 7.5, 7.5).unwrap(), 1.0);
        let r = bessel_ratio(2, 800.0, 50.0).unwrap();
        assert!((0.0..1e-300).contains(&r));
        let r = bessel_ratio(3, 10.0, 5.0).unwrap();
        assert!(r > 0.0 && r < 1.0);
        assert_eq!(bessel_ratio(-3, 10.0, 5.0).unwrap(), r);
    }
}
