/// T_n(0) = cos(nπ/2) for n ≥ 0.
pub fn chebyshev_t_at_zero(n: u32) -> i64 {
    match n % 4 {
        0 => 1,
        2 => -1,
        _ => 0,
    }
}

/// U_n(0) = cos(nπ/2) for n ≥ 0, with the convention U_{-1} = 0.
pub fn chebyshev_u_at_zero(n: i64) -> i64 {
    if n < 0 {
        return 0;
    }
    chebyshev_t_at_zero(n as u32)
}

/// c_{m+n} assembled from a split into nonnegative indices:
/// 2(T_m(0)T_n(0) − U_{m−1}(0)U_{n−1}(0)).
pub fn split_coefficient(m: u32, n: u32) -> i64 {
    let t = chebyshev_t_at_zero(m) * chebyshev_t_at_zero(n);
    let u = chebyshev_u_at_zero(m as i64 - 1) * chebyshev_u_at_zero(n as i64 - 1);
    2 * (t - u)
}

/// c_k = 2cos(kπ/2), exact for every integer k.
pub fn interaction_coefficient(k: i64) -> i64 {
    match k.rem_euclid(4) {
        0 => 2,
        2 => -2,
        _ => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_values() {
        assert_eq!(interaction_coefficient(0), 2);
        assert_eq!(interaction_coefficient(2), -2);
        assert_eq!(interaction_coefficient(5), 0);
        assert_eq!(interaction_coefficient(-2), -2);
        assert_eq!(interaction_coefficient(-7), 0);
    }

    #[test]
    fn every_split_agrees() {
        for k in 0..40u32 {
            for m in 0..=k {
                assert_eq!(split_coefficient(m, k - m), interaction_coefficient(k as i64));
            }
        }
    }

    #[test]
    fn matches_cosine() {
        for k in -50i64..50 {
            let c = 2.0 * (k as f64 * std::f64::consts::FRAC_PI_2).cos();
            assert!((c - interaction_coefficient(k) as f64).abs() < 1e-12);
        }
    }
}
