use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::{ModelError, Result};

/// How a boundary datum was specified.
#[derive(Debug, Clone, PartialEq)]
pub enum DataKind {
    Constant(f64),
    CanonicalDegree { d: i32, omega: f64 },
    General,
}

/// Dirichlet data on one circle as a finite Fourier series g(θ) = Σ g_m e^{imθ}.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryData {
    modes: BTreeMap<i32, Complex64>,
    kind: DataKind,
}

/// g(θ) = e^{i(dθ − (d−1)ω)}: one mode m = d with amplitude e^{−i(d−1)ω}.
pub fn make_canonical(d: i32, omega: f64) -> BoundaryData {
    let amp = Complex64::from_polar(1.0, -((d - 1) as f64) * omega);
    BoundaryData { modes: BTreeMap::from([(d, amp)]), kind: DataKind::CanonicalDegree { d, omega } }
}

impl BoundaryData {
    pub fn constant(g: f64) -> Self {
        Self { modes: BTreeMap::from([(0, Complex64::new(g, 0.0))]), kind: DataKind::Constant(g) }
    }

    pub fn canonical(d: i32, omega: f64) -> Self {
        make_canonical(d, omega)
    }

    pub fn from_modes<I: IntoIterator<Item = (i32, Complex64)>>(modes: I) -> Self {
        let mut map = BTreeMap::new();
        for (m, g) in modes {
            *map.entry(m).or_insert(Complex64::new(0.0, 0.0)) += g;
        }
        Self { modes: map, kind: DataKind::General }
    }

    /// Uniform-angle DFT of samples at θ_j = 2πj/N, keeping |m| ≤ cutoff.
    pub fn from_samples(samples: &[Complex64], cutoff: u32) -> Result<Self> {
        let n = samples.len();
        if n < 2 * cutoff as usize + 1 {
            return Err(ModelError::InvalidData(format!(
                "{n} samples cannot resolve modes up to |m| = {cutoff}"
            )));
        }
        let c = cutoff as i32;
        let modes = (-c..=c).map(|m| {
            let sum: Complex64 = samples
                .iter()
                .enumerate()
                .map(|(j, g)| g * Complex64::from_polar(1.0, -(m as f64) * TAU * j as f64 / n as f64))
                .sum();
            (m, sum / n as f64)
        });
        Ok(Self::from_modes(modes))
    }

    pub fn kind(&self) -> &DataKind {
        &self.kind
    }

    pub fn modes(&self) -> &BTreeMap<i32, Complex64> {
        &self.modes
    }

    pub fn mode(&self, m: i32) -> Complex64 {
        self.modes.get(&m).copied().unwrap_or_default()
    }

    /// Largest |m| carrying a nonzero amplitude.
    pub fn max_abs_mode(&self) -> u32 {
        self.modes
            .iter()
            .filter(|(_, g)| g.norm() > 0.0)
            .map(|(m, _)| m.unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    /// The real constant g if the datum is a constant.
    pub fn as_constant(&self) -> Option<f64> {
        match self.kind {
            DataKind::Constant(g) => Some(g),
            _ => {
                let only_zero = self.modes.iter().all(|(m, g)| *m == 0 || g.norm() == 0.0);
                let g0 = self.mode(0);
                (only_zero && g0.im == 0.0).then_some(g0.re)
            }
        }
    }

    pub fn eval(&self, theta: f64) -> Complex64 {
        self.modes.iter().map(|(m, g)| g * Complex64::from_polar(1.0, *m as f64 * theta)).sum()
    }

    /// Mean-square norm ⨍|g|² = Σ |g_m|².
    pub fn mean_square(&self) -> f64 {
        self.modes.values().map(|g| g.norm_sqr()).sum()
    }

    /// Σ (1 + m²)|g_m|².
    pub fn h1_norm_sq(&self) -> f64 {
        self.modes.iter().map(|(m, g)| (1.0 + (*m as f64).powi(2)) * g.norm_sqr()).sum()
    }

    /// Σ_p g_{pk}, the sum of every k-th Fourier coefficient.
    pub fn stride_sum(&self, k: u32) -> Complex64 {
        assert!(k > 0, "stride must be positive");
        self.modes.iter().filter(|(m, _)| m.rem_euclid(k as i32) == 0).map(|(_, g)| *g).sum()
    }

    /// (1/k) Σ_{j=1}^{k} g(2πj/k).
    pub fn grid_average(&self, k: u32) -> Complex64 {
        assert!(k > 0, "stride must be positive");
        (1..=k).map(|j| self.eval(TAU * j as f64 / k as f64)).sum::<Complex64>() / k as f64
    }
}
