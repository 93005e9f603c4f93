use crate::{ModelError, Result};

/// Bulk potential W(u) = k|u|² − 2|u|⁴ + |u|⁶ with k = k(T).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialParameters {
    pub kt_coefficient: f64,
}

impl Default for PotentialParameters {
    fn default() -> Self {
        Self { kt_coefficient: 2.0 }
    }
}

impl PotentialParameters {
    pub fn new(kt_coefficient: f64) -> Result<Self> {
        let p = Self { kt_coefficient };
        p.validate()?;
        Ok(p)
    }

    /// The paranematic regime needs k(T) > 4/3.
    pub fn validate(&self) -> Result<()> {
        if self.kt_coefficient > 4.0 / 3.0 {
            Ok(())
        } else {
            Err(ModelError::InvalidPotential(self.kt_coefficient))
        }
    }

    /// W as a function of s = |u|².
    pub fn w(&self, s: f64) -> f64 {
        s * (self.kt_coefficient + s * (-2.0 + s))
    }

    /// Factor f(s) with ¼∇W(u) = f(|u|²)·u.
    pub fn quarter_gradient_factor(&self, s: f64) -> f64 {
        0.5 * (self.kt_coefficient + s * (-4.0 + 3.0 * s))
    }
}
