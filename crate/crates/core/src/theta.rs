//! The deformation matrix θ.

use crate::error::{Error, Result};

/// Skew-symmetric deformation matrix in canonical block form.
///
/// Only two configurations are accepted: `θ = 0` in any dimension, or an
/// invertible θ made of `d/2` identical blocks `θ₀·[[0, 1], [-1, 0]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaForm {
    d: usize,
    theta0: f64,
}

impl ThetaForm {
    pub fn zero(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::Domain("dimension must be positive".into()));
        }
        Ok(Self { d, theta0: 0.0 })
    }

    pub fn canonical(d: usize, theta0: f64) -> Result<Self> {
        if d == 0 {
            return Err(Error::Domain("dimension must be positive".into()));
        }
        if !theta0.is_finite() || theta0 < 0.0 {
            return Err(Error::Domain(format!("theta0 must be finite and >= 0, got {theta0}")));
        }
        if theta0 == 0.0 {
            return Self::zero(d);
        }
        if d % 2 != 0 {
            return Err(Error::Domain(format!(
                "an invertible skew-symmetric matrix needs even dimension, got d = {d}"
            )));
        }
        Ok(Self { d, theta0 })
    }

    /// Accepts a dense matrix if it is zero or already in canonical block form.
    pub fn from_matrix(m: &[Vec<f64>]) -> Result<Self> {
        let d = m.len();
        if d == 0 || m.iter().any(|row| row.len() != d) {
            return Err(Error::Shape("theta must be a non-empty square matrix".into()));
        }
        for i in 0..d {
            for j in 0..d {
                if m[i][j] != -m[j][i] {
                    return Err(Error::Domain(format!("theta is not skew-symmetric at ({i}, {j})")));
                }
            }
        }
        if m.iter().flatten().all(|&v| v == 0.0) {
            return Self::zero(d);
        }
        let theta0 = m[0].get(1).copied().unwrap_or(0.0);
        let candidate = Self::canonical(d, theta0)?;
        if candidate.matrix() != m {
            return Err(Error::Domain(
                "only theta = 0 or equal canonical 2x2 blocks are supported".into(),
            ));
        }
        Ok(candidate)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn theta0(&self) -> f64 {
        self.theta0
    }

    pub fn is_zero(&self) -> bool {
        self.theta0 == 0.0
    }

    pub fn is_invertible(&self) -> bool {
        !self.is_zero()
    }

    pub fn rank(&self) -> usize {
        if self.is_zero() {
            0
        } else {
            self.d
        }
    }

    pub fn kernel_dim(&self) -> usize {
        self.d - self.rank()
    }

    pub fn matrix(&self) -> Vec<Vec<f64>> {
        let mut m = vec![vec![0.0; self.d]; self.d];
        if self.is_invertible() {
            for b in 0..self.d / 2 {
                m[2 * b][2 * b + 1] = self.theta0;
                m[2 * b + 1][2 * b] = -self.theta0;
            }
        }
        m
    }

    /// `(t, θ s)`.
    pub fn pairing(&self, t: &[f64], s: &[f64]) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        (0..self.d / 2)
            .map(|b| t[2 * b] * s[2 * b + 1] - t[2 * b + 1] * s[2 * b])
            .sum::<f64>()
            * self.theta0
    }

    /// Normalization `c_θ = (θ₀/2π)^{d/2}` relating the trace to the matrix trace.
    pub fn trace_constant_closed_form(&self) -> Option<f64> {
        self.is_invertible()
            .then(|| (self.theta0 / (2.0 * std::f64::consts::PI)).powi((self.d / 2) as i32))
    }
}
