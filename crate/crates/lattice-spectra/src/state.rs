//! Wavefunctions on a finite window of lattice sites.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex amplitudes ψ(n) on an inclusive window of sites; amplitudes are
/// implicitly zero outside the window.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeState {
    start: i64,
    amplitudes: Vec<Complex64>,
}

impl LatticeState {
    pub fn new(start: i64, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::invalid("amplitudes", "state window must be nonempty"));
        }
        if amplitudes.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::invalid("amplitudes", "amplitudes must be finite"));
        }
        Ok(LatticeState { start, amplitudes })
    }

    pub fn from_real(start: i64, values: &[f64]) -> Result<Self> {
        LatticeState::new(
            start,
            values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        )
    }

    /// Inclusive site window [a, b].
    pub fn window(&self) -> (i64, i64) {
        (
            self.start,
            self.start + self.amplitudes.len() as i64 - 1,
        )
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// ψ(n); zero outside the window.
    pub fn amplitude(&self, n: i64) -> Complex64 {
        let idx = n - self.start;
        if idx < 0 || idx >= self.amplitudes.len() as i64 {
            Complex64::new(0.0, 0.0)
        } else {
            self.amplitudes[idx as usize]
        }
    }

    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Returns the state scaled to unit norm.
    pub fn normalized(&self) -> Result<Self> {
        let n2 = self.norm_sq();
        if n2 <= 0.0 || !n2.is_finite() {
            return Err(Error::invalid("state", "cannot normalize a zero-norm state"));
        }
        let inv = 1.0 / n2.sqrt();
        Ok(LatticeState {
            start: self.start,
            amplitudes: self.amplitudes.iter().map(|a| a * inv).collect(),
        })
    }

    /// Inverse participation ratio Σ|ψ|⁴ of the normalized state;
    /// ~1 for a point-localized state, ~1/N for an extended one.
    pub fn ipr(&self) -> f64 {
        let n2 = self.norm_sq();
        if n2 == 0.0 {
            return 0.0;
        }
        let q: f64 = self.amplitudes.iter().map(|a| a.norm_sqr().powi(2)).sum();
        q / (n2 * n2)
    }

    /// Fraction of the normalized probability carried by sites a..=b.
    pub fn probability_weight(&self, a: i64, b: i64) -> f64 {
        let n2 = self.norm_sq();
        if n2 == 0.0 {
            return 0.0;
        }
        let w: f64 = (a..=b).map(|n| self.amplitude(n).norm_sqr()).sum();
        w / n2
    }

    /// ⟨self|other⟩ over the overlap of the two windows.
    pub fn inner(&self, other: &LatticeState) -> Complex64 {
        let (a0, a1) = self.window();
        let (b0, b1) = other.window();
        let lo = a0.max(b0);
        let hi = a1.min(b1);
        (lo..=hi)
            .map(|n| self.amplitude(n).conj() * other.amplitude(n))
            .sum()
    }

    /// |⟨self|other⟩| between the normalized states.
    pub fn overlap(&self, other: &LatticeState) -> f64 {
        let denom = (self.norm_sq() * other.norm_sq()).sqrt();
        if denom == 0.0 {
            0.0
        } else {
            self.inner(other).norm() / denom
        }
    }
}
