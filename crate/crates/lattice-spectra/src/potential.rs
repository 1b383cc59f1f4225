//! Potential profiles on the lattice, in units of K0.

use crate::error::{Error, Result};

/// Hard wall on sites n ≤ 0, a constant step of signed height `height` on
/// sites 1..=width, and zero potential beyond.
///
/// Negative height is a well, positive height a barrier. The wall is a
/// Dirichlet boundary (the wavefunction vanishes on n ≤ 0), not an infinite
/// potential value, so negation under duality leaves it unchanged.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WallStepPotential {
    width: usize,
    height: f64,
}

impl WallStepPotential {
    pub fn new(width: usize, height: f64) -> Result<Self> {
        if width == 0 {
            return Err(Error::invalid("width", "step must cover at least one site"));
        }
        if !height.is_finite() {
            return Err(Error::invalid("height", "step height must be finite"));
        }
        Ok(WallStepPotential { width, height })
    }

    /// Number of sites the step covers (sites 1..=width).
    pub fn width(&self) -> usize {
        self.width
    }

    /// Signed step height in units of K0; negative = well, positive = barrier.
    pub fn height(&self) -> f64 {
        self.height
    }

    /// Potential value on a non-wall site (n ≥ 1).
    pub fn value(&self, n: i64) -> f64 {
        debug_assert!(n >= 1, "site {n} is inside the wall");
        if n >= 1 && n <= self.width as i64 {
            self.height
        } else {
            0.0
        }
    }

    /// Duality partner: the step height negated, wall unchanged.
    pub fn dual(&self) -> Self {
        WallStepPotential {
            width: self.width,
            height: -self.height,
        }
    }

    /// Samples the profile on sites 1..=n_sites as a finite potential with
    /// Dirichlet boundaries. The left boundary reproduces the wall exactly;
    /// the right boundary is a truncation artifact.
    pub fn to_site_potential(&self, n_sites: usize) -> Result<SitePotential> {
        let values = (1..=n_sites as i64).map(|n| self.value(n)).collect();
        SitePotential::new(1, values)
    }
}

/// Arbitrary bounded potential on a finite window of sites, with the
/// wavefunction constrained to vanish outside the window (Dirichlet).
#[derive(Debug, Clone, PartialEq)]
pub struct SitePotential {
    start: i64,
    values: Vec<f64>,
}

impl SitePotential {
    pub fn new(start: i64, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid("values", "window must be nonempty"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("values", "potential values must be finite"));
        }
        Ok(SitePotential { start, values })
    }

    pub fn zero(start: i64, len: usize) -> Self {
        SitePotential {
            start,
            values: vec![0.0; len.max(1)],
        }
    }

    /// Inclusive site window [a, b].
    pub fn window(&self) -> (i64, i64) {
        (self.start, self.start + self.values.len() as i64 - 1)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value_at(&self, n: i64) -> Option<f64> {
        let idx = n.checked_sub(self.start)?;
        if idx < 0 {
            return None;
        }
        self.values.get(idx as usize).copied()
    }

    /// Duality partner: every value negated, boundary unchanged.
    pub fn dual(&self) -> Self {
        SitePotential {
            start: self.start,
            values: self.values.iter().map(|v| -v).collect(),
        }
    }
}

/// Kind of an energy interval reported by the solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BandKind {
    /// Continuum of scattering-like states.
    Continuous,
    /// Window that may contain discrete eigenvalues.
    DiscreteWindow,
}

/// Energy interval [lo, hi] in units of K0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyBand {
    pub lo: f64,
    pub hi: f64,
    pub kind: BandKind,
}

impl EnergyBand {
    pub fn new(lo: f64, hi: f64, kind: BandKind) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() || lo > hi {
            return Err(Error::invalid("band", format!("lo {lo} > hi {hi}")));
        }
        Ok(EnergyBand { lo, hi, kind })
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, e: f64) -> bool {
        e >= self.lo && e <= self.hi
    }
}
