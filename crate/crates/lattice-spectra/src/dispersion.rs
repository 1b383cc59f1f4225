//! Kinetic dispersion on the one-dimensional lattice.
//!
//! The momentum space of a lattice particle is compact, so the kinetic
//! eigenvalue K(s) = Σ_m t_m (2 − 2 cos m s) is bounded from both sides and
//! periodic in the Bloch parameter s with period 2π. All energies here are
//! dimensionless (units of the reference scale K0); the default dispersion
//! is the single-cosine band K(s) = 1 − cos s with K_min = 0, K_max = 2.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// One hopping term: coupling over `range` sites with the given amplitude
/// (in units of K0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hopping {
    pub range: usize,
    pub amplitude: f64,
}

/// Kinetic dispersion K(s) = Σ_m t_m (2 − 2 cos m s), dimensionless.
///
/// Band extrema are located at construction time by a dense scan refined by
/// golden-section search, so `k_min`/`k_max` are cheap accessors.
#[derive(Debug, Clone, PartialEq)]
pub struct Dispersion {
    hoppings: Vec<Hopping>,
    k_min: f64,
    k_max: f64,
}

impl Dispersion {
    /// Builds a dispersion from hopping terms. Ranges must be ≥ 1, unique,
    /// and amplitudes finite.
    pub fn new(mut hoppings: Vec<Hopping>) -> Result<Self> {
        if hoppings.is_empty() {
            return Err(Error::invalid("hoppings", "at least one hopping term"));
        }
        for h in &hoppings {
            if h.range == 0 {
                return Err(Error::invalid("hoppings", "hopping range must be >= 1"));
            }
            if !h.amplitude.is_finite() {
                return Err(Error::invalid("hoppings", "hopping amplitude must be finite"));
            }
        }
        hoppings.sort_by_key(|h| h.range);
        if hoppings.windows(2).any(|w| w[0].range == w[1].range) {
            return Err(Error::invalid("hoppings", "duplicate hopping range"));
        }
        let (k_min, k_max) = band_extrema(&hoppings);
        Ok(Dispersion {
            hoppings,
            k_min,
            k_max,
        })
    }

    /// The single-cosine band K(s) = 1 − cos s (hopping amplitude 1/2 at
    /// range 1). Band edges are exactly 0 and 2.
    pub fn single_cosine() -> Self {
        Dispersion {
            hoppings: vec![Hopping {
                range: 1,
                amplitude: 0.5,
            }],
            k_min: 0.0,
            k_max: 2.0,
        }
    }

    pub fn hoppings(&self) -> &[Hopping] {
        &self.hoppings
    }

    /// True for the exact default band used by the analytic solvers.
    pub fn is_single_cosine(&self) -> bool {
        self.hoppings.len() == 1
            && self.hoppings[0].range == 1
            && self.hoppings[0].amplitude == 0.5
    }

    /// Largest hopping range; the truncated Hamiltonian is banded with this
    /// half-bandwidth.
    pub fn max_range(&self) -> usize {
        self.hoppings.last().map_or(1, |h| h.range)
    }

    /// Kinetic eigenvalue K(s), periodic in s with period 2π.
    pub fn kinetic_eigenvalue(&self, s: f64) -> f64 {
        self.hoppings
            .iter()
            .map(|h| h.amplitude * (2.0 - 2.0 * (h.range as f64 * s).cos()))
            .sum()
    }

    /// Analytic continuation of K to complex Bloch parameter.
    pub fn kinetic_eigenvalue_complex(&self, s: Complex64) -> Complex64 {
        self.hoppings
            .iter()
            .map(|h| (Complex64::new(2.0, 0.0) - 2.0 * (s * h.range as f64).cos()) * h.amplitude)
            .sum()
    }

    /// Band minimum.
    pub fn k_min(&self) -> f64 {
        self.k_min
    }

    /// Band maximum.
    pub fn k_max(&self) -> f64 {
        self.k_max
    }

    /// Inverts K(s) = e on the branch with Im s ≥ 0.
    ///
    /// Only defined for the single-cosine band, where cos s = 1 − e:
    /// in-band energies give a real wavenumber, below-band energies a purely
    /// imaginary one, above-band energies Re s = π plus a decay rate.
    pub fn wavenumber_from_energy(&self, e: f64) -> Result<ComplexWavenumber> {
        if !self.is_single_cosine() {
            return Err(Error::UnsupportedDispersion);
        }
        if !e.is_finite() {
            return Err(Error::invalid("e", "energy must be finite"));
        }
        Ok(if e < 0.0 {
            ComplexWavenumber {
                re: 0.0,
                im: (1.0 - e).acosh(),
            }
        } else if e <= 2.0 {
            ComplexWavenumber {
                re: (1.0 - e).clamp(-1.0, 1.0).acos(),
                im: 0.0,
            }
        } else {
            ComplexWavenumber {
                re: PI,
                im: (e - 1.0).acosh(),
            }
        })
    }

    /// Classifies a site as allowed or forbidden for total energy `e` and
    /// local potential `u_n`. Band edges count as allowed.
    pub fn classify_site(&self, e: f64, u_n: f64) -> SiteClass {
        let kinetic = e - u_n;
        if kinetic < self.k_min {
            SiteClass::ForbiddenBelow
        } else if kinetic > self.k_max {
            SiteClass::ForbiddenAbove
        } else {
            SiteClass::Allowed
        }
    }
}

impl Default for Dispersion {
    fn default() -> Self {
        Dispersion::single_cosine()
    }
}

/// Classically allowed/forbidden classification of a lattice site.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SiteClass {
    Allowed,
    /// Kinetic energy e − u_n below the band minimum.
    ForbiddenBelow,
    /// Kinetic energy e − u_n above the band maximum.
    ForbiddenAbove,
}

/// Complex Bloch wavenumber with the Im s ≥ 0 convention.
///
/// Exactly one of three branches holds: im = 0 (in-band plane wave),
/// re = 0 with im > 0 (below-band decay), re = π with im > 0 (above-band
/// staggered decay).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexWavenumber {
    re: f64,
    im: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WavenumberBranch {
    /// Real wavenumber in [0, π].
    Allowed,
    /// Purely imaginary: exponential decay without sign alternation.
    BelowBand,
    /// Re s = π: exponential decay with site-to-site sign alternation.
    AboveBand,
}

impl ComplexWavenumber {
    pub fn re(&self) -> f64 {
        self.re
    }

    /// Decay rate per site; zero inside the band.
    pub fn im(&self) -> f64 {
        self.im
    }

    pub fn branch(&self) -> WavenumberBranch {
        if self.im == 0.0 {
            WavenumberBranch::Allowed
        } else if self.re == 0.0 {
            WavenumberBranch::BelowBand
        } else {
            WavenumberBranch::AboveBand
        }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// Locates the extrema of K over one period by dense sampling followed by
/// golden-section refinement around the best samples.
fn band_extrema(hoppings: &[Hopping]) -> (f64, f64) {
    let eval = |s: f64| -> f64 {
        hoppings
            .iter()
            .map(|h| h.amplitude * (2.0 - 2.0 * (h.range as f64 * s).cos()))
            .sum()
    };
    let max_range = hoppings.last().map_or(1, |h| h.range);
    let samples = 2048 * max_range;
    let step = 2.0 * PI / samples as f64;

    let mut lo_at = 0.0;
    let mut lo_val = eval(0.0);
    let mut hi_at = 0.0;
    let mut hi_val = lo_val;
    for j in 1..samples {
        let s = j as f64 * step;
        let v = eval(s);
        if v < lo_val {
            lo_val = v;
            lo_at = s;
        }
        if v > hi_val {
            hi_val = v;
            hi_at = s;
        }
    }

    let k_min = golden_minimize(&eval, lo_at - step, lo_at + step);
    let k_max = -golden_minimize(&|s| -eval(s), hi_at - step, hi_at + step);
    (k_min.min(lo_val), k_max.max(hi_val))
}

/// Golden-section minimization on a bracket known to contain the minimum.
fn golden_minimize(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..120 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        if (b - a).abs() < 1e-14 {
            break;
        }
    }
    f(0.5 * (a + b))
}
