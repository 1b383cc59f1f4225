//! Analytic spectrum of the hard-wall + step potential.
//!
//! With the single-cosine band, the eigenfunction is A sin(s_I n) on the
//! step (sites 1..=width, the wall forces ψ(0) = 0) matched to a decaying
//! exponential A_II e^{i s_II n} beyond it. Matching the two forms on the
//! overlap sites width and width+1 gives the quantization condition
//!
//! ```text
//! f(E) = sin[s_I (width+1)] − e^{i s_II} sin(s_I width) = 0,
//! ```
//!
//! where e^{i s_II} is real on both discrete branches: +e^{−θ} for a well
//! (energy below the band) and −e^{−θ} for a barrier (energy above it).
//! Roots of f inside the discrete window are the bound-state energies; they
//! are isolated by a uniform sign scan and polished by bisection.
//!
//! Energies are dimensionless (units of K0) throughout.

use crate::error::{Error, Result};
use crate::potential::{BandKind, EnergyBand, WallStepPotential};
use crate::roots;
use crate::state::LatticeState;

/// Default absolute energy tolerance for the bisection solver.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Roots closer than this to a window edge are rejected: the branch
/// functions degenerate there and f vanishes identically at the edges.
const EDGE_INSET: f64 = 1e-9;

/// Residual bound used when validating an energy as an eigenvalue.
const RESIDUAL_TOL: f64 = 1e-6;

/// Sign of the step: well (height < 0) or barrier (height ≥ 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    Well,
    Barrier,
}

/// The eigenvalue problem for a hard wall plus a constant step.
#[derive(Debug, Clone, Copy)]
pub struct QuantizationProblem {
    potential: WallStepPotential,
}

/// Branch data at one energy: real interior wavenumber, decay rate, and the
/// real value of e^{i s_II}.
struct BranchPoint {
    s_interior: f64,
    decay: f64,
    rho: f64,
}

impl QuantizationProblem {
    pub fn new(potential: WallStepPotential) -> Self {
        QuantizationProblem { potential }
    }

    pub fn potential(&self) -> &WallStepPotential {
        &self.potential
    }

    pub fn kind(&self) -> StepKind {
        if self.potential.height() < 0.0 {
            StepKind::Well
        } else {
            StepKind::Barrier
        }
    }

    /// The continuous band [0, 2] shared by every step problem.
    pub fn continuous_band(&self) -> EnergyBand {
        EnergyBand {
            lo: 0.0,
            hi: 2.0,
            kind: BandKind::Continuous,
        }
    }

    /// Open energy interval that can hold discrete eigenvalues:
    /// (−U0, min(0, 2−U0)) for a well, (max(2, U0), 2+U0) for a barrier.
    /// `None` when the interval is empty (zero step height).
    pub fn discrete_window(&self) -> Option<(f64, f64)> {
        let u = self.potential.height();
        let (lo, hi) = if u < 0.0 {
            (u, (2.0 + u).min(0.0))
        } else {
            (u.max(2.0), 2.0 + u)
        };
        (lo < hi).then_some((lo, hi))
    }

    fn branch_point(&self, e: f64) -> Result<BranchPoint> {
        let (lo, hi) = self.discrete_window().ok_or(Error::OutsideDiscreteWindow {
            energy: e,
            lo: 0.0,
            hi: 0.0,
        })?;
        if !(e > lo && e < hi) {
            return Err(Error::OutsideDiscreteWindow { energy: e, lo, hi });
        }
        let u = self.potential.height();
        let s_interior = (1.0 - (e - u)).clamp(-1.0, 1.0).acos();
        let (decay, rho) = match self.kind() {
            StepKind::Well => {
                let theta = (1.0 - e).max(1.0).acosh();
                (theta, (-theta).exp())
            }
            StepKind::Barrier => {
                let theta = (e - 1.0).max(1.0).acosh();
                (theta, -(-theta).exp())
            }
        };
        Ok(BranchPoint {
            s_interior,
            decay,
            rho,
        })
    }

    /// Quantization residual f(E); real, with sign changes bracketing the
    /// discrete energies. Errors if E is outside the discrete window.
    pub fn residual(&self, e: f64) -> Result<f64> {
        let bp = self.branch_point(e)?;
        let w = self.potential.width() as f64;
        Ok(((w + 1.0) * bp.s_interior).sin() - bp.rho * (w * bp.s_interior).sin())
    }

    /// All discrete energies, found by a sign scan over the window (grid of
    /// max(200, 50·width) points, edges inset by 1e-9) followed by bisection
    /// to absolute tolerance `tol`. An empty spectrum is a valid result.
    pub fn discrete_spectrum(&self, tol: f64) -> Result<DiscreteSpectrum> {
        if !tol.is_finite() || tol <= 0.0 || tol > 1e-3 {
            return Err(Error::invalid("tol", "tolerance must lie in (0, 1e-3]"));
        }
        let Some((lo, hi)) = self.discrete_window() else {
            return Ok(DiscreteSpectrum::empty());
        };
        let a = lo + EDGE_INSET;
        let b = hi - EDGE_INSET;
        if a >= b {
            return Ok(DiscreteSpectrum::empty());
        }
        let points = 200.max(50 * self.potential.width());
        let f = |e: f64| self.residual(e).expect("scan stays inside the window");
        let mut energies = Vec::new();
        let mut residuals = Vec::new();
        for bracket in roots::scan_brackets(f, a, b, points) {
            let root = roots::bisect(f, bracket, tol);
            if root - lo < EDGE_INSET || hi - root < EDGE_INSET {
                continue;
            }
            if energies.last().is_some_and(|&prev: &f64| root - prev < tol) {
                continue;
            }
            energies.push(root);
            residuals.push(f(root).abs());
        }
        Ok(DiscreteSpectrum {
            energies,
            residuals,
        })
    }

    /// The normalized bound-state wavefunction at a discrete energy:
    /// sin(s_I n) on the step, matched geometric decay beyond it, ψ(0) = 0.
    ///
    /// `tol` bounds the acceptable quantization residual |f(e)|.
    pub fn bound_state(&self, e: f64, tol: f64) -> Result<LatticeState> {
        let residual = self.residual(e)?;
        if residual.abs() > tol {
            return Err(Error::NotAnEigenvalue {
                energy: e,
                residual: residual.abs(),
                tol,
            });
        }
        let bp = self.branch_point(e)?;
        let width = self.potential.width();

        // Interior amplitudes including the exact wall zero at n = 0.
        let mut amps: Vec<f64> = (0..=width as i64)
            .map(|n| (bp.s_interior * n as f64).sin())
            .collect();
        let edge = amps[width];

        // Exact norm over the infinite lattice: interior sum plus the
        // geometric tail Σ_{m≥1} edge² ρ^{2m}.
        let interior_sq: f64 = amps[1..].iter().map(|a| a * a).sum();
        let rho_sq = bp.rho * bp.rho;
        let norm_sq = interior_sq + edge * edge * rho_sq / (1.0 - rho_sq);
        let norm = norm_sq.sqrt();

        // Tail sites until amplitudes drop below 1e-15 of the unit norm.
        let tail_len = if edge.abs() / norm <= 1e-15 {
            0
        } else {
            let m = ((edge.abs() / (norm * 1e-15)).ln() / bp.decay).ceil();
            (m.max(0.0) as usize).min(4_000_000)
        };
        let mut factor = 1.0;
        for _ in 0..tail_len {
            factor *= bp.rho;
            amps.push(edge * factor);
        }
        for a in &mut amps {
            *a /= norm;
        }
        LatticeState::from_real(0, &amps)
    }
}

/// Sorted discrete energies with the per-root residuals |f(E)|.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteSpectrum {
    energies: Vec<f64>,
    residuals: Vec<f64>,
}

impl DiscreteSpectrum {
    fn empty() -> Self {
        DiscreteSpectrum {
            energies: Vec::new(),
            residuals: Vec::new(),
        }
    }

    /// Energies in strictly increasing order.
    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn residuals(&self) -> &[f64] {
        &self.residuals
    }

    pub fn count(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }
}

/// Step heights at which the k-th discrete level emerges from the band top,
/// 1 − cos[(2k−1)π/(2·width+1)] for k = 1..=width, in increasing order.
pub fn emergence_thresholds(width: usize) -> Vec<f64> {
    let denom = (2 * width + 1) as f64;
    (1..=width)
        .map(|k| 1.0 - ((2 * k - 1) as f64 * std::f64::consts::PI / denom).cos())
        .collect()
}

/// Number of discrete levels for a step of magnitude `u_abs`: the count of
/// emergence thresholds strictly below it. At most `width` levels exist.
///
/// Errors when `u_abs` sits within 1e-12 of a threshold, where the count is
/// ill-defined.
pub fn count_bound_states(width: usize, u_abs: f64) -> Result<usize> {
    if width == 0 {
        return Err(Error::invalid("width", "step must cover at least one site"));
    }
    if !u_abs.is_finite() || u_abs <= 0.0 {
        return Err(Error::invalid("u_abs", "step magnitude must be positive"));
    }
    let thresholds = emergence_thresholds(width);
    for (i, &t) in thresholds.iter().enumerate() {
        if (u_abs - t).abs() <= 1e-12 {
            return Err(Error::ThresholdCollision {
                value: u_abs,
                threshold: t,
                index: i + 1,
            });
        }
    }
    Ok(thresholds.iter().filter(|&&t| t < u_abs).count())
}

/// Infinite-barrier limit of the discrete energies:
/// E_k = 1 + u_abs − cos[kπ/(width+1)], k = 1..=width, ascending.
pub fn infinite_barrier_energies(width: usize, u_abs: f64) -> Vec<f64> {
    let denom = (width + 1) as f64;
    (1..=width)
        .map(|k| 1.0 + u_abs - (k as f64 * std::f64::consts::PI / denom).cos())
        .collect()
}

/// Full spectral description: the continuous band, the discrete energies,
/// and optional per-state localization metadata.
#[derive(Debug, Clone)]
pub struct SpectrumResult {
    pub continuous: EnergyBand,
    pub discrete: DiscreteSpectrum,
    pub states: Option<Vec<BoundStateSummary>>,
}

/// Localization metadata of one bound state.
#[derive(Debug, Clone, Copy)]
pub struct BoundStateSummary {
    pub energy: f64,
    /// Inverse participation ratio Σ|ψ|⁴ of the normalized state.
    pub ipr: f64,
    /// Probability weight on the step sites 1..=width (the Hellmann-Feynman
    /// slope dE/du).
    pub interior_weight: f64,
    /// Decay rate Im s_II per site in the outer region.
    pub decay_rate: f64,
}

/// Solves the step problem end to end.
pub fn solve_spectrum(
    problem: &QuantizationProblem,
    tol: f64,
    with_states: bool,
) -> Result<SpectrumResult> {
    let discrete = problem.discrete_spectrum(tol)?;
    let states = if with_states {
        let width = problem.potential().width() as i64;
        let mut summaries = Vec::with_capacity(discrete.count());
        for &e in discrete.energies() {
            let psi = problem.bound_state(e, RESIDUAL_TOL)?;
            let decay = problem.branch_point(e)?.decay;
            summaries.push(BoundStateSummary {
                energy: e,
                ipr: psi.ipr(),
                interior_weight: psi.probability_weight(1, width),
                decay_rate: decay,
            });
        }
        Some(summaries)
    } else {
        None
    };
    Ok(SpectrumResult {
        continuous: problem.continuous_band(),
        discrete,
        states,
    })
}
