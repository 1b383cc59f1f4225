//! Independent verification path: exact diagonalization of the truncated
//! lattice Hamiltonian.
//!
//! The Hamiltonian H = K + U is built on a finite window with Dirichlet
//! boundaries (ψ = 0 outside). For the single-cosine band it is tridiagonal
//! with unit diagonal kinetic part and −1/2 couplings; general hoppings add
//! constant off-diagonals at their range. The full spectrum comes from
//! Sturm bisection plus inverse iteration, so every analytic result in this
//! crate can be cross-checked against a matrix computation that shares none
//! of its code path.

mod eigen;

use crate::dispersion::{Dispersion, SiteClass};
use crate::error::{Error, Result};
use crate::potential::{EnergyBand, SitePotential};
use crate::state::LatticeState;

/// Documented size limit for the tridiagonal path.
pub const TRIDIAG_MAX_N: usize = 8192;
/// Documented size limit for the dense (multi-range hopping) path.
pub const DENSE_MAX_N: usize = 2048;

/// Real symmetric truncated Hamiltonian in units of K0: diagonal
/// U(n) + Σ_m 2 t_m, off-diagonal −t_m at range m, Dirichlet boundary.
#[derive(Debug, Clone)]
pub struct TruncatedHamiltonian {
    start: i64,
    diag: Vec<f64>,
    couplings: Vec<(usize, f64)>,
}

impl TruncatedHamiltonian {
    /// Builds the window Hamiltonian for a dispersion and a site potential.
    pub fn build(d: &Dispersion, v: &SitePotential) -> Result<Self> {
        let n = v.len();
        if n < 3 {
            return Err(Error::WindowTooSmall { size: n, min: 3 });
        }
        let kinetic_diag: f64 = d.hoppings().iter().map(|h| 2.0 * h.amplitude).sum();
        let diag = v.values().iter().map(|u| u + kinetic_diag).collect();
        let couplings = d
            .hoppings()
            .iter()
            .filter(|h| h.range < n)
            .map(|h| (h.range, -h.amplitude))
            .collect();
        Ok(TruncatedHamiltonian {
            start: v.window().0,
            diag,
            couplings,
        })
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    /// Inclusive site window [a, b].
    pub fn window(&self) -> (i64, i64) {
        (self.start, self.start + self.diag.len() as i64 - 1)
    }

    /// Matrix entry by window-relative indices.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return self.diag[i];
        }
        let gap = i.abs_diff(j);
        self.couplings
            .iter()
            .find(|(m, _)| *m == gap)
            .map_or(0.0, |&(_, v)| v)
    }

    /// H applied to a window vector.
    pub fn apply(&self, psi: &[f64]) -> Vec<f64> {
        let n = self.n();
        assert_eq!(psi.len(), n);
        let mut out: Vec<f64> = (0..n).map(|i| self.diag[i] * psi[i]).collect();
        for &(m, v) in &self.couplings {
            for i in 0..n - m {
                out[i] += v * psi[i + m];
                out[i + m] += v * psi[i];
            }
        }
        out
    }

    pub fn is_tridiagonal(&self) -> bool {
        self.couplings.len() == 1 && self.couplings[0].0 == 1
    }

    /// Gershgorin bound on the spectral norm.
    pub fn norm_bound(&self) -> f64 {
        let row_off: f64 = self.couplings.iter().map(|(_, v)| 2.0 * v.abs()).sum();
        self.diag
            .iter()
            .fold(0.0f64, |acc, d| acc.max(d.abs() + row_off))
    }

    /// Full ascending spectrum with orthonormal eigenvectors.
    ///
    /// Tridiagonal matrices (single-range hopping) are solved directly up to
    /// N = 8192; longer-range hoppings go through a dense Householder
    /// reduction, limited to N = 2048.
    pub fn diagonalize(&self) -> Result<EigenpairSet> {
        let n = self.n();
        if self.is_tridiagonal() {
            if n > TRIDIAG_MAX_N {
                return Err(Error::SizeLimit {
                    size: n,
                    limit: TRIDIAG_MAX_N,
                });
            }
            let t = self.couplings[0].1;
            let off = vec![t; n - 1];
            let eigenvalues = eigen::tridiag_eigenvalues(&self.diag, &off);
            let vectors = eigen::tridiag_eigenvectors(&self.diag, &off, &eigenvalues)
                .map_err(|index| Error::ConvergenceFailure { index })?;
            return Ok(EigenpairSet::assemble(self.start, eigenvalues, vectors));
        }

        if n > DENSE_MAX_N {
            return Err(Error::SizeLimit {
                size: n,
                limit: DENSE_MAX_N,
            });
        }
        let dense: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| self.entry(i, j)).collect())
            .collect();
        let (d, e, q) = eigen::householder_tridiagonalize(dense);
        let eigenvalues = eigen::tridiag_eigenvalues(&d, &e);
        let tri_vectors = eigen::tridiag_eigenvectors(&d, &e, &eigenvalues)
            .map_err(|index| Error::ConvergenceFailure { index })?;
        let vectors: Vec<Vec<f64>> = tri_vectors
            .iter()
            .map(|w| {
                (0..n)
                    .map(|i| (0..n).map(|j| q[i][j] * w[j]).sum())
                    .collect()
            })
            .collect();
        Ok(EigenpairSet::assemble(self.start, eigenvalues, vectors))
    }
}

/// Ascending eigenvalues with orthonormal eigenvectors and per-state
/// inverse participation ratios.
#[derive(Debug, Clone)]
pub struct EigenpairSet {
    start: i64,
    eigenvalues: Vec<f64>,
    vectors: Vec<Vec<f64>>,
    ipr: Vec<f64>,
}

impl EigenpairSet {
    fn assemble(start: i64, eigenvalues: Vec<f64>, vectors: Vec<Vec<f64>>) -> Self {
        let ipr = vectors
            .iter()
            .map(|v| v.iter().map(|x| x.powi(4)).sum())
            .collect();
        EigenpairSet {
            start,
            eigenvalues,
            vectors,
            ipr,
        }
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvalue(&self, i: usize) -> f64 {
        self.eigenvalues[i]
    }

    pub fn vector(&self, i: usize) -> &[f64] {
        &self.vectors[i]
    }

    pub fn iprs(&self) -> &[f64] {
        &self.ipr
    }

    pub fn ipr(&self, i: usize) -> f64 {
        self.ipr[i]
    }

    /// Eigenvector as a lattice state on the window.
    pub fn state(&self, i: usize) -> LatticeState {
        LatticeState::from_real(self.start, &self.vectors[i]).expect("eigenvector is nonempty")
    }
}

/// Deterministic partition of eigenstates into bound and band-like.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundClassification {
    /// Indices of bound states (energy outside the band and localized).
    pub bound: Vec<usize>,
    /// Everything else.
    pub band_like: Vec<usize>,
}

/// Default localization threshold: IPR ≥ 10/N flags a state as localized.
pub fn default_ipr_threshold(n: usize) -> f64 {
    10.0 / n.max(1) as f64
}

/// Bound iff the eigenvalue falls outside `band` by more than 1e-6 and the
/// state is localized (IPR at or above the threshold). Finite windows
/// discretize the continuum into near-band eigenvalues, so the energy
/// criterion alone would misclassify near the band edges.
pub fn classify_bound(
    eps: &EigenpairSet,
    band: &EnergyBand,
    ipr_threshold: f64,
) -> BoundClassification {
    let mut bound = Vec::new();
    let mut band_like = Vec::new();
    for i in 0..eps.len() {
        let e = eps.eigenvalue(i);
        let outside = e < band.lo - 1e-6 || e > band.hi + 1e-6;
        if outside && eps.ipr(i) >= ipr_threshold {
            bound.push(i);
        } else {
            band_like.push(i);
        }
    }
    BoundClassification { bound, band_like }
}

/// Per-state value of Σ_n [E − U(n) − K_min][K_max − E + U(n)] |ψ(n)|².
///
/// Nonnegative (up to roundoff) for every true eigenpair: the summand is
/// negative exactly on the classically forbidden sites, so no eigenstate
/// can live entirely in the forbidden region.
pub fn positivity_check(
    eps: &EigenpairSet,
    v: &SitePotential,
    d: &Dispersion,
) -> Vec<f64> {
    let k_min = d.k_min();
    let k_max = d.k_max();
    let u = v.values();
    (0..eps.len())
        .map(|i| {
            let e = eps.eigenvalue(i);
            eps.vector(i)
                .iter()
                .zip(u)
                .map(|(psi, u_n)| (e - u_n - k_min) * (k_max - e + u_n) * psi * psi)
                .sum()
        })
        .collect()
}

/// True when every site is classically forbidden for the given energy —
/// by the positivity inequality no eigenvalue can satisfy this.
pub fn everywhere_forbidden(d: &Dispersion, v: &SitePotential, e: f64) -> bool {
    v.values()
        .iter()
        .all(|&u_n| d.classify_site(e, u_n) != SiteClass::Allowed)
}
