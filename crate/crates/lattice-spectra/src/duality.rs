//! Spectral correspondence between attractive and repulsive potentials.
//!
//! When the dispersion satisfies K(s + π) + K(s) = const (equivalently: all
//! even-range hopping amplitudes vanish), conjugation by the staggered sign
//! operator S|n⟩ = (−1)^n |n⟩ maps the Hamiltonian with potential U onto the
//! one with −U up to an energy reflection. Eigenvalues map as
//! E ↦ K_max − K_min − E and eigenstates pick up the (−1)^n phase, which
//! preserves |ψ(n)|² site by site — so wells and barriers carry mirror-image
//! spectra with identically localized bound states.

use num_complex::Complex64;

use crate::dispersion::Dispersion;
use crate::error::{Error, Result};
use crate::state::LatticeState;

/// True iff the duality transform applies to this dispersion, i.e. every
/// even-range hopping amplitude vanishes.
pub fn duality_applicable(d: &Dispersion) -> bool {
    d.hoppings()
        .iter()
        .all(|h| h.range % 2 == 1 || h.amplitude == 0.0)
}

/// Image of an energy under the duality map, E ↦ K_max − K_min − E.
///
/// An involution: applying it twice returns the input.
pub fn dual_energy(d: &Dispersion, e: f64) -> Result<f64> {
    if !duality_applicable(d) {
        return Err(Error::DualityNotApplicable);
    }
    Ok(d.k_max() - d.k_min() - e)
}

/// Image of a state under the staggered sign operator: ψ(n) ↦ (−1)^n ψ(n).
///
/// Site parity is absolute (site index n, not position within the window),
/// the norm is preserved exactly, and applying the map twice returns the
/// original amplitudes.
pub fn dual_state(psi: &LatticeState) -> LatticeState {
    let (start, _) = psi.window();
    let amplitudes = psi
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let n = start + i as i64;
            if n.rem_euclid(2) == 0 {
                *a
            } else {
                -a
            }
        })
        .collect::<Vec<Complex64>>();
    LatticeState::new(start, amplitudes).expect("window preserved")
}
