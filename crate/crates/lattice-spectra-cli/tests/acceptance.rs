//! Acceptance suite: one test per shipping criterion, each printing a
//! pass line with the measured figures. Tolerances are fixed here, not
//! configurable.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion lines.

use lattice_spectra::{
    classify_bound, count_bound_states, default_ipr_threshold, emergence_thresholds,
    positivity_check, solve_band, tune_to_lattice, BandKind, Dispersion, EnergyBand,
    QuantizationProblem, SitePotential, TruncatedHamiltonian, WallStepPotential,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use std::f64::consts::PI;
use std::time::{Duration, Instant};

/// Paper spectrum for n0 = 6, U0/K0 = 1.5.
const SMALL_BARRIER: [f64; 4] = [2.33248, 2.76619, 3.14779, 3.40786];
/// Paper spectrum for n0 = 6, U0/K0 = 2.5.
const LARGE_BARRIER: [f64; 6] = [2.60654, 2.89816, 3.30698, 3.74878, 4.13895, 4.40548];

fn bound_energies_via_cli(n0: usize, u: f64) -> Vec<f64> {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_lattice-spectra"))
        .args([
            "bound",
            "--n0",
            &n0.to_string(),
            "--u",
            &u.to_string(),
            "--tol",
            "1e-10",
            "--format",
            "json",
        ])
        .output()
        .expect("binary should spawn");
    assert!(out.status.success(), "bound command failed");
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    report["results"]["energies"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect()
}

fn problem(n0: usize, u: f64) -> QuantizationProblem {
    QuantizationProblem::new(WallStepPotential::new(n0, u).unwrap())
}

fn band() -> EnergyBand {
    EnergyBand {
        lo: 0.0,
        hi: 2.0,
        kind: BandKind::Continuous,
    }
}

fn assert_runtime(start: Instant, budget: Duration, criterion: &str) {
    let elapsed = start.elapsed();
    assert!(
        elapsed < budget,
        "{criterion}: runtime {elapsed:?} exceeded budget {budget:?}"
    );
}

#[test]
fn criterion_01_small_barrier_reproduction() {
    let start = Instant::now();
    let energies = bound_energies_via_cli(6, 1.5);
    assert_eq!(energies.len(), 4, "exactly four discrete energies");
    let mut worst = 0.0f64;
    for (got, expect) in energies.iter().zip(SMALL_BARRIER) {
        worst = worst.max((got - expect).abs());
        assert!((got - expect).abs() <= 1e-4, "{got} vs {expect}");
    }
    assert_runtime(start, Duration::from_secs(1), "criterion 1");
    eprintln!("criterion 01 (small-barrier reproduction): PASS — max deviation {worst:.2e}");
}

#[test]
fn criterion_02_large_barrier_reproduction() {
    let start = Instant::now();
    let energies = bound_energies_via_cli(6, 2.5);
    assert_eq!(energies.len(), 6, "exactly six discrete energies");
    let mut worst = 0.0f64;
    for (got, expect) in energies.iter().zip(LARGE_BARRIER) {
        worst = worst.max((got - expect).abs());
        assert!((got - expect).abs() <= 1e-4, "{got} vs {expect}");
    }
    assert_runtime(start, Duration::from_secs(1), "criterion 2");
    eprintln!("criterion 02 (large-barrier reproduction): PASS — max deviation {worst:.2e}");
}

#[test]
fn criterion_03_very_large_barrier_asymptotics() {
    let start = Instant::now();
    let u = 100.0;
    let spectrum = problem(6, u).discrete_spectrum(1e-10).unwrap();
    assert_eq!(spectrum.count(), 6);
    let offsets = [-0.90097, -0.62349, -0.22252, 0.22252, 0.62349, 0.90097];
    let mut worst = 0.0f64;
    for (e, off) in spectrum.energies().iter().zip(offsets) {
        let dev = (e - (1.0 + u) - off).abs();
        worst = worst.max(dev);
        assert!(dev <= 1e-3, "{} vs {}", e - (1.0 + u), off);
    }
    assert_runtime(start, Duration::from_secs(1), "criterion 3");
    eprintln!("criterion 03 (very-large-barrier asymptotics): PASS — max deviation {worst:.2e}");
}

#[test]
fn criterion_04_count_staircase() {
    let start = Instant::now();
    let thresholds = emergence_thresholds(6);
    assert_eq!(thresholds.len(), 6);
    assert!(
        (thresholds[0] - 0.02906).abs() < 1e-5,
        "first threshold {} vs 0.02906",
        thresholds[0]
    );
    let mut previous = 0usize;
    for (k, &t) in thresholds.iter().enumerate() {
        let below = problem(6, t - 1e-4).discrete_spectrum(1e-10).unwrap().count();
        let above = problem(6, t + 1e-4).discrete_spectrum(1e-10).unwrap().count();
        assert_eq!(below, k, "count just below threshold {}", k + 1);
        assert_eq!(above, k + 1, "count just above threshold {}", k + 1);
        assert_eq!(above, below + 1, "count increments by exactly one");
        assert!(above >= previous, "count never decreases");
        assert_eq!(
            count_bound_states(6, t + 1e-4).unwrap(),
            above,
            "threshold rule agrees with the solver"
        );
        previous = above;
    }
    assert_runtime(start, Duration::from_secs(10), "criterion 4");
    eprintln!("criterion 04 (count staircase): PASS — counts 0..=6 step once per threshold");
}

#[test]
fn criterion_05_duality_suite() {
    let start = Instant::now();
    let d = Dispersion::single_cosine();
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0005);

    // (a) matrix identity H(-U) = -S H(U) S + 2 K0 I, 100 random N=256
    let n = 256usize;
    let mut matrix_worst = 0.0f64;
    for _ in 0..100 {
        let values: Vec<f64> = (0..n).map(|_| rng.random_range(-3.0..3.0)).collect();
        let v = SitePotential::new(1, values).unwrap();
        let h_plus = TruncatedHamiltonian::build(&d, &v).unwrap();
        let h_minus = TruncatedHamiltonian::build(&d, &v.dual()).unwrap();
        for i in 0..n {
            for j in i.saturating_sub(1)..(i + 2).min(n) {
                let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
                let conjugated = -sign * h_plus.entry(i, j) + if i == j { 2.0 } else { 0.0 };
                let defect = (h_minus.entry(i, j) - conjugated).abs();
                matrix_worst = matrix_worst.max(defect);
                assert!(defect <= 1e-14, "entry ({i},{j}) defect {defect:e}");
            }
        }
    }

    // (b) analytic well/barrier mirror E -> 2 - E, 50 random problems
    let mut mirror_worst = 0.0f64;
    let mut checked = 0;
    while checked < 50 {
        let n0 = rng.random_range(1usize..=14);
        let u: f64 = rng.random_range(0.05..8.0);
        if emergence_thresholds(n0).iter().any(|t| (u - t).abs() < 1e-3) {
            continue;
        }
        checked += 1;
        let barrier = problem(n0, u).discrete_spectrum(1e-12).unwrap();
        let well = problem(n0, -u).discrete_spectrum(1e-12).unwrap();
        assert_eq!(barrier.count(), well.count(), "n0 {n0}, u {u}");
        for (w, b) in well.energies().iter().zip(barrier.energies().iter().rev()) {
            let defect = (w - (2.0 - b)).abs();
            mirror_worst = mirror_worst.max(defect);
            assert!(defect <= 1e-9, "n0 {n0}, u {u}: defect {defect:e}");
        }
    }

    assert_runtime(start, Duration::from_secs(30), "criterion 5");
    eprintln!(
        "criterion 05 (duality suite): PASS — matrix defect {matrix_worst:.2e}, \
         mirror defect {mirror_worst:.2e}"
    );
}

#[test]
fn criterion_06_oracle_equivalence() {
    let start = Instant::now();
    let d = Dispersion::single_cosine();
    let n = 2000;
    for (u, expected_count) in [(1.5f64, 4usize), (2.5, 6)] {
        let analytic = problem(6, u).discrete_spectrum(1e-12).unwrap();
        assert_eq!(analytic.count(), expected_count);
        let v = WallStepPotential::new(6, u)
            .unwrap()
            .to_site_potential(n)
            .unwrap();
        let eps = TruncatedHamiltonian::build(&d, &v)
            .unwrap()
            .diagonalize()
            .unwrap();
        let classification = classify_bound(&eps, &band(), default_ipr_threshold(n));
        assert_eq!(
            classification.bound.len(),
            expected_count,
            "bound/band classification count at u = {u}"
        );
        for &e in analytic.energies() {
            let nearest = eps
                .eigenvalues()
                .iter()
                .map(|ev| (ev - e).abs())
                .fold(f64::INFINITY, f64::min);
            assert!(nearest <= 1e-6, "u = {u}: level {e} off by {nearest:e}");
        }
    }
    assert_runtime(start, Duration::from_secs(60), "criterion 6");
    eprintln!("criterion 06 (oracle equivalence at N=2000): PASS — counts 4 and 6, levels within 1e-6");
}

#[test]
fn criterion_07_positivity() {
    let start = Instant::now();
    let d = Dispersion::single_cosine();
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0007);
    let mut global_min = f64::INFINITY;
    for _ in 0..100 {
        let values: Vec<f64> = (0..64).map(|_| rng.random_range(-3.0..3.0)).collect();
        let v = SitePotential::new(1, values).unwrap();
        let eps = TruncatedHamiltonian::build(&d, &v)
            .unwrap()
            .diagonalize()
            .unwrap();
        for value in positivity_check(&eps, &v, &d) {
            global_min = global_min.min(value);
            assert!(value >= -1e-9, "positivity sum {value:e}");
        }
    }
    assert_runtime(start, Duration::from_secs(30), "criterion 7");
    eprintln!("criterion 07 (positivity inequality): PASS — minimum sum {global_min:.2e}");
}

#[test]
fn criterion_08_hellmann_feynman() {
    let start = Instant::now();
    let delta = 1e-5;
    let base = problem(6, 2.5).discrete_spectrum(1e-12).unwrap();
    let up = problem(6, 2.5 + delta).discrete_spectrum(1e-12).unwrap();
    let down = problem(6, 2.5 - delta).discrete_spectrum(1e-12).unwrap();
    assert_eq!(base.count(), 6);
    let mut worst = 0.0f64;
    for (k, &e) in base.energies().iter().enumerate() {
        let slope = (up.energies()[k] - down.energies()[k]) / (2.0 * delta);
        assert!(slope > 0.0 && slope < 1.0, "slope {slope} outside (0,1)");
        let psi = problem(6, 2.5).bound_state(e, 1e-6).unwrap();
        let weight = psi.probability_weight(1, 6);
        let dev = (slope - weight).abs();
        worst = worst.max(dev);
        assert!(dev <= 1e-4, "level {k}: slope {slope} vs weight {weight}");
    }
    assert_runtime(start, Duration::from_secs(10), "criterion 8");
    eprintln!("criterion 08 (Hellmann-Feynman): PASS — max |slope - weight| = {worst:.2e}");
}

#[test]
fn criterion_09_kronig_penney_band() {
    let start = Instant::now();
    let upsilon = 15.0;
    let band0 = solve_band(upsilon, 0).unwrap();
    let width = band0.width();
    let width_formula = 4.0 * upsilon * (-upsilon).exp();
    let width_dev = (width / width_formula - 1.0).abs();
    assert!(width_dev <= 1e-3, "width off by {width_dev:e} relative");

    let gap = -band0.e_hi; // distance from the band top to the continuum at V_r
    let gap_formula = upsilon / 2.0;
    let gap_dev = (gap / gap_formula - 1.0).abs();
    assert!(gap_dev <= 1e-2, "gap off by {gap_dev:e} relative");

    let mut previous = f64::INFINITY;
    for u in [5.0f64, 8.0, 10.0, 12.0, 15.0] {
        let b = solve_band(u, 0).unwrap();
        let ratio = b.width() / (-b.e_hi);
        assert!(ratio < previous, "W/Δ must decrease at upsilon = {u}");
        previous = ratio;
    }
    assert_runtime(start, Duration::from_secs(5), "criterion 9");
    eprintln!(
        "criterion 09 (Kronig-Penney band): PASS — width dev {width_dev:.2e}, \
         gap dev {gap_dev:.2e}, W/Δ monotone"
    );
}

#[test]
fn criterion_10_lattice_emergence() {
    let start = Instant::now();
    let w = 1.0;
    let upsilon = 15.0;
    let model = tune_to_lattice(w, upsilon).unwrap();
    let grid: Vec<f64> = (0..=100).map(|j| j as f64 * PI / 100.0).collect();
    let samples = model.effective_dispersion(&grid).unwrap();
    assert_eq!(samples.len(), 101);

    let lattice = Dispersion::single_cosine();
    let k0 = w / 2.0;
    let mut worst_cos = 0.0f64;
    let mut worst_lattice = 0.0f64;
    for &(alpha, e) in &samples {
        let cos_dev = (e + 0.5 * w * alpha.cos()).abs();
        worst_cos = worst_cos.max(cos_dev);
        assert!(cos_dev <= 2e-3 * w, "E({alpha}) deviates by {cos_dev:e}");
        // after shifting by W/2 the band is the lattice kinetic energy with K0 = W/2
        let shifted = e + 0.5 * w;
        let kinetic = k0 * lattice.kinetic_eigenvalue(alpha);
        let lattice_dev = (shifted - kinetic).abs();
        worst_lattice = worst_lattice.max(lattice_dev);
        assert!(lattice_dev <= 2e-3 * w);
    }
    assert_runtime(start, Duration::from_secs(5), "criterion 10");
    eprintln!(
        "criterion 10 (lattice emergence): PASS — max cosine deviation {worst_cos:.2e}, \
         max lattice-dispersion deviation {worst_lattice:.2e}"
    );
}
