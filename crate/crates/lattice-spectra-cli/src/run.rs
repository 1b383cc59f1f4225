//! Command execution: dispatches a resolved configuration to the solver
//! library and assembles the report.

use lattice_spectra::{
    classify_bound, default_ipr_threshold, positivity_check, solve_band, solve_band_sampled,
    solve_spectrum, tune_to_lattice, BandKind, Dispersion, EnergyBand, QuantizationProblem,
    TruncatedHamiltonian, WallStepPotential,
};
use serde_json::{json, Value};
use std::collections::BTreeMap;

use crate::config::{CommandConfig, RunConfig};
use crate::report::{Report, Table};
use crate::CliError;

pub fn execute(config: &RunConfig) -> Result<Report, CliError> {
    let (results, diagnostics, table) = match &config.command {
        CommandConfig::Bound { n0, u, tol } => run_bound(*n0, *u, *tol)?,
        CommandConfig::Spectrum { n0, u, tol, states } => run_spectrum(*n0, *u, *tol, *states)?,
        CommandConfig::DualityCheck { n0, u, tol, nsites } => {
            run_duality_check(*n0, *u, *tol, *nsites)?
        }
        CommandConfig::Oracle {
            n0,
            u,
            nsites,
            ipr_threshold,
        } => run_oracle(*n0, *u, *nsites, *ipr_threshold)?,
        CommandConfig::KpBands { upsilon, samples } => run_kp_bands(*upsilon, *samples)?,
        CommandConfig::KpTune {
            width,
            upsilon,
            samples,
        } => run_kp_tune(*width, *upsilon, *samples)?,
    };
    let mut diagnostics = diagnostics;
    diagnostics.insert(
        "library_version".into(),
        Value::from(env!("CARGO_PKG_VERSION")),
    );
    if let Some(k0) = config.k0 {
        diagnostics.insert("k0_annotation".into(), Value::from(k0));
    }
    if let Some(ell) = config.ell {
        diagnostics.insert("ell_annotation".into(), Value::from(ell));
    }
    Ok(Report {
        config: config.to_flat_map(),
        results,
        diagnostics,
        table,
    })
}

type CommandOutput = (Value, BTreeMap<String, Value>, Table);

fn step_problem(n0: usize, u: f64) -> Result<QuantizationProblem, CliError> {
    if n0 == 0 {
        return Err(CliError {
            status: 3,
            kind: "invalid-parameter".into(),
            message: "precondition violated: n0 must be at least 1".into(),
        });
    }
    Ok(QuantizationProblem::new(WallStepPotential::new(n0, u)?))
}

fn discrete_table(energies: &[f64], residuals: &[f64]) -> Table {
    Table {
        header: vec!["index", "energy_over_K0", "residual"],
        rows: energies
            .iter()
            .zip(residuals)
            .enumerate()
            .map(|(i, (e, r))| vec![i.to_string(), crate::report::sig12(*e), crate::report::sig12(*r)])
            .collect(),
    }
}

fn run_bound(n0: usize, u: f64, tol: f64) -> Result<CommandOutput, CliError> {
    let problem = step_problem(n0, u)?;
    let spectrum = problem.discrete_spectrum(tol)?;
    let window = problem.discrete_window();
    let results = json!({
        "count": spectrum.count(),
        "energies": spectrum.energies(),
        "residuals": spectrum.residuals(),
        "discrete_window": window.map(|(lo, hi)| json!({"lo": lo, "hi": hi})),
        "continuous_band": {"lo": 0.0, "hi": 2.0},
    });
    let diagnostics = solver_diagnostics(n0, tol);
    let table = discrete_table(spectrum.energies(), spectrum.residuals());
    Ok((results, diagnostics, table))
}

fn run_spectrum(n0: usize, u: f64, tol: f64, states: bool) -> Result<CommandOutput, CliError> {
    let problem = step_problem(n0, u)?;
    let result = solve_spectrum(&problem, tol, states)?;
    let state_values = result.states.as_ref().map(|summaries| {
        summaries
            .iter()
            .map(|s| {
                json!({
                    "energy": s.energy,
                    "ipr": s.ipr,
                    "interior_weight": s.interior_weight,
                    "decay_rate": s.decay_rate,
                })
            })
            .collect::<Vec<_>>()
    });
    let results = json!({
        "continuous_band": {"lo": result.continuous.lo, "hi": result.continuous.hi},
        "count": result.discrete.count(),
        "energies": result.discrete.energies(),
        "residuals": result.discrete.residuals(),
        "states": state_values,
    });
    let diagnostics = solver_diagnostics(n0, tol);
    let table = discrete_table(result.discrete.energies(), result.discrete.residuals());
    Ok((results, diagnostics, table))
}

fn run_duality_check(n0: usize, u: f64, tol: f64, nsites: usize) -> Result<CommandOutput, CliError> {
    let u_abs = u.abs();
    if u_abs == 0.0 {
        return Err(CliError::from(lattice_spectra::Error::InvalidParameter {
            name: "u",
            message: "duality check needs a nonzero step height".into(),
        }));
    }
    let barrier = step_problem(n0, u_abs)?;
    let well = step_problem(n0, -u_abs)?;
    let barrier_spec = barrier.discrete_spectrum(tol)?;
    let well_spec = well.discrete_spectrum(tol)?;

    // analytic mirror: sorted well energies vs 2 − reversed barrier energies
    let mut mirror_defect: f64 = 0.0;
    let mirrored: Vec<f64> = barrier_spec
        .energies()
        .iter()
        .rev()
        .map(|e| 2.0 - e)
        .collect();
    if well_spec.count() == barrier_spec.count() {
        for (w, m) in well_spec.energies().iter().zip(&mirrored) {
            mirror_defect = mirror_defect.max((w - m).abs());
        }
    } else {
        mirror_defect = f64::INFINITY;
    }

    // matrix conjugation identity on a finite window
    let d = Dispersion::single_cosine();
    let v = WallStepPotential::new(n0, u_abs)?.to_site_potential(nsites)?;
    let h_plus = TruncatedHamiltonian::build(&d, &v)?;
    let h_minus = TruncatedHamiltonian::build(&d, &v.dual())?;
    let span = d.k_max() - d.k_min();
    let n = h_plus.n();
    let mut matrix_defect: f64 = 0.0;
    for i in 0..n {
        for j in i.saturating_sub(1)..(i + 2).min(n) {
            let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
            let conjugated = -sign * h_plus.entry(i, j) + if i == j { span } else { 0.0 };
            matrix_defect = matrix_defect.max((h_minus.entry(i, j) - conjugated).abs());
        }
    }

    let results = json!({
        "duality_applicable": true,
        "well_count": well_spec.count(),
        "barrier_count": barrier_spec.count(),
        "well_energies": well_spec.energies(),
        "barrier_energies": barrier_spec.energies(),
        "mirror_defect": mirror_defect,
        "matrix_identity_defect": matrix_defect,
    });
    let mut diagnostics = solver_diagnostics(n0, tol);
    diagnostics.insert("nsites".into(), Value::from(nsites));
    let table = Table {
        header: vec![
            "index",
            "well_energy_over_K0",
            "mirrored_barrier_energy_over_K0",
            "defect",
        ],
        rows: well_spec
            .energies()
            .iter()
            .zip(&mirrored)
            .enumerate()
            .map(|(i, (w, m))| {
                vec![
                    i.to_string(),
                    crate::report::sig12(*w),
                    crate::report::sig12(*m),
                    crate::report::sig12((w - m).abs()),
                ]
            })
            .collect(),
    };
    Ok((results, diagnostics, table))
}

fn run_oracle(
    n0: usize,
    u: f64,
    nsites: usize,
    ipr_threshold: Option<f64>,
) -> Result<CommandOutput, CliError> {
    step_problem(n0, u)?;
    let d = Dispersion::single_cosine();
    let v = WallStepPotential::new(n0, u)?.to_site_potential(nsites)?;
    let h = TruncatedHamiltonian::build(&d, &v)?;
    let eps = h.diagonalize()?;
    let band = EnergyBand {
        lo: d.k_min(),
        hi: d.k_max(),
        kind: BandKind::Continuous,
    };
    let threshold = ipr_threshold.unwrap_or_else(|| default_ipr_threshold(nsites));
    let classification = classify_bound(&eps, &band, threshold);
    let positivity = positivity_check(&eps, &v, &d);
    let positivity_min = positivity.iter().cloned().fold(f64::INFINITY, f64::min);

    let bound_states: Vec<Value> = classification
        .bound
        .iter()
        .map(|&i| {
            json!({
                "index": i,
                "energy": eps.eigenvalue(i),
                "ipr": eps.ipr(i),
            })
        })
        .collect();
    let results = json!({
        "nsites": nsites,
        "bound_count": classification.bound.len(),
        "band_like_count": classification.band_like.len(),
        "bound_states": bound_states,
        "eigenvalue_min": eps.eigenvalue(0),
        "eigenvalue_max": eps.eigenvalue(eps.len() - 1),
        "positivity_min": positivity_min,
    });
    let mut diagnostics = BTreeMap::new();
    diagnostics.insert("ipr_threshold".into(), Value::from(threshold));
    diagnostics.insert("boundary".into(), Value::from("dirichlet"));

    let is_bound: std::collections::BTreeSet<usize> =
        classification.bound.iter().copied().collect();
    let table = Table {
        header: vec!["index", "energy_over_K0", "ipr", "classification"],
        rows: (0..eps.len())
            .map(|i| {
                vec![
                    i.to_string(),
                    crate::report::sig12(eps.eigenvalue(i)),
                    crate::report::sig12(eps.ipr(i)),
                    if is_bound.contains(&i) { "bound" } else { "band" }.to_string(),
                ]
            })
            .collect(),
    };
    Ok((results, diagnostics, table))
}

fn run_kp_bands(upsilon: f64, samples: usize) -> Result<CommandOutput, CliError> {
    let band0 = if samples > 0 {
        solve_band_sampled(upsilon, samples)?
    } else {
        solve_band(upsilon, 0)?
    };
    let band1 = solve_band(upsilon, 1)?;
    let gap_to_continuum = -band0.e_hi;
    let gap_to_band1 = band1.e_lo - band0.e_hi;
    let sample_values: Option<Vec<Value>> = band0
        .alpha_samples
        .as_ref()
        .map(|s| s.iter().map(|&(a, e)| json!([a, e])).collect());
    let results = json!({
        "upsilon": upsilon,
        "band0": {"e_lo": band0.e_lo, "e_hi": band0.e_hi, "width": band0.width()},
        "band1": {"e_lo": band1.e_lo, "e_hi": band1.e_hi},
        "gap_to_continuum": gap_to_continuum,
        "gap_to_band1": gap_to_band1,
        "width_over_gap": band0.width() / gap_to_continuum,
        "samples": sample_values,
    });
    let mut diagnostics = BTreeMap::new();
    diagnostics.insert("energy_unit".into(), Value::from("(E - V_r)/V0"));

    let table = match &band0.alpha_samples {
        Some(samples) => Table {
            header: vec!["alpha", "energy_over_V0"],
            rows: samples
                .iter()
                .map(|&(a, e)| vec![crate::report::sig12(a), crate::report::sig12(e)])
                .collect(),
        },
        None => Table {
            header: vec!["band", "e_lo_over_V0", "e_hi_over_V0", "width_over_V0"],
            rows: vec![
                vec![
                    "0".into(),
                    crate::report::sig12(band0.e_lo),
                    crate::report::sig12(band0.e_hi),
                    crate::report::sig12(band0.width()),
                ],
                vec![
                    "1".into(),
                    crate::report::sig12(band1.e_lo),
                    crate::report::sig12(band1.e_hi),
                    crate::report::sig12(band1.width()),
                ],
            ],
        },
    };
    Ok((results, diagnostics, table))
}

fn run_kp_tune(width: f64, upsilon: f64, samples: usize) -> Result<CommandOutput, CliError> {
    let model = tune_to_lattice(width, upsilon)?;
    let band = model.band_absolute(0)?;
    let count = samples.max(2);
    let grid: Vec<f64> = (0..count)
        .map(|j| j as f64 * std::f64::consts::PI / (count - 1) as f64)
        .collect();
    let sampled = model.effective_dispersion(&grid)?;
    let max_cos_deviation = sampled
        .iter()
        .map(|&(a, e)| (e + 0.5 * width * a.cos()).abs())
        .fold(0.0f64, f64::max);
    let results = json!({
        "width_w": width,
        "upsilon": upsilon,
        "v0": model.v0,
        "v_r": model.v_r,
        "band0_absolute": {"e_lo": band.e_lo, "e_hi": band.e_hi},
        "max_cosine_deviation": max_cos_deviation,
        "samples": sampled.iter().map(|&(a, e)| json!([a, e])).collect::<Vec<_>>(),
    });
    let mut diagnostics = BTreeMap::new();
    diagnostics.insert("energy_unit".into(), Value::from("absolute (units of W)"));
    diagnostics.insert(
        "effective_k0".into(),
        Value::from(width / 2.0),
    );
    let table = Table {
        header: vec!["alpha", "energy"],
        rows: sampled
            .iter()
            .map(|&(a, e)| vec![crate::report::sig12(a), crate::report::sig12(e)])
            .collect(),
    };
    Ok((results, diagnostics, table))
}

fn solver_diagnostics(n0: usize, tol: f64) -> BTreeMap<String, Value> {
    let mut map = BTreeMap::new();
    map.insert("tolerance".into(), Value::from(tol));
    map.insert("scan_points".into(), Value::from(200.max(50 * n0)));
    map.insert("edge_inset".into(), Value::from(1e-9));
    map
}
