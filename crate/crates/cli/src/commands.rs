use rayon::prelude::*;

use irrev_core::channels::{apply, bath_from_temperature, gad_channel};
use irrev_core::geometry::BoundsReport;
use irrev_core::photonic::{gad_from_circuit, monte_carlo_errors, reconstruct_state, simulate_counts};
use irrev_core::DensityMatrix;

use crate::config::{GridPoint, InitialState, SweepConfig};
use crate::format::num;
use crate::CliError;

/// Columns shared by `sweep` and `experiment`.
pub const SWEEP_COLUMNS: [&str; 12] = [
    "time",
    "eta",
    "ds_irr",
    "upper_qf",
    "upper_wy",
    "lower_qf",
    "lower_wy",
    "relent_to_eq",
    "l_qf_init",
    "l_wy_init",
    "l_qf_eq",
    "l_wy_eq",
];

pub const ASYMPTOTIC_COLUMNS: [&str; 5] = ["temperature", "state", "ds_irr_inf", "lower_qf_inf", "lower_wy_inf"];

/// Number of points in the default temperature scan.
pub const DEFAULT_TEMPERATURE_POINTS: usize = 30;

/// 30 temperatures evenly spaced on `[0.05, 3]`.
pub fn default_temperatures() -> Vec<f64> {
    let n = DEFAULT_TEMPERATURE_POINTS;
    (0..n)
        .map(|k| 0.05 + (3.0 - 0.05) * k as f64 / (n - 1) as f64)
        .collect()
}

/// The values after `time` and `eta`, in column order.
fn functionals(r: &BoundsReport) -> [f64; 10] {
    [
        r.ds_irr,
        r.upper.qf,
        r.upper.wy,
        r.lower.qf,
        r.lower.wy,
        r.rel_ent_to_eq,
        r.l_from_init.qf,
        r.l_from_init.wy,
        r.l_to_eq.qf,
        r.l_to_eq.wy,
    ]
}

fn push_row(out: &mut String, cells: impl IntoIterator<Item = String>) {
    let cells: Vec<String> = cells.into_iter().collect();
    out.push_str(&cells.join(","));
    out.push('\n');
}

fn report_cells(r: &BoundsReport) -> Vec<String> {
    [r.time, r.eta].into_iter().chain(functionals(r)).map(num).collect()
}

/// Noise-free bounds along the GAD trajectory, one row per grid point.
pub fn cmd_sweep(cfg: &SweepConfig) -> Result<String, CliError> {
    let bath = bath_from_temperature(cfg.temperature)?;
    let points = cfg.grid.resolve(&bath)?;
    let rho0 = cfg.initial_state.density();
    let eq = bath.equilibrium();
    let rows: Vec<BoundsReport> = points
        .par_iter()
        .map(|p| {
            let rho_t = apply(&gad_channel(&bath, p.eta)?, &rho0)?;
            Ok(BoundsReport::evaluate(p.time, p.eta, &rho0, &rho_t, &eq)?)
        })
        .collect::<Result<_, CliError>>()?;

    let mut out = String::new();
    push_row(&mut out, SWEEP_COLUMNS.iter().map(|s| s.to_string()));
    for r in &rows {
        push_row(&mut out, report_cells(r));
    }
    Ok(out)
}

/// `ΔS_irr(∞) = S(ρ₀‖ρ_eq)` and the `η = 1` lower bounds per temperature and state.
pub fn cmd_asymptotic(temperatures: &[f64], states: &[InitialState]) -> Result<String, CliError> {
    let jobs: Vec<(f64, InitialState)> = temperatures
        .iter()
        .flat_map(|&t| states.iter().map(move |&s| (t, s)))
        .collect();
    let rows: Vec<(f64, InitialState, BoundsReport)> = jobs
        .par_iter()
        .map(|&(t, s)| {
            let bath = bath_from_temperature(t)?;
            let r = BoundsReport::on_gad_trajectory(&bath, &s.density(), 1.0)?;
            Ok((t, s, r))
        })
        .collect::<Result<_, CliError>>()?;

    let mut out = String::new();
    push_row(&mut out, ASYMPTOTIC_COLUMNS.iter().map(|s| s.to_string()));
    for (t, s, r) in &rows {
        push_row(
            &mut out,
            [num(*t), s.to_string(), num(r.ds_irr), num(r.lower.qf), num(r.lower.wy)],
        );
    }
    Ok(out)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for grid row `row`, decorrelated from neighbouring rows.
pub fn row_seed(seed: u64, row: usize) -> u64 {
    splitmix64(seed ^ splitmix64(row as u64))
}

/// One noisy row: the point estimate and the bootstrap sigma of each functional.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRow {
    pub estimate: BoundsReport,
    pub sigma: [f64; 10],
}

/// Runs the photonic circuit at one grid point, tomographs its output and
/// evaluates every functional on the reconstruction.
pub fn experiment_row(
    cfg: &SweepConfig,
    rho0: &DensityMatrix,
    point: &GridPoint,
    seed: u64,
) -> Result<ExperimentRow, CliError> {
    let shots = cfg
        .shots
        .ok_or_else(|| CliError::Usage("experiment needs --shots".into()))?;
    let bath = bath_from_temperature(cfg.temperature)?;
    let eq = bath.equilibrium();
    let rho_t = apply(&gad_from_circuit(point.theta, &bath)?, rho0)?;
    let counts = simulate_counts(&rho_t, shots, seed)?;
    let estimate = BoundsReport::evaluate(point.time, point.eta, rho0, &reconstruct_state(&counts), &eq)?;
    let errors = monte_carlo_errors(&counts, cfg.resamples, seed, |rho| {
        Ok(functionals(&BoundsReport::evaluate(point.time, point.eta, rho0, rho, &eq)?).to_vec())
    })?;
    let mut sigma = [0.0; 10];
    sigma.copy_from_slice(&errors.quantity_sigma);
    Ok(ExperimentRow { estimate, sigma })
}

/// Simulated experimental points with Monte Carlo error bars.
pub fn cmd_experiment(cfg: &SweepConfig) -> Result<String, CliError> {
    let bath = bath_from_temperature(cfg.temperature)?;
    let points = cfg.grid.resolve(&bath)?;
    let rho0 = cfg.initial_state.density();
    let rows: Vec<ExperimentRow> = points
        .par_iter()
        .enumerate()
        .map(|(i, p)| experiment_row(cfg, &rho0, p, row_seed(cfg.seed, i)))
        .collect::<Result<_, CliError>>()?;

    let mut out = String::new();
    let header = SWEEP_COLUMNS
        .iter()
        .map(|s| s.to_string())
        .chain(SWEEP_COLUMNS[2..].iter().map(|s| format!("{s}_sigma")));
    push_row(&mut out, header);
    for r in &rows {
        push_row(&mut out, report_cells(&r.estimate).into_iter().chain(r.sigma.map(num)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Grid;

    #[test]
    fn sweep_header_and_row_count() {
        let csv = cmd_sweep(&SweepConfig::default()).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], SWEEP_COLUMNS.join(","));
        assert_eq!(lines.len(), 22);
        assert!(lines[21].starts_with("inf,1,"));
    }

    #[test]
    fn asymptotic_rows_follow_input_order() {
        let csv = cmd_asymptotic(&[0.34, 1.0], &[InitialState::H, InitialState::V]).unwrap();
        let first: Vec<&str> = csv.lines().skip(1).map(|l| l.split(',').nth(1).unwrap()).collect();
        assert_eq!(first, ["H", "V", "H", "V"]);
        assert!(csv.lines().nth(1).unwrap().starts_with("0.34,H,2.99263"));
    }

    #[test]
    fn asymptotic_rejects_bad_temperature() {
        assert!(matches!(
            cmd_asymptotic(&[0.0], &[InitialState::H]),
            Err(CliError::Core(irrev_core::Error::NonPositiveTemperature(_)))
        ));
    }

    #[test]
    fn experiment_requires_shots() {
        let cfg = SweepConfig {
            grid: Grid::Times(vec![0.5]),
            ..SweepConfig::default()
        };
        assert!(matches!(cmd_experiment(&cfg), Err(CliError::Usage(_))));
    }

    #[test]
    fn experiment_has_sigma_columns() {
        let cfg = SweepConfig {
            grid: Grid::Times(vec![0.0, 0.5]),
            shots: Some(1000),
            resamples: 10,
            ..SweepConfig::default()
        };
        let csv = cmd_experiment(&cfg).unwrap();
        let header: Vec<&str> = csv.lines().next().unwrap().split(',').collect();
        assert_eq!(header.len(), 22);
        assert_eq!(header[12], "ds_irr_sigma");
        assert_eq!(header[21], "l_wy_eq_sigma");
        assert_eq!(csv.lines().count(), 3);
    }

    #[test]
    fn row_seeds_differ() {
        assert_ne!(row_seed(7, 0), row_seed(7, 1));
        assert_ne!(row_seed(7, 0), row_seed(8, 0));
    }
}
