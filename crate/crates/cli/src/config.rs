use std::fmt;
use std::str::FromStr;

use irrev_core::photonic::{theta_for_eta, DEFAULT_RESAMPLES};
use irrev_core::qmat::{bloch_to_rho, states};
use irrev_core::{BathParams, BlochVector, DensityMatrix};

use crate::CliError;

/// Temperature used when none is given.
pub const DEFAULT_TEMPERATURE: f64 = 0.34;

/// Initial state of the system qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialState {
    H,
    V,
    D,
    Bloch(BlochVector),
}

impl InitialState {
    pub fn density(&self) -> DensityMatrix {
        match self {
            InitialState::H => states::h(),
            InitialState::V => states::v(),
            InitialState::D => states::d(),
            InitialState::Bloch(b) => bloch_to_rho(*b).expect("validated on parse"),
        }
    }
}

impl fmt::Display for InitialState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InitialState::H => write!(f, "H"),
            InitialState::V => write!(f, "V"),
            InitialState::D => write!(f, "D"),
            InitialState::Bloch(b) => write!(f, "{}:{}:{}", b.x, b.y, b.z),
        }
    }
}

impl FromStr for InitialState {
    type Err = CliError;

    /// `H`, `V`, `D`, or a Bloch triple `x,y,z`.
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s.trim() {
            "H" | "h" => Ok(Self::H),
            "V" | "v" => Ok(Self::V),
            "D" | "d" => Ok(Self::D),
            other => {
                let parts = parse_list(other)?;
                if parts.len() != 3 {
                    return Err(CliError::Usage(format!(
                        "state must be H, V, D or a Bloch triple x,y,z (got {other:?})"
                    )));
                }
                Ok(Self::Bloch(BlochVector::new(parts[0], parts[1], parts[2])?))
            }
        }
    }
}

/// Comma-separated list of reals. `inf` is accepted.
pub fn parse_list(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("not a number: {t:?}")))
        })
        .collect()
}

/// The abscissa of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub enum Grid {
    /// 20 points with η uniform on `[0, 0.95]`, then `η = 1` (`t = ∞`).
    Default,
    /// Explicit dimensionless times.
    Times(Vec<f64>),
    /// Explicit half-wave-plate angles; `η = sin²(4θ)`.
    Thetas(Vec<f64>),
}

/// One abscissa value resolved against a bath.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub time: f64,
    pub eta: f64,
    pub theta: f64,
}

fn strictly_increasing(values: &[f64], what: &str) -> Result<(), CliError> {
    if values.is_empty() {
        return Err(CliError::InvalidGrid(format!("{what} grid is empty")));
    }
    if values.iter().any(|v| v.is_nan()) {
        return Err(CliError::InvalidGrid(format!("{what} grid contains NaN")));
    }
    if values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::InvalidGrid(format!(
            "{what} grid must be strictly increasing"
        )));
    }
    Ok(())
}

impl Grid {
    pub fn resolve(&self, bath: &BathParams) -> Result<Vec<GridPoint>, CliError> {
        let from_eta = |eta: f64| -> Result<GridPoint, CliError> {
            Ok(GridPoint {
                time: bath.time_for_eta(eta),
                eta,
                theta: theta_for_eta(eta)?,
            })
        };
        match self {
            Grid::Default => {
                let mut points: Vec<GridPoint> = (0..20)
                    .map(|k| from_eta(0.95 * k as f64 / 19.0))
                    .collect::<Result<_, _>>()?;
                points.push(from_eta(1.0)?);
                Ok(points)
            }
            Grid::Times(times) => {
                strictly_increasing(times, "time")?;
                if times[0] < 0.0 {
                    return Err(CliError::InvalidGrid("times must be non-negative".into()));
                }
                times
                    .iter()
                    .map(|&t| {
                        let eta = bath.eta_at(t);
                        Ok(GridPoint {
                            time: t,
                            eta,
                            theta: theta_for_eta(eta)?,
                        })
                    })
                    .collect()
            }
            Grid::Thetas(thetas) => {
                strictly_increasing(thetas, "theta")?;
                Ok(thetas
                    .iter()
                    .map(|&theta| {
                        let eta = (4.0 * theta).sin().powi(2);
                        GridPoint {
                            time: bath.time_for_eta(eta),
                            eta,
                            theta,
                        }
                    })
                    .collect())
            }
        }
    }
}

/// Parameters shared by `sweep` and `experiment`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub temperature: f64,
    pub initial_state: InitialState,
    pub grid: Grid,
    pub shots: Option<u64>,
    pub resamples: usize,
    pub seed: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            temperature: DEFAULT_TEMPERATURE,
            initial_state: InitialState::D,
            grid: Grid::Default,
            shots: None,
            resamples: DEFAULT_RESAMPLES,
            seed: 0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use irrev_core::channels::bath_from_temperature;

    #[test]
    fn parses_states() {
        assert_eq!("H".parse::<InitialState>().unwrap(), InitialState::H);
        assert_eq!("d".parse::<InitialState>().unwrap(), InitialState::D);
        let b: InitialState = "0.1, 0.2,-0.3".parse().unwrap();
        assert!(matches!(b, InitialState::Bloch(v) if v.z == -0.3));
        assert!("1,1,1".parse::<InitialState>().is_err());
        assert!("Q".parse::<InitialState>().is_err());
    }

    #[test]
    fn default_grid_shape() {
        let bath = bath_from_temperature(0.34).unwrap();
        let pts = Grid::Default.resolve(&bath).unwrap();
        assert_eq!(pts.len(), 21);
        assert_eq!(pts[0].eta, 0.0);
        assert_eq!(pts[0].time, 0.0);
        assert!((pts[19].eta - 0.95).abs() < 1e-15);
        assert_eq!(pts[20].eta, 1.0);
        assert!(pts[20].time.is_infinite());
        assert!(pts.windows(2).all(|w| w[0].time < w[1].time));
    }

    #[test]
    fn rejects_bad_grids() {
        let bath = bath_from_temperature(1.0).unwrap();
        assert!(matches!(
            Grid::Times(vec![]).resolve(&bath),
            Err(CliError::InvalidGrid(_))
        ));
        assert!(matches!(
            Grid::Times(vec![1.0, 0.5]).resolve(&bath),
            Err(CliError::InvalidGrid(_))
        ));
        assert!(matches!(
            Grid::Times(vec![-1.0, 0.5]).resolve(&bath),
            Err(CliError::InvalidGrid(_))
        ));
        assert!(matches!(
            Grid::Thetas(vec![0.1, 0.1]).resolve(&bath),
            Err(CliError::InvalidGrid(_))
        ));
    }

    #[test]
    fn theta_grid_maps_to_eta() {
        let bath = bath_from_temperature(1.0).unwrap();
        let pts = Grid::Thetas(vec![0.0, std::f64::consts::FRAC_PI_8])
            .resolve(&bath)
            .unwrap();
        assert_eq!(pts[0].eta, 0.0);
        assert!((pts[1].eta - 1.0).abs() < 1e-15);
    }
}
