use std::fmt;
use std::str::FromStr;

use irrev_core::channels::{apply, bath_from_temperature, gad_channel, hamiltonian};
use irrev_core::geometry::{
    default_triangle_grid, geodesic_length, log_time_grid, min_triangle_slack, mixing_triangle_proof_check,
    BoundsReport,
};
use irrev_core::photonic::{eta_from_process, gad_from_circuit, theta_for_eta};
use irrev_core::qmat::{bloch_to_rho, states};
use irrev_core::thermo::{delta_s_irr_relent, delta_s_irr_thermo};
use irrev_core::{BlochVector, DensityMatrix, MetricKind, Result};

use crate::format::sig;
use crate::CliError;

/// Temperatures every suite is run at.
pub const SUITE_TEMPERATURES: [f64; 5] = [0.1, 0.34, 1.0, 2.0, 5.0];

/// Damping values probed by the channel suites.
fn eta_grid() -> Vec<f64> {
    (0..=20).map(|k| k as f64 / 20.0).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Cptp,
    FixedPoint,
    Triangle,
    MetricOrder,
    Sandwich,
    EqEquivalence,
    CircuitEquivalence,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Cptp,
        Suite::FixedPoint,
        Suite::Triangle,
        Suite::MetricOrder,
        Suite::Sandwich,
        Suite::EqEquivalence,
        Suite::CircuitEquivalence,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Cptp => "cptp",
            Suite::FixedPoint => "fixed_point",
            Suite::Triangle => "triangle",
            Suite::MetricOrder => "metric_order",
            Suite::Sandwich => "sandwich",
            Suite::EqEquivalence => "eq_equivalence",
            Suite::CircuitEquivalence => "circuit_equivalence",
        }
    }

    pub fn run(&self) -> Vec<Check> {
        let outcome = match self {
            Suite::Cptp => cptp(),
            Suite::FixedPoint => fixed_point(),
            Suite::Triangle => triangle(),
            Suite::MetricOrder => metric_order(),
            Suite::Sandwich => sandwich(),
            Suite::EqEquivalence => eq_equivalence(),
            Suite::CircuitEquivalence => circuit_equivalence(),
        };
        outcome.unwrap_or_else(|e| {
            vec![Check {
                name: format!("{}.error: {e}", self.name()),
                max_violation: f64::INFINITY,
                threshold: 0.0,
            }]
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> std::result::Result<Self, CliError> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown suite {s:?}")))
    }
}

/// One line of the report. A check passes when `max_violation ≤ threshold`.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub max_violation: f64,
    pub threshold: f64,
}

impl Check {
    fn new(name: &str, max_violation: f64, threshold: f64) -> Self {
        Self {
            name: name.to_string(),
            max_violation,
            threshold,
        }
    }

    pub fn passed(&self) -> bool {
        self.max_violation <= self.threshold
    }
}

pub const REPORT_HEADER: &str = "check,max_violation,threshold,verdict";

pub fn report_line(c: &Check) -> String {
    let verdict = if c.passed() { "PASS" } else { "FAIL" };
    format!(
        "{},{},{},{}",
        c.name,
        sig(c.max_violation, 6),
        sig(c.threshold, 6),
        verdict
    )
}

/// Runs the suites in order and returns the report and whether all passed.
pub fn cmd_verify(suites: &[Suite]) -> (String, bool) {
    let checks: Vec<Check> = suites.iter().flat_map(|s| s.run()).collect();
    let mut out = String::from(REPORT_HEADER);
    out.push('\n');
    for c in &checks {
        out.push_str(&report_line(c));
        out.push('\n');
    }
    (out, checks.iter().all(Check::passed))
}

/// `n` Fibonacci-lattice points on the Bloch sphere scaled by `radius`.
pub fn fibonacci_sphere(n: usize, radius: f64) -> Vec<BlochVector> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
            let rho = (1.0 - z * z).sqrt();
            let phi = golden * i as f64;
            BlochVector {
                x: radius * rho * phi.cos(),
                y: radius * rho * phi.sin(),
                z: radius * z,
            }
        })
        .collect()
}

/// `n` points filling the Bloch ball with roughly uniform density.
pub fn fibonacci_ball(n: usize) -> Vec<BlochVector> {
    fibonacci_sphere(n, 1.0)
        .into_iter()
        .enumerate()
        .map(|(i, b)| {
            let r = ((i as f64 * 0.618_033_988_75).fract() * 0.999 + 0.001).cbrt();
            BlochVector {
                x: b.x * r,
                y: b.y * r,
                z: b.z * r,
            }
        })
        .collect()
}

fn states_of(points: &[BlochVector]) -> Result<Vec<DensityMatrix>> {
    points.iter().map(|&b| bloch_to_rho(b)).collect()
}

fn cptp() -> Result<Vec<Check>> {
    let mut gad = 0.0f64;
    let mut circuit = 0.0f64;
    for &t in &SUITE_TEMPERATURES {
        let bath = bath_from_temperature(t)?;
        for eta in eta_grid() {
            gad = gad.max(gad_channel(&bath, eta)?.completeness_residual());
            circuit = circuit.max(gad_from_circuit(theta_for_eta(eta)?, &bath)?.completeness_residual());
        }
    }
    Ok(vec![
        Check::new("cptp.gad_completeness", gad, 1e-10),
        Check::new("cptp.circuit_completeness", circuit, 1e-10),
    ])
}

fn fixed_point() -> Result<Vec<Check>> {
    let mut worst = 0.0f64;
    for &t in &SUITE_TEMPERATURES {
        let bath = bath_from_temperature(t)?;
        let eq = bath.equilibrium();
        for eta in eta_grid() {
            let out = apply(&gad_channel(&bath, eta)?, &eq)?;
            worst = worst.max(out.matrix().max_abs_diff(eq.matrix()));
        }
    }
    Ok(vec![Check::new("fixed_point.gad_equilibrium", worst, 1e-12)])
}

fn triangle() -> Result<Vec<Check>> {
    let times = default_triangle_grid();
    let mut gad = f64::INFINITY;
    for &t in &SUITE_TEMPERATURES {
        let bath = bath_from_temperature(t)?;
        for rho0 in [states::h(), states::v(), states::d()] {
            let family = |time: f64| gad_channel(&bath, bath.eta_at(time));
            gad = gad.min(min_triangle_slack(family, &rho0, &times)?);
        }
    }

    let lambdas: Vec<f64> = (1..=10).map(|k| k as f64 / 10.0).collect();
    let (mut late, mut early, mut interp) = (f64::INFINITY, f64::INFINITY, 0.0f64);
    for &t in &SUITE_TEMPERATURES {
        let eq = bath_from_temperature(t)?.equilibrium();
        for rho0 in [states::h(), states::v(), states::d()] {
            for (i, &l1) in lambdas.iter().enumerate() {
                for &l2 in &lambdas[i..] {
                    let s = mixing_triangle_proof_check(&rho0, &eq, l1, l2)?;
                    late = late.min(s.late_leg);
                    early = early.min(s.early_leg);
                    interp = interp.max(s.interpolation_residual);
                }
            }
        }
    }
    Ok(vec![
        Check::new("triangle.gad_min_slack", -gad, 1e-9),
        Check::new("triangle.mixing_late_leg", -late, 1e-9),
        Check::new("triangle.mixing_early_leg", -early, 1e-9),
        Check::new("triangle.mixing_interpolation", interp, 1e-12),
    ])
}

fn metric_order() -> Result<Vec<Check>> {
    let ball = states_of(&fibonacci_ball(1000))?;
    let n = ball.len();
    let mut order = f64::NEG_INFINITY;
    for (i, rho) in ball.iter().enumerate() {
        let sigma = &ball[(i * 389 + 17) % n];
        let qf = geodesic_length(MetricKind::QuantumFisher, rho, sigma)?;
        let wy = geodesic_length(MetricKind::WignerYanase, rho, sigma)?;
        order = order.max(qf - wy);
    }

    let diag: Vec<DensityMatrix> = (0..=20)
        .map(|k| DensityMatrix::diagonal(&[k as f64 / 20.0, 1.0 - k as f64 / 20.0]))
        .collect::<Result<_>>()?;
    let mut commuting = 0.0f64;
    for rho in &diag {
        for sigma in &diag {
            let qf = geodesic_length(MetricKind::QuantumFisher, rho, sigma)?;
            let wy = geodesic_length(MetricKind::WignerYanase, rho, sigma)?;
            commuting = commuting.max((qf - wy).abs());
        }
    }
    Ok(vec![
        Check::new("metric_order.wy_ge_qf", order, 1e-10),
        Check::new("metric_order.commuting_equal", commuting, 1e-10),
    ])
}

fn sandwich() -> Result<Vec<Check>> {
    let initial = states_of(&fibonacci_sphere(100, 1.0))?;
    let times = log_time_grid(1e-2, 10.0, 20);
    let (mut below, mut above, mut negative) = (f64::INFINITY, f64::INFINITY, f64::INFINITY);
    for &t in &SUITE_TEMPERATURES {
        let bath = bath_from_temperature(t)?;
        for rho0 in &initial {
            for &time in &times {
                let r = BoundsReport::on_gad_trajectory(&bath, rho0, bath.eta_at(time))?;
                let (b, a) = r.sandwich_slack();
                below = below.min(b);
                above = above.min(a);
                negative = negative.min(r.lower.qf.min(r.lower.wy));
            }
        }
    }
    Ok(vec![
        Check::new("sandwich.lower_nonnegative", -negative, 1e-9),
        Check::new("sandwich.lower_le_ds", -below, 1e-9),
        Check::new("sandwich.ds_le_upper", -above, 1e-9),
    ])
}

fn eq_equivalence() -> Result<Vec<Check>> {
    let initial = states_of(&fibonacci_ball(200))?;
    let h = hamiltonian();
    let mut worst = 0.0f64;
    for &t in &SUITE_TEMPERATURES {
        let bath = bath_from_temperature(t)?;
        let eq = bath.equilibrium();
        for eta in eta_grid() {
            let ch = gad_channel(&bath, eta)?;
            for rho0 in &initial {
                let rho_t = apply(&ch, rho0)?;
                let a = delta_s_irr_thermo(rho0, &rho_t, &h, t)?;
                let b = delta_s_irr_relent(rho0, &rho_t, &eq)?;
                worst = worst.max((a - b).abs());
            }
        }
    }
    Ok(vec![Check::new("eq_equivalence.thermo_vs_relent", worst, 1e-10)])
}

fn circuit_equivalence() -> Result<Vec<Check>> {
    let (mut choi, mut eta_err) = (0.0f64, 0.0f64);
    for &t in &SUITE_TEMPERATURES {
        let bath = bath_from_temperature(t)?;
        for k in 0..50 {
            let theta = std::f64::consts::FRAC_PI_8 * k as f64 / 49.0;
            let circuit = gad_from_circuit(theta, &bath)?;
            let eta = (4.0 * theta).sin().powi(2);
            choi = choi.max(circuit.choi_distance(&gad_channel(&bath, eta)?)?);
            eta_err = eta_err.max((eta_from_process(&circuit)? - eta).abs());
        }
    }
    Ok(vec![
        Check::new("circuit_equivalence.choi_distance", choi, 1e-10),
        Check::new("circuit_equivalence.eta_recovery", eta_err, 1e-10),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn fibonacci_points_are_valid() {
        for b in fibonacci_sphere(50, 1.0) {
            assert!((b.norm() - 1.0).abs() < 1e-12);
        }
        for b in fibonacci_ball(200) {
            assert!(b.norm() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn failing_check_is_reported() {
        let c = Check::new("x", 2.0, 1.0);
        assert!(!c.passed());
        assert_eq!(report_line(&c), "x,2,1,FAIL");
    }

    #[test]
    fn cheap_suites_pass() {
        let (report, ok) = cmd_verify(&[Suite::Cptp, Suite::FixedPoint, Suite::CircuitEquivalence]);
        assert!(ok, "{report}");
        assert_eq!(report.lines().count(), 6);
    }
}
