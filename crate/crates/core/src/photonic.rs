//! Logical model of the two-photon simulator.
//!
//! The system qubit `A` and an ancilla `B` are polarization qubits with
//! `|0⟩ ≡ |H⟩`, `|1⟩ ≡ |V⟩`; joint states are ordered `A ⊗ B`. The ancilla
//! starts in `|H⟩`, passes a half-wave plate at angle `θ`, a C-Z gate with `A`,
//! and a second plate at `θ`; it is then measured in the H/V basis and the
//! outcome selects a Pauli correction on `A`. The resulting map on `A` is
//! amplitude damping with `η = sin²(4θ)`. Wrapping the circuit in bit flips
//! gives the inverse branch, and mixing the two with weights `p`, `1 − p`
//! gives the GAD channel.
//!
//! Tomography measures the three Pauli observables with a fixed shot budget
//! per basis and reconstructs by linear inversion.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use crate::channels::{BathParams, KrausChannel};
use crate::error::{Error, Result};
use crate::qmat::{bloch_to_rho, pauli, rho_to_bloch, BlochVector, ComplexMatrix, DensityMatrix};

/// Default shots per measurement basis.
pub const DEFAULT_SHOTS: u64 = 10_000;
/// Default number of Monte Carlo resamples.
pub const DEFAULT_RESAMPLES: usize = 100;

/// Jones matrix of a half-wave plate with its fast axis at `theta`.
pub fn hwp_jones(theta: f64) -> ComplexMatrix {
    let (s, c) = (2.0 * theta).sin_cos();
    ComplexMatrix::from_real_rows([[c, s], [s, -c]])
}

/// Controlled-sign gate: `−1` on `|V⟩|V⟩` only.
pub fn cz_gate() -> ComplexMatrix {
    ComplexMatrix::from_real_diag(&[1.0, 1.0, 1.0, -1.0])
}

/// Which of the two circuits is run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// Damping towards `|H⟩`.
    Ad,
    /// Damping towards `|V⟩`.
    Iad,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircuitConfig {
    pub theta: f64,
    pub branch: Branch,
    /// Weight given to this branch's data when the branches are combined.
    pub p_mix: f64,
}

impl CircuitConfig {
    pub fn new(theta: f64, branch: Branch, p_mix: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p_mix) {
            return Err(Error::LambdaOutOfRange(p_mix));
        }
        Ok(Self { theta, branch, p_mix })
    }

    /// Damping implemented by this plate angle, `sin²(4θ)`.
    pub fn eta(&self) -> f64 {
        (4.0 * self.theta).sin().powi(2)
    }
}

/// Plate angle in `[0, π/8]` that implements damping `eta`.
pub fn theta_for_eta(eta: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::EtaOutOfRange(eta));
    }
    Ok(eta.sqrt().asin() / 4.0)
}

/// Joint state of system and ancilla, ordered `A ⊗ B`.
#[derive(Debug, Clone)]
pub struct TwoQubitState {
    mat: DensityMatrix,
}

impl TwoQubitState {
    pub fn product(system: &DensityMatrix, ancilla: &DensityMatrix) -> Result<Self> {
        for s in [system, ancilla] {
            if s.dim() != 2 {
                return Err(Error::WrongDim {
                    expected: 2,
                    got: s.dim(),
                });
            }
        }
        Ok(Self {
            mat: DensityMatrix::new(system.matrix().kron(ancilla.matrix()))?,
        })
    }

    pub fn density(&self) -> &DensityMatrix {
        &self.mat
    }

    pub fn evolve(&self, u: &ComplexMatrix) -> Result<Self> {
        Ok(Self {
            mat: DensityMatrix::new(u.sandwich(self.mat.matrix()).hermitian_part())?,
        })
    }

    /// Unnormalized system operator left after finding the ancilla in `|outcome⟩`.
    pub fn condition_on_ancilla(&self, outcome: usize) -> ComplexMatrix {
        let m = self.mat.matrix();
        let mut out = ComplexMatrix::zeros(2);
        for a in 0..2 {
            for a2 in 0..2 {
                out[(a, a2)] = m[(2 * a + outcome, 2 * a2 + outcome)];
            }
        }
        out
    }
}

/// `(1 ⊗ R(θ)) · CZ · (1 ⊗ R(θ))`.
pub fn branch_unitary(theta: f64) -> ComplexMatrix {
    let plate = ComplexMatrix::identity(2).kron(&hwp_jones(theta));
    &(&plate * &cz_gate()) * &plate
}

/// Pauli applied to `A` after ancilla outcome `outcome` in the AD circuit.
///
/// Finding `|V⟩` means the excitation moved, so `X` completes the jump.
/// Finding `|H⟩` leaves `diag(1, cos 4θ)`; when `cos 4θ < 0` a `Z` restores
/// the non-negative square root of `1 − η`.
fn ad_correction(theta: f64, outcome: usize) -> ComplexMatrix {
    match outcome {
        0 if (4.0 * theta).cos() < 0.0 => pauli::z(),
        0 => ComplexMatrix::identity(2),
        _ => pauli::x(),
    }
}

/// Kraus operators of the corrected circuit, read off the joint unitary.
fn ad_circuit_kraus(theta: f64) -> Vec<ComplexMatrix> {
    let u = branch_unitary(theta);
    (0..2)
        .map(|m| {
            // ⟨m|_B U |H⟩_B
            let mut k = ComplexMatrix::zeros(2);
            for a in 0..2 {
                for a2 in 0..2 {
                    k[(a, a2)] = u[(2 * a + m, 2 * a2)];
                }
            }
            &ad_correction(theta, m) * &k
        })
        .collect()
}

/// Channel induced on `A` by one branch of the circuit.
pub fn simulate_branch(cfg: &CircuitConfig) -> Result<KrausChannel> {
    let ad = KrausChannel::new(ad_circuit_kraus(cfg.theta))?;
    match cfg.branch {
        Branch::Ad => Ok(ad),
        Branch::Iad => ad.conjugated_by(&pauli::x()),
    }
}

/// Runs one branch on an input state by evolving the joint density matrix.
pub fn run_branch(rho_a: &DensityMatrix, cfg: &CircuitConfig) -> Result<DensityMatrix> {
    if rho_a.dim() != 2 {
        return Err(Error::WrongDim {
            expected: 2,
            got: rho_a.dim(),
        });
    }
    let flip = pauli::x();
    let input = match cfg.branch {
        Branch::Ad => rho_a.clone(),
        Branch::Iad => DensityMatrix::new(flip.sandwich(rho_a.matrix()))?,
    };
    let joint = TwoQubitState::product(&input, &crate::qmat::states::h())?.evolve(&branch_unitary(cfg.theta))?;
    let mut out = ComplexMatrix::zeros(2);
    for m in 0..2 {
        let conditioned = joint.condition_on_ancilla(m);
        out = &out + &ad_correction(cfg.theta, m).sandwich(&conditioned);
    }
    if cfg.branch == Branch::Iad {
        out = flip.sandwich(&out);
    }
    DensityMatrix::new(out.hermitian_part())
}

/// `p·AD + (1 − p)·IAD`, both built from the circuit at plate angle `theta`.
pub fn gad_from_circuit(theta: f64, bath: &BathParams) -> Result<KrausChannel> {
    let p = bath.p_excited;
    let ad = CircuitConfig::new(theta, Branch::Ad, p)?;
    let iad = CircuitConfig::new(theta, Branch::Iad, 1.0 - p)?;
    KrausChannel::mixture(ad.p_mix, &simulate_branch(&ad)?, &simulate_branch(&iad)?)
}

/// Damping read back from a channel: `Φ(|1⟩⟨1|)₀₀ + Φ(|0⟩⟨0|)₁₁`.
pub fn eta_from_process(ch: &KrausChannel) -> Result<f64> {
    if ch.dim() != 2 {
        return Err(Error::WrongDim {
            expected: 2,
            got: ch.dim(),
        });
    }
    let up = ch.apply_operator(&ComplexMatrix::unit(2, 1, 1))[(0, 0)].re;
    let down = ch.apply_operator(&ComplexMatrix::unit(2, 0, 0))[(1, 1)].re;
    Ok(up + down)
}

/// Counts for the `+1` and `−1` outcomes of `σx`, `σy`, `σz`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TomographyCounts {
    pub plus: [u64; 3],
    pub minus: [u64; 3],
    pub shots_per_basis: u64,
}

impl TomographyCounts {
    /// Linear-inversion estimate `(n⁺ − n⁻)/N` per basis.
    pub fn raw_bloch(&self) -> [f64; 3] {
        let n = self.shots_per_basis as f64;
        std::array::from_fn(|i| (self.plus[i] as f64 - self.minus[i] as f64) / n)
    }
}

/// Full tomography result for one state.
#[derive(Debug, Clone)]
pub struct TomographyRecord {
    pub counts: TomographyCounts,
    pub reconstructed: DensityMatrix,
    /// One-standard-deviation uncertainty of each Bloch component.
    pub bloch_sigma: [f64; 3],
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn draw_counts(probs_plus: [f64; 3], shots: u64, rng: &mut ChaCha8Rng) -> TomographyCounts {
    let mut plus = [0u64; 3];
    for (slot, &p) in plus.iter_mut().zip(&probs_plus) {
        let p = p.clamp(0.0, 1.0);
        *slot = Binomial::new(shots, p).expect("probability in [0, 1]").sample(rng);
    }
    TomographyCounts {
        plus,
        minus: plus.map(|n| shots - n),
        shots_per_basis: shots,
    }
}

fn plus_probabilities(b: [f64; 3]) -> [f64; 3] {
    b.map(|r| 0.5 * (1.0 + r))
}

/// Samples `shots` outcomes in each Pauli basis. Stream 0 of `seed` is used.
pub fn simulate_counts(rho: &DensityMatrix, shots: u64, seed: u64) -> Result<TomographyCounts> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let b = rho_to_bloch(rho)?;
    Ok(draw_counts(
        plus_probabilities(b.as_array()),
        shots,
        &mut stream_rng(seed, 0),
    ))
}

/// Linear inversion, projected radially onto the Bloch ball when `|r| > 1`.
pub fn reconstruct_bloch(counts: &TomographyCounts) -> BlochVector {
    let r = counts.raw_bloch();
    let n = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
    let s = if n > 1.0 { 1.0 / n } else { 1.0 };
    BlochVector {
        x: r[0] * s,
        y: r[1] * s,
        z: r[2] * s,
    }
}

pub fn reconstruct_state(counts: &TomographyCounts) -> DensityMatrix {
    bloch_to_rho(reconstruct_bloch(counts)).expect("projected vector lies in the ball")
}

/// Standard deviations over parametric-bootstrap resamples.
#[derive(Debug, Clone, PartialEq)]
pub struct McErrors {
    pub bloch_sigma: [f64; 3],
    /// One entry per value returned by the derived-quantity closure.
    pub quantity_sigma: Vec<f64>,
}

fn sample_std(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    var.sqrt()
}

/// Redraws `resamples` count tables from the reconstructed outcome
/// probabilities, reconstructs each, and evaluates `derived` on every
/// resampled state. Resample `k` uses stream `k + 1` of `seed`.
pub fn monte_carlo_errors<F>(counts: &TomographyCounts, resamples: usize, seed: u64, derived: F) -> Result<McErrors>
where
    F: Fn(&DensityMatrix) -> Result<Vec<f64>>,
{
    if resamples < 2 {
        return Err(Error::TooFewResamples(resamples));
    }
    let probs = plus_probabilities(reconstruct_bloch(counts).as_array());
    let mut bloch: [Vec<f64>; 3] = Default::default();
    let mut quantities: Vec<Vec<f64>> = Vec::new();
    for k in 0..resamples {
        let redraw = draw_counts(probs, counts.shots_per_basis, &mut stream_rng(seed, k as u64 + 1));
        let b = reconstruct_bloch(&redraw);
        for (axis, v) in bloch.iter_mut().zip(b.as_array()) {
            axis.push(v);
        }
        let values = derived(&bloch_to_rho(b)?)?;
        if quantities.is_empty() {
            quantities = vec![Vec::with_capacity(resamples); values.len()];
        }
        for (q, v) in quantities.iter_mut().zip(values) {
            q.push(v);
        }
    }
    Ok(McErrors {
        bloch_sigma: std::array::from_fn(|i| sample_std(&bloch[i])),
        quantity_sigma: quantities.iter().map(|q| sample_std(q)).collect(),
    })
}

/// Counts, reconstruction and Bloch-vector error bars in one call.
pub fn tomograph(rho: &DensityMatrix, shots: u64, resamples: usize, seed: u64) -> Result<TomographyRecord> {
    let counts = simulate_counts(rho, shots, seed)?;
    let errors = monte_carlo_errors(&counts, resamples, seed, |_| Ok(Vec::new()))?;
    Ok(TomographyRecord {
        counts,
        reconstructed: reconstruct_state(&counts),
        bloch_sigma: errors.bloch_sigma,
    })
}
