//! Kraus channels and the generalized amplitude damping family.
//!
//! Conventions: `|0⟩` is the excited level (energy 1), `|1⟩` the ground level,
//! `k_B = ħ = ω = 1`. A bath at temperature `T` has occupation
//! `N̄ = 1/(e^{1/T} − 1)`, equilibrium excited population
//! `p = N̄/(2N̄ + 1) = 1/(e^{1/T} + 1)` and relaxation rate `2N̄ + 1`, so that
//! `η_t = 1 − e^{−(2N̄+1)t}`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qmat::{pauli, ComplexMatrix, DensityMatrix};

/// Completeness residual accepted for a Kraus set.
pub const COMPLETENESS_TOL: f64 = 1e-10;
/// Two channels are the same map when their Choi matrices agree to this.
pub const CHOI_EQ_TOL: f64 = 1e-10;

/// Thermal bath seen by the qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathParams {
    pub temperature: f64,
    /// Mean boson occupation `N̄`.
    pub nbar: f64,
    /// Equilibrium population of the excited level `|0⟩`.
    pub p_excited: f64,
    /// Relaxation rate `2N̄ + 1`.
    pub rate: f64,
}

pub fn bath_from_temperature(temperature: f64) -> Result<BathParams> {
    if !temperature.is_finite() || temperature <= 0.0 {
        return Err(Error::NonPositiveTemperature(temperature));
    }
    let beta = 1.0 / temperature;
    // exp_m1 keeps N̄ accurate at high temperature; both forms go to 0 as T -> 0.
    let nbar = 1.0 / beta.exp_m1();
    let p_excited = 1.0 / (beta.exp() + 1.0);
    Ok(BathParams {
        temperature,
        nbar,
        p_excited,
        rate: 2.0 * nbar + 1.0,
    })
}

impl BathParams {
    /// `ρ_eq = p|0⟩⟨0| + (1 − p)|1⟩⟨1|`, the Gibbs state of [`hamiltonian`].
    pub fn equilibrium(&self) -> DensityMatrix {
        DensityMatrix::diagonal(&[self.p_excited, 1.0 - self.p_excited]).expect("populations are a probability vector")
    }

    /// Damping reached after dimensionless time `t`; `t = ∞` gives `η = 1`.
    pub fn eta_at(&self, time: f64) -> f64 {
        if time.is_infinite() {
            1.0
        } else {
            -(-self.rate * time).exp_m1()
        }
    }

    /// Inverse of [`eta_at`](Self::eta_at); `η = 1` maps to `+∞`.
    pub fn time_for_eta(&self, eta: f64) -> f64 {
        if eta >= 1.0 {
            f64::INFINITY
        } else {
            -(-eta).ln_1p() / self.rate
        }
    }
}

/// System Hamiltonian `H = |0⟩⟨0|`.
pub fn hamiltonian() -> ComplexMatrix {
    ComplexMatrix::from_real_diag(&[1.0, 0.0])
}

/// A point on the thermalization schedule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DampingSchedule {
    pub eta: f64,
    pub time: f64,
}

impl DampingSchedule {
    pub fn from_time(bath: &BathParams, time: f64) -> Result<Self> {
        if time.is_nan() || time < 0.0 {
            return Err(Error::BadTimeOrder(0.0, time));
        }
        Ok(Self {
            eta: bath.eta_at(time),
            time,
        })
    }

    pub fn from_eta(bath: &BathParams, eta: f64) -> Result<Self> {
        check_eta(eta)?;
        Ok(Self {
            eta,
            time: bath.time_for_eta(eta),
        })
    }
}

fn check_eta(eta: f64) -> Result<()> {
    if (0.0..=1.0).contains(&eta) {
        Ok(())
    } else {
        Err(Error::EtaOutOfRange(eta))
    }
}

/// Ordered Kraus representation of a CPTP map.
#[derive(Debug, Clone)]
pub struct KrausChannel {
    dim: usize,
    ops: Vec<ComplexMatrix>,
}

impl KrausChannel {
    /// Validates completeness `Σ E†E = I`.
    pub fn new(ops: Vec<ComplexMatrix>) -> Result<Self> {
        let dim = ops
            .first()
            .map(ComplexMatrix::dim)
            .ok_or_else(|| Error::InvalidMatrix("empty Kraus set".into()))?;
        if let Some(bad) = ops.iter().find(|k| k.dim() != dim) {
            return Err(Error::DimMismatch(dim, bad.dim()));
        }
        let ch = Self { dim, ops };
        let residual = ch.completeness_residual();
        if residual > COMPLETENESS_TOL {
            return Err(Error::NotTracePreserving(residual));
        }
        Ok(ch)
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            ops: vec![ComplexMatrix::identity(dim)],
        }
    }

    /// Conjugation by a unitary.
    pub fn unitary(u: ComplexMatrix) -> Result<Self> {
        Self::new(vec![u])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kraus_ops(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    /// `‖Σ E†E − I‖_max`.
    pub fn completeness_residual(&self) -> f64 {
        let mut acc = ComplexMatrix::zeros(self.dim);
        for k in &self.ops {
            acc = &acc + &(&k.dagger() * k);
        }
        acc.max_abs_diff(&ComplexMatrix::identity(self.dim))
    }

    /// `Σ E X E†` for an arbitrary operator `X`.
    pub fn apply_operator(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let mut acc = ComplexMatrix::zeros(self.dim);
        for k in &self.ops {
            acc = &acc + &k.sandwich(x);
        }
        acc
    }

    /// `Σ_ij |i⟩⟨j| ⊗ Φ(|i⟩⟨j|)`.
    pub fn choi(&self) -> ComplexMatrix {
        let d = self.dim;
        let mut out = ComplexMatrix::zeros(d * d);
        for i in 0..d {
            for j in 0..d {
                let block = ComplexMatrix::unit(d, i, j).kron(&self.apply_operator(&ComplexMatrix::unit(d, i, j)));
                out = &out + &block;
            }
        }
        out
    }

    /// Max-norm distance between Choi matrices.
    pub fn choi_distance(&self, other: &Self) -> Result<f64> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch(self.dim, other.dim));
        }
        Ok(self.choi().max_abs_diff(&other.choi()))
    }

    pub fn same_map(&self, other: &Self) -> bool {
        matches!(self.choi_distance(other), Ok(d) if d < CHOI_EQ_TOL)
    }

    /// The map `ρ ↦ w·A(ρ) + (1 − w)·B(ρ)`.
    pub fn mixture(weight: f64, a: &Self, b: &Self) -> Result<Self> {
        if !(0.0..=1.0).contains(&weight) {
            return Err(Error::LambdaOutOfRange(weight));
        }
        if a.dim != b.dim {
            return Err(Error::DimMismatch(a.dim, b.dim));
        }
        let (wa, wb) = (weight.sqrt(), (1.0 - weight).sqrt());
        let ops = a
            .ops
            .iter()
            .map(|k| k.scale(wa))
            .chain(b.ops.iter().map(|k| k.scale(wb)))
            .collect();
        Self::new(ops)
    }

    /// Conjugates every Kraus operator, `E ↦ U E U†`.
    pub fn conjugated_by(&self, u: &ComplexMatrix) -> Result<Self> {
        Self::new(self.ops.iter().map(|k| u.sandwich(k)).collect())
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// The four-operator GAD channel with weights `√p` (E₁, E₂) and `√(1−p)` (E₃, E₄).
pub fn gad_channel(bath: &BathParams, eta: f64) -> Result<KrausChannel> {
    check_eta(eta)?;
    let p = bath.p_excited;
    let (sp, sq) = (p.sqrt(), (1.0 - p).sqrt());
    let (keep, jump) = ((1.0 - eta).sqrt(), eta.sqrt());
    let zero = c(0.0);
    let e1 = ComplexMatrix::from_rows([[c(sp), zero], [zero, c(sp * keep)]]);
    let e2 = ComplexMatrix::from_rows([[zero, c(sp * jump)], [zero, zero]]);
    let e3 = ComplexMatrix::from_rows([[c(sq * keep), zero], [zero, c(sq)]]);
    let e4 = ComplexMatrix::from_rows([[zero, zero], [c(sq * jump), zero]]);
    KrausChannel::new(vec![e1, e2, e3, e4])
}

/// Amplitude damping towards `|0⟩`.
pub fn ad_channel(eta: f64) -> Result<KrausChannel> {
    check_eta(eta)?;
    let zero = c(0.0);
    let k0 = ComplexMatrix::from_rows([[c(1.0), zero], [zero, c((1.0 - eta).sqrt())]]);
    let k1 = ComplexMatrix::from_rows([[zero, c(eta.sqrt())], [zero, zero]]);
    KrausChannel::new(vec![k0, k1])
}

/// Inverse amplitude damping towards `|1⟩`; the Pauli-X mirror of [`ad_channel`].
pub fn iad_channel(eta: f64) -> Result<KrausChannel> {
    check_eta(eta)?;
    let zero = c(0.0);
    let k0 = ComplexMatrix::from_rows([[c((1.0 - eta).sqrt()), zero], [zero, c(1.0)]]);
    let k1 = ComplexMatrix::from_rows([[zero, zero], [c(eta.sqrt()), zero]]);
    KrausChannel::new(vec![k0, k1])
}

/// `ρ ↦ Σ E ρ E†`.
pub fn apply(ch: &KrausChannel, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if ch.dim() != rho.dim() {
        return Err(Error::DimMismatch(ch.dim(), rho.dim()));
    }
    DensityMatrix::new(ch.apply_operator(rho.matrix()).hermitian_part())
}

/// `a ∘ b`: apply `b` first, then `a`. Kraus set `{A_i B_j}`.
pub fn compose(a: &KrausChannel, b: &KrausChannel) -> Result<KrausChannel> {
    if a.dim() != b.dim() {
        return Err(Error::DimMismatch(a.dim(), b.dim()));
    }
    let ops = a
        .kraus_ops()
        .iter()
        .flat_map(|ai| b.kraus_ops().iter().map(move |bj| ai * bj))
        .collect();
    KrausChannel::new(ops)
}

pub fn choi(ch: &KrausChannel) -> ComplexMatrix {
    ch.choi()
}

/// `(1 − λ)ρ₀ + λρ_eq`.
pub fn mixing_map(rho0: &DensityMatrix, rho_eq: &DensityMatrix, lambda: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::LambdaOutOfRange(lambda));
    }
    if rho0.dim() != rho_eq.dim() {
        return Err(Error::DimMismatch(rho0.dim(), rho_eq.dim()));
    }
    DensityMatrix::new(&rho0.matrix().scale(1.0 - lambda) + &rho_eq.matrix().scale(lambda))
}

/// Pauli-X, used to mirror AD into IAD.
pub fn bit_flip() -> ComplexMatrix {
    pauli::x()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::{bloch_to_rho, rho_to_bloch, states, BlochVector};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    // Scalar oracle, kept apart from the `exp_m1` evaluation above.
    fn oracle_bath(t: f64) -> (f64, f64) {
        let e = (1.0 / t).exp();
        (1.0 / (e - 1.0), 1.0 / (e + 1.0))
    }

    #[test]
    fn bath_examples() {
        let b = bath_from_temperature(0.34).unwrap();
        let (nbar, p) = oracle_bath(0.34);
        assert_abs_diff_eq!(b.nbar, nbar, epsilon = 1e-12);
        assert_abs_diff_eq!(b.p_excited, p, epsilon = 1e-12);
        assert_abs_diff_eq!(b.nbar, 0.05575, epsilon = 1e-5);
        assert_abs_diff_eq!(b.p_excited, 0.05016, epsilon = 1e-5);

        let coth = 1.0 / (1.0f64 / (2.0 * 0.34)).tanh();
        assert_abs_diff_eq!(b.nbar, (coth - 1.0) / 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(b.p_excited, b.nbar / (2.0 * b.nbar + 1.0), epsilon = 1e-12);
        assert_abs_diff_eq!(b.rate, 2.0 * b.nbar + 1.0);

        let b1 = bath_from_temperature(1.0).unwrap();
        assert_abs_diff_eq!(b1.nbar, 0.5820, epsilon = 1e-4);
        assert_abs_diff_eq!(b1.p_excited, 0.2689, epsilon = 1e-4);

        let cold = bath_from_temperature(1e-3).unwrap();
        assert!(cold.nbar < 1e-300 && cold.p_excited < 1e-300);
    }

    #[test]
    fn bath_rejects_bad_temperature() {
        for t in [0.0, -1.0, f64::NAN] {
            assert!(matches!(
                bath_from_temperature(t),
                Err(Error::NonPositiveTemperature(_))
            ));
        }
    }

    #[test]
    fn schedule_round_trip() {
        let b = bath_from_temperature(0.7).unwrap();
        let s = DampingSchedule::from_time(&b, 1.3).unwrap();
        assert_abs_diff_eq!(s.eta, 1.0 - (-b.rate * 1.3).exp(), epsilon = 1e-12);
        assert_abs_diff_eq!(b.time_for_eta(s.eta), 1.3, epsilon = 1e-12);
        assert_eq!(b.eta_at(f64::INFINITY), 1.0);
        assert!(b.time_for_eta(1.0).is_infinite());
    }

    #[test]
    fn gad_identity_and_full_damping() {
        let b = bath_from_temperature(0.34).unwrap();
        let g0 = gad_channel(&b, 0.0).unwrap();
        assert!(g0.same_map(&KrausChannel::identity(2)));
        assert!(g0.kraus_ops()[1].max_abs() == 0.0 && g0.kraus_ops()[3].max_abs() == 0.0);

        let g1 = gad_channel(&b, 1.0).unwrap();
        for rho in [states::h(), states::v(), states::d()] {
            let out = apply(&g1, &rho).unwrap();
            assert!(out.matrix().max_abs_diff(b.equilibrium().matrix()) < 1e-15);
        }
        assert!(matches!(gad_channel(&b, 1.5), Err(Error::EtaOutOfRange(_))));
    }

    #[test]
    fn gad_on_diagonal_state() {
        let b = bath_from_temperature(0.34).unwrap();
        let out = apply(&gad_channel(&b, 0.5).unwrap(), &states::d()).unwrap();
        let r = rho_to_bloch(&out).unwrap();
        // x' = √(1−η)·x, z' = (1−η)z + η(2p − 1)
        assert_abs_diff_eq!(r.x, 0.5f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(r.y, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.z, 0.5 * (2.0 * b.p_excited - 1.0), epsilon = 1e-12);
        assert_abs_diff_eq!(r.x, std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-12);
        assert_abs_diff_eq!(r.z, -0.4498, epsilon = 1e-4);
    }

    #[test]
    fn ad_and_iad_extremes() {
        let ad = ad_channel(1.0).unwrap();
        let iad = iad_channel(1.0).unwrap();
        for rho in [states::h(), states::v(), states::d()] {
            assert!(apply(&ad, &rho).unwrap().matrix().max_abs_diff(states::h().matrix()) < 1e-15);
            assert!(apply(&iad, &rho).unwrap().matrix().max_abs_diff(states::v().matrix()) < 1e-15);
        }
        let mirrored = ad_channel(0.37).unwrap().conjugated_by(&bit_flip()).unwrap();
        assert!(mirrored.same_map(&iad_channel(0.37).unwrap()));
        assert!(matches!(ad_channel(-0.1), Err(Error::EtaOutOfRange(_))));
    }

    #[test]
    fn ad_iad_mixture_is_gad() {
        for t in [0.2, 0.34, 1.0, 4.0] {
            let b = bath_from_temperature(t).unwrap();
            for eta in [0.0, 0.3, 0.5, 0.99, 1.0] {
                let mix =
                    KrausChannel::mixture(b.p_excited, &ad_channel(eta).unwrap(), &iad_channel(eta).unwrap()).unwrap();
                let d = mix.choi_distance(&gad_channel(&b, eta).unwrap()).unwrap();
                assert!(d < 1e-12, "T={t} eta={eta} d={d}");
            }
        }
    }

    #[test]
    fn mixture_by_averaging_outputs() {
        // Independent route: average the outputs on a basis of operators.
        let b = bath_from_temperature(0.34).unwrap();
        let (ad, iad, gad) = (
            ad_channel(0.6).unwrap(),
            iad_channel(0.6).unwrap(),
            gad_channel(&b, 0.6).unwrap(),
        );
        let p = b.p_excited;
        for i in 0..2 {
            for j in 0..2 {
                let e = ComplexMatrix::unit(2, i, j);
                let avg = &ad.apply_operator(&e).scale(p) + &iad.apply_operator(&e).scale(1.0 - p);
                assert!(avg.max_abs_diff(&gad.apply_operator(&e)) < 1e-12);
            }
        }
    }

    #[test]
    fn compose_examples() {
        let b = bath_from_temperature(0.8).unwrap();
        let g = gad_channel(&b, 0.4).unwrap();
        assert!(compose(&KrausChannel::identity(2), &g).unwrap().same_map(&g));

        let last = compose(&iad_channel(1.0).unwrap(), &ad_channel(1.0).unwrap()).unwrap();
        for rho in [states::h(), states::d()] {
            assert!(apply(&last, &rho).unwrap().matrix().max_abs_diff(states::v().matrix()) < 1e-15);
        }
        assert!(matches!(
            compose(&g, &KrausChannel::identity(4)),
            Err(Error::DimMismatch(2, 4))
        ));
    }

    #[test]
    fn choi_examples() {
        let id = choi(&KrausChannel::identity(2));
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let bell = ComplexMatrix::outer(&[c(s), c(0.0), c(0.0), c(s)]);
        assert!(id.max_abs_diff(&bell.scale(2.0)) < 1e-15);

        // Full decay: |i><j| ↦ δ_ij |0><0|, so only entries (0,0) and (2,2) survive.
        let ad = choi(&ad_channel(1.0).unwrap());
        let mut expected = ComplexMatrix::zeros(4);
        expected[(0, 0)] = c(1.0);
        expected[(2, 2)] = c(1.0);
        assert!(ad.max_abs_diff(&expected) < 1e-15);

        for t in [0.1, 0.34, 2.0] {
            let b = bath_from_temperature(t).unwrap();
            for k in 0..=10 {
                let tr = choi(&gad_channel(&b, k as f64 / 10.0).unwrap()).trace();
                assert_abs_diff_eq!(tr.re, 2.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn mixing_map_examples() {
        let b = bath_from_temperature(0.34).unwrap();
        let eq = b.equilibrium();
        let d = states::d();
        assert_eq!(mixing_map(&d, &eq, 0.0).unwrap().matrix(), d.matrix());
        assert!(mixing_map(&d, &eq, 1.0).unwrap().matrix().max_abs_diff(eq.matrix()) < 1e-15);
        assert!(matches!(mixing_map(&d, &eq, 1.1), Err(Error::LambdaOutOfRange(_))));

        let v = states::v();
        let via_mix = mixing_map(&v, &eq, 0.5).unwrap();
        let via_gad = apply(&gad_channel(&b, 0.5).unwrap(), &v).unwrap();
        assert!(via_mix.matrix().max_abs_diff(via_gad.matrix()) < 1e-12);
    }

    #[test]
    fn incomplete_kraus_set_rejected() {
        let half = ComplexMatrix::identity(2).scale(0.5);
        assert!(matches!(
            KrausChannel::new(vec![half]),
            Err(Error::NotTracePreserving(_))
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn gad_is_cptp_with_fixed_point(t in 0.05f64..10.0, eta in 0.0f64..=1.0) {
            let b = bath_from_temperature(t).unwrap();
            let g = gad_channel(&b, eta).unwrap();
            prop_assert!(g.completeness_residual() < 1e-10);
            let eq = b.equilibrium();
            prop_assert!(apply(&g, &eq).unwrap().matrix().max_abs_diff(eq.matrix()) < 1e-12);
        }

        #[test]
        fn outputs_are_states(t in 0.05f64..10.0, eta in 0.0f64..=1.0,
                              x in -1.0f64..1.0, y in -1.0f64..1.0, z in -1.0f64..1.0) {
            let n = (x * x + y * y + z * z).sqrt().max(1.0);
            let rho = bloch_to_rho(BlochVector::new(x / n, y / n, z / n).unwrap()).unwrap();
            let out = apply(&gad_channel(&bath_from_temperature(t).unwrap(), eta).unwrap(), &rho).unwrap();
            prop_assert!((out.matrix().trace().re - 1.0).abs() < 1e-12);
            prop_assert!(out.eigen().min_eigenvalue() >= -1e-12);
        }

        #[test]
        fn gad_semigroup(t in 0.05f64..5.0, e1 in 0.0f64..=1.0, e2 in 0.0f64..=1.0) {
            let b = bath_from_temperature(t).unwrap();
            let lhs = compose(&gad_channel(&b, e1).unwrap(), &gad_channel(&b, e2).unwrap()).unwrap();
            let rhs = gad_channel(&b, 1.0 - (1.0 - e1) * (1.0 - e2)).unwrap();
            prop_assert!(lhs.choi_distance(&rhs).unwrap() < 1e-10);
        }
    }
}
