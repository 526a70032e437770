//! Geodesic lengths for the Bures (quantum Fisher) and Wigner–Yanase metrics,
//! and the geometric bounds on irreversible entropy production they induce.
//!
//! For either metric `X`, `S(ρ‖σ) ≥ (8/π²) L_X²(ρ, σ)`. Applied to
//! `(ρ_t, ρ_eq)` this caps the entropy produced up to time `t`; applied to
//! `(ρ₀, ρ_t)` it lower-bounds it, provided the dynamics satisfies the reverse
//! triangle inequality checked by [`triangle_slack`].

use std::f64::consts::PI;

use crate::channels::{mixing_map, BathParams, KrausChannel};
use crate::error::{Error, Result};
use crate::qmat::{herm_eigen, mat_sqrt, ComplexMatrix, DensityMatrix};
use crate::thermo::{delta_s_irr_relent, relative_entropy};

/// `8/π²`, i.e. `2 / L²(e₁₁, e₂₂)` for both metrics.
pub const GEOMETRIC_PREFACTOR: f64 = 8.0 / (PI * PI);
/// Overlaps may stray this far outside `[0, 1]` before being rejected.
pub const OVERLAP_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MetricKind {
    /// Bures / quantum Fisher information.
    QuantumFisher,
    WignerYanase,
}

impl MetricKind {
    pub const ALL: [MetricKind; 2] = [MetricKind::QuantumFisher, MetricKind::WignerYanase];

    pub fn tag(&self) -> &'static str {
        match self {
            MetricKind::QuantumFisher => "qf",
            MetricKind::WignerYanase => "wy",
        }
    }
}

/// A value computed for each metric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerMetric {
    pub qf: f64,
    pub wy: f64,
}

impl PerMetric {
    pub fn try_from_fn<F: FnMut(MetricKind) -> Result<f64>>(mut f: F) -> Result<Self> {
        Ok(Self {
            qf: f(MetricKind::QuantumFisher)?,
            wy: f(MetricKind::WignerYanase)?,
        })
    }

    pub fn get(&self, kind: MetricKind) -> f64 {
        match kind {
            MetricKind::QuantumFisher => self.qf,
            MetricKind::WignerYanase => self.wy,
        }
    }
}

/// Per-metric bound together with the tightest of the two.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bound {
    pub per_metric: PerMetric,
    pub tightest: f64,
}

/// Uhlmann fidelity `Tr √(√ρ σ √ρ)` from the spectrum of `√ρ σ √ρ`.
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    check_dims(rho, sigma)?;
    let s = mat_sqrt(rho)?;
    let inner = (&(&s * sigma.matrix()) * &s).hermitian_part();
    let eig = herm_eigen(&inner)?;
    Ok(eig.eigenvalues.iter().map(|&l| l.max(0.0).sqrt()).sum())
}

/// Affinity `Tr √ρ √σ`.
pub fn affinity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    check_dims(rho, sigma)?;
    Ok((&mat_sqrt(rho)? * &mat_sqrt(sigma)?).trace().re)
}

fn check_dims(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<()> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimMismatch(rho.dim(), sigma.dim()));
    }
    Ok(())
}

fn check_overlap(overlap: f64) -> Result<()> {
    if !(-OVERLAP_TOL..=1.0 + OVERLAP_TOL).contains(&overlap) {
        return Err(Error::ClampViolation(overlap));
    }
    Ok(())
}

fn clamped_arccos(overlap: f64) -> Result<f64> {
    check_overlap(overlap)?;
    Ok(overlap.clamp(0.0, 1.0).acos())
}

fn qubit_det(m: &ComplexMatrix) -> f64 {
    (m[(0, 0)].re * m[(1, 1)].re - m[(0, 1)].norm_sqr()).max(0.0)
}

fn frobenius_sq(m: &ComplexMatrix) -> f64 {
    m.entries().iter().map(|z| z.norm_sqr()).sum()
}

/// Bures angle. For qubits both `F² = Tr ρσ + 2√(det ρ det σ)` and
/// `1 − F² = ½‖ρ − σ‖² + (√det ρ − √det σ)²` are free of cancellation, so
/// the angle stays accurate near 0 and near π/2.
fn bures_angle(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 2 {
        return clamped_arccos(fidelity(rho, sigma)?);
    }
    let (a, b) = (rho.matrix(), sigma.matrix());
    let (da, db) = (qubit_det(a), qubit_det(b));
    let overlap = (a * b).trace().re;
    let f_sq = (overlap + 2.0 * (da * db).sqrt()).max(0.0);
    check_overlap(f_sq.sqrt())?;
    let gap = 0.5 * frobenius_sq(&(a - b)) + (da.sqrt() - db.sqrt()).powi(2);
    Ok(gap.sqrt().atan2(f_sq.sqrt()))
}

/// Wigner–Yanase angle via `1 − Tr √ρ√σ = ½‖√ρ − √σ‖²`.
fn wigner_yanase_angle(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    let d_sq = frobenius_sq(&(&mat_sqrt(rho)? - &mat_sqrt(sigma)?));
    check_overlap(1.0 - 0.5 * d_sq)?;
    let half_chord = (0.5 * d_sq.sqrt()).min(std::f64::consts::FRAC_1_SQRT_2);
    Ok(2.0 * half_chord.asin())
}

/// Geodesic length in `[0, π/2]`.
pub fn geodesic_length(kind: MetricKind, rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    check_dims(rho, sigma)?;
    match kind {
        MetricKind::QuantumFisher => bures_angle(rho, sigma),
        MetricKind::WignerYanase => wigner_yanase_angle(rho, sigma),
    }
}

/// `(8/π²) L_X²(ρ, σ)`, a lower bound on `S(ρ‖σ)`.
pub fn relent_geometric_lower(kind: MetricKind, rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    let l = geodesic_length(kind, rho, sigma)?;
    Ok(GEOMETRIC_PREFACTOR * l * l)
}

/// `S(ρ₀‖ρ_eq) − (8/π²) L_X²(ρ_t, ρ_eq)`; the tightest value is the minimum.
pub fn upper_bound(rho0: &DensityMatrix, rho_t: &DensityMatrix, rho_eq: &DensityMatrix) -> Result<Bound> {
    let min = rho_eq.eigen().min_eigenvalue();
    if min <= crate::thermo::SUPPORT_TOL {
        return Err(Error::SingularEquilibrium(min));
    }
    let initial = relative_entropy(rho0, rho_eq)?.finite()?;
    let per_metric = PerMetric::try_from_fn(|k| Ok(initial - relent_geometric_lower(k, rho_t, rho_eq)?))?;
    Ok(Bound {
        tightest: per_metric.qf.min(per_metric.wy),
        per_metric,
    })
}

/// `(8/π²) L_X²(ρ₀, ρ_t)`; the tightest value is the maximum.
pub fn lower_bound(rho0: &DensityMatrix, rho_t: &DensityMatrix) -> Result<Bound> {
    let per_metric = PerMetric::try_from_fn(|k| relent_geometric_lower(k, rho0, rho_t))?;
    Ok(Bound {
        tightest: per_metric.qf.max(per_metric.wy),
        per_metric,
    })
}

/// Everything plotted for one point of a trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundsReport {
    pub time: f64,
    pub eta: f64,
    pub ds_irr: f64,
    pub upper: PerMetric,
    pub lower: PerMetric,
    /// `S(ρ_t‖ρ_eq)`.
    pub rel_ent_to_eq: f64,
    /// `L_X(ρ_t, ρ_eq)`.
    pub l_to_eq: PerMetric,
    /// `L_X(ρ₀, ρ_t)`.
    pub l_from_init: PerMetric,
}

impl BoundsReport {
    /// Evaluates every quantity for a known `ρ_t`.
    pub fn evaluate(
        time: f64,
        eta: f64,
        rho0: &DensityMatrix,
        rho_t: &DensityMatrix,
        rho_eq: &DensityMatrix,
    ) -> Result<Self> {
        let ds_irr = delta_s_irr_relent(rho0, rho_t, rho_eq)?;
        let upper = upper_bound(rho0, rho_t, rho_eq)?.per_metric;
        let lower = lower_bound(rho0, rho_t)?.per_metric;
        Ok(Self {
            time,
            eta,
            ds_irr,
            upper,
            lower,
            rel_ent_to_eq: relative_entropy(rho_t, rho_eq)?.finite()?,
            l_to_eq: PerMetric::try_from_fn(|k| geodesic_length(k, rho_t, rho_eq))?,
            l_from_init: PerMetric::try_from_fn(|k| geodesic_length(k, rho0, rho_t))?,
        })
    }

    /// Evaluates the noise-free GAD trajectory from `rho0` at damping `eta`.
    pub fn on_gad_trajectory(bath: &BathParams, rho0: &DensityMatrix, eta: f64) -> Result<Self> {
        let rho_t = crate::channels::apply(&crate::channels::gad_channel(bath, eta)?, rho0)?;
        Self::evaluate(bath.time_for_eta(eta), eta, rho0, &rho_t, &bath.equilibrium())
    }

    /// `[lower, ds, upper]` slacks: `min_X (ds − lower_X)` and `min_X (upper_X − ds)`.
    pub fn sandwich_slack(&self) -> (f64, f64) {
        let below = (self.ds_irr - self.lower.qf).min(self.ds_irr - self.lower.wy);
        let above = (self.upper.qf - self.ds_irr).min(self.upper.wy - self.ds_irr);
        (below, above)
    }
}

/// `S(ρ₀‖Φ_{t₂}ρ₀) − S(ρ₀‖Φ_{t₁}ρ₀) − S(Φ_{t₁}ρ₀‖Φ_{t₂}ρ₀)`.
///
/// Non-negative slack means the reverse triangle inequality holds for this
/// pair of times. Infinite entropies propagate as `±∞`; a pair where two
/// infinities cancel is reported as `NaN`.
pub fn triangle_slack<F>(family: F, rho0: &DensityMatrix, t1: f64, t2: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<KrausChannel>,
{
    if !(t1 >= 0.0 && t1 <= t2) {
        return Err(Error::BadTimeOrder(t1, t2));
    }
    let rho1 = crate::channels::apply(&family(t1)?, rho0)?;
    let rho2 = crate::channels::apply(&family(t2)?, rho0)?;
    let whole = relative_entropy(rho0, &rho2)?.as_f64();
    let first = relative_entropy(rho0, &rho1)?.as_f64();
    let second = relative_entropy(&rho1, &rho2)?.as_f64();
    Ok(whole - first - second)
}

/// Minimum [`triangle_slack`] over every ordered pair `t1 ≤ t2` of `times`.
pub fn min_triangle_slack<F>(family: F, rho0: &DensityMatrix, times: &[f64]) -> Result<f64>
where
    F: Fn(f64) -> Result<KrausChannel>,
{
    let mut worst = f64::INFINITY;
    for (i, &t1) in times.iter().enumerate() {
        for &t2 in &times[i..] {
            worst = worst.min(triangle_slack(&family, rho0, t1, t2)?);
        }
    }
    Ok(worst)
}

/// `n` log-spaced times in `[lo, hi]`.
pub fn log_time_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// Default grid for triangle scans: 20 log-spaced points in `[10⁻², 10]`.
pub fn default_triangle_grid() -> Vec<f64> {
    log_time_grid(1e-2, 10.0, 20)
}

/// Outcome of [`mixing_triangle_proof_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixingSlacks {
    /// `(1 − λ₁/λ₂) S(ρ₀‖ρ₂) − S(ρ₁‖ρ₂)`.
    pub late_leg: f64,
    /// `(λ₁/λ₂) S(ρ₀‖ρ₂) − S(ρ₀‖ρ₁)`.
    pub early_leg: f64,
    /// `‖ρ₁ − [(1 − λ₁/λ₂)ρ₀ + (λ₁/λ₂)ρ₂]‖_max`.
    pub interpolation_residual: f64,
}

/// Checks the two convexity inequalities that together prove the reverse
/// triangle inequality for `Φ_λ(ρ₀) = (1 − λ)ρ₀ + λρ_eq`.
pub fn mixing_triangle_proof_check(
    rho0: &DensityMatrix,
    rho_eq: &DensityMatrix,
    lambda1: f64,
    lambda2: f64,
) -> Result<MixingSlacks> {
    if !(lambda1 > 0.0 && lambda1 <= lambda2 && lambda2 <= 1.0) {
        return Err(Error::BadLambdaOrder(lambda1, lambda2));
    }
    let rho1 = mixing_map(rho0, rho_eq, lambda1)?;
    let rho2 = mixing_map(rho0, rho_eq, lambda2)?;
    let ratio = lambda1 / lambda2;
    let interp = &rho0.matrix().scale(1.0 - ratio) + &rho2.matrix().scale(ratio);
    let interpolation_residual = rho1.matrix().max_abs_diff(&interp);

    let whole = relative_entropy(rho0, &rho2)?.as_f64();
    let early = relative_entropy(rho0, &rho1)?.as_f64();
    let late = relative_entropy(&rho1, &rho2)?.as_f64();
    let slack = |bound: f64, value: f64| if bound == value { 0.0 } else { bound - value };
    Ok(MixingSlacks {
        late_leg: slack((1.0 - ratio) * whole, late),
        early_leg: slack(ratio * whole, early),
        interpolation_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{apply, bath_from_temperature, gad_channel};
    use crate::qmat::{bloch_to_rho, states, BlochVector};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_2;

    const QF: MetricKind = MetricKind::QuantumFisher;
    const WY: MetricKind = MetricKind::WignerYanase;

    fn setup() -> (BathParams, DensityMatrix) {
        let b = bath_from_temperature(0.34).unwrap();
        let eq = b.equilibrium();
        (b, eq)
    }

    // Closed forms for a pure |ψ⟩ against diag(p, 1 − p).
    fn oracle_d(p: f64) -> (f64, f64) {
        let qf = (0.5f64).sqrt().acos();
        let wy = ((p.sqrt() + (1.0 - p).sqrt()) / 2.0).acos();
        (qf, wy)
    }

    #[test]
    fn zero_and_orthogonal_lengths() {
        for kind in MetricKind::ALL {
            for rho in [states::h(), states::d(), DensityMatrix::maximally_mixed(2)] {
                assert_abs_diff_eq!(geodesic_length(kind, &rho, &rho).unwrap(), 0.0, epsilon = 1e-12);
            }
            assert_abs_diff_eq!(
                geodesic_length(kind, &states::h(), &states::v()).unwrap(),
                FRAC_PI_2,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn lengths_from_d_to_equilibrium() {
        let (b, eq) = setup();
        let (qf, wy) = oracle_d(b.p_excited);
        let lqf = geodesic_length(QF, &states::d(), &eq).unwrap();
        let lwy = geodesic_length(WY, &states::d(), &eq).unwrap();
        assert_abs_diff_eq!(lqf, qf, epsilon = 1e-12);
        assert_abs_diff_eq!(lwy, wy, epsilon = 1e-12);
        assert_abs_diff_eq!(lqf, std::f64::consts::FRAC_PI_4, epsilon = 1e-12);
        assert_abs_diff_eq!(lwy, 0.92820, epsilon = 1e-5);
        assert!(lwy > lqf);
    }

    #[test]
    fn geometric_lower_examples() {
        let (b, eq) = setup();
        let d = states::d();
        for kind in MetricKind::ALL {
            assert_abs_diff_eq!(relent_geometric_lower(kind, &eq, &eq).unwrap(), 0.0, epsilon = 1e-12);
        }
        let (_, wy) = oracle_d(b.p_excited);
        let g = relent_geometric_lower(WY, &d, &eq).unwrap();
        assert_abs_diff_eq!(g, GEOMETRIC_PREFACTOR * wy * wy, epsilon = 1e-12);
        assert_abs_diff_eq!(g, 0.69835, epsilon = 1e-5);
        assert!(g <= relative_entropy(&d, &eq).unwrap().as_f64());

        let lv = (1.0 - b.p_excited).sqrt().acos();
        for kind in MetricKind::ALL {
            let g = relent_geometric_lower(kind, &states::v(), &eq).unwrap();
            assert_abs_diff_eq!(g, GEOMETRIC_PREFACTOR * lv * lv, epsilon = 1e-12);
            assert_abs_diff_eq!(g, 0.0413, epsilon = 1e-4);
            assert!(g <= 0.0515);
        }
    }

    #[test]
    fn upper_bound_endpoints() {
        let (b, eq) = setup();
        let d = states::d();
        let s0 = relative_entropy(&d, &eq).unwrap().as_f64();
        let at_start = upper_bound(&d, &d, &eq).unwrap();
        for kind in MetricKind::ALL {
            assert!(at_start.per_metric.get(kind) >= 0.0);
        }
        let rho_inf = apply(&gad_channel(&b, 1.0).unwrap(), &d).unwrap();
        let at_end = upper_bound(&d, &rho_inf, &eq).unwrap();
        assert_abs_diff_eq!(at_end.tightest, s0, epsilon = 1e-9);
        assert_abs_diff_eq!(delta_s_irr_relent(&d, &rho_inf, &eq).unwrap(), s0, epsilon = 1e-12);
    }

    #[test]
    fn wy_upper_bound_is_tighter_for_d() {
        let (b, _) = setup();
        for i in 0..20 {
            let eta = i as f64 / 19.0;
            let r = BoundsReport::on_gad_trajectory(&b, &states::d(), eta).unwrap();
            assert!(r.upper.wy <= r.upper.qf + 1e-12);
            assert!(r.lower.wy >= r.lower.qf - 1e-12);
        }
    }

    #[test]
    fn lower_bound_examples() {
        let (b, eq) = setup();
        let d = states::d();
        let same = lower_bound(&d, &d).unwrap();
        assert_abs_diff_eq!(same.tightest, 0.0, epsilon = 1e-12);

        let inf = BoundsReport::on_gad_trajectory(&b, &d, 1.0).unwrap();
        assert_abs_diff_eq!(inf.lower.wy, 0.69835, epsilon = 1e-5);
        assert!(inf.lower.wy <= inf.ds_irr);
        assert_abs_diff_eq!(inf.ds_irr, 1.522, epsilon = 1e-3);

        let v = BoundsReport::on_gad_trajectory(&b, &states::v(), 1.0).unwrap();
        assert_abs_diff_eq!(v.lower.wy, 0.0413, epsilon = 1e-4);
        assert_abs_diff_eq!(v.lower.qf, v.lower.wy, epsilon = 1e-10);
        assert!(v.lower.wy <= v.ds_irr && v.ds_irr <= 0.0515 + 1e-4);
        assert!(eq.dim() == 2);
    }

    #[test]
    fn triangle_trivial_cases() {
        let (b, _) = setup();
        let family = |t: f64| gad_channel(&b, b.eta_at(t));
        let d = states::d();
        assert_abs_diff_eq!(triangle_slack(family, &d, 0.7, 0.7).unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(triangle_slack(family, &d, 0.0, 2.0).unwrap(), 0.0, epsilon = 1e-12);
        assert!(matches!(
            triangle_slack(family, &d, 2.0, 1.0),
            Err(Error::BadTimeOrder(..))
        ));
        assert!(matches!(
            triangle_slack(family, &d, -1.0, 1.0),
            Err(Error::BadTimeOrder(..))
        ));
    }

    #[test]
    fn triangle_holds_on_grid_for_coherent_state() {
        let (b, _) = setup();
        let family = |t: f64| gad_channel(&b, b.eta_at(t));
        let worst = min_triangle_slack(family, &states::d(), &default_triangle_grid()).unwrap();
        assert!(worst >= -1e-9, "min slack {worst}");
    }

    #[test]
    fn mixing_proof_examples() {
        let (_, eq) = setup();
        let v = states::v();
        let same = mixing_triangle_proof_check(&v, &eq, 0.5, 0.5).unwrap();
        assert_abs_diff_eq!(same.late_leg, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(same.early_leg, 0.0, epsilon = 1e-12);

        let small = mixing_triangle_proof_check(&v, &eq, 1e-9, 0.8).unwrap();
        assert_abs_diff_eq!(small.early_leg, 0.0, epsilon = 1e-8);

        let s = mixing_triangle_proof_check(&v, &eq, 0.3, 0.7).unwrap();
        assert!(s.late_leg >= 0.0 && s.early_leg >= 0.0);
        assert!(s.interpolation_residual < 1e-12);

        assert!(matches!(
            mixing_triangle_proof_check(&v, &eq, 0.7, 0.3),
            Err(Error::BadLambdaOrder(..))
        ));
        assert!(matches!(
            mixing_triangle_proof_check(&v, &eq, 0.0, 0.3),
            Err(Error::BadLambdaOrder(..))
        ));
    }

    #[test]
    fn infinite_time_lower_bound_follows_from_triangle() {
        // With t₂ = ∞ the triangle slack is ΔS_irr − S(ρ₀‖ρ_t).
        let (b, eq) = setup();
        let d = states::d();
        let family = |t: f64| gad_channel(&b, b.eta_at(t));
        for t in default_triangle_grid() {
            let slack = triangle_slack(family, &d, t, f64::INFINITY).unwrap();
            let rho_t = apply(&family(t).unwrap(), &d).unwrap();
            let ds = delta_s_irr_relent(&d, &rho_t, &eq).unwrap();
            let s0t = relative_entropy(&d, &rho_t).unwrap().as_f64();
            assert_abs_diff_eq!(slack, ds - s0t, epsilon = 1e-10);
            let lb = lower_bound(&d, &rho_t).unwrap().tightest;
            assert!(lb <= s0t + 1e-9 && s0t <= ds + 1e-9);
        }
    }

    #[test]
    fn overlap_window() {
        assert!(clamped_arccos(1.0 + 5e-10).unwrap() == 0.0);
        assert!(matches!(clamped_arccos(1.0 + 1e-6), Err(Error::ClampViolation(_))));
        assert!(matches!(clamped_arccos(-1e-6), Err(Error::ClampViolation(_))));
    }

    fn qubit(x: f64, y: f64, z: f64, r: f64) -> DensityMatrix {
        let n = (x * x + y * y + z * z).sqrt().max(1e-9);
        bloch_to_rho(BlochVector::new(x * r / n, y * r / n, z * r / n).unwrap()).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn metric_ordering_and_audenaert(
            a in proptest::array::uniform3(-1.0f64..1.0), ra in 0.0f64..=1.0,
            b in proptest::array::uniform3(-1.0f64..1.0), rb in 0.0f64..=1.0,
        ) {
            let rho = qubit(a[0], a[1], a[2], ra);
            let sigma = qubit(b[0], b[1], b[2], rb);
            let qf = geodesic_length(QF, &rho, &sigma).unwrap();
            let wy = geodesic_length(WY, &rho, &sigma).unwrap();
            prop_assert!(wy >= qf - 1e-10);
            prop_assert!((0.0..=FRAC_PI_2 + 1e-12).contains(&qf));
            prop_assert!((0.0..=FRAC_PI_2 + 1e-12).contains(&wy));
            prop_assert!((geodesic_length(QF, &sigma, &rho).unwrap() - qf).abs() < 1e-10);
            prop_assert!((geodesic_length(WY, &sigma, &rho).unwrap() - wy).abs() < 1e-10);
            // Independent spectral routes for both overlaps.
            prop_assert!((fidelity(&rho, &sigma).unwrap() - qf.cos()).abs() < 1e-7);
            prop_assert!((affinity(&rho, &sigma).unwrap() - wy.cos()).abs() < 1e-7);
            let s = relative_entropy(&rho, &sigma).unwrap().as_f64();
            for kind in MetricKind::ALL {
                prop_assert!(relent_geometric_lower(kind, &rho, &sigma).unwrap() <= s + 1e-9);
            }
        }

        #[test]
        fn commuting_pairs_coincide(pa in 0.0f64..=1.0, pb in 0.0f64..=1.0) {
            let rho = DensityMatrix::diagonal(&[pa, 1.0 - pa]).unwrap();
            let sigma = DensityMatrix::diagonal(&[pb, 1.0 - pb]).unwrap();
            let qf = geodesic_length(QF, &rho, &sigma).unwrap();
            let wy = geodesic_length(WY, &rho, &sigma).unwrap();
            prop_assert!((qf - wy).abs() < 1e-10);
        }
    }
}
