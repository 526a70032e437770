//! Entropies, heat, and the two forms of irreversible entropy production.
//!
//! All quantities are in nats. `0·ln 0` is taken as 0.

use std::fmt;

use crate::error::{Error, Result};
use crate::qmat::{ComplexMatrix, DensityMatrix};

/// Eigenvalues at or below this count as outside the support.
pub const SUPPORT_TOL: f64 = 1e-12;

/// An entropy in nats, possibly infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EntropyValue {
    Finite(f64),
    Infinite,
}

impl EntropyValue {
    pub fn is_finite(&self) -> bool {
        matches!(self, Self::Finite(_))
    }

    /// The finite value, or [`Error::InfiniteEntropy`].
    pub fn finite(self) -> Result<f64> {
        match self {
            Self::Finite(v) => Ok(v),
            Self::Infinite => Err(Error::InfiniteEntropy),
        }
    }

    /// `+∞` for the infinite marker.
    pub fn as_f64(self) -> f64 {
        match self {
            Self::Finite(v) => v,
            Self::Infinite => f64::INFINITY,
        }
    }
}

impl fmt::Display for EntropyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(v) => write!(f, "{v}"),
            Self::Infinite => write!(f, "inf"),
        }
    }
}

fn xlogx(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}

/// `−Tr ρ ln ρ`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    let s: f64 = rho.eigen().eigenvalues.iter().map(|&l| -xlogx(l)).sum();
    s.max(0.0)
}

/// `S(ρ‖σ) = Tr ρ ln ρ − Tr ρ ln σ`, infinite when `supp ρ ⊄ supp σ`.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<EntropyValue> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimMismatch(rho.dim(), sigma.dim()));
    }
    let neg_entropy: f64 = rho.eigen().eigenvalues.iter().map(|&l| xlogx(l)).sum();

    // Tr ρ ln σ = Σ_k ln(s_k) ⟨v_k|ρ|v_k⟩ over the eigenbasis of σ.
    let eig = sigma.eigen();
    let v = &eig.eigenvectors;
    let m = rho.matrix();
    let n = rho.dim();
    let mut cross = 0.0;
    for (k, &s) in eig.eigenvalues.iter().enumerate() {
        let mut weight = 0.0;
        for i in 0..n {
            for j in 0..n {
                weight += (v[(i, k)].conj() * m[(i, j)] * v[(j, k)]).re;
            }
        }
        if s <= SUPPORT_TOL {
            if weight > SUPPORT_TOL {
                return Ok(EntropyValue::Infinite);
            }
            continue;
        }
        cross += weight * s.ln();
    }
    Ok(EntropyValue::Finite((neg_entropy - cross).max(0.0)))
}

/// `ΔQ = Tr[H ρ_t] − Tr[H ρ₀]`, positive when energy flows into the system.
pub fn heat(rho0: &DensityMatrix, rho_t: &DensityMatrix, h: &ComplexMatrix) -> Result<f64> {
    if rho0.dim() != rho_t.dim() {
        return Err(Error::DimMismatch(rho0.dim(), rho_t.dim()));
    }
    if h.dim() != rho0.dim() {
        return Err(Error::DimMismatch(h.dim(), rho0.dim()));
    }
    let defect = h.hermitian_defect();
    if defect > crate::qmat::HERMITIAN_TOL {
        return Err(Error::NotHermitian(defect));
    }
    Ok(rho_t.expectation(h).re - rho0.expectation(h).re)
}

/// `ΔS − ΔQ/T`.
pub fn delta_s_irr_thermo(
    rho0: &DensityMatrix,
    rho_t: &DensityMatrix,
    h: &ComplexMatrix,
    temperature: f64,
) -> Result<f64> {
    if temperature.is_nan() || temperature <= 0.0 {
        return Err(Error::NonPositiveTemperature(temperature));
    }
    let dq = heat(rho0, rho_t, h)?;
    Ok(von_neumann_entropy(rho_t) - von_neumann_entropy(rho0) - dq / temperature)
}

/// `S(ρ₀‖ρ_eq) − S(ρ_t‖ρ_eq)`.
pub fn delta_s_irr_relent(rho0: &DensityMatrix, rho_t: &DensityMatrix, rho_eq: &DensityMatrix) -> Result<f64> {
    let min = rho_eq.eigen().min_eigenvalue();
    if min <= SUPPORT_TOL {
        return Err(Error::SingularEquilibrium(min));
    }
    let initial = relative_entropy(rho0, rho_eq)?.finite()?;
    let current = relative_entropy(rho_t, rho_eq)?.finite()?;
    Ok(initial - current)
}
