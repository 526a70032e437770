//! Small dense complex matrices and density operators.
//!
//! Everything here is sized for qubits and two-qubit registers (dimension at
//! most [`MAX_DIM`]). Hermitian eigenproblems are solved with a cyclic complex
//! Jacobi iteration, which is exact to round-off at these sizes and keeps the
//! crate free of LAPACK.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest supported operator dimension.
pub const MAX_DIM: usize = 8;

/// Tolerance on Hermiticity and unit trace for [`DensityMatrix`].
pub const STATE_TOL: f64 = 1e-12;
/// Eigenvalues down to `-PSD_FLOOR` are clamped to zero; anything lower is rejected.
pub const PSD_FLOOR: f64 = 1e-12;
/// Asymmetry accepted by [`herm_eigen`].
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Eigenvalues at or below this are treated as zero by [`mat_log`].
pub const LOG_SINGULAR: f64 = 1e-15;
/// Largest admissible Bloch-vector norm.
pub const BALL_TOL: f64 = 1e-9;

const JACOBI_MAX_SWEEPS: usize = 100;
const JACOBI_OFF_TOL: f64 = 1e-14;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0 && dim <= MAX_DIM, "dimension {dim} out of range");
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Builds a matrix from a row-major slice of `dim * dim` entries.
    pub fn from_row_major(dim: usize, entries: &[Complex64]) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::InvalidMatrix(format!("dimension {dim} out of range")));
        }
        if entries.len() != dim * dim {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries, got {}",
                dim * dim,
                entries.len()
            )));
        }
        Ok(Self {
            dim,
            data: entries.to_vec(),
        })
    }

    /// Real-valued matrix from rows. Panics on ragged input.
    pub fn from_real_rows<const N: usize>(rows: [[f64; N]; N]) -> Self {
        let mut m = Self::zeros(N);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = Complex64::new(v, 0.0);
            }
        }
        m
    }

    pub fn from_rows<const N: usize>(rows: [[Complex64; N]; N]) -> Self {
        let mut m = Self::zeros(N);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &v) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    /// `|psi><psi|` for an (unnormalized) ket.
    pub fn outer(ket: &[Complex64]) -> Self {
        let mut m = Self::zeros(ket.len());
        for i in 0..ket.len() {
            for j in 0..ket.len() {
                m[(i, j)] = ket[i] * ket[j].conj();
            }
        }
        m
    }

    /// `|i><j|` in dimension `dim`.
    pub fn unit(dim: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(dim);
        m[(i, j)] = ONE;
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn dagger(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_complex(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (a, b) = (self.dim, other.dim);
        let mut out = Self::zeros(a * b);
        for i in 0..a {
            for j in 0..a {
                let s = self[(i, j)];
                if s == ZERO {
                    continue;
                }
                for k in 0..b {
                    for l in 0..b {
                        out[(i * b + k, j * b + l)] = s * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// `self * rho * self†`.
    pub fn sandwich(&self, rho: &Self) -> Self {
        &(self * rho) * &self.dagger()
    }

    /// Maximum entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max |m_ij - conj(m_ji)|`.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `(A + A†) / 2`.
    pub fn hermitian_part(&self) -> Self {
        (self + &self.dagger()).scale(0.5)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

pub mod pauli {
    use super::{Complex64, ComplexMatrix};

    pub fn x() -> ComplexMatrix {
        ComplexMatrix::from_real_rows([[0.0, 1.0], [1.0, 0.0]])
    }

    pub fn y() -> ComplexMatrix {
        let i = Complex64::new(0.0, 1.0);
        let z = Complex64::new(0.0, 0.0);
        ComplexMatrix::from_rows([[z, -i], [i, z]])
    }

    pub fn z() -> ComplexMatrix {
        ComplexMatrix::from_real_rows([[1.0, 0.0], [0.0, -1.0]])
    }
}

/// Spectral decomposition `A = V diag(λ) V†` of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermEigen {
    /// Eigenvalues in ascending order.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors stored as columns, matching `eigenvalues`.
    pub eigenvectors: ComplexMatrix,
}

impl HermEigen {
    /// `V diag(f(λ)) V†`.
    pub fn map<F: Fn(f64) -> f64>(&self, f: F) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let fl: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = ZERO;
                for k in 0..n {
                    if fl[k] != 0.0 {
                        acc += v[(i, k)] * v[(j, k)].conj() * fl[k];
                    }
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map(|l| l)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }
}

/// Diagonalizes a Hermitian matrix with the cyclic complex Jacobi method.
pub fn herm_eigen(a: &ComplexMatrix) -> Result<HermEigen> {
    let defect = a.hermitian_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::NotHermitian(defect));
    }
    let n = a.dim();
    let mut m = a.hermitian_part();
    for i in 0..n {
        m[(i, i)].im = 0.0;
    }
    let mut v = ComplexMatrix::identity(n);
    let threshold = JACOBI_OFF_TOL * m.frobenius().max(1.0);

    let off_norm = |m: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += m[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut converged = off_norm(&m) <= threshold;
    let mut sweeps = 0;
    while !converged {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence(JACOBI_MAX_SWEEPS));
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                // Phase that makes the (p, q) block real, then a real Givens angle.
                let phase = apq / mag;
                let theta = 0.5 * (2.0 * mag).atan2(m[(q, q)].re - m[(p, p)].re);
                let (s, c) = theta.sin_cos();
                let jpp = Complex64::new(c, 0.0);
                let jpq = Complex64::new(s, 0.0);
                let jqp = -phase.conj() * s;
                let jqq = phase.conj() * c;

                // m <- m J
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = mkp * jpp + mkq * jqp;
                    m[(k, q)] = mkp * jpq + mkq * jqq;
                }
                // m <- J† m
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = jpp.conj() * mpk + jqp.conj() * mqk;
                    m[(q, k)] = jpq.conj() * mpk + jqq.conj() * mqk;
                }
                m[(p, q)] = ZERO;
                m[(q, p)] = ZERO;
                m[(p, p)].im = 0.0;
                m[(q, q)].im = 0.0;
                // v <- v J
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * jpp + vkq * jqp;
                    v[(k, q)] = vkp * jpq + vkq * jqq;
                }
            }
        }
        converged = off_norm(&m) <= threshold;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| m[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        // Fix the phase: first non-negligible component real and positive.
        let pivot = (0..n).map(|k| v[(k, src)]).find(|z| z.norm() > 1e-12).unwrap_or(ONE);
        let fix = pivot.conj() / pivot.norm();
        for k in 0..n {
            vectors[(k, col)] = v[(k, src)] * fix;
        }
    }
    Ok(HermEigen {
        eigenvalues,
        eigenvectors: vectors,
    })
}

/// `exp(A)` for Hermitian `A`.
pub fn herm_exp(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    Ok(herm_eigen(a)?.map(f64::exp))
}

/// Unit-trace, Hermitian, positive semi-definite operator.
#[derive(Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates `mat` as a state. Eigenvalues in `[-PSD_FLOOR, 0)` are
    /// clamped to zero and the trace restored.
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        let defect = mat.hermitian_defect();
        if defect > STATE_TOL {
            return Err(Error::NotHermitian(defect));
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::NotUnitTrace(tr.re));
        }
        let mat = mat.hermitian_part();
        let eig = herm_eigen(&mat)?;
        let min = eig.min_eigenvalue();
        if min < -PSD_FLOOR {
            return Err(Error::NotPsd(min));
        }
        if min < 0.0 {
            let total: f64 = eig.eigenvalues.iter().map(|&l| l.max(0.0)).sum();
            let clamped = eig.map(|l| l.max(0.0) / total);
            return Ok(Self {
                mat: clamped.hermitian_part(),
            });
        }
        Ok(Self { mat })
    }

    /// Normalizes a PSD matrix to unit trace, then validates it.
    pub fn from_unnormalized(mat: ComplexMatrix) -> Result<Self> {
        let tr = mat.trace().re;
        if tr <= 0.0 {
            return Err(Error::NotUnitTrace(tr));
        }
        Self::new(mat.scale(1.0 / tr))
    }

    /// Pure state for the normalized version of `ket`.
    pub fn pure(ket: &[Complex64]) -> Result<Self> {
        let norm: f64 = ket.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidMatrix("zero ket".into()));
        }
        let normed: Vec<Complex64> = ket.iter().map(|z| z / norm).collect();
        Self::new(ComplexMatrix::outer(&normed))
    }

    /// Diagonal state with the given populations.
    pub fn diagonal(populations: &[f64]) -> Result<Self> {
        Self::new(ComplexMatrix::from_real_diag(populations))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            mat: ComplexMatrix::identity(dim).scale(1.0 / dim as f64),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    pub fn eigen(&self) -> HermEigen {
        herm_eigen(&self.mat).expect("validated state is Hermitian and diagonalizable")
    }

    /// `Tr(ρ A)`.
    pub fn expectation(&self, op: &ComplexMatrix) -> Complex64 {
        (&self.mat * op).trace()
    }

    /// `½‖ρ − σ‖₁`.
    pub fn trace_distance(&self, other: &Self) -> f64 {
        let diff = &self.mat - &other.mat;
        let eig = herm_eigen(&diff).expect("difference of states is Hermitian");
        0.5 * eig.eigenvalues.iter().map(|l| l.abs()).sum::<f64>()
    }
}

impl fmt::Debug for DensityMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DensityMatrix {:?}", self.mat)
    }
}

/// Principal square root of a state; tiny negative eigenvalues are clamped.
pub fn mat_sqrt(rho: &DensityMatrix) -> Result<ComplexMatrix> {
    psd_sqrt(rho.matrix())
}

/// Principal square root of any PSD matrix (not necessarily unit trace).
///
/// Eigenvalues at or below [`LOG_SINGULAR`] are round-off and map to 0.
pub fn psd_sqrt(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = herm_eigen(a)?;
    let min = eig.min_eigenvalue();
    if min < -PSD_FLOOR {
        return Err(Error::NotPsd(min));
    }
    Ok(eig
        .map(|l| if l > LOG_SINGULAR { l.sqrt() } else { 0.0 })
        .hermitian_part())
}

/// Natural logarithm of a state.
///
/// With `support_only` set, eigenvalues at or below [`LOG_SINGULAR`] map to 0,
/// which yields the logarithm restricted to the support of `rho`.
pub fn mat_log(rho: &DensityMatrix, support_only: bool) -> Result<ComplexMatrix> {
    let eig = rho.eigen();
    let min = eig.min_eigenvalue();
    if min <= LOG_SINGULAR && !support_only {
        return Err(Error::SingularState(min));
    }
    Ok(eig
        .map(|l| if l > LOG_SINGULAR { l.ln() } else { 0.0 })
        .hermitian_part())
}

/// `(⟨σx⟩, ⟨σy⟩, ⟨σz⟩)` of a qubit. `z = +1` is `|0⟩ ≡ |H⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let b = Self { x, y, z };
        let n = b.norm();
        if !n.is_finite() || n > 1.0 + BALL_TOL {
            return Err(Error::OutsideBall(n));
        }
        Ok(b)
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

pub fn bloch_to_rho(b: BlochVector) -> Result<DensityMatrix> {
    let n = b.norm();
    if n > 1.0 + BALL_TOL {
        return Err(Error::OutsideBall(n));
    }
    let half = 0.5;
    let m = ComplexMatrix::from_rows([
        [
            Complex64::new(half * (1.0 + b.z), 0.0),
            Complex64::new(half * b.x, -half * b.y),
        ],
        [
            Complex64::new(half * b.x, half * b.y),
            Complex64::new(half * (1.0 - b.z), 0.0),
        ],
    ]);
    DensityMatrix::new(m)
}

pub fn rho_to_bloch(rho: &DensityMatrix) -> Result<BlochVector> {
    if rho.dim() != 2 {
        return Err(Error::WrongDim {
            expected: 2,
            got: rho.dim(),
        });
    }
    let m = rho.matrix();
    Ok(BlochVector {
        x: 2.0 * m[(0, 1)].re,
        y: -2.0 * m[(0, 1)].im,
        z: (m[(0, 0)] - m[(1, 1)]).re,
    })
}

/// The linear-polarization states used as initial conditions.
pub mod states {
    use super::{bloch_to_rho, BlochVector, DensityMatrix};

    /// `|H⟩ = |0⟩`, the excited level.
    pub fn h() -> DensityMatrix {
        bloch_to_rho(BlochVector { x: 0.0, y: 0.0, z: 1.0 }).unwrap()
    }

    /// `|V⟩ = |1⟩`, the ground level.
    pub fn v() -> DensityMatrix {
        bloch_to_rho(BlochVector {
            x: 0.0,
            y: 0.0,
            z: -1.0,
        })
        .unwrap()
    }

    /// `|D⟩ = (|H⟩ + |V⟩)/√2`.
    pub fn d() -> DensityMatrix {
        bloch_to_rho(BlochVector { x: 1.0, y: 0.0, z: 0.0 }).unwrap()
    }
}
