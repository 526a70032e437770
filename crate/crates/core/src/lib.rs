//! Irreversible entropy production of a qubit thermalizing through a
//! generalized amplitude damping (GAD) channel, with geometric upper and lower
//! bounds from the Bures and Wigner–Yanase metrics, and a simulation of the
//! two-photon circuit that realizes the channel.
//!
//! Modules, bottom-up:
//!
//! - [`qmat`]: small complex matrices, density operators, Jacobi eigensolver.
//! - [`channels`]: Kraus channels, the GAD/AD/IAD family and bath parameters.
//! - [`thermo`]: entropies and the two forms of `ΔS_irr`.
//! - [`geometry`]: geodesic lengths, bounds, triangle-inequality checks.
//! - [`photonic`]: waveplates, C-Z gate, branch circuits, shot-noise tomography.

pub mod channels;
pub mod error;
pub mod geometry;
pub mod photonic;
pub mod qmat;
pub mod thermo;

pub use channels::{BathParams, DampingSchedule, KrausChannel};
pub use error::{Error, Result};
pub use geometry::{BoundsReport, MetricKind, PerMetric};
pub use photonic::{Branch, CircuitConfig, TomographyCounts, TomographyRecord};
pub use qmat::{BlochVector, ComplexMatrix, DensityMatrix, HermEigen};
pub use thermo::EntropyValue;
