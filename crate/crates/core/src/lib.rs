//! Quantum radiation from round-trip flying mirrors.
//!
//! A mirror worldline that starts at rest, moves, and asymptotically returns
//! to its original rest position excites the quantum vacuum. In the
//! non-relativistic regime the created-particle content is governed by the
//! Fourier transform of the worldline: `|beta_pq|^2 = (4/pi) p q |z_w|^2`
//! with `w = p + q`. This crate provides
//!
//! * a catalog of nine closed-path worldlines (`trajectory`), including two
//!   whose Bogolubov coefficients carry exact Bose-Einstein and Fermi-Dirac
//!   factors,
//! * closed-form and numeric Fourier transforms of those worldlines
//!   (`fourier`), built on an oscillatory quadrature engine (`quad`),
//! * the frequency-domain particle pipeline: beta coefficients, spectra
//!   `N(p)`, and emission totals (`bogolubov`),
//! * time-domain observables — radiation-reaction force, Larmor power, and
//!   energy by time integration — which serve as independent cross-checks
//!   (`timedomain`),
//! * the slow-speed expansion of the exact beta integral with its
//!   next-to-leading-order correction (`relativistic`),
//! * the self-contained special functions the closed forms need (`specfun`).
//!
//! All emitted quantities are reported as the dimensionless ratios `N/v^2`
//! and `E/(hbar kappa v^2)`; `hbar` never appears as a runtime number.

pub mod bogolubov;
pub mod fourier;
pub mod quad;
pub mod relativistic;
pub mod specfun;
pub mod timedomain;
pub mod trajectory;

pub use bogolubov::{EmissionTotals, Route, SpectrumTable};
pub use fourier::{FourierValue, FtMethod, Statistics};
pub use quad::{QuadratureConfig, TailPolicy};
pub use trajectory::{AmplitudeMode, Kinematics, Trajectory, TrajectoryKind};
