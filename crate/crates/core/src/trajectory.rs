//! The catalog of round-trip mirror worldlines.
//!
//! Every worldline has the scaled form `z(t) = (A/kappa) phi(kappa t)` with a
//! dimensionless unit profile `phi` and a linear-in-speed amplitude `A`.
//! The four "plain" kinds (Gauss, Lorentz, Sech, Linear-Lorentz) carry an
//! explicit coefficient inside `phi` that already makes `max|zdot| = v` with
//! `A = v`. The remaining kinds scale a bare profile by `A = J(v)`, fixed
//! either by max-speed calibration or by the implied value that reproduces
//! the reference emission totals.
//!
//! Position, velocity, acceleration and jerk are all hand-coded analytic
//! derivatives (the Lambert-chain kinds go through `dW(e^s)/ds = w/(1+w)`).

use std::rc::Rc;

use thiserror::Error;

use crate::quad::{Tail, TailPart, Trig};
use crate::specfun::{bessel_j1_raw, bessel_j2_raw, bessel_pq, lambert_w0_exp_raw, ZETA3, ZETA5};

const PI: f64 = core::f64::consts::PI;

/// The nine round-trip worldline shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TrajectoryKind {
    Gauss,
    Lorentz,
    Sech,
    Sinc,
    Jinc,
    QuadLorentz,
    LinearLorentz,
    BoseEinstein,
    FermiDirac,
}

/// How the amplitude of the `J(v)`-scaled kinds is resolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AmplitudeMode {
    /// `J = v / max_t |zdot_unit(t)|`: the worldline's top speed is exactly v.
    MaxSpeedCalibrated,
    /// `J` reverse-engineered from the reference total particle count, so
    /// that the emission totals reproduce the published summary values.
    PaperTableImplied,
}

/// Time-reflection behaviour of `z(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Neither,
}

#[derive(Debug, Error)]
pub enum TrajectoryError {
    #[error("maximum speed v = {0} must be strictly below the speed of light (v < 1)")]
    Superluminal(f64),
    #[error("parameter {name} = {value} outside domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },
    #[error("amplitude calibration failed for {kind:?}: {detail}")]
    Calibration {
        kind: TrajectoryKind,
        detail: String,
    },
}

impl TrajectoryKind {
    pub const ALL: [TrajectoryKind; 9] = [
        TrajectoryKind::Gauss,
        TrajectoryKind::Lorentz,
        TrajectoryKind::Sech,
        TrajectoryKind::Sinc,
        TrajectoryKind::Jinc,
        TrajectoryKind::QuadLorentz,
        TrajectoryKind::LinearLorentz,
        TrajectoryKind::BoseEinstein,
        TrajectoryKind::FermiDirac,
    ];

    pub fn label(self) -> &'static str {
        match self {
            TrajectoryKind::Gauss => "gauss",
            TrajectoryKind::Lorentz => "lorentz",
            TrajectoryKind::Sech => "sech",
            TrajectoryKind::Sinc => "sinc",
            TrajectoryKind::Jinc => "jinc",
            TrajectoryKind::QuadLorentz => "quadlorentz",
            TrajectoryKind::LinearLorentz => "linearlorentz",
            TrajectoryKind::BoseEinstein => "be",
            TrajectoryKind::FermiDirac => "fd",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        let norm: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_lowercase();
        Some(match norm.as_str() {
            "gauss" | "gaussian" => TrajectoryKind::Gauss,
            "lorentz" | "lorentzian" => TrajectoryKind::Lorentz,
            "sech" | "hyperbolicsecant" => TrajectoryKind::Sech,
            "sinc" => TrajectoryKind::Sinc,
            "jinc" | "sombrero" => TrajectoryKind::Jinc,
            "quadlorentz" | "ql" => TrajectoryKind::QuadLorentz,
            "linearlorentz" | "ll" => TrajectoryKind::LinearLorentz,
            "be" | "boseeinstein" | "bose" => TrajectoryKind::BoseEinstein,
            "fd" | "fermidirac" | "fermi" => TrajectoryKind::FermiDirac,
            _ => return None,
        })
    }

    pub fn parity(self) -> Parity {
        match self {
            TrajectoryKind::Gauss
            | TrajectoryKind::Lorentz
            | TrajectoryKind::Sech
            | TrajectoryKind::Sinc
            | TrajectoryKind::Jinc
            | TrajectoryKind::QuadLorentz => Parity::Even,
            TrajectoryKind::LinearLorentz => Parity::Odd,
            TrajectoryKind::BoseEinstein | TrajectoryKind::FermiDirac => Parity::Neither,
        }
    }

    /// True for the kinds whose amplitude is a free `J(v)` coefficient.
    pub fn has_free_amplitude(self) -> bool {
        matches!(
            self,
            TrajectoryKind::Sinc
                | TrajectoryKind::Jinc
                | TrajectoryKind::QuadLorentz
                | TrajectoryKind::BoseEinstein
                | TrajectoryKind::FermiDirac
        )
    }

    /// Reference summary values (N/v^2, E/(hbar kappa v^2)).
    pub fn table_totals(self) -> (f64, f64) {
        match self {
            TrajectoryKind::Gauss => (0.288419, 0.191703),
            TrajectoryKind::Lorentz => (0.296296, 0.296296),
            TrajectoryKind::Sech => (0.296167, 0.198059),
            TrajectoryKind::Sinc => (0.438009, 0.175204),
            TrajectoryKind::Jinc => (0.059173, 0.020288),
            TrajectoryKind::QuadLorentz => (0.354852, 0.564566),
            TrajectoryKind::LinearLorentz => (0.125, 0.125),
            TrajectoryKind::BoseEinstein => (0.196763, 0.076811),
            TrajectoryKind::FermiDirac => (0.183985, 0.074217),
        }
    }

    /// Exact total ratios (N/A^2, E/(hbar kappa A^2)) where A is the
    /// amplitude coefficient of the scaled profile.
    pub(crate) fn analytic_total_ratios(self) -> (f64, f64) {
        let e = core::f64::consts::E;
        match self {
            TrajectoryKind::Gauss => (e / (3.0 * PI), e / (8.0 * PI.sqrt())),
            TrajectoryKind::Lorentz => (8.0 / 27.0, 8.0 / 27.0),
            TrajectoryKind::Sech => (24.0 * ZETA3 / PI.powi(4), 28.0 / (45.0 * PI)),
            TrajectoryKind::Sinc => (1.0 / 12.0, 1.0 / 30.0),
            TrajectoryKind::Jinc => (
                1.0 / (9.0 * PI * PI),
                4.0 / (105.0 * PI * PI),
            ),
            TrajectoryKind::QuadLorentz => (0.25, 9.0 / (16.0 * 2.0f64.sqrt())),
            TrajectoryKind::LinearLorentz => (0.125, 0.125),
            TrajectoryKind::BoseEinstein => {
                (ZETA5 / (2.0 * PI.powi(6)), 1.0 / (1512.0 * PI))
            }
            TrajectoryKind::FermiDirac => (
                15.0 * ZETA5 / (32.0 * PI.powi(6)),
                31.0 / (48384.0 * PI),
            ),
        }
    }

    /// Negative-time exponential decay window: |phi(-x)| is negligible
    /// beyond this for the Lambert kinds (other kinds are symmetric or share
    /// the positive-side tail description).
    pub(crate) fn neg_cutoff(self) -> f64 {
        match self {
            TrajectoryKind::BoseEinstein => 95.0,
            // the Fermi-Dirac profile only decays as e^{x/2} for t -> -inf
            TrajectoryKind::FermiDirac => 180.0,
            _ => 0.0,
        }
    }

    /// Unit profile and its first three derivatives, `d` in 0..=3.
    pub(crate) fn profile(self, d: usize, x: f64) -> f64 {
        debug_assert!(d <= 3);
        match self {
            TrajectoryKind::Gauss => {
                let g = (0.5 - 0.5 * x * x).exp();
                match d {
                    0 => g,
                    1 => -x * g,
                    2 => (x * x - 1.0) * g,
                    _ => x * (3.0 - x * x) * g,
                }
            }
            TrajectoryKind::Lorentz => {
                let c = 8.0 / (3.0 * 3.0f64.sqrt());
                let den = 1.0 + x * x;
                match d {
                    0 => c / den,
                    1 => -2.0 * c * x / den.powi(2),
                    2 => c * (6.0 * x * x - 2.0) / den.powi(3),
                    _ => 24.0 * c * x * (1.0 - x * x) / den.powi(4),
                }
            }
            TrajectoryKind::Sech => {
                let s = sech(x);
                let th = x.tanh();
                match d {
                    0 => 2.0 * s,
                    1 => -2.0 * s * th,
                    2 => 2.0 * s * (1.0 - 2.0 * s * s),
                    _ => 2.0 * s * th * (6.0 * s * s - 1.0),
                }
            }
            TrajectoryKind::Sinc => sinc_profile(d, x),
            TrajectoryKind::Jinc => jinc_profile(d, x),
            TrajectoryKind::QuadLorentz => {
                let x4 = x.powi(4);
                let den = x4 + 1.0;
                match d {
                    0 => x * x / den,
                    1 => 2.0 * x * (1.0 - x4) / den.powi(2),
                    2 => 2.0 * (3.0 * x4 * x4 - 12.0 * x4 + 1.0) / den.powi(3),
                    _ => -24.0 * x.powi(3) * (x4 * x4 - 10.0 * x4 + 5.0) / den.powi(4),
                }
            }
            TrajectoryKind::LinearLorentz => {
                let den = 1.0 + x * x;
                match d {
                    0 => x / den,
                    1 => (1.0 - x * x) / den.powi(2),
                    2 => 2.0 * x * (x * x - 3.0) / den.powi(3),
                    _ => -6.0 * (x.powi(4) - 6.0 * x * x + 1.0) / den.powi(4),
                }
            }
            TrajectoryKind::BoseEinstein => bose_profile(d, lambert_w0_exp_raw(x)),
            TrajectoryKind::FermiDirac => fermi_profile(d, lambert_w0_exp_raw(x)),
        }
    }

    /// Large-argument description of `profile(d, .)` on the positive axis.
    pub(crate) fn tail(self, d: usize) -> Tail {
        match self {
            TrajectoryKind::Gauss => Tail::Truncate { cutoff: 40.0 },
            TrajectoryKind::Sech => Tail::Truncate { cutoff: 50.0 },
            TrajectoryKind::Lorentz
            | TrajectoryKind::QuadLorentz
            | TrajectoryKind::LinearLorentz => Tail::Parts {
                start: 30.0,
                parts: vec![TailPart::plain(Rc::new(move |x| self.profile(d, x)))],
            },
            TrajectoryKind::BoseEinstein | TrajectoryKind::FermiDirac => Tail::Parts {
                start: 40.0,
                parts: vec![TailPart::plain(Rc::new(move |x| self.profile(d, x)))],
            },
            TrajectoryKind::Sinc => {
                let parts = match d {
                    0 => vec![TailPart::osc(1.0, Trig::Sin, Rc::new(|x| 1.0 / x))],
                    1 => vec![
                        TailPart::osc(1.0, Trig::Sin, Rc::new(|x| -1.0 / (x * x))),
                        TailPart::osc(1.0, Trig::Cos, Rc::new(|x| 1.0 / x)),
                    ],
                    2 => vec![
                        TailPart::osc(
                            1.0,
                            Trig::Sin,
                            Rc::new(|x| -1.0 / x + 2.0 / (x * x * x)),
                        ),
                        TailPart::osc(1.0, Trig::Cos, Rc::new(|x| -2.0 / (x * x))),
                    ],
                    _ => vec![
                        TailPart::osc(
                            1.0,
                            Trig::Sin,
                            Rc::new(|x| 3.0 / (x * x) - 6.0 / x.powi(4)),
                        ),
                        TailPart::osc(
                            1.0,
                            Trig::Cos,
                            Rc::new(|x| -1.0 / x + 6.0 / (x * x * x)),
                        ),
                    ],
                };
                Tail::Parts { start: 40.0, parts }
            }
            TrajectoryKind::Jinc => {
                // J0, J1 split into cos/sin envelope pairs; the profile
                // derivatives are rational-in-1/x combinations of the two.
                let (a0, b0): (JincCoef, JincCoef) = match d {
                    0 => (Rc::new(|_x| 0.0), Rc::new(|x| 1.0 / x)),
                    1 => (Rc::new(|x| 1.0 / x), Rc::new(|x| -2.0 / (x * x))),
                    2 => (
                        Rc::new(|x| -3.0 / (x * x)),
                        Rc::new(|x| -1.0 / x + 6.0 / (x * x * x)),
                    ),
                    _ => (
                        Rc::new(|x| -1.0 / x + 12.0 / (x * x * x)),
                        Rc::new(|x| 5.0 / (x * x) - 24.0 / x.powi(4)),
                    ),
                };
                // profile = a(x) J0(x) + b(x) J1(x)
                let (ac, bc) = (a0.clone(), b0.clone());
                let cos_env: crate::quad::Env = Rc::new(move |x| {
                    let (p0, q0) = bessel_pq(0, x);
                    let (p1, q1) = bessel_pq(1, x);
                    let s = (PI * x).sqrt();
                    ac(x) * (p0 + q0) / s + bc(x) * (q1 - p1) / s
                });
                let sin_env: crate::quad::Env = Rc::new(move |x| {
                    let (p0, q0) = bessel_pq(0, x);
                    let (p1, q1) = bessel_pq(1, x);
                    let s = (PI * x).sqrt();
                    a0(x) * (p0 - q0) / s + b0(x) * (p1 + q1) / s
                });
                Tail::Parts {
                    start: 60.0,
                    parts: vec![
                        TailPart::osc(1.0, Trig::Cos, cos_env),
                        TailPart::osc(1.0, Trig::Sin, sin_env),
                    ],
                }
            }
        }
    }
}

type JincCoef = Rc<dyn Fn(f64) -> f64>;

fn sech(x: f64) -> f64 {
    let e = (-x.abs()).exp();
    2.0 * e / (1.0 + e * e)
}

/// sinc and derivatives; series near the origin where the closed forms
/// suffer 1/x cancellation.
fn sinc_profile(d: usize, x: f64) -> f64 {
    let ax = x.abs();
    match d {
        0 => {
            if ax < 1e-150 {
                1.0
            } else {
                x.sin() / x
            }
        }
        1 => {
            if ax < 0.1 {
                let x2 = x * x;
                x * (-1.0 / 3.0 + x2 * (1.0 / 30.0 + x2 * (-1.0 / 840.0 + x2 / 45360.0)))
            } else {
                (x * x.cos() - x.sin()) / (x * x)
            }
        }
        2 => {
            if ax < 0.1 {
                let x2 = x * x;
                -1.0 / 3.0 + x2 * (0.1 + x2 * (-1.0 / 168.0 + x2 / 6480.0))
            } else {
                ((2.0 - x * x) * x.sin() - 2.0 * x * x.cos()) / (x * x * x)
            }
        }
        _ => {
            if ax < 0.5 {
                let x2 = x * x;
                x * (0.2
                    + x2 * (-1.0 / 42.0
                        + x2 * (1.0 / 1080.0 + x2 * (-1.0 / 55440.0 + x2 / 4_717_440.0))))
            } else {
                // j1 + 2 j0/x - 6 j1/x^2 with spherical j0, j1
                let j0 = x.sin() / x;
                let j1 = x.sin() / (x * x) - x.cos() / x;
                j1 + 2.0 * j0 / x - 6.0 * j1 / (x * x)
            }
        }
    }
}

/// J1(x)/x and derivatives via Bessel recurrences; series near the origin.
fn jinc_profile(d: usize, x: f64) -> f64 {
    let ax = x.abs();
    match d {
        0 => {
            if ax < 1e-150 {
                0.5
            } else {
                bessel_j1_raw(x) / x
            }
        }
        1 => {
            if ax < 1e-150 {
                0.0
            } else {
                -bessel_j2_raw(x) / x
            }
        }
        2 => {
            if ax < 1e-4 {
                -0.125 + x * x / 32.0
            } else {
                -bessel_j1_raw(x) / x + 3.0 * bessel_j2_raw(x) / (x * x)
            }
        }
        _ => {
            if ax < 0.6 {
                let x2 = x * x;
                x * (1.0 / 16.0
                    + x2 * (-5.0 / 768.0
                        + x2 * (7.0 / 30720.0
                            + x2 * (-1.0 / 245_760.0 + x2 * (11.0 / 247_726_080.0)))))
            } else {
                let j1 = bessel_j1_raw(x);
                let j2 = bessel_j2_raw(x);
                j2 / x - 12.0 * j2 / (x * x * x) + 3.0 * j1 / (x * x)
            }
        }
    }
}

fn bose_profile(d: usize, w: f64) -> f64 {
    if w > 1e30 {
        // 1/(1+w) expansions are exact to below a ulp here
        return match d {
            0 => 1.0 / (w * w),
            1 => -2.0 / (w * w * w),
            2 => 6.0 / w.powi(4),
            _ => -24.0 / w.powi(5),
        };
    }
    let u = 1.0 + w;
    match d {
        0 => w / u.powi(3),
        1 => w * (1.0 - 2.0 * w) / u.powi(5),
        2 => w * ((6.0 * w - 8.0) * w + 1.0) / u.powi(7),
        _ => w * (((-24.0 * w + 58.0) * w - 22.0) * w + 1.0) / u.powi(9),
    }
}

fn fermi_profile(d: usize, w: f64) -> f64 {
    if w > 1e30 {
        return match d {
            0 => -0.5 / w.powf(1.5),
            1 => 0.75 / w.powf(2.5),
            2 => -1.875 / w.powf(3.5),
            _ => 6.5625 / w.powf(4.5),
        };
    }
    let r = w.sqrt();
    let u = 1.0 + w;
    match d {
        0 => r * (1.0 - w) / (2.0 * u.powi(3)),
        1 => r * ((3.0 * w - 8.0) * w + 1.0) / (4.0 * u.powi(5)),
        2 => r * (((-15.0 * w + 71.0) * w - 33.0) * w + 1.0) / (8.0 * u.powi(7)),
        _ => {
            r * ((((105.0 * w - 744.0) * w + 718.0) * w - 112.0) * w + 1.0)
                / (16.0 * u.powi(9))
        }
    }
}

// ---------------------------------------------------------------------------
// Amplitude calibration
// ---------------------------------------------------------------------------

/// Locate `max_x |phi'(x)|`: log-spaced scan on both half-axes, then
/// golden-section refinement of the bracketed peak.
pub(crate) fn max_unit_speed(kind: TrajectoryKind) -> Result<(f64, f64), TrajectoryError> {
    let speed = |x: f64| kind.profile(1, x).abs();
    let mut grid: Vec<f64> = Vec::with_capacity(1603);
    grid.push(0.0);
    let n = 800;
    for i in 0..=n {
        let x = 1e-3 * (30.0f64 / 1e-3).powf(i as f64 / n as f64);
        grid.push(x);
        grid.push(-x);
    }
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let (mut best_i, mut best) = (0usize, f64::MIN);
    for (i, &x) in grid.iter().enumerate() {
        let s = speed(x);
        if s > best {
            best = s;
            best_i = i;
        }
    }
    if !best.is_finite() || best <= 0.0 {
        return Err(TrajectoryError::Calibration {
            kind,
            detail: format!("no speed extremum found (best = {best})"),
        });
    }
    let lo = grid[best_i.saturating_sub(1)];
    let hi = grid[(best_i + 1).min(grid.len() - 1)];
    if lo == hi {
        return Ok((grid[best_i], best));
    }
    let (x, s) = golden_max(&speed, lo, hi, 1e-12);
    // the grid point itself may win when the peak sits exactly on it
    if s >= best {
        Ok((x, s))
    } else {
        Ok((grid[best_i], best))
    }
}

/// Golden-section search for the maximum of `f` on [a, b].
fn golden_max(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64, xtol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while (b - a).abs() > xtol {
        if f1 > f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 > f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Resolve the amplitude coefficient `J(v)` (returns `v` itself for the
/// kinds whose profile already carries its speed coefficient).
pub fn calibrate_amplitude(
    kind: TrajectoryKind,
    v: f64,
    mode: AmplitudeMode,
) -> Result<f64, TrajectoryError> {
    if !(v > 0.0) {
        return Err(TrajectoryError::Domain {
            name: "v",
            value: v,
            domain: "(0, 1)",
        });
    }
    if v >= 1.0 {
        return Err(TrajectoryError::Superluminal(v));
    }
    if !kind.has_free_amplitude() {
        return Ok(v);
    }
    match mode {
        AmplitudeMode::MaxSpeedCalibrated => {
            let (_, smax) = max_unit_speed(kind)?;
            Ok(v / smax)
        }
        AmplitudeMode::PaperTableImplied => {
            let (n_table, _) = kind.table_totals();
            let (n_ratio, _) = kind.analytic_total_ratios();
            Ok(v * (n_table / n_ratio).sqrt())
        }
    }
}

// ---------------------------------------------------------------------------
// Trajectory values
// ---------------------------------------------------------------------------

/// Position, velocity and coordinate acceleration at one instant.
#[derive(Debug, Clone, Copy)]
pub struct Kinematics {
    /// position (units of time, c = 1)
    pub z: f64,
    /// velocity (dimensionless)
    pub zdot: f64,
    /// coordinate acceleration (1/time)
    pub zddot: f64,
}

/// An immutable, fully calibrated worldline.
#[derive(Debug, Clone, Copy)]
pub struct Trajectory {
    kind: TrajectoryKind,
    kappa: f64,
    v_max: f64,
    amplitude: f64,
    mode: AmplitudeMode,
}

impl Trajectory {
    pub fn new(
        kind: TrajectoryKind,
        kappa: f64,
        v: f64,
        mode: AmplitudeMode,
    ) -> Result<Self, TrajectoryError> {
        if !kappa.is_finite() || kappa <= 0.0 {
            return Err(TrajectoryError::Domain {
                name: "kappa",
                value: kappa,
                domain: "(0, inf)",
            });
        }
        if !v.is_finite() || v <= 0.0 {
            return Err(TrajectoryError::Domain {
                name: "v",
                value: v,
                domain: "(0, 1)",
            });
        }
        if v >= 1.0 {
            return Err(TrajectoryError::Superluminal(v));
        }
        let amplitude = calibrate_amplitude(kind, v, mode)?;
        Ok(Trajectory {
            kind,
            kappa,
            v_max: v,
            amplitude,
            mode,
        })
    }

    pub fn kind(&self) -> TrajectoryKind {
        self.kind
    }
    pub fn kappa(&self) -> f64 {
        self.kappa
    }
    pub fn v_max(&self) -> f64 {
        self.v_max
    }
    /// The coefficient `A` in `z(t) = (A/kappa) phi(kappa t)`.
    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }
    pub fn amplitude_mode(&self) -> AmplitudeMode {
        self.mode
    }

    pub fn position(&self, t: f64) -> f64 {
        self.amplitude / self.kappa * self.kind.profile(0, self.kappa * t)
    }

    pub fn velocity(&self, t: f64) -> f64 {
        self.amplitude * self.kind.profile(1, self.kappa * t)
    }

    pub fn acceleration(&self, t: f64) -> f64 {
        self.amplitude * self.kappa * self.kind.profile(2, self.kappa * t)
    }

    /// da/dt, needed by the radiation-reaction force.
    pub fn jerk(&self, t: f64) -> f64 {
        self.amplitude * self.kappa * self.kappa * self.kind.profile(3, self.kappa * t)
    }

    pub fn kinematics(&self, t: f64) -> Kinematics {
        Kinematics {
            z: self.position(t),
            zdot: self.velocity(t),
            zddot: self.acceleration(t),
        }
    }

    /// Central-difference kinematics; verification aid for the analytic
    /// derivatives, not meant for production evaluation.
    #[doc(hidden)]
    pub fn numeric_kinematics(&self, t: f64) -> Kinematics {
        let h1 = f64::EPSILON.powf(1.0 / 3.0) * t.abs().max(1.0) / self.kappa.max(1.0);
        let h2 = f64::EPSILON.powf(0.25) * t.abs().max(1.0) / self.kappa.max(1.0);
        let z = |t: f64| self.position(t);
        Kinematics {
            z: z(t),
            zdot: (z(t + h1) - z(t - h1)) / (2.0 * h1),
            zddot: (z(t + h2) - 2.0 * z(t) + z(t - h2)) / (h2 * h2),
        }
    }

    /// Central difference of the analytic acceleration, for jerk checks.
    #[doc(hidden)]
    pub fn numeric_jerk(&self, t: f64) -> f64 {
        let h = f64::EPSILON.powf(1.0 / 3.0) * t.abs().max(1.0) / self.kappa.max(1.0);
        (self.acceleration(t + h) - self.acceleration(t - h)) / (2.0 * h)
    }
}

/// Convenience constructor mirroring `Trajectory::new`.
pub fn make_trajectory(
    kind: TrajectoryKind,
    kappa: f64,
    v: f64,
    mode: AmplitudeMode,
) -> Result<Trajectory, TrajectoryError> {
    Trajectory::new(kind, kappa, v, mode)
}
