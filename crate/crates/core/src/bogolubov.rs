//! The frequency-domain particle pipeline.
//!
//! `|beta_pq|^2 = (4/pi) p q |z_w|^2` with `w = p + q` feeds the particle
//! spectrum `N(p) = int |beta|^2 dq`, the total count `N`, and the energy
//! `E = int hbar p N(p) dp`. Every kind has both an analytic spectrum and a
//! quadrature route; totals are also reachable through the frequency-space
//! Larmor form (see [`crate::timedomain`]), giving three independent paths
//! to the same numbers.
//!
//! Outputs are the dimensionless ratios `N/v^2` and `E/(hbar kappa v^2)`.

use crate::fourier::{ft_closed_abs2, ft_numeric};
use crate::quad::{integrate, QuadError, QuadratureConfig};
use crate::specfun::{dilog, erfc_raw, trilog};
use crate::trajectory::{Trajectory, TrajectoryKind};

const PI: f64 = core::f64::consts::PI;

/// Which computational path produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    ClosedForm,
    Quadrature,
    Larmor,
}

/// One squared Bogolubov coefficient.
#[derive(Debug, Clone, Copy)]
pub struct BetaSquared {
    pub p: f64,
    pub q: f64,
    pub value: f64,
}

/// Tabulated particle spectrum on an ascending frequency grid.
#[derive(Debug, Clone)]
pub struct SpectrumTable {
    pub kind: TrajectoryKind,
    pub route: Route,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
}

/// Emission totals as dimensionless ratios.
#[derive(Debug, Clone, Copy)]
pub struct EmissionTotals {
    pub n_over_v2: f64,
    pub e_over_hkv2: f64,
    pub route: Route,
    /// outer-integral error estimates (same units as the ratios), present
    /// on the quadrature route
    pub n_err: Option<f64>,
    pub e_err: Option<f64>,
}

/// `|beta_pq|^2` from the registered closed-form transform.
pub fn beta_sq(traj: &Trajectory, p: f64, q: f64) -> BetaSquared {
    assert!(p >= 0.0 && q >= 0.0, "mode frequencies must be non-negative");
    // (p*q) grouped first so the p <-> q symmetry is bit-exact
    BetaSquared {
        p,
        q,
        value: 4.0 / PI * (p * q) * ft_closed_abs2(traj, p + q),
    }
}

/// `|beta_pq|^2` with the transform evaluated by quadrature instead of the
/// closed form; the expensive end-to-end variant used for cross-validation.
pub fn beta_sq_numeric_ft(
    traj: &Trajectory,
    p: f64,
    q: f64,
    cfg: &QuadratureConfig,
) -> Result<BetaSquared, QuadError> {
    assert!(p >= 0.0 && q >= 0.0);
    let z = ft_numeric(traj, p + q, cfg)?;
    Ok(BetaSquared {
        p,
        q,
        value: 4.0 / PI * (p * q) * z.abs2(),
    })
}

/// Analytic `N(p)` per kind.
fn closed_spectrum(traj: &Trajectory, p: f64) -> f64 {
    let k = traj.kappa();
    let a2 = traj.amplitude() * traj.amplitude();
    let x = p / k;
    match traj.kind() {
        TrajectoryKind::Gauss => {
            2.0 * p * a2 / (PI * k * k) * (1.0 - x * x).exp()
                - 2.0 * core::f64::consts::E * p * p * a2 / (PI.sqrt() * k * k * k)
                    * erfc_raw(x)
        }
        TrajectoryKind::Lorentz => 32.0 * p * a2 / (27.0 * k * k) * (-2.0 * x).exp(),
        TrajectoryKind::Sech => {
            32.0 * p * a2 / (PI * PI * k * k) * (-PI * x).exp().ln_1p()
        }
        TrajectoryKind::Sinc => {
            if p < k {
                a2 * p * (k - p) * (k - p) / k.powi(4)
            } else {
                0.0
            }
        }
        TrajectoryKind::Jinc => {
            // prefactor 2/(3 pi^2): the integral of the squared transform
            // over q in [0, k - p]; reproduces the totals J^2/(9 pi^2) and
            // 4 J^2 k / (105 pi^2)
            if p < k {
                2.0 * a2 * p * (3.0 * k + p) * (k - p).powi(3) / (3.0 * PI * PI * k.powi(6))
            } else {
                0.0
            }
        }
        TrajectoryKind::QuadLorentz => {
            let s = 2.0f64.sqrt() * x;
            a2 * p / (4.0 * k * k) * (-s).exp() * (2.0 - s.cos())
        }
        TrajectoryKind::LinearLorentz => a2 * p / (2.0 * k * k) * (-2.0 * x).exp(),
        TrajectoryKind::BoseEinstein => {
            let y = (-2.0 * PI * x).exp();
            a2 * p * p / (PI.powi(3) * k.powi(3)) * dilog(y)
                + a2 * p / (PI.powi(4) * k * k) * trilog(y)
        }
        TrajectoryKind::FermiDirac => {
            let y = -(-2.0 * PI * x).exp();
            -(a2 * p * p / (PI.powi(3) * k.powi(3)) * dilog(y))
                - a2 * p / (PI.powi(4) * k * k) * trilog(y)
        }
    }
}

/// Whether the q-integration window is the finite band [0, kappa - p].
fn uv_cutoff(kind: TrajectoryKind) -> bool {
    matches!(kind, TrajectoryKind::Sinc | TrajectoryKind::Jinc)
}

/// `N(p)` by integrating `|beta_pq|^2` over q (closed-form transform in the
/// integrand, rational map `q = kappa u/(1-u)` for the semi-infinite range).
fn quadrature_spectrum(
    traj: &Trajectory,
    p: f64,
    cfg: &QuadratureConfig,
) -> Result<f64, QuadError> {
    let k = traj.kappa();
    if uv_cutoff(traj.kind()) {
        if p >= k {
            return Ok(0.0);
        }
        let (v, _) = integrate(
            |q| beta_sq(traj, p, q).value,
            0.0,
            k - p,
            cfg,
        )?;
        return Ok(v);
    }
    let (v, _) = integrate(
        |u| {
            if u >= 1.0 - 1e-14 {
                return 0.0;
            }
            let q = k * u / (1.0 - u);
            let jac = k / ((1.0 - u) * (1.0 - u));
            beta_sq(traj, p, q).value * jac
        },
        0.0,
        1.0,
        cfg,
    )?;
    Ok(v)
}

/// Created-particle density per out-mode frequency.
pub fn particle_spectrum(
    traj: &Trajectory,
    p: f64,
    route: Route,
    cfg: &QuadratureConfig,
) -> Result<f64, QuadError> {
    assert!(p >= 0.0);
    match route {
        Route::ClosedForm => Ok(closed_spectrum(traj, p)),
        Route::Quadrature => quadrature_spectrum(traj, p, cfg),
        Route::Larmor => Ok(crate::timedomain::larmor_spectrum(traj, p)),
    }
}

/// `N(p)` with the transform itself computed numerically, integrating q
/// over `[0, q_max]`. Exercises the full numeric pipeline end to end
/// (used to bound the spectrum above UV cutoffs without assuming them).
pub fn particle_spectrum_numeric_ft(
    traj: &Trajectory,
    p: f64,
    q_max: f64,
    cfg: &QuadratureConfig,
) -> Result<f64, QuadError> {
    let (v, _) = integrate(
        |q| {
            4.0 / PI
                * p
                * q
                * ft_numeric(traj, p + q, cfg)
                    .map(|z| z.abs2())
                    .unwrap_or(f64::NAN)
        },
        0.0,
        q_max,
        &QuadratureConfig {
            // the integrand is itself noisy at the 1e-9 level above a UV
            // cutoff; do not chase phantom structure there
            rel_tol: cfg.rel_tol.max(1e-6),
            abs_tol: cfg.abs_tol.max(1e-12),
            max_segments: 200,
            tail_policy: cfg.tail_policy,
        },
    )?;
    Ok(v)
}

/// Spectrum values over a caller-supplied ascending grid.
pub fn spectrum_table(
    traj: &Trajectory,
    grid: &[f64],
    route: Route,
    cfg: &QuadratureConfig,
) -> Result<SpectrumTable, QuadError> {
    let mut values = Vec::with_capacity(grid.len());
    for &p in grid {
        values.push(particle_spectrum(traj, p, route, cfg)?);
    }
    Ok(SpectrumTable {
        kind: traj.kind(),
        route,
        grid: grid.to_vec(),
        values,
    })
}

/// Both emission totals over the requested route.
pub fn emission_totals(
    traj: &Trajectory,
    route: Route,
    cfg: &QuadratureConfig,
) -> Result<EmissionTotals, QuadError> {
    let v2 = traj.v_max() * traj.v_max();
    let k = traj.kappa();
    match route {
        Route::ClosedForm => {
            let (rn, re) = traj.kind().analytic_total_ratios();
            let a2 = traj.amplitude() * traj.amplitude();
            Ok(EmissionTotals {
                n_over_v2: rn * a2 / v2,
                e_over_hkv2: re * a2 / v2,
                route,
                n_err: None,
                e_err: None,
            })
        }
        Route::Quadrature => {
            // nested integral; inner spectrum tightened so the outer
            // tolerance is meaningful
            let inner = QuadratureConfig {
                rel_tol: cfg.rel_tol * 1e-2,
                abs_tol: cfg.abs_tol * 1e-2,
                ..cfg.clone()
            };
            let spectrum = |p: f64| quadrature_spectrum(traj, p, &inner).unwrap_or(f64::NAN);
            let ((n, ne), (e, ee)) = if uv_cutoff(traj.kind()) {
                (
                    integrate(&spectrum, 0.0, k, cfg)?,
                    integrate(|p| p * spectrum(p), 0.0, k, cfg)?,
                )
            } else {
                let map = |f: &dyn Fn(f64) -> f64, u: f64| {
                    if u >= 1.0 - 1e-14 {
                        return 0.0;
                    }
                    let p = k * u / (1.0 - u);
                    f(p) * k / ((1.0 - u) * (1.0 - u))
                };
                (
                    integrate(|u| map(&spectrum, u), 0.0, 1.0, cfg)?,
                    integrate(|u| map(&|p| p * spectrum(p), u), 0.0, 1.0, cfg)?,
                )
            };
            Ok(EmissionTotals {
                n_over_v2: n / v2,
                e_over_hkv2: e / (k * v2),
                route,
                n_err: Some(ne / v2),
                e_err: Some(ee / (k * v2)),
            })
        }
        Route::Larmor => {
            let n = crate::timedomain::larmor_particle_total(traj, cfg)?;
            let e = crate::timedomain::larmor_energy_total(traj, cfg)?;
            Ok(EmissionTotals {
                n_over_v2: n / v2,
                e_over_hkv2: e / (k * v2),
                route,
                n_err: None,
                e_err: None,
            })
        }
    }
}

/// Total created particles, as `N/v^2`.
pub fn total_particles(
    traj: &Trajectory,
    route: Route,
    cfg: &QuadratureConfig,
) -> Result<f64, QuadError> {
    emission_totals(traj, route, cfg).map(|t| t.n_over_v2)
}

/// Total emitted energy, as `E/(hbar kappa v^2)`.
pub fn total_energy(
    traj: &Trajectory,
    route: Route,
    cfg: &QuadratureConfig,
) -> Result<f64, QuadError> {
    emission_totals(traj, route, cfg).map(|t| t.e_over_hkv2)
}
