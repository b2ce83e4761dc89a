//! Time-domain observables and the frequency-space Larmor route.
//!
//! The quantum radiation reaction force `F = -(hbar/6 pi) da/dt` and power
//! `P = hbar a^2/(6 pi)` give the emitted energy by time integration,
//! independently of the Bogolubov pipeline. Parseval's theorem turns the
//! same power into the frequency-space form `E = int (hbar/3 pi) |a_w|^2 dw`
//! and the particle representation `N(w) = (2/(3 pi w)) |a_w|^2`; with
//! `a_w = -w^2 z_w` both reduce to moments of `|z_w|^2`. All quantities here
//! set `hbar = 1`.

use crate::fourier::ft_closed_abs2;
use crate::quad::{half_line_trig, integrate, QuadError, QuadratureConfig, Tail, Trig};
use crate::trajectory::{Parity, Trajectory, TrajectoryKind};

const PI: f64 = core::f64::consts::PI;

/// Instantaneous radiated power and reaction force (hbar = 1).
#[derive(Debug, Clone, Copy)]
pub struct PowerSample {
    pub t: f64,
    /// `a(t)^2 / (6 pi)`, always non-negative
    pub power: f64,
    /// `-(1/6 pi) da/dt`
    pub force: f64,
}

/// Which time-domain identity produces the energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergyMethod {
    /// `E = int P(t) dt`
    PowerIntegral,
    /// `E = int F(t) v(t) dt`
    ForceVelocityIntegral,
}

pub fn power_and_force(traj: &Trajectory, t: f64) -> PowerSample {
    let a = traj.acceleration(t);
    PowerSample {
        t,
        power: a * a / (6.0 * PI),
        force: -traj.jerk(t) / (6.0 * PI),
    }
}

/// Integral over the whole line of `profile(d1) * profile(d2)`, in scaled
/// time x. Tails are handled by the product of the per-derivative tail
/// decompositions, so oscillatory kinds keep full accuracy.
fn profile_moment(
    kind: TrajectoryKind,
    d1: usize,
    d2: usize,
    cfg: &QuadratureConfig,
) -> Result<f64, QuadError> {
    let f = move |x: f64| kind.profile(d1, x) * kind.profile(d2, x);
    let tail = kind.tail(d1).product(&kind.tail(d2));
    // products of matching parity are always even in x
    match kind.parity() {
        Parity::Even | Parity::Odd => {
            let (v, _) = half_line_trig(&f, &tail, 0.0, Trig::Cos, cfg)?;
            Ok(2.0 * v)
        }
        Parity::Neither => {
            let (pos, _) = half_line_trig(&f, &tail, 0.0, Trig::Cos, cfg)?;
            let neg_tail = Tail::Truncate {
                cutoff: kind.neg_cutoff(),
            };
            let (neg, _) = half_line_trig(&|x| f(-x), &neg_tail, 0.0, Trig::Cos, cfg)?;
            Ok(pos + neg)
        }
    }
}

/// Emitted energy by time integration, as `E/(hbar kappa v^2)`.
///
/// Both identities reduce to pure unit-profile moments:
/// `int P dt = (A^2 kappa/6 pi) int phi''^2 dx` and
/// `int F v dt = -(A^2 kappa/6 pi) int phi''' phi' dx`.
pub fn energy_time(
    traj: &Trajectory,
    method: EnergyMethod,
    cfg: &QuadratureConfig,
) -> Result<f64, QuadError> {
    let kind = traj.kind();
    let ratio = traj.amplitude() / traj.v_max();
    let moment = match method {
        EnergyMethod::PowerIntegral => profile_moment(kind, 2, 2, cfg)?,
        EnergyMethod::ForceVelocityIntegral => -profile_moment(kind, 3, 1, cfg)?,
    };
    Ok(ratio * ratio / (6.0 * PI) * moment)
}

/// Net momentum transfer `int F dt`; vanishes for every round trip since
/// the acceleration returns to zero at both ends.
pub fn force_impulse(traj: &Trajectory, cfg: &QuadratureConfig) -> Result<f64, QuadError> {
    let kind = traj.kind();
    let f = move |x: f64| kind.profile(3, x);
    let tail = kind.tail(3);
    let (pos, _) = half_line_trig(&f, &tail, 0.0, Trig::Cos, cfg)?;
    let reflected = move |x: f64| kind.profile(3, -x);
    let neg_tail = match kind.parity() {
        // jerk has the opposite of the position parity
        Parity::Even => tail.scaled(-1.0),
        Parity::Odd => tail.scaled(1.0),
        Parity::Neither => Tail::Truncate {
            cutoff: kind.neg_cutoff(),
        },
    };
    let (neg, _) = half_line_trig(&reflected, &neg_tail, 0.0, Trig::Cos, cfg)?;
    Ok(-(traj.amplitude() * traj.kappa() / (6.0 * PI)) * (pos + neg))
}

/// Frequency-space particle spectrum `N(w) = (2/(3 pi w)) |a_w|^2`
/// with `|a_w|^2 = w^4 |z_w|^2`.
pub fn larmor_spectrum(traj: &Trajectory, omega: f64) -> f64 {
    if omega == 0.0 {
        return 0.0;
    }
    2.0 / (3.0 * PI) * omega.powi(3) * ft_closed_abs2(traj, omega)
}

fn larmor_moment(
    traj: &Trajectory,
    power: i32,
    cfg: &QuadratureConfig,
) -> Result<f64, QuadError> {
    let k = traj.kappa();
    if matches!(
        traj.kind(),
        TrajectoryKind::Sinc | TrajectoryKind::Jinc
    ) {
        let (v, _) = integrate(
            |w| w.powi(power) * ft_closed_abs2(traj, w),
            0.0,
            k,
            cfg,
        )?;
        return Ok(v);
    }
    let (v, _) = integrate(
        |u| {
            if u >= 1.0 - 1e-14 {
                return 0.0;
            }
            let w = k * u / (1.0 - u);
            w.powi(power) * ft_closed_abs2(traj, w) * k / ((1.0 - u) * (1.0 - u))
        },
        0.0,
        1.0,
        cfg,
    )?;
    Ok(v)
}

/// Total particle count `int N(w) dw` (absolute, not divided by v^2).
pub fn larmor_particle_total(
    traj: &Trajectory,
    cfg: &QuadratureConfig,
) -> Result<f64, QuadError> {
    Ok(2.0 / (3.0 * PI) * larmor_moment(traj, 3, cfg)?)
}

/// Total energy `int (1/3 pi) |a_w|^2 dw` (hbar = 1).
pub fn larmor_energy_total(
    traj: &Trajectory,
    cfg: &QuadratureConfig,
) -> Result<f64, QuadError> {
    Ok(1.0 / (3.0 * PI) * larmor_moment(traj, 4, cfg)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bogolubov::{emission_totals, Route};
    use crate::trajectory::AmplitudeMode;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn traj(kind: TrajectoryKind, kappa: f64, v: f64) -> Trajectory {
        Trajectory::new(kind, kappa, v, AmplitudeMode::PaperTableImplied).unwrap()
    }

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn gauss_peak_power() {
        // a(0) = -v kappa e^{1/2}  =>  P(0) = e v^2 kappa^2/(6 pi)
        let t = traj(TrajectoryKind::Gauss, 1.0, 0.2);
        let s = power_and_force(&t, 0.0);
        let expect = core::f64::consts::E * 0.04 / (6.0 * PI);
        assert_relative_eq!(s.power, expect, max_relative = 1e-14);
        assert_relative_eq!(s.power / 0.04, 0.144_21, max_relative = 1e-4);
    }

    #[test]
    fn power_vanishes_asymptotically() {
        // the approach to rest is kind-dependent: exponential for
        // Gauss/Sech, a^2 ~ t^{-8} for the plain algebraic kinds, t^{-7}
        // for Fermi-Dirac, and only t^{-2}/t^{-3} for the oscillatory pair
        for kind in TrajectoryKind::ALL {
            let bound = match kind {
                TrajectoryKind::Sinc | TrajectoryKind::Jinc => 1e-4,
                TrajectoryKind::FermiDirac => 1e-9,
                _ => 1e-10,
            };
            let t = traj(kind, 1.0, 0.2);
            let peak = power_and_force(&t, 0.0)
                .power
                .max(power_and_force(&t, 1.0).power);
            for s in [-50.0, 50.0] {
                let p = power_and_force(&t, s).power;
                assert!(p < bound * 0.04, "{kind:?} at {s}: {p:e}");
                assert!(p < 1e-3 * peak.max(1e-30), "{kind:?} vs peak");
            }
        }
    }

    #[test]
    fn power_even_for_odd_kind() {
        let t = traj(TrajectoryKind::LinearLorentz, 1.0, 0.2);
        for x in [0.3, 1.1, 2.7] {
            assert_relative_eq!(
                power_and_force(&t, x).power,
                power_and_force(&t, -x).power,
                max_relative = 1e-13
            );
        }
    }

    #[test]
    fn lorentz_energy_exact() {
        let t = traj(TrajectoryKind::Lorentz, 1.0, 0.1);
        let e = energy_time(&t, EnergyMethod::PowerIntegral, &cfg()).unwrap();
        assert_relative_eq!(e, 8.0 / 27.0, max_relative = 1e-9);
    }

    #[test]
    fn sech_energy_exact() {
        let t = traj(TrajectoryKind::Sech, 1.0, 0.1);
        let e = energy_time(&t, EnergyMethod::PowerIntegral, &cfg()).unwrap();
        assert_relative_eq!(e, 28.0 / (45.0 * PI), max_relative = 1e-9);
    }

    #[test]
    fn both_methods_agree() {
        for kind in [TrajectoryKind::Gauss, TrajectoryKind::Sinc] {
            let t = traj(kind, 1.0, 0.2);
            let a = energy_time(&t, EnergyMethod::PowerIntegral, &cfg()).unwrap();
            let b = energy_time(&t, EnergyMethod::ForceVelocityIntegral, &cfg()).unwrap();
            assert_relative_eq!(a, b, max_relative = 1e-8);
        }
    }

    #[test]
    fn energy_is_kappa_invariant_ratio() {
        let a = energy_time(
            &traj(TrajectoryKind::QuadLorentz, 1.0, 0.2),
            EnergyMethod::PowerIntegral,
            &cfg(),
        )
        .unwrap();
        let b = energy_time(
            &traj(TrajectoryKind::QuadLorentz, 3.0, 0.2),
            EnergyMethod::PowerIntegral,
            &cfg(),
        )
        .unwrap();
        assert_relative_eq!(a, b, max_relative = 1e-10);
    }

    #[test]
    fn larmor_spectrum_lorentz_closed_form() {
        // N(w) = (64 w^3 v^2/81) e^{-2w} at kappa = 1
        let t = traj(TrajectoryKind::Lorentz, 1.0, 0.2);
        for &w in &[0.3f64, 1.0, 2.5] {
            let expect = 64.0 * w.powi(3) * 0.04 / 81.0 * (-2.0 * w).exp();
            assert_relative_eq!(larmor_spectrum(&t, w), expect, max_relative = 1e-13);
        }
        // and its integral reproduces the total count 8 v^2/27
        let n = larmor_particle_total(&t, &cfg()).unwrap();
        assert_relative_eq!(n / 0.04, 8.0 / 27.0, max_relative = 1e-9);
    }

    #[test]
    fn larmor_spectrum_limits() {
        let t = traj(TrajectoryKind::Gauss, 1.0, 0.2);
        assert_eq!(larmor_spectrum(&t, 0.0), 0.0);
        assert!(larmor_spectrum(&t, 1e-4) < 1e-10);
        let t = traj(TrajectoryKind::Sinc, 1.0, 0.2);
        assert_eq!(larmor_spectrum(&t, 1.2), 0.0);
    }

    #[test]
    fn energy_triple_agreement_spot() {
        for kind in [
            TrajectoryKind::Gauss,
            TrajectoryKind::Lorentz,
            TrajectoryKind::Sinc,
        ] {
            let t = traj(kind, 1.0, 0.1);
            let beta = emission_totals(&t, Route::ClosedForm, &cfg())
                .unwrap()
                .e_over_hkv2;
            let time = energy_time(&t, EnergyMethod::PowerIntegral, &cfg()).unwrap();
            let larmor = larmor_energy_total(&t, &cfg()).unwrap() / 0.01;
            assert_relative_eq!(time, beta, max_relative = 1e-6);
            assert_relative_eq!(larmor, beta, max_relative = 1e-6);
        }
    }

    #[test]
    fn impulse_vanishes() {
        for kind in TrajectoryKind::ALL {
            let t = traj(kind, 1.0, 0.2);
            let i = force_impulse(&t, &cfg()).unwrap();
            assert_abs_diff_eq!(i, 0.0, epsilon = 1e-9 * 0.2);
        }
    }
}
