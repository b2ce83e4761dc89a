//! Fourier transforms of the worldlines.
//!
//! Convention: `z_w = (1/sqrt(2 pi)) int z(t) e^{-i w t} dt`, evaluated per
//! frequency (no FFT grids). Every catalog kind has a registered closed
//! form; the numeric route integrates the scaled unit profile with the
//! oscillatory engine from [`crate::quad`], so the two can cross-validate
//! each other. The thermal identities satisfied by the Lambert-chain
//! profiles are checked here as well.

use num_complex::Complex64;
use thiserror::Error;

use crate::quad::{half_line_trig, QuadError, Tail, Trig};
use crate::trajectory::{Parity, Trajectory, TrajectoryKind};

pub use crate::quad::{QuadratureConfig, TailPolicy};

const PI: f64 = core::f64::consts::PI;
const SQRT_2PI: f64 = 2.506_628_274_631_000_7;

/// A single transform evaluation.
#[derive(Debug, Clone, Copy)]
pub struct FourierValue {
    /// frequency (1/time), non-negative
    pub omega: f64,
    /// transform value (time^2). For the Bose-Einstein and Fermi-Dirac
    /// kinds the closed form fixes only the modulus; `ft_closed` then
    /// reports the non-negative modulus with zero phase.
    pub value: Complex64,
    pub method: FtMethod,
}

impl FourierValue {
    pub fn abs2(&self) -> f64 {
        self.value.norm_sqr()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FtMethod {
    ClosedForm,
    NumericQuadrature,
}

/// Which thermal factor a transform identity carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Statistics {
    Bose,
    Fermi,
}

#[derive(Debug, Error)]
pub enum FourierError {
    #[error("thermal identity holds distributionally only for n >= 2; got n = {0}")]
    ThermalOrder(u32),
    #[error(transparent)]
    Quad(#[from] QuadError),
}

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

/// Unit-profile transform `psi(nu) = F[phi](nu)`, so that
/// `z_w = (A/kappa^2) psi(w/kappa)`.
fn psi_closed(kind: TrajectoryKind, nu: f64) -> Complex64 {
    match kind {
        TrajectoryKind::Gauss => Complex64::new((0.5 * (1.0 - nu * nu)).exp(), 0.0),
        TrajectoryKind::Lorentz => Complex64::new(
            8.0 / (3.0 * 3.0f64.sqrt()) * (PI / 2.0).sqrt() * (-nu).exp(),
            0.0,
        ),
        TrajectoryKind::Sech => {
            let s = 1.0 / (0.5 * PI * nu).cosh();
            Complex64::new(SQRT_2PI * s, 0.0)
        }
        TrajectoryKind::Sinc => {
            // value 0 on the measure-zero point nu = 1 as well
            if nu < 1.0 {
                Complex64::new((PI / 2.0).sqrt(), 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }
        TrajectoryKind::Jinc => {
            if nu < 1.0 {
                Complex64::new((2.0 / PI).sqrt() * (1.0 - nu * nu).sqrt(), 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }
        TrajectoryKind::QuadLorentz => {
            let a = nu / 2.0f64.sqrt();
            Complex64::new(0.5 * PI.sqrt() * (-a).exp() * (a.cos() - a.sin()), 0.0)
        }
        TrajectoryKind::LinearLorentz => {
            if nu == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::new(0.0, -(PI / 2.0).sqrt() * (-nu).exp())
            }
        }
        TrajectoryKind::BoseEinstein => {
            Complex64::new(thermal_psi_abs2(Statistics::Bose, 2, nu).sqrt(), 0.0)
        }
        TrajectoryKind::FermiDirac => {
            Complex64::new(thermal_psi_abs2(Statistics::Fermi, 2, nu).sqrt(), 0.0)
        }
    }
}

/// `nu^{2n-3} / (e^{2 pi nu} -/+ 1)`, the thermal transform modulus squared.
fn thermal_psi_abs2(stat: Statistics, n: u32, nu: f64) -> f64 {
    let p = 2 * n as i32 - 3;
    match stat {
        Statistics::Bose => {
            if nu == 0.0 {
                // nu / expm1(2 pi nu) -> 1/(2 pi); higher n vanish
                if p == 1 {
                    1.0 / (2.0 * PI)
                } else {
                    0.0
                }
            } else {
                nu.powi(p) / (2.0 * PI * nu).exp_m1()
            }
        }
        Statistics::Fermi => {
            if nu == 0.0 {
                0.0
            } else {
                nu.powi(p) / ((2.0 * PI * nu).exp() + 1.0)
            }
        }
    }
}

/// Analytic transform of the worldline at frequency `omega >= 0`.
pub fn ft_closed(traj: &Trajectory, omega: f64) -> FourierValue {
    let nu = omega / traj.kappa();
    let scale = traj.amplitude() / (traj.kappa() * traj.kappa());
    FourierValue {
        omega,
        value: psi_closed(traj.kind(), nu) * scale,
        method: FtMethod::ClosedForm,
    }
}

/// `|z_w|^2` from the closed form; the quantity the particle pipeline uses.
pub fn ft_closed_abs2(traj: &Trajectory, omega: f64) -> f64 {
    let nu = omega / traj.kappa();
    let s = traj.amplitude() / (traj.kappa() * traj.kappa());
    let s2 = s * s;
    match traj.kind() {
        TrajectoryKind::BoseEinstein => s2 * thermal_psi_abs2(Statistics::Bose, 2, nu),
        TrajectoryKind::FermiDirac => s2 * thermal_psi_abs2(Statistics::Fermi, 2, nu),
        kind => s2 * psi_closed(kind, nu).norm_sqr(),
    }
}

// ---------------------------------------------------------------------------
// Numeric transforms
// ---------------------------------------------------------------------------

/// A function of the scaled time x with enough tail/parity structure to be
/// transformed over the whole real line.
pub(crate) struct ProfileSpec<'a> {
    pub f: Box<dyn Fn(f64) -> f64 + 'a>,
    pub pos_tail: Tail,
    pub parity: Parity,
    /// head window for the exponentially decaying negative side
    /// (`Parity::Neither` only)
    pub neg_cutoff: f64,
}

/// `int_{-inf}^{inf} f(x) e^{-i nu x} dx` (no 1/sqrt(2 pi)).
pub(crate) fn transform_profile(
    spec: &ProfileSpec,
    nu: f64,
    cfg: &QuadratureConfig,
) -> Result<(Complex64, f64), QuadError> {
    match spec.parity {
        Parity::Even => {
            let (c, e) = half_line_trig(&spec.f, &spec.pos_tail, nu, Trig::Cos, cfg)?;
            Ok((Complex64::new(2.0 * c, 0.0), 2.0 * e))
        }
        Parity::Odd => {
            let (s, e) = half_line_trig(&spec.f, &spec.pos_tail, nu, Trig::Sin, cfg)?;
            Ok((Complex64::new(0.0, -2.0 * s), 2.0 * e))
        }
        Parity::Neither => {
            let (cp, e1) = half_line_trig(&spec.f, &spec.pos_tail, nu, Trig::Cos, cfg)?;
            let (sp, e2) = half_line_trig(&spec.f, &spec.pos_tail, nu, Trig::Sin, cfg)?;
            let reflected = |x: f64| (spec.f)(-x);
            let neg_tail = Tail::Truncate {
                cutoff: spec.neg_cutoff,
            };
            let (cm, e3) = half_line_trig(&reflected, &neg_tail, nu, Trig::Cos, cfg)?;
            let (sm, e4) = half_line_trig(&reflected, &neg_tail, nu, Trig::Sin, cfg)?;
            Ok((
                Complex64::new(cp + cm, sm - sp),
                e1 + e2 + e3 + e4,
            ))
        }
    }
}

fn kind_profile_spec(kind: TrajectoryKind, deriv: usize) -> ProfileSpec<'static> {
    ProfileSpec {
        f: Box::new(move |x| kind.profile(deriv, x)),
        pos_tail: kind.tail(deriv),
        parity: match (kind.parity(), deriv % 2) {
            (p, 0) => p,
            (Parity::Even, _) => Parity::Odd,
            (Parity::Odd, _) => Parity::Even,
            (Parity::Neither, _) => Parity::Neither,
        },
        neg_cutoff: kind.neg_cutoff(),
    }
}

/// Numeric transform of the worldline itself.
pub fn ft_numeric(
    traj: &Trajectory,
    omega: f64,
    cfg: &QuadratureConfig,
) -> Result<FourierValue, QuadError> {
    ft_numeric_deriv(traj, 0, omega, cfg)
}

/// Numeric transform of the k-th time derivative of the worldline, k <= 3.
pub fn ft_numeric_deriv(
    traj: &Trajectory,
    deriv: usize,
    omega: f64,
    cfg: &QuadratureConfig,
) -> Result<FourierValue, QuadError> {
    assert!(deriv <= 3);
    let kappa = traj.kappa();
    let nu = omega / kappa;
    let spec = kind_profile_spec(traj.kind(), deriv);
    let (raw, _err) = transform_profile(&spec, nu, cfg)?;
    let scale = traj.amplitude() * kappa.powi(deriv as i32 - 2) / SQRT_2PI;
    Ok(FourierValue {
        omega,
        value: raw * scale,
        method: FtMethod::NumericQuadrature,
    })
}

/// Numeric transform of the pointwise power `z(t)^n`.
pub fn ft_power_numeric(
    traj: &Trajectory,
    n: u32,
    omega: f64,
    cfg: &QuadratureConfig,
) -> Result<FourierValue, QuadError> {
    assert!(n >= 1);
    let kind = traj.kind();
    let kappa = traj.kappa();
    let nu = omega / kappa;
    let spec = ProfileSpec {
        f: Box::new(move |x| kind.profile(0, x).powi(n as i32)),
        pos_tail: kind.tail(0).power(n),
        parity: match (kind.parity(), n % 2) {
            (Parity::Even, _) => Parity::Even,
            (Parity::Odd, 0) => Parity::Even,
            (Parity::Odd, _) => Parity::Odd,
            (Parity::Neither, _) => Parity::Neither,
        },
        neg_cutoff: kind.neg_cutoff(),
    };
    let (raw, _err) = transform_profile(&spec, nu, cfg)?;
    let scale = (traj.amplitude() / kappa).powi(n as i32) / (kappa * SQRT_2PI);
    Ok(FourierValue {
        omega,
        value: raw * scale,
        method: FtMethod::NumericQuadrature,
    })
}

// ---------------------------------------------------------------------------
// Thermal transform identities
// ---------------------------------------------------------------------------

/// Numerically Fourier-transforms the n-th derivative of the generating
/// function (`W(e^t)` for Bose, `2 sqrt(W(e^t))` for Fermi) and compares
/// `|.|^2` against `w^{2n-3}/(e^{2 pi w} -/+ 1)`. Returns the worst
/// relative error over the grid.
///
/// Restricted to n in {2, 3}: lower derivatives are not absolutely
/// integrable, so their transforms exist only distributionally.
pub fn thermal_identity_check(
    stat: Statistics,
    n: u32,
    omega_grid: &[f64],
    cfg: &QuadratureConfig,
) -> Result<f64, FourierError> {
    if !(2..=3).contains(&n) {
        return Err(FourierError::ThermalOrder(n));
    }
    let kind = match stat {
        Statistics::Bose => TrajectoryKind::BoseEinstein,
        Statistics::Fermi => TrajectoryKind::FermiDirac,
    };
    // the catalog profiles are exactly the second derivatives of the
    // generating functions, so derivative order n maps to profile order n-2
    let spec = kind_profile_spec(kind, (n - 2) as usize);
    let strict = QuadratureConfig {
        rel_tol: cfg.rel_tol.min(1e-13),
        abs_tol: cfg.abs_tol.min(1e-15),
        max_segments: cfg.max_segments.max(32768),
        tail_policy: cfg.tail_policy,
    };
    let mut worst: f64 = 0.0;
    for &omega in omega_grid {
        let (raw, _) = transform_profile(&spec, omega, &strict)?;
        let got = (raw / SQRT_2PI).norm_sqr();
        let target = thermal_psi_abs2(stat, n, omega);
        worst = worst.max((got - target).abs() / target);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trajectory::AmplitudeMode;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn traj(kind: TrajectoryKind, kappa: f64, v: f64) -> Trajectory {
        Trajectory::new(kind, kappa, v, AmplitudeMode::PaperTableImplied).unwrap()
    }

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn closed_form_spot_values() {
        // Gaussian transform is Gaussian: at w = kappa the exponent cancels
        let t = traj(TrajectoryKind::Gauss, 1.0, 0.2);
        let z = ft_closed(&t, 1.0);
        assert_abs_diff_eq!(z.value.re, 0.2, epsilon = 1e-15);
        assert_abs_diff_eq!(z.value.im, 0.0, epsilon = 0.0);
        // sech transform at zero frequency
        let t = traj(TrajectoryKind::Sech, 1.0, 0.3);
        assert_abs_diff_eq!(ft_closed(&t, 0.0).value.re, 0.751_99, epsilon = 1e-5);
        // hard UV cutoffs
        let t = traj(TrajectoryKind::Sinc, 1.0, 0.2);
        assert_eq!(ft_closed(&t, 1.5).value.norm(), 0.0);
        assert_eq!(ft_closed(&t, 1.0).value.norm(), 0.0);
        let t = traj(TrajectoryKind::Jinc, 1.0, 0.2);
        assert_eq!(ft_closed(&t, 1.0).value.norm(), 0.0);
        // Bose modulus at w = kappa: J^2/(e^{2 pi} - 1)
        let t = traj(TrajectoryKind::BoseEinstein, 1.0, 0.2);
        let j2 = t.amplitude() * t.amplitude();
        let expect = j2 / (2.0 * PI).exp_m1();
        assert_relative_eq!(ft_closed_abs2(&t, 1.0), expect, max_relative = 1e-14);
        assert_relative_eq!(
            ft_closed_abs2(&t, 1.0) / j2,
            1.870_94e-3,
            max_relative = 1e-5
        );
    }

    #[test]
    fn numeric_matches_closed_all_kinds() {
        let cfg = cfg();
        for kind in TrajectoryKind::ALL {
            let t = traj(kind, 1.0, 0.2);
            // keep clear of the sinc/jinc cutoff point
            for &nu in &[0.1f64, 0.45, 0.8, 1.6, 2.9, 5.0] {
                if matches!(kind, TrajectoryKind::Sinc | TrajectoryKind::Jinc)
                    && (nu - 1.0).abs() < 0.05
                {
                    continue;
                }
                let closed = ft_closed(&t, nu);
                let numeric = ft_numeric(&t, nu, &cfg).unwrap();
                let scale = ft_closed(&t, 0.0).value.norm().max(closed.value.norm());
                let closed_abs = closed.value.norm();
                let numeric_abs = numeric.value.norm();
                assert!(
                    (closed_abs - numeric_abs).abs() <= 1e-7 * scale.max(1e-12),
                    "{kind:?} nu={nu}: closed {closed_abs:e} numeric {numeric_abs:e}"
                );
            }
        }
    }

    #[test]
    fn numeric_phase_matches_closed_for_analytic_kinds() {
        let cfg = cfg();
        for kind in [
            TrajectoryKind::Gauss,
            TrajectoryKind::Lorentz,
            TrajectoryKind::Sech,
            TrajectoryKind::QuadLorentz,
            TrajectoryKind::LinearLorentz,
        ] {
            let t = traj(kind, 2.0, 0.15);
            for &omega in &[0.3, 1.1, 3.7] {
                let c = ft_closed(&t, omega).value;
                let n = ft_numeric(&t, omega, &cfg).unwrap().value;
                assert!(
                    (c - n).norm() <= 1e-9 * c.norm().max(1e-10),
                    "{kind:?} w={omega}: {c} vs {n}"
                );
            }
        }
    }

    #[test]
    fn conjugate_symmetry_via_parity() {
        // real z(t): even kinds give purely real transforms, odd kinds
        // purely imaginary ones
        let cfg = cfg();
        for kind in TrajectoryKind::ALL {
            if kind.parity() == Parity::Neither {
                continue;
            }
            let t = traj(kind, 1.0, 0.2);
            for &omega in &[0.4, 1.7] {
                let z = ft_numeric(&t, omega, &cfg).unwrap().value;
                match kind.parity() {
                    Parity::Even => assert!(
                        z.im.abs() <= 1e-10 * z.norm().max(1e-12),
                        "{kind:?}: {z}"
                    ),
                    Parity::Odd => assert!(
                        z.re.abs() <= 1e-10 * z.norm().max(1e-12),
                        "{kind:?}: {z}"
                    ),
                    Parity::Neither => unreachable!(),
                }
            }
        }
    }

    #[test]
    fn odd_kind_zero_frequency_vanishes() {
        let t = traj(TrajectoryKind::LinearLorentz, 1.0, 0.2);
        let z = ft_numeric(&t, 0.0, &cfg()).unwrap();
        assert_abs_diff_eq!(z.value.norm(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn uv_cutoff_numeric_suppression() {
        let cfg = cfg();
        for kind in [TrajectoryKind::Sinc, TrajectoryKind::Jinc] {
            let t = traj(kind, 1.0, 0.2);
            let z0 = ft_numeric(&t, 0.0, &cfg).unwrap().value.norm();
            for &omega in &[1.05, 2.0] {
                let z = ft_numeric(&t, omega, &cfg).unwrap().value.norm();
                assert!(z < 1e-6 * z0, "{kind:?} w={omega}: {z:e} vs z0={z0:e}");
            }
        }
    }

    #[test]
    fn derivative_rule() {
        // F[zdot](w) = i w z_w  =>  |F[zdot]|^2 = w^2 |z_w|^2
        let cfg = cfg();
        for kind in TrajectoryKind::ALL {
            let t = traj(kind, 1.0, 0.2);
            for &omega in &[0.3, 1.0, 3.0] {
                if matches!(kind, TrajectoryKind::Sinc | TrajectoryKind::Jinc) && omega == 1.0 {
                    continue;
                }
                let z = ft_numeric(&t, omega, &cfg).unwrap().abs2();
                let zd = ft_numeric_deriv(&t, 1, omega, &cfg).unwrap().abs2();
                assert_relative_eq!(
                    zd,
                    omega * omega * z,
                    max_relative = 1e-8,
                    epsilon = 1e-18
                );
            }
        }
    }

    #[test]
    fn kappa_scaling_of_transform() {
        // z_w carries 1/kappa^2 against nu = w/kappa
        let cfg = cfg();
        let t1 = traj(TrajectoryKind::Lorentz, 1.0, 0.2);
        let t2 = traj(TrajectoryKind::Lorentz, 2.0, 0.2);
        let a = ft_numeric(&t1, 0.7, &cfg).unwrap().value.norm();
        let b = ft_numeric(&t2, 1.4, &cfg).unwrap().value.norm();
        assert_relative_eq!(a, 4.0 * b, max_relative = 1e-10);
    }

    #[test]
    fn power_transform_reduces_to_plain() {
        let cfg = cfg();
        let t = traj(TrajectoryKind::Gauss, 1.0, 0.3);
        for &omega in &[0.0, 0.9, 2.2] {
            let a = ft_numeric(&t, omega, &cfg).unwrap().value;
            let b = ft_power_numeric(&t, 1, omega, &cfg).unwrap().value;
            assert!((a - b).norm() <= 1e-12 * a.norm().max(1e-12));
        }
        // Gaussian square has a closed transform: z^2 = v^2 e^{1 - x^2},
        // F = v^2 e^1 e^{-w^2/4} / sqrt(2)
        let z2 = ft_power_numeric(&t, 2, 1.3, &cfg).unwrap().value;
        let exact = 0.09 * 1.0f64.exp() * (-1.3f64 * 1.3 / 4.0).exp() / 2.0f64.sqrt();
        assert_relative_eq!(z2.re, exact, max_relative = 1e-10);
    }

    #[test]
    fn thermal_identities_spot_values() {
        let cfg = cfg();
        let grid = [1.0];
        let err = thermal_identity_check(Statistics::Bose, 2, &grid, &cfg).unwrap();
        assert!(err < 1e-6, "bose n=2: {err:e}");
        let err = thermal_identity_check(Statistics::Fermi, 2, &grid, &cfg).unwrap();
        assert!(err < 1e-6, "fermi n=2: {err:e}");
        let err = thermal_identity_check(Statistics::Bose, 3, &[0.5], &cfg).unwrap();
        assert!(err < 1e-6, "bose n=3: {err:e}");
        // and the target values themselves
        assert_relative_eq!(
            thermal_psi_abs2(Statistics::Bose, 2, 1.0),
            1.0 / ((2.0 * PI).exp() - 1.0),
            max_relative = 1e-15
        );
        assert_relative_eq!(
            thermal_psi_abs2(Statistics::Fermi, 2, 1.0),
            1.863_97e-3,
            max_relative = 1e-5
        );
        assert_relative_eq!(
            thermal_psi_abs2(Statistics::Bose, 3, 0.5),
            5.645_7e-3,
            max_relative = 1e-4
        );
    }

    #[test]
    fn thermal_identity_rejects_low_order() {
        let r = thermal_identity_check(Statistics::Bose, 1, &[1.0], &cfg());
        assert!(matches!(r, Err(FourierError::ThermalOrder(1))));
    }
}
