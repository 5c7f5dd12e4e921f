//! Camassa-Holm peakons and Degasperis-Procesi shock-peakons.
//!
//! ```text
//! CH: u_t + 2 kappa u_x + 3 u u_x - u_txx = 2 u_x u_xx + u u_xxx
//! DP: u_t + 4 u u_x - u_txx = 3 u_x u_xx + u u_xxx
//! ```
//!
//! Both profiles are only piecewise smooth. Products such as `u_x u_xx` are
//! undefined at the singular point, so verification is split in two: the
//! classical residual on each open half-line, and exact bookkeeping of jumps
//! and Dirac atoms at the singular point.

mod distribution;

pub use distribution::{gaussian, Atom, DistributionalFunction, ExpTerm, SmoothPart};

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChPeakon {
    /// Speed and amplitude.
    pub c: f64,
    /// Linear dispersion constant of the equation; peakons need `kappa = 0`.
    pub kappa: f64,
}

impl ChPeakon {
    pub fn new(c: f64) -> Self {
        ChPeakon { c, kappa: 0.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShockPeakon {
    pub c: f64,
    /// Decay offset, strictly positive.
    pub k: f64,
}

impl ShockPeakon {
    pub fn new(c: f64, k: f64) -> Result<Self> {
        if !(k.is_finite() && k > 0.0) {
            return Err(Error::domain(format!("shock-peakon offset k must be positive, got {k}")));
        }
        if !c.is_finite() {
            return Err(Error::domain("shock-peakon speed must be finite"));
        }
        Ok(ShockPeakon { c, k })
    }
}

/// One-sided limits at a discontinuity of a function or its derivative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JumpReport {
    pub location: f64,
    pub left: f64,
    pub right: f64,
    /// `right - left`
    pub jump: f64,
    pub average: f64,
}

impl JumpReport {
    fn new(location: f64, left: f64, right: f64) -> Self {
        JumpReport { location, left, right, jump: right - left, average: 0.5 * (left + right) }
    }
}

/// Closed-form partial derivatives on one open half-line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OneSidedJet {
    pub u: f64,
    pub u_x: f64,
    pub u_xx: f64,
    pub u_xxx: f64,
    pub u_t: f64,
    pub u_txx: f64,
}

/// Coefficients of `u_t + a u u_x - u_txx - b u_x u_xx - u u_xxx`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EquationCoefficients {
    pub advection: f64,
    pub stretching: f64,
}

pub const CAMASSA_HOLM: EquationCoefficients = EquationCoefficients { advection: 3.0, stretching: 2.0 };
pub const DEGASPERIS_PROCESI: EquationCoefficients = EquationCoefficients { advection: 4.0, stretching: 3.0 };

/// Classical left-hand side of the CH (`kappa = 0`) or DP equation.
pub fn pde_residual(jet: &OneSidedJet, eq: EquationCoefficients) -> f64 {
    jet.u_t + eq.advection * jet.u * jet.u_x - jet.u_txx - eq.stretching * jet.u_x * jet.u_xx - jet.u * jet.u_xxx
}

fn sgn_off(s: f64, what: &'static str, location: f64) -> Result<f64> {
    if s > 0.0 {
        Ok(1.0)
    } else if s < 0.0 {
        Ok(-1.0)
    } else {
        Err(Error::Singular { what, location })
    }
}

/// `u = c exp(-|x - c t|)`
pub fn ch_u(x: f64, t: f64, peakon: &ChPeakon) -> f64 {
    peakon.c * (-(x - peakon.c * t).abs()).exp()
}

/// `u_x = -c sgn(x - c t) exp(-|x - c t|)` off the peak.
pub fn ch_ux(x: f64, t: f64, peakon: &ChPeakon) -> Result<f64> {
    let s = x - peakon.c * t;
    let sign = sgn_off(s, "CH peak", peakon.c * t)?;
    Ok(-peakon.c * sign * (-s.abs()).exp())
}

/// Slope discontinuity at the peak: `+c` from the left, `-c` from the right.
pub fn ch_ux_jump(t: f64, peakon: &ChPeakon) -> JumpReport {
    JumpReport::new(peakon.c * t, peakon.c, -peakon.c)
}

pub fn ch_jet(x: f64, t: f64, peakon: &ChPeakon) -> Result<OneSidedJet> {
    let c = peakon.c;
    let s = x - c * t;
    let sign = sgn_off(s, "CH peak", c * t)?;
    let e = (-s.abs()).exp();
    Ok(OneSidedJet {
        u: c * e,
        u_x: -c * sign * e,
        u_xx: c * e,
        u_xxx: -c * sign * e,
        u_t: c * c * sign * e,
        u_txx: c * c * sign * e,
    })
}

/// The peakon as a piecewise function of `x` at time `t`.
pub fn ch_u_distribution(t: f64, peakon: &ChPeakon) -> DistributionalFunction {
    let c = peakon.c;
    DistributionalFunction::from_smooth(SmoothPart::new(
        c * t,
        vec![ExpTerm { amplitude: c, rate: 1.0 }],
        vec![ExpTerm { amplitude: c, rate: -1.0 }],
    ))
}

/// `u_xx = c exp(-|x - c t|) - 2 c delta(x - c t)`.
pub fn ch_uxx_distribution(t: f64, peakon: &ChPeakon) -> DistributionalFunction {
    ch_u_distribution(t, peakon)
        .derivative()
        .and_then(|d| d.derivative())
        .expect("peakon carries no derivative atoms")
}

/// `m = u - u_xx = 2 c delta(x - c t)`.
pub fn ch_momentum(t: f64, peakon: &ChPeakon) -> DistributionalFunction {
    ch_u_distribution(t, peakon)
        .add_scaled(&ch_uxx_distribution(t, peakon), -1.0)
        .expect("same breakpoint")
}

/// CH residual off the peak. Rejects `kappa != 0`, for which the peakon is
/// not a solution.
pub fn ch_classical_residual(x: f64, t: f64, peakon: &ChPeakon) -> Result<f64> {
    if peakon.kappa != 0.0 {
        return Err(Error::Unsupported(format!("peakon is a CH solution only for kappa = 0, got {}", peakon.kappa)));
    }
    Ok(pde_residual(&ch_jet(x, t, peakon)?, CAMASSA_HOLM))
}

fn check_time(t: f64, sp: &ShockPeakon) -> Result<f64> {
    let tk = t + sp.k;
    if !(tk > 0.0) {
        return Err(Error::domain(format!("shock-peakon needs t + k > 0, got {tk}")));
    }
    Ok(tk)
}

/// `u = c exp(-|x|) - sgn(x) exp(-|x|) / (t + k)` off the jump.
pub fn dp_u(x: f64, t: f64, sp: &ShockPeakon) -> Result<f64> {
    let tk = check_time(t, sp)?;
    let sign = sgn_off(x, "DP shock", 0.0)?;
    Ok((sp.c - sign / tk) * (-x.abs()).exp())
}

/// Jump of `u` itself at `x = 0`: limits `c +- 1/(t+k)`, average `c`.
pub fn dp_jump(t: f64, sp: &ShockPeakon) -> Result<JumpReport> {
    let tk = check_time(t, sp)?;
    let mut r = JumpReport::new(0.0, sp.c + 1.0 / tk, sp.c - 1.0 / tk);
    // Exact by construction rather than by cancellation.
    r.jump = -2.0 / tk;
    r.average = sp.c;
    Ok(r)
}

pub fn dp_jet(x: f64, t: f64, sp: &ShockPeakon) -> Result<OneSidedJet> {
    let tk = check_time(t, sp)?;
    let sign = sgn_off(x, "DP shock", 0.0)?;
    let e = (-x.abs()).exp();
    let f = sp.c - sign / tk;
    let df = sign / (tk * tk);
    Ok(OneSidedJet {
        u: f * e,
        u_x: -sign * f * e,
        u_xx: f * e,
        u_xxx: -sign * f * e,
        u_t: df * e,
        u_txx: df * e,
    })
}

pub fn dp_u_distribution(t: f64, sp: &ShockPeakon) -> Result<DistributionalFunction> {
    let tk = check_time(t, sp)?;
    Ok(DistributionalFunction::from_smooth(SmoothPart::new(
        0.0,
        vec![ExpTerm { amplitude: sp.c + 1.0 / tk, rate: 1.0 }],
        vec![ExpTerm { amplitude: sp.c - 1.0 / tk, rate: -1.0 }],
    )))
}

/// `u_x`: classical slope plus a Dirac atom carrying the jump of `u`.
pub fn dp_ux_distribution(t: f64, sp: &ShockPeakon) -> Result<DistributionalFunction> {
    dp_u_distribution(t, sp)?.derivative()
}

pub fn dp_classical_residual(x: f64, t: f64, sp: &ShockPeakon) -> Result<f64> {
    Ok(pde_residual(&dp_jet(x, t, sp)?, DEGASPERIS_PROCESI))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn ch_peak_and_symmetry() {
        let p = ChPeakon::new(1.5);
        let t = 0.8;
        assert_eq!(ch_u(1.5 * t, t, &p), 1.5);
        for &s in &[0.1, 0.7, 3.0] {
            assert_eq!(ch_u(1.5 * t + s, t, &p), ch_u(1.5 * t - s, t, &p));
        }
        let p = ChPeakon::new(1.0);
        assert_abs_diff_eq!(ch_u(1.0, 0.0, &p), 0.367_879_441_171_442_32, epsilon = 1e-16);
    }

    #[test]
    fn ch_slope() {
        let p = ChPeakon::new(2.0);
        assert!(matches!(ch_ux(2.0, 1.0, &p), Err(Error::Singular { .. })));
        for &x in &[-3.0, 0.5, 1.9, 2.1, 5.0] {
            let ux = ch_ux(x, 1.0, &p).unwrap();
            assert_abs_diff_eq!(ux.abs(), ch_u(x, 1.0, &p), epsilon = 1e-15);
            let h = 1e-6;
            let fd = (ch_u(x + h, 1.0, &p) - ch_u(x - h, 1.0, &p)) / (2.0 * h);
            assert_abs_diff_eq!(ux, fd, epsilon = 1e-8);
        }
    }

    #[test]
    fn ch_slope_jump() {
        let j = ch_ux_jump(0.0, &ChPeakon::new(1.0));
        assert_eq!((j.left, j.right, j.jump, j.average), (1.0, -1.0, -2.0, 0.0));
        let j = ch_ux_jump(2.0, &ChPeakon::new(0.0));
        assert_eq!(j.jump, 0.0);
    }

    #[test]
    fn ch_second_derivative_atoms() {
        let p = ChPeakon::new(1.3);
        let uxx = ch_uxx_distribution(0.5, &p);
        assert_eq!(uxx.dirac, vec![Atom { location: 1.3 * 0.5, coefficient: -2.6 }]);
        assert!(uxx.dirac_derivative.is_empty());
        for &x in &[-1.0, 0.2, 2.0] {
            assert_abs_diff_eq!(uxx.smooth.value(x).unwrap(), ch_u(x, 0.5, &p), epsilon = 1e-15);
        }
    }

    #[test]
    fn ch_momentum_is_a_single_atom() {
        let m = ch_momentum(1.0, &ChPeakon::new(3.0));
        assert!(m.smooth.is_zero());
        assert_eq!(m.dirac, vec![Atom { location: 3.0, coefficient: 6.0 }]);
        assert!(ch_momentum(1.0, &ChPeakon::new(0.0)).is_zero());
        let m2 = ch_momentum(0.0, &ChPeakon::new(2.0));
        let m1 = ch_momentum(0.0, &ChPeakon::new(1.0));
        assert_eq!(m2.dirac[0].coefficient, 2.0 * m1.dirac[0].coefficient);
    }

    #[test]
    fn ch_residual_vanishes_off_peak() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = ChPeakon::new(1.0);
        for _ in 0..100 {
            let (x, t) = (rng.gen_range(-5.0..5.0), rng.gen_range(0.0..5.0));
            assert!(ch_classical_residual(x, t, &p).unwrap().abs() <= 1e-12);
        }
        assert_eq!(ch_classical_residual(0.3, 0.0, &ChPeakon::new(0.0)).unwrap(), 0.0);
        assert!(matches!(ch_classical_residual(0.0, 0.0, &p), Err(Error::Singular { .. })));
        let dispersive = ChPeakon { c: 1.0, kappa: 0.5 };
        assert!(matches!(ch_classical_residual(0.3, 0.0, &dispersive), Err(Error::Unsupported(_))));
    }

    #[test]
    fn ch_jet_matches_finite_differences() {
        let p = ChPeakon::new(-1.7);
        let h = 1e-4;
        let u = |x: f64, t: f64| ch_u(x, t, &p);
        for &(x, t) in &[(0.4, 0.1), (-2.0, 0.3), (1.0, 2.0)] {
            let j = ch_jet(x, t, &p).unwrap();
            let uxx = |x: f64, t: f64| (u(x + h, t) - 2.0 * u(x, t) + u(x - h, t)) / (h * h);
            assert_abs_diff_eq!(j.u_t, (u(x, t + h) - u(x, t - h)) / (2.0 * h), epsilon = 1e-6);
            assert_abs_diff_eq!(j.u_xx, uxx(x, t), epsilon = 1e-6);
            assert_abs_diff_eq!(j.u_txx, (uxx(x, t + h) - uxx(x, t - h)) / (2.0 * h), epsilon = 1e-3);
            assert_abs_diff_eq!(j.u_xxx, (uxx(x + h, t) - uxx(x - h, t)) / (2.0 * h), epsilon = 1e-3);
        }
    }

    #[test]
    fn dp_profile_and_jump() {
        let sp = ShockPeakon::new(0.7, 1.0).unwrap();
        assert!(matches!(dp_u(0.0, 0.0, &sp), Err(Error::Singular { .. })));
        assert!(matches!(dp_u(1.0, -1.0, &sp), Err(Error::Domain(_))));
        assert!(matches!(dp_jump(-2.0, &sp), Err(Error::Domain(_))));
        assert!(ShockPeakon::new(1.0, 0.0).is_err());
        let j = dp_jump(1.0, &sp).unwrap();
        assert_eq!(j.average, 0.7);
        assert_eq!(j.jump, -1.0);
        assert_abs_diff_eq!(j.left, dp_u(-1e-300, 1.0, &sp).unwrap(), epsilon = 1e-15);
        assert_abs_diff_eq!(j.right, dp_u(1e-300, 1.0, &sp).unwrap(), epsilon = 1e-15);
        // doubling t + k halves the jump
        assert_eq!(dp_jump(1.0, &sp).unwrap().jump, 0.5 * dp_jump(0.0, &sp).unwrap().jump);
    }

    #[test]
    fn dp_stationary_shock_is_odd() {
        let sp = ShockPeakon::new(0.0, 2.0).unwrap();
        for &x in &[0.1, 0.9, 4.0] {
            assert_eq!(dp_u(-x, 0.5, &sp).unwrap(), -dp_u(x, 0.5, &sp).unwrap());
        }
    }

    #[test]
    fn dp_residual_vanishes_off_jump() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let sp = ShockPeakon::new(rng.gen_range(-5.0..5.0), rng.gen_range(0.01..5.0)).unwrap();
            let (x, t) = (rng.gen_range(-5.0..5.0), rng.gen_range(0.0..5.0));
            assert!(dp_classical_residual(x, t, &sp).unwrap().abs() <= 1e-12);
        }
        assert!(dp_classical_residual(0.0, 1.0, &ShockPeakon::new(1.0, 1.0).unwrap()).is_err());
    }

    #[test]
    fn dp_slope_carries_jump_atom() {
        let sp = ShockPeakon::new(0.5, 1.0).unwrap();
        let ux = dp_ux_distribution(1.0, &sp).unwrap();
        assert_eq!(ux.dirac, vec![Atom { location: 0.0, coefficient: -1.0 }]);
    }
}
