//! The exact peakon-shaped particle path and the reduction that produces it.
//!
//! Writing `w = exp(int A sin X dt)` turns the vertical equation into
//! `Z = 2 artanh(w)`, and the horizontal one into a second-order ODE for `w`.
//! The substitution `xi^2 = A^2 w^2 - (dw/dt)^2` reduces that to a first-order
//! equation in `xi(w)` with the branch `xi = 0`, i.e. `sin X = +-1`, which
//! gives
//!
//! ```text
//! x(t) = c t + k1,    z(t) = artanh(exp(-|A| |t|)) / (pi delta)
//! ```
//!
//! The path has a vertical asymptote `x = k1` as `t -> 0` and the bed `z = 0`
//! as a horizontal asymptote for `t -> +-inf`.
//!
//! Substituting back shows the vertical equation holds on the branch with
//! `A sin X = -|A| sgn(t)`, while the horizontal one leaves the residual
//! `u - dx/dt = gamma z + (c0 - c)`. The residual evaluators here report
//! that law instead of hiding it.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::particle_dynamics::{derived_constants, DerivedConstants, ParticleState};
use crate::wavefield::{field, WaveParameters};

/// Radicands of `xi^2` this far below zero are treated as roundoff.
pub const XI_RADICAND_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PeakonPathParams {
    /// Horizontal offset; `x = k1` is the vertical asymptote.
    pub k1: f64,
    pub wave: WaveParameters,
    pub consts: DerivedConstants,
}

impl PeakonPathParams {
    pub fn new(wave: WaveParameters, k1: f64) -> Result<Self> {
        let consts = derived_constants(&wave);
        if consts.orbital_rate == 0.0 || !consts.orbital_rate.is_finite() {
            return Err(Error::domain("orbital rate A must be finite and non-zero"));
        }
        if !k1.is_finite() {
            return Err(Error::domain("k1 must be finite"));
        }
        Ok(PeakonPathParams { k1, wave, consts })
    }

    /// Offset that puts the path on the line `A sin X = -|A|`, where the
    /// vertical equation holds for `t > 0`: `k1 = -1/4` for `A > 0`,
    /// `k1 = 1/4` for `A < 0`.
    pub fn aligned(wave: WaveParameters) -> Result<Self> {
        let consts = derived_constants(&wave);
        Self::new(wave, -0.25 * consts.orbital_rate.signum())
    }

    /// The same path shape shifted by half a wavelength. On this line the
    /// vertical equation holds for `t < 0` when `self` is aligned for `t > 0`.
    pub fn mirrored(&self) -> Self {
        PeakonPathParams { k1: self.k1 + 0.5, ..*self }
    }

    fn abs_rate(&self) -> f64 {
        self.consts.orbital_rate.abs()
    }

    /// Constant phase `X = 2 pi k1` of the path in the moving frame.
    pub fn phase(&self) -> f64 {
        2.0 * PI * self.k1
    }
}

fn reject_origin(t: f64) -> Result<()> {
    if t == 0.0 {
        return Err(Error::Singular { what: "vertical asymptote of the analytic path", location: 0.0 });
    }
    if !t.is_finite() {
        return Err(Error::domain(format!("time must be finite, got {t}")));
    }
    Ok(())
}

/// `w(t) = exp(-|A| |t|)`, strictly inside `(0, 1)` for `t != 0`.
pub fn w_of_t(t: f64, p: &PeakonPathParams) -> Result<f64> {
    reject_origin(t)?;
    Ok((-p.abs_rate() * t.abs()).exp())
}

/// `1 - w^2` computed without cancellation near `t = 0`.
fn one_minus_w2(t: f64, p: &PeakonPathParams) -> f64 {
    -(-2.0 * p.abs_rate() * t.abs()).exp_m1()
}

/// `dw/dt = -|A| sgn(t) w`.
pub fn w_rate(t: f64, p: &PeakonPathParams) -> Result<f64> {
    let w = w_of_t(t, p)?;
    Ok(-(p.abs_rate() * w) * t.signum())
}

/// `d^2w/dt^2 = A^2 w` away from the origin.
pub fn w_acceleration(t: f64, p: &PeakonPathParams) -> Result<f64> {
    let w = w_of_t(t, p)?;
    Ok(p.abs_rate() * p.abs_rate() * w)
}

/// Scaled height `Z = 2 artanh(w)` of the path.
pub fn scaled_height(t: f64, p: &PeakonPathParams) -> Result<f64> {
    Ok(2.0 * w_of_t(t, p)?.atanh())
}

/// `sin X` recovered from `w` as `(dw/dt) / (A w)`; `-+1` for `t >< 0`.
pub fn sin_phase_from_w(t: f64, p: &PeakonPathParams) -> Result<f64> {
    Ok(w_rate(t, p)? / (p.consts.orbital_rate * w_of_t(t, p)?))
}

pub fn peakon_path(t: f64, p: &PeakonPathParams) -> Result<ParticleState> {
    let w = w_of_t(t, p)?;
    Ok(ParticleState { x: p.wave.speed() * t + p.k1, z: w.atanh() / (PI * p.wave.delta) })
}

/// Time derivative of [`peakon_path`] from the closed form.
pub fn peakon_path_velocity(t: f64, p: &PeakonPathParams) -> Result<(f64, f64)> {
    let dz = w_rate(t, p)? / one_minus_w2(t, p) / (PI * p.wave.delta);
    Ok((p.wave.speed(), dz))
}

/// `xi = sqrt(A^2 w^2 - (dw/dt)^2)`.
///
/// The radicand is formed as `(|A| w - |w'|)(|A| w + |w'|)` so the `xi = 0`
/// branch evaluates to exactly zero; radicands down to
/// `-XI_RADICAND_SLACK` are clamped.
pub fn xi_of_w(w: f64, dw_dt: f64, consts: &DerivedConstants) -> Result<f64> {
    let aw = consts.orbital_rate.abs() * w.abs();
    let d = dw_dt.abs();
    let radicand = (aw - d) * (aw + d);
    if radicand < -XI_RADICAND_SLACK {
        return Err(Error::domain(format!("xi radicand {radicand} is negative")));
    }
    Ok(radicand.max(0.0).sqrt())
}

/// Left-hand side of the first-order equation for `xi(w)`:
/// `xi xi' + (2w / (1 - w^2)) xi^2 + [2 Omega0 artanh(w) + 2 pi (c0 - c)] xi`.
pub fn xi_equation_residual(w: f64, xi: f64, dxi_dw: f64, p: &PeakonPathParams) -> f64 {
    xi * dxi_dw + 2.0 * w / (1.0 - w * w) * xi * xi + forcing(w, p) * xi
}

fn forcing(w: f64, p: &PeakonPathParams) -> f64 {
    2.0 * p.consts.shear * w.atanh() + 2.0 * PI * (p.wave.c0 - p.wave.speed())
}

/// Residual of the second-order equation for `w`:
///
/// ```text
/// w'' + (2w / (1 - w^2)) w'^2 - A^2 w (1 + w^2) / (1 - w^2)
///     - sqrt(A^2 w^2 - w'^2) [2 Omega0 artanh(w) + 2 pi (c0 - c)]
/// ```
///
/// evaluated with the closed-form derivatives of [`w_of_t`].
pub fn second_order_residual(t: f64, p: &PeakonPathParams) -> Result<f64> {
    let w = w_of_t(t, p)?;
    let dw = w_rate(t, p)?;
    let ddw = w_acceleration(t, p)?;
    let a2 = p.consts.orbital_rate * p.consts.orbital_rate;
    let gap = one_minus_w2(t, p);
    let xi = xi_of_w(w, dw, &p.consts)?;
    Ok(ddw + 2.0 * w / gap * dw * dw - a2 * w * (1.0 + w * w) / gap - xi * forcing(w, p))
}

/// Signed residuals of the path system along the closed-form trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PathResidual {
    /// `u(x(t), z(t), t) - dx/dt`
    pub horizontal: f64,
    /// `v(x(t), z(t), t) - dz/dt`
    pub vertical: f64,
}

/// Substitutes the closed-form path into `dx/dt = u`, `dz/dt = v`.
///
/// On the aligned branch the vertical residual vanishes and the horizontal
/// one equals `gamma z(t) + (c0 - c)`.
pub fn system_residual_of_peakon_path(t: f64, p: &PeakonPathParams) -> Result<PathResidual> {
    let pos = peakon_path(t, p)?;
    let (dx, dz) = peakon_path_velocity(t, p)?;
    let s = field(pos.x, pos.z, t, &p.wave);
    Ok(PathResidual { horizontal: s.u - dx, vertical: s.v - dz })
}

/// Predicted horizontal residual `gamma z(t) + (c0 - c)`.
pub fn horizontal_residual_law(t: f64, p: &PeakonPathParams) -> Result<f64> {
    let z = peakon_path(t, p)?.z;
    Ok(p.wave.gamma * z + (p.wave.c0 - p.wave.speed()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReductionDiagnostics {
    pub times: Vec<f64>,
    pub w: Vec<f64>,
    pub scaled_z: Vec<f64>,
    pub second_order_residual: Vec<f64>,
    pub system_residual: Vec<PathResidual>,
}

impl ReductionDiagnostics {
    pub fn max_second_order_residual(&self) -> f64 {
        self.second_order_residual.iter().fold(0.0, |m, r| m.max(r.abs()))
    }

    pub fn w_in_open_unit_interval(&self) -> bool {
        self.w.iter().all(|&w| w > 0.0 && w < 1.0)
    }
}

/// Evaluates the reduction chain at each time (all must be non-zero).
pub fn reduction_diagnostics(p: &PeakonPathParams, times: &[f64]) -> Result<ReductionDiagnostics> {
    let mut d = ReductionDiagnostics {
        times: times.to_vec(),
        w: Vec::with_capacity(times.len()),
        scaled_z: Vec::with_capacity(times.len()),
        second_order_residual: Vec::with_capacity(times.len()),
        system_residual: Vec::with_capacity(times.len()),
    };
    for &t in times {
        d.w.push(w_of_t(t, p)?);
        d.scaled_z.push(scaled_height(t, p)?);
        d.second_order_residual.push(second_order_residual(t, p)?);
        d.system_residual.push(system_residual_of_peakon_path(t, p)?);
    }
    Ok(d)
}
