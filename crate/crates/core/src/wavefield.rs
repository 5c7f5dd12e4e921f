//! Linear gravity wave on constant-vorticity water of finite depth.
//!
//! All quantities are non-dimensional: the bed sits at `z = 0`, the
//! undisturbed surface at `z = 1`, one wavelength spans a unit of `x`.
//! The single-mode solution is
//!
//! ```text
//! eta = cos(theta),                     theta = 2 pi (x - c t)
//! u   = (k c / sinh k) cosh(k z) cos(theta) + gamma z + c0
//! v   = (2 pi c / sinh k) sinh(k z) sin(theta)
//! p   = (k c^2 / sinh k) cosh(k z) cos(theta)
//! ```
//!
//! with `k = 2 pi delta` and `c^2 = tanh(k) / k`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sign of the wave speed. The dispersion relation only fixes `c^2`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpeedBranch {
    #[default]
    Positive,
    Negative,
}

impl SpeedBranch {
    pub fn sign(self) -> f64 {
        match self {
            SpeedBranch::Positive => 1.0,
            SpeedBranch::Negative => -1.0,
        }
    }

    pub fn from_sign(sign: f64) -> Result<Self> {
        if sign == 1.0 {
            Ok(SpeedBranch::Positive)
        } else if sign == -1.0 {
            Ok(SpeedBranch::Negative)
        } else {
            Err(Error::usage(format!("speed branch must be +1 or -1, got {sign}")))
        }
    }
}

/// Dimensionless description of one wave scenario.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveParameters {
    /// Shallowness `h0 / lambda`, strictly positive.
    pub delta: f64,
    /// Vorticity group `omega0 sqrt(g h0) / g`.
    pub gamma: f64,
    /// Mean horizontal velocity on the bed.
    pub c0: f64,
    pub speed_branch: SpeedBranch,
}

impl WaveParameters {
    pub fn new(delta: f64, gamma: f64, c0: f64, speed_branch: SpeedBranch) -> Result<Self> {
        if !(delta.is_finite() && delta > 0.0) {
            return Err(Error::domain(format!("delta must be finite and positive, got {delta}")));
        }
        if !gamma.is_finite() || !c0.is_finite() {
            return Err(Error::domain("gamma and c0 must be finite"));
        }
        Ok(WaveParameters { delta, gamma, c0, speed_branch })
    }

    /// Parameters whose bed drift equals the wave speed, `c0 = c`.
    pub fn with_drift_at_speed(delta: f64, gamma: f64, speed_branch: SpeedBranch) -> Result<Self> {
        let c = wave_speed(delta, speed_branch)?;
        Self::new(delta, gamma, c, speed_branch)
    }

    /// Builds the vorticity group from dimensional vorticity `omega0`,
    /// gravity `g` and undisturbed depth `h0`.
    pub fn from_dimensional(
        delta: f64,
        omega0: f64,
        g: f64,
        h0: f64,
        c0: f64,
        speed_branch: SpeedBranch,
    ) -> Result<Self> {
        if !(g > 0.0 && h0 > 0.0) {
            return Err(Error::domain("gravity and depth must be positive"));
        }
        Self::new(delta, omega0 * (g * h0).sqrt() / g, c0, speed_branch)
    }

    pub fn wavenumber(&self) -> f64 {
        2.0 * PI * self.delta
    }

    pub fn speed(&self) -> f64 {
        speed_unchecked(self.delta, self.speed_branch)
    }
}

fn speed_unchecked(delta: f64, branch: SpeedBranch) -> f64 {
    let k = 2.0 * PI * delta;
    branch.sign() * (k.tanh() / k).sqrt()
}

/// Non-dimensional phase speed from the dispersion relation `c^2 = tanh(k)/k`.
pub fn wave_speed(delta: f64, branch: SpeedBranch) -> Result<f64> {
    if !(delta.is_finite() && delta > 0.0) {
        return Err(Error::domain(format!("delta must be finite and positive, got {delta}")));
    }
    Ok(speed_unchecked(delta, branch))
}

/// Surface elevation `cos(2 pi (x - c t))`.
pub fn surface_elevation(x: f64, t: f64, params: &WaveParameters) -> f64 {
    (2.0 * PI * (x - params.speed() * t)).cos()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldSample {
    pub x: f64,
    pub z: f64,
    pub t: f64,
    pub eta: f64,
    pub u: f64,
    pub v: f64,
    pub p: f64,
    /// False when `z` lies outside `[0, 1]`.
    pub in_domain: bool,
}

/// Closed-form partial derivatives of the linear solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldDerivatives {
    pub u_t: f64,
    pub u_x: f64,
    pub u_z: f64,
    pub v_t: f64,
    pub v_x: f64,
    pub v_z: f64,
    pub p_x: f64,
    pub p_z: f64,
    pub eta_t: f64,
}

/// Precomputed evaluator for one scenario.
///
/// `amplitude_speed` scales the velocity and pressure amplitudes while
/// `phase_speed` sets how fast the pattern travels. For a genuine solution
/// both equal `c`; they are kept apart so negative controls can break the
/// solution in a controlled way.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearWave {
    params: WaveParameters,
    k: f64,
    amplitude_speed: f64,
    phase_speed: f64,
}

impl LinearWave {
    pub fn new(params: &WaveParameters) -> Self {
        let c = params.speed();
        LinearWave { params: *params, k: params.wavenumber(), amplitude_speed: c, phase_speed: c }
    }

    /// Same amplitudes, pattern travelling at `c + offset`.
    pub fn with_phase_speed_offset(mut self, offset: f64) -> Self {
        self.phase_speed += offset;
        self
    }

    /// Replaces `c` everywhere (amplitudes and phase) by `c + offset`.
    pub fn with_speed_offset(mut self, offset: f64) -> Self {
        self.amplitude_speed += offset;
        self.phase_speed += offset;
        self
    }

    pub fn params(&self) -> &WaveParameters {
        &self.params
    }

    pub fn phase_speed(&self) -> f64 {
        self.phase_speed
    }

    fn phase(&self, x: f64, t: f64) -> f64 {
        2.0 * PI * (x - self.phase_speed * t)
    }

    // cosh(kz)/sinh(k) and sinh(kz)/sinh(k) without overflow for deep water.
    fn cosh_ratio(&self, z: f64) -> f64 {
        let k = self.k;
        ((k * (z - 1.0)).exp() + (-k * (z + 1.0)).exp()) / -(-2.0 * k).exp_m1()
    }

    fn sinh_ratio(&self, z: f64) -> f64 {
        let k = self.k;
        ((k * (z - 1.0)).exp() - (-k * (z + 1.0)).exp()) / -(-2.0 * k).exp_m1()
    }

    pub fn sample(&self, x: f64, z: f64, t: f64) -> FieldSample {
        let c = self.amplitude_speed;
        let k = self.k;
        let (s, co) = self.phase(x, t).sin_cos();
        let ch = self.cosh_ratio(z);
        let sh = self.sinh_ratio(z);
        FieldSample {
            x,
            z,
            t,
            eta: co,
            u: k * c * ch * co + self.params.gamma * z + self.params.c0,
            v: 2.0 * PI * c * sh * s,
            p: k * c * c * ch * co,
            in_domain: (0.0..=1.0).contains(&z),
        }
    }

    pub fn derivatives(&self, x: f64, z: f64, t: f64) -> FieldDerivatives {
        let c = self.amplitude_speed;
        let cp = self.phase_speed;
        let k = self.k;
        let tau = 2.0 * PI;
        let (s, co) = self.phase(x, t).sin_cos();
        let ch = self.cosh_ratio(z);
        let sh = self.sinh_ratio(z);
        let u_amp = k * c;
        let v_amp = tau * c;
        let p_amp = k * c * c;
        FieldDerivatives {
            u_t: u_amp * ch * s * tau * cp,
            u_x: -u_amp * ch * s * tau,
            u_z: u_amp * k * sh * co + self.params.gamma,
            v_t: -v_amp * sh * co * tau * cp,
            v_x: v_amp * sh * co * tau,
            v_z: v_amp * k * ch * s,
            p_x: -p_amp * ch * s * tau,
            p_z: p_amp * k * sh * co,
            eta_t: tau * cp * s,
        }
    }
}

/// Evaluates surface, velocity and pressure at one point.
pub fn field(x: f64, z: f64, t: f64, params: &WaveParameters) -> FieldSample {
    LinearWave::new(params).sample(x, z, t)
}

pub fn field_derivatives(x: f64, z: f64, t: f64, params: &WaveParameters) -> FieldDerivatives {
    LinearWave::new(params).derivatives(x, z, t)
}

/// Evenly spaced samples over a closed interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Axis {
    pub fn new(min: f64, max: f64, count: usize) -> Self {
        Axis { min, max, count }
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        let step = if self.count > 1 { (self.max - self.min) / (self.count - 1) as f64 } else { 0.0 };
        (0..self.count).map(move |i| if i + 1 == self.count && self.count > 1 { self.max } else { self.min + step * i as f64 })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x: Axis,
    pub z: Axis,
    pub t: Axis,
}

impl GridSpec {
    /// 50 x 50 points on the unit square in `(x, z)`, 5 times spanning two periods.
    pub fn default_for(params: &WaveParameters) -> Self {
        GridSpec {
            x: Axis::new(0.0, 1.0, 50),
            z: Axis::new(0.0, 1.0, 50),
            t: Axis::new(0.0, 2.0 / params.speed().abs(), 5),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.x.count == 0 || self.z.count == 0 || self.t.count == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualEntry {
    pub label: String,
    pub max_abs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub residuals: Vec<ResidualEntry>,
    pub grid: GridSpec,
    pub params: WaveParameters,
}

impl ResidualReport {
    pub fn get(&self, label: &str) -> Option<f64> {
        self.residuals.iter().find(|e| e.label == label).map(|e| e.max_abs)
    }

    /// Largest residual; NaN if any residual is not finite.
    pub fn max(&self) -> f64 {
        self.residuals
            .iter()
            .map(|e| if e.max_abs.is_finite() { e.max_abs } else { f64::NAN })
            .fold(0.0, |acc, r| if acc.is_nan() || r.is_nan() { f64::NAN } else { acc.max(r) })
    }
}

pub const MOMENTUM_X: &str = "momentum_x";
pub const MOMENTUM_Z: &str = "momentum_z";
pub const CONTINUITY: &str = "continuity";
pub const VORTICITY: &str = "vorticity";
pub const KINEMATIC_SURFACE: &str = "kinematic_surface";
pub const DYNAMIC_SURFACE: &str = "dynamic_surface";
pub const BED: &str = "bed";

/// Maximum absolute residuals of the linearized governing system:
///
/// ```text
/// u_t + p_x = 0,  delta^2 v_t + p_z = 0,  u_x + v_z = 0,
/// u_z - delta^2 v_x = gamma,
/// v = eta_t and p = eta on z = 1,  v = 0 on z = 0.
/// ```
pub fn verify_linear_system(params: &WaveParameters, grid: &GridSpec) -> Result<ResidualReport> {
    verify_wave(&LinearWave::new(params), grid)
}

/// As [`verify_linear_system`] for an arbitrary evaluator, e.g. a perturbed one.
pub fn verify_wave(wave: &LinearWave, grid: &GridSpec) -> Result<ResidualReport> {
    if grid.is_empty() {
        return Err(Error::usage("residual grid has no points"));
    }
    let params = wave.params;
    let d2 = params.delta * params.delta;
    let mut maxima = [0.0f64; 7];
    let mut bump = |i: usize, r: f64| {
        let r = r.abs();
        // NaN must stick.
        if !(r <= maxima[i]) {
            maxima[i] = r;
        }
    };

    for t in grid.t.points() {
        for x in grid.x.points() {
            for z in grid.z.points() {
                let d = wave.derivatives(x, z, t);
                bump(0, d.u_t + d.p_x);
                bump(1, d2 * d.v_t + d.p_z);
                bump(2, d.u_x + d.v_z);
                bump(3, d.u_z - d2 * d.v_x - params.gamma);
            }
            let top = wave.sample(x, 1.0, t);
            let top_d = wave.derivatives(x, 1.0, t);
            bump(4, top.v - top_d.eta_t);
            bump(5, top.p - top.eta);
            bump(6, wave.sample(x, 0.0, t).v);
        }
    }

    let labels = [MOMENTUM_X, MOMENTUM_Z, CONTINUITY, VORTICITY, KINEMATIC_SURFACE, DYNAMIC_SURFACE, BED];
    Ok(ResidualReport {
        residuals: labels
            .iter()
            .zip(maxima)
            .map(|(l, m)| ResidualEntry { label: l.to_string(), max_abs: m })
            .collect(),
        grid: *grid,
        params,
    })
}
