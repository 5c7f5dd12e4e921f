//! Particle-path vector fields beneath the linear wave.
//!
//! In physical coordinates a particle obeys `dx/dt = u`, `dz/dt = v`. The
//! moving frame `X = 2 pi (x - c t)`, `Z = 2 pi delta z` makes the system
//! autonomous:
//!
//! ```text
//! dX/dt = A cosh(Z) cos(X) + Omega0 Z + 2 pi (c0 - c)
//! dZ/dt = A sinh(Z) sin(X)
//! ```
//!
//! with `A = 4 pi^2 delta c / sinh(2 pi delta)` and `Omega0 = gamma / delta`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::wavefield::{LinearWave, WaveParameters};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParticleState {
    pub x: f64,
    pub z: f64,
}

/// Position in the frame travelling with the wave.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FramedState {
    /// `X = 2 pi (x - c t)`
    pub phase: f64,
    /// `Z = 2 pi delta z`
    pub scaled_z: f64,
}

impl FramedState {
    /// Negative `Z` is below the bed; allowed, but not physical.
    pub fn is_physical(&self) -> bool {
        self.scaled_z >= 0.0
    }
}

impl From<ParticleState> for [f64; 2] {
    fn from(s: ParticleState) -> Self {
        [s.x, s.z]
    }
}

impl From<[f64; 2]> for ParticleState {
    fn from(s: [f64; 2]) -> Self {
        ParticleState { x: s[0], z: s[1] }
    }
}

impl From<FramedState> for [f64; 2] {
    fn from(s: FramedState) -> Self {
        [s.phase, s.scaled_z]
    }
}

impl From<[f64; 2]> for FramedState {
    fn from(s: [f64; 2]) -> Self {
        FramedState { phase: s[0], scaled_z: s[1] }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedConstants {
    /// `A = 4 pi^2 delta c / sinh(2 pi delta)`; carries the sign of `c`.
    pub orbital_rate: f64,
    /// `Omega0 = gamma / delta`
    pub shear: f64,
}

pub fn derived_constants(params: &WaveParameters) -> DerivedConstants {
    let k = params.wavenumber();
    // 2 pi k / sinh(k), written to stay finite for deep water.
    let scale = 2.0 * PI * k * 2.0 * (-k).exp() / -(-2.0 * k).exp_m1();
    DerivedConstants { orbital_rate: scale * params.speed(), shear: params.gamma / params.delta }
}

pub fn physical_rhs(state: ParticleState, t: f64, params: &WaveParameters) -> (f64, f64) {
    let s = LinearWave::new(params).sample(state.x, state.z, t);
    (s.u, s.v)
}

pub fn framed_rhs(state: FramedState, consts: &DerivedConstants, params: &WaveParameters) -> (f64, f64) {
    let a = consts.orbital_rate;
    let (sx, cx) = state.phase.sin_cos();
    let z = state.scaled_z;
    (
        a * z.cosh() * cx + consts.shear * z + 2.0 * PI * (params.c0 - params.speed()),
        a * z.sinh() * sx,
    )
}

pub fn to_frame(state: ParticleState, t: f64, params: &WaveParameters) -> FramedState {
    FramedState {
        phase: 2.0 * PI * (state.x - params.speed() * t),
        scaled_z: params.wavenumber() * state.z,
    }
}

pub fn from_frame(state: FramedState, t: f64, params: &WaveParameters) -> ParticleState {
    ParticleState {
        x: state.phase / (2.0 * PI) + params.speed() * t,
        z: state.scaled_z / params.wavenumber(),
    }
}

/// Both vector fields for one scenario, with the constants computed once.
#[derive(Debug, Clone, Copy)]
pub struct PathSystem {
    wave: LinearWave,
    consts: DerivedConstants,
    speed: f64,
    drift: f64,
}

impl PathSystem {
    pub fn new(params: &WaveParameters) -> Self {
        PathSystem {
            wave: LinearWave::new(params),
            consts: derived_constants(params),
            speed: params.speed(),
            drift: 2.0 * PI * (params.c0 - params.speed()),
        }
    }

    pub fn params(&self) -> &WaveParameters {
        self.wave.params()
    }

    pub fn constants(&self) -> &DerivedConstants {
        &self.consts
    }

    pub fn speed(&self) -> f64 {
        self.speed
    }

    /// `(dx/dt, dz/dt)` as an ODE right-hand side over `[x, z]`.
    pub fn physical(&self, t: f64, y: [f64; 2]) -> [f64; 2] {
        let s = self.wave.sample(y[0], y[1], t);
        [s.u, s.v]
    }

    /// `(dX/dt, dZ/dt)` over `[X, Z]`; the time argument is ignored.
    pub fn framed(&self, _t: f64, y: [f64; 2]) -> [f64; 2] {
        let a = self.consts.orbital_rate;
        let (sx, cx) = y[0].sin_cos();
        let z = y[1];
        [a * z.cosh() * cx + self.consts.shear * z + self.drift, a * z.sinh() * sx]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wavefield::{field, SpeedBranch};
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn params() -> WaveParameters {
        WaveParameters::new(0.5, 0.3, 0.1, SpeedBranch::Positive).unwrap()
    }

    #[test]
    fn constants_zero_vorticity() {
        let p = WaveParameters::new(0.5, 0.0, 0.0, SpeedBranch::Positive).unwrap();
        assert_eq!(derived_constants(&p).shear, 0.0);
    }

    #[test]
    fn constants_match_extended_precision() {
        // mpmath, 40 digits: 4 pi^2 c(1) / sinh(2 pi)
        let p = WaveParameters::new(1.0, 0.0, 0.0, SpeedBranch::Positive).unwrap();
        assert_abs_diff_eq!(derived_constants(&p).orbital_rate, 0.058_822_989_241_108_059, epsilon = 1e-15);
        let p = WaveParameters::new(0.5, 0.0, 0.0, SpeedBranch::Positive).unwrap();
        assert_abs_diff_eq!(derived_constants(&p).orbital_rate, 0.962_518_762_001_527_25, epsilon = 1e-14);
        let p = WaveParameters::new(1.0, 0.0, 0.0, SpeedBranch::Negative).unwrap();
        assert!(derived_constants(&p).orbital_rate < 0.0);
    }

    #[test]
    fn constants_shallow_limit() {
        let p = WaveParameters::new(1e-4, 0.0, 0.0, SpeedBranch::Positive).unwrap();
        let a = derived_constants(&p).orbital_rate;
        assert!((a - 2.0 * PI * p.speed()).abs() < 1e-6);
    }

    #[test]
    fn deep_water_constants_are_finite() {
        let p = WaveParameters::new(300.0, 0.0, 0.0, SpeedBranch::Positive).unwrap();
        let a = derived_constants(&p).orbital_rate;
        assert!(a.is_finite() && a >= 0.0);
    }

    #[test]
    fn physical_rhs_is_the_velocity_field() {
        let p = params();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let (x, z, t) = (rng.gen_range(-2.0..2.0), rng.gen_range(0.0..1.0), rng.gen_range(-3.0..3.0));
            let s = field(x, z, t, &p);
            assert_eq!(physical_rhs(ParticleState { x, z }, t, &p), (s.u, s.v));
        }
    }

    #[test]
    fn bed_and_crest_line_are_vertically_still() {
        let p = params();
        assert_eq!(physical_rhs(ParticleState { x: 0.3, z: 0.0 }, 1.2, &p).1, 0.0);
        let t = 0.8;
        let (_, dz) = physical_rhs(ParticleState { x: p.speed() * t, z: 0.6 }, t, &p);
        assert_abs_diff_eq!(dz, 0.0, epsilon = 1e-15);
        let consts = derived_constants(&p);
        assert_eq!(framed_rhs(FramedState { phase: 1.1, scaled_z: 0.0 }, &consts, &p).1, 0.0);
    }

    #[test]
    fn framed_rhs_on_quarter_phase() {
        let p = params();
        let consts = derived_constants(&p);
        for &z in &[0.0, 0.5, 2.0] {
            let (dx, _) = framed_rhs(FramedState { phase: PI / 2.0, scaled_z: z }, &consts, &p);
            let expected = consts.shear * z + 2.0 * PI * (p.c0 - p.speed());
            assert_abs_diff_eq!(dx, expected, epsilon = 1e-14);
        }
    }

    #[test]
    fn frame_round_trip() {
        let p = params();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let s = ParticleState { x: rng.gen_range(-2.0..2.0), z: rng.gen_range(-0.5..1.5) };
            let t = rng.gen_range(-3.0..3.0);
            let back = from_frame(to_frame(s, t, &p), t, &p);
            assert_abs_diff_eq!(back.x, s.x, epsilon = 1e-14);
            assert_abs_diff_eq!(back.z, s.z, epsilon = 1e-14);
        }
    }

    #[test]
    fn frame_reference_points() {
        let p = params();
        let f = to_frame(ParticleState { x: 0.0, z: 1.0 }, 0.0, &p);
        assert_eq!(f.phase, 0.0);
        assert_abs_diff_eq!(f.scaled_z, 2.0 * PI * 0.5, epsilon = 1e-15);
        let t = 1.7;
        let f = to_frame(ParticleState { x: p.speed() * t + 0.25, z: 0.2 }, t, &p);
        assert_abs_diff_eq!(f.phase, PI / 2.0, epsilon = 1e-14);
        assert!(!FramedState { phase: 0.0, scaled_z: -0.1 }.is_physical());
    }

    #[test]
    fn frame_conjugacy() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for &branch in &[SpeedBranch::Positive, SpeedBranch::Negative] {
            let p = WaveParameters::new(0.8, -0.4, 0.25, branch).unwrap();
            let consts = derived_constants(&p);
            for _ in 0..100 {
                let s = ParticleState { x: rng.gen_range(-2.0..2.0), z: rng.gen_range(0.0..1.0) };
                let t = rng.gen_range(-3.0..3.0);
                let (dx, dz) = physical_rhs(s, t, &p);
                let (dxf, dzf) = framed_rhs(to_frame(s, t, &p), &consts, &p);
                assert_abs_diff_eq!(dxf, 2.0 * PI * (dx - p.speed()), epsilon = 1e-12);
                assert_abs_diff_eq!(dzf, p.wavenumber() * dz, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn path_system_agrees_with_free_functions() {
        let p = params();
        let sys = PathSystem::new(&p);
        let consts = derived_constants(&p);
        let y = [0.4, 0.9];
        let (a, b) = framed_rhs(y.into(), &consts, &p);
        assert_eq!(sys.framed(123.0, y), [a, b]);
        assert_eq!(sys.framed(0.0, y), sys.framed(-9.0, y));
        let (u, v) = physical_rhs(y.into(), 0.3, &p);
        assert_eq!(sys.physical(0.3, y), [u, v]);
    }
}
