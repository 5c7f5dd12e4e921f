//! Flat `key = value` scenario files.
//!
//! Blank lines and lines starting with `#` are ignored. Every key has a
//! default; command-line `--set key=value` overrides are applied after the
//! file.

use std::f64::consts::PI;

use wavepaths::analytic_paths::PeakonPathParams;
use wavepaths::ode::{IntegratorConfig, Method};
use wavepaths::wavefield::{wave_speed, SpeedBranch, WaveParameters};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Drift {
    /// `c0` tracks the wave speed.
    AtSpeed,
    Value(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Offset {
    /// Put the path on the branch where the vertical equation holds for `t > 0`.
    Aligned,
    Value(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frame {
    Physical,
    Framed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Start {
    Point,
    Analytic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeakonKind {
    Ch,
    Dp,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub delta: f64,
    pub gamma: f64,
    pub c0: Drift,
    pub branch: SpeedBranch,

    pub k1: Offset,
    pub t_max: f64,
    pub gap: f64,
    pub samples: usize,

    pub x0: f64,
    pub z0: f64,
    pub t0: f64,
    pub t_end: f64,
    pub frame: Frame,
    pub start: Start,
    pub method: Method,
    pub step: f64,
    pub atol: f64,
    pub rtol: f64,
    pub max_steps: usize,
    /// Blow-up guard on the framed height `Z`.
    pub cap: f64,
    pub min_step: f64,

    pub x_min: f64,
    pub x_max: f64,
    pub nx: usize,
    pub z_min: f64,
    pub z_max: f64,
    pub nz: usize,
    pub time_min: f64,
    pub time_max: f64,
    pub nt: usize,

    pub phase_min: f64,
    pub phase_max: f64,
    pub nphase: usize,
    pub height_min: f64,
    pub height_max: f64,
    pub nheight: usize,
    pub arrow_scale: f64,

    pub kind: PeakonKind,
    pub speed: f64,
    pub shock_k: f64,
    pub peakon_t: f64,
    pub px_min: f64,
    pub px_max: f64,
    pub npx: usize,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            delta: 0.5,
            gamma: 0.0,
            c0: Drift::AtSpeed,
            branch: SpeedBranch::Positive,
            k1: Offset::Value(0.0),
            t_max: 5.0,
            gap: 1e-3,
            samples: 200,
            x0: 0.1,
            z0: 0.5,
            t0: 0.0,
            t_end: 5.0,
            frame: Frame::Physical,
            start: Start::Point,
            method: Method::DormandPrince45,
            step: 1e-2,
            atol: 1e-10,
            rtol: 1e-10,
            max_steps: 1_000_000,
            cap: 50.0,
            min_step: 1e-14,
            x_min: 0.0,
            x_max: 1.0,
            nx: 11,
            z_min: 0.0,
            z_max: 1.0,
            nz: 6,
            time_min: 0.0,
            time_max: 0.0,
            nt: 1,
            phase_min: -PI,
            phase_max: PI,
            nphase: 25,
            height_min: 0.0,
            height_max: 3.0,
            nheight: 13,
            arrow_scale: 0.05,
            kind: PeakonKind::Ch,
            speed: 1.0,
            shock_k: 1.0,
            peakon_t: 0.0,
            px_min: -5.0,
            px_max: 5.0,
            npx: 201,
        }
    }
}

fn num(key: &str, value: &str) -> Result<f64, CliError> {
    let v: f64 = value.parse().map_err(|_| CliError::Usage(format!("{key}: expected a number, got {value:?}")))?;
    if !v.is_finite() {
        return Err(CliError::Usage(format!("{key}: value must be finite")));
    }
    Ok(v)
}

fn count(key: &str, value: &str) -> Result<usize, CliError> {
    value.parse().map_err(|_| CliError::Usage(format!("{key}: expected a non-negative integer, got {value:?}")))
}

impl ScenarioConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg = ScenarioConfig::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected key = value", i + 1)))?;
            cfg.set(k.trim(), v.trim())?;
        }
        Ok(cfg)
    }

    pub fn apply_override(&mut self, assignment: &str) -> Result<(), CliError> {
        let (k, v) = assignment
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("override {assignment:?}: expected key=value")))?;
        self.set(k.trim(), v.trim())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        match key {
            "delta" => self.delta = num(key, value)?,
            "gamma" => self.gamma = num(key, value)?,
            "c0" => self.c0 = if value == "c" { Drift::AtSpeed } else { Drift::Value(num(key, value)?) },
            "branch" => {
                self.branch = match value {
                    "+1" | "1" | "positive" => SpeedBranch::Positive,
                    "-1" | "negative" => SpeedBranch::Negative,
                    _ => return Err(CliError::Usage(format!("branch: expected +1 or -1, got {value:?}"))),
                }
            }
            "k1" => self.k1 = if value == "aligned" { Offset::Aligned } else { Offset::Value(num(key, value)?) },
            "t_max" => self.t_max = num(key, value)?,
            "gap" => self.gap = num(key, value)?,
            "samples" => self.samples = count(key, value)?,
            "x0" => self.x0 = num(key, value)?,
            "z0" => self.z0 = num(key, value)?,
            "t0" => self.t0 = num(key, value)?,
            "t_end" => self.t_end = num(key, value)?,
            "frame" => {
                self.frame = match value {
                    "physical" => Frame::Physical,
                    "framed" => Frame::Framed,
                    _ => return Err(CliError::Usage(format!("frame: expected physical or framed, got {value:?}"))),
                }
            }
            "start" => {
                self.start = match value {
                    "point" => Start::Point,
                    "analytic" => Start::Analytic,
                    _ => return Err(CliError::Usage(format!("start: expected point or analytic, got {value:?}"))),
                }
            }
            "method" => {
                self.method = match value {
                    "rk4" => Method::Rk4,
                    "dopri45" => Method::DormandPrince45,
                    _ => return Err(CliError::Usage(format!("method: expected rk4 or dopri45, got {value:?}"))),
                }
            }
            "step" => self.step = num(key, value)?,
            "atol" => self.atol = num(key, value)?,
            "rtol" => self.rtol = num(key, value)?,
            "max_steps" => self.max_steps = count(key, value)?,
            "cap" => self.cap = num(key, value)?,
            "min_step" => self.min_step = num(key, value)?,
            "x_min" => self.x_min = num(key, value)?,
            "x_max" => self.x_max = num(key, value)?,
            "nx" => self.nx = count(key, value)?,
            "z_min" => self.z_min = num(key, value)?,
            "z_max" => self.z_max = num(key, value)?,
            "nz" => self.nz = count(key, value)?,
            "time_min" => self.time_min = num(key, value)?,
            "time_max" => self.time_max = num(key, value)?,
            "nt" => self.nt = count(key, value)?,
            "phase_min" => self.phase_min = num(key, value)?,
            "phase_max" => self.phase_max = num(key, value)?,
            "nphase" => self.nphase = count(key, value)?,
            "height_min" => self.height_min = num(key, value)?,
            "height_max" => self.height_max = num(key, value)?,
            "nheight" => self.nheight = count(key, value)?,
            "arrow_scale" => self.arrow_scale = num(key, value)?,
            "kind" => {
                self.kind = match value {
                    "ch" => PeakonKind::Ch,
                    "dp" => PeakonKind::Dp,
                    _ => return Err(CliError::Usage(format!("kind: expected ch or dp, got {value:?}"))),
                }
            }
            "speed" => self.speed = num(key, value)?,
            "shock_k" => self.shock_k = num(key, value)?,
            "peakon_t" => self.peakon_t = num(key, value)?,
            "px_min" => self.px_min = num(key, value)?,
            "px_max" => self.px_max = num(key, value)?,
            "npx" => self.npx = count(key, value)?,
            _ => return Err(CliError::Usage(format!("unknown config key {key:?}"))),
        }
        Ok(())
    }

    pub fn wave(&self) -> Result<WaveParameters, CliError> {
        let c0 = match self.c0 {
            Drift::AtSpeed => wave_speed(self.delta, self.branch)?,
            Drift::Value(v) => v,
        };
        Ok(WaveParameters::new(self.delta, self.gamma, c0, self.branch)?)
    }

    pub fn path(&self) -> Result<PeakonPathParams, CliError> {
        let wave = self.wave()?;
        Ok(match self.k1 {
            Offset::Aligned => PeakonPathParams::aligned(wave)?,
            Offset::Value(k1) => PeakonPathParams::new(wave, k1)?,
        })
    }

    /// Guard on the height component only; `x` and `X` may grow freely.
    pub fn integrator(&self) -> Result<IntegratorConfig, CliError> {
        let cap = match self.frame {
            Frame::Framed => self.cap,
            Frame::Physical => self.cap / (2.0 * PI * self.delta),
        };
        let cfg = IntegratorConfig {
            method: self.method,
            step: self.step,
            atol: self.atol,
            rtol: self.rtol,
            max_steps: self.max_steps,
            state_cap: cap,
            guarded: [false, true],
            min_step: self.min_step,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_canonical_scenario() {
        let cfg = ScenarioConfig::default();
        let wave = cfg.wave().unwrap();
        assert_eq!(wave.delta, 0.5);
        assert_eq!(wave.gamma, 0.0);
        assert_eq!(wave.c0, wave.speed());
        assert_eq!(cfg.path().unwrap().k1, 0.0);
        assert_eq!(cfg.gap, 1e-3);
    }

    #[test]
    fn parses_file_with_comments() {
        let cfg = ScenarioConfig::parse("# scenario\n\ndelta = 0.25\n gamma=-0.3 \nc0 = 0.1\nbranch = -1\nk1 = aligned\n").unwrap();
        assert_eq!(cfg.delta, 0.25);
        assert_eq!(cfg.gamma, -0.3);
        assert_eq!(cfg.c0, Drift::Value(0.1));
        assert_eq!(cfg.branch, SpeedBranch::Negative);
        assert_eq!(cfg.k1, Offset::Aligned);
        assert_eq!(cfg.path().unwrap().k1, 0.25);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(ScenarioConfig::parse("delta 0.5").is_err());
        assert!(ScenarioConfig::parse("bogus = 1").is_err());
        assert!(ScenarioConfig::parse("delta = abc").is_err());
        assert!(ScenarioConfig::parse("delta = inf").is_err());
        assert!(ScenarioConfig::parse("branch = 2").is_err());
        assert!(ScenarioConfig::parse("delta = -1").unwrap().wave().is_err());
    }

    #[test]
    fn overrides_apply_after_file() {
        let mut cfg = ScenarioConfig::parse("delta = 0.25").unwrap();
        cfg.apply_override("delta=0.75").unwrap();
        assert_eq!(cfg.delta, 0.75);
        assert!(cfg.apply_override("delta").is_err());
    }

    #[test]
    fn physical_guard_is_rescaled() {
        let cfg = ScenarioConfig::default();
        let ic = cfg.integrator().unwrap();
        assert!((ic.state_cap - 50.0 / PI).abs() < 1e-12);
        assert_eq!(ic.guarded, [false, true]);
    }
}
