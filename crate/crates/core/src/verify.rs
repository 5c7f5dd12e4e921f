//! Verification suites aggregating the residual checks of every module.
//!
//! Each check records the measured quantity, its bound and whether it
//! passed. A report passes only if every check does.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analytic_paths::{
    horizontal_residual_law, peakon_path, scaled_height, second_order_residual, sin_phase_from_w,
    system_residual_of_peakon_path, w_of_t, w_rate, xi_of_w, PeakonPathParams,
};
use crate::error::{Error, Result};
use crate::ode::{integrate, measure_order, IntegratorConfig, OrderEstimate, Termination};
use crate::particle_dynamics::{derived_constants, framed_rhs, from_frame, physical_rhs, to_frame, ParticleState, PathSystem};
use crate::peakons::{
    ch_classical_residual, ch_momentum, ch_u, ch_ux_jump, ch_uxx_distribution, dp_classical_residual, dp_jump, Atom,
    ChPeakon, ShockPeakon,
};
use crate::wavefield::{verify_wave, GridSpec, LinearWave, SpeedBranch, WaveParameters};

/// Roundoff-level bound for exact identities.
pub const EXACT_TOL: f64 = 1e-12;
/// Bound for residuals involving divisions near the path's singularity.
pub const REDUCTION_TOL: f64 = 1e-10;
/// Numerical integration against the closed-form path.
pub const ORACLE_TOL: f64 = 1e-6;
/// Closed-form jump and atom identities.
pub const JUMP_TOL: f64 = 1e-15;
pub const ORDER_RANGE: (f64, f64) = (3.8, 4.2);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Linear,
    Frame,
    Reduction,
    Oracle,
    Order,
    Peakons,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Linear, Suite::Frame, Suite::Reduction, Suite::Oracle, Suite::Order, Suite::Peakons];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Linear => "linear",
            Suite::Frame => "frame",
            Suite::Reduction => "reduction",
            Suite::Oracle => "oracle",
            Suite::Order => "order",
            Suite::Peakons => "peakons",
        }
    }

    pub fn parse(name: &str) -> Result<Vec<Suite>> {
        if name == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        Suite::ALL
            .iter()
            .find(|s| s.name() == name)
            .map(|s| vec![*s])
            .ok_or_else(|| Error::usage(format!("unknown suite {name:?}; expected all, linear, frame, reduction, oracle, order or peakons")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Bound {
    AtMost { limit: f64 },
    Within { low: f64, high: f64 },
    True,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub value: f64,
    pub bound: Bound,
    pub passed: bool,
}

impl Check {
    fn at_most(suite: Suite, name: impl Into<String>, value: f64, limit: f64) -> Self {
        Check { suite, name: name.into(), value, bound: Bound::AtMost { limit }, passed: value.is_finite() && value <= limit }
    }

    fn within(suite: Suite, name: impl Into<String>, value: f64, low: f64, high: f64) -> Self {
        Check { suite, name: name.into(), value, bound: Bound::Within { low, high }, passed: value >= low && value <= high }
    }

    fn holds(suite: Suite, name: impl Into<String>, ok: bool) -> Self {
        Check { suite, name: name.into(), value: if ok { 1.0 } else { 0.0 }, bound: Bound::True, passed: ok }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub scenario: WaveParameters,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    /// Scenario checked in addition to the fixed parameter sweeps.
    pub scenario: WaveParameters,
    /// Negative-control hook: offsets the phase speed of the linear wave.
    pub speed_perturbation: f64,
    pub seed: u64,
}

impl VerifyOptions {
    pub fn new(scenario: WaveParameters) -> Self {
        VerifyOptions { scenario, speed_perturbation: 0.0, seed: 0x5eed }
    }
}

fn max_abs(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, |m: f64, v| if v.is_nan() || m.is_nan() { f64::NAN } else { m.max(v.abs()) })
}

pub fn run(suites: &[Suite], opts: &VerifyOptions) -> Result<VerificationReport> {
    let mut checks = Vec::new();
    for &suite in suites {
        match suite {
            Suite::Linear => linear(opts, &mut checks)?,
            Suite::Frame => frame(opts, &mut checks),
            Suite::Reduction => reduction(opts, &mut checks)?,
            Suite::Oracle => oracle(&mut checks)?,
            Suite::Order => order(&mut checks)?,
            Suite::Peakons => peakons(opts, &mut checks)?,
        }
    }
    Ok(VerificationReport { passed: checks.iter().all(|c| c.passed), scenario: opts.scenario, checks })
}

fn linear_sweep(scenario: &WaveParameters) -> Result<Vec<WaveParameters>> {
    let mut sweep = vec![*scenario];
    for &delta in &[0.1, 0.5, 1.0] {
        for &gamma in &[-0.3, 0.0, 0.3] {
            let c = crate::wavefield::wave_speed(delta, SpeedBranch::Positive)?;
            for c0 in [0.0, c] {
                sweep.push(WaveParameters::new(delta, gamma, c0, SpeedBranch::Positive)?);
            }
        }
    }
    Ok(sweep)
}

fn linear(opts: &VerifyOptions, checks: &mut Vec<Check>) -> Result<()> {
    let mut worst: Vec<(String, f64)> = Vec::new();
    for p in linear_sweep(&opts.scenario)? {
        let wave = LinearWave::new(&p).with_phase_speed_offset(opts.speed_perturbation);
        let report = verify_wave(&wave, &GridSpec::default_for(&p))?;
        for e in report.residuals {
            match worst.iter_mut().find(|(l, _)| *l == e.label) {
                Some((_, m)) => *m = max_abs([*m, e.max_abs]),
                None => worst.push((e.label, e.max_abs)),
            }
        }
    }
    for (label, value) in worst {
        checks.push(Check::at_most(Suite::Linear, format!("linear_system.{label}"), value, EXACT_TOL));
    }
    Ok(())
}

fn frame(opts: &VerifyOptions, checks: &mut Vec<Check>) {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let p = opts.scenario;
    let consts = derived_constants(&p);
    let (mut dx_err, mut dz_err, mut round_trip) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..1000 {
        let s = ParticleState { x: rng.gen_range(-2.0..2.0), z: rng.gen_range(0.0..1.0) };
        let t = rng.gen_range(-5.0..5.0);
        let (dx, dz) = physical_rhs(s, t, &p);
        let framed = to_frame(s, t, &p);
        let (dxf, dzf) = framed_rhs(framed, &consts, &p);
        dx_err = max_abs([dx_err, dxf - 2.0 * PI * (dx - p.speed())]);
        dz_err = max_abs([dz_err, dzf - p.wavenumber() * dz]);
        let back = from_frame(framed, t, &p);
        round_trip = max_abs([round_trip, back.x - s.x, back.z - s.z]);
    }
    checks.push(Check::at_most(Suite::Frame, "frame.conjugacy_horizontal", dx_err, EXACT_TOL));
    checks.push(Check::at_most(Suite::Frame, "frame.conjugacy_vertical", dz_err, EXACT_TOL));
    checks.push(Check::at_most(Suite::Frame, "frame.round_trip", round_trip, 1e-14));
    let bed = (0..50).all(|i| physical_rhs(ParticleState { x: 0.02 * i as f64, z: 0.0 }, 0.3 * i as f64, &p).1 == 0.0);
    checks.push(Check::holds(Suite::Frame, "frame.bed_invariant", bed));
}

/// `t` values on `[-outer, -inner] U [inner, outer]`, log-spaced, `n` per side,
/// with the endpoints hit exactly.
pub fn symmetric_times(n: usize, inner: f64, outer: f64) -> Vec<f64> {
    let (a, b) = (inner.ln(), outer.ln());
    let mut pos: Vec<f64> = (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect();
    if n > 0 {
        pos[0] = inner;
        pos[n - 1] = outer;
    }
    pos.iter().rev().map(|t| -t).chain(pos.iter().copied()).collect()
}

fn reduction(opts: &VerifyOptions, checks: &mut Vec<Check>) -> Result<()> {
    let s = &opts.scenario;
    let sweep = [
        *s,
        WaveParameters::with_drift_at_speed(0.5, 0.0, SpeedBranch::Positive)?,
        WaveParameters::new(0.5, 0.2, 0.0, SpeedBranch::Positive)?,
        WaveParameters::new(0.5, -0.5, 0.3, SpeedBranch::Negative)?,
    ];
    let times = symmetric_times(200, 1e-2, 10.0);
    let (mut second, mut cosh_rel, mut chain, mut xi_max, mut sin_err) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let (mut vertical, mut law) = (0.0f64, 0.0f64);
    let mut w_ok = true;
    for wave in sweep {
        let p = PeakonPathParams::aligned(wave)?;
        let mirrored = p.mirrored();
        for &t in &times {
            let w = w_of_t(t, &p)?;
            w_ok &= w > 0.0 && w < 1.0;
            second = max_abs([second, second_order_residual(t, &p)?]);
            let lhs = scaled_height(t, &p)?.cosh();
            let rhs = (1.0 + w * w) / (1.0 - w * w);
            cosh_rel = max_abs([cosh_rel, (lhs - rhs) / rhs]);
            let framed = to_frame(peakon_path(t, &p)?, t, &p.wave);
            chain = max_abs([chain, framed.scaled_z - 2.0 * w.atanh()]);
            xi_max = max_abs([xi_max, xi_of_w(w, w_rate(t, &p)?, &p.consts)?]);
            // The aligned line carries t > 0, the mirrored line t < 0.
            let branch = if t > 0.0 { &p } else { &mirrored };
            sin_err = max_abs([sin_err, sin_phase_from_w(t, &p)? - branch.phase().sin()]);
            let r = system_residual_of_peakon_path(t, branch)?;
            vertical = max_abs([vertical, r.vertical]);
            law = max_abs([law, r.horizontal - horizontal_residual_law(t, branch)?]);
        }
    }
    checks.push(Check::at_most(Suite::Reduction, "reduction.second_order_residual", second, REDUCTION_TOL));
    checks.push(Check::holds(Suite::Reduction, "reduction.w_in_open_unit_interval", w_ok));
    checks.push(Check::at_most(Suite::Reduction, "reduction.cosh_identity_relative", cosh_rel, EXACT_TOL));
    checks.push(Check::at_most(Suite::Reduction, "reduction.framed_height_chain", chain, EXACT_TOL));
    checks.push(Check::at_most(Suite::Reduction, "reduction.xi_branch", xi_max, EXACT_TOL));
    checks.push(Check::at_most(Suite::Reduction, "reduction.sin_phase", sin_err, EXACT_TOL));
    checks.push(Check::at_most(Suite::Reduction, "path.vertical_residual", vertical, REDUCTION_TOL));
    checks.push(Check::at_most(Suite::Reduction, "path.horizontal_residual_law", law, EXACT_TOL));
    Ok(())
}

/// Adaptive integration of the framed system from the closed-form path
/// at `t = 0.5` to `t = 5`, compared against the closed form at every
/// accepted step. Returns the maximum deviation in physical coordinates.
pub fn analytic_oracle_error(p: &PeakonPathParams, t0: f64, t_end: f64, tol: f64) -> Result<(f64, Termination)> {
    let sys = PathSystem::new(&p.wave);
    let start = to_frame(peakon_path(t0, p)?, t0, &p.wave);
    let cfg = IntegratorConfig::adaptive(tol, tol).with_guard(50.0, [false, true]);
    let traj = integrate(|t, y| sys.framed(t, y), start.into(), t0, t_end, &cfg)?;
    let mut err = 0.0f64;
    for s in &traj.samples {
        let num = from_frame(s.state.into(), s.t, &p.wave);
        let exact = peakon_path(s.t, p)?;
        err = max_abs([err, num.x - exact.x, num.z - exact.z]);
    }
    Ok((err, traj.termination))
}

fn oracle(checks: &mut Vec<Check>) -> Result<()> {
    let p = PeakonPathParams::aligned(WaveParameters::with_drift_at_speed(0.5, 0.0, SpeedBranch::Positive)?)?;
    let (err, term) = analytic_oracle_error(&p, 0.5, 5.0, 1e-10)?;
    checks.push(Check::at_most(Suite::Oracle, "oracle.max_path_error", err, ORACLE_TOL));
    checks.push(Check::holds(Suite::Oracle, "oracle.reached_end", term == Termination::ReachedEnd));
    let back = {
        let m = p.mirrored();
        analytic_oracle_error(&m, -0.5, -5.0, 1e-10)?
    };
    checks.push(Check::at_most(Suite::Oracle, "oracle.max_path_error_backward", back.0, ORACLE_TOL));
    Ok(())
}

/// Bounded orbit of the canonical framed system used for the RK4 order check.
pub const ORDER_PROBE_START: [f64; 2] = [-1.0, 0.5];

fn order(checks: &mut Vec<Check>) -> Result<()> {
    let sys = PathSystem::new(&WaveParameters::with_drift_at_speed(0.5, 0.0, SpeedBranch::Positive)?);
    let est = measure_order(|t, y| sys.framed(t, y), ORDER_PROBE_START, 0.0, 2.0, 0.1, 4)?;
    let value = match est {
        OrderEstimate::Order(p) => p,
        OrderEstimate::Exact => f64::INFINITY,
    };
    checks.push(Check::within(Suite::Order, "ode.rk4_order_framed", value, ORDER_RANGE.0, ORDER_RANGE.1));
    Ok(())
}

fn peakons(opts: &VerifyOptions, checks: &mut Vec<Check>) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0xc4);
    let (mut ch_res, mut ch_jump, mut ch_atom, mut ch_smooth) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..100 {
        let c = rng.gen_range(-5.0..5.0);
        let pk = ChPeakon::new(c);
        let t = rng.gen_range(0.0..5.0);
        let mut x = rng.gen_range(-10.0..10.0);
        if x == c * t {
            x += 0.5;
        }
        ch_res = max_abs([ch_res, ch_classical_residual(x, t, &pk)?]);
        ch_jump = max_abs([ch_jump, ch_ux_jump(t, &pk).jump + 2.0 * c]);
        let m = ch_momentum(t, &pk);
        let expected = if c == 0.0 { vec![] } else { vec![Atom { location: c * t, coefficient: 2.0 * c }] };
        ch_atom = max_abs([ch_atom, if m.dirac == expected && m.smooth.is_zero() { 0.0 } else { f64::INFINITY }]);
        let uxx = ch_uxx_distribution(t, &pk);
        ch_atom = max_abs([ch_atom, uxx.dirac[0].coefficient + 2.0 * c]);
        ch_smooth = max_abs([ch_smooth, uxx.smooth.value(x)? - ch_u(x, t, &pk)]);
    }
    checks.push(Check::at_most(Suite::Peakons, "ch.classical_residual", ch_res, EXACT_TOL));
    checks.push(Check::at_most(Suite::Peakons, "ch.slope_jump", ch_jump, JUMP_TOL));
    checks.push(Check::at_most(Suite::Peakons, "ch.atoms", ch_atom, JUMP_TOL));
    checks.push(Check::at_most(Suite::Peakons, "ch.uxx_smooth_part", ch_smooth, JUMP_TOL));

    let (mut dp_res, mut dp_mag, mut dp_avg, mut dp_decay) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..100 {
        let sp = ShockPeakon::new(rng.gen_range(-5.0..5.0), rng.gen_range(0.01..5.0))?;
        let t = rng.gen_range(0.0..5.0);
        let mut x = rng.gen_range(-10.0..10.0);
        if x == 0.0 {
            x = 0.5;
        }
        dp_res = max_abs([dp_res, dp_classical_residual(x, t, &sp)?]);
        let j = dp_jump(t, &sp)?;
        dp_mag = max_abs([dp_mag, j.jump.abs() - 2.0 / (t + sp.k)]);
        dp_avg = max_abs([dp_avg, j.average - sp.c]);
        let ratio = dp_jump(sp.k, &sp)?.jump / dp_jump(0.0, &sp)?.jump;
        dp_decay = max_abs([dp_decay, ratio - 0.5]);
    }
    checks.push(Check::at_most(Suite::Peakons, "dp.classical_residual", dp_res, EXACT_TOL));
    checks.push(Check::at_most(Suite::Peakons, "dp.jump_magnitude", dp_mag, JUMP_TOL));
    checks.push(Check::at_most(Suite::Peakons, "dp.jump_average", dp_avg, JUMP_TOL));
    checks.push(Check::at_most(Suite::Peakons, "dp.jump_decay_halving", dp_decay, EXACT_TOL));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn defaults() -> VerifyOptions {
        VerifyOptions::new(WaveParameters::with_drift_at_speed(0.5, 0.0, SpeedBranch::Positive).unwrap())
    }

    #[test]
    fn all_suites_pass_on_defaults() {
        let report = run(&Suite::ALL, &defaults()).unwrap();
        let failures: Vec<_> = report.failures().collect();
        assert!(report.passed, "{failures:#?}");
    }

    #[test]
    fn perturbed_speed_fails_linear_suite_only() {
        let mut opts = defaults();
        opts.speed_perturbation = 1e-3;
        let report = run(&Suite::ALL, &opts).unwrap();
        assert!(!report.passed);
        assert!(report.failures().all(|c| c.suite == Suite::Linear));
    }

    #[test]
    fn suite_selection() {
        assert_eq!(Suite::parse("peakons").unwrap(), vec![Suite::Peakons]);
        assert_eq!(Suite::parse("all").unwrap().len(), 6);
        assert!(matches!(Suite::parse("bogus"), Err(Error::Usage(_))));
        let report = run(&[Suite::Peakons], &defaults()).unwrap();
        assert!(report.checks.iter().all(|c| c.suite == Suite::Peakons));
    }

    #[test]
    fn symmetric_time_grid() {
        let t = symmetric_times(5, 1e-2, 10.0);
        assert_eq!(t.len(), 10);
        assert!((t[0] + 10.0).abs() < 1e-12 && (t[9] - 10.0).abs() < 1e-12);
        assert!(t.iter().all(|&s| s != 0.0 && s.abs() >= 1e-2 - 1e-15));
    }
}
