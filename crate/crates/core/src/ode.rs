//! Explicit integrators for two-dimensional systems `y' = f(t, y)`.
//!
//! Two methods are provided: classical fixed-step RK4 and the adaptive
//! Dormand-Prince 5(4) pair with local extrapolation. Both stop gracefully
//! when the state leaves a configured box, which the path system needs near
//! the vertical asymptote of the exact trajectory.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type State = [f64; 2];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Rk4,
    DormandPrince45,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::Rk4 => "rk4",
            Method::DormandPrince45 => "dopri45",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegratorConfig {
    pub method: Method,
    /// Fixed step for RK4; initial step guess for the adaptive method.
    pub step: f64,
    pub atol: f64,
    pub rtol: f64,
    pub max_steps: usize,
    /// Blow-up guard: guarded components must stay within `[-cap, cap]`.
    pub state_cap: f64,
    pub guarded: [bool; 2],
    pub min_step: f64,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            method: Method::DormandPrince45,
            step: 1e-2,
            atol: 1e-10,
            rtol: 1e-10,
            max_steps: 1_000_000,
            state_cap: 50.0,
            guarded: [true, true],
            min_step: 1e-14,
        }
    }
}

impl IntegratorConfig {
    pub fn fixed(step: f64) -> Self {
        IntegratorConfig { method: Method::Rk4, step, ..Default::default() }
    }

    pub fn adaptive(atol: f64, rtol: f64) -> Self {
        IntegratorConfig { method: Method::DormandPrince45, atol, rtol, ..Default::default() }
    }

    pub fn with_guard(mut self, cap: f64, guarded: [bool; 2]) -> Self {
        self.state_cap = cap;
        self.guarded = guarded;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(self.step) {
            return Err(Error::usage(format!("step must be positive, got {}", self.step)));
        }
        if self.method == Method::DormandPrince45 && !(positive(self.atol) && positive(self.rtol)) {
            return Err(Error::usage("tolerances must be positive"));
        }
        if self.max_steps == 0 {
            return Err(Error::usage("max_steps must be at least 1"));
        }
        if !(self.state_cap > 0.0) {
            return Err(Error::usage("state cap must be positive"));
        }
        if !(self.min_step >= 0.0) {
            return Err(Error::usage("min_step must be non-negative"));
        }
        Ok(())
    }

    fn breaches(&self, y: &State) -> bool {
        y.iter().zip(self.guarded).any(|(v, g)| !v.is_finite() || (g && v.abs() > self.state_cap))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    ReachedEnd,
    BlowUp,
    MinStepUnderflow,
    StepBudget,
}

impl Termination {
    pub fn tag(self) -> &'static str {
        match self {
            Termination::ReachedEnd => "reached_end",
            Termination::BlowUp => "blow_up",
            Termination::MinStepUnderflow => "min_step_underflow",
            Termination::StepBudget => "step_budget",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub t: f64,
    pub state: State,
    /// Right-hand side at `(t, state)`, kept for Hermite interpolation.
    pub derivative: State,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub termination: Termination,
    pub method: Method,
}

impl Trajectory {
    pub fn last(&self) -> &Sample {
        self.samples.last().expect("trajectory has at least one sample")
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Cubic Hermite interpolation between accepted steps. `None` outside
    /// the covered time span.
    pub fn interpolate(&self, t: f64) -> Option<State> {
        let first = self.samples.first()?;
        let last = self.last();
        let (lo, hi) = if first.t <= last.t { (first.t, last.t) } else { (last.t, first.t) };
        if !(lo..=hi).contains(&t) {
            return None;
        }
        let forward = first.t <= last.t;
        // Samples are monotone in t, so a binary search finds the bracket.
        let idx = self.samples.partition_point(|s| if forward { s.t < t } else { s.t > t });
        if idx == 0 {
            return Some(first.state);
        }
        let a = &self.samples[idx - 1];
        let b = &self.samples[idx.min(self.samples.len() - 1)];
        if b.t == a.t {
            return Some(b.state);
        }
        let h = b.t - a.t;
        let s = (t - a.t) / h;
        let h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
        let h10 = s * (1.0 - s) * (1.0 - s);
        let h01 = s * s * (3.0 - 2.0 * s);
        let h11 = s * s * (s - 1.0);
        Some(std::array::from_fn(|i| h00 * a.state[i] + h10 * h * a.derivative[i] + h01 * b.state[i] + h11 * h * b.derivative[i]))
    }
}

fn axpy(y: &State, h: f64, terms: &[(f64, &State)]) -> State {
    let mut out = *y;
    for &(c, k) in terms {
        out[0] += h * c * k[0];
        out[1] += h * c * k[1];
    }
    out
}

fn rk4_step<F: Fn(f64, State) -> State>(f: &F, t: f64, y: &State, k1: &State, h: f64) -> State {
    let k2 = f(t + 0.5 * h, axpy(y, h, &[(0.5, k1)]));
    let k3 = f(t + 0.5 * h, axpy(y, h, &[(0.5, &k2)]));
    let k4 = f(t + h, axpy(y, h, &[(1.0, &k3)]));
    axpy(y, h, &[(1.0 / 6.0, k1), (1.0 / 3.0, &k2), (1.0 / 3.0, &k3), (1.0 / 6.0, &k4)])
}

// Dormand-Prince 5(4) tableau.
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// Fifth-order weights minus embedded fourth-order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 5.0;

/// One Dormand-Prince step: returns (new state, derivative at the new
/// state, scaled error norm).
fn dopri_step<F: Fn(f64, State) -> State>(
    f: &F,
    t: f64,
    y: &State,
    k1: &State,
    h: f64,
    cfg: &IntegratorConfig,
) -> (State, State, f64) {
    let k2 = f(t + C2 * h, axpy(y, h, &[(A21, k1)]));
    let k3 = f(t + C3 * h, axpy(y, h, &[(A31, k1), (A32, &k2)]));
    let k4 = f(t + C4 * h, axpy(y, h, &[(A41, k1), (A42, &k2), (A43, &k3)]));
    let k5 = f(t + C5 * h, axpy(y, h, &[(A51, k1), (A52, &k2), (A53, &k3), (A54, &k4)]));
    let k6 = f(t + h, axpy(y, h, &[(A61, k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]));
    let y_new = axpy(y, h, &[(B1, k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
    let k7 = f(t + h, y_new);
    let mut sum = 0.0;
    for i in 0..2 {
        let err = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
        let scale = cfg.atol + cfg.rtol * y[i].abs().max(y_new[i].abs());
        sum += (err / scale).powi(2);
    }
    let norm = (sum / 2.0).sqrt();
    (y_new, k7, if norm.is_finite() { norm } else { f64::INFINITY })
}

/// Integrates from `t0` to `t_end` (either direction).
///
/// Returns an error for an invalid configuration, a zero-length span or an
/// initial state already outside the guard box. Hitting the guard during
/// integration is not an error: the trajectory ends with
/// [`Termination::BlowUp`] and every stored sample lies inside the box.
pub fn integrate<F>(rhs: F, initial: State, t0: f64, t_end: f64, config: &IntegratorConfig) -> Result<Trajectory>
where
    F: Fn(f64, State) -> State,
{
    config.validate()?;
    if !(t0.is_finite() && t_end.is_finite()) || t0 == t_end {
        return Err(Error::usage(format!("integration span [{t0}, {t_end}] is empty or not finite")));
    }
    if config.breaches(&initial) {
        return Err(Error::domain(format!("initial state {initial:?} is outside the guard box")));
    }
    match config.method {
        Method::Rk4 => Ok(integrate_rk4(&rhs, initial, t0, t_end, config)),
        Method::DormandPrince45 => Ok(integrate_dopri(&rhs, initial, t0, t_end, config)),
    }
}

fn integrate_rk4<F: Fn(f64, State) -> State>(f: &F, y0: State, t0: f64, t_end: f64, cfg: &IntegratorConfig) -> Trajectory {
    let span = t_end - t0;
    let dir = span.signum();
    let h = cfg.step * dir;
    let ratio = span / h;
    // Snap to an integer step count when the span is a multiple of h up to roundoff.
    let n = if (ratio - ratio.round()).abs() < 1e-9 * ratio.max(1.0) { ratio.round() } else { ratio.ceil() } as usize;

    let mut samples = vec![Sample { t: t0, state: y0, derivative: f(t0, y0) }];
    let mut termination = Termination::ReachedEnd;
    for i in 0..n {
        if i >= cfg.max_steps {
            termination = Termination::StepBudget;
            break;
        }
        let cur = *samples.last().unwrap();
        let t_next = if i + 1 == n { t_end } else { t0 + (i + 1) as f64 * h };
        let y = rk4_step(f, cur.t, &cur.state, &cur.derivative, t_next - cur.t);
        if cfg.breaches(&y) {
            termination = Termination::BlowUp;
            break;
        }
        samples.push(Sample { t: t_next, state: y, derivative: f(t_next, y) });
    }
    Trajectory { samples, termination, method: Method::Rk4 }
}

fn integrate_dopri<F: Fn(f64, State) -> State>(f: &F, y0: State, t0: f64, t_end: f64, cfg: &IntegratorConfig) -> Trajectory {
    let dir = (t_end - t0).signum();
    let mut h = cfg.step.min((t_end - t0).abs()) * dir;
    let mut samples = vec![Sample { t: t0, state: y0, derivative: f(t0, y0) }];
    let mut attempts = 0usize;

    let termination = loop {
        let cur = *samples.last().unwrap();
        let remaining = t_end - cur.t;
        if remaining * dir <= 0.0 {
            break Termination::ReachedEnd;
        }
        if attempts >= cfg.max_steps {
            break Termination::StepBudget;
        }
        attempts += 1;

        let last_step = (h * dir) >= remaining * dir;
        let step = if last_step { remaining } else { h };
        if step.abs() < cfg.min_step && !last_step {
            break Termination::MinStepUnderflow;
        }

        let (y_new, k_new, err) = dopri_step(f, cur.t, &cur.state, &cur.derivative, step, cfg);
        let factor = if err == 0.0 { MAX_FACTOR } else { (SAFETY * err.powf(-0.2)).clamp(MIN_FACTOR, MAX_FACTOR) };
        if err <= 1.0 {
            if cfg.breaches(&y_new) {
                break Termination::BlowUp;
            }
            let t_new = if last_step { t_end } else { cur.t + step };
            samples.push(Sample { t: t_new, state: y_new, derivative: k_new });
            h = step * factor;
        } else {
            h = step * factor.min(1.0);
            if h.abs() < cfg.min_step {
                break Termination::MinStepUnderflow;
            }
        }
    };
    Trajectory { samples, termination, method: Method::DormandPrince45 }
}

/// Result of a convergence-order measurement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum OrderEstimate {
    /// The coarsest run already matches the reference to roundoff.
    Exact,
    Order(f64),
}

/// Endpoint error below which a run counts as exact.
const EXACT_ERROR: f64 = 1e-13;

/// Measures the convergence order of fixed-step RK4.
///
/// Runs with steps `base_step / 2^i` for `i = 0..=refinements`, compares the
/// endpoint with a tight-tolerance Dormand-Prince reference and averages
/// `log2(err(h) / err(h/2))` over the refinements.
pub fn measure_order<F>(rhs: F, initial: State, t0: f64, t_end: f64, base_step: f64, refinements: usize) -> Result<OrderEstimate>
where
    F: Fn(f64, State) -> State,
{
    if refinements < 2 {
        return Err(Error::usage("order measurement needs at least 2 refinements"));
    }
    let reference = {
        let cfg = IntegratorConfig { step: base_step / 64.0, min_step: 0.0, ..IntegratorConfig::adaptive(1e-15, 1e-15) };
        let traj = integrate(&rhs, initial, t0, t_end, &cfg)?;
        if traj.termination != Termination::ReachedEnd {
            return Err(Error::domain(format!("reference run stopped early: {}", traj.termination.tag())));
        }
        traj.last().state
    };
    let mut errors = Vec::with_capacity(refinements + 1);
    for i in 0..=refinements {
        let cfg = IntegratorConfig::fixed(base_step / f64::powi(2.0, i as i32));
        let traj = integrate(&rhs, initial, t0, t_end, &cfg)?;
        if traj.termination != Termination::ReachedEnd {
            return Err(Error::domain(format!("run at refinement {i} stopped early: {}", traj.termination.tag())));
        }
        let end = traj.last().state;
        errors.push((end[0] - reference[0]).abs().max((end[1] - reference[1]).abs()));
    }
    if errors[0] <= EXACT_ERROR {
        return Ok(OrderEstimate::Exact);
    }
    let sum: f64 = errors.windows(2).map(|w| (w[0] / w[1]).log2()).sum();
    Ok(OrderEstimate::Order(sum / refinements as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    // y0' = -y1, y1' = y0 - 0.1 y1 : damped rotation with a closed form.
    fn damped(_t: f64, y: State) -> State {
        [-y[1], y[0] - 0.1 * y[1]]
    }

    fn damped_exact(t: f64) -> State {
        // eigenvalues -0.05 +- i w, w = sqrt(1 - 0.0025); y(0) = [1, 0]
        let w = (1.0f64 - 0.0025).sqrt();
        let e = (-0.05 * t).exp();
        let y1 = e * (w * t).sin() / w;
        let y0 = e * ((w * t).cos() + 0.05 * (w * t).sin() / w);
        [y0, y1]
    }

    #[test]
    fn closed_form_oracle_is_consistent() {
        // Check the hand-derived exact solution against the system by central differences.
        let h = 1e-6;
        for &t in &[0.3, 1.7, 4.0] {
            let y = damped_exact(t);
            let d = damped(t, y);
            let a = damped_exact(t + h);
            let b = damped_exact(t - h);
            assert_abs_diff_eq!((a[0] - b[0]) / (2.0 * h), d[0], epsilon = 1e-8);
            assert_abs_diff_eq!((a[1] - b[1]) / (2.0 * h), d[1], epsilon = 1e-8);
        }
    }

    #[test]
    fn fixed_point_stays_put() {
        for cfg in [IntegratorConfig::fixed(0.1), IntegratorConfig::adaptive(1e-8, 1e-8)] {
            let traj = integrate(|_, _| [0.0, 0.0], [0.3, -1.2], 0.0, 2.0, &cfg).unwrap();
            assert_eq!(traj.termination, Termination::ReachedEnd);
            assert!(traj.samples.iter().all(|s| s.state == [0.3, -1.2]));
            assert_eq!(traj.last().t, 2.0);
        }
    }

    #[test]
    fn rk4_error_shrinks_sixteenfold() {
        let err = |h: f64| {
            let traj = integrate(damped, [1.0, 0.0], 0.0, 5.0, &IntegratorConfig::fixed(h)).unwrap();
            let e = damped_exact(5.0);
            let y = traj.last().state;
            (y[0] - e[0]).abs().max((y[1] - e[1]).abs())
        };
        let ratio = err(0.1) / err(0.05);
        assert!((13.0..19.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn adaptive_matches_closed_form() {
        let traj = integrate(damped, [1.0, 0.0], 0.0, 10.0, &IntegratorConfig::adaptive(1e-11, 1e-11)).unwrap();
        for s in &traj.samples {
            let e = damped_exact(s.t);
            assert_abs_diff_eq!(s.state[0], e[0], epsilon = 1e-8);
            assert_abs_diff_eq!(s.state[1], e[1], epsilon = 1e-8);
        }
    }

    #[test]
    fn backward_integration() {
        for cfg in [IntegratorConfig::fixed(0.01), IntegratorConfig::adaptive(1e-10, 1e-10)] {
            let start = damped_exact(3.0);
            let traj = integrate(damped, start, 3.0, 0.0, &cfg).unwrap();
            assert!(traj.samples.windows(2).all(|w| w[1].t < w[0].t));
            let y = traj.last().state;
            assert_eq!(traj.last().t, 0.0);
            assert_abs_diff_eq!(y[0], 1.0, epsilon = 1e-7);
            assert_abs_diff_eq!(y[1], 0.0, epsilon = 1e-7);
        }
    }

    #[test]
    fn forward_then_backward_returns_home() {
        let cfg = IntegratorConfig::fixed(0.05);
        let out = integrate(damped, [1.0, 0.0], 0.0, 2.0, &cfg).unwrap();
        let back = integrate(damped, out.last().state, 2.0, 0.0, &cfg).unwrap();
        let y = back.last().state;
        assert!((y[0] - 1.0).abs() < 1e-6 && y[1].abs() < 1e-6);
    }

    #[test]
    fn deterministic() {
        let cfg = IntegratorConfig::adaptive(1e-9, 1e-9);
        let a = integrate(damped, [1.0, 0.0], 0.0, 7.0, &cfg).unwrap();
        let b = integrate(damped, [1.0, 0.0], 0.0, 7.0, &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn guard_stops_blow_up() {
        // y' = y^2 blows up at t = 1 from y = 1.
        let f = |_t: f64, y: State| [y[0] * y[0], 0.0];
        for cfg in [IntegratorConfig::fixed(1e-3), IntegratorConfig::adaptive(1e-10, 1e-10)] {
            let cfg = cfg.with_guard(50.0, [true, true]);
            let traj = integrate(f, [1.0, 0.0], 0.0, 2.0, &cfg).unwrap();
            assert_eq!(traj.termination, Termination::BlowUp);
            assert!(traj.samples.iter().all(|s| s.state[0].abs() <= 50.0));
            assert!(traj.last().t < 1.0);
        }
    }

    #[test]
    fn immediate_blow_up_leaves_single_sample() {
        let f = |_t: f64, _y: State| [1e6, 0.0];
        let cfg = IntegratorConfig::fixed(1.0).with_guard(10.0, [true, true]);
        let traj = integrate(f, [0.0, 0.0], 0.0, 1.0, &cfg).unwrap();
        assert_eq!(traj.len(), 1);
        assert_eq!(traj.termination, Termination::BlowUp);
    }

    #[test]
    fn unguarded_component_may_grow() {
        let f = |_t: f64, _y: State| [100.0, 0.0];
        let cfg = IntegratorConfig::fixed(0.1).with_guard(10.0, [false, true]);
        let traj = integrate(f, [0.0, 0.0], 0.0, 1.0, &cfg).unwrap();
        assert_eq!(traj.termination, Termination::ReachedEnd);
    }

    #[test]
    fn step_budget() {
        let mut cfg = IntegratorConfig::fixed(0.01);
        cfg.max_steps = 10;
        let traj = integrate(damped, [1.0, 0.0], 0.0, 1.0, &cfg).unwrap();
        assert_eq!(traj.termination, Termination::StepBudget);
        assert_eq!(traj.len(), 11);
    }

    #[test]
    fn min_step_underflow() {
        // Discontinuous forcing the controller cannot resolve with a large floor.
        let f = |t: f64, _y: State| [if t > 0.5 { 1e8 } else { 0.0 }, 0.0];
        let mut cfg = IntegratorConfig::adaptive(1e-12, 1e-12).with_guard(1e12, [true, true]);
        cfg.min_step = 1e-3;
        let traj = integrate(f, [0.0, 0.0], 0.0, 1.0, &cfg).unwrap();
        assert_eq!(traj.termination, Termination::MinStepUnderflow);
    }

    #[test]
    fn invalid_configs_are_usage_errors() {
        let bad = [
            IntegratorConfig::fixed(0.0),
            IntegratorConfig::adaptive(0.0, 1e-8),
            IntegratorConfig { max_steps: 0, ..Default::default() },
            IntegratorConfig { state_cap: -1.0, ..Default::default() },
        ];
        for cfg in bad {
            assert!(matches!(integrate(damped, [1.0, 0.0], 0.0, 1.0, &cfg), Err(Error::Usage(_))));
        }
        let ok = IntegratorConfig::default();
        assert!(matches!(integrate(damped, [1.0, 0.0], 1.0, 1.0, &ok), Err(Error::Usage(_))));
        assert!(matches!(integrate(damped, [100.0, 0.0], 0.0, 1.0, &ok), Err(Error::Domain(_))));
    }

    #[test]
    fn hermite_interpolation_is_accurate() {
        let traj = integrate(damped, [1.0, 0.0], 0.0, 5.0, &IntegratorConfig::adaptive(1e-11, 1e-11)).unwrap();
        for i in 0..50 {
            let t = 0.1 * i as f64 + 0.013;
            let y = traj.interpolate(t).unwrap();
            let e = damped_exact(t);
            assert_abs_diff_eq!(y[0], e[0], epsilon = 1e-6);
            assert_abs_diff_eq!(y[1], e[1], epsilon = 1e-6);
        }
        assert!(traj.interpolate(-0.1).is_none());
        assert!(traj.interpolate(5.1).is_none());
        assert_eq!(traj.interpolate(5.0), Some(traj.last().state));
    }

    #[test]
    fn order_of_rk4() {
        match measure_order(damped, [1.0, 0.0], 0.0, 2.0, 0.2, 4).unwrap() {
            OrderEstimate::Order(p) => assert!((3.8..=4.2).contains(&p), "order {p}"),
            OrderEstimate::Exact => panic!("not exact"),
        }
    }

    #[test]
    fn order_on_constant_field_is_exact() {
        let est = measure_order(|_, _| [1.0, -2.0], [0.0, 0.0], 0.0, 1.0, 0.1, 3).unwrap();
        assert_eq!(est, OrderEstimate::Exact);
        assert!(measure_order(damped, [1.0, 0.0], 0.0, 1.0, 0.1, 1).is_err());
    }

    #[test]
    fn tighter_tolerance_reduces_error() {
        let e = damped_exact(6.0);
        let err = |tol: f64| {
            let traj = integrate(damped, [1.0, 0.0], 0.0, 6.0, &IntegratorConfig::adaptive(tol, tol)).unwrap();
            let y = traj.last().state;
            (y[0] - e[0]).abs().max((y[1] - e[1]).abs())
        };
        for tol in [1e-6, 1e-7, 1e-8] {
            let gain = err(tol) / err(tol / 10.0);
            assert!(gain >= 5.0, "tol {tol}: gain {gain}");
        }
    }
}
