//! One function per subcommand, each producing a table and an optional plot.

use std::f64::consts::PI;

use serde_json::{json, Value};
use wavepaths::analytic_paths::{horizontal_residual_law, peakon_path, system_residual_of_peakon_path, PeakonPathParams};
use wavepaths::ode::{integrate, Termination};
use wavepaths::particle_dynamics::{framed_rhs, to_frame, FramedState, ParticleState, PathSystem};
use wavepaths::peakons::{ch_u_distribution, ch_ux_jump, dp_jump, dp_u_distribution, ChPeakon, JumpReport, ShockPeakon, SmoothPart};
use wavepaths::verify::{self, symmetric_times, Suite, VerifyOptions};
use wavepaths::wavefield::{field, Axis, WaveParameters};

use crate::config::{Frame, PeakonKind, ScenarioConfig, Start};
use crate::error::CliError;
use crate::output::{json_f64, Table};
use crate::svg::Plot;

pub struct Outcome {
    pub table: Table,
    pub plot: Option<Plot>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn wave_meta(table: &mut Table, wave: &WaveParameters) {
    table.meta("delta", json_f64(wave.delta));
    table.meta("gamma", json_f64(wave.gamma));
    table.meta("c0", json_f64(wave.c0));
    table.meta("branch", json_f64(wave.speed_branch.sign()));
    table.meta("c", json_f64(wave.speed()));
}

fn axis(name: &str, min: f64, max: f64, count: usize) -> Result<Axis, CliError> {
    if count == 0 {
        return Err(usage(format!("{name}: grid needs at least one point")));
    }
    if count > 1 && !(max > min) {
        return Err(usage(format!("{name}: grid needs max > min")));
    }
    Ok(Axis::new(min, max, count))
}

pub fn field_cmd(cfg: &ScenarioConfig) -> Result<Outcome, CliError> {
    let wave = cfg.wave()?;
    let xs = axis("x", cfg.x_min, cfg.x_max, cfg.nx)?;
    let zs = axis("z", cfg.z_min, cfg.z_max, cfg.nz)?;
    let ts = axis("time", cfg.time_min, cfg.time_max, cfg.nt)?;
    let mut table = Table::new(&["t", "x", "z", "eta", "u", "v", "p"]);
    table.meta("command", "field");
    wave_meta(&mut table, &wave);
    let mut plot = Plot { title: "Surface elevation".into(), x_label: "x".into(), y_label: "eta".into(), ..Default::default() };
    for t in ts.points() {
        let mut surface = Vec::new();
        for x in xs.points() {
            for z in zs.points() {
                let s = field(x, z, t, &wave);
                table.push(vec![s.t, s.x, s.z, s.eta, s.u, s.v, s.p]);
            }
            surface.push((x, field(x, 1.0, t, &wave).eta));
        }
        plot.polylines.push(surface);
    }
    Ok(Outcome { table, plot: Some(plot) })
}

pub fn simulate_cmd(cfg: &ScenarioConfig) -> Result<Outcome, CliError> {
    let wave = cfg.wave()?;
    let integrator = cfg.integrator()?;
    if cfg.t0 == cfg.t_end {
        return Err(usage("simulate: t0 and t_end must differ"));
    }
    let initial = match cfg.start {
        Start::Point => ParticleState { x: cfg.x0, z: cfg.z0 },
        Start::Analytic => {
            if cfg.t0 == 0.0 || cfg.t_end == 0.0 || cfg.t0.signum() != cfg.t_end.signum() {
                return Err(usage("simulate: an analytic start needs a time window on one side of t = 0"));
            }
            peakon_path(cfg.t0, &cfg.path()?)?
        }
    };
    let system = PathSystem::new(&wave);
    let (columns, traj, frame) = match cfg.frame {
        Frame::Physical => {
            let traj = integrate(|t, y| system.physical(t, y), [initial.x, initial.z], cfg.t0, cfg.t_end, &integrator)?;
            (["t", "x", "z"], traj, "physical")
        }
        Frame::Framed => {
            let f = to_frame(initial, cfg.t0, &wave);
            let traj = integrate(|t, y| system.framed(t, y), [f.phase, f.scaled_z], cfg.t0, cfg.t_end, &integrator)?;
            (["t", "X", "Z"], traj, "framed")
        }
    };
    let mut table = Table::new(&columns);
    table.meta("command", "simulate");
    wave_meta(&mut table, &wave);
    table.meta("frame", frame);
    table.meta("method", integrator.method.tag());
    table.meta("termination", traj.termination.tag());
    table.meta("steps", traj.len().saturating_sub(1));
    table.meta("t_final", json_f64(traj.last().t));
    table.meta("guard", json_f64(integrator.state_cap));
    let mut line = Vec::with_capacity(traj.len());
    for s in &traj.samples {
        table.push(vec![s.t, s.state[0], s.state[1]]);
        line.push((s.state[0], s.state[1]));
    }
    if traj.termination != Termination::ReachedEnd {
        eprintln!("note: integration stopped early ({}) at t = {}", traj.termination.tag(), traj.last().t);
    }
    let plot = Plot {
        title: format!("Particle path ({frame} frame)"),
        x_label: columns[1].into(),
        y_label: columns[2].into(),
        polylines: vec![line],
        y_clamp: Some(integrator.state_cap),
        ..Default::default()
    };
    Ok(Outcome { table, plot: Some(plot) })
}

pub fn analytic_cmd(cfg: &ScenarioConfig, residuals: bool) -> Result<Outcome, CliError> {
    if !(cfg.gap > 0.0) {
        return Err(usage("analytic: gap must be positive so the window excludes t = 0"));
    }
    if !(cfg.t_max > cfg.gap) {
        return Err(usage("analytic: t_max must exceed gap"));
    }
    if cfg.samples < 2 {
        return Err(usage("analytic: samples must be at least 2"));
    }
    let p: PeakonPathParams = cfg.path()?;
    let mut columns = vec!["t", "x", "z"];
    if residuals {
        columns.extend(["r_horizontal", "r_vertical"]);
    }
    let mut table = Table::new(&columns);
    table.meta("command", "analytic");
    wave_meta(&mut table, &p.wave);
    table.meta("k1", json_f64(p.k1));
    table.meta("orbital_rate", json_f64(p.consts.orbital_rate));
    table.meta("shear", json_f64(p.consts.shear));
    table.meta("asymptotes", json!({ "x": json_f64(p.k1), "z": 0.0 }));
    let mut line = Vec::new();
    let mut worst_law = 0.0f64;
    for t in symmetric_times(cfg.samples, cfg.gap, cfg.t_max) {
        let pos = peakon_path(t, &p)?;
        let mut row = vec![t, pos.x, pos.z];
        if residuals {
            let r = system_residual_of_peakon_path(t, &p)?;
            worst_law = worst_law.max((r.horizontal - horizontal_residual_law(t, &p)?).abs());
            row.extend([r.horizontal, r.vertical]);
        }
        table.push(row);
        line.push((pos.x, pos.z));
    }
    if residuals {
        table.meta("max_horizontal_law_deviation", json_f64(worst_law));
    }
    let plot = Plot {
        title: "Analytic particle path".into(),
        x_label: "x".into(),
        y_label: "z".into(),
        polylines: vec![line],
        vlines: vec![p.k1],
        hlines: vec![0.0],
        y_clamp: Some(cfg.cap / (2.0 * PI * p.wave.delta)),
        ..Default::default()
    };
    Ok(Outcome { table, plot: Some(plot) })
}

pub fn phase_cmd(cfg: &ScenarioConfig) -> Result<Outcome, CliError> {
    let wave = cfg.wave()?;
    let system = PathSystem::new(&wave);
    let xs = axis("phase", cfg.phase_min, cfg.phase_max, cfg.nphase)?;
    let zs = axis("height", cfg.height_min, cfg.height_max, cfg.nheight)?;
    let mut table = Table::new(&["X", "Z", "dX_dt", "dZ_dt"]);
    table.meta("command", "phase");
    wave_meta(&mut table, &wave);
    table.meta("orbital_rate", json_f64(system.constants().orbital_rate));
    table.meta("shear", json_f64(system.constants().shear));
    table.meta("arrow_scale", json_f64(cfg.arrow_scale));
    let mut plot = Plot { title: "Phase portrait (moving frame)".into(), x_label: "X".into(), y_label: "Z".into(), ..Default::default() };
    for x in xs.points() {
        for z in zs.points() {
            let (dx, dz) = framed_rhs(FramedState { phase: x, scaled_z: z }, system.constants(), &wave);
            table.push(vec![x, z, dx, dz]);
            plot.arrows.push(((x, z), (cfg.arrow_scale * dx, cfg.arrow_scale * dz)));
        }
    }
    Ok(Outcome { table, plot: Some(plot) })
}

/// One-sided limits of a piecewise function at `x`.
fn one_sided(f: &SmoothPart, x: f64) -> Result<(f64, f64), CliError> {
    if x == f.breakpoint {
        Ok((f.left_limit(), f.right_limit()))
    } else {
        let v = f.value(x)?;
        Ok((v, v))
    }
}

fn jump_meta(table: &mut Table, key: &str, r: &JumpReport) {
    table.meta(
        key,
        json!({
            "location": json_f64(r.location),
            "left": json_f64(r.left),
            "right": json_f64(r.right),
            "jump": json_f64(r.jump),
            "average": json_f64(r.average),
        }),
    );
}

pub fn peakon_cmd(cfg: &ScenarioConfig) -> Result<Outcome, CliError> {
    let xs = axis("x", cfg.px_min, cfg.px_max, cfg.npx)?;
    let t = cfg.peakon_t;
    let mut table = Table::new(&["x", "u", "u_minus", "u_plus", "u_x_minus", "u_x_plus"]);
    table.meta("command", "peakon");
    table.meta("t", json_f64(t));
    table.meta("speed", json_f64(cfg.speed));
    let profile = match cfg.kind {
        PeakonKind::Ch => {
            let peakon = ChPeakon::new(cfg.speed);
            table.meta("kind", "ch");
            jump_meta(&mut table, "slope_jump", &ch_ux_jump(t, &peakon));
            ch_u_distribution(t, &peakon).smooth
        }
        PeakonKind::Dp => {
            let sp = ShockPeakon::new(cfg.speed, cfg.shock_k)?;
            table.meta("kind", "dp");
            table.meta("k", json_f64(sp.k));
            let report = dp_jump(t, &sp)?;
            jump_meta(&mut table, "jump", &report);
            dp_u_distribution(t, &sp)?.smooth
        }
    };
    let slope = profile.derivative();
    let mut line = Vec::new();
    for x in xs.points() {
        let (um, up) = one_sided(&profile, x)?;
        let (dm, dp) = one_sided(&slope, x)?;
        let u = 0.5 * (um + up);
        table.push(vec![x, u, um, up, dm, dp]);
        if um == up {
            line.push((x, u));
        } else {
            line.extend([(x, um), (x, up)]);
        }
    }
    let title = match cfg.kind {
        PeakonKind::Ch => "Camassa-Holm peakon",
        PeakonKind::Dp => "Degasperis-Procesi shock-peakon",
    };
    let plot = Plot { title: title.into(), x_label: "x".into(), y_label: "u".into(), polylines: vec![line], ..Default::default() };
    Ok(Outcome { table, plot: Some(plot) })
}

pub struct VerifyOutcome {
    pub json: String,
    pub passed: bool,
    pub failures: Vec<String>,
}

pub fn verify_cmd(cfg: &ScenarioConfig, suite: &str, perturbation: f64) -> Result<VerifyOutcome, CliError> {
    let suites: Vec<Suite> = Suite::parse(suite)?;
    let mut opts = VerifyOptions::new(cfg.wave()?);
    opts.speed_perturbation = perturbation;
    let report = verify::run(&suites, &opts)?;
    let failures = report
        .failures()
        .map(|c| format!("{}: {} = {:e} ({})", c.suite.name(), c.name, c.value, serde_json::to_string(&c.bound).unwrap_or_default()))
        .collect();
    let rows = serde_json::to_value(&report.checks).map_err(|e| usage(e.to_string()))?;
    let doc = json!({
        "meta": {
            "command": "verify",
            "passed": report.passed,
            "suites": suites.iter().map(|s| s.name()).collect::<Vec<_>>(),
            "scenario": serde_json::to_value(report.scenario).unwrap_or(Value::Null),
        },
        "rows": rows,
    });
    let mut json = serde_json::to_string_pretty(&doc).expect("serializable");
    json.push('\n');
    Ok(VerifyOutcome { json, passed: report.passed, failures })
}
