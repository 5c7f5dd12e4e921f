//! Particle paths beneath small-amplitude gravity waves on water of finite
//! depth with constant vorticity, together with closed-form peakon profiles
//! of the Camassa-Holm and Degasperis-Procesi equations.
//!
//! Every closed form in the crate comes with a residual evaluator, so the
//! formulas can be certified numerically rather than trusted:
//!
//! - [`wavefield`]: the linear wave solution and its governing-system residuals.
//! - [`particle_dynamics`]: path vector fields in the physical and moving frames.
//! - [`ode`]: fixed-step RK4 and adaptive Dormand-Prince integrators.
//! - [`analytic_paths`]: the exact arctanh trajectory and its reduction chain.
//! - [`peakons`]: CH peakons, DP shock-peakons and their distributional parts.
//! - [`verify`]: aggregated verification suites with pass/fail reporting.

pub mod analytic_paths;
pub mod error;
pub mod ode;
pub mod particle_dynamics;
pub mod peakons;
pub mod verify;
pub mod wavefield;

pub use error::{Error, Result};
