use approx::assert_abs_diff_eq;
use wavepaths::peakons::{ch_momentum, ch_u_distribution, ch_uxx_distribution, dp_u_distribution, dp_ux_distribution, ChPeakon, DistributionalFunction, ShockPeakon};

/// Composite Simpson rule with `n` (even) panels.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + h * i as f64);
    }
    s * h / 3.0
}

/// Integral of the smooth part, split at the breakpoint.
fn smooth_integral(f: &DistributionalFunction, phi: impl Fn(f64) -> f64 + Copy, lo: f64, hi: f64) -> f64 {
    let b = f.smooth.breakpoint;
    let left = simpson(|x| if x < b { f.smooth.value(x).unwrap() * phi(x) } else { f.smooth.left_limit() * phi(x) }, lo, b, 20_000);
    let right = simpson(|x| if x > b { f.smooth.value(x).unwrap() * phi(x) } else { f.smooth.right_limit() * phi(x) }, b, hi, 20_000);
    left + right
}

fn pairing(f: &DistributionalFunction, phi: impl Fn(f64) -> f64 + Copy, dphi: impl Fn(f64) -> f64) -> f64 {
    smooth_integral(f, phi, -25.0, 25.0) + f.atom_pairing(phi, dphi)
}

const A: f64 = 0.3;

fn phi(x: f64) -> f64 {
    (-(x - A).powi(2)).exp()
}

fn dphi(x: f64) -> f64 {
    -2.0 * (x - A) * phi(x)
}

fn ddphi(x: f64) -> f64 {
    (4.0 * (x - A).powi(2) - 2.0) * phi(x)
}

#[test]
fn ch_second_derivative_pairs_like_integration_by_parts() {
    for &(c, t) in &[(1.0, 0.0), (-2.0, 0.4), (0.7, -1.3)] {
        let p = ChPeakon::new(c);
        let u = ch_u_distribution(t, &p);
        let uxx = ch_uxx_distribution(t, &p);
        let lhs = pairing(&uxx, phi, dphi);
        let rhs = smooth_integral(&u, ddphi, -25.0, 25.0);
        assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-10);
    }
}

#[test]
fn ch_momentum_pairs_to_point_evaluation() {
    for &(c, t) in &[(1.0, 0.0), (-2.0, 0.4), (3.5, 0.2)] {
        let m = ch_momentum(t, &ChPeakon::new(c));
        assert!(m.smooth.is_zero());
        assert_abs_diff_eq!(pairing(&m, phi, dphi), 2.0 * c * phi(c * t), epsilon = 1e-12);
    }
}

#[test]
fn dp_slope_pairs_like_integration_by_parts() {
    let sp = ShockPeakon::new(0.8, 0.5).unwrap();
    for &t in &[0.0, 1.0, 4.0] {
        let u = dp_u_distribution(t, &sp).unwrap();
        let ux = dp_ux_distribution(t, &sp).unwrap();
        let lhs = pairing(&ux, phi, dphi);
        let rhs = -smooth_integral(&u, dphi, -25.0, 25.0);
        assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-10);
    }
}

#[test]
fn mollified_momentum_converges_to_atom() {
    let c = 1.5;
    let t = 0.2;
    let m = ch_momentum(t, &ChPeakon::new(c));
    let exact = 2.0 * c * phi(c * t);
    let err = |eps: f64| {
        let x0 = c * t;
        (simpson(|x| m.mollified(x, eps) * phi(x), x0 - 12.0 * eps - 5.0, x0 + 12.0 * eps + 5.0, 400_000) - exact).abs()
    };
    let coarse = err(0.1);
    let fine = err(0.01);
    // Leading error term: c eps^2 |phi''(x0)|.
    let leading = |eps: f64| c * eps * eps * ddphi(c * t).abs();
    assert!((coarse - leading(0.1)).abs() < 0.05 * leading(0.1), "eps = 0.1: {coarse}");
    assert!((fine - leading(0.01)).abs() < 0.05 * leading(0.01), "eps = 0.01: {fine}");
    // Second-order convergence in eps.
    assert!(coarse / fine > 50.0, "ratio {}", coarse / fine);
}
