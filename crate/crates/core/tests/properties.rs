use proptest::prelude::*;
use wavepaths::peakons::{ch_classical_residual, ch_momentum, ch_ux_jump, dp_classical_residual, dp_jump, ChPeakon, ShockPeakon};
use wavepaths::wavefield::{field, wave_speed, SpeedBranch, WaveParameters};

proptest! {
    #[test]
    fn ch_residual_vanishes_off_peak(c in -5.0f64..5.0, t in -2.0f64..2.0, s in prop_oneof![-8.0f64..-1e-3, 1e-3f64..8.0]) {
        let p = ChPeakon::new(c);
        prop_assert!(ch_classical_residual(c * t + s, t, &p).unwrap().abs() <= 1e-12);
    }

    #[test]
    fn ch_jump_and_atom(c in -5.0f64..5.0, t in -2.0f64..2.0) {
        let p = ChPeakon::new(c);
        prop_assert_eq!(ch_ux_jump(t, &p).jump, -2.0 * c);
        let m = ch_momentum(t, &p);
        prop_assert_eq!(m.dirac.len(), usize::from(c != 0.0));
        if c != 0.0 {
            prop_assert_eq!(m.dirac[0].coefficient, 2.0 * c);
            prop_assert_eq!(m.dirac[0].location, c * t);
        }
    }

    #[test]
    fn dp_residual_and_jump(c in -5.0f64..5.0, k in 1e-3f64..=5.0, t in 0.0f64..5.0, x in prop_oneof![-8.0f64..-1e-3, 1e-3f64..8.0]) {
        let sp = ShockPeakon::new(c, k).unwrap();
        prop_assert!(dp_classical_residual(x, t, &sp).unwrap().abs() <= 1e-12 * (1.0 + 1.0 / (k * k)));
        let r = dp_jump(t, &sp).unwrap();
        prop_assert_eq!(r.jump, -2.0 / (t + k));
        prop_assert_eq!(r.average, c);
    }

    #[test]
    fn bed_velocity_averages_to_drift(delta in 0.05f64..2.0, gamma in -1.0f64..1.0, c0 in -1.0f64..1.0, t in 0.0f64..3.0) {
        let p = WaveParameters::new(delta, gamma, c0, SpeedBranch::Positive).unwrap();
        // Trapezoid rule is exact for a single periodic harmonic.
        let n = 64;
        let mean = (0..n).map(|i| field(i as f64 / n as f64, 0.0, t, &p).u).sum::<f64>() / n as f64;
        prop_assert!((mean - c0).abs() < 1e-14);
    }

    #[test]
    fn speed_branches_are_mirror_images(delta in 1e-3f64..5.0) {
        let plus = wave_speed(delta, SpeedBranch::Positive).unwrap();
        let minus = wave_speed(delta, SpeedBranch::Negative).unwrap();
        prop_assert_eq!(plus, -minus);
        prop_assert!(plus > 0.0 && plus < 1.0);
    }
}
