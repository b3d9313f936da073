mod common;

use a1tk_core::{Interval, PowerWeight, Weight};
use common::{interval, rel, step_weight};
use proptest::prelude::*;

fn power_weight() -> impl Strategy<Value = PowerWeight> {
    (0.1f64..10.0, -0.95f64..=0.0).prop_map(|(a, alpha)| PowerWeight::new(a, alpha).unwrap())
}

fn any_weight() -> impl Strategy<Value = Weight> {
    prop_oneof![step_weight(24).prop_map(Weight::Step), power_weight().prop_map(Weight::Power)]
}

proptest! {
    #[test]
    fn integral_is_additive(w in any_weight(), a in 0.0f64..1.0, b in 0.0f64..1.0, c in 0.0f64..1.0) {
        let mut pts = [a, b, c];
        pts.sort_by(f64::total_cmp);
        prop_assume!(pts[1] - pts[0] > 1e-9 && pts[2] - pts[1] > 1e-9);
        let whole = w.integral(&Interval::new(pts[0], pts[2]).unwrap());
        let left = w.integral(&Interval::new(pts[0], pts[1]).unwrap());
        let right = w.integral(&Interval::new(pts[1], pts[2]).unwrap());
        prop_assert!(rel(whole, left + right) < 1e-12, "{whole} vs {left} + {right}");
    }

    #[test]
    fn ess_inf_below_average(w in any_weight(), i in interval()) {
        prop_assert!(w.ess_inf(&i) <= w.average(&i) * (1.0 + 1e-12));
    }

    #[test]
    fn first_power_is_the_integral(w in any_weight(), i in interval()) {
        let lp = w.lp_integral(&i, 1.0).unwrap().finite().unwrap();
        prop_assert!(rel(lp, w.integral(&i)) < 1e-12);
    }

    #[test]
    fn renormalization_preserves_means(w in step_weight(24), i in interval(), p in 1.0f64..4.0) {
        let w = Weight::Step(w);
        let r = w.renormalize(&i).unwrap();
        prop_assert!(rel(r.average(&Interval::UNIT), w.average(&i)) < 1e-12);
        prop_assert!(rel(r.ess_inf(&Interval::UNIT), w.ess_inf(&i)) < 1e-12);
        let lp_r = r.lp_integral(&Interval::UNIT, p).unwrap().finite().unwrap();
        let lp_w = w.lp_integral(&i, p).unwrap().finite().unwrap();
        prop_assert!(rel(lp_r, lp_w / i.len()) < 1e-12);
    }

    #[test]
    fn renormalization_of_power_weights(g in power_weight(), hi in 0.01f64..1.0, p in 1.0f64..1.05) {
        let w = Weight::Power(g);
        let i = Interval::new(0.0, hi).unwrap();
        let r = w.renormalize(&i).unwrap();
        prop_assert!(rel(r.average(&Interval::UNIT), w.average(&i)) < 1e-12);
        prop_assert!(rel(r.ess_inf(&Interval::UNIT), w.ess_inf(&i)) < 1e-12);
        let lp_r = r.lp_integral(&Interval::UNIT, p).unwrap().finite().unwrap();
        let lp_w = w.lp_integral(&i, p).unwrap().finite().unwrap();
        prop_assert!(rel(lp_r, lp_w / hi) < 1e-11);
    }

    #[test]
    fn holder_lower_bound(w in step_weight(24), i in interval(), p in 1.0f64..6.0) {
        let w = Weight::Step(w);
        let lp = w.lp_integral(&i, p).unwrap().finite().unwrap();
        prop_assert!(w.average(&i).powf(p) <= lp / i.len() * (1.0 + 1e-12));
    }

    #[test]
    fn power_integral_matches_quadrature(g in power_weight(), lo in 0.05f64..0.5, hi in 0.5f64..1.0) {
        // Away from the singularity a midpoint sum converges to the closed form.
        let n = 20_000;
        let h = (hi - lo) / n as f64;
        let approx: f64 = (0..n).map(|k| g.eval(lo + (k as f64 + 0.5) * h) * h).sum();
        let exact = g.integral(&Interval::new(lo, hi).unwrap());
        prop_assert!(rel(approx, exact) < 1e-6);
    }
}
