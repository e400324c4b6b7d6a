use proptest::prelude::*;

use capfreedom::axioms::check_scaling;
use capfreedom::geometry::{set_weak_dominates, Being, CapabilitySet, CapabilitySpace};
use capfreedom::instance::{Instance, NamedSet, SetKind};
use capfreedom::measures::{compromise_mc, gx_outcome, volume, Algorithm, GxConfig, Metric, Variant};
use capfreedom::par::Execution;
use capfreedom::{Evaluator, Sensitivity, ValueModel};

fn space(d: usize) -> CapabilitySpace {
    CapabilitySpace::new(Being::new(vec![10.0; d]).unwrap()).unwrap()
}

fn points(d: usize, max: usize) -> impl Strategy<Value = Vec<Being>> {
    prop::collection::vec(prop::collection::vec(0.01f64..10.0, d), 1..=max)
        .prop_map(|v| v.into_iter().map(|c| Being::new(c).unwrap()).collect())
}

fn set(d: usize, max: usize) -> impl Strategy<Value = CapabilitySet> {
    points(d, max).prop_map(|p| CapabilitySet::points(p).unwrap())
}

fn sensitivity() -> impl Strategy<Value = Sensitivity> {
    prop_oneof![
        (0.1f64..3.0).prop_map(Sensitivity::Power),
        (0.1f64..5.0).prop_map(Sensitivity::Constant),
    ]
}

fn evaluator(d: usize, w: Vec<f64>, phi: Sensitivity) -> Evaluator {
    Evaluator::new(space(d), ValueModel::weighted_sum(w).unwrap(), phi).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ie_matches_sweep(s in set(2, 14), w in prop::collection::vec(0.2f64..3.0, 2), phi in sensitivity()) {
        let ev = evaluator(2, w, phi);
        let ie = ev.compromise(&s, Algorithm::InclusionExclusion).unwrap().score;
        let sweep = ev.compromise(&s, Algorithm::Sweep).unwrap().score;
        prop_assert!((ie - sweep).abs() <= 1e-9 * ie.abs().max(1.0), "{ie} vs {sweep}");
    }

    #[test]
    fn ie_matches_quadrature_3d(s in set(3, 5), w in prop::collection::vec(0.2f64..3.0, 3), g in 0.5f64..2.0) {
        let ev = evaluator(3, w, Sensitivity::Power(g));
        let ie = ev.compromise(&s, Algorithm::InclusionExclusion).unwrap().score;
        let q = ev.compromise(&s, Algorithm::Quadrature).unwrap();
        prop_assert!((ie - q.score).abs() <= 1e-6 * ie.abs().max(1.0), "{ie} vs {}", q.score);
    }

    #[test]
    fn constant_sensitivity_is_scaled_volume(s in set(3, 8), c in 0.1f64..5.0) {
        let ev = evaluator(3, vec![1.0; 3], Sensitivity::Constant(c));
        let got = ev.compromise(&s, Algorithm::Auto).unwrap().score;
        let vol = volume(&s).unwrap().score;
        prop_assert!((got - c * vol).abs() <= 1e-9 * (c * vol).max(1.0));
    }

    #[test]
    fn adding_points_never_lowers_the_score(a in points(2, 8), b in points(2, 4), phi in sensitivity()) {
        let ev = evaluator(2, vec![1.0, 1.5], phi);
        let sa = CapabilitySet::points(a.clone()).unwrap();
        let mut all = a;
        all.extend(b);
        let sab = CapabilitySet::points(all).unwrap();
        prop_assert!(set_weak_dominates(&sab, &sa).unwrap());
        let (x, y) = (ev.compromise(&sa, Algorithm::Auto).unwrap().score, ev.compromise(&sab, Algorithm::Auto).unwrap().score);
        prop_assert!(y >= x - 1e-9 * y.abs().max(1.0));
    }

    #[test]
    fn scaling_identity(a in set(2, 6), b in set(2, 6), alpha in prop::collection::vec(0.25f64..4.0, 2), phi in sensitivity()) {
        let ev = evaluator(2, vec![1.0, 2.0], phi);
        let rep = check_scaling(&ev, &a, &b, &alpha, 1e-9).unwrap();
        prop_assert!(rep.passed(), "{:?}", rep.failures);
    }

    #[test]
    fn gx_variant_order(s in set(2, 8), k in prop::collection::vec(0.0f64..10.0, 2)) {
        let k0 = Being::new(k).unwrap();
        let score = |variant| {
            let cfg = GxConfig { k0: k0.clone(), metric: Metric::Euclidean, variant };
            gx_outcome(&s, &cfg, &space(2)).unwrap().score
        };
        let (p, st, o) = (score(Variant::Pessimistic), score(Variant::Standard), score(Variant::Optimistic));
        prop_assert!(p <= st + 1e-12 && st <= o + 1e-12, "{p} {st} {o}");
    }

    #[test]
    fn instance_json_round_trip(sets in prop::collection::vec(points(2, 5), 1..4), g in 0.1f64..3.0) {
        let inst = Instance {
            name: Some("random".into()),
            dimensions: 2,
            space: Being::new(vec![10.0, 10.0]).unwrap(),
            sets: sets
                .into_iter()
                .enumerate()
                .map(|(i, p)| NamedSet { name: format!("S{i}"), kind: SetKind::Points(p) })
                .collect(),
            value: Some(ValueModel::weighted_sum(vec![1.0, 2.0]).unwrap()),
            sensitivity: Some(Sensitivity::Power(g)),
            gx: None,
            tolerance: None,
            levels: vec![3.0, 8.0],
        };
        let again = Instance::from_json(&inst.to_json().unwrap()).unwrap();
        prop_assert_eq!(inst, again);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn monte_carlo_is_deterministic_across_execution_modes(s in set(2, 6), seed in any::<u64>()) {
        let v = ValueModel::sum(2);
        let phi = Sensitivity::Power(1.0);
        let par = compromise_mc(&s, &v, &phi, 200_000, seed, Execution::Parallel).unwrap();
        let seq = compromise_mc(&s, &v, &phi, 200_000, seed, Execution::Sequential).unwrap();
        prop_assert_eq!(par.score, seq.score);
        prop_assert_eq!(par.error_bound, seq.error_bound);
    }
}
