use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use univalent::classu::ClassUFunction;
use univalent::functionals::{FunctionalSpec, PROVEN_SPECS};
use univalent::schwarz::lemma1_check;
use univalent::search::{self, BestRecord, Sample};
use univalent::DEFAULT_ORDER;

fn draw(seed: u64, degree: usize) -> Sample {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    search::sample(&mut rng, degree, search::DEFAULT_MARGIN, DEFAULT_ORDER).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn defect_identity_holds(seed in any::<u64>(), degree in 0usize..=6) {
        let f = draw(seed, degree).function;
        let lhs = f.defect_series().unwrap();
        let rhs = f.defect_identity_series();
        for k in 0..=DEFAULT_ORDER - 2 {
            prop_assert!((lhs.coeff(k) - rhs.coeff(k)).norm() <= 1e-10, "k = {}", k);
        }
    }

    #[test]
    fn positive_margin_bounds_the_defect(seed in any::<u64>(), degree in 0usize..=6) {
        let f = draw(seed, degree).function;
        prop_assert!(f.membership_margin() > 0.0);
        let worst = (0..4096)
            .map(|k| {
                let z = Complex64::from_polar(0.999, std::f64::consts::TAU * k as f64 / 4096.0);
                f.defect_at(z).unwrap().norm()
            })
            .fold(0.0, f64::max);
        prop_assert!(worst <= 1.0, "{}", worst);
    }

    #[test]
    fn closed_forms_match_series(seed in any::<u64>(), degree in 0usize..=6) {
        let f = draw(seed, degree).function;
        let (a3, a4, a5) = f.closed_form_a345();
        for (n, closed) in [(3, a3), (4, a4), (5, a5)] {
            prop_assert!((f.a(n) - closed).norm() <= 1e-11);
        }
    }

    #[test]
    fn proven_bounds_and_lemma1_hold(seed in any::<u64>(), degree in 0usize..=6) {
        let f = draw(seed, degree).function;
        for spec in PROVEN_SPECS {
            prop_assert!(spec.excess(&f).unwrap() <= 1e-9, "{}", spec);
        }
        let w = f.omega();
        prop_assert!(lemma1_check(w.c(1), w.c(2), w.c(3), 1e-9).pass);
    }

    #[test]
    fn functionals_are_rotation_invariant(seed in any::<u64>(), degree in 0usize..=4, theta in -10.0f64..10.0) {
        let f = draw(seed, degree).function;
        let g = f.rotate(theta).unwrap();
        for s in ["Z:2", "Z:3", "Z:4", "GZ:2,3", "GZ:3,3", "GZ:2,5", "K:4,1", "K:3,2"] {
            let spec: FunctionalSpec = s.parse().unwrap();
            let (a, b) = (spec.evaluate(&f).unwrap(), spec.evaluate(&g).unwrap());
            prop_assert!((a - b).abs() <= 1e-10 * (1.0 + a.abs()), "{}: {} vs {}", s, a, b);
        }
    }

    #[test]
    fn best_record_is_order_independent(values in prop::collection::vec(-5.0f64..5.0, 1..12), rot in 0usize..12) {
        let spec: FunctionalSpec = "Z:2".parse().unwrap();
        let records: Vec<BestRecord> = values
            .iter()
            .map(|&v| BestRecord {
                spec,
                value: v,
                bound: 1.0,
                excess: v - 1.0,
                a2: Complex64::new(v, 0.0),
                gammas: vec![],
                membership_margin: 1.0,
                pole_free: true,
                seed: 0,
                evaluations: 1,
                wall_ms: 0,
            })
            .collect();
        let mut rotated = records.clone();
        rotated.rotate_left(rot % records.len());
        let (a, b) = (search::best_of(&records).unwrap(), search::best_of(&rotated).unwrap());
        prop_assert_eq!(a.value, b.value);
        prop_assert_eq!(a.evaluations, b.evaluations);
    }
}

#[test]
fn koebe_is_a_limit_point_of_members() {
    let k = ClassUFunction::koebe(0.4, DEFAULT_ORDER);
    assert!(k.pole_free());
    assert!(k.membership_margin().abs() <= 1e-12);
    assert!(!k.is_member(search::DEFAULT_MARGIN));
}

#[test]
fn persisted_records_reload_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("records.jsonl");
    let mut config = search::SearchConfig::new("GZ:2,3".parse().unwrap(), 4);
    config.restarts = 3;
    config.iterations = 30;
    let written = search::run_and_persist(&config, &path).unwrap();
    assert_eq!(written.len(), 4);
    let loaded = search::load_jsonl(&path).unwrap();
    assert_eq!(loaded, written);
    for r in &loaded {
        assert!((r.reevaluate().unwrap() - r.value).abs() <= 1e-10);
        assert!(r.membership_margin >= config.margin && r.pole_free);
    }
    let best = loaded.last().unwrap();
    assert!(loaded[..3].iter().all(|r| r.value <= best.value));
}
